"""Render magstab sweep CSVs as parameter-study figures.

This package never recomputes physics: every plotted value exists verbatim in
the input CSV (the solver's documented output contract).
"""

from .figures import FIGURES, FigureSpec, RenderResult, render, spec_for

__all__ = ["FIGURES", "FigureSpec", "RenderResult", "render", "spec_for"]
