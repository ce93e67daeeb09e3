"""Built-in parameter-study presets.

Each preset expands to a sweep over one axis with one series parameter,
mirroring the published parameter studies: stiffness-contrast vs wavenumber,
induction sweeps for a magnetoelastic half-space, a magnetizable layer on a
passive substrate, and fully magnetizable bilayers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dispersion import SearchOptions, SweepCase
from .errors import ConfigurationError
from .params import LayerStack, MaterialParams

PRESET_NAMES = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9")

_RATIOS = (0.5, 1.0, 2.0, 5.0, 10.0)
_BETAS = (0.0, 0.5, 1.0, 2.0, 5.0)
_B_SERIES = (0.0, 0.5, 1.0, 2.0, 5.0)


@dataclass(frozen=True)
class FigurePreset:
    name: str
    description: str
    cases: tuple[SweepCase, ...]
    axis_column: str
    series_column: str
    log_axis: bool = False
    search_options: SearchOptions = field(default_factory=SearchOptions)


def _stack(mu_ratio, alpha_s, beta_s, alpha_u, beta_u, gamma=1.0):
    return LayerStack(
        substrate=MaterialParams(mu=1.0, gamma=gamma, alpha=alpha_s, beta=beta_s),
        upper=MaterialParams(mu=mu_ratio, gamma=gamma, alpha=alpha_u, beta=beta_u),
    )


def _case(name, series_name, series_val, axis_name, axis_val, stack, k, b_bar):
    cid = f"{name}:{series_name}={series_val:g}:{axis_name}={axis_val:.6g}"
    return SweepCase(case_id=cid, stack=stack, k=k, b_bar=b_bar)


def figure_preset(name: str, axis_steps: int | None = None, b_max: float = 2.0,
                  gamma: float = 1.0, fig6_both_magnetic: bool = False) -> FigurePreset:
    """Expand a named preset into its sweep cases.

    ``b_max`` extends the induction axis of the induction-sweep presets (their
    published range is read off plots, so it is adjustable).  ``gamma`` sets
    the two-term elastic weight of both layers.  The layer-on-substrate preset
    family applies the vacuum-consistent couplings (0, 1) to whichever layer
    is non-magnetizable; ``fig6_both_magnetic`` applies the magnetizable
    couplings to the substrate as well.
    """
    if name not in PRESET_NAMES:
        raise ConfigurationError(f"unknown figure preset {name!r}; valid: {PRESET_NAMES}")
    nonmag = dict(alpha=0.0, beta=1.0)
    cases = []
    if name == "fig2":
        steps = axis_steps or 21
        k_grid = np.logspace(np.log10(0.1), np.log10(20.0), steps)
        for ratio in _RATIOS:
            stack = _stack(ratio, *nonmag.values(), *nonmag.values(), gamma)
            for k in k_grid:
                cases.append(_case(name, "mu_ratio", ratio, "k", k, stack, float(k), 0.0))
        # purely mechanical loading never bifurcates in tension; skip that side
        opts = SearchOptions(sides="compression")
        return FigurePreset(name, "critical stretch vs wavenumber, passive bilayer",
                            tuple(cases), "k", "mu_ratio", log_axis=True,
                            search_options=opts)
    if name in ("fig3", "fig4", "fig5"):
        steps = axis_steps or 11
        b_grid = np.linspace(0.0, b_max, steps)
        ratio = 5.0 if name == "fig5" else 1.0
        desc = {"fig3": "magnetoelastic half-space vs induction",
                "fig4": "magnetizable layer on passive substrate (equal stiffness)",
                "fig5": "magnetizable layer on passive substrate (stiff layer)"}[name]
        for beta in _BETAS:
            if name == "fig3":
                stack = _stack(1.0, 0.5, beta, 0.5, beta, gamma)
            else:
                stack = _stack(ratio, 0.0, 1.0, 0.5, beta, gamma)
            for b in b_grid:
                cases.append(_case(name, "beta_u", beta, "b_bar", b, stack, 1.0, float(b)))
        return FigurePreset(name, desc, tuple(cases), "b_bar", "beta_u")
    if name in ("fig6", "fig9"):
        steps = axis_steps or 13
        ratio_grid = np.logspace(-1.0, 2.0, steps)
        both = fig6_both_magnetic or name == "fig9"
        for b in _B_SERIES:
            for ratio in ratio_grid:
                if both:
                    stack = _stack(float(ratio), 0.5, 0.5, 0.5, 0.5, gamma)
                else:
                    stack = _stack(float(ratio), 0.0, 1.0, 0.5, 0.5, gamma)
                cases.append(_case(name, "b_bar", b, "mu_ratio", ratio,
                                   stack, 1.0, float(b)))
        desc = ("fully magnetizable bilayer vs stiffness ratio" if both
                else "magnetizable layer on passive substrate vs stiffness ratio")
        return FigurePreset(name, desc, tuple(cases), "mu_ratio", "b_bar", log_axis=True)
    # fig7 / fig8: fully magnetizable bilayer vs induction
    steps = axis_steps or 11
    b_grid = np.linspace(0.0, b_max, steps)
    beta = 0.5 if name == "fig7" else 1.0
    for ratio in _RATIOS:
        stack = _stack(ratio, 0.5, beta, 0.5, beta, gamma)
        for b in b_grid:
            cases.append(_case(name, "mu_ratio", ratio, "b_bar", b, stack, 1.0, float(b)))
    opts = SearchOptions(lambda_min=0.05)   # strong stabilization pushes lam_cr low
    return FigurePreset(name, f"fully magnetizable bilayer vs induction (beta={beta})",
                        tuple(cases), "b_bar", "mu_ratio", search_options=opts)
