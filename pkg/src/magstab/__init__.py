"""Critical stretches for surface wrinkling of layered magnetoelastic half-spaces.

A plane-strain bilayer (substrate half-space plus bonded upper layer) is
compressed or stretched along its surface under a uniform magnetic induction
normal to that surface.  The package evaluates the incremental (small-on-large)
stability problem from the constitutive level up: closed-form incremental
moduli with a finite-difference oracle, the characteristic bicubic and its
mode basis, the twelve-condition boundary determinant, and sign-change /
bisection searches for the first critical stretch on either side of the
undeformed state.
"""

from ._accel import BACKEND
from .constitutive import (BaseState, MooneyRivlinEnergy, base_state, energy_value,
                           lagrange_multiplier, lagrange_multipliers)
from .dispersion import (BoundarySystem, CriticalResult, Crossing, SearchOptions,
                         SweepCase, REDUCTION_FULL, REDUCTION_REDUCED, assemble,
                         assemble_at, determinant_at, find_critical,
                         scaled_determinant, smallest_singular_pair, sweep)
from .errors import (AdmissibilityViolated, ConfigurationError, DegenerateMode,
                     MagstabError, NumericalInconsistency, RootCoincidence)
from .kinematics import KinematicState, deformation_gradient, magnetic_invariants, with_field
from .moduli import FdModuli, ModuliSet, analytic_moduli, fd_moduli
from .modes import (ExteriorMode, ModeAmplitudes, ModeRoot, amplitude_eliminate,
                    bicubic_coefficients, exterior_mode, layer_mode_basis,
                    mooney_rivlin_roots, solve_roots)
from .params import (EULERIAN_FIXED, LAGRANGIAN_FIXED, LayerStack, LoadingPoint,
                     MaterialParams)
from .presets import FigurePreset, figure_preset

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityViolated", "BACKEND", "BaseState", "BoundarySystem",
    "ConfigurationError", "CriticalResult", "Crossing", "DegenerateMode",
    "EULERIAN_FIXED", "ExteriorMode", "FdModuli", "FigurePreset",
    "KinematicState", "LAGRANGIAN_FIXED", "LayerStack", "LoadingPoint",
    "MagstabError", "MaterialParams", "ModeAmplitudes", "ModeRoot", "ModuliSet",
    "MooneyRivlinEnergy", "NumericalInconsistency", "REDUCTION_FULL",
    "REDUCTION_REDUCED", "RootCoincidence", "SearchOptions", "SweepCase",
    "amplitude_eliminate", "analytic_moduli", "assemble", "assemble_at",
    "base_state", "bicubic_coefficients", "deformation_gradient",
    "determinant_at", "energy_value", "exterior_mode", "fd_moduli",
    "figure_preset", "find_critical", "lagrange_multiplier",
    "lagrange_multipliers", "layer_mode_basis", "magnetic_invariants",
    "mooney_rivlin_roots", "scaled_determinant", "smallest_singular_pair",
    "solve_roots", "sweep", "with_field",
]
