"""Plane-strain kinematics of the homogeneous base state.

The base deformation stretches the half-space by ``lam`` along the surface and
by ``1/lam`` through the thickness, with no out-of-plane motion, so volume is
preserved exactly.  The uniform induction normal to the surface adds three
field invariants on top of the two independent strain invariants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class KinematicState:
    """Deformation gradient, right Cauchy-Green tensor and scalar invariants."""

    F: np.ndarray
    C: np.ndarray
    I1: float
    I2: float
    I3: float
    I4: float = 0.0
    I5: float = 0.0
    I6: float = 0.0

    @property
    def lam(self) -> float:
        return float(self.F[0, 0])


def deformation_gradient(lam: float) -> KinematicState:
    """Base-state kinematics at stretch ``lam``.

    Parameters
    ----------
    lam : float
        In-plane principal stretch, > 0.

    Returns
    -------
    KinematicState
        ``F = diag(lam, 1/lam, 1)`` with unit determinant, ``C = F^2`` and the
        strain invariants; the field invariants are zero until a loading is
        attached via :func:`magnetic_invariants`.
    """
    if not lam > 0:
        raise ValueError(f"stretch must be positive, got {lam}")
    F = np.diag([lam, 1.0 / lam, 1.0])
    C = F @ F
    I1 = lam**2 + lam**-2 + 1.0
    return KinematicState(F=F, C=C, I1=I1, I2=I1, I3=1.0)


def magnetic_invariants(state: KinematicState, b_bar: float) -> tuple[float, float, float]:
    """Field invariants for a uniform induction ``b_bar`` normal to the surface.

    The Lagrangian induction component is continuous through both layers and
    the surrounding space, so a single number parameterizes the whole field.
    """
    if b_bar < 0:
        raise ValueError(f"b_bar must be non-negative, got {b_bar}")
    lam = state.lam
    I4 = b_bar * b_bar
    return I4, I4 / lam**2, I4 / lam**4


def with_field(state: KinematicState, b_bar: float) -> KinematicState:
    """Copy of ``state`` with the field invariants filled in."""
    I4, I5, I6 = magnetic_invariants(state, b_bar)
    return KinematicState(F=state.F, C=state.C, I1=state.I1, I2=state.I2,
                          I3=state.I3, I4=I4, I5=I5, I6=I6)
