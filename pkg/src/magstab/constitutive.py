"""Base-state constitutive evaluation for the two-term magnetoelastic energy.

The stored energy per unit reference volume, in dimensionless units, is

    W = (mu/4) [ (1+gamma)(I1-3) + (1-gamma)(I2-3) ] + (alpha I4 + beta I5)/2,

with I1, I2 the isochoric strain invariants and I4 = B.B, I5 = B.(C B) the
field invariants of the Lagrangian induction.  The energy is evaluated
unconstrained (any 3x3 deformation gradient, any 3-vector induction) so that
finite differences of it can reproduce the incremental moduli; the
incompressibility pressure is handled separately.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import LayerStack, LoadingPoint, MaterialParams

#: unimodularity slack accepted by the public energy evaluation
_DET_TOL = 1e-12


@dataclass(frozen=True)
class MooneyRivlinEnergy:
    """Evaluation contract used by the finite-difference moduli oracle.

    ``value`` places no constraint on its arguments: the oracle differentiates
    the unconstrained energy, and perturbed gradients are generally not
    unimodular.
    """

    params: MaterialParams

    def value(self, F, B_L) -> float:
        F = np.asarray(F, dtype=float)
        B = np.asarray(B_L, dtype=float)
        C = F.T @ F
        I1 = np.trace(C)
        I2 = 0.5 * (I1 * I1 - np.trace(C @ C))
        I4 = B @ B
        FB = F @ B
        I5 = FB @ FB
        p = self.params
        elastic = 0.25 * p.mu * ((1.0 + p.gamma) * (I1 - 3.0) + (1.0 - p.gamma) * (I2 - 3.0))
        return float(elastic + 0.5 * (p.alpha * I4 + p.beta * I5))


def energy_value(params: MaterialParams, F, B_L) -> float:
    """Energy of an incompressible state; rejects non-unimodular gradients."""
    F = np.asarray(F, dtype=float)
    det = np.linalg.det(F)
    if abs(det - 1.0) > _DET_TOL:
        raise ValueError(f"deformation gradient must be unimodular, det F = {det!r}")
    return MooneyRivlinEnergy(params).value(F, B_L)


def lagrange_multiplier(params: MaterialParams, lam: float, b_bar: float) -> float:
    """Pressure that equilibrates the through-thickness normal stress.

    Fixed so that the total normal nominal stress matches the free-space
    magnetic traction on the surface; the same expression holds per layer with
    that layer's constants, which makes interface traction continuity
    automatic.
    """
    i4 = b_bar * b_bar
    return (0.5 * params.mu * (1.0 - params.gamma + 2.0 / lam**2)
            + 0.5 * i4 * (2.0 * params.beta - 1.0) / lam**2)


def lagrange_multipliers(stack: LayerStack, point: LoadingPoint) -> tuple[float, float]:
    """Substrate and upper-layer pressures at the base state."""
    return (lagrange_multiplier(stack.substrate, point.lam, point.b_bar),
            lagrange_multiplier(stack.upper, point.lam, point.b_bar))


@dataclass(frozen=True)
class BaseState:
    """Nominal stresses, pressure and magnetic field of one layer, plus the
    free-space magnetic stress acting above the surface."""

    T11: float
    T22: float
    T33: float
    p: float
    H_L2: float
    tau_star_11: float
    tau_star_22: float
    tau_star_33: float
    T_star_11: float
    T_star_22: float
    T_star_33: float


def _layer_base_state(params: MaterialParams, lam: float, b_bar: float) -> BaseState:
    mu, gamma, beta = params.mu, params.gamma, params.beta
    i4 = b_bar * b_bar
    p = lagrange_multiplier(params, lam, b_bar)
    T11 = 0.5 * mu * (2.0 * lam + (1.0 - gamma) / lam) - p / lam
    T22 = 0.5 * mu * (lam + 2.0 / lam - gamma * lam) - p * lam + beta * i4 / lam
    T33 = 0.5 * mu * (1.0 + gamma + (1.0 - gamma) * (lam**2 + lam**-2)) - p
    H_L2 = (params.alpha + params.beta / lam**2) * b_bar
    # free-space magnetic stress: spatial components and their referential pull-back
    tau22 = 0.5 * i4 / lam**2
    return BaseState(
        T11=T11, T22=T22, T33=T33, p=p, H_L2=H_L2,
        tau_star_11=-tau22, tau_star_22=tau22, tau_star_33=-tau22,
        T_star_11=-0.5 * i4 / lam**3, T_star_22=0.5 * i4 / lam,
        T_star_33=-0.5 * i4 / lam**2,
    )


def base_state(stack: LayerStack, point: LoadingPoint) -> tuple[BaseState, BaseState]:
    """Base states of (substrate, upper layer) at the given loading."""
    return (_layer_base_state(stack.substrate, point.lam, point.b_bar),
            _layer_base_state(stack.upper, point.lam, point.b_bar))
