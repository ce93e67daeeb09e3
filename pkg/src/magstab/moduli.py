"""Incremental magnetoelastic moduli at the plane-strain base state.

Three tensors of second derivatives of the stored energy govern the
incremental response:

    A[alpha,i,beta,j] = d2 W / dF[i,alpha] dF[j,beta]   (elastic)
    G[alpha,i,beta]   = d2 W / dF[i,alpha] dB[beta]     (coupling)
    K[beta,alpha]     = d2 W / dB[beta]  dB[alpha]      (magnetic)

At the diagonal base state with the induction along the surface normal only a
small set of in-plane components survives.  ``analytic_moduli`` carries the
closed forms obtained by differentiating the two-term energy twice;
``fd_moduli`` is an independent central-difference oracle over the
unconstrained energy that the closed forms are gated against.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .constitutive import MooneyRivlinEnergy
from .params import LoadingPoint, MaterialParams

#: in-plane components that survive at the base state, as (alpha, i, beta, j)
NONZERO_A = (
    (1, 1, 1, 1), (2, 2, 2, 2), (1, 1, 2, 2), (2, 2, 1, 1),
    (1, 2, 1, 2), (2, 1, 2, 1), (2, 1, 1, 2), (1, 2, 2, 1),
)
#: in-plane coupling components that survive, as (alpha, i, beta)
NONZERO_G = ((1, 1, 2), (2, 2, 2), (2, 1, 1), (1, 2, 1))
#: magnetic components that survive, as (beta, alpha)
NONZERO_K = ((1, 1), (2, 2))


@dataclass(frozen=True)
class ModuliSet:
    """Named in-plane moduli components (stress units of the substrate modulus)."""

    A1111: float
    A2222: float
    A1122: float
    A2211: float
    A1212: float
    A2121: float
    A2112: float
    A1221: float
    G112: float
    G222: float
    G211: float
    G121: float
    K11: float
    K22: float

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def max_abs(self) -> float:
        return max(abs(v) for v in self.as_dict().values())


def analytic_moduli(params: MaterialParams, point: LoadingPoint) -> ModuliSet:
    """Closed-form moduli of the two-term energy at the base state.

    Derived by differentiating the energy twice with respect to the full
    deformation gradient and induction, then evaluating on the diagonal base
    state; the finite-difference oracle below checks every component.
    """
    mu, gamma, alpha, beta = params.mu, params.gamma, params.alpha, params.beta
    lam, b = point.lam, point.b_bar
    i4 = b * b
    half_mr = 0.5 * mu * (1.0 - gamma)
    return ModuliSet(
        A1111=mu + half_mr / lam**2,
        A2222=mu + half_mr * lam**2 + beta * i4,
        A1122=2.0 * half_mr,
        A2211=2.0 * half_mr,
        A1212=mu,
        A2121=mu + beta * i4,
        A2112=-half_mr,
        A1221=-half_mr,
        G112=0.0,
        G222=2.0 * beta * b / lam,
        G211=beta * lam * b,
        G121=beta * b / lam,
        K11=alpha + beta * lam**2,
        K22=alpha + beta / lam**2,
    )


@dataclass(frozen=True)
class FdModuli:
    """Finite-difference moduli: reduced in-plane set plus the raw tensors.

    ``A_full[alpha, i, beta, j]``, ``G_full[alpha, i, beta]`` and
    ``K_full[beta, alpha]`` hold all 81 + 27 + 9 raw second differences
    (0-based indices); the named set extracts the in-plane components.
    """

    moduli: ModuliSet
    A_full: np.ndarray
    G_full: np.ndarray
    K_full: np.ndarray


def fd_moduli(energy: MooneyRivlinEnergy, point: LoadingPoint, step: float = 1e-4) -> FdModuli:
    """Central second differences of the unconstrained energy.

    Parameters
    ----------
    energy : MooneyRivlinEnergy
        Evaluation contract; perturbed gradients need not be unimodular.
    point : LoadingPoint
        Base state (stretch and induction).
    step : float
        Relative step, required within [1e-6, 1e-3]; each coordinate uses
        ``step * max(1, |base value|)``.
    """
    if not 1e-6 <= step <= 1e-3:
        raise ValueError(f"step must lie in [1e-6, 1e-3], got {step}")
    lam, b = point.lam, point.b_bar
    F0 = np.diag([lam, 1.0 / lam, 1.0])
    B0 = np.array([0.0, b, 0.0])
    hF = step * np.maximum(1.0, np.abs(F0))
    hB = step * np.maximum(1.0, np.abs(B0))

    def val(dF=None, dB=None):
        F = F0 if dF is None else F0 + dF
        B = B0 if dB is None else B0 + dB
        return energy.value(F, B)

    w0 = val()
    A = np.zeros((3, 3, 3, 3))
    G = np.zeros((3, 3, 3))
    K = np.zeros((3, 3))

    def dF_unit(i, a, h):
        d = np.zeros((3, 3))
        d[i, a] = h
        return d

    def dB_unit(b_, h):
        d = np.zeros(3)
        d[b_] = h
        return d

    for a in range(3):
        for i in range(3):
            ha = hF[i, a]
            for b_ in range(3):
                for j in range(3):
                    hb = hF[j, b_]
                    if a == b_ and i == j:
                        A[a, i, b_, j] = (val(dF_unit(i, a, ha)) - 2.0 * w0
                                          + val(dF_unit(i, a, -ha))) / (ha * ha)
                    else:
                        pp = val(dF_unit(i, a, ha) + dF_unit(j, b_, hb))
                        pm = val(dF_unit(i, a, ha) + dF_unit(j, b_, -hb))
                        mp = val(dF_unit(i, a, -ha) + dF_unit(j, b_, hb))
                        mm = val(dF_unit(i, a, -ha) + dF_unit(j, b_, -hb))
                        A[a, i, b_, j] = (pp - pm - mp + mm) / (4.0 * ha * hb)
            for b_ in range(3):
                hb = hB[b_]
                pp = val(dF_unit(i, a, ha), dB_unit(b_, hb))
                pm = val(dF_unit(i, a, ha), dB_unit(b_, -hb))
                mp = val(dF_unit(i, a, -ha), dB_unit(b_, hb))
                mm = val(dF_unit(i, a, -ha), dB_unit(b_, -hb))
                G[a, i, b_] = (pp - pm - mp + mm) / (4.0 * ha * hb)
    for b_ in range(3):
        hb = hB[b_]
        for a in range(3):
            ha = hB[a]
            if a == b_:
                K[b_, a] = (val(dB=dB_unit(a, ha)) - 2.0 * w0 + val(dB=dB_unit(a, -ha))) / (ha * ha)
            else:
                pp = val(dB=dB_unit(b_, hb) + dB_unit(a, ha))
                pm = val(dB=dB_unit(b_, hb) + dB_unit(a, -ha))
                mp = val(dB=dB_unit(b_, -hb) + dB_unit(a, ha))
                mm = val(dB=dB_unit(b_, -hb) + dB_unit(a, -ha))
                K[b_, a] = (pp - pm - mp + mm) / (4.0 * ha * hb)

    def comp_A(a, i, b_, j):
        return A[a - 1, i - 1, b_ - 1, j - 1]

    reduced = ModuliSet(
        A1111=comp_A(1, 1, 1, 1), A2222=comp_A(2, 2, 2, 2),
        A1122=comp_A(1, 1, 2, 2), A2211=comp_A(2, 2, 1, 1),
        A1212=comp_A(1, 2, 1, 2), A2121=comp_A(2, 1, 2, 1),
        A2112=comp_A(2, 1, 1, 2), A1221=comp_A(1, 2, 2, 1),
        G112=G[0, 0, 1], G222=G[1, 1, 1], G211=G[1, 0, 0], G121=G[0, 1, 0],
        K11=K[0, 0], K22=K[1, 1],
    )
    return FdModuli(moduli=reduced, A_full=A, G_full=G, K_full=K)


def off_pattern_components(fd: FdModuli) -> dict[str, float]:
    """In-plane components that should vanish at the base state.

    Returns a mapping from index label to the finite-difference value, for
    every in-plane component outside the nonzero pattern.
    """
    out: dict[str, float] = {}
    for a in (1, 2):
        for i in (1, 2):
            for b_ in (1, 2):
                for j in (1, 2):
                    if (a, i, b_, j) not in NONZERO_A:
                        out[f"A{a}{i}{b_}{j}"] = fd.A_full[a - 1, i - 1, b_ - 1, j - 1]
    for a in (1, 2):
        for i in (1, 2):
            for b_ in (1, 2):
                if (a, i, b_) not in NONZERO_G:
                    out[f"G{a}{i}{b_}"] = fd.G_full[a - 1, i - 1, b_ - 1]
    for b_ in (1, 2):
        for a in (1, 2):
            if (b_, a) not in NONZERO_K:
                out[f"K{b_}{a}"] = fd.K_full[b_ - 1, a - 1]
    return out
