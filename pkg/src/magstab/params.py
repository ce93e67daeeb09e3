"""Dimensionless material and loading parameterization.

All quantities are dimensionless: stresses in units of the substrate shear
modulus, the vacuum permeability set to one, lengths in units of the
undeformed upper-layer thickness.  The magnetic induction enters only through
the dimensionless number ``b_bar`` (induction normal to the surface divided by
the square root of substrate modulus times vacuum permeability).
"""

from __future__ import annotations

from dataclasses import dataclass

EULERIAN_FIXED = "eulerian-fixed"
LAGRANGIAN_FIXED = "lagrangian-fixed"

#: Coupling pair that reproduces the vacuum relation between induction and
#: field inside a layer; used for "non-magnetizable" material.  (0, 0) would
#: kill the magnetic block of the characteristic equation entirely.
NON_MAGNETIZABLE = (0.0, 1.0)


@dataclass(frozen=True)
class MaterialParams:
    """Per-layer constitutive constants.

    Attributes
    ----------
    mu : float
        Shear modulus in substrate units (substrate itself carries 1.0).
    gamma : float
        Two-term elastic weight in [-1, 1]; +1 is the one-term (neo-Hookean
        style) limit, -1 the opposite extreme.
    alpha, beta : float
        Magnetoelastic coupling constants multiplying the two magnetic
        invariants of the energy.
    """

    mu: float
    gamma: float = 1.0
    alpha: float = 0.0
    beta: float = 1.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"shear modulus must be positive, got {self.mu}")
        if not -1.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [-1, 1], got {self.gamma}")

    @classmethod
    def non_magnetizable(cls, mu: float = 1.0, gamma: float = 1.0) -> "MaterialParams":
        """Layer obeying the vacuum induction-field relation."""
        alpha, beta = NON_MAGNETIZABLE
        return cls(mu=mu, gamma=gamma, alpha=alpha, beta=beta)

    def i4_bar(self, b_bar: float) -> float:
        """Layer-normalized squared induction (substrate-normalized b_bar input)."""
        return b_bar * b_bar / self.mu

    def is_admissible(self, lam: float, b_bar: float) -> bool:
        """True when both factors of the magnetic mode exponent are positive."""
        i4 = self.i4_bar(b_bar)
        return (self.alpha * lam**2 + self.beta > 0.0
                and self.alpha + self.alpha * self.beta * i4 + self.beta * lam**2 > 0.0)


@dataclass(frozen=True)
class LayerStack:
    """Substrate half-space plus a bonded upper layer of unit reference thickness."""

    substrate: MaterialParams
    upper: MaterialParams
    thickness: float = 1.0

    def __post_init__(self):
        if self.thickness != 1.0:
            raise ValueError("lengths are normalized by the layer thickness; it must be 1")

    @classmethod
    def uniform(cls, params: MaterialParams) -> "LayerStack":
        return cls(substrate=params, upper=params)


@dataclass(frozen=True)
class LoadingPoint:
    """Principal stretch, surface-normal induction and perturbation wavenumber.

    ``k`` is the spatial (current-configuration) wavenumber.  Under the default
    ``eulerian-fixed`` convention the referential wavenumber is ``K = lam * k``,
    re-evaluated at every stretch; ``lagrangian-fixed`` holds ``K = k`` instead.
    """

    lam: float
    b_bar: float = 0.0
    k: float = 1.0
    wavenumber_convention: str = EULERIAN_FIXED

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"stretch must be positive, got {self.lam}")
        if self.b_bar < 0:
            raise ValueError(f"b_bar must be non-negative, got {self.b_bar}")
        if not self.k > 0:
            raise ValueError(f"wavenumber must be positive, got {self.k}")
        if self.wavenumber_convention not in (EULERIAN_FIXED, LAGRANGIAN_FIXED):
            raise ValueError(f"unknown wavenumber convention {self.wavenumber_convention!r}")

    @property
    def K(self) -> float:
        """Referential wavenumber."""
        if self.wavenumber_convention == EULERIAN_FIXED:
            return self.lam * self.k
        return self.k

    @property
    def i4_bar(self) -> float:
        """Substrate-normalized squared induction."""
        return self.b_bar * self.b_bar

    def at_stretch(self, lam: float) -> "LoadingPoint":
        """Same loading, different stretch (used while scanning)."""
        return LoadingPoint(lam=lam, b_bar=self.b_bar, k=self.k,
                            wavenumber_convention=self.wavenumber_convention)
