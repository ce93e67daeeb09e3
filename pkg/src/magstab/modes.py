"""Characteristic equation, mode exponents, amplitudes and the free-space mode.

Perturbations are taken periodic along the surface and exponential through the
depth, ``exp(r K X2)`` with referential wavenumber ``K``.  Eliminating the
amplitudes from the incremental field equations yields a bicubic in ``r**2``
whose six roots split into three families: a shear family (``r**2 = 1``), a
thickness-pressure family (``r**2 = lam**-4``) and a magnetic family.  Each
mode carries four amplitudes (tangential and normal displacement, flux
potential, pressure); per root, three of the four incremental relations are
independent and fix the amplitude ratios.

For non-magnetizable layers (``alpha = 0``) the magnetic family coincides with
the pressure family for every stretch, and for ``beta = 0`` with the shear
family.  These persistent coincidences are semisimple: the mode space is
two-dimensional and a fixed mechanical/magnetic basis spans it, so they are
handled structurally rather than by perturbing the stretch (which cannot
separate them).  Accidental coincidences at isolated stretches are detected
through residual checks and reported via :class:`RootCoincidence`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constitutive import lagrange_multiplier
from .errors import AdmissibilityViolated, DegenerateMode, RootCoincidence
from .moduli import ModuliSet, analytic_moduli
from .params import LoadingPoint, MaterialParams

KIND_SHEAR = "mechanical-shear"
KIND_PRESSURE = "mechanical-pressure"
KIND_MAGNETIC = "magnetic"
KIND_GENERIC = "generic"

#: relative tolerance that identifies structural (all-stretch) coincidences
S_MERGE_RTOL = 1e-11


@dataclass(frozen=True)
class ModeRoot:
    """One exponent of the depth profile ``exp(r K X2)``."""

    r: complex
    kind: str = KIND_GENERIC
    multiplicity: int = 1

    @property
    def decaying(self) -> bool:
        """True when the mode decays into the substrate (X2 -> -inf)."""
        return self.r.real > 0


def bicubic_coefficients(m: ModuliSet, p: float, lam: float) -> tuple[float, float, float, float]:
    """Coefficients (c6, c4, c2, c0) of the characteristic bicubic in r.

    The characteristic polynomial is pressure-independent: ``p`` drops out of
    the eliminated system (it is kept in the signature because the amplitude
    relations built from the same base state do require it).
    """
    del p
    l2 = lam * lam
    l4 = l2 * l2
    c6 = (m.A2121 * m.K11 - m.G211**2) * l4
    c4 = -(m.A2222 * m.K11
           - 2.0 * (m.A2211 * m.K11 + m.A2112 * m.K11 + m.G211 * m.G222
                    - m.G121 * m.G211) * l2
           + (m.A1111 * m.K11 + m.A2121 * m.K22 + 2.0 * m.G112 * m.G211) * l4)
    c2 = (m.A1212 * m.K11 + m.A2222 * m.K22 - m.G121**2 + 2.0 * m.G121 * m.G222
          - m.G222**2
          - 2.0 * (m.A2112 * m.K22 + m.A2211 * m.K22 + m.G112 * m.G121
                   - m.G112 * m.G222) * l2
          + (m.A1111 * m.K22 - m.G112**2) * l4)
    c0 = -m.A1212 * m.K22
    return c6, c4, c2, c0


def bicubic_residual(coeffs, r: complex) -> float:
    """|polynomial value| at ``r``, for residual gates."""
    c6, c4, c2, c0 = coeffs
    s = r * r
    return abs(((c6 * s + c4) * s + c2) * s + c0)


def magnetic_root_squared(params: MaterialParams, point: LoadingPoint) -> float:
    """Closed-form square of the magnetic family exponent."""
    lam = point.lam
    i4b = params.i4_bar(point.b_bar)
    den = (params.alpha + params.alpha * params.beta * i4b
           + params.beta * lam**2) * lam**2
    if den <= 0.0:
        raise AdmissibilityViolated(
            f"magnetic exponent denominator non-positive at lam={lam}, params={params}")
    s3 = (params.alpha * lam**2 + params.beta) / den
    if s3 <= 0.0:
        raise AdmissibilityViolated(
            f"magnetic exponent squared non-positive at lam={lam}, params={params}")
    return s3


def _merge_s_families(params: MaterialParams, point: LoadingPoint):
    """(s, multiplicity, kind) per family, canonical order, doubles merged."""
    lam = point.lam
    s3 = magnetic_root_squared(params, point)
    fams = [(1.0, 1, KIND_SHEAR), (lam**-4, 1, KIND_PRESSURE), (s3, 1, KIND_MAGNETIC)]
    if abs(fams[0][0] - fams[1][0]) <= S_MERGE_RTOL:
        raise RootCoincidence(lam, "(shear and pressure families)")
    for mech in (0, 1):
        if abs(s3 - fams[mech][0]) <= S_MERGE_RTOL * max(1.0, s3):
            fams[mech] = (fams[mech][0], 2, fams[mech][2])
            fams.pop(2)
            break
    return fams


def mooney_rivlin_roots(params: MaterialParams, point: LoadingPoint) -> list[ModeRoot]:
    """All six exponents, family-ordered, structural doubles merged."""
    out = []
    for sign in (1.0, -1.0):
        for s, mult, kind in _merge_s_families(params, point):
            out.append(ModeRoot(r=sign * float(np.sqrt(s)), kind=kind, multiplicity=mult))
    return out


def solve_roots(coeffs, lam: float | None = None, coincidence_tol: float = 1e-8,
                on_coincidence: str = "cluster") -> list[ModeRoot]:
    """Six exponents of a general bicubic, via companion eigenvalues.

    The cubic in ``s = r**2`` is solved by ``numpy.roots``; eigenvalues closer
    than a relative 1e-6 are clustered and replaced by their mean, which
    restores full accuracy at double roots (the cluster sum is as
    well-conditioned as the polynomial coefficients).  ``on_coincidence``
    selects what to do with a multiple root: ``"cluster"`` returns it with its
    multiplicity recorded, ``"raise"`` raises :class:`RootCoincidence`.

    Roots are returned sorted by descending real part.
    """
    c6, c4, c2, c0 = coeffs
    if c6 == 0:
        raise DegenerateMode("leading bicubic coefficient vanished")
    s_raw = np.roots([c6, c4, c2, c0])
    scale = max(1.0, np.abs(s_raw).max())
    clusters: list[list[complex]] = []
    for s in sorted(s_raw, key=lambda z: (z.real, z.imag)):
        if clusters and abs(s - clusters[-1][0]) <= 1e-6 * scale:
            clusters[-1].append(s)
        else:
            clusters.append([s])
    roots: list[ModeRoot] = []
    for group in clusters:
        s_mean = complex(np.mean(group))
        if abs(s_mean.imag) <= 1e-10 * scale:
            s_mean = complex(s_mean.real, 0.0)
        r = np.sqrt(s_mean)
        for sign in (1.0, -1.0):
            roots.append(ModeRoot(r=sign * r, kind=KIND_GENERIC, multiplicity=len(group)))
    if on_coincidence == "raise":
        for root in roots:
            if root.multiplicity > 1:
                raise RootCoincidence(lam, f"(multiplicity {root.multiplicity})")
    flat = [z.r for z in roots for _ in range(z.multiplicity)]
    for i, a in enumerate(flat):
        for b in flat[i + 1:]:
            if a != b and abs(a - b) < coincidence_tol and on_coincidence == "raise":
                raise RootCoincidence(lam, "(near-coincident pair)")
    return sorted(roots, key=lambda z: -z.r.real)


@dataclass(frozen=True)
class ModeAmplitudes:
    """Amplitudes of one mode: tangential/normal displacement, flux potential,
    pressure; plus the residual of the unused equilibrium relation."""

    root: ModeRoot
    u1: complex
    u2: complex
    psi: complex
    p: complex
    residual_unused: float = 0.0

    def vector(self) -> np.ndarray:
        return np.array([self.u1, self.u2, self.psi, self.p])


def incremental_system_matrix(m: ModuliSet, p: float, lam: float, r: complex) -> np.ndarray:
    """4x4 relations among (u1, u2, psi, p) amplitudes at exponent ``r``.

    Rows: incompressibility, field-curl compatibility, and the two equilibrium
    components.  A value of ``r`` solves the characteristic equation exactly
    when this matrix is singular.
    """
    l2 = lam * lam
    r2 = r * r
    return np.array([
        [1.0, r * l2, 0.0, 0.0],
        [r2 * m.G211 + m.G112, r * (m.G222 - m.G121), r2 * m.K11 - m.K22, 0.0],
        [r2 * m.A2121 - m.A1111 - p / l2, -r * (m.A1122 + m.A2112 + p),
         r2 * m.G211 + m.G112, 1.0 / l2],
        [r * (m.A1221 + m.A2211 + p), r2 * (m.A2222 + p * l2) - m.A1212,
         r * (m.G121 - m.G222), -r],
    ], dtype=complex)


def _coeff_scale(m: ModuliSet, p: float, lam: float) -> float:
    return abs(m.A2222) + abs(p) * (1.0 + lam * lam) + abs(m.A1212) + 1.0


def amplitude_eliminate(m: ModuliSet, p: float, point: LoadingPoint,
                        root: ModeRoot) -> ModeAmplitudes:
    """Amplitude ratios of a simple mode, normalized to unit tangential
    displacement (or unit potential when the mode decouples magnetically).

    Solves incompressibility, the curl relation and the first equilibrium
    component for (u2, psi, p) at u1 = 1; the second equilibrium component is
    dependent at a true root and its residual is recorded as a check.
    """
    lam = point.lam
    l2 = lam * lam
    r = root.r
    r2 = r * r
    scale = _coeff_scale(m, p, lam)

    den = r2 * m.K11 - m.K22
    curl_u1 = r2 * m.G211 + m.G112
    curl_u2 = r * (m.G222 - m.G121)

    def pressure(u1, u2, psi):
        return -l2 * ((r2 * m.A2121 - m.A1111 - p / l2) * u1
                      - r * (m.A1122 + m.A2112 + p) * u2
                      + (r2 * m.G211 + m.G112) * psi)

    def unused_residual(u1, u2, psi, pr):
        return abs(r * (m.A1221 + m.A2211 + p) * u1
                   + (r2 * (m.A2222 + p * l2) - m.A1212) * u2
                   + r * (m.G121 - m.G222) * psi - r * pr)

    if abs(r) < 1e-300:
        raise DegenerateMode("zero exponent")
    u1 = 1.0 + 0.0j
    u2 = -1.0 / (r * l2)
    if abs(den) < 1e-10 * max(1.0, abs(m.K11) + abs(m.K22)):
        num = curl_u1 * u1 + curl_u2 * u2
        if abs(num) > 1e-9 * scale:
            raise RootCoincidence(lam, "(degenerate curl relation off the magnetic family)")
        # magnetically decoupled mode; fall back to unit potential
        psi = 1.0 + 0.0j
        pr = pressure(0.0, 0.0, psi)
        res = unused_residual(0.0, 0.0, psi, pr)
        if res > 1e-7 * scale * max(1.0, abs(pr)):
            raise RootCoincidence(lam, "(decoupled magnetic mode inconsistent)")
        return ModeAmplitudes(root=root, u1=0.0, u2=0.0, psi=psi, p=pr,
                              residual_unused=res)
    psi = -(curl_u1 * u1 + curl_u2 * u2) / den
    pr = pressure(u1, u2, psi)
    res = unused_residual(u1, u2, psi, pr)
    if res > 1e-7 * scale * max(1.0, abs(psi), abs(pr) / l2):
        raise RootCoincidence(lam, "(dependent equilibrium residual too large)")
    return ModeAmplitudes(root=root, u1=u1, u2=u2, psi=psi, p=pr, residual_unused=res)


def _double_root_basis(m: ModuliSet, p: float, point: LoadingPoint,
                       root: ModeRoot) -> list[ModeAmplitudes]:
    """Mechanical/magnetic basis of a structurally double root."""
    lam = point.lam
    l2 = lam * lam
    r = root.r
    r2 = r * r
    scale = _coeff_scale(m, p, lam)
    u1, u2 = 1.0 + 0.0j, -1.0 / (r * l2)
    curl = (r2 * m.G211 + m.G112) * u1 + r * (m.G222 - m.G121) * u2
    pr = -l2 * ((r2 * m.A2121 - m.A1111 - p / l2) * u1
                - r * (m.A1122 + m.A2112 + p) * u2)
    res = abs(r * (m.A1221 + m.A2211 + p) * u1
              + (r2 * (m.A2222 + p * l2) - m.A1212) * u2 - r * pr)
    if abs(curl) > 1e-8 * scale or res > 1e-7 * scale:
        raise RootCoincidence(lam, "(coincident root without a two-dimensional basis)")
    mech = ModeAmplitudes(root=root, u1=u1, u2=u2, psi=0.0, p=pr, residual_unused=res)
    p2 = -l2 * (r2 * m.G211 + m.G112)
    res2 = abs(r * (m.G121 - m.G222) - r * p2)
    if res2 > 1e-7 * scale * max(1.0, abs(p2)):
        raise RootCoincidence(lam, "(magnetic vector of coincident root inconsistent)")
    mag = ModeAmplitudes(root=root, u1=0.0, u2=0.0, psi=1.0 + 0.0j, p=p2,
                         residual_unused=res2)
    return [mech, mag]


def layer_mode_basis(params: MaterialParams, point: LoadingPoint,
                     include_negative: bool) -> list[ModeAmplitudes]:
    """Complete mode basis of one layer (3 decaying modes, or all 6)."""
    m = analytic_moduli(params, point)
    p = lagrange_multiplier(params, point.lam, point.b_bar)
    out: list[ModeAmplitudes] = []
    for root in mooney_rivlin_roots(params, point):
        if root.r.real < 0 and not include_negative:
            continue
        if root.multiplicity == 1:
            out.append(amplitude_eliminate(m, p, point, root))
        elif root.multiplicity == 2:
            out.extend(_double_root_basis(m, p, point, root))
        else:
            raise RootCoincidence(point.lam, f"(multiplicity {root.multiplicity})")
    return out


#: Free-space incremental traction variants.  "exact" carries the full
#: first-order increment of the referential magnetic traction, including the
#: volume-change terms of the surface extension; it is variationally
#: consistent and reproduces the published benchmark trends.  "truncated"
#: drops those terms (trading the tangential-stretch contribution for a
#: normal-gradient one); the two coincide whenever the extension amplitudes
#: satisfy u1 = u2.
TRACTION_EXACT = "exact"
TRACTION_TRUNCATED = "truncated"

EXTERIOR_ROW_LABELS = ("traction-shear", "traction-normal", "induction-normal",
                       "field-tangential", "displacement-u1", "displacement-u2")


@dataclass(frozen=True)
class ExteriorMode:
    """Decaying free-space mode: exponent and boundary-row coefficients.

    ``rows`` holds the free-space contributions to the six surface conditions,
    ordered as :data:`EXTERIOR_ROW_LABELS` and signed so that each condition
    reads ``interior trace + rows @ (u1*, u2*, psi*) = 0`` for the three
    free-space amplitudes (tangential displacement, normal displacement, flux
    potential), with the common decay factor absorbed into the amplitudes.
    """

    r_star: float
    rows: np.ndarray
    traction_increment: str = TRACTION_EXACT


def exterior_mode(point: LoadingPoint,
                  traction_increment: str = TRACTION_EXACT) -> ExteriorMode:
    """Free-space mode decaying above the surface (exponent ``-1/lam**2``)."""
    lam, b = point.lam, point.b_bar
    l2 = lam * lam
    b2l2 = b * b / l2
    bl = b / lam
    rows = np.zeros((6, 3))
    rows[0] = (b2l2, 0.5 * b2l2, bl)
    if traction_increment == TRACTION_EXACT:
        rows[1] = (0.5 * b2l2, 0.0, bl)
    elif traction_increment == TRACTION_TRUNCATED:
        rows[1] = (0.0, 0.5 * b2l2, bl)
    else:
        raise ValueError(f"unknown traction increment variant {traction_increment!r}")
    rows[2] = (0.0, 0.0, 1.0)
    rows[3] = (bl, bl, 1.0)
    rows[4] = (-1.0, 0.0, 0.0)
    rows[5] = (0.0, -1.0, 0.0)
    return ExteriorMode(r_star=-1.0 / l2, rows=rows, traction_increment=traction_increment)
