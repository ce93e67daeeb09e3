"""Boundary-condition system assembly and critical-stretch search.

Twelve homogeneous conditions couple the twelve mode amplitudes: six jump
conditions at the interface (two traction components, normal induction,
tangential field, two displacement components) and six at the free surface
(the same set, against the decaying free-space mode).  Bifurcation happens
where the determinant of the column-scaled system vanishes; the search scans
the stretch away from 1 on both sides, brackets sign changes and refines them
by bisection.

The scan itself runs through the flat kernels in :mod:`magstab._kernels`
(numba-compiled when the backend allows); this module re-assembles the full
labelled complex system at reported critical points for diagnostics.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .errors import (AdmissibilityViolated, MagstabError, NumericalInconsistency,
                     RootCoincidence)
from .modes import (ExteriorMode, ModeAmplitudes, TRACTION_EXACT, exterior_mode,
                    layer_mode_basis)
from .moduli import analytic_moduli
from .constitutive import lagrange_multiplier
from .params import EULERIAN_FIXED, LayerStack, LoadingPoint

REDUCTION_FULL = "paper-12"      # full 12-unknown free-space coupling
REDUCTION_REDUCED = "reduced"    # tie the two free-space displacement amplitudes

ROW_LABELS_FULL = (
    "interface:traction-shear", "interface:traction-normal",
    "interface:induction-normal", "interface:field-tangential",
    "interface:displacement-u1", "interface:displacement-u2",
    "surface:traction-shear", "surface:traction-normal",
    "surface:induction-normal", "surface:field-tangential",
    "surface:displacement-u1", "surface:displacement-u2",
)

#: row dropped by the reduced variant: tangential displacement continuity of
#: the fictitious free-space extension, the one condition with no physical
#: content once its two displacement amplitudes are tied together
_REDUCED_DROPPED_ROW = 10


@dataclass(frozen=True)
class SearchOptions:
    """Scan bounds and tolerances for the critical-stretch search.

    ``coincidence_tol`` is the exponent-separation contract honored by the
    generic root solver (:func:`magstab.modes.solve_roots`); the scan kernels
    themselves use the closed-form family roots, merging structural
    coincidences at machine precision with residual-verified mode bases, so
    they never bisect on this tolerance.
    """

    lambda_min: float = 0.2
    lambda_max: float = 3.0
    scan_step: float = 2e-3
    bisection_tol: float = 1e-8
    coincidence_tol: float = 1e-8
    exterior_reduction: str = REDUCTION_FULL
    sides: str = "both"            # both | compression | tension

    def __post_init__(self):
        if not self.lambda_min < 1.0 - 1e-6:
            raise ValueError("lambda_min must sit below the unit-stretch guard band")
        if not self.lambda_max > 1.0 + 1e-6:
            raise ValueError("lambda_max must sit above the unit-stretch guard band")
        if not self.scan_step > self.bisection_tol:
            raise ValueError("scan_step must exceed bisection_tol")
        if self.exterior_reduction not in (REDUCTION_FULL, REDUCTION_REDUCED):
            raise ValueError(f"unknown exterior reduction {self.exterior_reduction!r}")
        if self.sides not in ("both", "compression", "tension"):
            raise ValueError(f"unknown sides selector {self.sides!r}")


@dataclass(frozen=True)
class BoundarySystem:
    """Assembled boundary-condition matrix with bookkeeping."""

    M: np.ndarray
    column_scales: np.ndarray
    row_labels: tuple[str, ...]
    unknown_labels: tuple[str, ...]
    point: LoadingPoint

    @property
    def size(self) -> int:
        return self.M.shape[0]


def _mode_row_coefficients(md: ModeAmplitudes, m, p: float, lam: float) -> np.ndarray:
    """(T21, T22, B2, H1, u1, u2) trace of one interior mode at unit amplitude."""
    r = md.root.r
    l2 = lam * lam
    return np.array([
        m.A2121 * r * md.u1 - (m.A2112 + p) * md.u2 + m.G211 * r * md.psi,
        m.A2211 * md.u1 + (m.A2222 + p * l2) * r * md.u2 - md.p - m.G222 * md.psi,
        -md.psi,
        m.G211 * r * md.u1 - m.G121 * md.u2 + m.K11 * r * md.psi,
        md.u1,
        md.u2,
    ], dtype=complex)


def assemble(stack: LayerStack, point: LoadingPoint,
             modes_substrate: list[ModeAmplitudes],
             modes_upper: list[ModeAmplitudes],
             exterior: ExteriorMode,
             exterior_reduction: str = REDUCTION_FULL) -> BoundarySystem:
    """Build the boundary-condition matrix from per-mode traces.

    Substrate columns carry only the three decaying modes; upper-layer columns
    carry all six, with a per-column exponential pre-scale so growing modes
    never overflow (positive scales, recorded, so determinant signs are
    unaffected).  The free-space column entries absorb their common decay
    factor.
    """
    lam, K, H = point.lam, point.K, stack.thickness
    if abs(lam - 1.0) < 1e-6:
        raise RootCoincidence(lam, "(unit-stretch guard band)")
    if len(modes_substrate) != 3:
        raise MagstabError(f"substrate needs its 3 decaying modes, got {len(modes_substrate)}")
    if len(modes_upper) != 6:
        raise MagstabError(f"upper layer needs all 6 modes, got {len(modes_upper)}")
    m_s = analytic_moduli(stack.substrate, point)
    m_u = analytic_moduli(stack.upper, point)
    p_s = lagrange_multiplier(stack.substrate, lam, point.b_bar)
    p_u = lagrange_multiplier(stack.upper, lam, point.b_bar)

    reduced = exterior_reduction == REDUCTION_REDUCED
    n = 11 if reduced else 12
    M = np.zeros((12, n), dtype=complex)
    scales = np.ones(n)
    labels = []
    for j, md in enumerate(modes_substrate):
        if md.root.r.real <= 0:
            raise MagstabError("substrate modes must decay downwards (Re r > 0)")
        M[0:6, j] = -_mode_row_coefficients(md, m_s, p_s, lam)
        labels.append(f"substrate:{md.root.kind}:r={md.root.r.real:+.6g}")
    for j, md in enumerate(modes_upper):
        c = _mode_row_coefficients(md, m_u, p_u, lam)
        re_r = md.root.r.real
        scale = math.exp(-max(re_r, 0.0) * K * H)
        M[0:6, 3 + j] = c * scale
        M[6:12, 3 + j] = c * np.exp((md.root.r - max(re_r, 0.0)) * K * H)
        scales[3 + j] = scale
        labels.append(f"upper:{md.root.kind}:r={md.root.r.real:+.6g}")

    ext_scale = math.exp(exterior.r_star * K * H)   # < 1, absorbed
    if reduced:
        M[6:12, 9] = exterior.rows[:, 0] + exterior.rows[:, 1]
        M[6:12, 10] = exterior.rows[:, 2]
        scales[9] = scales[10] = ext_scale
        M = np.delete(M, _REDUCED_DROPPED_ROW, axis=0)
        row_labels = tuple(lbl for i, lbl in enumerate(ROW_LABELS_FULL)
                           if i != _REDUCED_DROPPED_ROW)
        labels += ["exterior:displacement", "exterior:potential"]
    else:
        M[6:12, 9:12] = exterior.rows
        scales[9:12] = ext_scale
        row_labels = ROW_LABELS_FULL
        labels += ["exterior:u1", "exterior:u2", "exterior:potential"]
    return BoundarySystem(M=M, column_scales=scales, row_labels=row_labels,
                          unknown_labels=tuple(labels), point=point)


def assemble_at(stack: LayerStack, point: LoadingPoint,
                exterior_reduction: str = REDUCTION_FULL,
                traction_increment: str = TRACTION_EXACT) -> BoundarySystem:
    """Convenience: mode bases plus assembly at one loading point."""
    modes_s = layer_mode_basis(stack.substrate, point, include_negative=False)
    modes_u = layer_mode_basis(stack.upper, point, include_negative=True)
    ext = exterior_mode(point, traction_increment)
    return assemble(stack, point, modes_s, modes_u, ext, exterior_reduction)


def scaled_determinant(sys: BoundarySystem) -> tuple[float, int]:
    """Determinant of the column-normalized matrix and its sign.

    Each column is divided by its max-abs entry before the LU factorization,
    which makes the value invariant to per-mode amplitude scaling.  The
    imaginary part must be negligible whenever all exponents are real.
    """
    M = sys.M
    norms = np.abs(M).max(axis=0)
    norms[norms == 0.0] = 1.0
    det = complex(np.linalg.det(M / norms))
    if abs(det.imag) > 1e-8 * (abs(det) + 1e-300):
        raise NumericalInconsistency(
            f"determinant grew an imaginary part: {det!r} at lam={sys.point.lam}")
    value = det.real
    return value, (0 if value == 0.0 else int(math.copysign(1.0, value)))


def smallest_singular_pair(sys: BoundarySystem) -> tuple[float, float, np.ndarray]:
    """(sigma_min, sigma_max, null-vector) of the column-normalized matrix."""
    M = sys.M
    norms = np.abs(M).max(axis=0)
    norms[norms == 0.0] = 1.0
    u, s, vh = np.linalg.svd(M / norms)
    return float(s[-1]), float(s[0]), vh[-1].conj()


CROSSING_BIFURCATION = "bifurcation"
CROSSING_ARTIFACT = "coincidence-artifact"

#: a refined root closer than this (in exponent-squared gap) to a root-family
#: crossing is a basis artifact: two mode columns become parallel there and the
#: determinant picks up an odd-order zero with no physical content
_ARTIFACT_GAP_TOL = 1e-5


@dataclass(frozen=True)
class Crossing:
    """One refined sign change of the determinant.

    ``kind`` separates physical bifurcations from coincidence artifacts: the
    magnetic root family can cross a mechanical family at isolated stretches,
    where the per-mode columns degenerate and the determinant vanishes to odd
    order without the boundary-value problem admitting a solution.  Such
    crossings sit exactly on the coincidence locus and are excluded from the
    reported critical stretches.
    """

    lam: float
    bracket: tuple[float, float]
    side: str                      # compression | tension
    det_at_root: float
    kind: str = CROSSING_BIFURCATION
    null_residual: float = float("nan")
    sigma_min: float = float("nan")
    sigma_max: float = float("nan")


@dataclass
class SearchDiagnostics:
    det_evals: int = 0
    perturbations: list[float] = field(default_factory=list)
    even_dips: list[tuple[float, float]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    trace: list[tuple[float, float, int]] | None = None


@dataclass(frozen=True)
class CriticalResult:
    """Critical stretches nearest the undeformed state on each side."""

    lambda_cr_compression: float | None
    lambda_cr_tension: float | None
    crossings: tuple[Crossing, ...]
    diagnostics: SearchDiagnostics
    status: str = "ok"


def _kernel_args(stack: LayerStack, k: float, b_bar: float, convention: str,
                 exterior_reduction: str):
    s, u = stack.substrate, stack.upper
    return (k, convention == EULERIAN_FIXED, b_bar,
            s.mu, s.gamma, s.alpha, s.beta, u.mu, u.gamma, u.alpha, u.beta,
            exterior_reduction == REDUCTION_REDUCED)


def determinant_at(stack: LayerStack, point: LoadingPoint,
                   exterior_reduction: str = REDUCTION_FULL) -> float:
    """Kernel-path determinant at one stretch (with coincidence retry)."""
    k_args = _kernel_args(stack, point.k, point.b_bar, point.wavenumber_convention,
                          exterior_reduction)
    d, st, _, _ = _kernels.det_eval_retry(point.lam, *k_args)
    if st == _kernels.STATUS_INADMISSIBLE:
        raise AdmissibilityViolated(f"inadmissible parameters at lam={point.lam}")
    if st == _kernels.STATUS_COINCIDENT:
        raise RootCoincidence(point.lam, "(unresolved after stretch nudges)")
    return float(d)


def _scan_side(lams: np.ndarray, k_args, diag: SearchDiagnostics,
               keep_trace: bool):
    dets, statuses, used, n_evals = _kernels.scan_determinant(lams, *k_args)
    diag.det_evals += int(n_evals)
    for i in range(len(lams)):
        if used[i] != lams[i]:
            diag.perturbations.append(float(lams[i]))
        if statuses[i] != _kernels.STATUS_OK:
            diag.failures.append(f"status {int(statuses[i])} at lam={lams[i]:.6g}")
    if keep_trace:
        if diag.trace is None:
            diag.trace = []
        diag.trace += [(float(l), float(d), int(s))
                       for l, d, s in zip(lams, dets, statuses)]
    return dets, statuses


def _find_even_dips(lams, dets, statuses, diag: SearchDiagnostics):
    """Flag |det| minima without sign change: suspected even-multiplicity roots."""
    a = np.abs(dets)
    for i in range(1, len(lams) - 1):
        if statuses[i - 1] or statuses[i] or statuses[i + 1]:
            continue
        if not (a[i] < a[i - 1] and a[i] < a[i + 1]):
            continue
        if np.sign(dets[i - 1]) != np.sign(dets[i + 1]):
            continue
        shoulder = max(a[i - 1], a[i + 1])
        if not a[i] < 3e-2 * shoulder:
            continue            # regular extremum, not a grazing zero
        # quadratic fit through the three points; a grazing root drives the
        # vertex to (near) zero relative to the shoulders
        coeffs = np.polyfit(lams[i - 1:i + 2], dets[i - 1:i + 2], 2)
        if coeffs[0] == 0.0:
            continue
        vertex = -coeffs[1] / (2.0 * coeffs[0])
        vertex_val = np.polyval(coeffs, vertex)
        if abs(vertex_val) < 5e-2 * shoulder and lams.min() <= vertex <= lams.max():
            diag.even_dips.append((float(vertex), float(vertex_val)))


def _coincidence_gap(stack: LayerStack, lam: float, b_bar: float) -> float:
    """Distance (in exponent squared) to the nearest root-family crossing.

    Structurally merged families (beta = 0 joins the magnetic and shear
    families for every stretch, alpha = 0 the magnetic and thickness families)
    carry a two-dimensional mode basis and are not crossing loci; they are
    skipped.
    """
    from .modes import magnetic_root_squared

    gap = math.inf
    for params in (stack.substrate, stack.upper):
        try:
            s3 = magnetic_root_squared(params,
                                       LoadingPoint(lam=lam, b_bar=b_bar))
        except MagstabError:
            continue
        if params.beta != 0.0:
            gap = min(gap, abs(s3 - 1.0))
        if params.alpha != 0.0:
            gap = min(gap, abs(s3 - lam**-4))
    return gap


def _bisect_brackets(lams, dets, statuses, side, stack, b_bar, k_args, opts, diag):
    out = []
    for i in range(len(lams) - 1):
        if statuses[i] != _kernels.STATUS_OK or statuses[i + 1] != _kernels.STATUS_OK:
            continue
        if dets[i] == 0.0 or np.sign(dets[i]) == np.sign(dets[i + 1]):
            continue
        lo, hi = (lams[i], lams[i + 1]) if lams[i] < lams[i + 1] else (lams[i + 1], lams[i])
        flo = dets[i] if lams[i] < lams[i + 1] else dets[i + 1]
        root, n, ok = _kernels.bisect_sign_change(
            lo, hi, flo, *k_args, opts.bisection_tol, 80)
        diag.det_evals += int(n)
        if not ok:
            diag.failures.append(f"bisection aborted in [{lo:.6g}, {hi:.6g}]")
            continue
        d_root, st, _, ne = _kernels.det_eval_retry(root, *k_args)
        diag.det_evals += int(ne)
        kind = CROSSING_BIFURCATION
        if _coincidence_gap(stack, float(root), b_bar) < _ARTIFACT_GAP_TOL:
            kind = CROSSING_ARTIFACT
            diag.failures.append(
                f"excluded coincidence-artifact crossing at lam={root:.8g}")
        out.append(Crossing(lam=float(root), bracket=(float(lo), float(hi)),
                            side=side, det_at_root=float(d_root), kind=kind))
    return out


def _with_residuals(stack, crossing: Crossing, k, b_bar, convention, reduction):
    point = LoadingPoint(lam=crossing.lam, b_bar=b_bar, k=k,
                         wavenumber_convention=convention)
    try:
        sys = assemble_at(stack, point, reduction)
        smin, smax, v = smallest_singular_pair(sys)
        norms = np.abs(sys.M).max(axis=0)
        norms[norms == 0.0] = 1.0
        resid = float(np.abs((sys.M / norms) @ v).max())
        return replace(crossing, null_residual=resid, sigma_min=smin, sigma_max=smax)
    except MagstabError:
        return crossing


def find_critical(stack: LayerStack, k: float, b_bar: float,
                  opts: SearchOptions | None = None,
                  wavenumber_convention: str = EULERIAN_FIXED,
                  keep_trace: bool = False) -> CriticalResult:
    """Locate the critical stretches nearest the undeformed state.

    Scans downward from just below 1 to ``lambda_min`` and upward from just
    above 1 to ``lambda_max``, brackets every determinant sign change, refines
    each by bisection and reports the crossing nearest 1 on each side (the
    first bifurcation met while loading).  Minima of |det| without a sign
    change are recorded as suspected even-multiplicity roots, never as
    critical stretches.  Finding no crossing is a normal outcome, not an
    error.
    """
    if not k > 0:
        raise ValueError(f"wavenumber must be positive, got {k}")
    if b_bar < 0:
        raise ValueError(f"b_bar must be non-negative, got {b_bar}")
    opts = opts or SearchOptions()
    k_args = _kernel_args(stack, k, b_bar, wavenumber_convention,
                          opts.exterior_reduction)
    diag = SearchDiagnostics()
    crossings: list[Crossing] = []
    status = "ok"

    sides = []
    if opts.sides in ("both", "compression"):
        sides.append(("compression",
                      np.arange(1.0 - 1e-3, opts.lambda_min, -opts.scan_step)))
    if opts.sides in ("both", "tension"):
        sides.append(("tension",
                      np.arange(1.0 + 1e-3, opts.lambda_max, opts.scan_step)))
    try:
        for side, lams in sides:
            dets, statuses = _scan_side(lams, k_args, diag, keep_trace)
            if (statuses == _kernels.STATUS_INADMISSIBLE).all():
                raise AdmissibilityViolated(f"inadmissible over the whole {side} scan")
            _find_even_dips(lams, dets, statuses, diag)
            crossings += _bisect_brackets(lams, dets, statuses, side, stack, b_bar,
                                          k_args, opts, diag)
    except AdmissibilityViolated as exc:
        diag.failures.append(str(exc))
        return CriticalResult(None, None, (), diag, status="admissibility-violated")
    except NumericalInconsistency as exc:
        diag.failures.append(str(exc))
        return CriticalResult(None, None, (), diag, status="numerical-inconsistency")

    genuine = [c for c in crossings if c.kind == CROSSING_BIFURCATION]
    comp = [c for c in genuine if c.side == "compression"]
    tens = [c for c in genuine if c.side == "tension"]
    lam_comp = max((c.lam for c in comp), default=None)
    lam_tens = min((c.lam for c in tens), default=None)
    convention = wavenumber_convention
    reported = []
    for c in crossings:
        if c.lam in (lam_comp, lam_tens):
            c = _with_residuals(stack, c, k, b_bar, convention, opts.exterior_reduction)
        reported.append(c)
    if lam_comp is None and lam_tens is None and status == "ok":
        status = "no-crossing"
    return CriticalResult(lambda_cr_compression=lam_comp, lambda_cr_tension=lam_tens,
                          crossings=tuple(reported), diagnostics=diag, status=status)


@dataclass(frozen=True)
class SweepCase:
    """One grid point of a parameter sweep."""

    case_id: str
    stack: LayerStack
    k: float
    b_bar: float


def sweep(cases: list[SweepCase], opts: SearchOptions | None = None,
          wavenumber_convention: str = EULERIAN_FIXED,
          threads: int = 1) -> list[tuple[SweepCase, CriticalResult]]:
    """Run :func:`find_critical` over a case list.

    Grid points are independent; with ``threads > 1`` they run concurrently
    (the jitted kernels release the GIL).  Output order always follows the
    input order, and per-point failures are recorded in the result status
    instead of aborting the sweep.
    """
    opts = opts or SearchOptions()

    def run(case: SweepCase) -> CriticalResult:
        try:
            return find_critical(case.stack, case.k, case.b_bar, opts,
                                 wavenumber_convention)
        except (MagstabError, ValueError) as exc:
            diag = SearchDiagnostics(failures=[str(exc)])
            return CriticalResult(None, None, (), diag, status="numerical-inconsistency")

    if threads <= 1 or len(cases) <= 1:
        results = [run(c) for c in cases]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, cases))
    return list(zip(cases, results))
