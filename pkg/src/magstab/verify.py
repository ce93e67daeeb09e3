"""Built-in acceptance suite.

Runs the quantitative gates behind ``magstab verify``: benchmark critical
stretches, the finite-difference moduli gate, the characteristic-equation
factorization gate, structural properties of the assembled system, and the
exploratory cross-checks (two-term weight insensitivity, full vs reduced
free-space coupling).  Each check prints one pass/fail line; the combined
outcome and details go into a machine-readable report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ._accel import BACKEND
from .constitutive import MooneyRivlinEnergy, lagrange_multiplier
from .dispersion import (REDUCTION_FULL, REDUCTION_REDUCED, SearchOptions,
                         assemble_at, find_critical, scaled_determinant, sweep)
from .moduli import analytic_moduli, fd_moduli, off_pattern_components
from .modes import bicubic_coefficients, bicubic_residual, mooney_rivlin_roots, solve_roots
from .params import LayerStack, LoadingPoint, MaterialParams
from .presets import figure_preset

BIOT_STRETCH = 0.5437            # benchmark plane-strain surface-instability value

_MODULI_GRID = dict(lams=(0.3, 0.6, 0.999999, 1.5, 2.5),
                    b_bars=(0.0, 0.5, 1.0, 2.0, 5.0),
                    betas=(0.0, 0.5, 1.0),
                    alpha=0.5, gamma=0.4, mu=1.7)


@dataclass
class CheckResult:
    cid: str
    name: str
    passed: bool
    details: dict = field(default_factory=dict)


def _nonmag_stack(ratio: float = 1.0, gamma: float = 1.0) -> LayerStack:
    return LayerStack(substrate=MaterialParams.non_magnetizable(1.0, gamma),
                      upper=MaterialParams.non_magnetizable(ratio, gamma))


def _identical_stack(alpha: float, beta: float) -> LayerStack:
    return LayerStack.uniform(MaterialParams(mu=1.0, gamma=1.0, alpha=alpha, beta=beta))


def _compression_opts(**kw) -> SearchOptions:
    return SearchOptions(sides="compression", **kw)


def check_biot(fast: bool) -> CheckResult:
    """Criterion 1: uniform passive half-space bifurcates at the benchmark
    stretch for every wavenumber."""
    ks = (0.5, 1.0, 2.0, 5.0)
    values = {}
    residual_pairs = []
    ok = True
    for k in ks:
        res = find_critical(_nonmag_stack(), k, 0.0, _compression_opts())
        lam = res.lambda_cr_compression
        values[k] = lam
        ok &= lam is not None and abs(lam - BIOT_STRETCH) <= 1e-3
        residual_pairs += [(c.null_residual, c.sigma_max) for c in res.crossings
                           if c.lam == lam and np.isfinite(c.null_residual)]
    return CheckResult("criterion-1", "uniform passive half-space benchmark",
                       ok, {"lambda_cr": values, "_residual_pairs": residual_pairs})


def check_stiffness_ratios(fast: bool) -> CheckResult:
    """Criterion 2: bilayer stiffness-contrast benchmark values at k = 1."""
    targets = {0.5: 0.4350, 5.0: 0.8259, 10.0: 0.8744}
    values = {}
    ok = True
    residual_pairs = []
    for ratio, target in targets.items():
        res = find_critical(_nonmag_stack(ratio), 1.0, 0.0, _compression_opts())
        lam = res.lambda_cr_compression
        values[ratio] = lam
        ok &= lam is not None and abs(lam - target) <= 2e-3
        residual_pairs += [(c.null_residual, c.sigma_max) for c in res.crossings
                           if c.lam == lam and np.isfinite(c.null_residual)]
    return CheckResult("criterion-2", "stiffness-ratio benchmark values", ok,
                       {"lambda_cr": values, "targets": targets,
                        "_residual_pairs": residual_pairs})


def check_magnetoelastic_anchor(fast: bool) -> CheckResult:
    """Criterion 3: zero-field anchor for all couplings, plus induction trends."""
    ok = True
    anchors = {}
    for beta in (0.0, 0.5, 1.0, 2.0, 5.0):
        res = find_critical(_identical_stack(0.5, beta), 1.0, 0.0, _compression_opts())
        lam = res.lambda_cr_compression
        anchors[beta] = lam
        ok &= lam is not None and abs(lam - BIOT_STRETCH) <= 1e-3
    b_grid = (0.0, 0.5, 1.0) if fast else (0.0, 0.25, 0.5, 0.75, 1.0)
    trends = {}
    for beta, direction in ((1.0, "non-increasing"), (0.0, "non-decreasing")):
        series = []
        for b in b_grid:
            res = find_critical(_identical_stack(0.5, beta), 1.0, b, _compression_opts())
            series.append(res.lambda_cr_compression)
        trends[beta] = series
        if any(v is None for v in series):
            ok = False
            continue
        diffs = np.diff(series)
        if direction == "non-increasing":
            ok &= bool((diffs <= 1e-6).all())
        else:
            ok &= bool((diffs >= -1e-6).all())
    return CheckResult("criterion-3", "magnetoelastic half-space anchor and trends",
                       ok, {"anchors": anchors, "trends": trends})


def _moduli_points():
    g = _MODULI_GRID
    for lam in g["lams"]:
        for b in g["b_bars"]:
            for beta in g["betas"]:
                yield (MaterialParams(mu=g["mu"], gamma=g["gamma"],
                                      alpha=g["alpha"], beta=beta),
                       LoadingPoint(lam=lam, b_bar=b))


def check_moduli_gate(fast: bool) -> CheckResult:
    """Criterion 4: analytic moduli against the finite-difference oracle."""
    worst_rel, worst_off = 0.0, 0.0
    points = list(_moduli_points())
    if fast:
        points = points[::5]
    for params, point in points:
        ana = analytic_moduli(params, point).as_dict()
        # step chosen to balance truncation against roundoff at the largest
        # energies on the grid
        fd = fd_moduli(MooneyRivlinEnergy(params), point, step=2e-4)
        fdd = fd.moduli.as_dict()
        for name, a in ana.items():
            rel = abs(a - fdd[name]) / max(1.0, abs(a))
            worst_rel = max(worst_rel, rel)
        worst_off = max(worst_off,
                        max(abs(v) for v in off_pattern_components(fd).values()))
    ok = worst_rel < 1e-6 and worst_off < 1e-8
    return CheckResult("criterion-4", "moduli finite-difference gate", ok,
                       {"n_points": len(points), "worst_rel": worst_rel,
                        "worst_off_pattern": worst_off})


def _expanded_coefficients(params: MaterialParams, point: LoadingPoint):
    """Product form of the characteristic cubic in s = r**2."""
    lam = point.lam
    i4b = params.i4_bar(point.b_bar)
    D = (params.alpha + params.alpha * params.beta * i4b
         + params.beta * lam**2) * lam**2
    N = params.alpha * lam**2 + params.beta
    poly = np.polymul(np.polymul([1.0, -1.0], [lam**4, -1.0]), [D, -N])
    return tuple(poly)


def check_factorization_gate(fast: bool) -> CheckResult:
    """Criterion 5: general bicubic equals its product form; closed-form roots
    solve it; the generic cubic solver agrees with the closed forms.

    The solver comparison is gated only where the three exponent families are
    separated: polynomial root extraction is intrinsically ill-conditioned
    when all families collapse together (the just-below-unit-stretch grid
    point), which is why the production path carries the closed forms.
    """
    worst_coeff, worst_resid = 0.0, 0.0
    worst_solver_sep, worst_solver_any = 0.0, 0.0
    points = list(_moduli_points())
    if fast:
        points = points[::5]
    for params, point in points:
        m = analytic_moduli(params, point)
        p = lagrange_multiplier(params, point.lam, point.b_bar)
        coeffs = np.array(bicubic_coefficients(m, p, point.lam))
        expanded = np.array(_expanded_coefficients(params, point))
        ca = coeffs / np.abs(coeffs).max()
        cb = expanded / np.abs(expanded).max()
        if ca[0] * cb[0] < 0:
            cb = -cb
        worst_coeff = max(worst_coeff, float(np.abs(ca - cb).max()))
        scale = float(np.abs(coeffs).max())
        closed = mooney_rivlin_roots(params, point)
        for root in closed:
            worst_resid = max(worst_resid,
                              bicubic_residual(tuple(coeffs), root.r) / scale)
        generic = solve_roots(tuple(coeffs))
        closed_flat = sorted([z.r.real for z in closed for _ in range(z.multiplicity)])
        generic_flat = sorted([z.r.real for z in generic for _ in range(z.multiplicity)])
        delta = float(np.abs(np.array(closed_flat) - np.array(generic_flat)).max())
        worst_solver_any = max(worst_solver_any, delta)
        s_distinct = sorted({round(z.r.real**2, 14) for z in closed if z.r.real > 0})
        sep = min(np.diff(s_distinct)) if len(s_distinct) > 1 else np.inf
        if sep > 1e-4:
            worst_solver_sep = max(worst_solver_sep, delta)
    ok = worst_coeff < 1e-10 and worst_resid < 1e-10 and worst_solver_sep < 1e-10
    return CheckResult("criterion-5", "characteristic-equation factorization gate",
                       ok, {"worst_coeff_delta": worst_coeff,
                            "worst_root_residual": worst_resid,
                            "worst_solver_delta_separated": worst_solver_sep,
                            "worst_solver_delta_any": worst_solver_any})


def _block_decomposition_delta(stack, point):
    """Full determinant vs product of mechanical/magnetic block determinants."""
    sys = assemble_at(stack, point)
    M = sys.M.copy()
    norms = np.abs(M).max(axis=0)
    norms[norms == 0.0] = 1.0
    M /= norms
    mech_rows = [0, 1, 4, 5, 6, 7, 10, 11]
    mag_rows = [2, 3, 8, 9]
    mag_cols = [j for j, lbl in enumerate(sys.unknown_labels)
                if lbl.endswith("potential")
                or ("upper" in lbl or "substrate" in lbl)
                and abs(sys.M[4, j]) + abs(sys.M[5, j]) == 0.0]
    mech_cols = [j for j in range(12) if j not in mag_cols]
    perm_rows = mech_rows + mag_rows
    perm_cols = mech_cols + mag_cols
    parity = (np.linalg.det(np.eye(12)[perm_rows])
              * np.linalg.det(np.eye(12)[:, perm_cols]))
    det_full = np.linalg.det(M)
    det_mech = np.linalg.det(M[np.ix_(mech_rows, mech_cols)])
    det_mag = np.linalg.det(M[np.ix_(mag_rows, mag_cols)])
    lhs = det_full
    rhs = parity * det_mech * det_mag
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def check_structure(fast: bool, residual_pairs) -> CheckResult:
    """Criterion 6: wavenumber invariance, short-wave limit, zero-field block
    decoupling, null-vector residuals and preset completion/ordering."""
    details = {}
    ok = True

    stack = _identical_stack(0.5, 0.5)
    vals = [find_critical(stack, k, 0.5, _compression_opts()).lambda_cr_compression
            for k in (0.5, 1.0, 2.0, 5.0)]
    spread = max(vals) - min(vals) if all(v is not None for v in vals) else np.inf
    details["k_invariance_spread"] = spread
    ok &= spread < 1e-4

    ratios = (0.5, 1.0, 2.0, 5.0, 10.0)
    shortwave = {}
    for ratio in ratios:
        res = find_critical(_nonmag_stack(ratio), 20.0, 0.0, _compression_opts())
        shortwave[ratio] = res.lambda_cr_compression
        ok &= (res.lambda_cr_compression is not None
               and abs(res.lambda_cr_compression - BIOT_STRETCH) <= 5e-3)
    details["shortwave"] = shortwave

    rng = np.random.default_rng(20240817)
    worst_block = 0.0
    n_pts = 8 if fast else 20
    for _ in range(n_pts):
        lam = float(rng.uniform(0.25, 2.8))
        if abs(lam - 1.0) < 5e-3:
            lam += 1e-2
        k = float(rng.uniform(0.3, 5.0))
        point = LoadingPoint(lam=lam, b_bar=0.0, k=k)
        worst_block = max(worst_block,
                          _block_decomposition_delta(_nonmag_stack(2.0), point))
    details["block_decoupling_worst"] = worst_block
    ok &= worst_block < 1e-8

    worst_nullres = 0.0
    for resid, smax in residual_pairs:
        if np.isfinite(resid):
            worst_nullres = max(worst_nullres, resid / (1e-6 * smax))
    details["null_residual_vs_gate"] = worst_nullres
    ok &= worst_nullres < 1.0

    preset_stats = {}
    for name in ("fig7", "fig8"):
        preset = figure_preset(name, axis_steps=5 if fast else 9)
        pairs = sweep(list(preset.cases), preset.search_options, threads=1)
        ok_rate = np.mean([1.0 if r.status == "ok" else 0.0 for _, r in pairs])
        by_b: dict[float, list[tuple[float, float]]] = {}
        for case, r in pairs:
            if r.lambda_cr_compression is not None:
                by_b.setdefault(case.b_bar, []).append(
                    (case.stack.upper.mu, r.lambda_cr_compression))
        # stiffer-is-less-stable ordering.  At strong inductions the softest
        # layer destabilizes again (its layer-normalized induction is largest)
        # and overtakes the ratio-1 curve, so the all-ratio ordering is gated
        # on the moderate-induction half of the grid and the stiff ratios
        # (>= 1) are required to stay ordered everywhere.
        ordered = True
        for b, series in by_b.items():
            series.sort()
            lams = [v for mu, v in series if b <= 1.0 or mu >= 1.0]
            ordered &= bool((np.diff(lams) >= -1e-6).all())
        preset_stats[name] = {"ok_rate": float(ok_rate), "ratio_ordering": ordered}
        ok &= ok_rate >= 0.95 and ordered
    # remaining parameter-study presets: completion rate plus the captions'
    # qualitative claims (field-induced tension instability for the
    # layer-on-substrate studies; stabilize-then-destabilize stiffness
    # dependence for the ratio sweeps)
    for name, steps in (("fig4", 5), ("fig5", 5), ("fig6", 5 if fast else 7),
                        ("fig9", 5 if fast else 7)):
        preset = figure_preset(name, axis_steps=steps)
        pairs = sweep(list(preset.cases), preset.search_options, threads=1)
        ok_rate = np.mean([1.0 if r.status == "ok" else 0.0 for _, r in pairs])
        stats = {"ok_rate": float(ok_rate)}
        if name in ("fig4", "fig5"):
            stats["tension_rows"] = sum(
                1 for _, r in pairs if r.lambda_cr_tension is not None)
            ok &= ok_rate >= 0.95 and stats["tension_rows"] >= 1
        else:
            series0 = sorted((c.stack.upper.mu, r.lambda_cr_compression)
                             for c, r in pairs
                             if c.b_bar == 0.0 and r.lambda_cr_compression is not None)
            lams0 = [v for _, v in series0]
            interior_min = bool(lams0
                                and min(lams0) not in (lams0[0], lams0[-1]))
            stats["stiffness_dip_then_rise"] = interior_min
            ok &= ok_rate >= 0.95 and interior_min
        preset_stats[name] = stats
    details["presets"] = preset_stats
    details["fig6_variant_note"] = (
        "both fig6 substrate variants (passive default, fully magnetizable via "
        "flag = fig9) reproduce the described stabilize-then-destabilize "
        "stiffness dependence; the published curves are not tabulated, so the "
        "variants are indistinguishable at this level")
    return CheckResult("criterion-6", "structural properties", ok, details)


def _reduction_trace(case, lam_full, lam_red, n: int = 15):
    """Determinant trace of both exterior variants around the disagreeing roots."""
    from . import _kernels

    anchors = [v for v in (lam_full, lam_red) if v is not None] or [0.6]
    lams = np.linspace(max(0.2, min(anchors) - 0.05),
                       min(2.9, max(anchors) + 0.05), n)
    s, u = case.stack.substrate, case.stack.upper
    base = (case.k, True, case.b_bar,
            s.mu, s.gamma, s.alpha, s.beta, u.mu, u.gamma, u.alpha, u.beta)
    full, _, _, _ = _kernels.scan_determinant(lams, *base, False)
    red, _, _, _ = _kernels.scan_determinant(lams, *base, True)
    return [{"lam": float(l), "det_full": float(df), "det_reduced": float(dr)}
            for l, df, dr in zip(lams, full, red)]


def check_exploratory(fast: bool, strict: bool) -> CheckResult:
    """Criterion 7: two-term-weight insensitivity and full-vs-reduced
    free-space coupling; disagreements are reported, and fail only in strict
    mode."""
    steps = 5 if fast else 11
    gamma_delta = []
    for gamma in (0.0, 1.0):
        preset = figure_preset("fig2", axis_steps=steps, gamma=gamma)
        pairs = sweep(list(preset.cases), preset.search_options, threads=1)
        gamma_delta.append([r.lambda_cr_compression for _, r in pairs])
    gamma_shift = max(abs(a - b) for a, b in zip(*gamma_delta)
                      if a is not None and b is not None)
    gamma_ok = gamma_shift < 1e-5

    # reduction comparison: zero-field preset plus a loaded sample
    comparisons = []
    preset = figure_preset("fig2", axis_steps=3)
    sample = list(preset.cases)[::5]
    for beta in (0.0, 1.0):
        for b in (0.5, 1.0):
            sample.append(
                type(sample[0])(case_id=f"loaded:beta={beta}:b={b}",
                                stack=_identical_stack(0.5, beta), k=1.0, b_bar=b))
    for case in sample:
        lam_full = find_critical(case.stack, case.k, case.b_bar,
                                 _compression_opts()).lambda_cr_compression
        lam_red = find_critical(
            case.stack, case.k, case.b_bar,
            _compression_opts(exterior_reduction=REDUCTION_REDUCED),
        ).lambda_cr_compression
        if lam_full is None or lam_red is None:
            delta = None
            agree = lam_full is None and lam_red is None
        else:
            delta = abs(lam_full - lam_red)
            agree = delta < 1e-5
        entry = {"case": case.case_id, "full": lam_full,
                 "reduced": lam_red, "delta": delta, "agree": agree}
        if not agree:
            entry["det_trace"] = _reduction_trace(case, lam_full, lam_red)
        comparisons.append(entry)
    reduction_ok = all(c["agree"] for c in comparisons)
    failures_fail = strict and not (gamma_ok and reduction_ok)
    details = {"gamma_shift": gamma_shift, "gamma_ok": gamma_ok,
               "reduction_ok": reduction_ok, "reduction_comparisons": comparisons,
               "strict": strict}
    return CheckResult("criterion-7", "exploratory consistency (reported)",
                       not failures_fail, details)


def run_verification(fast: bool = False, strict: bool = False,
                     report_path: str | None = None) -> dict:
    """Run every check, print one line per criterion, return the report."""
    results: list[CheckResult] = []
    r1 = check_biot(fast)
    r2 = check_stiffness_ratios(fast)
    residual_pairs = r1.details.pop("_residual_pairs", [])
    residual_pairs += r2.details.pop("_residual_pairs", [])
    results += [r1, r2,
                check_magnetoelastic_anchor(fast),
                check_moduli_gate(fast),
                check_factorization_gate(fast),
                check_structure(fast, residual_pairs),
                check_exploratory(fast, strict)]
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'} {res.cid}: {res.name}")
    passed = bool(all(res.passed for res in results))
    report = _jsonable(
        {"passed": passed, "backend": BACKEND, "fast": fast, "strict": strict,
         "criteria": [{"id": r.cid, "name": r.name, "passed": bool(r.passed),
                       "details": r.details} for r in results]})
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
    return report


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)
    return obj
