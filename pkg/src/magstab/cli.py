"""Command-line front end.

Subcommands: ``critical`` (single point), ``sweep`` (one-axis grid),
``figure`` (built-in presets), ``det-trace`` (determinant vs stretch) and
``verify`` (built-in acceptance suite).  Flags override values from an
optional JSON config file whose keys mirror the flag names in kebab-case.

Exit codes: 0 success, 1 numerical failure under ``--strict``, 2 invalid
configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, fields

import numpy as np

from .dispersion import (REDUCTION_FULL, REDUCTION_REDUCED, SearchOptions,
                         SweepCase, find_critical, sweep)
from .errors import ConfigurationError, MagstabError
from .params import (EULERIAN_FIXED, LAGRANGIAN_FIXED, LayerStack,
                     LoadingPoint, MaterialParams)
from .presets import PRESET_NAMES, figure_preset
from . import _kernels

CSV_FIELDS = ("case_id", "k", "K", "b_bar", "mu_ratio", "alpha_s", "beta_s",
              "alpha_u", "beta_u", "gamma_s", "gamma_u",
              "lambda_cr_compression", "lambda_cr_tension", "status",
              "det_evals", "notes")

_FAILURE_STATUSES = ("admissibility-violated", "numerical-inconsistency")

SWEEP_PARAMS = ("b-bar", "k", "mu-ratio", "beta")


@dataclass
class RunConfig:
    """Merged run configuration (defaults < config file < flags)."""

    command: str = ""
    k: float = 1.0
    b_bar: float = 0.0
    mu_ratio: float = 1.0
    alpha_s: float = 0.0
    beta_s: float = 1.0
    gamma_s: float = 1.0
    alpha_u: float = 0.0
    beta_u: float = 1.0
    gamma_u: float = 1.0
    param: str = ""
    start: float = 0.0
    stop: float = 1.0
    steps: int | None = None
    log_scale: bool = False
    figure: str = ""
    b_max: float = 2.0
    fig6_both_magnetic: bool = False
    lambda_min: float = 0.2
    lambda_max: float = 3.0
    scan_step: float = 2e-3
    bisection_tol: float = 1e-8
    sides: str = "both"
    exterior_reduction: str = REDUCTION_FULL
    wavenumber_convention: str = "eulerian"
    out: str = ""
    report: str = ""
    strict: bool = False
    fast: bool = False
    threads: int = 1
    lambda_step: float = 2e-3   # det-trace grid spacing


def _fmt(x) -> str:
    """Nine significant digits; empty string for missing values."""
    if x is None or x == "":
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.9g}"


def _convention(cfg: RunConfig) -> str:
    if cfg.wavenumber_convention in ("eulerian", EULERIAN_FIXED):
        return EULERIAN_FIXED
    if cfg.wavenumber_convention in ("lagrangian", LAGRANGIAN_FIXED):
        return LAGRANGIAN_FIXED
    raise ConfigurationError(
        f"unknown wavenumber convention {cfg.wavenumber_convention!r}")


def _search_options(cfg: RunConfig) -> SearchOptions:
    try:
        return SearchOptions(lambda_min=cfg.lambda_min, lambda_max=cfg.lambda_max,
                             scan_step=cfg.scan_step, bisection_tol=cfg.bisection_tol,
                             exterior_reduction=cfg.exterior_reduction, sides=cfg.sides)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def _stack_from_config(cfg: RunConfig) -> LayerStack:
    try:
        return LayerStack(
            substrate=MaterialParams(mu=1.0, gamma=cfg.gamma_s,
                                     alpha=cfg.alpha_s, beta=cfg.beta_s),
            upper=MaterialParams(mu=cfg.mu_ratio, gamma=cfg.gamma_u,
                                 alpha=cfg.alpha_u, beta=cfg.beta_u),
        )
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def _result_row(case: SweepCase, result, convention: str) -> dict:
    stack = case.stack
    lam_c = result.lambda_cr_compression
    lam_t = result.lambda_cr_tension
    if convention == EULERIAN_FIXED:
        lam_for_K = lam_c if lam_c is not None else lam_t
        K = None if lam_for_K is None else lam_for_K * case.k
    else:
        K = case.k
    notes = []
    if result.diagnostics.perturbations:
        notes.append(f"stretch-nudges={len(result.diagnostics.perturbations)}")
    if result.diagnostics.even_dips:
        dips = " ".join(f"{lam:.6g}" for lam, _ in result.diagnostics.even_dips)
        notes.append(f"even-dips@{dips}")
    if result.diagnostics.failures:
        notes.append(f"failures={len(result.diagnostics.failures)}")
    return {
        "case_id": case.case_id,
        "k": _fmt(case.k),
        "K": _fmt(K),
        "b_bar": _fmt(case.b_bar),
        "mu_ratio": _fmt(stack.upper.mu / stack.substrate.mu),
        "alpha_s": _fmt(stack.substrate.alpha),
        "beta_s": _fmt(stack.substrate.beta),
        "alpha_u": _fmt(stack.upper.alpha),
        "beta_u": _fmt(stack.upper.beta),
        "gamma_s": _fmt(stack.substrate.gamma),
        "gamma_u": _fmt(stack.upper.gamma),
        "lambda_cr_compression": _fmt(lam_c),
        "lambda_cr_tension": _fmt(lam_t),
        "status": result.status,
        "det_evals": _fmt(result.diagnostics.det_evals),
        "notes": "; ".join(notes),
    }


def _emit_rows(rows: list[dict], out_path: str) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return
    widths = {f: max(len(f), *(len(r[f]) for r in rows)) if rows else len(f)
              for f in CSV_FIELDS}
    print("  ".join(f.ljust(widths[f]) for f in CSV_FIELDS))
    for r in rows:
        print("  ".join(str(r[f]).ljust(widths[f]) for f in CSV_FIELDS))


def _exit_code(rows: list[dict], strict: bool) -> int:
    if strict and any(r["status"] in _FAILURE_STATUSES for r in rows):
        return 1
    return 0


def _cmd_critical(cfg: RunConfig) -> int:
    stack = _stack_from_config(cfg)
    opts = _search_options(cfg)
    conv = _convention(cfg)
    result = find_critical(stack, cfg.k, cfg.b_bar, opts, conv)
    case = SweepCase(case_id="critical", stack=stack, k=cfg.k, b_bar=cfg.b_bar)
    row = _result_row(case, result, conv)
    if cfg.out:
        _emit_rows([row], cfg.out)
    else:
        for key in ("lambda_cr_compression", "lambda_cr_tension", "status"):
            print(f"{key} = {row[key] or '(none)'}")
    return _exit_code([row], cfg.strict)


def _sweep_cases(cfg: RunConfig) -> list[SweepCase]:
    if cfg.param not in SWEEP_PARAMS:
        raise ConfigurationError(
            f"--param must be one of {SWEEP_PARAMS}, got {cfg.param!r}")
    steps = 11 if cfg.steps is None else cfg.steps
    if steps < 2:
        raise ConfigurationError("--steps must be at least 2")
    if cfg.log_scale:
        if cfg.start <= 0 or cfg.stop <= 0:
            raise ConfigurationError("log-scale sweep needs positive bounds")
        grid = np.logspace(np.log10(cfg.start), np.log10(cfg.stop), steps)
    else:
        grid = np.linspace(cfg.start, cfg.stop, steps)
    cases = []
    for i, val in enumerate(grid):
        v = float(val)
        kw = dict(k=cfg.k, b_bar=cfg.b_bar, mu_ratio=cfg.mu_ratio,
                  alpha_s=cfg.alpha_s, beta_s=cfg.beta_s, gamma_s=cfg.gamma_s,
                  alpha_u=cfg.alpha_u, beta_u=cfg.beta_u, gamma_u=cfg.gamma_u)
        if cfg.param == "b-bar":
            kw["b_bar"] = v
        elif cfg.param == "k":
            kw["k"] = v
        elif cfg.param == "mu-ratio":
            kw["mu_ratio"] = v
        else:                       # beta: both layers vary together
            kw["beta_s"] = v
            kw["beta_u"] = v
        sub = MaterialParams(mu=1.0, gamma=kw["gamma_s"], alpha=kw["alpha_s"],
                             beta=kw["beta_s"])
        upper = MaterialParams(mu=kw["mu_ratio"], gamma=kw["gamma_u"],
                               alpha=kw["alpha_u"], beta=kw["beta_u"])
        cases.append(SweepCase(case_id=f"sweep:{cfg.param}={v:.6g}",
                               stack=LayerStack(substrate=sub, upper=upper),
                               k=kw["k"], b_bar=kw["b_bar"]))
    return cases


def _cmd_sweep(cfg: RunConfig) -> int:
    cases = _sweep_cases(cfg)
    opts = _search_options(cfg)
    conv = _convention(cfg)
    rows = [_result_row(c, r, conv) for c, r in sweep(cases, opts, conv, cfg.threads)]
    _emit_rows(rows, cfg.out)
    return _exit_code(rows, cfg.strict)


def _cmd_figure(cfg: RunConfig) -> int:
    preset = figure_preset(cfg.figure, axis_steps=cfg.steps, b_max=cfg.b_max,
                           fig6_both_magnetic=cfg.fig6_both_magnetic)
    opts = preset.search_options
    if cfg.exterior_reduction != opts.exterior_reduction:
        opts = SearchOptions(lambda_min=opts.lambda_min, lambda_max=opts.lambda_max,
                             scan_step=opts.scan_step, bisection_tol=opts.bisection_tol,
                             exterior_reduction=cfg.exterior_reduction, sides=opts.sides)
    conv = _convention(cfg)
    rows = [_result_row(c, r, conv)
            for c, r in sweep(list(preset.cases), opts, conv, cfg.threads)]
    _emit_rows(rows, cfg.out)
    return _exit_code(rows, cfg.strict)


def _cmd_det_trace(cfg: RunConfig) -> int:
    stack = _stack_from_config(cfg)
    conv = _convention(cfg)
    reduced = cfg.exterior_reduction == REDUCTION_REDUCED
    lams = np.concatenate([
        np.arange(1.0 - 1e-3, cfg.lambda_min, -cfg.lambda_step)[::-1],
        np.arange(1.0 + 1e-3, cfg.lambda_max, cfg.lambda_step),
    ])
    s, u = stack.substrate, stack.upper
    dets, statuses, used, _ = _kernels.scan_determinant(
        lams, cfg.k, conv == EULERIAN_FIXED, cfg.b_bar,
        s.mu, s.gamma, s.alpha, s.beta, u.mu, u.gamma, u.alpha, u.beta, reduced)
    lines = [("lambda", "det", "sign")]
    skipped = 0
    for lam, det, st in zip(used, dets, statuses):
        if st != _kernels.STATUS_OK:
            skipped += 1
            continue
        sign = 0 if det == 0 else (1 if det > 0 else -1)
        lines.append((_fmt(lam), _fmt(det), str(sign)))
    if skipped:
        print(f"skipped {skipped} non-evaluable points", file=sys.stderr)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerows(lines)
    else:
        for line in lines:
            print(",".join(line))
    return 0


def _cmd_verify(cfg: RunConfig) -> int:
    from .verify import run_verification
    report = run_verification(fast=cfg.fast, strict=cfg.strict,
                              report_path=cfg.report or None)
    return 0 if report["passed"] else 1


_COMMANDS = {
    "critical": _cmd_critical,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "det-trace": _cmd_det_trace,
    "verify": _cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magstab",
        description="Critical stretches for surface wrinkling of layered "
                    "magnetoelastic half-spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, loading=True):
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--out", help="CSV output path (default: table on stdout)")
        p.add_argument("--strict", action="store_true", default=None,
                       help="exit 1 on any per-point numerical failure")
        p.add_argument("--exterior-reduction",
                       choices=[REDUCTION_FULL, REDUCTION_REDUCED], default=None)
        p.add_argument("--wavenumber-convention",
                       choices=["eulerian", "lagrangian"], default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--lambda-min", type=float, default=None)
        p.add_argument("--lambda-max", type=float, default=None)
        p.add_argument("--scan-step", type=float, default=None)
        p.add_argument("--bisection-tol", type=float, default=None)
        p.add_argument("--sides", choices=["both", "compression", "tension"],
                       default=None)
        if loading:
            p.add_argument("--k", type=float, default=None,
                           help="spatial wavenumber of the perturbation")
            p.add_argument("--b-bar", type=float, default=None,
                           help="dimensionless surface-normal induction")
            p.add_argument("--mu-ratio", type=float, default=None,
                           help="upper-layer to substrate stiffness ratio")
            p.add_argument("--alpha", type=float, default=None,
                           help="set both layers' alpha coupling")
            p.add_argument("--beta", type=float, default=None,
                           help="set both layers' beta coupling")
            p.add_argument("--gamma", type=float, default=None,
                           help="set both layers' elastic weight")
            for layer in ("s", "u"):
                p.add_argument(f"--alpha-{layer}", type=float, default=None)
                p.add_argument(f"--beta-{layer}", type=float, default=None)
                p.add_argument(f"--gamma-{layer}", type=float, default=None)

    add_common(sub.add_parser("critical", help="critical stretch at one point"))
    p_sweep = sub.add_parser("sweep", help="sweep one parameter")
    add_common(p_sweep)
    p_sweep.add_argument("--param", choices=SWEEP_PARAMS, default=None, required=False)
    p_sweep.add_argument("--from", dest="start", type=float, default=None)
    p_sweep.add_argument("--to", dest="stop", type=float, default=None)
    p_sweep.add_argument("--steps", type=int, default=None)
    p_sweep.add_argument("--log", dest="log_scale", action="store_true", default=None)
    p_fig = sub.add_parser("figure", help="run a built-in preset")
    p_fig.add_argument("figure", choices=list(PRESET_NAMES) + ["help"],
                       metavar="name", help=f"one of {', '.join(PRESET_NAMES)}")
    add_common(p_fig, loading=False)
    p_fig.add_argument("--b-max", type=float, default=None,
                       help="extend the induction axis of induction sweeps")
    p_fig.add_argument("--steps", type=int, default=None)
    p_fig.add_argument("--fig6-both-magnetic", action="store_true", default=None)
    p_trace = sub.add_parser("det-trace", help="determinant trace vs stretch")
    add_common(p_trace)
    p_trace.add_argument("--lambda-step", type=float, default=None)
    p_verify = sub.add_parser("verify", help="run the built-in acceptance suite")
    add_common(p_verify, loading=False)
    p_verify.add_argument("--report", default=None,
                          help="write the machine-readable report to this path")
    p_verify.add_argument("--fast", action="store_true", default=None,
                          help="trimmed grids for a quick check")
    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigurationError("config file must hold a JSON object")
    mapping = {"from": "start", "to": "stop", "log": "log_scale"}
    out = {}
    valid = {f.name for f in fields(RunConfig)}
    for key, value in raw.items():
        name = mapping.get(key, key.replace("-", "_"))
        if name not in valid:
            raise ConfigurationError(f"unknown config key {key!r}")
        out[name] = value
    return out


def build_config(argv: list[str]) -> RunConfig:
    parser = _build_parser()
    ns = vars(parser.parse_args(argv))
    cfg = RunConfig()
    file_path = ns.pop("config", None)
    if file_path:
        for key, value in _load_config_file(file_path).items():
            setattr(cfg, key, value)
    # convenience flags set both layers
    for short, per_layer in (("alpha", ("alpha_s", "alpha_u")),
                             ("beta", ("beta_s", "beta_u")),
                             ("gamma", ("gamma_s", "gamma_u"))):
        val = ns.pop(short, None)
        if val is not None:
            for name in per_layer:
                setattr(cfg, name, val)
    for key, value in ns.items():
        if value is not None:
            setattr(cfg, key, value)
    if cfg.command == "sweep" and not cfg.param:
        raise ConfigurationError("sweep requires --param (or a config file entry)")
    if cfg.command == "figure" and cfg.figure == "help":
        raise ConfigurationError(f"available presets: {', '.join(PRESET_NAMES)}")
    return cfg


def run(argv: list[str]) -> int:
    """Parse, execute, return the exit code."""
    try:
        cfg = build_config(argv)
        return _COMMANDS[cfg.command](cfg)
    except (ConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MagstabError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
