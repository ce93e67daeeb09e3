#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Runs the same determinant scans and critical-stretch searches in a child
process per backend (the backend is fixed at import time via
``MAGSTAB_BACKEND``) and prints a timing table.

    python benchmarks/bench_backends.py [--repeats 3]
"""

import argparse
import json
import os
import subprocess
import sys

_CHILD = r"""
import json
import sys
import time

import numpy as np

import magstab
from magstab import LayerStack, MaterialParams, SearchOptions, find_critical
from magstab._kernels import scan_determinant

stack = LayerStack(substrate=MaterialParams(mu=1.0, alpha=0.5, beta=0.5),
                   upper=MaterialParams(mu=5.0, alpha=0.5, beta=0.5))
lams = np.concatenate([np.arange(0.999, 0.2, -2e-3), np.arange(1.001, 3.0, 2e-3)])
args = (1.0, True, 0.7, 1.0, 1.0, 0.5, 0.5, 5.0, 1.0, 0.5, 0.5, False)

# warm-up covers jit compilation; it is reported separately
t0 = time.perf_counter()
scan_determinant(lams[:4], *args)
warmup = time.perf_counter() - t0

repeats = int(sys.argv[1])
t0 = time.perf_counter()
for _ in range(repeats):
    dets, statuses, used, n = scan_determinant(lams, *args)
scan_s = (time.perf_counter() - t0) / repeats

t0 = time.perf_counter()
for _ in range(repeats):
    res = find_critical(stack, 1.0, 0.7, SearchOptions())
search_s = (time.perf_counter() - t0) / repeats

print(json.dumps({
    "backend": magstab.BACKEND,
    "warmup_s": warmup,
    "scan_points": int(lams.size),
    "scan_s": scan_s,
    "scan_us_per_point": 1e6 * scan_s / lams.size,
    "search_s": search_s,
    "lambda_cr_compression": res.lambda_cr_compression,
}))
"""


def run(backend: str, repeats: int) -> dict:
    env = dict(os.environ, MAGSTAB_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", _CHILD, str(repeats)],
                         env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    rows = [run(b, args.repeats) for b in ("numpy", "numba")]
    if rows[0]["lambda_cr_compression"] != rows[1]["lambda_cr_compression"]:
        delta = abs(rows[0]["lambda_cr_compression"] - rows[1]["lambda_cr_compression"])
        assert delta < 1e-10, f"backends disagree by {delta}"
    print(f"{'backend':8} {'warmup[s]':>10} {'scan[us/pt]':>12} {'search[ms]':>11}")
    for r in rows:
        print(f"{r['backend']:8} {r['warmup_s']:10.2f} "
              f"{r['scan_us_per_point']:12.2f} {1e3 * r['search_s']:11.2f}")
    speedup = rows[0]["scan_s"] / rows[1]["scan_s"]
    print(f"scan speedup (numba over numpy): {speedup:.1f}x")


if __name__ == "__main__":
    main()
