"""Backend selection: jitted kernels vs the pure-numpy fallback."""

import os
import subprocess
import sys

import numpy as np
import pytest

import magstab
from magstab import LayerStack, MaterialParams, SearchOptions, find_critical

_CHILD = r"""
import magstab
from magstab import LayerStack, MaterialParams, SearchOptions, find_critical
stack = LayerStack(substrate=MaterialParams(mu=1.0, alpha=0.5, beta=0.5),
                   upper=MaterialParams(mu=3.0, alpha=0.5, beta=0.5))
res = find_critical(stack, 1.3, 0.7, SearchOptions(sides="compression"))
print(magstab.BACKEND, repr(res.lambda_cr_compression))
"""


def _run_child(backend):
    env = dict(os.environ, MAGSTAB_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", _CHILD], env=env, check=True,
                         capture_output=True, text=True).stdout.split()
    return out[0], float(out[1])


def test_env_flag_selects_backend_and_results_agree():
    name_np, lam_np = _run_child("numpy")
    assert name_np == "numpy"
    name_nb, lam_nb = _run_child("numba")
    assert name_nb == "numba"
    assert lam_np == pytest.approx(lam_nb, abs=1e-12)


def test_bad_backend_value_rejected():
    env = dict(os.environ, MAGSTAB_BACKEND="cuda")
    proc = subprocess.run([sys.executable, "-c", "import magstab"], env=env,
                          capture_output=True, text=True)
    assert proc.returncode != 0
    assert "MAGSTAB_BACKEND" in proc.stderr


def test_active_backend_reproduces_benchmark():
    assert magstab.BACKEND in ("numba", "numpy")
    stack = LayerStack.uniform(MaterialParams.non_magnetizable())
    res = find_critical(stack, 2.0, 0.0, SearchOptions(sides="compression"))
    assert res.lambda_cr_compression == pytest.approx(0.5437, abs=1e-3)


def test_scan_statuses_and_trace():
    from magstab._kernels import STATUS_OK, scan_determinant
    lams = np.linspace(0.4, 0.9, 40)
    dets, statuses, used, n = scan_determinant(
        lams, 1.0, True, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, False)
    assert (statuses == STATUS_OK).all()
    assert n >= len(lams)
    assert np.isfinite(dets).all()
    assert (used == lams).all()
