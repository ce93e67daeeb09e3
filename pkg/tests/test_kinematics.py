import numpy as np
import pytest

from magstab import deformation_gradient, magnetic_invariants, with_field


def test_identity_case():
    st = deformation_gradient(1.0)
    assert np.allclose(st.F, np.eye(3))
    assert st.I1 == st.I2 == 3.0
    assert st.I3 == 1.0


def test_direct_substitution():
    st = deformation_gradient(2.0)
    assert np.allclose(st.F, np.diag([2.0, 0.5, 1.0]))
    assert st.I1 == st.I2 == 5.25


def test_benchmark_stretch_invariant_against_trace_oracle():
    # independent oracle: first strain invariant as the trace of F^T F
    lam = 0.5437
    st = deformation_gradient(lam)
    oracle = float(np.trace(st.F.T @ st.F))
    assert oracle == pytest.approx(4.678448730222261, abs=1e-12)
    assert st.I1 == pytest.approx(oracle, abs=1e-12)
    assert st.I2 == pytest.approx(oracle, abs=1e-12)


def test_unit_determinant_exact():
    for lam in np.exp(np.random.default_rng(0).uniform(np.log(0.2), np.log(3.0), 50)):
        st = deformation_gradient(float(lam))
        assert np.linalg.det(st.F) == pytest.approx(1.0, abs=5e-16)


def test_invariant_symmetry_under_stretch_inversion():
    for lam in (0.3, 0.77, 1.9, 2.5):
        a = deformation_gradient(lam)
        b = deformation_gradient(1.0 / lam)
        assert a.I1 == pytest.approx(b.I1, rel=1e-14)
        assert a.I2 == pytest.approx(b.I2, rel=1e-14)


def test_field_invariant_scalings_machine_precision():
    rng = np.random.default_rng(1)
    for _ in range(100):
        lam = float(rng.uniform(0.2, 3.0))
        b = float(rng.uniform(0.0, 5.0))
        st = deformation_gradient(lam)
        I4, I5, I6 = magnetic_invariants(st, b)
        assert I5 * lam**2 == pytest.approx(I4, rel=1e-14, abs=1e-14)
        assert I6 * lam**4 == pytest.approx(I4, rel=1e-13, abs=1e-13)


@pytest.mark.parametrize("lam,b,expected", [
    (1.0, 0.0, (0.0, 0.0, 0.0)),
    (1.0, 1.0, (1.0, 1.0, 1.0)),
    (2.0, 1.0, (1.0, 0.25, 0.0625)),
])
def test_field_invariant_values(lam, b, expected):
    st = deformation_gradient(lam)
    assert magnetic_invariants(st, b) == pytest.approx(expected)


def test_with_field_populates_state():
    st = with_field(deformation_gradient(2.0), 1.0)
    assert (st.I4, st.I5, st.I6) == pytest.approx((1.0, 0.25, 0.0625))


def test_nonpositive_stretch_rejected():
    with pytest.raises(ValueError):
        deformation_gradient(0.0)
    with pytest.raises(ValueError):
        deformation_gradient(-1.2)
    with pytest.raises(ValueError):
        magnetic_invariants(deformation_gradient(1.0), -0.1)
