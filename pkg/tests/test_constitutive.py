import numpy as np
import pytest

from magstab import (LayerStack, LoadingPoint, MaterialParams, MooneyRivlinEnergy,
                     base_state, energy_value, lagrange_multiplier,
                     lagrange_multipliers)
from magstab.kinematics import deformation_gradient


def _random_unimodular(rng):
    A = rng.normal(size=(3, 3))
    d = np.linalg.det(A)
    if d < 0:
        A[0] = -A[0]
        d = -d
    return A / d ** (1.0 / 3.0)


def test_reference_state_energy_vanishes():
    params = MaterialParams(mu=1.3, gamma=0.2, alpha=0.7, beta=0.4)
    assert energy_value(params, np.eye(3), np.zeros(3)) == 0.0


def test_plane_strain_elastic_value():
    params = MaterialParams(mu=2.0, gamma=1.0, alpha=0.0, beta=1.0)
    F = deformation_gradient(2.0).F
    assert energy_value(params, F, np.zeros(3)) == pytest.approx(1.125 * 2.0)


def test_magnetic_value_at_unit_stretch():
    params = MaterialParams(mu=1.0, gamma=1.0, alpha=0.5, beta=0.5)
    assert energy_value(params, np.eye(3), np.array([0.0, 1.0, 0.0])) == pytest.approx(0.5)


def test_energy_even_in_induction():
    rng = np.random.default_rng(7)
    params = MaterialParams(mu=1.7, gamma=-0.4, alpha=0.8, beta=1.9)
    model = MooneyRivlinEnergy(params)
    for _ in range(50):
        F = _random_unimodular(rng)
        B = rng.normal(size=3) * 3.0
        assert model.value(F, B) == model.value(F, -B)


def test_non_unimodular_rejected_by_public_op_only():
    params = MaterialParams(mu=1.0)
    F = np.diag([1.1, 1.0, 1.0])
    with pytest.raises(ValueError):
        energy_value(params, F, np.zeros(3))
    # the oracle contract evaluates anywhere
    assert MooneyRivlinEnergy(params).value(F, np.zeros(3)) > 0.0


@pytest.mark.parametrize("lam,b,gamma,beta,mu,expected", [
    (1.0, 0.0, 1.0, 1.0, 1.0, 1.0),
    (1.0, 1.0, 1.0, 0.5, 1.0, 1.0),   # (2 beta - 1) kills the field term
    (0.5, 0.0, 0.0, 1.0, 1.0, 4.5),
])
def test_pressure_values(lam, b, gamma, beta, mu, expected):
    params = MaterialParams(mu=mu, gamma=gamma, alpha=0.5, beta=beta)
    assert lagrange_multiplier(params, lam, b) == pytest.approx(expected)


def test_unloaded_reference_state():
    stack = LayerStack.uniform(MaterialParams.non_magnetizable())
    sub, up = base_state(stack, LoadingPoint(lam=1.0, b_bar=0.0))
    assert sub.T22 == pytest.approx(0.0, abs=1e-15)
    assert up.T22 == pytest.approx(0.0, abs=1e-15)
    assert up.tau_star_22 == 0.0


def test_unit_stretch_with_field():
    stack = LayerStack.uniform(MaterialParams.non_magnetizable())
    _, up = base_state(stack, LoadingPoint(lam=1.0, b_bar=1.0))
    assert up.tau_star_22 == pytest.approx(0.5)
    assert up.tau_star_11 == pytest.approx(-0.5)


def test_equilibrium_identities_over_random_samples():
    # oracle: direct evaluation of the base-state expressions per layer
    rng = np.random.default_rng(11)
    for _ in range(100):
        lam = float(rng.uniform(0.2, 3.0))
        b = float(rng.uniform(0.0, 5.0))
        stack = LayerStack(
            substrate=MaterialParams(mu=1.0, gamma=float(rng.uniform(-1, 1)),
                                     alpha=float(rng.uniform(0, 2)),
                                     beta=float(rng.uniform(0, 2))),
            upper=MaterialParams(mu=float(rng.uniform(0.1, 10)),
                                 gamma=float(rng.uniform(-1, 1)),
                                 alpha=float(rng.uniform(0, 2)),
                                 beta=float(rng.uniform(0, 2))),
        )
        point = LoadingPoint(lam=lam, b_bar=b)
        sub, up = base_state(stack, point)
        # surface equilibrium holds identically once the pressures are fixed
        assert abs(up.T22 - up.T_star_22) < 1e-12 * max(1.0, abs(up.T_star_22))
        # traction continuity across the interface
        assert abs(sub.T22 - up.T22) < 1e-12 * max(1.0, abs(sub.T22))
        for side, params in ((sub, stack.substrate), (up, stack.upper)):
            expected_field = (params.alpha + params.beta / lam**2) * b
            assert side.H_L2 == pytest.approx(expected_field, rel=1e-14, abs=1e-14)
        # magnetic free-space stress structure
        assert sub.tau_star_11 + sub.tau_star_22 == 0.0
        assert sub.tau_star_33 == sub.tau_star_11


def test_lagrange_multipliers_pairs_with_layers():
    stack = LayerStack(substrate=MaterialParams(mu=1.0, gamma=0.3, beta=0.7),
                       upper=MaterialParams(mu=4.0, gamma=-0.2, beta=1.5))
    point = LoadingPoint(lam=0.8, b_bar=0.9)
    ps, pu = lagrange_multipliers(stack, point)
    assert ps == pytest.approx(lagrange_multiplier(stack.substrate, 0.8, 0.9))
    assert pu == pytest.approx(lagrange_multiplier(stack.upper, 0.8, 0.9))
