import numpy as np
import pytest

from magstab import (AdmissibilityViolated, LoadingPoint, MaterialParams,
                     RootCoincidence, amplitude_eliminate, analytic_moduli,
                     bicubic_coefficients, exterior_mode, lagrange_multiplier,
                     layer_mode_basis, mooney_rivlin_roots, solve_roots)
from magstab.modes import (KIND_MAGNETIC, KIND_PRESSURE, KIND_SHEAR,
                           TRACTION_TRUNCATED, bicubic_residual,
                           incremental_system_matrix, magnetic_root_squared)

GRID = [
    (MaterialParams(mu=1.0, gamma=1.0, alpha=0.5, beta=0.5), 0.7, 0.8),
    (MaterialParams(mu=2.5, gamma=0.3, alpha=0.5, beta=2.0), 1.4, 1.5),
    (MaterialParams(mu=0.5, gamma=-0.6, alpha=1.2, beta=0.7), 0.35, 3.0),
    (MaterialParams(mu=1.0, gamma=1.0, alpha=0.0, beta=1.0), 0.6, 2.0),
    (MaterialParams(mu=1.7, gamma=0.4, alpha=0.5, beta=0.0), 1.8, 1.0),
]


def _coeffs(params, lam, b):
    point = LoadingPoint(lam=lam, b_bar=b)
    m = analytic_moduli(params, point)
    p = lagrange_multiplier(params, lam, b)
    return bicubic_coefficients(m, p, lam), point


@pytest.mark.parametrize("params,lam,b", GRID)
def test_bicubic_factors_into_product_form(params, lam, b):
    (c6, c4, c2, c0), point = _coeffs(params, lam, b)
    i4b = params.i4_bar(b)
    D = (params.alpha + params.alpha * params.beta * i4b + params.beta * lam**2) * lam**2
    N = params.alpha * lam**2 + params.beta
    expanded = np.polymul(np.polymul([1.0, -1.0], [lam**4, -1.0]), [D, -N])
    got = np.array([c6, c4, c2, c0])
    got = got / np.abs(got).max()
    want = expanded / np.abs(expanded).max()
    if got[0] * want[0] < 0:
        want = -want
    assert np.abs(got - want).max() < 1e-10


@pytest.mark.parametrize("params,lam,b", GRID)
def test_closed_form_roots_solve_the_bicubic(params, lam, b):
    coeffs, point = _coeffs(params, lam, b)
    scale = max(abs(c) for c in coeffs)
    roots = mooney_rivlin_roots(params, point)
    assert sum(r.multiplicity for r in roots) == 6
    for root in roots:
        assert bicubic_residual(coeffs, root.r) < 1e-10 * scale


def test_root_families_and_signs():
    params = MaterialParams(mu=1.0, gamma=1.0, alpha=0.5, beta=0.5)
    point = LoadingPoint(lam=0.7, b_bar=0.8)
    roots = mooney_rivlin_roots(params, point)
    kinds = [r.kind for r in roots]
    assert kinds == [KIND_SHEAR, KIND_PRESSURE, KIND_MAGNETIC] * 2
    rs = [r.r.real for r in roots]
    assert rs[0] == pytest.approx(1.0)
    assert rs[1] == pytest.approx(0.7**-2)
    assert rs[3:] == pytest.approx([-v for v in rs[:3]])
    assert all(r.decaying == (r.r.real > 0) for r in roots)


def test_magnetic_family_merges_into_shear_without_beta():
    # with beta = 0 the magnetic exponent equals the shear exponent at every
    # stretch; the mode space is two-dimensional there
    params = MaterialParams(mu=1.7, gamma=1.0, alpha=0.5, beta=0.0)
    point = LoadingPoint(lam=1.8, b_bar=1.0)
    assert magnetic_root_squared(params, point) == pytest.approx(1.0, abs=1e-14)
    roots = mooney_rivlin_roots(params, point)
    assert [(r.kind, r.multiplicity) for r in roots if r.r.real > 0] == \
        [(KIND_SHEAR, 2), (KIND_PRESSURE, 1)]
    # the thickness exponent is not a root here
    coeffs, _ = _coeffs(params, 1.8, 1.0)
    assert bicubic_residual(coeffs, 1.0 / 1.8) > 1e-3 * max(abs(c) for c in coeffs)


def test_magnetic_family_merges_into_pressure_for_passive_material():
    params = MaterialParams.non_magnetizable()
    point = LoadingPoint(lam=0.6, b_bar=1.5)
    roots = [r for r in mooney_rivlin_roots(params, point) if r.r.real > 0]
    assert [(r.kind, r.multiplicity) for r in roots] == \
        [(KIND_SHEAR, 1), (KIND_PRESSURE, 2)]


def test_magnetic_root_value_at_unit_stretch():
    params = MaterialParams(mu=1.0, gamma=1.0, alpha=0.5, beta=0.5)
    s3 = magnetic_root_squared(params, LoadingPoint(lam=1.0, b_bar=1.0))
    assert np.sqrt(s3) == pytest.approx(0.8944271909999159, abs=1e-12)


def test_unit_stretch_raises_coincidence():
    params = MaterialParams(mu=1.0, gamma=1.0, alpha=0.5, beta=0.5)
    with pytest.raises(RootCoincidence):
        mooney_rivlin_roots(params, LoadingPoint(lam=1.0, b_bar=0.5))


def test_admissibility_guard():
    params = MaterialParams(mu=1.0, gamma=1.0, alpha=-2.0, beta=0.05)
    with pytest.raises(AdmissibilityViolated):
        mooney_rivlin_roots(params, LoadingPoint(lam=1.5, b_bar=0.0))


def test_generic_solver_on_constructed_cubic():
    # (s-4)(s-9)(s-1/4) expanded
    coeffs = tuple(np.poly([4.0, 9.0, 0.25]))
    roots = solve_roots(coeffs)
    values = sorted(r.r.real for r in roots)
    assert values == pytest.approx([-3.0, -2.0, -0.5, 0.5, 2.0, 3.0])
    assert all(r.multiplicity == 1 for r in roots)
    assert roots[0].r.real == max(values)  # sorted by descending real part


def test_generic_solver_recovers_double_roots_by_cluster_mean():
    coeffs = tuple(np.poly([4.0, 4.0, 0.25]))
    roots = solve_roots(coeffs)
    doubles = [r for r in roots if r.multiplicity == 2]
    assert len(doubles) == 2
    for r in doubles:
        assert abs(r.r.real) == pytest.approx(2.0, abs=1e-10)
    with pytest.raises(RootCoincidence):
        solve_roots(coeffs, lam=0.9, on_coincidence="raise")


@pytest.mark.parametrize("params,lam,b", GRID)
def test_amplitudes_satisfy_every_relation(params, lam, b):
    point = LoadingPoint(lam=lam, b_bar=b)
    m = analytic_moduli(params, point)
    p = lagrange_multiplier(params, lam, b)
    for md in layer_mode_basis(params, point, include_negative=True):
        vec = md.vector()
        sys = incremental_system_matrix(m, p, lam, md.root.r)
        resid = np.abs(sys @ vec)
        scale = np.abs(sys).max() * max(1.0, np.abs(vec).max())
        # incompressibility row is exact, the rest hold to solver tolerance
        assert resid[0] < 1e-14 * max(1.0, np.abs(vec).max())
        assert resid[1] < 1e-10 * scale
        assert (resid[2:] < 1e-8 * scale).all()
        assert md.residual_unused < 1e-8 * scale


def test_mechanical_modes_decouple_without_field():
    params = MaterialParams(mu=1.0, gamma=1.0, alpha=0.5, beta=0.5)
    point = LoadingPoint(lam=0.7, b_bar=0.0)
    basis = layer_mode_basis(params, point, include_negative=False)
    shear, pressure, magnetic = basis
    assert shear.psi == 0.0 and pressure.psi == 0.0
    # decoupled magnetic mode carries only the flux potential
    assert magnetic.root.kind == KIND_MAGNETIC
    assert magnetic.u1 == magnetic.u2 == 0.0
    assert magnetic.psi == 1.0
    assert magnetic.p == 0.0


def test_amplitude_eliminate_rejects_far_off_root():
    params = MaterialParams(mu=1.0, gamma=1.0, alpha=0.5, beta=0.5)
    point = LoadingPoint(lam=0.7, b_bar=0.8)
    m = analytic_moduli(params, point)
    p = lagrange_multiplier(params, 0.7, 0.8)
    from magstab.modes import ModeRoot
    with pytest.raises(RootCoincidence):
        amplitude_eliminate(m, p, point, ModeRoot(r=0.37))


def test_exterior_mode_exponent_and_field_free_limit():
    ext0 = exterior_mode(LoadingPoint(lam=1.0, b_bar=0.0))
    assert ext0.r_star == pytest.approx(-1.0)
    ext = exterior_mode(LoadingPoint(lam=0.7, b_bar=0.0))
    assert ext.r_star == pytest.approx(-0.7**-2)
    # without a field every magnetic traction row vanishes
    assert np.abs(ext.rows[0]).max() == 0.0
    assert np.abs(ext.rows[1]).max() == 0.0
    # potential equation residual vanishes identically for the chosen exponent
    lam = 0.7
    assert -1.0 + lam**4 * ext.r_star**2 == pytest.approx(0.0, abs=1e-15)


def test_exterior_traction_variants_coincide_on_tied_amplitudes():
    point = LoadingPoint(lam=0.8, b_bar=1.3)
    exact = exterior_mode(point).rows
    truncated = exterior_mode(point, TRACTION_TRUNCATED).rows
    tied = np.array([1.0, 1.0, 0.37])   # equal displacement amplitudes
    assert exact @ tied == pytest.approx(truncated @ tied)
    assert np.abs(exact - truncated).max() > 0.0
