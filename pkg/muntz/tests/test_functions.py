import numpy as np
import pytest

from muntz._utils import (MuntzValidationError, NumericalError,
                          ConvergenceWarning)
from muntz.exponents import validate_exponents
from muntz.quadrature import lp_norm
from muntz.functions import (MuntzPolynomial, GridFunction, eval_muntz,
                             muntz_derivative, compose_q_alpha, z_projection,
                             compose_sigma, difference_rep, difference_basis,
                             from_difference_rep, monomial_gap_bound_check,
                             remez_ratio, change_of_variables_check,
                             q_alpha_contraction_delta, q_alpha_norm_bound,
                             q_alpha_norm_ratio, derivative_weak_norm)


def _seeded_polys(lambdas, size, seed):
    rng = np.random.default_rng(seed)
    return [MuntzPolynomial(rng.standard_normal(len(lambdas)), lambdas)
            for _ in range(size)]


def test_muntz_polynomial():
    f = MuntzPolynomial.from_terms([(1, 4), (2, 1), (0, 9), (-1, 4)])
    assert f.terms == [(2.0, 1.0)]
    assert len(MuntzPolynomial.from_terms([])) == 0
    g = MuntzPolynomial([1.0, 1.0], [1, 2])
    assert (g - g).terms == []
    assert (g + g).same_terms(2 * g)
    assert (-g).same_terms(g * -1.0)
    np.testing.assert_allclose(g(np.array([0.0, 0.5, 1.0])),
                               [0.0, 0.75, 2.0])
    with pytest.raises(MuntzValidationError):
        MuntzPolynomial([1.0], [0.0])
    with pytest.raises(MuntzValidationError):
        MuntzPolynomial([1.0, 2.0], [1.0])
    with pytest.raises(MuntzValidationError):
        MuntzPolynomial([1.0], [1.0], domain=(0.5, 1.5))
    with pytest.raises(MuntzValidationError):
        g.with_domain((0.5, 1.0))(0.25)


def test_eval_muntz():
    assert float(eval_muntz(MuntzPolynomial([1.0, -1.0], [1, 4]), 1.0)) == 0
    assert float(eval_muntz(MuntzPolynomial([1.0], [1]), 0.5)) == 0.5
    assert float(eval_muntz(MuntzPolynomial([2.0], [1.5]), 0.25)) == \
        pytest.approx(0.25)
    with pytest.raises(MuntzValidationError):
        eval_muntz(MuntzPolynomial([1.0], [1]), 1.0 + 1e-9)


def test_compose_q_alpha():
    f = MuntzPolynomial([1.0, -1.0], [1, 4])
    assert compose_q_alpha(f, 2).same_terms(
        MuntzPolynomial([1.0, -1.0], [2, 8]))
    assert compose_q_alpha(f, 1).same_terms(f)
    g = compose_q_alpha(MuntzPolynomial([1.0], [1.5]), 2 / 3)
    np.testing.assert_allclose(g.exponents, [1.0])
    h = compose_q_alpha(f.with_domain((0.25, 1.0)), 2)
    assert h.domain == pytest.approx((0.5, 1.0))
    with pytest.raises(MuntzValidationError):
        compose_q_alpha(f, 0)


def test_z_projection():
    assert z_projection(MuntzPolynomial([1.0], [1])).same_terms(
        MuntzPolynomial([1.0, -1.0], [1, 2]))
    assert z_projection(MuntzPolynomial([1.0, 1.0], [1, 2])).same_terms(
        MuntzPolynomial([1.0, -1.0], [1, 4]))
    assert len(z_projection(MuntzPolynomial.from_terms([]))) == 0
    assert z_projection(
        MuntzPolynomial([1.0], [1], (0.25, 1.0))).domain == (0.5, 1.0)


def test_compose_sigma():
    v = compose_sigma(lambda t: t, 0.8)
    assert isinstance(v, GridFunction)
    assert v.meta['sigma'] == pytest.approx((0.64, 1.0))
    assert v.meta['endpoint_mismatch'] == pytest.approx(0.36)
    x = np.linspace(0, 1, 11)
    np.testing.assert_allclose(v(x), 0.64 + 0.36 * x, atol=1e-12)
    one = compose_sigma(lambda t: np.ones_like(t), 0.8, degree=1)
    np.testing.assert_allclose(one(x), 1.0)
    assert one.meta['endpoint_mismatch'] == 0
    with pytest.raises(MuntzValidationError):
        compose_sigma(lambda t: t, 0.5)


def test_grid_function():
    g = GridFunction(np.linspace(0, 1, 5), np.linspace(0, 1, 5) ** 2,
                     degree=1)
    assert g.interval == (0.0, 1.0)
    # clipped outside the grid
    assert float(g(1.5)) == pytest.approx(1.0)
    periodic = g.periodic()
    assert float(periodic(1.5)) == pytest.approx(float(g(0.5)))
    with pytest.raises(MuntzValidationError):
        GridFunction([0, 1, 1, 2], [0, 1, 2, 3])
    with pytest.raises(MuntzValidationError):
        GridFunction([0, 1, 2], [0, 1, 2])
    with pytest.raises(MuntzValidationError):
        GridFunction([0, 1], [0, 1], degree=2)


def test_difference_rep():
    e = validate_exponents('list:1,4')
    np.testing.assert_allclose(
        difference_rep(MuntzPolynomial([1.0, -1.0], [1, 4]), e), [0, -1])
    np.testing.assert_allclose(
        difference_rep(MuntzPolynomial([1.0], [1]), e), [1])
    np.testing.assert_allclose(
        difference_rep(MuntzPolynomial([1.0], [4]), e), [1, 1])
    with pytest.raises(MuntzValidationError):
        difference_rep(MuntzPolynomial([1.0], [2]), e)


def test_difference_rep_inverse():
    e = validate_exponents('quad:1,0,0,6')
    for f in _seeded_polys(e.lambdas, 5, seed=3):
        p = difference_rep(f, e)
        back = from_difference_rep(p, e)
        np.testing.assert_array_equal(back.exponents, f.exponents)
        np.testing.assert_allclose(back.coefficients, f.coefficients,
                                   atol=1e-12)
    assert difference_basis(e, 1).same_terms(MuntzPolynomial([1.0], [1]))
    assert difference_basis(e, 3).same_terms(
        MuntzPolynomial([-1.0, 1.0], [4, 9]))
    with pytest.raises(MuntzValidationError):
        difference_basis(e, 7)


def test_monomial_gap_bound_check():
    sup, bound = monomial_gap_bound_check(1.0, 0.5)
    assert sup == pytest.approx(0.25, abs=1e-12)
    assert bound == 1.0
    sup, bound = monomial_gap_bound_check(4.0, 0.1)
    assert sup == pytest.approx(0.018, abs=5e-4)
    assert bound == pytest.approx(0.05)
    assert sup <= bound
    small, _ = monomial_gap_bound_check(4.0, 1e-6)
    assert small < 1e-6


def test_remez_ratio():
    e = validate_exponents('list:1')
    ratio = remez_ratio(e, 0.5, 2, samples=3, seed=0)
    assert ratio == pytest.approx(np.sqrt(0.125 / 0.875), rel=1e-9)
    e = validate_exponents('list:1,4,9')
    first = remez_ratio(e, 0.5, 2, samples=100, seed=7)
    assert np.isfinite(first) and first > 0
    assert remez_ratio(e, 0.5, 2, samples=100, seed=7) == first
    value, skipped = remez_ratio(e, 0.5, 2, samples=5, seed=7,
                                 full_output=True)
    assert skipped == 0
    with pytest.raises(MuntzValidationError):
        remez_ratio(e, 1.5, 2, samples=5, seed=7)


def test_remez_ratio_shrinks_with_delta():
    e = validate_exponents('list:1,4,9')
    wide = remez_ratio(e, 0.5, 2, samples=20, seed=1)
    narrow = remez_ratio(e, 0.05, 2, samples=20, seed=1)
    assert narrow < wide


@pytest.mark.parametrize('alpha', [2, 0.5])
@pytest.mark.parametrize('delta', [0.25, 0.64])
def test_change_of_variables_identity(alpha, delta):
    for f in _seeded_polys([1, 4, 9, 16], 20, seed=11):
        lhs, rhs = change_of_variables_check(f, alpha, delta, 2)
        assert abs(lhs - rhs) < 1e-8 * abs(lhs)


def test_q_alpha_bounds():
    assert q_alpha_norm_bound(2, 0.8, 2) == pytest.approx(
        (0.5 / 0.8) ** 0.5)
    assert q_alpha_norm_bound(0.5, 0.8, 2) == pytest.approx(np.sqrt(2))
    assert q_alpha_contraction_delta(2) == pytest.approx(0.5)
    assert q_alpha_contraction_delta(0.5) == pytest.approx(0.25)
    with pytest.raises(MuntzValidationError):
        q_alpha_contraction_delta(1)
    with pytest.raises(MuntzValidationError):
        q_alpha_norm_bound(2, 1.2, 2)


def test_q_alpha_contraction():
    bound = q_alpha_norm_bound(2, 0.8, 2)
    assert bound == pytest.approx(0.79057, abs=1e-5)
    for f in _seeded_polys([1, 4, 9, 16], 200, seed=5):
        assert q_alpha_norm_ratio(f, 2, 0.8, 2) <= bound + 1e-8


def test_q_alpha_norm_ratio_zero():
    with pytest.raises(NumericalError):
        q_alpha_norm_ratio(MuntzPolynomial.from_terms([]), 2, 0.8, 2)


def test_muntz_derivative():
    f = MuntzPolynomial([1.0, -2.0], [1, 3])
    df = muntz_derivative(f)
    t = np.array([0.0, 0.5, 1.0])
    np.testing.assert_allclose(df(t), 1 - 6 * t ** 2)


def test_derivative_weak_norm():
    f = MuntzPolynomial([1.0, -0.5, 0.25], [1, 4, 9])
    value = derivative_weak_norm(f, 2, grid=2000)
    assert np.isfinite(value) and value > 0
    with pytest.raises(MuntzValidationError):
        derivative_weak_norm(MuntzPolynomial([1.0], [1.5]), 2)
    with pytest.raises(MuntzValidationError):
        derivative_weak_norm(f, 1)


@pytest.mark.parametrize('p', [2, 3])
def test_derivative_weak_norm_normalised_sample(p):
    lambdas = np.array([1, 4, 9, 16])
    values = []
    for f in _seeded_polys(lambdas, 20, 5):
        f = f * (1 / lp_norm(f, p, (0, 1)))
        value = derivative_weak_norm(f, p, grid=2000)
        # sup of h' on (0, 1) bounds the weak norm on a unit interval
        bound = 3 * np.sum(np.abs(f.coefficients) * lambdas)
        assert 0 < value <= bound
        values.append(value)
    assert np.isfinite(max(values))
    f = MuntzPolynomial([1.0, -0.5, 0.25, 0.1], lambdas)
    np.testing.assert_allclose(derivative_weak_norm(f * 2, p, grid=2000),
                               2 * derivative_weak_norm(f, p, grid=2000))
