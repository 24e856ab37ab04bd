import numpy as np
import pytest

from muntz._utils import MuntzValidationError
from muntz.quadrature import lp_norm
from muntz.fourier import (FourierCoeffs, TrigPolynomial, fourier_coeffs,
                           partial_sum, convolve, convolve_coeffs,
                           SummationMatrix, summation_matrix, kernel,
                           apply_summation, summation_norm_bounds,
                           summation_conditions)


def _random_trig(degree, rng):
    return TrigPolynomial.from_arrays(rng.standard_normal(degree + 1),
                                      rng.standard_normal(degree))


def test_fourier_coeffs_cos():
    c = fourier_coeffs(lambda x: np.cos(2 * np.pi * x), 4)
    np.testing.assert_allclose(c.a, [0, 1, 0, 0, 0], atol=1e-12)
    np.testing.assert_allclose(c.b, 0, atol=1e-12)


def test_fourier_coeffs_constant():
    c = fourier_coeffs(lambda x: 1.0, 3)
    np.testing.assert_allclose(c.a, [2, 0, 0, 0], atol=1e-12)


def test_fourier_coeffs_sawtooth():
    c = fourier_coeffs(lambda x: x - 0.5, 5)
    k = np.arange(1, 6)
    np.testing.assert_allclose(c.a, 0, atol=1e-12)
    np.testing.assert_allclose(c.b[1:], -1 / (np.pi * k), atol=1e-12)


def test_fourier_coeffs_trig_input():
    T = TrigPolynomial.from_arrays([1, 2, 3], [4, 5])
    c = fourier_coeffs(T, 4)
    np.testing.assert_array_equal(c.a, [1, 2, 3, 0, 0])
    np.testing.assert_array_equal(c.b, [0, 4, 5, 0, 0])
    with pytest.raises(MuntzValidationError):
        fourier_coeffs(T, -1)


def test_fourier_coeffs_type():
    c = FourierCoeffs([1.0, 2.0], [3.0])
    np.testing.assert_array_equal(c.b, [0, 3])
    assert c.N == 1
    np.testing.assert_allclose(c.harmonics, [1, 2 - 3j])
    back = FourierCoeffs.from_harmonics(c.harmonics)
    np.testing.assert_array_equal(back.a, c.a)
    np.testing.assert_array_equal(back.b, c.b)
    with pytest.raises(MuntzValidationError):
        FourierCoeffs([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(MuntzValidationError):
        FourierCoeffs([1.0, 2.0], [1.0, 2.0, 3.0])


def test_trig_polynomial():
    T = TrigPolynomial.from_arrays([2.0, 0.0, 1.0])
    assert T.degree == 2
    assert float(T(0.0)) == pytest.approx(2.0)
    assert float(T(0.25)) == pytest.approx(0.0)
    # periodic evaluation
    assert float(T(1.25)) == pytest.approx(float(T(0.25)))
    S = T + TrigPolynomial.from_arrays([0.0, 1.0], [1.0])
    np.testing.assert_array_equal(S.a, [2, 1, 1])
    np.testing.assert_array_equal((S - S).a, 0)
    np.testing.assert_array_equal((2 * T).a, [4, 0, 2])
    assert TrigPolynomial.from_arrays([0.0, 0.0]).degree == 0


def test_trig_polynomial_norm():
    cos = TrigPolynomial.from_arrays([0, 1])
    assert cos.norm(2) == pytest.approx(2 ** -0.5)
    one = TrigPolynomial.from_arrays([2.0])
    for p in (1.5, 2, 3):
        assert one.norm(p) == pytest.approx(1.0)
    # quadrature and Parseval agree at p = 2
    rng = np.random.default_rng(0)
    T = _random_trig(6, rng)
    assert lp_norm(T, 2, (0, 1), panels=24) == pytest.approx(T.norm(2),
                                                             rel=1e-10)


def test_partial_sum():
    c = fourier_coeffs(TrigPolynomial.from_arrays([4, 1, 1]), 2)
    assert float(partial_sum(c, 0)(0.3)) == pytest.approx(2.0)
    S1 = partial_sum(c, 1)
    np.testing.assert_array_equal(S1.a, [4, 1])
    S2 = partial_sum(c, 2)
    np.testing.assert_array_equal(S2.a, c.a)
    with pytest.raises(MuntzValidationError):
        partial_sum(c, 3)


def test_summation_matrix():
    np.testing.assert_allclose(summation_matrix('fejer', 2).weights(2),
                               [1, 2 / 3, 1 / 3])
    np.testing.assert_allclose(summation_matrix('dirichlet', 2).weights(2),
                               [1, 1, 1])
    custom = summation_matrix('custom', 1, rows=[[1.0], [1.0, 0.5]])
    assert custom.kind == 'custom'
    np.testing.assert_allclose(custom.weights(1), [1, 0.5])
    with pytest.raises(ValueError):
        summation_matrix('abel', 3)
    with pytest.raises(MuntzValidationError):
        summation_matrix('custom', 2)
    with pytest.raises(MuntzValidationError):
        SummationMatrix([[1.0, 2.0]])
    with pytest.raises(MuntzValidationError):
        summation_matrix('fejer', 2).weights(3)


def test_fejer_limit():
    q = summation_matrix('fejer', 64)
    report = summation_conditions(q, k_max=4)
    assert report['limit_deviation'] == pytest.approx(4 / 65)
    assert report['weight_sup'] == 1.0


def test_summation_conditions_kernel_norm():
    report = summation_conditions(summation_matrix('fejer', 16))
    assert report['kernel_norm_sup'] == pytest.approx(1.0, abs=1e-8)


def test_kernel():
    K = kernel(summation_matrix('fejer', 2), 2)
    np.testing.assert_allclose(K.a, [1, 2 / 3, 1 / 3])
    assert float(K(0.0)) == pytest.approx(0.5 + 2 / 3 + 1 / 3)
    D = kernel(summation_matrix('dirichlet', 1), 1)
    assert float(D(0.5)) == pytest.approx(-0.5)
    K0 = kernel(summation_matrix('fejer', 0), 0)
    assert float(K0(0.3)) == pytest.approx(0.5)


def test_convolve():
    cos = TrigPolynomial.from_arrays([0, 1])
    x = np.linspace(0, 1, 9)
    conv = convolve(cos, cos, grid=9)
    assert conv.meta['method'] == 'harmonic'
    np.testing.assert_allclose(conv.values, np.cos(2 * np.pi * x),
                               atol=1e-12)
    conv = convolve(lambda x: np.cos(2 * np.pi * x),
                    lambda x: np.cos(2 * np.pi * x), grid=9, panels=8)
    assert conv.meta['method'] == 'quadrature'
    np.testing.assert_allclose(conv.values, np.cos(2 * np.pi * x),
                               atol=1e-12)
    zero = convolve(lambda x: np.sin(2 * np.pi * x), lambda x: 0.0 * x,
                    grid=9, panels=8)
    np.testing.assert_allclose(zero.values, 0)


def test_convolve_with_kernel_is_summation():
    rng = np.random.default_rng(4)
    f = _random_trig(5, rng)
    q = summation_matrix('fejer', 8)
    via_kernel = convolve_coeffs(f.coeffs.resized(8), kernel(q, 8).coeffs)
    direct = apply_summation(f.coeffs.resized(8), q, 8)
    np.testing.assert_allclose(via_kernel.a, direct.a, atol=1e-14)
    np.testing.assert_allclose(via_kernel.b, direct.b, atol=1e-14)


def test_apply_summation():
    c = TrigPolynomial.from_arrays([0, 1]).coeffs.resized(2)
    U = apply_summation(c, summation_matrix('fejer', 2), 2)
    np.testing.assert_allclose(U.a, [0, 2 / 3, 0])
    rng = np.random.default_rng(1)
    f = _random_trig(4, rng)
    U = apply_summation(f.coeffs, summation_matrix('dirichlet', 4), 3)
    S = partial_sum(f.coeffs, 3)
    np.testing.assert_allclose(U.a, S.a)
    np.testing.assert_allclose(U.b, S.b)
    one = FourierCoeffs([2.0])
    assert float(apply_summation(one, summation_matrix('fejer', 0), 0)(
        0.1)) == pytest.approx(1.0)
    with pytest.raises(MuntzValidationError):
        apply_summation(one, summation_matrix('fejer', 2), 2)


@pytest.mark.parametrize('n', [8, 16, 32])
def test_fejer_error_closed_form(n):
    rng = np.random.default_rng(n)
    f = _random_trig(8, rng)
    c = f.coeffs.resized(n)
    U = apply_summation(c, summation_matrix('fejer', n), n)
    measured = lp_norm(U - f, 2, (0, 1), panels=4 * n)
    k = np.arange(1, 9)
    closed = np.sqrt(0.5 * np.sum((k / (n + 1.0)) ** 2
                                  * (f.a[1:] ** 2 + f.b[1:] ** 2)))
    assert measured == pytest.approx(closed, abs=1e-8)


def test_fejer_kernel_positive():
    x = np.linspace(0, 1, 10 ** 4)
    for n in (1, 8, 32):
        K = kernel(summation_matrix('fejer', n), n)
        assert np.all(K(x) >= -1e-12)


def test_summation_norm_bounds():
    lower, upper = summation_norm_bounds(summation_matrix('fejer', 8), 8, 2,
                                         trials=20, seed=0)
    assert upper == pytest.approx(1.0, abs=1e-8)
    assert 0 < lower <= upper
    lower, upper = summation_norm_bounds(summation_matrix('dirichlet', 1), 1,
                                         3, trials=5, seed=0)
    exact = 1 / 3 + 2 * np.sqrt(3) / np.pi
    assert upper == pytest.approx(exact, abs=1e-8)
    lower, upper = summation_norm_bounds(summation_matrix('fejer', 0), 0, 2,
                                         trials=5, seed=0)
    assert upper == pytest.approx(1.0)
    assert lower <= 1 + 1e-12
    with pytest.raises(MuntzValidationError):
        summation_norm_bounds(summation_matrix('fejer', 2), 2, 1, 5, 0)
