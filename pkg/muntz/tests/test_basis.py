import numpy as np
import pytest

from muntz._utils import MuntzValidationError, NumericalError
from muntz.exponents import validate_exponents
from muntz.fourier import TrigPolynomial, summation_matrix
from muntz.basis import (StepFamily, generate_candidates, gaussian_exclusion,
                         inclination, inclination_profile,
                         finite_basis_constant, span_residual)


COS = TrigPolynomial.from_arrays([0, 1], [0, 0])
SIN = TrigPolynomial.from_arrays([0, 0], [0, 1])
COS_SIN = TrigPolynomial.from_arrays([0, 1], [0, 1])
COS2 = TrigPolynomial.from_arrays([0, 0, 1])


def _random_step_family(size=5, N=3, p=2, seed=3):
    rng = np.random.default_rng(seed)
    polys = []
    for l in range(size):
        row = rng.standard_normal(2 * N + 1)
        row[:l] = 0.0
        a = np.r_[row[0], row[1::2]]
        b = np.r_[0.0, row[2::2]]
        polys.append(TrigPolynomial.from_arrays(a, b))
    return StepFamily.from_polys(polys, p, normalize=True)


def test_gaussian_exclusion():
    family = gaussian_exclusion([COS, COS_SIN], 2)
    assert family.pivots == [2, 3]
    assert family.leading == [1, 1]
    np.testing.assert_allclose(family.polys[0].a, [0, np.sqrt(2)])
    np.testing.assert_allclose(family.polys[1].b, [0, np.sqrt(2)],
                               atol=1e-15)
    assert all(family.check().values())


def test_gaussian_exclusion_duplicates():
    family = gaussian_exclusion([COS, COS * 2.0, SIN, COS_SIN], 2)
    assert len(family) == 2
    assert family.pivots == [2, 3]


def test_gaussian_exclusion_pivot():
    family = gaussian_exclusion([COS2 * 3.0], 2)
    assert family.pivots == [4]
    assert family.leading == [2]
    assert family.trailing == [2]


def test_gaussian_exclusion_errors():
    zero = TrigPolynomial.from_arrays([0, 0])
    with pytest.raises(NumericalError):
        gaussian_exclusion([zero, zero], 2)
    with pytest.raises(MuntzValidationError):
        gaussian_exclusion([], 2)


def test_step_family_from_polys():
    with pytest.raises(MuntzValidationError, match='strictly increasing'):
        StepFamily.from_polys([SIN, COS], 2)
    family = StepFamily.from_polys([COS, SIN], 2)
    assert not family.check()['normalized']
    assert family.matrix.shape == (2, 3)


def test_inclination():
    family = StepFamily.from_polys([COS, SIN, COS2], 2, normalize=True)
    assert inclination(family, 1, 1) == pytest.approx(1.0)
    assert inclination(family, 2, 1) == pytest.approx(1.0)
    tilted = StepFamily.from_polys([COS_SIN, SIN], 2, normalize=True)
    assert inclination(tilted, 1, 1) == pytest.approx(2 ** -0.5)
    with pytest.raises(MuntzValidationError):
        inclination(family, 2, 2)


def test_inclination_profile():
    family = _random_step_family()
    profile = inclination_profile(family, 1)
    assert profile.size == 4
    assert np.all((profile >= 0) & (profile <= 1))
    assert np.all(np.diff(profile) <= 1e-12)


def test_inclination_lp():
    family = StepFamily.from_polys([COS_SIN, SIN], 3, normalize=True)
    value = inclination(family, 1, 1, restarts=5)
    assert 0 < value <= 1


def test_finite_basis_constant():
    control = StepFamily.from_polys([COS, SIN, COS2], 2, normalize=True)
    assert finite_basis_constant(control, 2) == pytest.approx(1.0, abs=1e-6)
    assert finite_basis_constant(control, 3) == pytest.approx(1.0, abs=1e-6)
    family = _random_step_family()
    values = [finite_basis_constant(family, m) for m in range(2, 6)]
    assert np.all(np.array(values) >= 1 - 1e-12)
    assert np.all(np.diff(values) >= -1e-10)


def test_finite_basis_constant_search():
    family = _random_step_family(size=3)
    exact = finite_basis_constant(family, 2, method='gram')
    found = finite_basis_constant(family, 2, method='search', samples=200)
    assert found <= exact + 1e-8
    assert found >= exact - 1e-4
    with pytest.raises(ValueError):
        finite_basis_constant(family, 2, method='svd')
    with pytest.raises(MuntzValidationError):
        finite_basis_constant(family, 1)
    lp = _random_step_family(size=3, p=3)
    with pytest.raises(MuntzValidationError):
        finite_basis_constant(lp, 2, method='gram')
    assert finite_basis_constant(lp, 2, samples=200) >= 1.0


def test_span_residual():
    assert span_residual([COS], [COS * 3.0]) == pytest.approx(0.0, abs=1e-15)
    assert span_residual([COS], [SIN]) == pytest.approx(1.0)
    assert span_residual([COS, SIN], [COS_SIN, COS2]) == pytest.approx(1.0)


def test_basis_pipeline():
    e = validate_exponents('list:1,4,9')
    orders = list(range(8, 65, 8))
    q = summation_matrix('fejer', 64)
    candidates = generate_candidates(e, 0.8, 2, 3, orders, q)
    assert len(candidates) == 24
    family = gaussian_exclusion(candidates, 2)
    norms = np.array([T.norm(2) for T in family.polys])
    np.testing.assert_allclose(norms, 1.0, atol=1e-9)
    assert np.all(np.diff(family.pivots) > 0)
    assert span_residual(family.polys, candidates) < 1e-8
    assert span_residual(candidates, family.polys) < 1e-8
    profile = inclination_profile(family, 1)
    assert np.all((profile >= 0) & (profile <= 1))
    assert np.all(np.diff(profile) <= 1e-10)
    values = np.array([finite_basis_constant(family, m)
                       for m in range(2, len(family) + 1)])
    assert values[0] >= 1 - 1e-12
    assert np.all(np.diff(values) >= -1e-8 * values[1:])


def test_generate_candidates_errors():
    q = summation_matrix('fejer', 8)
    with pytest.raises(MuntzValidationError):
        generate_candidates(validate_exponents('list:1,4.5'), 0.8, 2, 1, [8],
                            q)
    with pytest.raises(MuntzValidationError):
        generate_candidates(validate_exponents('list:1,4'), 0.8, 2, 3, [8], q)
    assert generate_candidates(validate_exponents('list:1,4'), 0.8, 2, 1, [],
                               q) == []
