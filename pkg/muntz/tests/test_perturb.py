import numpy as np
import pandas as pd
import pytest

from muntz._utils import MuntzValidationError
from muntz.exponents import validate_exponents
from muntz.functions import MuntzPolynomial
from muntz.quadrature import lp_norm
from muntz.perturb import (UpsilonChain, build_upsilon_chain,
                           chain_conditions, step_operator, compose_s,
                           step_table)


def test_build_upsilon_chain():
    lam = validate_exponents('list:1,4,9')
    ups = validate_exponents('list:1.05,4.05,9.05')
    chain = build_upsilon_chain(lam, ups)
    assert isinstance(chain, UpsilonChain)
    assert len(chain) == 3
    assert chain.m == [1, 2, 3]
    assert chain.theta == [[1], [2], [3]]
    np.testing.assert_allclose(chain.steps[1], [1.05, 4, 9])
    np.testing.assert_allclose(chain.steps[2], [1.05, 4.05, 9])
    np.testing.assert_allclose(chain.steps[-1], ups.lambdas)
    assert chain.sup_shift == pytest.approx(0.05)
    assert all(chain_conditions(chain).values())


def test_build_upsilon_chain_identity():
    lam = validate_exponents('list:1,4,9')
    chain = build_upsilon_chain(lam, lam)
    assert len(chain) == 0
    assert chain.steps[0].tolist() == [1, 4, 9]
    kept = build_upsilon_chain(lam, lam, keep_fixed=True)
    assert len(kept) == 3
    assert all(d.size == 0 for d in kept.deltas)


def test_build_upsilon_chain_partial():
    lam = validate_exponents('list:1,4,9')
    ups = validate_exponents('list:1,4.05,9')
    chain = build_upsilon_chain(lam, ups)
    assert chain.m == [2]
    assert all(chain_conditions(chain).values())


def test_build_upsilon_chain_errors():
    lam = validate_exponents('list:1,4')
    with pytest.raises(MuntzValidationError) as exc:
        build_upsilon_chain(lam, validate_exponents('list:0.99,4'))
    assert exc.value.index == 0
    with pytest.raises(MuntzValidationError, match='perturbation threshold'):
        build_upsilon_chain(lam, validate_exponents('list:1.2,4'))
    with pytest.raises(MuntzValidationError):
        build_upsilon_chain(lam, validate_exponents('list:1,4,9'))
    crowded = validate_exponents('list:1,1.05')
    with pytest.raises(MuntzValidationError, match='next exponent'):
        build_upsilon_chain(crowded, validate_exponents('list:1.05,1.06'))
    with pytest.raises(MuntzValidationError, match='cap'):
        build_upsilon_chain(lam, lam, cap=1)


def test_step_operator():
    lam = validate_exponents('list:1')
    ups = validate_exponents('list:1.05')
    chain = build_upsilon_chain(lam, ups)
    f = MuntzPolynomial([1.0], [1.0])
    f1, lhs, bound = step_operator(f, chain, 0, 2)
    np.testing.assert_allclose(f1.exponents, [1.05])
    np.testing.assert_allclose(f1.coefficients, [1.0])
    assert lhs == pytest.approx(np.sqrt(1 / 3 - 2 / 3.05 + 1 / 3.1), rel=1e-6)
    assert bound == pytest.approx(2 ** 2.5 * 3 ** -0.5 * 0.05, rel=1e-9)
    assert lhs <= bound
    with pytest.raises(MuntzValidationError):
        step_operator(f, chain, 1, 2)
    with pytest.raises(MuntzValidationError, match='not on the chain'):
        step_operator(MuntzPolynomial([1.0], [2.0]), chain, 0, 2)


def test_step_operator_zero_step():
    lam = validate_exponents('list:1,4')
    ups = validate_exponents('list:1,4.02')
    chain = build_upsilon_chain(lam, ups, keep_fixed=True)
    assert chain.m == [1, 2]
    f = MuntzPolynomial([1.0, -1.0], [1.0, 4.0])
    f1, lhs, bound = step_operator(f, chain, 0, 3)
    assert f1.same_terms(f)
    assert (lhs, bound) == (0.0, 0.0)


def test_compose_s_single():
    lam = validate_exponents('list:1')
    ups = validate_exponents('list:1.05')
    f = MuntzPolynomial([1.0], [1.0])
    f_final, bound = compose_s(lam, ups, f, 2)
    assert bound == pytest.approx(0.28284, abs=1e-5)
    np.testing.assert_allclose(f_final.exponents, [1.05])
    same, zero = compose_s(lam, lam, f, 2)
    assert same.same_terms(f)
    assert zero == 0.0


@pytest.mark.parametrize('p', [1.5, 2, 3])
def test_compose_s_squares(p):
    lam = validate_exponents('quad:1,0,0,12')
    ups = lam.shifted(0.05)
    rng = np.random.default_rng(7)
    for i in range(200):
        f = MuntzPolynomial(rng.standard_normal(len(lam)), lam.lambdas)
        f_final, bound = compose_s(lam, ups, f, p)
        assert bound < 1
        np.testing.assert_allclose(f_final.exponents, ups.lambdas)
        if i < 10:
            steps = step_table(lam, ups, f, p)
            assert np.all(steps['lhs'] <= steps['bound'] + 1e-8)
        lhs = lp_norm(f - f_final, p, (0, 1))
        assert lhs <= bound * lp_norm(f, p, (0, 1)) + 1e-6


def test_step_table():
    lam = validate_exponents('list:1,4,9')
    ups = validate_exponents('list:1.05,4.05,9.05')
    f = MuntzPolynomial([1.0, -2.0, 0.5], lam.lambdas)
    table = step_table(lam, ups, f, 2)
    assert isinstance(table, pd.DataFrame)
    assert list(table.columns) == ['step', 'm', 'lambda_m', 'delta', 'lhs',
                                   'bound']
    assert table['step'].tolist() == [1, 2, 3]
    assert np.all(table['lhs'] <= table['bound'])
    # triangle inequality along the chain
    f_final, _ = compose_s(lam, ups, f, 2)
    total = lp_norm(f - f_final, 2, (0, 1))
    assert total <= table['lhs'].sum() + 1e-10
