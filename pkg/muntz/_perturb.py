from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from ._utils import CHAIN_CAP, DEFAULT_TOL, MuntzValidationError
from ._exponents import perturbation_threshold
from ._functions import MuntzPolynomial
from ._quadrature import lp_norm

"""
Exponent perturbation chains Lambda = Y_0, Y_1, ..., Y_K = Upsilon

Each step T_k keeps the coefficients of a Müntz polynomial and moves its
exponents from Y_k to Y_(k+1); the chain flips one coordinate per step,
in increasing index order.
"""


@dataclass(eq=False)
class UpsilonChain:
    """
    Sequence of exponent vectors from Lambda to Upsilon.

    Attributes
    ----------
    steps : list of ndarray
        Y_0 = Lambda, ..., Y_K = Upsilon.
    deltas : list of ndarray
        Nonzero shifts introduced by each step (one entry per flipped
        coordinate; empty for a step that keeps a fixed coordinate).
    m : list of int
        First changed (1-based) index of each step.
    theta : list of list of int
        1-based indices of the nonzero shifts of each step.
    lam, ups : ExponentSet
        The end points.
    """
    steps: list
    deltas: list
    m: list
    theta: list
    lam: object = field(repr=False)
    ups: object = field(repr=False)

    def __len__(self):
        return len(self.steps) - 1

    @property
    def sup_shift(self):
        return float(np.max(self.ups.lambdas - self.lam.lambdas))


def build_upsilon_chain(lam, ups, cap=CHAIN_CAP, keep_fixed=False):
    """
    One-flip-per-step chain from `lam` to `ups`.

    Parameters
    ----------
    lam, ups : ExponentSet
        Equal lengths, lam_n <= ups_n, and
        sup (ups_n - lam_n) < perturbation_threshold(lam).
    cap : int, optional
        Largest accepted prefix length. Default =16.
    keep_fixed : bool, optional
        If True, unchanged coordinates get a zero-shift step too.
        Default =False.

    Returns
    -------
    chain : UpsilonChain

    Raises
    ------
    MuntzValidationError
        On any violated precondition; the threshold message quotes
        the bound.

    Examples
    --------
    >>> from muntz.exponents import validate_exponents
    >>> from muntz.perturb import build_upsilon_chain
    >>> lam = validate_exponents('list:1,4,9')
    >>> ups = validate_exponents('list:1.05,4.05,9.05')
    >>> build_upsilon_chain(lam, ups).m
    [1, 2, 3]
    """
    a, b = lam.lambdas, ups.lambdas
    if a.size != b.size:
        raise MuntzValidationError(
            'exponent prefixes differ in length ({} vs {})'
            .format(a.size, b.size))
    if a.size > cap:
        raise MuntzValidationError(
            'prefix length {} exceeds the cap {}'.format(a.size, cap))
    below = np.flatnonzero(a > b)
    if below.size:
        n = int(below[0])
        raise MuntzValidationError(
            'lambda_{0} = {1:g} exceeds upsilon_{0} = {2:g}'
            .format(n + 1, a[n], b[n]), index=n)
    shift = b - a
    threshold = perturbation_threshold(lam)
    if shift.max() >= threshold:
        raise MuntzValidationError(
            'sup shift {:g} is not below the perturbation threshold {:g}'
            .format(shift.max(), threshold))
    crowded = np.flatnonzero(b[:-1] >= a[1:])
    if crowded.size:
        n = int(crowded[0])
        raise MuntzValidationError(
            'shift at index {} reaches the next exponent'.format(n + 1),
            index=n)

    current = a.copy()
    steps, deltas, m, theta = [current.copy()], [], [], []
    for n in range(a.size):
        if shift[n] == 0 and not keep_fixed:
            continue
        current[n] = b[n]
        steps.append(current.copy())
        nonzero = shift[n] != 0
        deltas.append(np.array([shift[n]]) if nonzero else np.zeros(0))
        m.append(n + 1)
        theta.append([n + 1] if nonzero else [])
    return UpsilonChain(steps, deltas, m, theta, lam, ups)


def chain_conditions(chain):
    """
    The four chain conditions, each as a bool.

    Returns
    -------
    conditions : dict
        ``endpoints``: every entry is lam_n or ups_n;
        ``monotone``: entries never decrease along the chain;
        ``deltas_decreasing``: each step's shift list is non-increasing;
        ``m_increasing``: first changed indices strictly increase.
    """
    a, b = chain.lam.lambdas, chain.ups.lambdas
    Y = np.vstack(chain.steps)
    return {
        'endpoints': bool(np.all((Y == a) | (Y == b))),
        'monotone': bool(np.all(np.diff(Y, axis=0) >= 0)),
        'deltas_decreasing': all(bool(np.all(np.diff(d) <= 0))
                                 for d in chain.deltas),
        'm_increasing': bool(np.all(np.diff(chain.m) > 0)),
    }


def _indices_on(f, exponents):
    idx = np.searchsorted(exponents, f.exponents)
    idx = np.minimum(idx, exponents.size - 1)
    ok = np.isclose(exponents[idx], f.exponents, rtol=1e-14, atol=0)
    if not np.all(ok):
        bad = int(np.flatnonzero(~ok)[0])
        raise MuntzValidationError(
            'exponent {!r} of f is not on the chain step'.format(
                float(f.exponents[bad])), index=bad)
    return idx


def _step_constant(p):
    return 2.0 ** (2.0 + 1.0 / p)


def step_operator(f, chain, k, p, tol=DEFAULT_TOL):
    """
    Apply T_k: Y_k -> Y_(k+1) and check the step inequality.

    Parameters
    ----------
    f : MuntzPolynomial
        Exponents taken from Y_k.
    chain : UpsilonChain
    k : int
        Step index, 0 <= k < len(chain).
    p : float

    Returns
    -------
    f1 : MuntzPolynomial
        Same coefficients on the exponents of Y_(k+1).
    lhs : float
        ||f - f1||_Lp(0,1).
    bound : float
        2^(2+1/p) ||f||_p Delta / lambda_m, zero for a zero-shift step.
    """
    k = int(k)
    if not 0 <= k < len(chain):
        raise MuntzValidationError(
            'step {} outside [0, {})'.format(k, len(chain)))
    p = float(p)
    idx = _indices_on(f, chain.steps[k])
    f1 = MuntzPolynomial(f.coefficients, chain.steps[k + 1][idx], f.domain)
    if chain.deltas[k].size == 0:
        return f1, 0.0, 0.0
    delta = float(chain.deltas[k][0])
    lam_m = float(chain.lam.lambdas[chain.m[k] - 1])
    lhs = lp_norm(f - f1, p, (0.0, 1.0), tol=tol)
    bound = _step_constant(p) * lp_norm(f, p, (0.0, 1.0), tol=tol) \
        * delta / lam_m
    return f1, lhs, bound


def _step_factor(chain, k, p):
    if chain.deltas[k].size == 0:
        return 0.0
    return _step_constant(p) * float(chain.deltas[k][0]) \
        / float(chain.lam.lambdas[chain.m[k] - 1])


def compose_s(lam, ups, f, p):
    """
    Apply every step of the chain from `lam` to `ups` to f.

    Returns
    -------
    f_final : MuntzPolynomial
    accumulated_bound : float
        sum_k 2^(2+1/p) Delta_k / lambda_m(k), per unit input norm.

    Examples
    --------
    >>> from muntz.exponents import validate_exponents
    >>> from muntz.functions import MuntzPolynomial
    >>> from muntz.perturb import compose_s
    >>> lam, ups = validate_exponents('list:1'), validate_exponents('list:1.05')
    >>> _, bound = compose_s(lam, ups, MuntzPolynomial([1.0], [1.0]), 2)
    >>> round(bound, 4)
    0.2828
    """
    chain = build_upsilon_chain(lam, ups)
    p = float(p)
    smallness = chain.sup_shift * lam.muntz_sum_bound if len(chain) else 0.0
    if not smallness < 0.125:
        raise MuntzValidationError(
            'sup shift times Müntz sum is {:g}, not below 1/8'
            .format(smallness))
    current = f
    total = 0.0
    for k in range(len(chain)):
        idx = _indices_on(current, chain.steps[k])
        current = MuntzPolynomial(current.coefficients,
                                  chain.steps[k + 1][idx], current.domain)
        total += _step_factor(chain, k, p)
    return current, total


def step_table(lam, ups, f, p, keep_fixed=False):
    """
    Per-step record of the chain applied to f.

    Returns
    -------
    table : pandas.DataFrame
        Columns step, m, lambda_m, delta, lhs, bound.
    """
    chain = build_upsilon_chain(lam, ups, keep_fixed=keep_fixed)
    rows = []
    current = f
    for k in range(len(chain)):
        nxt, lhs, bound = step_operator(current, chain, k, p)
        rows.append({'step': k + 1,
                     'm': chain.m[k],
                     'lambda_m': float(lam.lambdas[chain.m[k] - 1]),
                     'delta': float(chain.deltas[k][0])
                     if chain.deltas[k].size else 0.0,
                     'lhs': lhs,
                     'bound': bound})
        current = nxt
    return pd.DataFrame(rows, columns=['step', 'm', 'lambda_m', 'delta',
                                       'lhs', 'bound'])
