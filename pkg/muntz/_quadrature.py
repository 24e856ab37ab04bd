import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.optimize import minimize_scalar
from scipy.special import roots_legendre

from ._utils import (DEFAULT_TOL, DEFAULT_MAX_DEPTH, GAUSS_ORDER, GRID_NODES,
                     MuntzValidationError, NumericalError, QuadratureError,
                     ConvergenceWarning)

"""
Adaptive Gauss-Legendre quadrature and the L_p, sup and weak L_s norms
"""

_MAX_PANELS = 20000
_NODES, _WEIGHTS = roots_legendre(GAUSS_ORDER)


def _evaluate(g, t):
    """Evaluate `g` on array `t`, broadcasting constant results."""
    with np.errstate(all='ignore'):
        values = np.asarray(g(t), dtype=float)
    if values.shape != t.shape:
        values = np.broadcast_to(values, t.shape)
    return values


def _check_interval(interval):
    a, b = (float(v) for v in interval)
    if not (np.isfinite(a) and np.isfinite(b)):
        raise MuntzValidationError(
            'interval [{}, {}] must be finite'.format(a, b))
    return a, b


def conjugate_exponent(p):
    """
    Conjugate exponent q with 1/p + 1/q = 1.

    ``p=1`` maps to ``inf`` and ``p=inf`` to 1.
    """
    p = float(p)
    if p < 1:
        raise MuntzValidationError('p must be >= 1, got {}'.format(p))
    if p == 1:
        return np.inf
    if np.isinf(p):
        return 1.0
    return p / (p - 1)


def gauss_legendre_nodes(interval, panels=1, order=GAUSS_ORDER):
    """
    Nodes and weights of the composite Gauss-Legendre rule.

    Parameters
    ----------
    interval : tuple of float
        Integration interval (a, b).
    panels : int, optional
        Number of equal panels. Default =1.
    order : int, optional
        Points per panel. Default =15.

    Returns
    -------
    nodes, weights : ndarray
        Flat arrays of length ``panels * order``, nodes increasing.
    """
    a, b = _check_interval(interval)
    panels = int(panels)
    if panels < 1:
        raise MuntzValidationError('panels must be >= 1')
    if order == GAUSS_ORDER:
        x, w = _NODES, _WEIGHTS
    else:
        x, w = roots_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def _smoothing(u, a, b):
    """
    Cubic map u -> t on [0, 1] -> [a, b] with vanishing derivative at
    both ends, so algebraic endpoint singularities become mild.
    """
    w = b - a
    left = a + w * u * u * (3 - 2 * u)
    right = b - w * (1 - u) ** 2 * (1 + 2 * u)
    t = np.where(u <= 0.5, left, right)
    lo, hi = np.nextafter(a, b), np.nextafter(b, a)
    if lo <= hi:
        t = np.clip(t, lo, hi)
    return t, 6 * w * u * (1 - u)


def _panel_rule(g, lo, hi, a, b, smooth):
    """15-point rule on each panel [lo_i, hi_i] of the u-variable."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    u = mid[:, None] + half[:, None] * _NODES[None, :]
    if smooth:
        t, dt = _smoothing(u, a, b)
    else:
        t, dt = a + (b - a) * u, np.full(u.shape, b - a)
    values = _evaluate(g, t)
    integrand = values * dt
    est = half * (integrand @ _WEIGHTS)
    mag = half * (np.abs(integrand) @ _WEIGHTS)
    return est, mag


def _estimate(g, lo, hi, a, b, smooth):
    """Panel estimates with a bisection-based error indicator."""
    mid = 0.5 * (lo + hi)
    coarse, _ = _panel_rule(g, lo, hi, a, b, smooth)
    left, lmag = _panel_rule(g, lo, mid, a, b, smooth)
    right, rmag = _panel_rule(g, mid, hi, a, b, smooth)
    fine = left + right
    return fine, np.abs(coarse - fine), lmag + rmag


def integrate(g, interval, tol=DEFAULT_TOL, max_depth=DEFAULT_MAX_DEPTH,
              panels=1, smooth=True):
    """
    Adaptive composite Gauss-Legendre quadrature.

    Parameters
    ----------
    g : callable
        Vectorised integrand, finite on the open interval.
    interval : tuple of float
        Integration interval (a, b).
    tol : float, optional
        Absolute error target. Default =1e-10.
    max_depth : int, optional
        Maximum number of bisections of any panel. Default =40.
    panels : int, optional
        Number of initial equal panels, useful for oscillatory
        integrands. Default =1.
    smooth : bool, optional
        If True, integrate in a variable whose cubic map to [a, b]
        flattens both endpoints, which turns algebraic endpoint
        singularities into integrable smooth profiles. Default =True.

    Returns
    -------
    value : float
        Estimate of the integral.

    Raises
    ------
    QuadratureError
        If the tolerance is not met once every panel has reached
        `max_depth`, or the integrand produced non-finite values.

    Examples
    --------
    >>> from muntz.quadrature import integrate
    >>> round(integrate(lambda t: t**2, (0, 1)), 12)
    0.333333333333
    >>> round(integrate(lambda t: (1 - t)**-0.5, (0, 1)), 10)
    2.0
    """
    if tol <= 0:
        raise MuntzValidationError('tol must be positive, got {}'.format(tol))
    a, b = _check_interval(interval)
    if a == b:
        return 0.0
    if a > b:
        return -integrate(g, (b, a), tol=tol, max_depth=max_depth,
                          panels=panels, smooth=smooth)

    edges = np.linspace(0.0, 1.0, int(panels) + 1)
    lo, hi = edges[:-1], edges[1:]
    depth = np.zeros(lo.shape, dtype=int)
    est, err, mag = _estimate(g, lo, hi, a, b, smooth)

    while True:
        order = np.argsort(lo)
        total = float(np.sum(est[order]))
        total_err = float(np.sum(err))
        if not (np.isfinite(total) and np.isfinite(total_err)):
            raise QuadratureError(
                'integrand is not finite on the quadrature nodes',
                estimate=total, error=total_err)
        floor = 50 * np.finfo(float).eps * float(np.sum(mag))
        if total_err <= max(tol, floor):
            return total

        split = (err >= 0.1 * err.max()) & (depth < max_depth)
        if not split.any() or lo.size + split.sum() > _MAX_PANELS:
            raise QuadratureError(
                'quadrature did not reach tol={:g} (error estimate {:g})'
                .format(tol, total_err), estimate=total, error=total_err)

        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_depth = np.tile(depth[split] + 1, 2)
        new_est, new_err, new_mag = _estimate(g, new_lo, new_hi, a, b, smooth)

        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        depth = np.concatenate([depth[keep], new_depth])
        est = np.concatenate([est[keep], new_est])
        err = np.concatenate([err[keep], new_err])
        mag = np.concatenate([mag[keep], new_mag])


def lp_norm(g, p, interval, tol=DEFAULT_TOL, panels=1):
    """
    L_p norm (int_a^b |g|^p)^(1/p) computed with `integrate`.

    Parameters
    ----------
    g : callable
        Vectorised function.
    p : float
        Exponent, p >= 1.
    interval : tuple of float
        Interval (a, b).
    tol : float, optional
        Absolute tolerance on the integral of |g|^p. Default =1e-10.
    panels : int, optional
        Initial panels handed to `integrate`. Default =1.

    Returns
    -------
    norm : float

    Examples
    --------
    >>> from muntz.quadrature import lp_norm
    >>> round(lp_norm(lambda t: t, 2, (0, 1)), 7)
    0.5773503
    """
    p = float(p)
    if not p >= 1:
        raise MuntzValidationError('p must be >= 1, got {}'.format(p))
    if np.isinf(p):
        return sup_norm(g, interval)
    value = integrate(lambda t: np.abs(_evaluate(g, t)) ** p, interval,
                      tol=tol, panels=panels)
    return max(value, 0.0) ** (1.0 / p)


def sup_norm(g, interval, grid=GRID_NODES):
    """
    sup |g| on [a, b], from a uniform sample polished by a bounded
    1-d maximisation around the best sample.
    """
    a, b = _check_interval(interval)
    t = np.linspace(a, b, int(grid))
    values = np.abs(_evaluate(g, t))
    if not np.all(np.isfinite(values)):
        raise NumericalError('g is not bounded on the sample grid')
    i = int(np.argmax(values))
    lo, hi = t[max(i - 1, 0)], t[min(i + 1, t.size - 1)]
    best = float(values[i])
    if hi > lo:
        res = minimize_scalar(
            lambda x: -float(np.abs(_evaluate(g, np.array([x])))[0]),
            bounds=(lo, hi), method='bounded',
            options={'xatol': 1e-12 * max(1.0, abs(b - a))})
        if np.isfinite(res.fun):
            best = max(best, -float(res.fun))
    return best


def weak_ls_norm(g, s, interval, grid=GRID_NODES):
    """
    Weak L_s quasi-norm sup_y (y^s * mu{|g| >= y})^(1/s) by sampling.

    Parameters
    ----------
    g : callable
        Vectorised function on the open interval.
    s : float
        Exponent, s > 0.
    interval : tuple of float
        Interval (a, b).
    grid : int, optional
        Number of midpoint samples, at least 1000. Default =4096.

    Returns
    -------
    norm : float

    Notes
    -----
    The level set measure at every observed value y is estimated from
    the number of samples with |g| >= y. A value taken by a single
    sample marks a crossing inside that cell, which is counted as half
    a cell; a value shared by several samples is a plateau and its
    level set is counted in whole cells, so constants and step
    functions come out exact. The supremum over y is taken over
    the observed sample values themselves, which is at least as fine as
    any logarithmic y-grid spanning them. Non-finite samples belong to
    every level set.

    Examples
    --------
    >>> from muntz.quadrature import weak_ls_norm
    >>> round(weak_ls_norm(lambda t: (1 - t)**-2.0, 0.5, (0, 1)), 6)
    1.0
    """
    s = float(s)
    if not s > 0:
        raise MuntzValidationError('s must be positive, got {}'.format(s))
    grid = int(grid)
    if grid < 1000:
        raise MuntzValidationError('grid must be >= 1000, got {}'.format(grid))
    a, b = _check_interval(interval)
    if not a < b:
        raise MuntzValidationError('interval must satisfy a < b')

    h = (b - a) / grid
    t = a + (np.arange(grid) + 0.5) * h
    values = np.abs(_evaluate(g, t))
    finite = np.isfinite(values)
    n_inf = int((~finite).sum())
    if n_inf == grid:
        raise NumericalError('g is unbounded on every sample')
    if n_inf:
        warnings.warn('{} of {} samples of g are not finite; they are counted '
                      'in every level set'.format(n_inf, grid),
                      ConvergenceWarning)

    ascending = np.sort(values[finite])
    levels, multiplicity = np.unique(ascending, return_counts=True)
    positive = levels > 0
    levels, multiplicity = levels[positive], multiplicity[positive]
    if levels.size == 0:
        return 0.0
    counts = ascending.size - np.searchsorted(ascending, levels, side='left')
    # a level crossed inside one cell loses half of it; plateaus are exact
    boundary = np.where(multiplicity == 1, 0.5, 0.0)
    measure = (counts + n_inf - boundary) * h
    return float(np.max(levels * measure ** (1.0 / s)))


@dataclass(frozen=True)
class NormSpec:
    """
    Which norm to take, and where.

    Parameters
    ----------
    kind : {'lp', 'sup', 'weak'}
        L_p norm, sup norm, or weak L_s quasi-norm.
    interval : tuple of float
        Interval (a, b), a < b.
    p : float, optional
        Exponent for ``kind='lp'``, p >= 1. Default =2.
    s : float, optional
        Exponent for ``kind='weak'``, s > 0. Default =1.
    """
    kind: str
    interval: tuple = (0.0, 1.0)
    p: float = 2.0
    s: float = 1.0

    def __post_init__(self):
        if self.kind not in ('lp', 'sup', 'weak'):
            raise ValueError("Norm kind {} not supported".format(self.kind))
        a, b = _check_interval(self.interval)
        if not a < b:
            raise MuntzValidationError(
                'interval must satisfy a < b, got [{}, {}]'.format(a, b))
        if self.kind == 'lp' and not self.p >= 1:
            raise MuntzValidationError('p must be >= 1, got {}'.format(self.p))
        if self.kind == 'weak' and not self.s > 0:
            raise MuntzValidationError('s must be > 0, got {}'.format(self.s))

    @property
    def conjugate(self):
        """Conjugate exponent q of `p`."""
        return conjugate_exponent(self.p)


def norm(g, spec, tol=DEFAULT_TOL, grid=GRID_NODES):
    """
    Dispatch to `lp_norm`, `sup_norm` or `weak_ls_norm` from a `NormSpec`.
    """
    if spec.kind == 'lp':
        return lp_norm(g, spec.p, spec.interval, tol=tol)
    if spec.kind == 'sup':
        return sup_norm(g, spec.interval, grid=grid)
    return weak_ls_norm(g, spec.s, spec.interval, grid=grid)


def boundary_profile(g, p, levels=range(2, 13), tol=DEFAULT_TOL):
    """
    Boundary functional of g at the right end of (0, 1).

    For eta = 2^-j the table holds
    ``functional = eta^(-1/q) * int_{1-eta}^1 g`` and its Hölder bound
    ``bound = (int_{1-eta}^1 |g|^p)^(1/p)``, q being conjugate to p.
    For g in L_p the bound tends to 0, and with it the functional.

    Parameters
    ----------
    g : callable
        Vectorised function in L_p(0, 1).
    p : float
        Exponent, p > 1.
    levels : iterable of int, optional
        Values of j. Default =range(2, 13).
    tol : float, optional
        Quadrature tolerance. Default =1e-10.

    Returns
    -------
    profile : pandas.DataFrame
        Columns ``j``, ``eta``, ``functional``, ``bound``.
    """
    p = float(p)
    if not p > 1:
        raise MuntzValidationError('p must be > 1, got {}'.format(p))
    q = conjugate_exponent(p)
    rows = []
    for j in levels:
        eta = 2.0 ** -int(j)
        interval = (1.0 - eta, 1.0)
        mean = integrate(g, interval, tol=tol)
        rows.append({'j': int(j),
                     'eta': eta,
                     'functional': eta ** (-1.0 / q) * mean,
                     'bound': lp_norm(g, p, interval, tol=tol)})
    return pd.DataFrame(rows, columns=['j', 'eta', 'functional', 'bound'])
