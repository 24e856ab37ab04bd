import warnings
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy.optimize import minimize

from ._utils import (MAX_ITER, OBJECTIVE_RTOL, MuntzValidationError,
                     ConvergenceWarning, as_float_array)
from ._quadrature import gauss_legendre_nodes, lp_norm
from ._functions import MuntzPolynomial, z_projection, compose_sigma
from ._fourier import (FourierCoeffs, TrigPolynomial, fourier_coeffs,
                       partial_sum)

"""
Approximation errors rho_n, E_n and decay-rate fitting
"""


BestApproximation = namedtuple('BestApproximation',
                               ['poly', 'error', 'certified'])


@dataclass(eq=False)
class RateTable:
    """
    Approximation errors of one function against the order n.

    Parameters
    ----------
    n : array_like of int
        Strictly increasing orders.
    rho : array_like
        Partial-sum errors rho_n.
    e_best : array_like, optional
        Best-approximation errors E_n, NaN where absent.
    p : float
        Norm exponent.
    meta : dict, optional
        Provenance of the underlying function and settings.
    """
    n: np.ndarray
    rho: np.ndarray
    e_best: np.ndarray = None
    p: float = 2.0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.n = np.asarray(self.n, dtype=int)
        self.rho = as_float_array(self.rho, 'rho')
        if self.e_best is None:
            self.e_best = np.full(self.rho.shape, np.nan)
        self.e_best = np.atleast_1d(np.asarray(self.e_best, dtype=float))
        if not (self.n.size == self.rho.size == self.e_best.size):
            raise MuntzValidationError('n, rho and e_best differ in length')
        if np.any(np.diff(self.n) <= 0):
            raise MuntzValidationError('n must be strictly increasing')
        if np.any(self.rho < 0):
            raise MuntzValidationError('rho must be non-negative')
        present = ~np.isnan(self.e_best)
        if np.any(self.e_best[present] < 0) or np.any(
                self.e_best[present] > self.rho[present] + 1e-8):
            raise MuntzValidationError('need 0 <= e_best <= rho on every row')

    def __len__(self):
        return self.n.size

    def to_frame(self):
        """Rows as a DataFrame with columns n, rho_n, e_n, p."""
        return pd.DataFrame({'n': self.n,
                             'rho_n': self.rho,
                             'e_n': self.e_best,
                             'p': np.full(self.n.size, float(self.p))})


def _check_p(p, open_interval=True):
    p = float(p)
    if open_interval and not 1 < p < np.inf:
        raise MuntzValidationError('p must lie in (1, inf), got {}'.format(p))
    if not open_interval and not p >= 1:
        raise MuntzValidationError('p must be >= 1, got {}'.format(p))
    return p


def _residual_norm(g, T, p, panels):
    return lp_norm(lambda x: g(x) - T(x), p, (0.0, 1.0), panels=panels)


def _rho_from_coeffs(g, c, n, p):
    S = partial_sum(c, n - 1)
    return _residual_norm(g, S, p, panels=8 * max(n, 1))


def rho_n(g, n, p, N):
    """
    rho_n = ||g - S_(n-1)(g)||_Lp(0,1), coefficients computed at order N.

    Examples
    --------
    >>> import numpy as np
    >>> from muntz.rates import rho_n
    >>> g = lambda x: np.cos(2*np.pi*x) + np.cos(4*np.pi*x)
    >>> round(rho_n(g, 2, 2, 4), 5)
    0.70711
    """
    n, N = int(n), int(N)
    if not 1 <= n <= N:
        raise MuntzValidationError('need 1 <= n <= N, got n={}, N={}'
                                   .format(n, N))
    p = _check_p(p, open_interval=False)
    return _rho_from_coeffs(g, fourier_coeffs(g, N), n, p)


def _design(x, degree):
    """Columns 1/2, cos(2 pi k x), sin(2 pi k x) for k = 1..degree."""
    k = np.arange(1, degree + 1)
    phase = 2 * np.pi * np.outer(x, k)
    return np.hstack([np.full((x.size, 1), 0.5), np.cos(phase),
                      np.sin(phase)])


def _poly_from_vector(theta, degree):
    b = np.r_[0.0, theta[degree + 1:]]
    return TrigPolynomial(FourierCoeffs(theta[:degree + 1].copy(), b))


def best_approx(g, n, p, maxiter=MAX_ITER, rtol=OBJECTIVE_RTOL, panels=None):
    """
    Best L_p approximation of g by trig polynomials of degree <= n-1.

    The convex objective ||g - T||_p^p, discretised on a composite
    Gauss-Legendre rule and normalised by its value at S_(n-1)(g), is
    minimised by L-BFGS-B starting from S_(n-1)(g). At p = 2 the
    partial sum S_(n-1)(g) is returned as is.

    Parameters
    ----------
    g : callable
    n : int
        n >= 1.
    p : float
        In (1, inf).
    maxiter : int, optional
        Iteration cap. Default =500.
    rtol : float, optional
        Relative objective tolerance. Default =1e-9.
    panels : int, optional
        Panels of the objective's quadrature rule.
        Default =max(32, 4*n).

    Returns
    -------
    result : BestApproximation
        ``(poly, error, certified)``; `certified` is False when the
        optimiser stopped on the iteration cap. `error` never exceeds
        the partial-sum error rho_n.
    """
    n = int(n)
    if n < 1:
        raise MuntzValidationError('n must be >= 1')
    p = _check_p(p)
    degree = n - 1
    S = partial_sum(fourier_coeffs(g, max(degree, 1)), degree)
    rho = _residual_norm(g, S, p, panels=8 * max(n, 1))
    if p == 2:
        return BestApproximation(S, rho, True)

    if panels is None:
        panels = max(32, 4 * n)
    x, w = gauss_legendre_nodes((0.0, 1.0), panels)
    gx = np.broadcast_to(np.asarray(g(x), dtype=float), x.shape)
    B = _design(x, degree)
    theta0 = np.r_[S.a, S.b[1:]]

    def objective(theta):
        r = gx - B @ theta
        ar = np.abs(r)
        value = w @ ar ** p
        grad = -p * ((w * ar ** (p - 1) * np.sign(r)) @ B)
        return value, grad

    scale = objective(theta0)[0]
    if scale == 0:
        return BestApproximation(S, rho, True)
    res = minimize(lambda t: tuple(v / scale for v in objective(t)), theta0,
                   jac=True, method='L-BFGS-B',
                   options={'maxiter': int(maxiter), 'ftol': rtol})
    certified = bool(res.success)
    if not certified:
        warnings.warn('best_approx stopped after {} iterations: {}'
                      .format(res.nit, res.message), ConvergenceWarning)
    T = _poly_from_vector(res.x, degree)
    error = _residual_norm(g, T, p, panels=8 * max(n, 1))
    if not error <= rho:
        T, error = S, rho
    return BestApproximation(T, error, certified)


def class_error(samples, n, p, N=None):
    """
    Class-wise errors over a finite sample of a function class.

    Returns
    -------
    rho_sup, e_sup : float
        max of rho_n and of E_n over `samples`.
    """
    samples = list(samples)
    if not samples:
        raise MuntzValidationError('class_error needs at least one sample')
    N = int(n) if N is None else int(N)
    rho = max(rho_n(g, n, p, N) for g in samples)
    best = max(best_approx(g, n, p).error for g in samples)
    return rho, best


def fit_decay(table, n_min, n_max):
    """
    Least-squares fit log(rho) = log(omega) - gamma log(n).

    Parameters
    ----------
    table : RateTable
    n_min, n_max : int
        Orders included in the fit.

    Returns
    -------
    gamma_hat, omega_hat : float

    Examples
    --------
    >>> import numpy as np
    >>> from muntz.rates import RateTable, fit_decay
    >>> n = np.array([8, 16, 32, 64])
    >>> g, w = fit_decay(RateTable(n, 3.0 / n), 8, 64)
    >>> round(g, 10), round(w, 10)
    (1.0, 3.0)
    """
    mask = (table.n >= n_min) & (table.n <= n_max) & (table.rho > 0)
    if mask.sum() < 3:
        raise MuntzValidationError(
            'fit_decay needs 3 positive entries in [{}, {}], found {}'
            .format(n_min, n_max, int(mask.sum())))
    slope, intercept = np.polyfit(np.log(table.n[mask]),
                                  np.log(table.rho[mask]), 1)
    return float(-slope), float(np.exp(intercept))


def rate_table(g, n_grid, p, N=None, best=True, jobs=1, meta=None):
    """
    Tabulate rho_n and, optionally, E_n for every n in `n_grid`.

    Parameters
    ----------
    g : callable
    n_grid : iterable of int
        Strictly increasing orders.
    p : float
    N : int, optional
        Coefficient truncation. Default =max(n_grid).
    best : bool, optional
        Also compute best-approximation errors. Default =True.
    jobs : int, optional
        Worker threads; results are merged in n-order. Default =1.
    meta : dict, optional
        Recorded on the table.

    Returns
    -------
    table : RateTable
    """
    n_grid = [int(n) for n in n_grid]
    if not n_grid:
        raise MuntzValidationError('n_grid is empty')
    p = _check_p(p, open_interval=not best)
    N = max(n_grid) if N is None else int(N)
    c = fourier_coeffs(g, N)

    def row(n):
        rho = _rho_from_coeffs(g, c, n, p)
        if not best:
            return rho, np.nan
        return rho, min(best_approx(g, n, p).error, rho)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=int(jobs)) as pool:
            rows = list(pool.map(row, n_grid))
    else:
        rows = [row(n) for n in n_grid]
    rho, e_best = (np.array(v) for v in zip(*rows))
    meta = dict(meta or {})
    meta.update({'N': N, 'maxiter': MAX_ITER, 'rtol': OBJECTIVE_RTOL})
    return RateTable(n_grid, rho, e_best, p, meta)


def sample_class(e, p, size, seed, delta=None):
    """
    Seeded sample of the class {(I - Q_2) f : ||f||_Lp(0,1) = 1}.

    Parameters
    ----------
    e : ExponentSet
    p : float
    size : int
        Number of functions.
    seed : int
    delta : float, optional
        If given, each member is composed with
        sigma(x) = delta^2 + x (1 - delta^2) and returned as a
        GridFunction on [0, 1].

    Returns
    -------
    members : list of callable
    """
    rng = np.random.default_rng(seed)
    members = []
    for _ in range(int(size)):
        f = MuntzPolynomial(rng.standard_normal(len(e)), e.lambdas)
        f = f * (1.0 / lp_norm(f, p, (0.0, 1.0)))
        h = z_projection(f)
        members.append(h if delta is None else compose_sigma(h, delta))
    return members
