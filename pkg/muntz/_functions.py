import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import make_interp_spline
from scipy.optimize import minimize_scalar

from ._utils import (GRID_NODES, DEFAULT_TOL, MuntzValidationError,
                     NumericalError, ConvergenceWarning, as_float_array,
                     check_integer_exponents)
from ._quadrature import integrate, lp_norm, weak_ls_norm

"""
Müntz polynomials, grid functions and the change-of-variable operators
"""

_DOMAIN_SLACK = 1e-12


def _merge_terms(coefficients, exponents):
    """Sort by exponent, add up equal exponents and drop zeros."""
    order = np.argsort(exponents, kind='stable')
    exponents = exponents[order]
    coefficients = coefficients[order]
    if exponents.size:
        starts = np.flatnonzero(np.r_[True, np.diff(exponents) != 0])
        coefficients = np.add.reduceat(coefficients, starts)
        exponents = exponents[starts]
    keep = coefficients != 0
    return coefficients[keep], exponents[keep]


@dataclass(frozen=True, eq=False)
class MuntzPolynomial:
    """
    Finite sum f(t) = sum_n a_n t^lambda_n on a domain [a, b] in [0, 1].

    Parameters
    ----------
    coefficients : array_like
        The a_n.
    exponents : array_like
        The lambda_n, positive. Repeated exponents are merged and zero
        coefficients dropped, so the stored exponents strictly increase.
    domain : tuple of float, optional
        Default =(0, 1).

    Examples
    --------
    >>> from muntz.functions import MuntzPolynomial
    >>> f = MuntzPolynomial.from_terms([(1, 1), (-1, 4)])
    >>> float(f(1.0))
    0.0
    """
    coefficients: np.ndarray
    exponents: np.ndarray
    domain: tuple = (0.0, 1.0)

    def __post_init__(self):
        c = as_float_array(self.coefficients, 'coefficients')
        lam = as_float_array(self.exponents, 'exponents')
        if c.shape != lam.shape:
            raise MuntzValidationError(
                'coefficients and exponents differ in length')
        bad = np.flatnonzero(lam <= 0)
        if bad.size:
            raise MuntzValidationError(
                'exponent {!r} at index {} is not positive'.format(
                    float(lam[bad[0]]), bad[0]), index=int(bad[0]))
        c, lam = _merge_terms(c, lam)
        a, b = (float(v) for v in self.domain)
        if not (0 <= a <= b <= 1):
            raise MuntzValidationError(
                'domain [{}, {}] is not a subinterval of [0, 1]'.format(a, b))
        object.__setattr__(self, 'coefficients', c)
        object.__setattr__(self, 'exponents', lam)
        object.__setattr__(self, 'domain', (a, b))

    @classmethod
    def from_terms(cls, terms, domain=(0.0, 1.0)):
        """Build from (coefficient, exponent) pairs."""
        terms = list(terms)
        if not terms:
            return cls(np.zeros(0), np.zeros(0), domain)
        c, lam = zip(*terms)
        return cls(np.array(c, dtype=float), np.array(lam, dtype=float),
                   domain)

    @property
    def terms(self):
        return list(zip(self.coefficients.tolist(), self.exponents.tolist()))

    def __len__(self):
        return self.coefficients.size

    def _values(self, t):
        t = np.asarray(t, dtype=float)
        flat = t.ravel()
        out = np.zeros(flat.shape)
        pos = flat > 0
        if self.exponents.size and pos.any():
            powers = np.exp(np.outer(np.log(flat[pos]), self.exponents))
            out[pos] = powers @ self.coefficients
        return out.reshape(t.shape)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        a, b = self.domain
        if np.any((t < a - _DOMAIN_SLACK) | (t > b + _DOMAIN_SLACK)):
            raise MuntzValidationError(
                'argument outside domain [{}, {}]'.format(a, b))
        return self._values(t)

    def _combine(self, other, sign):
        if not isinstance(other, MuntzPolynomial):
            return NotImplemented
        domain = (max(self.domain[0], other.domain[0]),
                  min(self.domain[1], other.domain[1]))
        return MuntzPolynomial(
            np.concatenate([self.coefficients, sign * other.coefficients]),
            np.concatenate([self.exponents, other.exponents]), domain)

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __neg__(self):
        return MuntzPolynomial(-self.coefficients, self.exponents, self.domain)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return MuntzPolynomial(float(scalar) * self.coefficients,
                               self.exponents, self.domain)

    __rmul__ = __mul__

    def same_terms(self, other, rtol=0.0):
        """Term-level equality (exact by default)."""
        if len(self) != len(other):
            return False
        return (np.allclose(self.coefficients, other.coefficients,
                            rtol=rtol, atol=0)
                and np.allclose(self.exponents, other.exponents,
                                rtol=rtol, atol=0))

    def with_domain(self, domain):
        return MuntzPolynomial(self.coefficients, self.exponents, domain)


@dataclass(eq=False)
class GridFunction:
    """
    Samples on a strictly increasing grid with spline interpolation.

    Parameters
    ----------
    nodes : array_like
        Strictly increasing sample points.
    values : array_like
        Samples, same length as `nodes` (at least 2).
    degree : {1, 3}, optional
        Local interpolation degree. Default =3.
    meta : dict, optional
        Provenance and diagnostics.
    """
    nodes: np.ndarray
    values: np.ndarray
    degree: int = 3
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.nodes = as_float_array(self.nodes, 'nodes')
        self.values = as_float_array(self.values, 'values')
        if self.nodes.size != self.values.size or self.nodes.size < 2:
            raise MuntzValidationError(
                'nodes and values need equal length >= 2')
        if np.any(np.diff(self.nodes) <= 0):
            raise MuntzValidationError('nodes must be strictly increasing')
        if self.degree not in (1, 3):
            raise MuntzValidationError(
                'interpolation degree must be 1 or 3, got {}'
                .format(self.degree))
        if self.degree == 3 and self.nodes.size < 4:
            raise MuntzValidationError('cubic interpolation needs 4 nodes')
        self._spline = make_interp_spline(self.nodes, self.values,
                                          k=self.degree)

    @property
    def interval(self):
        return float(self.nodes[0]), float(self.nodes[-1])

    def __call__(self, x):
        a, b = self.interval
        return self._spline(np.clip(np.asarray(x, dtype=float), a, b))

    def periodic(self):
        """The extension of period b - a, as a callable."""
        a, b = self.interval

        def extension(x):
            return self(a + np.mod(np.asarray(x, dtype=float) - a, b - a))

        return extension


def eval_muntz(f, t):
    """
    Evaluate f(t) = sum a_n t^lambda_n, with 0^lambda = 0.

    Raises
    ------
    MuntzValidationError
        If `t` leaves the domain of `f`.

    Examples
    --------
    >>> from muntz.functions import MuntzPolynomial, eval_muntz
    >>> float(eval_muntz(MuntzPolynomial([2.0], [1.5]), 0.25))
    0.25
    """
    t = np.asarray(t, dtype=float)
    a, b = f.domain
    if np.any((t < a) | (t > b)):
        raise MuntzValidationError(
            't outside domain [{}, {}] of f'.format(a, b))
    return f._values(t)


def compose_q_alpha(f, alpha):
    """
    Q_alpha f(t) = f(t^alpha): exponents scaled by alpha, coefficients
    kept, domain [a, b] mapped to [a^(1/alpha), b^(1/alpha)].
    """
    alpha = float(alpha)
    if not alpha > 0:
        raise MuntzValidationError('alpha must be > 0, got {}'.format(alpha))
    a, b = f.domain
    return MuntzPolynomial(f.coefficients, alpha * f.exponents,
                           (a ** (1.0 / alpha), b ** (1.0 / alpha)))


def z_projection(f):
    """
    h(t) = f(t) - f(t^2) with exactly cancelling terms merged away.

    The domain is [sqrt(a), b], where both t and t^2 lie in [a, b].
    """
    a, b = f.domain
    lo = np.sqrt(a)
    if lo > b:
        raise MuntzValidationError(
            'domain [{}, {}] has no room for both t and t^2'.format(a, b))
    return MuntzPolynomial(
        np.concatenate([f.coefficients, -f.coefficients]),
        np.concatenate([f.exponents, 2 * f.exponents]), (lo, b))


def compose_sigma(h, delta, n_grid=GRID_NODES, degree=3):
    """
    Sample v(x) = h(sigma(x)), sigma(x) = delta^2 + x (1 - delta^2).

    Parameters
    ----------
    h : callable
        Vectorised function on [delta^2, 1].
    delta : float
        In (1/2, 1).
    n_grid : int, optional
        Uniform grid size on [0, 1]. Default =4096.
    degree : {1, 3}, optional
        Interpolation degree. Default =3.

    Returns
    -------
    v : GridFunction
        On [0, 1]; ``v.meta['endpoint_mismatch']`` is |v(0) - v(1)|,
        the jump of the 1-periodic extension at the integers.
    """
    delta = float(delta)
    if not 0.5 < delta < 1:
        raise MuntzValidationError(
            'delta must lie in (1/2, 1), got {}'.format(delta))
    x = np.linspace(0.0, 1.0, int(n_grid))
    d2 = delta * delta
    sigma = d2 + x * (1.0 - d2)
    sigma[-1] = 1.0
    values = np.asarray(h(sigma), dtype=float)
    values = np.broadcast_to(values, x.shape).copy()
    meta = {'delta': delta,
            'sigma': (d2, 1.0),
            'endpoint_mismatch': float(abs(values[0] - values[-1]))}
    return GridFunction(x, values, degree=degree, meta=meta)


def _coefficients_on(f, e):
    """Coefficient vector of f over the prefix of `e` it occupies."""
    lambdas = e.lambdas
    if len(f) == 0:
        return np.zeros(0)
    idx = np.searchsorted(lambdas, f.exponents)
    idx = np.minimum(idx, lambdas.size - 1)
    miss = np.flatnonzero(~np.isclose(lambdas[idx], f.exponents,
                                      rtol=1e-14, atol=0))
    if miss.size:
        raise MuntzValidationError(
            'exponent {!r} of f is not in the exponent set'.format(
                float(f.exponents[miss[0]])), index=int(miss[0]))
    c = np.zeros(int(idx.max()) + 1)
    c[idx] = f.coefficients
    return c


def difference_rep(f, e):
    """
    Coefficients p_k of f in the difference basis of `e`.

    With u_1 = z^lambda_1 and u_k = z^lambda_k - z^lambda_(k-1), the
    tail sums p_k = sum_(j >= k) c_j satisfy f = sum_k p_k u_k exactly.

    Examples
    --------
    >>> from muntz.exponents import validate_exponents
    >>> from muntz.functions import MuntzPolynomial, difference_rep
    >>> e = validate_exponents('list:1,4')
    >>> difference_rep(MuntzPolynomial([1.0, -1.0], [1, 4]), e)
    array([ 0., -1.])
    """
    c = _coefficients_on(f, e)
    return np.cumsum(c[::-1])[::-1]


def difference_basis(e, k):
    """The k-th difference basis function u_k (1-based) of `e`."""
    k = int(k)
    if not 1 <= k <= len(e):
        raise MuntzValidationError(
            'k must lie in [1, {}], got {}'.format(len(e), k))
    lam = e.lambdas
    if k == 1:
        return MuntzPolynomial([1.0], [lam[0]])
    return MuntzPolynomial([1.0, -1.0], [lam[k - 1], lam[k - 2]])


def from_difference_rep(p, e):
    """Inverse of `difference_rep`: sum_k p_k u_k as a MuntzPolynomial."""
    p = as_float_array(p, 'p')
    if p.size > len(e):
        raise MuntzValidationError('more coefficients than exponents')
    c = p - np.r_[p[1:], 0.0]
    return MuntzPolynomial(c, e.lambdas[:p.size])


def monomial_gap_bound_check(lam, delta_shift):
    """
    sup_[0,1] (t^lam - t^(lam + 2 Delta)) against the bound 2 Delta / lam.

    The maximiser t* = (lam / (lam + 2 Delta))^(1 / (2 Delta)) is
    checked alongside a bounded 1-d search and the larger value kept.

    Returns
    -------
    sup_value, bound : float

    Examples
    --------
    >>> from muntz.functions import monomial_gap_bound_check
    >>> sup, bound = monomial_gap_bound_check(1.0, 0.5)
    >>> round(sup, 12), bound
    (0.25, 1.0)
    """
    lam, delta_shift = float(lam), float(delta_shift)
    if not (lam > 0 and delta_shift > 0):
        raise MuntzValidationError('lambda and delta_shift must be positive')
    shift = 2.0 * delta_shift

    def gap(t):
        return t ** lam - t ** (lam + shift)

    res = minimize_scalar(lambda t: -gap(t), bounds=(0.0, 1.0),
                          method='bounded', options={'xatol': 1e-12})
    t_star = (lam / (lam + shift)) ** (1.0 / shift)
    return max(float(-res.fun), float(gap(t_star))), shift / lam


def remez_ratio(e, delta, p, samples, seed, full_output=False):
    """
    Empirical Remez-Nikolski ratio ||h||_Lp[0,delta] / ||h||_Lp[delta,1].

    Parameters
    ----------
    e : ExponentSet
    delta : float
        In (0, 1).
    p : float
        Exponent, p > 1.
    samples : int
        Number of random polynomials with standard normal coefficients.
    seed : int
    full_output : bool, optional
        If True, also return the number of skipped samples.

    Returns
    -------
    ratio : float
        Maximum ratio over the samples, a lower bound for the constant.
    skipped : int
        Only with `full_output`.
    """
    delta, p = float(delta), float(p)
    if not 0 < delta < 1:
        raise MuntzValidationError('delta must lie in (0, 1)')
    if not p > 1:
        raise MuntzValidationError('p must be > 1')
    if int(samples) < 1:
        raise MuntzValidationError('samples must be >= 1')
    rng = np.random.default_rng(seed)
    best, skipped = -np.inf, 0
    for _ in range(int(samples)):
        h = MuntzPolynomial(rng.standard_normal(len(e)), e.lambdas)
        den = lp_norm(h, p, (delta, 1.0))
        if den < np.finfo(float).eps:
            skipped += 1
            continue
        best = max(best, lp_norm(h, p, (0.0, delta)) / den)
    if skipped:
        warnings.warn('{} degenerate samples skipped'.format(skipped),
                      ConvergenceWarning)
    if not np.isfinite(best):
        raise NumericalError('every sample was degenerate')
    return (best, skipped) if full_output else best


def change_of_variables_check(f, alpha, delta, p, tol=1e-13):
    """
    Both sides of the change of variables x = t^(1/alpha):

    ``int_delta^1 |f(t)|^p dt = alpha int_(delta^(1/alpha))^1
    |f(x^alpha)|^p x^(alpha-1) dx``.

    Returns
    -------
    lhs, rhs : float
    """
    alpha, delta, p = float(alpha), float(delta), float(p)
    if not alpha > 0:
        raise MuntzValidationError('alpha must be > 0')
    if not 0 < delta < 1:
        raise MuntzValidationError('delta must lie in (0, 1)')
    qf = compose_q_alpha(f, alpha)
    lhs = integrate(lambda t: np.abs(f(t)) ** p, (delta, 1.0), tol=tol)
    rhs = alpha * integrate(
        lambda x: np.abs(qf(x)) ** p * x ** (alpha - 1.0),
        (delta ** (1.0 / alpha), 1.0), tol=tol)
    return lhs, rhs


def q_alpha_contraction_delta(alpha):
    """alpha^(1/(1-alpha)); beyond it Q_alpha has the norm bound below."""
    alpha = float(alpha)
    if not (alpha > 0 and alpha != 1):
        raise MuntzValidationError('alpha must be positive and != 1')
    return alpha ** (1.0 / (1.0 - alpha))


def q_alpha_norm_bound(alpha, delta, p):
    """
    Bound (alpha^-1 max(1, delta^(1-alpha)))^(1/p) on the norm of
    Q_alpha : L_p(delta^alpha, 1) -> L_p(delta, 1).

    Examples
    --------
    >>> from muntz.functions import q_alpha_norm_bound
    >>> round(q_alpha_norm_bound(2, 0.8, 2), 5)
    0.79057
    """
    alpha, delta, p = float(alpha), float(delta), float(p)
    if not (alpha > 0 and 0 < delta < 1 and p >= 1):
        raise MuntzValidationError('need alpha > 0, 0 < delta < 1, p >= 1')
    return (max(1.0, delta ** (1.0 - alpha)) / alpha) ** (1.0 / p)


def q_alpha_norm_ratio(f, alpha, delta, p, tol=DEFAULT_TOL):
    """||Q_alpha f||_Lp(delta,1) / ||f||_Lp(delta^alpha,1)."""
    alpha, delta = float(alpha), float(delta)
    num = lp_norm(compose_q_alpha(f, alpha), p, (delta, 1.0), tol=tol)
    den = lp_norm(f, p, (delta ** alpha, 1.0), tol=tol)
    if den == 0:
        raise NumericalError('f vanishes on (delta^alpha, 1)')
    return num / den


def muntz_derivative(f):
    """
    Term-wise derivative f'(t) = sum a_n lambda_n t^(lambda_n - 1).

    Returns a vectorised callable; exponents below 1 give an
    unbounded derivative at 0.
    """
    c = f.coefficients * f.exponents
    lam = f.exponents - 1.0

    def derivative(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide='ignore', invalid='ignore'):
            powers = np.power.outer(t, lam)
        return powers @ c

    return derivative


def derivative_weak_norm(f, p, grid=GRID_NODES):
    """
    Weak L_s norm of h' for h = f - Q_2 f on (0, 1), s = p / (p + 1).

    Only defined for integer exponents.
    """
    p = float(p)
    if not p > 1:
        raise MuntzValidationError('p must be > 1')
    check_integer_exponents(f.exponents, 'exponents of f')
    h = z_projection(f)
    return weak_ls_norm(muntz_derivative(h), p / (p + 1.0), (0.0, 1.0),
                        grid=grid)
