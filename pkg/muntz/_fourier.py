from dataclasses import dataclass

import numpy as np

from ._utils import (DEFAULT_TOL, GRID_NODES, MuntzValidationError,
                     as_float_array)
from ._quadrature import gauss_legendre_nodes, integrate, lp_norm
from ._functions import GridFunction

"""
Fourier coefficients, summation methods and the factor-2 convolution

Throughout, a 1-periodic g has coefficients a_k = 2 int_0^1 g cos(2 pi k t)
and b_k = 2 int_0^1 g sin(2 pi k t), so that
g = a_0/2 + sum (a_k cos(2 pi k x) + b_k sin(2 pi k x)), and the
convolution (h*g)(x) = 2 int_0^1 h(x-t) g(t) dt multiplies the complex
harmonics H_k = a_k - i b_k.
"""

_CHUNK = 1 << 20


@dataclass(eq=False)
class FourierCoeffs:
    """
    Cosine and sine coefficients up to order N.

    Parameters
    ----------
    a : array_like
        a_0, ..., a_N.
    b : array_like
        b_1, ..., b_N, or b_0, ..., b_N with b_0 = 0. Stored with
        length N + 1 and ``b[0] = 0``.
    """
    a: np.ndarray
    b: np.ndarray = None

    def __post_init__(self):
        self.a = as_float_array(self.a, 'a')
        if self.b is None:
            self.b = np.zeros(self.a.size)
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        if b.size == self.a.size - 1:
            b = np.r_[0.0, b]
        if b.size != self.a.size:
            raise MuntzValidationError(
                'b must hold N or N+1 entries for N = {}'.format(self.N))
        if b[0] != 0:
            raise MuntzValidationError('b_0 must be 0')
        self.b = as_float_array(b, 'b')

    @property
    def N(self):
        return self.a.size - 1

    @property
    def harmonics(self):
        """Complex harmonics H_k = a_k - i b_k, k = 0..N."""
        return self.a - 1j * self.b

    @classmethod
    def from_harmonics(cls, harmonics):
        harmonics = np.asarray(harmonics, dtype=complex)
        b = -harmonics.imag
        b[0] = 0.0
        return cls(harmonics.real.copy(), b)

    def resized(self, N):
        """Truncate or zero-pad to order N."""
        N = int(N)
        a = np.zeros(N + 1)
        b = np.zeros(N + 1)
        n = min(N, self.N) + 1
        a[:n] = self.a[:n]
        b[:n] = self.b[:n]
        return FourierCoeffs(a, b)


def _trig_values(a, b, x):
    """a_0/2 + sum a_k cos(2 pi k x) + b_k sin(2 pi k x), chunked over x."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.full(flat.shape, 0.5 * a[0])
    N = a.size - 1
    if N > 0:
        k = np.arange(1, N + 1)
        step = max(1, _CHUNK // N)
        for start in range(0, flat.size, step):
            xs = np.mod(flat[start:start + step], 1.0)
            phase = 2 * np.pi * np.outer(xs, k)
            out[start:start + step] += np.cos(phase) @ a[1:] \
                + np.sin(phase) @ b[1:]
    return out.reshape(x.shape)


@dataclass(eq=False)
class TrigPolynomial:
    """
    a_0/2 + sum_(k=1)^N (a_k cos(2 pi k x) + b_k sin(2 pi k x)).

    Examples
    --------
    >>> from muntz.fourier import FourierCoeffs, TrigPolynomial
    >>> T = TrigPolynomial(FourierCoeffs([0.0, 1.0]))
    >>> float(T(0.0)), T.degree
    (1.0, 1)
    """
    coeffs: FourierCoeffs

    @classmethod
    def from_arrays(cls, a, b=None):
        return cls(FourierCoeffs(a, b))

    @property
    def a(self):
        return self.coeffs.a

    @property
    def b(self):
        return self.coeffs.b

    @property
    def N(self):
        return self.coeffs.N

    @property
    def degree(self):
        nz = np.flatnonzero((self.a != 0) | (self.b != 0))
        return int(nz[-1]) if nz.size else 0

    def __call__(self, x):
        return _trig_values(self.a, self.b, x)

    def _combine(self, other, sign):
        N = max(self.N, other.N)
        c1, c2 = self.coeffs.resized(N), other.coeffs.resized(N)
        return TrigPolynomial(FourierCoeffs(c1.a + sign * c2.a,
                                            c1.b + sign * c2.b))

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __mul__(self, scalar):
        scalar = float(scalar)
        return TrigPolynomial(FourierCoeffs(scalar * self.a, scalar * self.b))

    __rmul__ = __mul__

    def norm(self, p=2.0, tol=DEFAULT_TOL):
        """
        L_p(0, 1) norm; Parseval at p = 2, quadrature otherwise.
        """
        p = float(p)
        if p == 2:
            energy = 0.25 * self.a[0] ** 2 \
                + 0.5 * np.sum(self.a[1:] ** 2 + self.b[1:] ** 2)
            return float(np.sqrt(energy))
        return lp_norm(self, p, (0.0, 1.0), tol=tol,
                       panels=4 * max(self.degree, 1))


def fourier_coeffs(g, N, panels=None):
    """
    Fourier coefficients a_0..a_N, b_1..b_N of g on [0, 1].

    Parameters
    ----------
    g : callable, GridFunction or TrigPolynomial
        Vectorised function on [0, 1]. Trig polynomials are resized
        exactly instead of integrated.
    N : int
        Highest order, N >= 0.
    panels : int, optional
        Panels of the composite 15-point Gauss-Legendre rule.
        Default =8*max(N, 1), eight panels per period of the highest
        harmonic.

    Returns
    -------
    coeffs : FourierCoeffs

    Examples
    --------
    >>> import numpy as np
    >>> from muntz.fourier import fourier_coeffs
    >>> c = fourier_coeffs(lambda x: np.cos(2 * np.pi * x), 2)
    >>> bool(np.allclose(c.a, [0, 1, 0], atol=1e-12))
    True
    """
    N = int(N)
    if N < 0:
        raise MuntzValidationError('N must be >= 0, got {}'.format(N))
    if isinstance(g, TrigPolynomial):
        return g.coeffs.resized(N)
    if panels is None:
        panels = 8 * max(N, 1)
    nodes, weights = gauss_legendre_nodes((0.0, 1.0), panels)
    values = np.broadcast_to(np.asarray(g(nodes), dtype=float), nodes.shape)
    weighted = 2.0 * weights * values
    a = np.empty(N + 1)
    b = np.zeros(N + 1)
    k = np.arange(N + 1)
    step = max(1, _CHUNK // nodes.size)
    for start in range(0, N + 1, step):
        ks = k[start:start + step]
        phase = 2 * np.pi * np.outer(ks, nodes)
        a[start:start + step] = np.cos(phase) @ weighted
        b[start:start + step] = np.sin(phase) @ weighted
    b[0] = 0.0
    return FourierCoeffs(a, b)


def partial_sum(c, n):
    """
    S_n = a_0/2 + sum_(k=1)^n (a_k cos + b_k sin).

    Raises
    ------
    MuntzValidationError
        If n < 0 or n > N.
    """
    n = int(n)
    if not 0 <= n <= c.N:
        raise MuntzValidationError(
            'partial sum order {} outside [0, {}]'.format(n, c.N))
    return TrigPolynomial(c.resized(n))


@dataclass(eq=False)
class SummationMatrix:
    """
    Lower-triangular summation weights q_(n,k), n = 0..n_max.

    Parameters
    ----------
    rows : list of array_like
        Row n holds q_(n,0), q_(n,1), ...; entries beyond k = n must
        be zero and are dropped, missing entries are zero.
    kind : str, optional
        Label recorded with the matrix. Default ='custom'.
    """
    rows: list
    kind: str = 'custom'

    def __post_init__(self):
        clean = []
        for n, row in enumerate(self.rows):
            row = as_float_array(row, 'row {}'.format(n))
            if np.any(row[n + 1:] != 0):
                raise MuntzValidationError(
                    'row {} has a nonzero weight beyond k = {}'.format(n, n),
                    index=n)
            full = np.zeros(n + 1)
            m = min(row.size, n + 1)
            full[:m] = row[:m]
            clean.append(full)
        if not clean:
            raise MuntzValidationError('a summation matrix needs a row')
        self.rows = clean

    @property
    def n_max(self):
        return len(self.rows) - 1

    def weights(self, n):
        """Row n, q_(n,0..n)."""
        n = int(n)
        if not 0 <= n <= self.n_max:
            raise MuntzValidationError(
                'row {} outside [0, {}]'.format(n, self.n_max))
        return self.rows[n]


def summation_matrix(kind, n_max, rows=None):
    """
    Build a summation matrix.

    Parameters
    ----------
    kind : {'fejer', 'dirichlet', 'custom'}
        Cesàro-1 weights 1 - k/(n+1), unit weights, or `rows`.
    n_max : int
        Last row index.
    rows : list of array_like, optional
        Required for ``kind='custom'``.

    Examples
    --------
    >>> from muntz.fourier import summation_matrix
    >>> summation_matrix('fejer', 2).weights(2)
    array([1.        , 0.66666667, 0.33333333])
    """
    n_max = int(n_max)
    if n_max < 0:
        raise MuntzValidationError('n_max must be >= 0')
    if kind == 'fejer':
        rows = [1.0 - np.arange(n + 1) / (n + 1.0) for n in range(n_max + 1)]
    elif kind == 'dirichlet':
        rows = [np.ones(n + 1) for n in range(n_max + 1)]
    elif kind == 'custom':
        if rows is None:
            raise MuntzValidationError('custom summation needs rows')
        rows = list(rows)[:n_max + 1]
    else:
        raise ValueError("Summation method {} not supported".format(kind))
    return SummationMatrix(rows, kind)


def kernel(q, n):
    """U_n(x, Q) = q_(n,0)/2 + sum_(k=1)^n q_(n,k) cos(2 pi k x)."""
    return TrigPolynomial(FourierCoeffs(q.weights(n).copy()))


def convolve_coeffs(c1, c2):
    """
    Coefficients of the factor-2 convolution of two series.

    Harmonics multiply, H_k(h*g) = H_k(h) H_k(g), including k = 0.
    """
    N = min(c1.N, c2.N)
    return FourierCoeffs.from_harmonics(
        c1.harmonics[:N + 1] * c2.harmonics[:N + 1])


def convolve(h, g, grid=GRID_NODES, panels=64):
    """
    (h*g)(x) = 2 int_0^1 h(x - t) g(t) dt on a uniform grid of [0, 1].

    When either factor is a TrigPolynomial the result is computed
    exactly by harmonic matching; otherwise by composite quadrature.

    Parameters
    ----------
    h, g : callable
        Vectorised 1-periodic functions.
    grid : int, optional
        Number of x points. Default =4096.
    panels : int, optional
        Quadrature panels in t. Default =64.

    Returns
    -------
    conv : GridFunction
        ``conv.meta['method']`` is 'harmonic' or 'quadrature'.
    """
    x = np.linspace(0.0, 1.0, int(grid))
    degree = 3 if x.size >= 4 else 1
    if isinstance(h, TrigPolynomial) or isinstance(g, TrigPolynomial):
        N = max(T.N for T in (h, g) if isinstance(T, TrigPolynomial))
        coeffs = convolve_coeffs(fourier_coeffs(h, N), fourier_coeffs(g, N))
        values = TrigPolynomial(coeffs)(x)
        meta = {'method': 'harmonic', 'N': N}
    else:
        t, w = gauss_legendre_nodes((0.0, 1.0), panels)
        gw = 2.0 * w * np.broadcast_to(np.asarray(g(t), dtype=float), t.shape)
        shifted = x[:, None] - t[None, :]
        hv = np.broadcast_to(np.asarray(h(shifted), dtype=float),
                             shifted.shape)
        values = hv @ gw
        meta = {'method': 'quadrature', 'panels': panels}
    return GridFunction(x, values, degree=degree, meta=meta)


def apply_summation(c, q, n):
    """
    U_n(f, x, Q) = (a_0/2) q_(n,0) + sum_(k=1)^n q_(n,k) (a_k cos + b_k sin).

    Raises
    ------
    MuntzValidationError
        If c.N < n or row n is missing.
    """
    n = int(n)
    if c.N < n:
        raise MuntzValidationError(
            'coefficients of order {} cannot feed row {}'.format(c.N, n))
    w = q.weights(n)
    return TrigPolynomial(FourierCoeffs(w * c.a[:n + 1], w * c.b[:n + 1]))


def _kernel_l1(q, n, tol):
    K = kernel(q, n)
    return integrate(lambda x: np.abs(K(x)), (0.0, 1.0), tol=tol,
                     panels=4 * max(n, 1), smooth=False)


def summation_norm_bounds(q, n, p, trials, seed, tol=1e-12):
    """
    Bracket the operator norm of f -> U_n(f, ., Q) on L_p(0, 1).

    Parameters
    ----------
    q : SummationMatrix
    n : int
    p : float
        In (1, inf).
    trials : int
        Random unit-norm trig polynomials of degree max(n, 1).
    seed : int
    tol : float, optional
        Quadrature tolerance for the kernel L_1 norm. Default =1e-12.

    Returns
    -------
    lower, upper : float
        ``upper = 2 ||U_n(., Q)||_L1`` (Young's inequality for the
        factor-2 convolution), ``lower`` the best trial ratio.
    """
    p = float(p)
    if not 1 < p < np.inf:
        raise MuntzValidationError('p must lie in (1, inf)')
    if int(trials) < 1:
        raise MuntzValidationError('trials must be >= 1')
    upper = 2.0 * _kernel_l1(q, n, tol)
    rng = np.random.default_rng(seed)
    degree = max(int(n), 1)
    lower = 0.0
    for _ in range(int(trials)):
        b = rng.standard_normal(degree + 1)
        b[0] = 0.0
        f = TrigPolynomial(FourierCoeffs(rng.standard_normal(degree + 1), b))
        size = f.norm(p)
        if size == 0:
            continue
        lower = max(lower, apply_summation(f.coeffs, q, n).norm(p) / size)
    return lower, upper


def summation_conditions(q, k_max=None, tol=1e-12):
    """
    Report on the admissibility conditions of a summation method.

    Returns
    -------
    report : dict
        ``limit_deviation``: max_(k <= k_max) |q_(n_max,k) - 1|, which
        tends to 0 when lim_m q_(m,k) = 1; ``weight_sup``: sup |q_(m,k)|;
        ``kernel_norm_sup``: max_m 2 ||U_m(., Q)||_L1.
    """
    if k_max is None:
        k_max = max(1, q.n_max // 8)
    last = q.weights(q.n_max)
    k_max = min(int(k_max), q.n_max)
    return {
        'limit_deviation': float(np.max(np.abs(last[:k_max + 1] - 1.0))),
        'weight_sup': float(max(np.max(np.abs(r)) for r in q.rows)),
        'kernel_norm_sup': float(max(2.0 * _kernel_l1(q, m, tol)
                                     for m in range(q.n_max + 1))),
    }
