from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import qr, solve_triangular, svdvals
from scipy.optimize import minimize

from ._utils import (GRID_NODES, RANK_TOL, MuntzValidationError,
                     NumericalError, check_integer_exponents)
from ._quadrature import gauss_legendre_nodes, lp_norm
from ._functions import (difference_basis, z_projection, compose_sigma)
from ._fourier import (FourierCoeffs, TrigPolynomial, fourier_coeffs,
                       apply_summation)

"""
Finite sections of the trigonometric basis construction

Coefficient rows are interleaved as (a_0; a_1, b_1; a_2, b_2; ...), so
column 0 holds a_0, column 2k-1 holds a_k and column 2k holds b_k.
"""


def _to_row(T, N):
    c = T.coeffs.resized(N)
    row = np.empty(2 * N + 1)
    row[0] = c.a[0]
    row[1::2] = c.a[1:]
    row[2::2] = c.b[1:]
    return row


def _from_row(row):
    a = np.r_[row[0], row[1::2]]
    b = np.r_[0.0, row[2::2]]
    return TrigPolynomial(FourierCoeffs(a, b))


def _matrix(polys):
    N = max(T.N for T in polys)
    return np.vstack([_to_row(T, N) for T in polys])


def _l2_scale(ncols):
    """Column scaling turning the L_2(0,1) inner product into a dot product."""
    s = np.full(ncols, np.sqrt(0.5))
    s[0] = 0.5
    return s


def _frequency(col):
    return (col + 1) // 2


@dataclass(eq=False)
class StepFamily:
    """
    Normalised trig polynomials r_l in step (upper trapezoidal) form.

    Attributes
    ----------
    polys : list of TrigPolynomial
        The r_l, with ||r_l||_Lp(0,1) = 1.
    p : float
    pivots : list of int
        1-based interleaved column of the first nonzero coefficient of
        each row; strictly increasing.
    leading : list of int
        Frequency m(l) of the pivot column.
    trailing : list of int
        Degree n(l) of each r_l.
    """
    polys: list
    p: float
    pivots: list
    leading: list
    trailing: list

    @classmethod
    def from_polys(cls, polys, p, normalize=False):
        """
        Wrap polynomials already in step form.

        Raises
        ------
        MuntzValidationError
            If the pivot columns do not strictly increase.
        """
        polys = list(polys)
        if normalize:
            polys = [T * (1.0 / T.norm(p)) for T in polys]
        M = _matrix(polys)
        pivots = []
        for row in M:
            nz = np.flatnonzero(row)
            if nz.size == 0:
                raise MuntzValidationError('a step family has no zero rows')
            pivots.append(int(nz[0]) + 1)
        if np.any(np.diff(pivots) <= 0):
            raise MuntzValidationError(
                'pivot columns {} are not strictly increasing'.format(pivots))
        return cls(polys, float(p), pivots,
                   [_frequency(c - 1) for c in pivots],
                   [T.degree for T in polys])

    def __len__(self):
        return len(self.polys)

    @property
    def matrix(self):
        """Interleaved coefficient matrix, one row per r_l."""
        return _matrix(self.polys)

    def check(self, tol=1e-9):
        """Normalisation and step conditions as a dict of bools."""
        norms = np.array([T.norm(self.p) for T in self.polys])
        return {'normalized': bool(np.all(np.abs(norms - 1) <= tol)),
                'step_form': bool(np.all(np.diff(self.pivots) > 0))}


def generate_candidates(e, delta, p, n_funcs, m_orders, q,
                        n_grid=GRID_NODES, jobs=1):
    """
    Trig polynomial candidates U_m(v_0, ., Q) of Müntz functions.

    For each of the first `n_funcs` difference basis functions u_k of
    `e`, normalised in L_p(delta^2, 1), form v = ((I - Q_2) u_k) o sigma
    on [0, 1] and apply the summation method `q` at every order in
    `m_orders`.

    Parameters
    ----------
    e : ExponentSet
        Integer exponents.
    delta : float
        In (1/2, 1).
    p : float
    n_funcs : int
        1 <= n_funcs <= len(e).
    m_orders : sequence of int
    q : SummationMatrix
        Must have rows up to max(m_orders).
    n_grid : int, optional
        Grid size of v. Default =4096.
    jobs : int, optional
        Worker threads over functions. Default =1.

    Returns
    -------
    candidates : list of TrigPolynomial
        Function-major, order-minor.
    """
    check_integer_exponents(e.lambdas)
    n_funcs = int(n_funcs)
    if not 1 <= n_funcs <= len(e):
        raise MuntzValidationError(
            'n_funcs must lie in [1, {}], got {}'.format(len(e), n_funcs))
    m_orders = [int(m) for m in m_orders]
    if not m_orders:
        return []
    N = max(m_orders)

    def one(k):
        u = difference_basis(e, k)
        u = u * (1.0 / lp_norm(u, p, (delta * delta, 1.0)))
        v = compose_sigma(z_projection(u), delta, n_grid=n_grid)
        c = fourier_coeffs(v, N)
        return [apply_summation(c, q, m) for m in m_orders]

    ks = range(1, n_funcs + 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=int(jobs)) as pool:
            blocks = list(pool.map(one, ks))
    else:
        blocks = [one(k) for k in ks]
    return [T for block in blocks for T in block]


def _independent_rows(M, tol):
    """Greedy selection of rows not in the span of the rows kept so far."""
    basis, keep = [], []
    for i, row in enumerate(M):
        size = np.linalg.norm(row)
        if size == 0:
            continue
        r = row.copy()
        for _ in range(2):
            for v in basis:
                r -= (v @ r) * v
        res = np.linalg.norm(r)
        if res > tol * size:
            basis.append(r / res)
            keep.append(i)
    return keep


def _row_echelon(A, tol):
    """
    Partial-pivot elimination; pivot columns strictly increase.

    Entries below `tol` times the largest entry of their own row count
    as zero.
    """
    A = A.copy()
    rows, cols = A.shape
    r = 0
    for j in range(cols):
        if r == rows:
            break
        block = A[r:]
        small = np.abs(block[:, j]) <= tol * np.abs(block).max(axis=1)
        block[small, j] = 0.0
        if small.all():
            continue
        i = r + int(np.argmax(np.abs(block[:, j])))
        if i != r:
            A[[r, i]] = A[[i, r]]
        factors = A[r + 1:, j] / A[r, j]
        A[r + 1:] -= np.outer(factors, A[r])
        A[r + 1:, j] = 0.0
        r += 1
    return A[:r]


def gaussian_exclusion(candidates, p, tol=RANK_TOL):
    """
    Reduce candidates to a normalised family in step form.

    Candidates dependent (relative residual below `tol`) on those
    already kept are discarded; the rest are eliminated with partial
    pivoting on the interleaved coefficient matrix, the rows reordered
    by transpositions so the pivot columns increase, and each row
    normalised in L_p(0, 1).

    Parameters
    ----------
    candidates : sequence of TrigPolynomial
    p : float
    tol : float, optional
        Rank tolerance relative to the largest entry. Default =1e-10.

    Returns
    -------
    family : StepFamily

    Raises
    ------
    NumericalError
        If every candidate is numerically zero.

    Examples
    --------
    >>> from muntz.fourier import TrigPolynomial
    >>> from muntz.basis import gaussian_exclusion
    >>> cos = TrigPolynomial.from_arrays([0, 1], [0, 0])
    >>> both = TrigPolynomial.from_arrays([0, 1], [0, 1])
    >>> gaussian_exclusion([cos, both], 2).pivots
    [2, 3]
    """
    candidates = list(candidates)
    if not candidates:
        raise MuntzValidationError('gaussian_exclusion needs candidates')
    M = _matrix(candidates)
    if np.abs(M).max() == 0:
        raise NumericalError('every candidate is numerically zero')
    keep = _independent_rows(M, tol)
    echelon = _row_echelon(M[keep], tol)
    if echelon.shape[0] == 0:
        raise NumericalError('every candidate is numerically zero')
    polys = [_from_row(row) for row in echelon]
    return StepFamily.from_polys(polys, p, normalize=True)


def _check_section(family, j, J):
    j, J = int(j), int(J)
    if not (1 <= j and J >= 1 and j + J <= len(family)):
        raise MuntzValidationError(
            'need 1 <= j < j + J <= {}, got j={}, J={}'
            .format(len(family), j, J))
    return j, J


def _scaled(polys, N):
    M = np.vstack([_to_row(T, N) for T in polys])
    return (M * _l2_scale(M.shape[1])).T


def _node_values(polys, panels):
    x, w = gauss_legendre_nodes((0.0, 1.0), panels)
    V = np.column_stack([T(x) for T in polys])
    return V, w


def _pnorm(values, w, p):
    return (w @ np.abs(values) ** p) ** (1.0 / p)


def inclination(family, j, J, restarts=50, seed=0):
    """
    Inclination of span(r_1..r_j) against span(r_(j+1)..r_(j+J)).

    The infimum over unit f in the first span of the L_p distance to
    the second. Exact at p = 2 (smallest singular value of the
    projection residual); for other p an upper bound from alternating
    minimisation over both coefficient blocks with seeded restarts.

    Returns
    -------
    value : float
        In [0, 1].
    """
    j, J = _check_section(family, j, J)
    first = family.polys[:j]
    second = family.polys[j:j + J]
    if family.p == 2:
        N = max(T.N for T in family.polys[:j + J])
        Qx, _ = qr(_scaled(first, N), mode='economic')
        Qy, _ = qr(_scaled(second, N), mode='economic')
        R = Qx - Qy @ (Qy.T @ Qx)
        return float(np.clip(svdvals(R).min(), 0.0, 1.0))

    p = family.p
    degree = max(T.degree for T in family.polys[:j + J])
    Vx, w = _node_values(first, 4 * max(degree, 1))
    Vy, _ = _node_values(second, 4 * max(degree, 1))
    rng = np.random.default_rng(seed)

    def ratio(c, d):
        size = _pnorm(Vx @ c, w, p)
        return _pnorm(Vx @ c - Vy @ d, w, p) / size if size > 0 else np.inf

    best = 1.0
    for _ in range(int(restarts)):
        c = rng.standard_normal(j)
        d = np.zeros(J)
        value = ratio(c, d)
        for _ in range(20):
            d = minimize(lambda v: ratio(c, v), d, method='L-BFGS-B').x
            c = minimize(lambda v: ratio(v, d), c, method='L-BFGS-B').x
            new = ratio(c, d)
            if not new < value * (1 - 1e-9):
                value = min(value, new)
                break
            value = new
        best = min(best, value)
    return float(np.clip(best, 0.0, 1.0))


def inclination_profile(family, j, J_max=None):
    """Inclinations at J = 1, ..., J_max (default len(family) - j)."""
    if J_max is None:
        J_max = len(family) - int(j)
    return np.array([inclination(family, j, J)
                     for J in range(1, int(J_max) + 1)])


def finite_basis_constant(family, m, method='auto', samples=2000, seed=0):
    """
    Largest norm of the coordinate projections on span(r_1..r_m).

    max over 1 <= j < m of the L_p operator norm of
    sum_(l<=m) c_l r_l -> sum_(l<=j) c_l r_l.

    Parameters
    ----------
    family : StepFamily
    m : int
        2 <= m <= len(family).
    method : {'auto', 'gram', 'search'}, optional
        'gram' is exact at p = 2, via the triangular factor of the Gram
        matrix; 'search' is a seeded random search polished by a local
        optimiser, a lower bound. 'auto' picks 'gram' at p = 2.
    samples : int, optional
        Random coefficient vectors for 'search'. Default =2000.
    seed : int, optional

    Raises
    ------
    NumericalError
        If r_1..r_m are numerically dependent.
    """
    m = int(m)
    if not 2 <= m <= len(family):
        raise MuntzValidationError(
            'm must lie in [2, {}], got {}'.format(len(family), m))
    if method == 'auto':
        method = 'gram' if family.p == 2 else 'search'
    if method not in ('gram', 'search'):
        raise ValueError("Method {} not supported".format(method))
    polys = family.polys[:m]

    if method == 'gram':
        if family.p != 2:
            raise MuntzValidationError("method 'gram' needs p = 2")
        N = max(T.N for T in polys)
        _, R = qr(_scaled(polys, N), mode='economic')
        diag = np.abs(np.diag(R))
        if diag.min() <= RANK_TOL * diag.max():
            raise NumericalError('rank deficient section at m = {}'.format(m))
        X = _scaled(polys, N)
        Rinv = solve_triangular(R, np.eye(m))
        return float(max(svdvals(X[:, :j] @ Rinv[:j]).max()
                         for j in range(1, m)))

    p = family.p
    degree = max(T.degree for T in polys)
    V, w = _node_values(polys, 4 * max(degree, 1))
    _, R = qr(V * np.sqrt(w)[:, None], mode='economic')
    diag = np.abs(np.diag(R))
    if diag.min() <= RANK_TOL * diag.max():
        raise NumericalError('rank deficient section at m = {}'.format(m))
    rng = np.random.default_rng(seed)
    best = 1.0
    for j in range(1, m):
        def ratio(c):
            return _pnorm(V[:, :j] @ c[:j], w, p) / _pnorm(V @ c, w, p)

        draws = rng.standard_normal((int(samples), m))
        values = np.array([ratio(c) for c in draws])
        for start in draws[np.argsort(values)[-3:]]:
            res = minimize(lambda c: -ratio(c), start, method='L-BFGS-B')
            best = max(best, values.max(), -float(res.fun))
    return float(best)


def span_residual(basis_polys, polys):
    """
    Largest relative L_2 residual of `polys` after least-squares
    projection onto span(basis_polys).
    """
    basis_polys, polys = list(basis_polys), list(polys)
    N = max(T.N for T in basis_polys + polys)
    A = _scaled(basis_polys, N)
    B = _scaled(polys, N)
    coef, *_ = np.linalg.lstsq(A, B, rcond=None)
    res = np.linalg.norm(B - A @ coef, axis=0)
    size = np.linalg.norm(B, axis=0)
    size[size == 0] = 1.0
    return float(np.max(res / size))
