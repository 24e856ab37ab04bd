from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma as gamma_fn

from ._utils import MuntzValidationError, as_float_array
from ._fourier import FourierCoeffs, TrigPolynomial, convolve_coeffs

"""
Weil (psi, beta) derivatives, D_(psi,beta) kernels and their asymptotics
"""

_CHUNK = 1 << 16
_TAIL_EXPONENT = 1.5


@dataclass(frozen=True, eq=False)
class PsiBetaSpec:
    """
    A multiplier sequence psi and a phase beta.

    Use `power_law` for psi(k) = k^-gamma or `from_table` for an
    explicit positive table psi(1), psi(2), ...

    Examples
    --------
    >>> from muntz.weil import PsiBetaSpec
    >>> PsiBetaSpec.power_law(0.5, beta=1).psi([1, 4])
    array([1. , 0.5])
    """
    beta: float = 0.0
    gamma: float = None
    table: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'beta', float(self.beta))
        if (self.gamma is None) == (self.table is None):
            raise MuntzValidationError('give exactly one of gamma or table')
        if self.gamma is not None:
            if not float(self.gamma) > 0:
                raise MuntzValidationError(
                    'power-law psi needs gamma > 0, got {}'.format(self.gamma))
            object.__setattr__(self, 'gamma', float(self.gamma))
        else:
            table = as_float_array(self.table, 'psi table')
            bad = np.flatnonzero(table <= 0)
            if bad.size:
                raise MuntzValidationError(
                    'psi({}) is not positive'.format(bad[0] + 1),
                    index=int(bad[0]) + 1)
            table.setflags(write=False)
            object.__setattr__(self, 'table', table)

    @classmethod
    def power_law(cls, gamma, beta=0.0):
        return cls(beta=beta, gamma=gamma)

    @classmethod
    def from_table(cls, values, beta=0.0):
        return cls(beta=beta, table=values)

    @property
    def theta(self):
        """Phase shift beta * pi / 2."""
        return 0.5 * np.pi * self.beta

    def psi(self, k):
        """psi at the positive integers `k`."""
        k = np.asarray(k)
        if np.any(k < 1):
            raise MuntzValidationError('psi is defined for k >= 1')
        if self.gamma is not None:
            return np.asarray(k, dtype=float) ** -self.gamma
        if np.any(k > self.table.size):
            raise MuntzValidationError(
                'psi table holds {} values'.format(self.table.size))
        return self.table[np.asarray(k, dtype=int) - 1]

    def quotient(self, other, K):
        """
        The pair (psi / other.psi, beta - other.beta) as a table of
        length K.
        """
        k = np.arange(1, int(K) + 1)
        return PsiBetaSpec.from_table(self.psi(k) / other.psi(k),
                                      beta=self.beta - other.beta)


@dataclass
class F1Report:
    """Outcome of `check_f1` on a finite table of psi values."""
    positive: bool
    decreasing: bool
    convex: bool
    summable: bool
    partial_sum: float
    tail_exponent: float
    condensed: np.ndarray = field(repr=False)
    violations: list = field(default_factory=list)


def check_f1(psi):
    """
    Check a finite prefix psi(1..K) against the class F_1 conditions.

    Conditions: psi > 0, psi decreasing, second differences
    psi(k-1) - 2 psi(k) + psi(k+1) >= 0 for 2 <= k <= K-1, and
    bounded partial sums of psi(k)/k.

    Summability is judged by condensation: sum_k psi(k)/k converges
    together with sum_j psi(2^j). The local decay exponent of psi(2^j) in
    j, taken from the last two points 2^(J-1), 2^J <= K, must be at least
    1.5. Power decay in k gives an exponent growing with J and a
    logarithmic psi(k) = log(k)^-gamma gives gamma. This is a heuristic on
    a finite prefix: summable sequences with 1 < gamma < 1.5 are rejected,
    and slowly divergent ones such as 1/(log k log log k), whose local
    exponent stays near 1.4 for any practical K, are rejected as well.

    Parameters
    ----------
    psi : array_like
        psi(1), ..., psi(K), K >= 3.

    Returns
    -------
    is_member : bool
        Verdict on the prefix only.
    report : F1Report
        Individual conditions and ``(condition, k)`` violations.

    Examples
    --------
    >>> import numpy as np
    >>> from muntz.weil import check_f1
    >>> check_f1(np.arange(1, 101) ** -0.5)[0]
    True
    """
    psi = as_float_array(psi, 'psi')
    K = psi.size
    if K < 3:
        raise MuntzValidationError('check_f1 needs K >= 3 values')
    k = np.arange(1, K + 1)
    violations = []

    bad = np.flatnonzero(psi <= 0)
    if bad.size:
        violations.append(('positivity', int(k[bad[0]])))

    bad = np.flatnonzero(np.diff(psi) >= 0)
    if bad.size:
        violations.append(('decrease', int(k[bad[0]])))

    second = psi[:-2] - 2 * psi[1:-1] + psi[2:]
    slack = 1e-14 * np.abs(psi[:-2])
    bad = np.flatnonzero(second < -slack)
    if bad.size:
        violations.append(('convexity', int(k[bad[0] + 1])))

    J = int(np.floor(np.log2(K)))
    j = np.arange(1, J + 1)
    condensed = psi[2 ** j - 1]
    tail_exponent = np.nan
    if J >= 4 and np.all(condensed[-2:] > 0):
        tail_exponent = float(np.log(condensed[-2] / condensed[-1])
                              / np.log(J / (J - 1)))
    summable = bool(tail_exponent >= _TAIL_EXPONENT)
    if not summable:
        violations.append(('summability', K))

    kinds = {name for name, _ in violations}
    report = F1Report(positive='positivity' not in kinds,
                      decreasing='decrease' not in kinds,
                      convex='convexity' not in kinds,
                      summable=bool(summable),
                      partial_sum=float(np.sum(psi / k)),
                      tail_exponent=tail_exponent,
                      condensed=condensed,
                      violations=violations)
    return not violations, report


def weil_derivative(c, spec):
    """
    Weil (psi, beta) derivative of a series with coefficients `c`.

    Harmonic k becomes [a_k cos(2 pi k x + beta pi/2)
    + b_k sin(2 pi k x + beta pi/2)] / psi(k); the constant term is
    dropped.

    Returns
    -------
    coeffs : FourierCoeffs

    Examples
    --------
    >>> from muntz.fourier import FourierCoeffs
    >>> from muntz.weil import PsiBetaSpec, weil_derivative
    >>> d = weil_derivative(FourierCoeffs([0.0, 1.0]),
    ...                     PsiBetaSpec.power_law(1, beta=1))
    >>> round(float(d.b[1]), 12)
    -1.0
    """
    H = c.harmonics.copy()
    if c.N:
        k = np.arange(1, c.N + 1)
        H[1:] *= np.exp(1j * spec.theta) / spec.psi(k)
    H[0] = 0.0
    return FourierCoeffs.from_harmonics(H)


def dpsi_kernel(spec, N):
    """
    Truncated kernel sum_(k=1)^N psi(k) cos(2 pi k x + beta pi/2).
    """
    N = int(N)
    if N < 1:
        raise MuntzValidationError('N must be >= 1')
    k = np.arange(1, N + 1)
    H = np.zeros(N + 1, dtype=complex)
    H[1:] = spec.psi(k) * np.exp(1j * spec.theta)
    return TrigPolynomial(FourierCoeffs.from_harmonics(H))


def reconstruct(phi, spec, a0):
    """
    h = a_0/2 + phi * D_(psi,-beta), computed by harmonic matching.

    Inverts `weil_derivative` on trigonometric polynomials:
    ``reconstruct(weil_derivative(c, spec), spec, c.a[0])`` returns c.

    Parameters
    ----------
    phi : FourierCoeffs
    spec : PsiBetaSpec
        The pair used for the derivative; the kernel is taken at
        phase -beta.
    a0 : float
        Constant coefficient of the result.
    """
    if phi.N == 0:
        return FourierCoeffs([float(a0)])
    back = PsiBetaSpec(beta=-spec.beta, gamma=spec.gamma, table=spec.table)
    out = convolve_coeffs(phi, dpsi_kernel(back, phi.N).coeffs)
    out.a[0] = float(a0)
    return out


def weil_class_norm(c, spec, p):
    """||f^psi_beta||_p at the truncation order of `c`."""
    return TrigPolynomial(weil_derivative(c, spec)).norm(p)


def _check_asymptotic_args(alpha, x, which):
    if which not in ('sin', 'cos'):
        raise ValueError("Series {} not supported".format(which))
    alpha, x = float(alpha), float(x)
    if not 0 < alpha < 1:
        raise MuntzValidationError('alpha must lie in (0, 1)')
    if not 0 < x < 0.25:
        raise MuntzValidationError('x must lie in (0, 1/4)')
    return alpha, x


def kernel_asymptotic(alpha, x, which='sin'):
    """
    Leading term of sum_n n^-alpha {sin, cos}(2 pi n x) as x -> 0+.

    ``(2 pi x)^(alpha-1) Gamma(1-alpha) cos(pi alpha/2)`` for the sine
    series and ``... sin(pi alpha/2)`` for the cosine series. Lower
    order terms are not modelled; the cosine series in particular
    carries an additive constant.

    Examples
    --------
    >>> from muntz.weil import kernel_asymptotic
    >>> round(kernel_asymptotic(0.5, 0.01, 'sin'), 4)
    5.0
    """
    alpha, x = _check_asymptotic_args(alpha, x, which)
    trig = np.cos if which == 'sin' else np.sin
    return float((2 * np.pi * x) ** (alpha - 1) * gamma_fn(1 - alpha)
                 * trig(0.5 * np.pi * alpha))


def kernel_partial_sum(alpha, x, terms, which='sin'):
    """
    sum_(n=1)^terms n^-alpha {sin, cos}(2 pi n x), summed in chunks.
    """
    alpha, x = _check_asymptotic_args(alpha, x, which)
    trig = np.sin if which == 'sin' else np.cos
    total = 0.0
    for start in range(1, int(terms) + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, int(terms) + 1),
                      dtype=float)
        total += float(np.sum(n ** -alpha
                              * trig(2 * np.pi * np.mod(n * x, 1.0))))
    return total
