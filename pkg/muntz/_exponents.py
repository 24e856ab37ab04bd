from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from ._utils import MuntzValidationError, as_float_array

"""
Exponent sets Lambda: parsing, validation and affine transforms
"""


_KINDS = {'list': 'explicit-list', 'quad': 'quadratic-formula',
          'lac': 'lacunary'}


@dataclass(frozen=True)
class ExponentSpec:
    """
    Recipe for materialising an exponent sequence.

    Parameters
    ----------
    kind : {'list', 'quad', 'lac'}
        Explicit list, quadratic formula a*n^2 + b*n + c, or
        lacunary r^n, with n = 1, 2, ...
    parameters : tuple of float
        The list entries, (a, b, c), or (r,).
    count : int, optional
        Number of terms to materialise. Ignored for explicit lists,
        which materialise every entry.

    Examples
    --------
    >>> from muntz.exponents import ExponentSpec
    >>> ExponentSpec.parse('quad:1,0,0,6').materialize()
    array([ 1.,  4.,  9., 16., 25., 36.])
    """
    kind: str
    parameters: tuple
    count: int = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise MuntzValidationError(
                "exponent spec kind {!r} not supported".format(self.kind))
        params = tuple(float(v) for v in self.parameters)
        object.__setattr__(self, 'parameters', params)
        if self.kind == 'list':
            object.__setattr__(self, 'count', len(params))
        if self.count is None or int(self.count) < 1:
            raise MuntzValidationError('count must be >= 1')
        object.__setattr__(self, 'count', int(self.count))

        if self.kind == 'quad':
            if len(params) != 3:
                raise MuntzValidationError(
                    'quadratic spec needs a,b,c, got {}'.format(params))
            a, b, _ = params
            if not (a > 0 or (a == 0 and b > 0)):
                raise MuntzValidationError(
                    'quadratic spec needs a > 0 or (a = 0 and b > 0)')
        elif self.kind == 'lac':
            if len(params) != 1:
                raise MuntzValidationError(
                    'lacunary spec needs a single ratio r')
            if not params[0] > 1:
                raise MuntzValidationError(
                    'lacunary ratio must satisfy r > 1, got {}'
                    .format(params[0]))

    @classmethod
    def parse(cls, text):
        """
        Parse ``list:1,4,9``, ``quad:a,b,c,count`` or ``lac:r,count``.
        """
        text = text.strip()
        kind, sep, body = text.partition(':')
        if not sep:
            raise MuntzValidationError(
                "exponent spec {!r} lacks a 'kind:' prefix".format(text))
        kind = kind.strip()
        try:
            values = [float(v) for v in body.split(',') if v.strip()]
        except ValueError:
            raise MuntzValidationError(
                'exponent spec {!r} has a non-numeric entry'.format(text))
        if kind == 'list':
            return cls('list', tuple(values))
        if kind in ('quad', 'lac'):
            if not values or values[-1] != int(values[-1]):
                raise MuntzValidationError(
                    'exponent spec {!r} must end with an integer count'
                    .format(text))
            return cls(kind, tuple(values[:-1]), int(values[-1]))
        raise MuntzValidationError(
            "exponent spec kind {!r} not supported".format(kind))

    def materialize(self):
        """The first `count` exponents, unvalidated."""
        if self.kind == 'list':
            return np.array(self.parameters, dtype=float)
        n = np.arange(1, self.count + 1, dtype=float)
        if self.kind == 'quad':
            a, b, c = self.parameters
            return a * n ** 2 + b * n + c
        return self.parameters[0] ** n

    def tail_bound(self):
        """
        Upper bound on sum_{n > count} 1 / lambda_n.

        Integral test for the quadratic formula, geometric series for
        the lacunary one, zero for an explicit list.
        """
        if self.kind == 'list':
            return 0.0
        N = self.count
        if self.kind == 'lac':
            r = self.parameters[0]
            return float(r ** -N / (r - 1))
        a, b, c = self.parameters
        if a == 0:
            return np.inf

        def term(x):
            return 1.0 / (a * x * x + b * x + c)

        # 1/(a x^2 + b x + c) is decreasing right of the vertex
        start = max(N, int(np.ceil(-b / (2 * a))))
        head = sum(term(n) for n in range(N + 1, start + 1))
        tail, _ = quad(term, start, np.inf, epsabs=1e-14, epsrel=1e-12)
        return float(head + tail)


@dataclass(frozen=True, eq=False)
class ExponentSet:
    """
    Validated strictly increasing sequence of positive exponents.

    Attributes
    ----------
    lambdas : ndarray
        The materialised exponents.
    alpha0 : float
        Smallest gap between consecutive exponents (``inf`` for a
        single exponent).
    alpha1 : float
        Exact Müntz sum of 1/lambda over the materialised prefix.
    tail_bound : float
        Bound on the Müntz sum of the unmaterialised tail.
    spec : ExponentSpec or None
        Recipe the set came from, if any.
    """
    lambdas: np.ndarray
    alpha0: float
    alpha1: float
    tail_bound: float = 0.0
    spec: ExponentSpec = field(default=None, repr=False)

    @classmethod
    def from_lambdas(cls, lambdas, tail_bound=0.0, spec=None):
        """
        Validate `lambdas` and compute the gap and Müntz constants.

        Raises
        ------
        MuntzValidationError
            For a non-positive exponent or a position where the
            sequence fails to increase strictly.
        """
        lambdas = as_float_array(lambdas, 'exponents')
        if lambdas.size == 0:
            raise MuntzValidationError('an exponent set needs at least one '
                                       'exponent')
        bad = np.flatnonzero(lambdas <= 0)
        if bad.size:
            raise MuntzValidationError(
                'exponent {!r} at index {} is not positive'.format(
                    float(lambdas[bad[0]]), bad[0]), index=int(bad[0]))
        gaps = np.diff(lambdas)
        bad = np.flatnonzero(gaps <= 0)
        if bad.size:
            k = int(bad[0]) + 1
            raise MuntzValidationError(
                'not strictly increasing at index {}'.format(k), index=k)
        alpha0 = float(gaps.min()) if gaps.size else np.inf
        alpha1 = float(np.sum(1.0 / lambdas))
        lambdas.setflags(write=False)
        return cls(lambdas, alpha0, alpha1, float(tail_bound), spec)

    def __len__(self):
        return self.lambdas.size

    @property
    def muntz_sum_bound(self):
        """alpha1 + tail_bound, an upper bound on the full Müntz sum."""
        return self.alpha1 + self.tail_bound

    @property
    def is_integer(self):
        return bool(np.all(self.lambdas == np.round(self.lambdas)))

    def prefix(self, n):
        """The first `n` exponents as a new set (tail bound dropped)."""
        return ExponentSet.from_lambdas(self.lambdas[:n])

    def shifted(self, shift):
        """
        Exponents lambda_n + shift_n, with `shift` scalar or per-term.
        """
        return ExponentSet.from_lambdas(self.lambdas + np.asarray(shift))


def validate_exponents(spec):
    """
    Materialise and validate an exponent spec.

    Parameters
    ----------
    spec : ExponentSpec or str
        Spec object, or text in the ``kind:...`` grammar.

    Returns
    -------
    exponents : ExponentSet
        With exact `alpha0` and `alpha1` over the materialised prefix
        and an analytic `tail_bound` for formula specs.

    Examples
    --------
    >>> from muntz.exponents import validate_exponents
    >>> e = validate_exponents('quad:1,0,0,6')
    >>> e.alpha0
    3.0
    >>> validate_exponents('list:2,1,5')
    Traceback (most recent call last):
    ...
    muntz._utils.MuntzValidationError: not strictly increasing at index 1
    """
    if isinstance(spec, str):
        spec = ExponentSpec.parse(spec)
    lambdas = spec.materialize()
    trial = ExponentSet.from_lambdas(lambdas)
    return ExponentSet.from_lambdas(trial.lambdas, spec.tail_bound(), spec)


def transform_exponents(e, alpha=1.0, beta=0.0, xi=()):
    """
    Affine image alpha*Lambda + beta merged with a finite set xi.

    Parameters
    ----------
    e : ExponentSet
    alpha : float, optional
        Positive scale. Default =1.
    beta : float, optional
        Non-negative shift. Default =0.
    xi : iterable of float, optional
        Extra positive exponents, disjoint from the affine image.

    Returns
    -------
    exponents : ExponentSet
        Sorted merge; the tail bound scales with 1/alpha.

    Raises
    ------
    MuntzValidationError
        On ``alpha <= 0``, ``beta < 0`` or an exponent collision.
    """
    alpha, beta = float(alpha), float(beta)
    if not alpha > 0:
        raise MuntzValidationError('alpha must be > 0, got {}'.format(alpha))
    if not beta >= 0:
        raise MuntzValidationError('beta must be >= 0, got {}'.format(beta))
    image = alpha * e.lambdas + beta
    xi = np.asarray(sorted(float(x) for x in xi), dtype=float)
    merged = np.sort(np.concatenate([image, xi]))
    scale = np.maximum(np.abs(merged[1:]), 1.0)
    clash = np.flatnonzero(np.diff(merged) <= 1e-12 * scale)
    if clash.size:
        value = merged[clash[0] + 1]
        raise MuntzValidationError(
            'exponent collision at {:g}'.format(value), index=int(clash[0]) + 1)
    return ExponentSet.from_lambdas(merged, e.tail_bound / alpha)


def perturbation_threshold(e):
    """
    Admissible size of exponent perturbations, (8 * Müntz sum)^-1.

    The Müntz sum is bounded by ``alpha1 + tail_bound``, so the value
    returned never exceeds the exact threshold.

    Examples
    --------
    >>> from muntz.exponents import validate_exponents, perturbation_threshold
    >>> perturbation_threshold(validate_exponents('list:1'))
    0.125
    """
    total = e.muntz_sum_bound
    if np.isinf(total):
        return 0.0
    return 1.0 / (8.0 * total)
