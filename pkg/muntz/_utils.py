import numpy as np
import matplotlib as mpl
import matplotlib.pyplot as plt

"""
Shared exceptions, tolerances and colour utilities for muntz
"""


# Default numerical settings shared across modules
DEFAULT_TOL = 1e-10
DEFAULT_MAX_DEPTH = 40
GAUSS_ORDER = 15
GRID_NODES = 4096
RANK_TOL = 1e-10
MAX_ITER = 500
OBJECTIVE_RTOL = 1e-9
CHAIN_CAP = 16


class MuntzValidationError(ValueError):
    """
    Raised when an input violates a documented precondition.

    Parameters
    ----------
    message : str
        Human readable description of the violation.
    index : int, optional
        Position of the offending entry, if one is known.
        Default =None.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NumericalError(ArithmeticError):
    """Raised when a numerical procedure cannot deliver a trustworthy value."""


class QuadratureError(NumericalError):
    """
    Adaptive quadrature stopped before reaching its tolerance.

    Attributes
    ----------
    estimate : float
        Best available estimate of the integral.
    error : float
        Estimated absolute error of `estimate`.
    """

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ConvergenceWarning(UserWarning):
    """Issued for skipped samples and non-certified optimisation results."""


def as_float_array(values, name='values'):
    """
    Convert `values` to a finite 1-d float array or raise.
    """
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1:
        raise MuntzValidationError('{} must be one-dimensional'.format(name))
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise MuntzValidationError(
            '{} has a non-finite entry at index {}'.format(name, bad[0]),
            index=int(bad[0]))
    return arr


def check_integer_exponents(lambdas, what='exponent set'):
    """
    Reject exponent sequences that are not (numerically) integers.

    Parameters
    ----------
    lambdas : array_like
        Exponents to check.
    what : str, optional
        Used in the error message. Default ='exponent set'.

    Raises
    ------
    MuntzValidationError
        Naming the first non-integer position.
    """
    lambdas = np.asarray(lambdas, dtype=float)
    off = np.flatnonzero(np.abs(lambdas - np.round(lambdas)) > 1e-12)
    if off.size:
        raise MuntzValidationError(
            '{} must consist of integers, found {!r} at index {}'.format(
                what, float(lambdas[off[0]]), off[0]),
            index=int(off[0]))


def centered_midpoint(values):
    """
    Colormap midpoint putting zero at the centre for data in `values`.

    Returns 0.5 when `values` do not straddle zero.
    """
    values = np.asarray(values, dtype=float)
    vmin, vmax = np.nanmin(values), np.nanmax(values)
    if vmin >= 0 or vmax <= 0:
        return 0.5
    return 1 - vmax / (vmax + abs(vmin))


# line colours of the diagnostic plots
muntz_colors = dict(rho='#bababa',
                    best='#d6604d',
                    fit='#2166ac',
                    bound='#4d4d4d')


def shift_colormap(cmap, start=0, midpoint=0.5, stop=1.0, name='shiftedcmap'):
    """
    Resample `cmap` so that data position `midpoint` takes the middle
    colour of the window [start, stop].

    Parameters
    ----------
    cmap : str or matplotlib.colors.Colormap
    start, stop : float, optional
        Window of the source colormap that is used. Default =0.0, 1.0.
    midpoint : float, optional
        Data position of the centre colour, usually
        `centered_midpoint` of a signed matrix. Default =0.5.
    name : str, optional

    Returns
    -------
    matplotlib.colors.LinearSegmentedColormap
    """
    if isinstance(cmap, str):
        cmap = mpl.colormaps[cmap]
    positions = np.linspace(0.0, 1.0, 257)
    source = np.interp(positions, [0.0, midpoint, 1.0],
                       [start, 0.5 * (start + stop), stop])
    return mpl.colors.LinearSegmentedColormap.from_list(
        name, list(zip(positions, cmap(source))))


def create_fig_ax(ax, figsize):
    """Figure and axes for a diagnostic plot, open on the right and top."""
    if ax is None:
        fig = plt.figure(figsize=figsize)
        ax = fig.add_subplot(111)
    else:
        fig = ax.get_figure()

    ax.spines['right'].set_color('none')
    ax.spines['top'].set_color('none')
    return fig, ax
