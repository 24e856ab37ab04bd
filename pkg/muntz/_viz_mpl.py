import numpy as np
import seaborn as sbn

from ._utils import (muntz_colors, shift_colormap, centered_midpoint,
                     create_fig_ax)
from ._rates import fit_decay
from ._basis import inclination_profile

"""
Lightweight visualizations for muntz diagnostics using Matplotlib
and Seaborn
"""


def plot_decay_rates(table, fit=None, ax=None, figsize=(7, 5),
                     scatter_kwds=None, fitline_kwds=None):
    """
    Log-log plot of rho_n and E_n against n.

    Parameters
    ----------
    table : RateTable
        Approximation errors to plot.
    fit : tuple of int, optional
        (n_min, n_max); if given, the fitted power law is drawn.
        Default =None.
    ax : Matplotlib Axes instance, optional
        If given, the plot will be created inside this axis.
        Default =None.
    figsize : tuple, optional
        W, h of figure. Default =(7,5)
    scatter_kwds : keyword arguments, optional
        Keywords used for creating and designing the markers.
        Default =None.
    fitline_kwds : keyword arguments, optional
        Keywords used for creating and designing the fit line.
        Default =None.

    Returns
    -------
    fig : Matplotlib Figure instance
        Decay rate figure
    ax : matplotlib Axes instance
        Axes in which the figure is plotted

    Examples
    --------
    >>> import numpy as np
    >>> import matplotlib.pyplot as plt
    >>> from muntz.rates import RateTable
    >>> from muntz.plot import plot_decay_rates
    >>> n = np.array([8, 16, 32, 64])
    >>> fig, ax = plot_decay_rates(RateTable(n, n ** -1.5), fit=(8, 64))
    >>> plt.show()
    """
    # define customization
    if scatter_kwds is None:
        scatter_kwds = dict()
    if fitline_kwds is None:
        fitline_kwds = dict()
    scatter_kwds.setdefault('s', 30)
    fitline_kwds.setdefault('color', muntz_colors['fit'])
    fitline_kwds.setdefault('linestyle', '--')

    fig, ax = create_fig_ax(ax, figsize)
    ax.scatter(table.n, table.rho, color=muntz_colors['rho'],
               label=r'$\rho_n$', **scatter_kwds)
    present = ~np.isnan(table.e_best)
    if present.any():
        ax.scatter(table.n[present], table.e_best[present],
                   color=muntz_colors['best'], label=r'$E_n$', marker='x',
                   **scatter_kwds)
    if fit is not None:
        gamma_hat, omega_hat = fit_decay(table, *fit)
        n = np.linspace(fit[0], fit[1], 100)
        ax.plot(n, omega_hat * n ** -gamma_hat,
                label=r'$\hat\omega n^{{-{:.2f}}}$'.format(gamma_hat),
                **fitline_kwds)
    ax.set_xscale('log')
    ax.set_yscale('log')
    ax.set_xlabel('n')
    ax.set_ylabel('error (p = {:g})'.format(table.p))
    ax.legend(frameon=False)
    return fig, ax


def plot_kernel(poly, n_points=1000, ax=None, figsize=(7, 5),
                line_kwds=None):
    """
    Plot a trigonometric polynomial (e.g. a summation kernel) on [0, 1].

    Parameters
    ----------
    poly : TrigPolynomial
        Polynomial to plot.
    n_points : int, optional
        Evaluation points. Default =1000.
    ax : Matplotlib Axes instance, optional
        If given, the plot will be created inside this axis.
        Default =None.
    figsize : tuple, optional
        W, h of figure. Default =(7,5)
    line_kwds : keyword arguments, optional
        Keywords used for creating and designing the line.
        Default =None.

    Returns
    -------
    fig : Matplotlib Figure instance
    ax : matplotlib Axes instance
    """
    if line_kwds is None:
        line_kwds = dict()
    line_kwds.setdefault('color', muntz_colors['fit'])

    fig, ax = create_fig_ax(ax, figsize)
    x = np.linspace(0.0, 1.0, int(n_points))
    ax.plot(x, poly(x), **line_kwds)
    ax.axhline(0, color=muntz_colors['rho'], linewidth=0.8)
    ax.set_xlabel('x')
    ax.set_xlim(0, 1)
    return fig, ax


def plot_inclination_profile(family, j, ax=None, figsize=(7, 5)):
    """
    Inclination of span(r_1..r_j) against span(r_(j+1)..r_(j+J)) over J.

    Returns
    -------
    fig : Matplotlib Figure instance
    ax : matplotlib Axes instance
    """
    fig, ax = create_fig_ax(ax, figsize)
    profile = inclination_profile(family, j)
    J = np.arange(1, profile.size + 1)
    ax.plot(J, profile, marker='o', color=muntz_colors['best'])
    ax.set_ylim(0, 1.05)
    ax.set_xlabel('J')
    ax.set_ylabel('inclination (j = {})'.format(j))
    return fig, ax


def plot_step_matrix(family, ax=None, figsize=(10, 6), cmap='RdBu_r',
                     heatmap_kwds=None):
    """
    Heatmap of the interleaved coefficient matrix of a StepFamily.

    Zero is mapped to the centre of the diverging colormap, so the
    step (upper trapezoidal) shape shows as a neutral lower-left block.

    Parameters
    ----------
    family : StepFamily
        Family to plot.
    ax : Matplotlib Axes instance, optional
        If given, the heatmap will be created inside this axis.
        Default =None.
    figsize : tuple, optional
        W, h of figure. Default =(10,6)
    cmap : str, optional
        Diverging colormap. Default ='RdBu_r'
    heatmap_kwds : keyword arguments, optional
        Passed to seaborn.heatmap. Default =None.

    Returns
    -------
    fig : Matplotlib Figure instance
    ax : matplotlib Axes instance
    """
    if heatmap_kwds is None:
        heatmap_kwds = dict()
    M = family.matrix
    heatmap_kwds.setdefault(
        'cmap', shift_colormap(cmap, midpoint=centered_midpoint(M)))
    heatmap_kwds.setdefault('cbar_kws', {'label': 'coefficient'})

    fig, ax = create_fig_ax(ax, figsize)
    sbn.heatmap(M, ax=ax, **heatmap_kwds)
    ax.set_xlabel('interleaved column (a0; a1, b1; ...)')
    ax.set_ylabel('l')
    return fig, ax
