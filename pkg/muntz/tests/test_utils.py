import matplotlib as mpl
import matplotlib.pyplot as plt
import numpy as np
import pytest

from muntz._utils import (MuntzValidationError, QuadratureError,
                          NumericalError, as_float_array,
                          check_integer_exponents, centered_midpoint,
                          shift_colormap, create_fig_ax)


def test_shift_colormap():
    map_test = shift_colormap('RdBu', start=0.1,
                              midpoint=0.2,
                              stop=0.9,
                              name='shiftedcmap')
    assert isinstance(map_test, mpl.colors.LinearSegmentedColormap)
    centred = shift_colormap('RdBu', midpoint=0.25)
    np.testing.assert_allclose(centred(0.25), mpl.colormaps['RdBu'](0.5),
                               atol=0.02)
    np.testing.assert_allclose(centred(0.0), mpl.colormaps['RdBu'](0.0),
                               atol=1e-6)


def test_centered_midpoint():
    assert centered_midpoint([-1.0, 3.0]) == pytest.approx(0.25)
    assert centered_midpoint([0.0, 2.0]) == 0.5
    assert centered_midpoint([-2.0, -1.0]) == 0.5


def test_create_fig_ax():
    fig, ax = create_fig_ax(None, (4, 3))
    assert ax.get_figure() is fig
    fig2, ax2 = create_fig_ax(ax, (4, 3))
    assert fig2 is fig and ax2 is ax
    plt.close(fig)


def test_as_float_array():
    np.testing.assert_array_equal(as_float_array(3), [3.0])
    with pytest.raises(MuntzValidationError) as info:
        as_float_array([1.0, np.nan])
    assert info.value.index == 1
    with pytest.raises(MuntzValidationError):
        as_float_array([[1.0, 2.0]])


def test_check_integer_exponents():
    check_integer_exponents([1, 4, 9.0])
    with pytest.raises(MuntzValidationError, match='index 1'):
        check_integer_exponents([1, 2.5])


def test_exception_hierarchy():
    assert issubclass(MuntzValidationError, ValueError)
    assert issubclass(QuadratureError, NumericalError)
    err = QuadratureError('slow', estimate=1.5, error=0.1)
    assert err.estimate == 1.5 and err.error == 0.1
