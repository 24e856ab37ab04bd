"""
``muntz.fourier``
=================

Fourier coefficients on [0, 1], trigonometric polynomials and
triangular summation methods.

Series
------

.. autosummary::
   :toctree: generated/

   FourierCoeffs
   TrigPolynomial
   fourier_coeffs
   partial_sum
   convolve
   convolve_coeffs

Summation methods
-----------------

.. autosummary::
   :toctree: generated/

   SummationMatrix
   summation_matrix
   kernel
   apply_summation
   summation_norm_bounds
   summation_conditions

"""

from ._fourier import (FourierCoeffs,
                       TrigPolynomial,
                       fourier_coeffs,
                       partial_sum,
                       convolve,
                       convolve_coeffs,
                       SummationMatrix,
                       summation_matrix,
                       kernel,
                       apply_summation,
                       summation_norm_bounds,
                       summation_conditions)
