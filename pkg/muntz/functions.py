"""
``muntz.functions``
===================

Müntz polynomials, grid-sampled functions and the operators acting
on them.

Function types
--------------

.. autosummary::
   :toctree: generated/

   MuntzPolynomial
   GridFunction
   eval_muntz
   muntz_derivative

Compositions
------------

.. autosummary::
   :toctree: generated/

   compose_q_alpha
   z_projection
   compose_sigma

Difference representation
-------------------------

.. autosummary::
   :toctree: generated/

   difference_rep
   difference_basis
   from_difference_rep
   monomial_gap_bound_check

Norm inequalities
-----------------

.. autosummary::
   :toctree: generated/

   remez_ratio
   change_of_variables_check
   q_alpha_contraction_delta
   q_alpha_norm_bound
   q_alpha_norm_ratio
   derivative_weak_norm

"""

from ._functions import (MuntzPolynomial,
                         GridFunction,
                         eval_muntz,
                         muntz_derivative,
                         compose_q_alpha,
                         z_projection,
                         compose_sigma,
                         difference_rep,
                         difference_basis,
                         from_difference_rep,
                         monomial_gap_bound_check,
                         remez_ratio,
                         change_of_variables_check,
                         q_alpha_contraction_delta,
                         q_alpha_norm_bound,
                         q_alpha_norm_ratio,
                         derivative_weak_norm)
