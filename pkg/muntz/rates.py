"""
``muntz.rates``
===============

Trigonometric approximation errors and their decay.

.. autosummary::
   :toctree: generated/

   RateTable
   BestApproximation
   rho_n
   best_approx
   class_error
   rate_table
   fit_decay
   sample_class

"""

from ._rates import (RateTable,
                     BestApproximation,
                     rho_n,
                     best_approx,
                     class_error,
                     rate_table,
                     fit_decay,
                     sample_class)
