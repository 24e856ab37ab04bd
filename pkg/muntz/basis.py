"""
``muntz.basis``
===============

Step-shaped families of trigonometric polynomials and their basis
diagnostics.

Construction
------------

.. autosummary::
   :toctree: generated/

   StepFamily
   generate_candidates
   gaussian_exclusion

Diagnostics
-----------

.. autosummary::
   :toctree: generated/

   inclination
   inclination_profile
   finite_basis_constant
   span_residual

"""

from ._basis import (StepFamily,
                     generate_candidates,
                     gaussian_exclusion,
                     inclination,
                     inclination_profile,
                     finite_basis_constant,
                     span_residual)
