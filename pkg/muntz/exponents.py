"""
``muntz.exponents``
===================

Exponent sequences Lambda: parsing, validation and the transforms
used by the perturbation and change-of-variables machinery.

Exponent sets
-------------

.. autosummary::
   :toctree: generated/

   ExponentSpec
   ExponentSet
   validate_exponents
   transform_exponents
   perturbation_threshold

"""

from ._exponents import (ExponentSpec,
                         ExponentSet,
                         validate_exponents,
                         transform_exponents,
                         perturbation_threshold)
