"""
``muntz.perturb``
=================

Chains of small exponent shifts and the operators moving Müntz
polynomials along them.

.. autosummary::
   :toctree: generated/

   UpsilonChain
   build_upsilon_chain
   chain_conditions
   step_operator
   compose_s
   step_table

"""

from ._perturb import (UpsilonChain,
                       build_upsilon_chain,
                       chain_conditions,
                       step_operator,
                       compose_s,
                       step_table)
