"""
``muntz.quadrature``
====================

Adaptive quadrature and the norms built on it.

Integration
-----------

.. autosummary::
   :toctree: generated/

   integrate
   gauss_legendre_nodes
   conjugate_exponent

Norms
-----

.. autosummary::
   :toctree: generated/

   NormSpec
   norm
   lp_norm
   sup_norm
   weak_ls_norm
   boundary_profile

"""

from ._quadrature import (integrate,
                          gauss_legendre_nodes,
                          conjugate_exponent,
                          NormSpec,
                          norm,
                          lp_norm,
                          sup_norm,
                          weak_ls_norm,
                          boundary_profile)
