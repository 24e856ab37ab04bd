"""
``muntz.weil``
==============

Weil (psi, beta) derivatives and the kernels D_(psi,beta).

.. autosummary::
   :toctree: generated/

   PsiBetaSpec
   F1Report
   check_f1
   weil_derivative
   dpsi_kernel
   reconstruct
   weil_class_norm
   kernel_asymptotic
   kernel_partial_sum

"""

from ._weil import (PsiBetaSpec,
                    F1Report,
                    check_f1,
                    weil_derivative,
                    dpsi_kernel,
                    reconstruct,
                    weil_class_norm,
                    kernel_asymptotic,
                    kernel_partial_sum)
