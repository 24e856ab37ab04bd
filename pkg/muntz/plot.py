"""
``muntz.plot``
==============

Lightweight Matplotlib and Seaborn views of rates, kernels and step
families.

.. autosummary::
   :toctree: generated/

   plot_decay_rates
   plot_kernel
   plot_inclination_profile
   plot_step_matrix

"""

from ._viz_mpl import (plot_decay_rates,
                       plot_kernel,
                       plot_inclination_profile,
                       plot_step_matrix)
