__version__ = "0.1.0"
# __version__ has to be defined in the first line

"""
muntz: numerical experiments on Müntz spaces M_{Lambda,p}

Subpackages are imported lazily by the user, e.g.
``from muntz.quadrature import lp_norm``.
"""
