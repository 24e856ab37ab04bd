# Sphinx configuration for the muntz documentation.
import os
import sys

import sphinx_bootstrap_theme

sys.path.insert(0, os.path.abspath('../'))
import muntz


extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.autosummary',
              'sphinx.ext.viewcode',
              'sphinx.ext.mathjax',
              'sphinx.ext.doctest',
              'sphinx.ext.intersphinx',
              'numpydoc',
              'matplotlib.sphinxext.plot_directive']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'muntz'
copyright = '2026, muntz developers'
author = 'muntz developers'
version = muntz.__version__
release = muntz.__version__

language = None
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store', 'tests/*']
pygments_style = 'sphinx'
todo_include_todos = False

# -- HTML --------------------------------------------------------------------

html_theme = 'bootstrap'
html_theme_path = sphinx_bootstrap_theme.get_html_theme_path()
html_title = '%s v%s Manual' % (project, version)
html_theme_options = {
    'navbar_title': 'muntz',
    'navbar_sidebarrel': False,
    'nosidebar': True,
    'globaltoc_depth': 2,
    'globaltoc_includehidden': 'true',
    'navbar_fixed_top': 'true',
    'source_link_position': 'footer',
    'bootswatch_theme': 'yeti',
    'bootstrap_version': '3',
    'navbar_links': [('Installation', 'installation'),
                     ('API', 'api'),
                     ('References', 'references')],
}
html_static_path = []
htmlhelp_basename = 'muntzdoc'

# -- API pages ---------------------------------------------------------------

autosummary_generate = True
numpydoc_show_class_members = True
class_members_toctree = True
numpydoc_show_inherited_class_members = True
numpydoc_use_plots = True
plot_include_source = True

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
}
