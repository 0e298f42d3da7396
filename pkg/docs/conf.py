#
# motzkinfree documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.
#

import os
import sys
from datetime import datetime

# Insert the motzkinfree path into the system.
sys.path.insert(0, os.path.abspath('..'))

# WARNING: Do not move this import before the sys.path.insert() call.
from motzkinfree import __version__

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.intersphinx']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = 'motzkinfree'
author = 'motzkinfree developers'

# Reproducible builds
try:
    year = datetime.utcfromtimestamp(int(os.environ['SOURCE_DATE_EPOCH'])).year
except (KeyError, ValueError):
    year = datetime.now().year
copyright = f'{year}, {author}'

version = __version__
release = version

exclude_patterns = ['_build']

pygments_style = 'sphinx'

todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_theme_options = {}

html_show_sourcelink = False

htmlhelp_basename = 'motzkinfreedoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'motzkinfree.tex', 'motzkinfree Documentation', author, 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [('cmds', 'motzkinfree', 'Moments of free products by Motzkin paths', '', 1)]

# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
    (
        master_doc,
        'motzkinfree',
        'motzkinfree Documentation',
        author,
        'motzkinfree',
        'Moments of free, Boolean and c-free products by Motzkin paths.',
        'Miscellaneous',
    ),
]
