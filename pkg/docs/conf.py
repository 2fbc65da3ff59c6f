#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# dglaformal documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'dglaformal'
copyright = '2026, dglaformal developers'

# The short X.Y version.
version = '0.1'
# The full version, including alpha/beta/rc tags.
release = '0.1.dev0'

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'default'
htmlhelp_basename = 'dglaformaldoc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'dglaformal', 'dglaformal Documentation',
     ['dglaformal developers'], 1)
]
