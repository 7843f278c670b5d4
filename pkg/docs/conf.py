#!/usr/bin/env python
#
# ratiosparse documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
import time
import sphinx_bootstrap_theme

sys.path.insert(0, os.path.abspath('..'))

import ratiosparse

# -- General configuration ---------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode']
extensions.append('sphinx.ext.doctest')
extensions.append('numpydoc')

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = 'ratiosparse'
copyright = f"{time.strftime('%Y')}, Louis Tiao"
author = "Louis C. Tiao"

version = ratiosparse.__version__
release = ratiosparse.__version__

language = None

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'

todo_include_todos = False

# numpydoc would otherwise list every method of the dataclasses twice
numpydoc_show_class_members = False


# -- Options for HTML output -------------------------------------------

html_theme = 'bootstrap'
html_theme_path = sphinx_bootstrap_theme.get_html_theme_path()

html_theme_options = {
    "bootstrap_version": "3",
    "bootswatch_theme": "cosmo",
    'navbar_links': [
        ("Louis Tiao", "https://tiao.io", True),
        ("API", "modules")
    ],
    "navbar_sidebarrel": False,
    "source_link_position": "footer"
}

html_static_path = []


# -- Options for HTMLHelp output ---------------------------------------

htmlhelp_basename = 'ratiosparsedoc'


# -- Options for LaTeX output ------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'ratiosparse.tex',
     'ratiosparse Documentation',
     'Louis C. Tiao', 'manual'),
]


# -- Options for manual page output ------------------------------------

man_pages = [
    (master_doc, 'ratiosparse',
     'ratiosparse Documentation',
     [author], 1)
]


# -- Options for Texinfo output ----------------------------------------

texinfo_documents = [
    (master_doc, 'ratiosparse',
     'ratiosparse Documentation',
     author,
     'ratiosparse',
     'Sparse recovery by L1/L2 minimization.',
     'Miscellaneous'),
]
