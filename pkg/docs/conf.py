# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys
import datetime
from typing import *

BPATH: str = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path = [ BPATH, ] + sys.path

from novikov.__version__ import version

# -- Project information -----------------------------------------------------
# https://www.sphinx-doc.org/en/master/usage/configuration.html#project-information

project = 'novikov'
author = 'novikov contributors'
release = version
copyright = f'{datetime.datetime.now().year}, {author}'

# -- General configuration ---------------------------------------------------
# https://www.sphinx-doc.org/en/master/usage/configuration.html#general-configuration

extensions: List[str] = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
]

templates_path: List[str] = [ '_templates', ]
exclude_patterns: List[str] = [ '_build', 'Thumbs.db', '.DS_Store', ]

intersphinx_mapping: Dict[str, Any] = {
    'python': ('https://docs.python.org/3', None),
    'sympy': ('https://docs.sympy.org/latest', None),
}

# -- Options for HTML output -------------------------------------------------
# https://www.sphinx-doc.org/en/master/usage/configuration.html#options-for-html-output

html_theme: str = 'pydata_sphinx_theme'
html_static_path: List[str] = []
html_title: str = 'novikov'

html_theme_options: Dict[str, Any] = {
    'logo': {
        'text': 'novikov',
    },
    'navbar_align': 'left',
    'navbar_end': [
        'search-field',
    ],
}
