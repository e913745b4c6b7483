# Sphinx configuration, see https://www.sphinx-doc.org/en/master/usage/configuration.html
import os
import sys

sys.path.insert(0, os.path.abspath("../.."))
from read_version import read_version
import lattimax  # api/ is generated from the installed package by sphinx-apidoc

version = release = read_version()
master_doc = "index"

project = "lattimax"
copyright = "2026, lattimax developers"
author = "lattimax developers"

extensions = [
    "sphinx.ext.autodoc",  # api/*.rst written by sphinx-apidoc
    "sphinx.ext.napoleon",  # numpy style docstrings
    "sphinx.ext.doctest",  # testcode and testoutput blocks of the tutorial and guides
]

napoleon_google_docstring = False
napoleon_numpy_docstring = True
autodoc_member_order = "bysource"
autodoc_default_options = {"members": True, "show-inheritance": True}

html_theme = "nature"
