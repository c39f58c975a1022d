"""Sphinx configuration."""

project = "Evolgebra"
author = "Benjamin Crews"
copyright = "2026, Benjamin Crews"
extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx_click",
    "myst_parser",
]
autodoc_typehints = "description"
html_theme = "furo"
