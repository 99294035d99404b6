#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# cellposet documentation build configuration file.

import datetime
import pkg_resources

# -- General configuration ------------------------------------------------

needs_sphinx = "1.4"

extensions = ["sphinx.ext.autodoc", "sphinx.ext.intersphinx"]

intersphinx_mapping = {
    "marshmallow": ("https://marshmallow.readthedocs.io/en/latest", None),
    "networkx": ("https://networkx.org/documentation/stable", None),
}

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "cellposet"
author = "The cellposet developers"
copyright = " {0:%Y} {1}".format(datetime.datetime.utcnow(), author)

# The full version, including alpha/beta/rc tags.
release = pkg_resources.get_distribution("cellposet").version
# The short X.Y version.
version = release.rsplit(".", 1)[0]

language = None
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = "alabaster"
html_theme_options = {
    "description": u"Cellular resolutions of monomial ideals and their face posets.<br />",
}
html_static_path = []
htmlhelp_basename = "cellposetdoc"

# -- Options for manual page output ---------------------------------------

man_pages = [(master_doc, "cellposet", "cellposet Documentation", [author], 1)]
