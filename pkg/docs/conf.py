# docs/conf.py
import os, sys
from importlib.metadata import version as pkg_version

# ── make the src package importable ---------------------------------------------
sys.path.insert(0, os.path.abspath("../src"))

# ── project metadata ------------------------------------------------------------
project   = "binomcert"
author    = "davisj95"
copyright = "2025, davisj95"

# version from the installed distribution
release = pkg_version("binomcert")             # e.g. 0.1.0
version = ".".join(release.split(".")[:2])     # 0.1

# ── Sphinx behaviour ------------------------------------------------------------
extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",     # Google-style docstrings
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",     # add “[source]” links
    "sphinx.ext.githubpages",  # writes .nojekyll so Pages serves correctly
    "myst_parser",             # allow Markdown alongside reST
]

templates_path   = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# ── HTML output ----------------------------------------------------------
html_theme       = "sphinx_rtd_theme"
html_theme_options = {
    "collapse_navigation": False,
    "navigation_depth": 2,
    "sticky_navigation": True,
    "titles_only": False,
}
html_static_path = ["_static"]

# autodoc defaults
extensions += ["sphinx.ext.autosummary"]
autosummary_generate = True
autodoc_default_options = {
    "members": True,
    "autosummary": True,
    "show-inheritance": True,
}

root_doc = "README"
myst_heading_anchors = 2