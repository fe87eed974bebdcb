# Sphinx configuration for the hypersep documentation.

import datetime
import os
import sys

os.environ["DJANGO_SETTINGS_MODULE"] = "tests.settings"
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

project = "hypersep"
copyright = f"{datetime.date.today().year}, hypersep developers and contributors"
release = "0.1.0"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinxcontrib.spelling",
]
templates_path = ["_templates"]
exclude_patterns = ["_build"]
html_theme = "default"

spelling_word_list_filename = "spelling_wordlist.txt"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
    "django": (
        "https://docs.djangoproject.com/en/dev/",
        "https://docs.djangoproject.com/en/dev/_objects/",
    ),
}
