"""Configure Django for pytest, mirroring tox's DJANGO_SETTINGS_MODULE."""

import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "tests.settings")
django.setup()
