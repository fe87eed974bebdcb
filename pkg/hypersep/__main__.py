"""
The ``hypersep`` console script: Django's command-line utility with minimal
settings, for use outside a Django project.
"""

import os
import sys

from django.conf import settings
from django.core.management import execute_from_command_line

# ``check`` is Django's system check command.
ALIASES = {"check": "checkproof"}

STANDALONE_SETTINGS = {
    "INSTALLED_APPS": ["hypersep"],
    "LOGGING": {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {"plain": {"format": "%(levelname)s %(name)s: %(message)s"}},
        "handlers": {
            "console": {"class": "logging.StreamHandler", "formatter": "plain"}
        },
        "loggers": {
            "hypersep": {"handlers": ["console"], "level": "WARNING"},
        },
    },
}


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    if "DJANGO_SETTINGS_MODULE" not in os.environ and not settings.configured:
        settings.configure(**STANDALONE_SETTINGS)
    if len(argv) > 1:
        argv[1] = ALIASES.get(argv[1], argv[1])
    execute_from_command_line(argv)


if __name__ == "__main__":
    main()
