"""Django settings for tests."""

SECRET_KEY = "hypersep-tests"

LOGGING_CONFIG = None

INSTALLED_APPS = [
    "hypersep",
]

# No models; Django's runner still expects a default database.
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": ":memory:",
    },
}

HYPERSEP_CONFIG = {
    "SEED": 0,
}
