from functools import lru_cache

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured
from django.dispatch import receiver
from django.test.signals import setting_changed
from django.utils.module_loading import import_string

CONFIG_DEFAULTS = {
    # Reproducibility
    "SEED": 0,
    "JOBS": 1,
    # Separator options
    "SEPARATOR_METHOD": "auto",
    "SEPARATOR_METHODS": {
        "random": "hypersep.separator.sampled_method",
        "exhaustive": "hypersep.separator.exhaustive_method",
        "vertex-cut": "hypersep.separator.vertex_cut_method",
    },
    "AUTO_EXHAUSTIVE_MAX_EDGES": 16,
    "MAX_TRIALS": 1000,
    # Solver options
    "LEAF_BUDGET": 8,
    "BRUTE_FORCE_BUDGET": 2**22,  # assignments
    # Experiment options
    "ORACLE_MAX_EDGES": 18,
    "ORACLE_MAX_VERTICES": 16,
    "GENERATOR_BUDGET": 2_000_000,  # candidate edges
}

BUDGET_KEYS = (
    "JOBS",
    "AUTO_EXHAUSTIVE_MAX_EDGES",
    "MAX_TRIALS",
    "LEAF_BUDGET",
    "BRUTE_FORCE_BUDGET",
    "ORACLE_MAX_EDGES",
    "ORACLE_MAX_VERTICES",
    "GENERATOR_BUDGET",
)


@lru_cache()
def get_config():
    try:
        USER_CONFIG = getattr(settings, "HYPERSEP_CONFIG", {})
    except ImproperlyConfigured:
        # Used as a plain library, outside any Django project.
        USER_CONFIG = {}
    CONFIG = CONFIG_DEFAULTS.copy()
    CONFIG.update(USER_CONFIG)
    return CONFIG


def get_setting(name, value=None):
    """Return ``value`` unless it is ``None``, else the configured ``name``."""
    return get_config()[name] if value is None else value


@lru_cache()
def get_separator_methods():
    methods = {}
    for name, path in get_config()["SEPARATOR_METHODS"].items():
        try:
            methods[name] = import_string(path)
        except ImportError as e:
            raise ImproperlyConfigured(
                f"Error importing separator method {name!r}: {e}"
            )
    return methods


@receiver(setting_changed)
def update_config(*, setting, **kwargs):
    """
    Refresh configuration when overriding settings.
    """
    if setting == "HYPERSEP_CONFIG":
        get_config.cache_clear()
        get_separator_methods.cache_clear()
