from django.apps import AppConfig
from django.core.checks import Warning, register
from django.utils.module_loading import import_string
from django.utils.translation import gettext_lazy as _

from hypersep import settings as hs_settings


class HypersepConfig(AppConfig):
    name = "hypersep"
    verbose_name = _("Hypergraph separators")


@register
def check_budgets(app_configs, **kwargs):
    errors = []
    config = hs_settings.get_config()
    for key in hs_settings.BUDGET_KEYS:
        value = config[key]
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            errors.append(
                Warning(
                    f"HYPERSEP_CONFIG[{key!r}] must be a positive integer, "
                    f"got {value!r}.",
                    hint=f"Remove {key} from HYPERSEP_CONFIG to use the default "
                    f"({hs_settings.CONFIG_DEFAULTS[key]}).",
                    id="hypersep.W001",
                )
            )
    return errors


@register
def check_separator_method(app_configs, **kwargs):
    config = hs_settings.get_config()
    method = config["SEPARATOR_METHOD"]
    if method == "auto" or method in config["SEPARATOR_METHODS"]:
        return []
    return [
        Warning(
            f"SEPARATOR_METHOD {method!r} is not a registered separator method.",
            hint="Use 'auto' or one of the keys of SEPARATOR_METHODS: "
            + ", ".join(sorted(config["SEPARATOR_METHODS"]))
            + ".",
            id="hypersep.W002",
        )
    ]


@register
def check_separator_methods(app_configs, **kwargs):
    errors = []
    for name, path in hs_settings.get_config()["SEPARATOR_METHODS"].items():
        try:
            import_string(path)
        except ImportError:
            errors.append(
                Warning(
                    f"Separator method {name!r} cannot be imported from {path!r}.",
                    hint="Point SEPARATOR_METHODS entries at callables taking "
                    "(hypergraph, *, seed, max_trials, jobs).",
                    id="hypersep.W003",
                )
            )
    return errors
