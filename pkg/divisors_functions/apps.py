from django.apps import AppConfig


class DivisorsFunctionsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "divisors_functions"
    verbose_name = "Divisors and rational functions"
