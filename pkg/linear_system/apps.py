from django.apps import AppConfig


class LinearSystemConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "linear_system"
    verbose_name = "Linear systems and generators"
