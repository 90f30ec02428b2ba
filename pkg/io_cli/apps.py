from django.apps import AppConfig


class IoCliConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "io_cli"
    verbose_name = "Problem files and command line"
