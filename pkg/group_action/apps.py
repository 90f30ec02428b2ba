from django.apps import AppConfig


class GroupActionConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "group_action"
    verbose_name = "Finite group actions"
