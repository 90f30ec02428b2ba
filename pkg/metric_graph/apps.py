from django.apps import AppConfig


class MetricGraphConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "metric_graph"
    verbose_name = "Metric graphs"
