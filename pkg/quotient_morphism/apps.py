from django.apps import AppConfig


class QuotientMorphismConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "quotient_morphism"
    verbose_name = "Quotient curves and harmonic morphisms"
