from django.apps import AppConfig


class CompactifyConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "compactify"
    verbose_name = "Poincaré compactification"
