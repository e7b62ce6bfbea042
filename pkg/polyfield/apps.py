from django.apps import AppConfig


class PolyfieldConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "polyfield"
    verbose_name = "Polynomial fields"
