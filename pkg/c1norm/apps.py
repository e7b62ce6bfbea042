from django.apps import AppConfig


class C1normConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "c1norm"
    verbose_name = "C1 norm"
