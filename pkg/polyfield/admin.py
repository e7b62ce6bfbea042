from django.contrib import admin

from polyfield.models import Problem


@admin.register(Problem)
class ProblemAdmin(admin.ModelAdmin):
    list_display = ("name", "lam", "beta", "relaxed_degrees", "updated_at")
    search_fields = ("name", "description")
    list_filter = ("relaxed_degrees",)
