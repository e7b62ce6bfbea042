# Generated by Django 5.1.6 on 2026-10-17 09:12

import polyfield.models
from django.db import migrations, models


class Migration(migrations.Migration):
    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="Problem",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "name",
                    models.CharField(max_length=100, unique=True, verbose_name="Name"),
                ),
                (
                    "description",
                    models.TextField(blank=True, verbose_name="Description"),
                ),
                ("lam", models.FloatField(verbose_name="lambda")),
                ("beta", models.FloatField(verbose_name="beta")),
                (
                    "f1",
                    models.JSONField(blank=True, default=list, verbose_name="f1(u)"),
                ),
                (
                    "f2",
                    models.JSONField(blank=True, default=list, verbose_name="f2(u)"),
                ),
                (
                    "g1",
                    models.JSONField(blank=True, default=list, verbose_name="g1(v)"),
                ),
                (
                    "g2",
                    models.JSONField(blank=True, default=list, verbose_name="g2(v)"),
                ),
                (
                    "diffusion",
                    models.JSONField(
                        default=polyfield.models.default_diffusion,
                        verbose_name="Diffusion base a(x)",
                    ),
                ),
                (
                    "relaxed_degrees",
                    models.BooleanField(
                        default=False, verbose_name="Relaxed degree condition"
                    ),
                ),
                ("created_at", models.DateTimeField(auto_now_add=True)),
                ("updated_at", models.DateTimeField(auto_now=True)),
            ],
            options={
                "verbose_name": "Problem",
                "verbose_name_plural": "Problems",
                "ordering": ["name"],
            },
        ),
    ]
