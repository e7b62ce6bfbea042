import os

from .base import *  # noqa: F403

SECRET_KEY = os.getenv("SECRET_KEY", "dev-insecure-poincare-key")

DEBUG = True
ALLOWED_HOSTS = [
    "127.0.0.1",
    "localhost",
]

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",  # noqa: F405
    }
}

STATICFILES_STORAGE = "django.contrib.staticfiles.storage.StaticFilesStorage"
