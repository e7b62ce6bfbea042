from django.urls import path, include
from rest_framework import routers

from .views import ProblemViewSet

app_name = "polyfield"

router = routers.DefaultRouter()
router.register(r"problems", ProblemViewSet, basename="problem")

urlpatterns = [
    path("", include(router.urls)),
]
