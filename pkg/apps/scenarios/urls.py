from django.urls import path, include
from rest_framework.routers import DefaultRouter
from .views import ScenarioRunViewSet

router = DefaultRouter()
router.register('runs', ScenarioRunViewSet, basename='scenario-run')

urlpatterns = [
    path('', include(router.urls)),
]
