"""
Access to the RIGIDKIT settings block with defaults.

Usage mirrors rest_framework.settings.api_settings:

    from core.conf import rigidkit_settings
    cap = rigidkit_settings.CLOSURE_DIMENSION_CAP
"""
from django.conf import settings

DEFAULTS = {
    'CLOSURE_DIMENSION_CAP': 128,
    'WEYL_MAX_RANK': 8,
    'SAMPLE_SEED': 20240601,
    'SAMPLE_COUNT': 8,
    'PCF_TOLERANCE': 1e-10,
    'PCF_MAX_ITERATIONS': 200,
    'PCF_CYCLE_TOLERANCE': 1e-8,
    'PCF_RESIDUAL_TOLERANCE': 1e-6,
    'PCF_SLOW_TOLERANCE': 1e-12,
    'PCF_CYCLE_SAMPLES': 50,
    'REPORT_VERSION': '1.0',
}


class RigidkitSettings:
    """
    Lazy view over settings.RIGIDKIT. Unknown keys raise AttributeError,
    missing keys fall back to DEFAULTS.
    """
    def __init__(self, defaults=None):
        self.defaults = defaults or DEFAULTS

    @property
    def user_settings(self):
        if settings.configured:
            return getattr(settings, 'RIGIDKIT', {})
        return {}

    def __getattr__(self, attr):
        if attr not in self.defaults:
            raise AttributeError(f"Invalid rigidkit setting: '{attr}'")
        return self.user_settings.get(attr, self.defaults[attr])


rigidkit_settings = RigidkitSettings(DEFAULTS)
