"""
Troplin Django Settings
Configuration for the tropical linear-system toolkit, read from the environment
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='django-insecure-troplin-local-only')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition
DJANGO_APPS = []

THIRD_PARTY_APPS = [
    'rest_framework',
]

LOCAL_APPS = [
    'metric_graph',
    'divisors_functions',
    'group_action',
    'quotient_morphism',
    'linear_system',
    'io_cli',
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# Pure computation: no models, no database
DATABASES = {}

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework Configuration (serializers only validate JSON documents)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}

# Search limits
TROPLIN_GROUP_BOUND = config('TROPLIN_GROUP_BOUND', default=10000, cast=int)
TROPLIN_EXTREMAL_ORBIT_LIMIT = config('TROPLIN_EXTREMAL_ORBIT_LIMIT', default=18, cast=int)
TROPLIN_EXPRESS_MAX_DEPTH = config('TROPLIN_EXPRESS_MAX_DEPTH', default=256, cast=int)
TROPLIN_ENUMERATION_LIMIT = config('TROPLIN_ENUMERATION_LIMIT', default=2000000, cast=int)

# Logging Configuration
TROPLIN_LOG_LEVEL = config('TROPLIN_LOG_LEVEL', default='DEBUG' if DEBUG else 'WARNING')
TROPLIN_LOG_FILE = config('TROPLIN_LOG_FILE', default='')

LOG_HANDLERS = ['console', 'file'] if TROPLIN_LOG_FILE else ['console']

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': TROPLIN_LOG_LEVEL,
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        app: {
            'handlers': LOG_HANDLERS,
            'level': TROPLIN_LOG_LEVEL,
            'propagate': False,
        }
        for app in LOCAL_APPS
    },
}

if TROPLIN_LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'INFO',
        'class': 'logging.FileHandler',
        'filename': TROPLIN_LOG_FILE,
        'formatter': 'verbose',
    }
