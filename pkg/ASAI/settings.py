"""
Django settings for ASAI project.

Точный движок локальных L-, ε- и γ-факторов Asai-cube
для неразветвлённых представлений GL(2) над этальными кубическими алгебрами.
"""

from pathlib import Path
import sys
from dotenv import load_dotenv
from decouple import config, Csv

load_dotenv()
# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-asai-local-factor-engine-k2#v9!x4q0m7t$w1r8')

DEBUG = config('DEBUG', default=False, cast=bool)
ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=Csv())


# Application definition

INSTALLED_APPS = [
    # Third-party apps
    'rest_framework',

    # Local apps
    'asai_app.apps.AsaiAppConfig',
]


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Django REST Framework
# Используются только сериализаторы для валидации входных JobSpec.

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
}


# Result cache
# Каталог задаётся переменной окружения ASAI_CACHE_DIR.

ASAI_CACHE_DIR = config('ASAI_CACHE_DIR', default=str(BASE_DIR / 'cache'))

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.filebased.FileBasedCache',
        'LOCATION': ASAI_CACHE_DIR,
        'TIMEOUT': config('ASAI_CACHE_TIMEOUT', default=None, cast=lambda v: None if v in (None, '', 'None') else int(v)),
    }
}


# Engine configuration

ASAI = {
    'CACHE_ENABLED': config('ASAI_CACHE_ENABLED', default=True, cast=bool),
    'DEFAULT_PRIME': config('ASAI_DEFAULT_PRIME', default=5, cast=int),
    'ORACLE_TOLERANCE': config('ASAI_ORACLE_TOLERANCE', default=1e-8, cast=float),
    'ORACLE_MARGIN': config('ASAI_ORACLE_MARGIN', default=0.5, cast=float),
    'NUMERIC_EPS': config('ASAI_NUMERIC_EPS', default=64 * sys.float_info.epsilon, cast=float),
}


# Logging Configuration
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
            'stream': 'ext://sys.stderr',
            'level': 'WARNING',
        },
        'file': {
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': BASE_DIR / 'logs' / 'asai.log',
            'maxBytes': 1024 * 1024 * 10,  # 10 MB
            'backupCount': 5,
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console', 'file'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': config('DJANGO_LOG_LEVEL', default='INFO'),
            'propagate': False,
        },
        'asai_app': {
            'handlers': ['console', 'file'],
            'level': config('ASAI_LOG_LEVEL', default='DEBUG'),
            'propagate': False,
        },
    },
}

# Создание директории для логов
LOGS_DIR = BASE_DIR / 'logs'
LOGS_DIR.mkdir(exist_ok=True)
