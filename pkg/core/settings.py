"""
Django settings for the symbolic dynamics toolkit.

Every tunable is read from the environment (a ``.env`` file is loaded first), so
the same project runs locally on sqlite and against PostgreSQL elsewhere.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/
"""

import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()


def env_int(name, default):
    return int(os.getenv(name, default))


def env_bool(name, default):
    return os.getenv(name, str(default)).lower() in ['true', '1']


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', 'shifts-local-development-key')

DEBUG = env_bool('DEBUG', False)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'shifts',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {},
    },
]


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

if os.getenv('DB_ENGINE', 'sqlite') == 'postgresql':
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'NAME': os.getenv('DB_NAME'),
            'USER': os.getenv('DB_USER'),
            'PASSWORD': os.getenv('DB_PASS'),
            'HOST': os.getenv('DB_HOST', 'localhost'),
            'PORT': os.getenv('DB_PORT', '5432'),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Caps on enumeration and construction sizes (see shifts.conf)
SHIFTS_MAX_WORDS = env_int('SHIFTS_MAX_WORDS', 2_000_000)
SHIFTS_MAX_VERTICES = env_int('SHIFTS_MAX_VERTICES', 1_000_000)
SHIFTS_MAX_PREFIX = env_int('SHIFTS_MAX_PREFIX', 10_000_000)
SHIFTS_MAX_TRACE_CELLS = env_int('SHIFTS_MAX_TRACE_CELLS', 50_000_000)
SHIFTS_MAX_JOINING_CELLS = env_int('SHIFTS_MAX_JOINING_CELLS', 1_000_000)
SHIFTS_MAX_PRODUCT_VERTICES = env_int('SHIFTS_MAX_PRODUCT_VERTICES', 2048)
SHIFTS_MAX_CODE_WORDS = env_int('SHIFTS_MAX_CODE_WORDS', 4096)
SHIFTS_DEFAULT_SEED = env_int('SHIFTS_DEFAULT_SEED', 7)

# Store every command run as a VerificationRun row
SHIFTS_RECORD_RUNS = env_bool('SHIFTS_RECORD_RUNS', True)
SHIFTS_RUN_RETENTION_DAYS = env_int('SHIFTS_RUN_RETENTION_DAYS', 30)

LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
LOG_FILE = os.getenv('LOG_FILE', 'logs.log')

# Reports own stdout, so every handler writes elsewhere
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,

    'formatters': {
        'verbose': {
            'format': '[{levelname}] {asctime} {name} - {message}',
            'style': '{',
        },
        'simple': {
            'format': '[{levelname}] {message}',
            'style': '{',
        },
    },

    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
            'level': 'WARNING',
        },
        'file': {
            'class': 'logging.FileHandler',
            'filename': LOG_FILE,
            'formatter': 'verbose',
            'level': LOG_LEVEL,
            'delay': True,
        },
    },

    'root': {
        'handlers': ['console', 'file'],
        'level': 'WARNING',
    },

    'loggers': {
        'shifts': {
            'handlers': ['console', 'file'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
    }
}
