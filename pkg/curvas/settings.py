"""
Django settings for the curvas project.

Only the parts of Django the command-line tool needs are enabled: the ORM for
the curve corpus and the report archive, management commands, forms and the
test runner. There is no web surface.
"""

from pathlib import Path
import os
import dj_database_url
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Variables from the .env file next to manage.py override nothing already set
# in the environment.
load_dotenv(os.path.join(BASE_DIR, '.env'))


SECRET_KEY = os.environ.get('SECRET_KEY', 'curvas-local-key')

DEBUG = os.environ.get('CURVAS_DEBUG', '0') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'polycore',
    'logmod',
    'chern',
    'restriction',
    'triples',
    'cli',
]

MIDDLEWARE = []


# Database

DATABASES = {
    'default': dj_database_url.config(
        default=os.getenv('DATABASE_URL', f"sqlite:///{BASE_DIR / 'curvas.sqlite3'}"),
        conn_max_age=600,
    )
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LANGUAGE_CODE = 'en'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True


# Computation defaults. Library functions fall back to these when the caller
# passes None.

CURVAS = {
    'DEFAULT_SEED': int(os.getenv('CURVAS_DEFAULT_SEED', '7')),
    'GENERIC_TRIALS': int(os.getenv('CURVAS_GENERIC_TRIALS', '10')),
    'LINE_COEFF_BOUND': int(os.getenv('CURVAS_LINE_COEFF_BOUND', '9')),
    'BOUND_FACTOR': int(os.getenv('CURVAS_BOUND_FACTOR', '2')),
    'SCAN_WORKERS': int(os.getenv('CURVAS_SCAN_WORKERS', '1')),
    'CORPUS_DIR': Path(os.getenv('CURVAS_CORPUS_DIR', BASE_DIR / 'cli' / 'corpus')),
}


# Logging

LOG_LEVEL = os.getenv('CURVAS_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('polycore', 'logmod', 'chern', 'restriction', 'triples', 'cli')
    },
}
