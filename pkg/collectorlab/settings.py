"""
Django settings for collectorlab project.

collectorlab is run from the command line only (``manage.py`` subcommands);
there is no database and no HTTP surface.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'collectorlab-insecure-cli-only-key')

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'numeric_core',
    'stirling',
    'distribution',
    'genfun',
    'montecarlo',
    'verification',
]

# No tables: every value object is computed, never stored.
DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


COLLECTOR_LAB = {
    # Whole-table exact storage cap, (n_max + 1) * (m + 1) cells
    'MAX_TABLE_CELLS': 2_000_000,
    'FLOAT_SIGNIFICANT_DIGITS': 17,

    # Simulation shard layout; changing either changes the random stream
    'SIM_SHARDS': 16,
    'SIM_CHUNK_TRIALS': 65_536,
    'WORKERS': int(os.environ.get('COLLECTOR_LAB_WORKERS', '1')),
    'DEFAULT_SEED': 20240229,

    'CHI_SQUARE_LEVEL': 0.999,
    'CHI_SQUARE_MIN_EXPECTED': 5.0,

    'COMPLETION_TAIL_TOL': 1e-9,

    # Default `verify` envelope
    'VERIFY_M_MAX': 6,
    'VERIFY_N_MAX': 12,
    'VERIFY_TRIALS': 100_000,
    'VERIFY_STIRLING_N_MAX': 60,
    'VERIFY_MC_CASES': ((2, 3), (5, 10)),
}


LOG_LEVEL = os.environ.get('COLLECTOR_LAB_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose' if LOG_LEVEL == 'DEBUG' else 'simple',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for app in ('collectorlab', 'numeric_core', 'stirling', 'distribution',
                    'genfun', 'montecarlo', 'verification')
    },
}
