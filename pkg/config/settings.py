import os
import sys
from pathlib import Path
from dotenv import load_dotenv

# ── BASE DIR & ENV ────────────────────────────────────────────────────────────
BASE_DIR = Path(__file__).resolve().parent.parent

dotenv_path = BASE_DIR / ".env"
if dotenv_path.exists():
    load_dotenv(dotenv_path)


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value in (None, ""):
        return default
    try:
        return int(value)
    except ValueError:
        print(f"WARNING: {name}={value!r} is not an integer, using {default}", file=sys.stderr)
        return default


def _env_float(name: str, default: float) -> float:
    value = os.environ.get(name)
    if value in (None, ""):
        return default
    try:
        return float(value)
    except ValueError:
        print(f"WARNING: {name}={value!r} is not a number, using {default}", file=sys.stderr)
        return default


def _env_ints(name: str, default: str) -> tuple:
    raw = os.environ.get(name, default)
    return tuple(int(part) for part in raw.split(",") if part.strip())


# ── SECURITY ──────────────────────────────────────────────────────────────────
SECRET_KEY = os.environ.get("SECRET_KEY") or os.environ.get("DJANGO_SECRET_KEY", "dev-secret-key")

debug_value = os.environ.get("DEBUG", "0").lower()
DEBUG = debug_value in ("true", "1", "yes", "on")

ALLOWED_HOSTS = []

# ── APPLICATIONS ─────────────────────────────────────────────────────────────
# Command-line only: no database, no middleware, no URLs.
INSTALLED_APPS = [
    "stabcodes",
]

DATABASES = {}

# ── REDIS / CACHES ───────────────────────────────────────────────────────────
CELERY_BROKER_URL = os.environ.get("CELERY_BROKER_URL", "memory://")
CELERY_RESULT_BACKEND = os.environ.get("CELERY_RESULT_BACKEND", "cache+memory://")
CELERY_TASK_ALWAYS_EAGER = os.environ.get("CELERY_TASK_ALWAYS_EAGER", "1").lower() in ("true", "1", "yes", "on")
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"
CELERY_ACCEPT_CONTENT = ["json"]

REDIS_CACHE_URL = os.environ.get("REDIS_CACHE_URL", "")

if REDIS_CACHE_URL:
    CACHES = {
        "default": {
            "BACKEND": "django_redis.cache.RedisCache",
            "LOCATION": REDIS_CACHE_URL,
            "OPTIONS": {
                "CLIENT_CLASS": "django_redis.client.DefaultClient",
            },
        }
    }
else:
    CACHES = {
        "default": {
            "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
            "LOCATION": "stabcodes",
        }
    }

# ── RESOURCE CAPS ─────────────────────────────────────────────────────────────
STABCODES_MAX_COMPACT_DIM = _env_int("STABCODES_MAX_COMPACT_DIM", 4096)
STABCODES_MAX_GROUP_ORDER = _env_int("STABCODES_MAX_GROUP_ORDER", 4096)
STABCODES_MAX_GAUSS_ORDER = _env_int("STABCODES_MAX_GAUSS_ORDER", 2 ** 20)
STABCODES_MAX_HILBERT_DIM = _env_int("STABCODES_MAX_HILBERT_DIM", 4096)

# ── NUMERICS ──────────────────────────────────────────────────────────────────
STABCODES_UNITARY_TOL = _env_float("STABCODES_UNITARY_TOL", 1e-12)
STABCODES_EIGEN_TOL = _env_float("STABCODES_EIGEN_TOL", 1e-10)

# Torus sizes used when a command gets no --ell
STABCODES_DEFAULT_ELLS = _env_ints("STABCODES_DEFAULT_ELLS", "1,2,3")
STABCODES_LAGRANGIAN_CHECK_ELLS = _env_ints("STABCODES_LAGRANGIAN_CHECK_ELLS", "1,2")

# ── LOGGING ───────────────────────────────────────────────────────────────────
STABCODES_LOG_LEVEL = os.environ.get("STABCODES_LOG_LEVEL", "WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": sys.stderr,
            "formatter": "verbose",
        },
    },
    "loggers": {
        "stabcodes": {
            "handlers": ["console"],
            "level": STABCODES_LOG_LEVEL,
            "propagate": False,
        },
    },
}

# ── INTERNATIONALIZATION ─────────────────────────────────────────────────────
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True
