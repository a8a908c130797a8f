import os
from celery import Celery

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")

# Per-ℓ sweeps; eager unless CELERY_TASK_ALWAYS_EAGER=0.
app = Celery("stabcodes")
app.config_from_object("django.conf:settings", namespace="CELERY")
app.autodiscover_tasks()
