import logging
from typing import Optional

from celery import shared_task

from stabcodes.exceptions import StabCodeError
from stabcodes.services.documents import build_formation, build_presentation, parse_document
from stabcodes.services.formations import degeneracy
from stabcodes.services.modules import compactify

logger = logging.getLogger(__name__)


def _error(ell: int, exc: StabCodeError) -> dict:
    return {"status": "error", "ell": ell, "error": type(exc).__name__, "message": str(exc)}


# ============================================================
# Counting Task
# ============================================================

@shared_task(bind=True, max_retries=2)
def count_at_ell(self, text: str, name: Optional[str], ell: int, max_dim: Optional[int] = None):
    """|M_ℓ| for one torus size, against k0^(ℓ^d)."""
    try:
        presentation = build_presentation(parse_document(text), name)
        order = compactify(presentation, ell, max_dim).order
        expected = presentation.k0 ** (ell ** presentation.dimension)
        logger.info("count ℓ=%s: %s (expected %s)", ell, order, expected)
        return {"status": "success", "ell": ell, "order": order, "expected": expected,
                "check": order == expected}

    except StabCodeError as e:
        return _error(ell, e)

    except Exception as e:
        logger.exception("count ℓ=%s failed", ell)
        raise self.retry(exc=e, countdown=5)


# ============================================================
# Degeneracy Task
# ============================================================

@shared_task(bind=True, max_retries=2)
def degeneracy_at_ell(self, text: str, name: Optional[str], ell: int, max_dim: Optional[int] = None):
    """sqrt|F_ℓ^⊥/F_ℓ| for one torus size."""
    try:
        fm = build_formation(parse_document(text), name, cap=max_dim)
        root = degeneracy(fm, ell, max_dim)
        logger.info("degeneracy ℓ=%s: %s", ell, root)
        return {"status": "success", "ell": ell, "degeneracy": root, "index": root * root}

    except StabCodeError as e:
        return _error(ell, e)

    except Exception as e:
        logger.exception("degeneracy ℓ=%s failed", ell)
        raise self.retry(exc=e, countdown=5)
