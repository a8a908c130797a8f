# stabcodes/services/corpus.py
"""
Built-in example documents shipped in stabcodes/fixtures/.

A document argument is a file path or the name of one of these.
"""
import logging
from pathlib import Path
from typing import List, Tuple

from django.core.cache import cache

from stabcodes.constants import CORPUS_CACHE_KEY_PATTERN
from stabcodes.exceptions import DocumentError
from stabcodes.services.documents import CodeDocument, parse_document

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"
FIXTURE_SUFFIX = ".code"


def corpus_names() -> List[str]:
    return sorted(path.stem for path in FIXTURE_DIR.glob(f"*{FIXTURE_SUFFIX}"))


def corpus_text(name: str) -> str:
    key = CORPUS_CACHE_KEY_PATTERN.format(name=name)
    text = cache.get(key)
    if text is None:
        path = FIXTURE_DIR / f"{name}{FIXTURE_SUFFIX}"
        if not path.is_file():
            raise DocumentError(f"No corpus document '{name}'; available: {', '.join(corpus_names())}")
        text = path.read_text(encoding="utf-8")
        cache.set(key, text)
    return text


def read_source(source: str) -> Tuple[str, str]:
    """(label, text) for a path or corpus name; a trailing path component names a corpus entry too."""
    path = Path(source)
    if path.is_file():
        return str(path), path.read_text(encoding="utf-8")
    name = path.stem if path.suffix == FIXTURE_SUFFIX else path.name
    logger.debug("Resolving %s from the built-in corpus", name)
    return name, corpus_text(name)


def load_document(source: str) -> Tuple[str, CodeDocument]:
    label, text = read_source(source)
    return label, parse_document(text)
