# stabcodes/services/reports.py
"""
Machine-readable command reports.

Every report is {"command", "source", "section", "status", "result"} and
validates against stabcodes/schemas/report.schema.json.
"""
import json
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Optional

import jsonschema
import numpy as np

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "schemas" / "report.schema.json"

STATUS_OK = "ok"


def jsonable(value):
    """Fractions become "p/q" strings, tuples become lists, dict keys become strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    if hasattr(value, "as_dict"):
        return jsonable(value.as_dict())
    return str(value)


def make_report(command: str, source: Optional[str], section: Optional[str], result: dict,
                status: str = STATUS_OK) -> dict:
    return jsonable({
        "command": command,
        "source": source,
        "section": section,
        "status": status,
        "result": result,
    })


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


@lru_cache(maxsize=1)
def load_schema() -> dict:
    with open(SCHEMA_PATH, encoding="utf-8") as handle:
        return json.load(handle)


def validate_report(report: dict):
    """Raise jsonschema.ValidationError when the report does not match the schema."""
    jsonschema.validate(instance=report, schema=load_schema())
