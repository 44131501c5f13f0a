"""JSON Schemas (draft 2020-12) for every payload the CLI writes to stdout."""

from __future__ import annotations

from functools import lru_cache
from typing import Any, Dict

from jschon import JSON, JSONSchema, create_catalog

DRAFT = "https://json-schema.org/draft/2020-12/schema"

_EDGE_LIST = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
}
_WITNESS = {
    "type": "object",
    "properties": {"m": _EDGE_LIST, "n": _EDGE_LIST},
    "required": ["m", "n"],
    "additionalProperties": False,
}
_COUNTS = {
    "type": "object",
    "properties": {k: {"type": "integer", "minimum": 0} for k in ("tested", "not_applicable", "holds", "fails")},
    "required": ["tested", "not_applicable", "holds", "fails"],
    "additionalProperties": False,
}

SCHEMAS: Dict[str, Dict[str, Any]] = {
    "verdict": {
        "type": "object",
        "properties": {
            "graph6": {"type": "string"},
            "m": {"type": "integer", "minimum": 0},
            "n": {"type": "integer", "minimum": 0},
            "outcome": {"enum": ["Holds", "Fails", "NotApplicable"]},
            "witness": _WITNESS,
            "reason": {"enum": ["disconnected", "too few vertices", "odd vertex count", "matching number below m+n"]},
        },
        "required": ["m", "n", "outcome"],
        "additionalProperties": False,
    },
    "pm": {
        "type": "object",
        "properties": {
            "graph6": {"type": "string"},
            "status": {"enum": ["present", "absent"]},
            "matching": _EDGE_LIST,
        },
        "required": ["status"],
        "additionalProperties": False,
    },
    "faces": {
        "type": "object",
        "properties": {
            "chi": {"type": "integer"},
            "orientable": {"type": "boolean"},
            "genus": {"type": "integer", "minimum": 0},
            "surface": {"type": "string"},
            "faces": {"type": "integer", "minimum": 1},
            "face_sizes": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "phi": {"type": "array", "items": {"type": "string"}},
            "control_points": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
            "walks": {"type": "array", "items": _EDGE_LIST},
        },
        "required": ["chi", "orientable", "genus", "faces", "phi", "control_points"],
        "additionalProperties": False,
    },
    "genus": {
        "type": "object",
        "properties": {
            "graph6": {"type": "string"},
            "kind": {"enum": ["orientable", "non-orientable"]},
            "genus": {"type": "integer", "minimum": 0},
            "surface": {"type": "string"},
            "witness": {"type": "string"},
        },
        "required": ["kind", "genus", "witness"],
        "additionalProperties": False,
    },
    "surface": {
        "type": "object",
        "properties": {
            "surface": {"type": "string"},
            "chi": {"type": "integer"},
            "mu": {"type": "integer", "minimum": 3},
            "c": {"type": "string"},
            "claim3": {"type": "boolean"},
            "k": {"type": "integer", "minimum": 4},
            "threshold": {"type": "integer"},
        },
        "required": ["surface"],
        "additionalProperties": False,
    },
    "sweep": {
        "type": "object",
        "properties": {
            "chi_min": {"type": "integer"},
            "chi_max": {"type": "integer"},
            "surfaces": {"type": "integer", "minimum": 0},
            "failing": {"type": "array", "items": {"type": "string"}},
        },
        "required": ["chi_min", "chi_max", "surfaces", "failing"],
        "additionalProperties": False,
    },
    "graph": {
        "type": "object",
        "properties": {
            "graph6": {"type": "string"},
            "n": {"type": "integer", "minimum": 0},
            "m": {"type": "integer", "minimum": 0},
            "connected": {"type": "boolean"},
            "min_degree": {"type": "integer", "minimum": 0},
            "degrees": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
        "required": ["graph6"],
        "additionalProperties": False,
    },
    "scan": {
        "type": "object",
        "properties": {
            "suite": {"enum": ["lemmas", "theorems"]},
            "corpus": {"type": "string"},
            "slice": {"type": "string"},
            "graphs": {"type": "integer", "minimum": 0},
            "checks": {"type": "array", "items": {"type": "string"}},
            "counts": {"type": "object", "additionalProperties": _COUNTS},
            "verdicts": {"type": "object", "additionalProperties": _COUNTS},
            "violations": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "graph6": {"type": "string"},
                        "check": {"type": "string"},
                        "detail": {"type": "string"},
                    },
                    "required": ["graph6", "check", "detail"],
                    "additionalProperties": False,
                },
            },
            "skipped": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {"graph6": {"type": "string"}, "reason": {"type": "string"}},
                    "required": ["graph6", "reason"],
                    "additionalProperties": False,
                },
            },
        },
        "required": ["suite", "corpus", "slice", "graphs", "checks", "counts", "violations", "skipped"],
        "additionalProperties": False,
    },
}


@lru_cache(maxsize=1)
def _catalog():
    return create_catalog("2020-12")


@lru_cache(maxsize=None)
def _compiled(name: str) -> JSONSchema:
    _catalog()
    return JSONSchema({"$schema": DRAFT, **SCHEMAS[name]})


def is_valid(name: str, payload: Any) -> bool:
    if name not in SCHEMAS:
        raise ValueError(f"Unknown schema '{name}'")
    return _compiled(name).evaluate(JSON(payload)).valid


def check(name: str, payload: Any) -> None:
    """Raise if ``payload`` does not match schema ``name``."""
    if name not in SCHEMAS:
        raise ValueError(f"Unknown schema '{name}'")
    result = _compiled(name).evaluate(JSON(payload))
    if not result.valid:
        raise RuntimeError(f"Payload does not match the '{name}' schema: {result.output('basic')}")
