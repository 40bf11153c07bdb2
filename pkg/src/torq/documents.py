"""JSON documents for fans, divisors, triangles, presentations and monomial ideals.

Every document is an object with a ``kind`` field. Matrices are written
row-major as ``{"rows": r, "cols": c, "data": [[...], ...]}`` and act on
column vectors: ``phi1`` has shape ``(Mhat_rank, rank)`` and ``phi2`` has
shape ``(#rays, Mhat_rank)``. Integers whose absolute value exceeds
``2**53 - 1`` are written as decimal strings; both forms are accepted on
input. A ``fan`` field may hold an inline fan object or a path to a fan
document, resolved relative to the referring file.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Optional, Union

import jsonschema

from .divisor import WeilDivisor
from .fan import Fan
from .presentation import QuotientPresentation, Triangle
from .zlinalg import IntMatrix

SAFE_INT = 2 ** 53 - 1

_INT = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}
_INDEX = {"type": "integer", "minimum": 0}
_VECTORS = {"type": "array", "items": {"type": "array", "items": _INT}}

FAN_SCHEMA = {
    "type": "object",
    "required": ["rank", "rays", "max_cones"],
    "properties": {
        "kind": {"const": "fan"},
        "rank": _INDEX,
        "rays": _VECTORS,
        "max_cones": {"type": "array", "items": {"type": "array", "items": _INDEX}},
    },
}
_FAN_REF = {"anyOf": [{"type": "string"}, FAN_SCHEMA]}
MATRIX_SCHEMA = {
    "type": "object",
    "required": ["rows", "cols", "data"],
    "properties": {"rows": _INDEX, "cols": _INDEX, "data": _VECTORS},
}
DIVISOR_SCHEMA = {
    "type": "object",
    "required": ["coeffs"],
    "properties": {"kind": {"const": "divisor"}, "fan": _FAN_REF,
                   "coeffs": {"type": "array", "items": _INT}},
}
TRIANGLE_SCHEMA = {
    "type": "object",
    "required": ["fan", "phi1", "phi2"],
    "properties": {"kind": {"const": "triangle"}, "fan": _FAN_REF,
                   "phi1": MATRIX_SCHEMA, "phi2": MATRIX_SCHEMA},
}
PRESENTATION_SCHEMA = {
    "type": "object",
    "required": ["triangle", "source", "target", "Q", "ray_bijection"],
    "properties": {
        "kind": {"const": "presentation"},
        "triangle": TRIANGLE_SCHEMA,
        "source": FAN_SCHEMA,
        "target": FAN_SCHEMA,
        "Q": MATRIX_SCHEMA,
        "ray_bijection": {"type": "array", "items": _INDEX},
        "sigma_bar": _VECTORS,
        "source_cones": {"type": "array", "items": {"type": "array", "items": _INDEX}},
    },
}
IDEAL_SCHEMA = {
    "type": "object",
    "required": ["generators"],
    "properties": {"kind": {"const": "ideal"}, "generators": _VECTORS},
}
SCHEMAS = {
    "fan": FAN_SCHEMA,
    "divisor": DIVISOR_SCHEMA,
    "triangle": TRIANGLE_SCHEMA,
    "presentation": PRESENTATION_SCHEMA,
    "ideal": IDEAL_SCHEMA,
}


class DocumentError(Exception):
    """Malformed input: unreadable file, invalid JSON or schema violation."""


# --- encoding ----------------------------------------------------------------

def encode_int(x: int) -> Union[int, str]:
    return x if abs(x) <= SAFE_INT else str(x)


def _vecs(vs) -> list[list]:
    return [[encode_int(x) for x in v] for v in vs]


def fan_to_json(F: Fan) -> dict:
    return {"kind": "fan", "rank": F.rank, "rays": _vecs(F.rays),
            "max_cones": [list(c) for c in F.max_cones]}


def matrix_to_json(A: IntMatrix) -> dict:
    return {"rows": A.rows, "cols": A.cols, "data": _vecs(A.data)}


def divisor_to_json(D: WeilDivisor) -> dict:
    return {"kind": "divisor", "fan": fan_to_json(D.fan),
            "coeffs": [encode_int(c) for c in D.coeffs]}


def triangle_to_json(T: Triangle) -> dict:
    return {"kind": "triangle", "fan": fan_to_json(T.base_fan),
            "phi1": matrix_to_json(T.phi1), "phi2": matrix_to_json(T.phi2)}


def presentation_to_json(qp: QuotientPresentation) -> dict:
    return {
        "kind": "presentation",
        "triangle": triangle_to_json(qp.triangle),
        "source": fan_to_json(qp.source),
        "target": fan_to_json(qp.target),
        "Q": matrix_to_json(qp.Q),
        "ray_bijection": list(qp.ray_bijection),
        "sigma_bar": _vecs(qp.sigma_bar.rays),
        "source_cones": [list(c) for c in qp.source.cones],
    }


def ideal_to_json(generators) -> dict:
    return {"kind": "ideal", "generators": _vecs(generators)}


_SCALAR_ARRAY = re.compile(r"\[\s+([^\[\]{}\"]*?)\s+\]")


def dumps(doc: Any) -> str:
    """Canonical text: two-space indent with arrays of numbers kept on one line,
    fixed key order, trailing newline."""
    text = json.dumps(doc, indent=2)
    def collapse(m: re.Match) -> str:
        return "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]"

    text = _SCALAR_ARRAY.sub(collapse, text)
    return text + "\n"


# --- decoding ----------------------------------------------------------------

def _int(x) -> int:
    return int(x)


def _vec(v) -> tuple[int, ...]:
    return tuple(_int(x) for x in v)


def read_json(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from None


def check_schema(doc: Any, kind: str):
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise DocumentError(f"{kind} document: {exc.message} at {where}") from None


def document_kind(doc: Any) -> str:
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind not in SCHEMAS:
        raise DocumentError(f"unknown document kind {kind!r}")
    return kind


def matrix_from_json(obj: dict) -> IntMatrix:
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if len(data) != rows or any(len(r) != cols for r in data):
        raise DocumentError(f"matrix data does not have the declared shape {rows}x{cols}")
    return IntMatrix.from_rows([_vec(r) for r in data], cols)


def fan_from_json(obj: Any, base: Optional[Path] = None) -> Fan:
    if isinstance(obj, str):
        path = Path(obj) if base is None else base / obj
        doc = read_json(path)
        check_schema(doc, "fan")
        return fan_from_json(doc)
    check_schema(obj, "fan")
    return Fan.from_rays(obj["rank"], [_vec(v) for v in obj["rays"]], obj["max_cones"])


def divisor_from_json(obj: dict, fan: Optional[Fan] = None, base: Optional[Path] = None
                      ) -> WeilDivisor:
    check_schema(obj, "divisor")
    if "fan" in obj:
        own = fan_from_json(obj["fan"], base)
        if fan is not None and own != fan:
            raise DocumentError("divisor refers to a different fan")
        fan = own
    if fan is None:
        raise DocumentError("divisor document has no fan")
    return WeilDivisor(fan, _vec(obj["coeffs"]))


def triangle_from_json(obj: dict, base: Optional[Path] = None) -> Triangle:
    check_schema(obj, "triangle")
    F = fan_from_json(obj["fan"], base)
    return Triangle(F, matrix_from_json(obj["phi1"]), matrix_from_json(obj["phi2"]))


def ideal_from_json(obj: dict) -> list[tuple[int, ...]]:
    check_schema(obj, "ideal")
    return [_vec(g) for g in obj["generators"]]


def load(path: Union[str, Path], expect: Optional[tuple[str, ...]] = None) -> tuple[str, dict]:
    """Read a document and check it against the schema of its kind."""
    doc = read_json(path)
    kind = document_kind(doc)
    if expect is not None and kind not in expect:
        raise DocumentError(f"{path}: expected a {' or '.join(expect)} document, got {kind}")
    check_schema(doc, kind)
    return kind, doc
