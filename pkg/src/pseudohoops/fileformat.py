"""Reading and writing algebra files.

An algebra file is a JSON object::

    {
      "name": "hoop5-godel",
      "elements": ["0", "a", "b", "c", "1"],
      "one": "1",
      "zero": "0",
      "odot": [["0", "0", ...], ...],
      "to": [...],
      "squig": [...]
    }

Matrices are row-major with the row giving the left operand.  ``zero`` and
``squig`` are optional; a missing ``squig`` means ``squig = to``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .algebra import Algebra, validate
from .errors import AlgebraSyntaxError

LABEL_RE = re.compile(r"[A-Za-z0-9_()',-]+")
KEYS = ("name", "elements", "one", "zero", "odot", "to", "squig")
REQUIRED = {"name", "elements", "one", "odot", "to"}


def _reject_duplicate_keys(pairs):
    seen = {}
    for k, v in pairs:
        if k in seen:
            raise AlgebraSyntaxError(f"duplicate key {k!r}", path=k)
        seen[k] = v
    return seen


def _label(value, path):
    if not isinstance(value, str):
        raise AlgebraSyntaxError(f"expected a label string, got {value!r}", path=path)
    if not LABEL_RE.fullmatch(value):
        raise AlgebraSyntaxError(f"bad label {value!r}", path=path)
    return value


def _matrix(doc, key, n):
    rows = doc[key]
    if not isinstance(rows, list):
        raise AlgebraSyntaxError("expected a list of rows", path=key)
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise AlgebraSyntaxError("expected a row list", path=f"{key}[{i}]")
        for j, v in enumerate(row):
            _label(v, f"{key}[{i}][{j}]")
    return rows


def loads(text: str | bytes) -> Algebra:
    """Parse and validate an algebra; axiom errors propagate from :func:`validate`."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise AlgebraSyntaxError(f"not UTF-8: {exc.reason}") from None
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise AlgebraSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise AlgebraSyntaxError("top level must be an object")
    unknown = sorted(set(doc) - set(KEYS))
    if unknown:
        raise AlgebraSyntaxError(f"unknown key {unknown[0]!r}", path=unknown[0])
    missing = sorted(REQUIRED - set(doc))
    if missing:
        raise AlgebraSyntaxError(f"missing key {missing[0]!r}", path=missing[0])
    if not isinstance(doc["name"], str):
        raise AlgebraSyntaxError("name must be a string", path="name")
    elements = doc["elements"]
    if not isinstance(elements, list) or not elements:
        raise AlgebraSyntaxError("elements must be a non-empty list", path="elements")
    seen = set()
    for i, e in enumerate(elements):
        _label(e, f"elements[{i}]")
        if e in seen:
            raise AlgebraSyntaxError(f"duplicate label {e!r}", path=f"elements[{i}]")
        seen.add(e)
    one = _label(doc["one"], "one")
    zero = doc.get("zero")
    if zero is not None:
        _label(zero, "zero")
    n = len(elements)
    odot = _matrix(doc, "odot", n)
    to = _matrix(doc, "to", n)
    squig = _matrix(doc, "squig", n) if doc.get("squig") is not None else None
    A = Algebra.from_labels(doc["name"], elements, one, odot, to, squig=squig, zero=zero)
    return validate(A)


def load(path) -> Algebra:
    return loads(Path(path).read_bytes())


def to_document(A: Algebra) -> dict:
    def lab(t):
        return [[A.labels[v] for v in row] for row in t]

    doc = {"name": A.name, "elements": list(A.labels), "one": A.labels[A.one]}
    if A.zero is not None:
        doc["zero"] = A.labels[A.zero]
    doc["odot"] = lab(A.odot)
    doc["to"] = lab(A.to)
    if A.squig != A.to:
        doc["squig"] = lab(A.squig)
    return doc


def dumps(A: Algebra) -> str:
    """Canonical text: fixed key order, one matrix row per line."""
    doc = to_document(A)
    lines = ["{"]
    items = list(doc.items())
    for k, (key, value) in enumerate(items):
        comma = "," if k < len(items) - 1 else ""
        if key in ("odot", "to", "squig"):
            lines.append(f"  {json.dumps(key)}: [")
            for r, row in enumerate(value):
                sep = "," if r < len(value) - 1 else ""
                lines.append(f"    {json.dumps(row)}{sep}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump(A: Algebra, path) -> None:
    Path(path).write_text(dumps(A), encoding="utf-8")


def parse(data: bytes) -> Algebra:
    return loads(data)


def serialize(A: Algebra) -> bytes:
    return dumps(A).encode("utf-8")
