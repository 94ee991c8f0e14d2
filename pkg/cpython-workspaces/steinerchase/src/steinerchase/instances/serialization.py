"""This module reads and writes instances in the on-disk JSON format.

The format is::

    {"dim": 2, "norm": "l2",
     "requests": [{"type": "body", "A": [[...], ...], "b": [...]},
                  {"type": "func", "pieces": [[a_1, ..., a_d, c], ...]}]}

Every float is written with 17 significant digits and negative zero keeps
its sign, so ``loads(dumps(I))`` rebuilds I bit for bit. Field order is
irrelevant and unknown fields are rejected. Diagnostics name the offending
field, e.g. ``requests[2].A``.

**Usage:**
```python
save(instance, "run.json")
assert load("run.json") == instance
```
"""

import json

import numpy as np

from ..error import ValidationError
from ..geometry.maxaffine import MaxAffine
from ..geometry.norm import NormTag
from ..geometry.polytope import HPolytope
from ..workfn.request import Body, Func, Instance, Request
from .error import ParseError

_TOP_FIELDS = {"dim", "norm", "requests"}
_BODY_FIELDS = {"type", "A", "b"}
_FUNC_FIELDS = {"type", "pieces"}


def _number(x: float) -> str:
    text = format(float(x), ".17g")
    # "-0" would parse back as the integer 0
    return "-0.0" if text == "-0" else text


def _row(values: np.ndarray) -> str:
    return "[" + ", ".join(_number(x) for x in values) + "]"


def _matrix(rows: np.ndarray) -> str:
    return "[" + ", ".join(_row(r) for r in rows) + "]"


def _request_json(request: Request) -> str:
    if isinstance(request, Body):
        P = request.polytope
        return f'{{"type": "body", "A": {_matrix(P.A)}, "b": {_row(P.b)}}}'
    return f'{{"type": "func", "pieces": {_matrix(request.function.pieces)}}}'


def dumps(instance: Instance) -> str:
    """Serializes an instance to JSON text, one request per line."""
    lines = [
        "{",
        f'  "dim": {instance.dim},',
        f'  "norm": "{instance.norm.value}",',
    ]
    if not instance.requests:
        lines.append('  "requests": []')
    else:
        lines.append('  "requests": [')
        body = [f"    {_request_json(r)}" for r in instance.requests]
        lines.append(",\n".join(body))
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _check_fields(obj, allowed: set[str], field: str | None) -> None:
    if not isinstance(obj, dict):
        raise ValidationError(f"expected an object, got {type(obj).__name__}", field=field)
    missing = sorted(allowed - obj.keys())
    if missing:
        raise ValidationError("missing field", field=_join(field, missing[0]))
    unknown = sorted(obj.keys() - allowed)
    if unknown:
        raise ValidationError("unknown field", field=_join(field, unknown[0]))


def _join(parent: str | None, key: str) -> str:
    return key if parent is None else f"{parent}.{key}"


def _numeric(value, ndim: int, field: str) -> np.ndarray:
    """Converts nested lists of JSON numbers, rejecting booleans and strings."""

    def walk(item, depth: int) -> None:
        if depth == 0:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise ValidationError(f"expected a number, got {item!r}", field=field)
            return
        if not isinstance(item, list):
            raise ValidationError(f"expected a {depth}-level nested list", field=field)
        for child in item:
            walk(child, depth - 1)

    walk(value, ndim)
    try:
        array = np.array(value, dtype=np.float64)
    except ValueError as e:
        raise ValidationError("rows have different lengths", field=field) from e
    if array.ndim != ndim:
        raise ValidationError(f"expected {ndim} dimensions, got shape {array.shape}", field=field)
    return array


def _parse_request(obj, i: int) -> Request:
    field = f"requests[{i}]"
    if not isinstance(obj, dict):
        raise ValidationError(f"expected an object, got {type(obj).__name__}", field=field)
    kind = obj.get("type")
    if kind == "body":
        _check_fields(obj, _BODY_FIELDS, field)
        A = _numeric(obj["A"], 2, f"{field}.A")
        b = _numeric(obj["b"], 1, f"{field}.b")
        return Body(HPolytope(A, b, field=field))
    if kind == "func":
        _check_fields(obj, _FUNC_FIELDS, field)
        pieces = _numeric(obj["pieces"], 2, f"{field}.pieces")
        if pieces.shape[1] < 2:
            raise ValidationError(f"pieces must be rows of length d + 1, got shape {pieces.shape}", field=f"{field}.pieces")
        return Func(MaxAffine(pieces[:, :-1], pieces[:, -1], field=field))
    raise ValidationError(f"type must be 'body' or 'func', got {kind!r}", field=f"{field}.type")


def loads(text: str) -> Instance:
    """Parses an instance from JSON text.

    Args:
        text: The JSON document.

    Returns:
        The instance, with every body certified feasible and bounded.

    Raises:
        ParseError: If the text is not valid JSON.
        ValidationError: If a field is missing, unknown or invalid, or a body is infeasible or unbounded.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from e

    _check_fields(data, _TOP_FIELDS, None)
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ValidationError(f"must be a positive integer, got {dim!r}", field="dim")
    if not isinstance(data["norm"], str):
        raise ValidationError(f"expected a string, got {data['norm']!r}", field="norm")
    norm = NormTag.parse(data["norm"])
    if not isinstance(data["requests"], list):
        raise ValidationError("expected a list", field="requests")

    requests = [_parse_request(obj, i) for i, obj in enumerate(data["requests"])]
    return Instance(dim, norm, requests)


def save(instance: Instance, path: str) -> None:
    """Writes an instance to a UTF-8 file."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(instance))


def load(path: str) -> Instance:
    """Reads an instance from a UTF-8 file.

    Raises:
        FileNotFoundError: If the file does not exist.
        ParseError: If the file is not valid JSON.
        ValidationError: If the content is not a valid instance.
    """
    with open(path, "r", encoding="utf-8") as f:
        return loads(f.read())
