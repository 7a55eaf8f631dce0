"""JSON matrix files: ``{"rows": m, "cols": n, "entries": [[[re, im], ...], ...]}``.

Parts are strings ``"p/q"``, ``"p"`` or exact decimals such as ``"0.5"``.
A bare string or number is accepted as a real entry when reading.
"""

import json
from pathlib import Path
from typing import Union

from .errors import ParseError
from .matrix import Matrix
from .scalar import make, parse_rational


def _part(v):
    if isinstance(v, bool):
        raise ParseError("booleans are not matrix entries")
    if isinstance(v, int):
        return parse_rational(str(v))
    if isinstance(v, str):
        return parse_rational(v)
    if isinstance(v, float):
        # repr gives the shortest decimal that round-trips, which is what the user typed
        return parse_rational(repr(v))
    raise ParseError("cannot read matrix entry part %r" % (v,))


def _entry(v):
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ParseError("complex entries are [re, im] pairs, got %r" % (v,))
        return make(_part(v[0]), _part(v[1]))
    return _part(v)


def matrix_from_json(obj) -> Matrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError("matrix file needs an 'entries' field")
    rows = obj["entries"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("'entries' must be a nonempty list of rows")
    data = [[_entry(v) for v in r] for r in rows]
    m, n = len(data), len(data[0])
    if any(len(r) != n for r in data) or n == 0:
        raise ParseError("ragged or empty rows")
    if obj.get("rows", m) != m or obj.get("cols", n) != n:
        raise ParseError("declared shape %sx%s does not match entries %dx%d"
                         % (obj.get("rows"), obj.get("cols"), m, n))
    return Matrix(data)


def matrix_to_json(A: Matrix) -> dict:
    return {"rows": A.rows, "cols": A.cols, "entries": A.to_pairs()}


def read_matrix(path: Union[str, Path]) -> Matrix:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from exc
    return matrix_from_json(obj)


def dumps(obj) -> str:
    """Canonical JSON text used for every file this package writes."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(path: Union[str, Path], obj):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def write_matrix(path: Union[str, Path], A: Matrix):
    write_json(path, matrix_to_json(A))
