"""Matrix file formats.

Text::

    3
    0 0 1
    1 0 0
    0 1 0

JSON: ``{"n": 3, "rows": [[0, 0, 1], [1, 0, 0], [0, 1, 0]]}``. Entries may
also be decimal strings, which is how certificates store them.
"""

from __future__ import annotations

import json
import re

from .exactmat import Mat

_INT_RE = re.compile(r"[+-]?\d+\Z")


class MatrixFormatError(ValueError):
    pass


def _parse_int(tok) -> int:
    if isinstance(tok, bool):
        raise MatrixFormatError(f"not an integer: {tok!r}")
    if isinstance(tok, int):
        return tok
    if isinstance(tok, str) and _INT_RE.match(tok.strip()):
        return int(tok)
    raise MatrixFormatError(f"not an integer: {tok!r}")


def parse_text(text: str) -> Mat:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    if len(lines[0]) != 1:
        raise MatrixFormatError("first line must hold the dimension n")
    n = _parse_int(lines[0][0])
    if n < 1:
        raise MatrixFormatError(f"dimension must be >= 1, got {n}")
    body = lines[1:]
    if len(body) != n:
        raise MatrixFormatError(f"expected {n} rows, got {len(body)}")
    rows = []
    for i, row in enumerate(body):
        if len(row) != n:
            raise MatrixFormatError(f"row {i + 1} has {len(row)} entries, expected {n}")
        rows.append([_parse_int(t) for t in row])
    return Mat.from_rows(rows)


def matrix_from_json(obj) -> Mat:
    if not isinstance(obj, dict) or "rows" not in obj:
        raise MatrixFormatError('JSON matrix must be an object with "n" and "rows"')
    rows = obj["rows"]
    n = _parse_int(obj.get("n", len(rows) if isinstance(rows, list) else -1))
    if n < 1:
        raise MatrixFormatError(f"dimension must be >= 1, got {n}")
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixFormatError(f'"rows" must be a list of {n} rows')
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"row {i + 1} is not a list of {n} entries")
        out.append([_parse_int(x) for x in row])
    return Mat.from_rows(out)


def parse_matrix(text: str) -> Mat:
    """Parse either format, detected by a leading ``{``."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from None
        return matrix_from_json(obj)
    return parse_text(text)


def read_matrix(path) -> Mat:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def format_text(a: Mat) -> str:
    if not a.is_square:
        raise MatrixFormatError("matrix files hold square matrices")
    return f"{a.rows}\n{a}\n"


def format_json(a: Mat) -> str:
    return json.dumps({"n": a.rows, "rows": a.to_rows()}) + "\n"


def rows_as_strings(a: Mat) -> list[list[str]]:
    return [[str(x) for x in a.row(i)] for i in range(a.rows)]


def rows_from_strings(rows) -> Mat:
    if not isinstance(rows, list) or not rows:
        raise MatrixFormatError("expected a nonempty list of rows")
    try:
        return Mat.from_rows([[_parse_int(x) for x in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise MatrixFormatError(str(exc)) from None
