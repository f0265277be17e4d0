"""Text formats for codes and permutations.

Code file::

    # comment
    field p=2 m=2 poly=1,1,1
    label hermitian-1        (optional)
    meta kind=rm             (optional, repeatable)
    n 8
    k 3
    row 1 1 1 1 1 1 1 1
    ...

Permutation file: a single line ``perm 3 1 2 ...`` holding a 1-based
one-line image.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .codes import LinearCode
from .errors import CodeFileError, InsdelLabError
from .galois import FieldSpec


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise CodeFileError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _parse_field(rest: list[str], lineno: int) -> FieldSpec:
    opts = {}
    for tok in rest:
        key, sep, val = tok.partition("=")
        if not sep or key not in ("p", "m", "poly"):
            raise CodeFileError(f"line {lineno}: bad field option {tok!r}")
        opts[key] = val
    if "p" not in opts:
        raise CodeFileError(f"line {lineno}: field line needs p=")
    p = _parse_int(opts["p"], lineno)
    m = _parse_int(opts.get("m", "1"), lineno)
    poly = None
    if "poly" in opts:
        poly = tuple(_parse_int(c, lineno) for c in opts["poly"].split(","))
    try:
        return FieldSpec(p, m, poly)
    except InsdelLabError as exc:
        raise CodeFileError(f"line {lineno}: {exc}") from None


def parse_code(text: str) -> LinearCode:
    field = None
    n = k = None
    label = ""
    meta: dict[str, str] = {}
    rows: list[tuple[int, ...]] = []
    for lineno, line in _lines(text):
        head, *rest = line.split()
        if head == "field":
            if field is not None:
                raise CodeFileError(f"line {lineno}: duplicate field line")
            field = _parse_field(rest, lineno)
        elif head in ("n", "k"):
            if len(rest) != 1:
                raise CodeFileError(f"line {lineno}: {head} takes one value")
            value = _parse_int(rest[0], lineno)
            if head == "n":
                n = value
            else:
                k = value
        elif head == "label":
            label = " ".join(rest)
        elif head == "meta":
            for tok in rest:
                key, sep, val = tok.partition("=")
                if not sep:
                    raise CodeFileError(f"line {lineno}: meta entries are key=value")
                meta[key] = val
        elif head == "row":
            if field is None:
                raise CodeFileError(f"line {lineno}: row before field line")
            row = tuple(_parse_int(t, lineno) for t in rest)
            bad = [v for v in row if not 0 <= v < field.q]
            if bad:
                raise CodeFileError(f"line {lineno}: entries {bad} outside [0, {field.q})")
            rows.append(row)
        else:
            raise CodeFileError(f"line {lineno}: unknown keyword {head!r}")
    if field is None or n is None or k is None:
        raise CodeFileError("code file needs field, n and k lines")
    if len(rows) != k:
        raise CodeFileError(f"k = {k} but {len(rows)} rows given")
    if any(len(r) != n for r in rows):
        raise CodeFileError(f"every row must have n = {n} entries")
    try:
        return LinearCode.from_rows(field, rows, label=label, meta=meta, n=n)
    except InsdelLabError as exc:
        raise CodeFileError(str(exc)) from None


def format_code(code: LinearCode) -> str:
    out = [code.field.header()]
    if code.label:
        out.append(f"label {code.label}")
    for key, val in code.meta:
        out.append(f"meta {key}={val}")
    out.append(f"n {code.n}")
    out.append(f"k {code.k}")
    out.extend("row " + " ".join(map(str, row)) for row in code.G.to_rows())
    return "\n".join(out) + "\n"


def read_code(path: str | Path) -> LinearCode:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CodeFileError(f"cannot read {path}: {exc}") from None
    return parse_code(text)


def write_code(code: LinearCode, path: str | Path) -> None:
    Path(path).write_text(format_code(code))


def parse_perm(text: str) -> tuple[int, ...]:
    """0-based permutation from a ``perm`` line of 1-based images."""
    found = None
    for lineno, line in _lines(text):
        head, *rest = line.split()
        if head != "perm" or found is not None:
            raise CodeFileError(f"line {lineno}: expected a single perm line")
        found = tuple(_parse_int(t, lineno) - 1 for t in rest)
    if found is None:
        raise CodeFileError("no perm line found")
    if sorted(found) != list(range(len(found))):
        raise CodeFileError("perm is not a permutation of 1..n")
    return found


def format_perm(perm: Sequence[int]) -> str:
    return "perm " + " ".join(str(p + 1) for p in perm) + "\n"


def read_perm(path: str | Path) -> tuple[int, ...]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CodeFileError(f"cannot read {path}: {exc}") from None
    return parse_perm(text)
