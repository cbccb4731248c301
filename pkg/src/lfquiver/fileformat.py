"""Representation files: TOML documents describing a field, a shape and the maps.

Grammar (every key is required unless marked optional)::

    field = "GF(5)" | "Q"
    seed = <int>                        # optional, default 0
    [[vertex]]    id = <int|str>   dim = <int >= 0>
    [[arrow]]     src = <id>   dst = <id>   matrix = [[<entry>, ...], ...]
                                        # matrix optional (zero map); rows = dim dst
    [[tail]]      attach = <id>
                  direction = "toward_infinity" | "toward_attach"
                  extension = "zero" | "stable"     # optional, default zero

Entries are integers, or ``"num/den"`` strings.  A ``0 x n`` or ``m x 0``
matrix is written ``[]`` or as ``m`` empty rows.  Unknown keys are errors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import QuiverError, ReprFileError, ReprSyntaxError, ReprValidationError
from .exactalg import FieldSpec, Matrix
from .quiver import QuiverShape, TailDecl
from .repn import ZERO, Representation

_TOP = {"field", "seed", "vertex", "arrow", "tail"}
_KEYS = {
    "vertex": ({"id", "dim"}, set()),
    "arrow": ({"src", "dst"}, {"matrix"}),
    "tail": ({"attach", "direction"}, {"extension"}),
}


@dataclass
class ReprFile:
    rep: Representation
    seed: int = 0


def _table_lines(text: str) -> dict:
    """Line numbers of each ``[[name]]`` header, in order."""
    out: dict = {}
    for no, line in enumerate(text.splitlines(), 1):
        m = re.match(r"\s*\[\[\s*(\w+)\s*\]\]", line)
        if m:
            out.setdefault(m.group(1), []).append(no)
    return out


def _key_line(text: str, key: str):
    for no, line in enumerate(text.splitlines(), 1):
        if re.match(rf"\s*{re.escape(key)}\s*=", line):
            return no
    return None


def _entry(fs: FieldSpec, x, where, line):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ReprValidationError(f"matrix entry {x!r} must be an integer or a 'num/den' string", line, where)
    try:
        if isinstance(x, str):
            x = Fraction(x)
        return fs.elem(x)
    except (ValueError, ZeroDivisionError) as e:
        raise ReprValidationError(f"bad matrix entry {x!r}: {e}", line, where) from None


def loads(text: str) -> ReprFile:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ReprSyntaxError(str(e), getattr(e, "lineno", None)) from None
    lines = _table_lines(text)
    extra = set(doc) - _TOP
    if extra:
        k = sorted(extra)[0]
        raise ReprValidationError("unknown key", _key_line(text, k), k)
    if "field" not in doc:
        raise ReprValidationError("missing field", None, "field")
    try:
        fs = FieldSpec.parse(str(doc["field"]))
    except ValueError as e:
        raise ReprValidationError(str(e), _key_line(text, "field"), "field") from None
    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ReprValidationError("seed must be an integer", _key_line(text, "seed"), "seed")
    tables = {}
    for name, (required, optional) in _KEYS.items():
        items = doc.get(name, [])
        if not isinstance(items, list):
            raise ReprValidationError(f"{name} must be an array of tables ([[{name}]])", _key_line(text, name), name)
        heads = lines.get(name, [])
        for i, item in enumerate(items):
            line = heads[i] if i < len(heads) else None
            missing = required - set(item)
            unknown = set(item) - required - optional
            if missing:
                raise ReprValidationError("missing key", line, f"{name}[{i}].{sorted(missing)[0]}")
            if unknown:
                raise ReprValidationError("unknown key", line, f"{name}[{i}].{sorted(unknown)[0]}")
        tables[name] = items
    vline = lines.get("vertex", [])
    ids, dims = [], {}
    for i, v in enumerate(tables["vertex"]):
        vid, d = v["id"], v["dim"]
        line = vline[i] if i < len(vline) else None
        if isinstance(vid, bool) or not isinstance(vid, (int, str)):
            raise ReprValidationError("vertex id must be an integer or a string", line, f"vertex[{i}].id")
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise ReprValidationError("dim must be a nonnegative integer", line, f"vertex[{i}].dim")
        if vid in dims:
            raise ReprValidationError(f"duplicate vertex {vid!r}", line, f"vertex[{i}].id")
        ids.append(vid)
        dims[vid] = d
    aline = lines.get("arrow", [])
    arrows, maps = [], {}
    for i, a in enumerate(tables["arrow"]):
        line = aline[i] if i < len(aline) else None
        src, dst = a["src"], a["dst"]
        for k, x in (("src", src), ("dst", dst)):
            if x not in dims:
                raise ReprValidationError(f"unknown vertex {x!r}", line, f"arrow[{i}].{k}")
        arrows.append((src, dst))
        if "matrix" in a:
            raw = a["matrix"]
            where = f"arrow[{i}].matrix"
            if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
                raise ReprValidationError("matrix must be a list of rows", line, where)
            rows, cols = dims[dst], dims[src]
            if raw == [] and (rows == 0 or cols == 0):
                raw = [[] for _ in range(rows)]
            if len(raw) != rows or any(len(r) != cols for r in raw):
                got = f"{len(raw)}x{len(raw[0]) if raw else 0}"
                raise ReprValidationError(f"ShapeMismatch: matrix is {got}, arrow {src!r}->{dst!r} needs {rows}x{cols}", line, where)
            data = tuple(tuple(_entry(fs, x, where, line) for x in r) for r in raw)
            maps[(src, dst)] = Matrix(fs, rows, cols, data)
    tline = lines.get("tail", [])
    tails, ext = [], []
    for i, t in enumerate(tables["tail"]):
        line = tline[i] if i < len(tline) else None
        if t["attach"] not in dims:
            raise ReprValidationError(f"unknown vertex {t['attach']!r}", line, f"tail[{i}].attach")
        try:
            tails.append(TailDecl(t["attach"], t["direction"]))
        except QuiverError as e:
            raise ReprValidationError(str(e), line, f"tail[{i}].direction") from None
        ext.append(t.get("extension", ZERO))
    try:
        shape = QuiverShape(tuple(ids), tuple(arrows), tuple(tails))
        rep = Representation.build(shape, fs, dims, maps, tuple(ext))
    except QuiverError as e:
        raise ReprValidationError(f"{type(e).__name__}: {e}") from None
    return ReprFile(rep, seed)


def parse(path) -> Representation:
    return load(path).rep


def load(path) -> ReprFile:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ReprFileError(f"cannot read {p}: {e.strerror}") from None
    return loads(text)


def _toml_value(x) -> str:
    if isinstance(x, str):
        return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return str(x)


def _toml_entry(fs: FieldSpec, x) -> str:
    if fs.p is None:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f'"{x}"'
    return str(x)


def dumps(rep: Representation, seed: int | None = None) -> str:
    """Serialize; ``loads(dumps(r))`` rebuilds the same data."""
    fs = rep.field
    out = [f'field = "{fs}"']
    if seed is not None:
        out.append(f"seed = {seed}")
    for v in rep.shape.vertices:
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise ReprFileError(f"vertex id {v!r} cannot be written; use integers or strings")
        out += ["", "[[vertex]]", f"id = {_toml_value(v)}", f"dim = {rep.dims[v]}"]
    for a in rep.shape.arrows:
        m = rep.maps[a]
        out += ["", "[[arrow]]", f"src = {_toml_value(a[0])}", f"dst = {_toml_value(a[1])}"]
        rows = ", ".join("[" + ", ".join(_toml_entry(fs, x) for x in row) + "]" for row in m.data)
        out.append(f"matrix = [{rows}]")
    for t, e in zip(rep.shape.tails, rep.tail_ext):
        out += ["", "[[tail]]", f"attach = {_toml_value(t.attach)}", f'direction = "{t.direction}"', f'extension = "{e}"']
    return "\n".join(out) + "\n"


def dump(rep: Representation, path, seed: int | None = None) -> None:
    Path(path).write_text(dumps(rep, seed))
