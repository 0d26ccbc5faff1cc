"""Canonical exchange documents.

A document is a JSON object ``{"header": {"format_version": "1", "kind": K}, "body": ...}``.
The writer sorts keys, puts one key per line and keeps arrays of scalars on a
single line, so documents are byte-stable and diff cleanly.
"""
from __future__ import annotations

import dataclasses
import json
from typing import Any

from .errors import StructuralError
from .groupoid import Bibundle, FiniteGroupoid
from .simplicial import SimplicialMap, TruncatedSimplicialSet
from .stacky import StackyGroupoidData, product_groupoid
from .two_gpd import TwoGroupoidData

FORMAT_VERSION = "1"
KINDS = ("simplicial", "groupoid", "bibundle", "two_groupoid", "stacky", "certificate", "map", "span")


class ExchangeError(StructuralError):
    """A document that does not parse or does not fit its declared kind."""


# ---------------------------------------------------------------------------
# canonical text

def _scalar(v) -> bool:
    return v is None or isinstance(v, (bool, int, float, str))


def _dump(v, indent: int, out: list[str]) -> None:
    pad = " " * indent
    if _scalar(v):
        out.append(json.dumps(v))
    elif isinstance(v, list):
        if all(_scalar(x) for x in v):
            out.append("[" + ",".join(json.dumps(x) for x in v) + "]")
            return
        out.append("[\n")
        for k, x in enumerate(v):
            out.append(pad + " ")
            _dump(x, indent + 1, out)
            out.append(",\n" if k + 1 < len(v) else "\n")
        out.append(pad + "]")
    elif isinstance(v, dict):
        if not v:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(v)
        for k, key in enumerate(keys):
            out.append(pad + " " + json.dumps(key) + ": ")
            _dump(v[key], indent + 1, out)
            out.append(",\n" if k + 1 < len(keys) else "\n")
        out.append(pad + "}")
    else:
        raise TypeError(f"not serializable: {type(v).__name__}")


def dumps(doc: dict) -> str:
    out: list[str] = []
    _dump(jsonable(doc), 0, out)
    return "".join(out) + "\n"


def jsonable(obj) -> Any:
    """Plain JSON data for witnesses: dataclasses become objects, tuples lists."""
    if _scalar(obj):
        return obj
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
                if f.compare or f.repr}
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: jsonable(v) for k, v in obj.items()}
        return [[jsonable(k), jsonable(v)] for k, v in sorted(obj.items(), key=lambda kv: repr(kv[0]))]
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=repr)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, range):
        return list(obj)
    return repr(obj)


def document(kind: str, body) -> dict:
    if kind not in KINDS:
        raise ExchangeError(f"unknown kind {kind!r}")
    return {"header": {"format_version": FORMAT_VERSION, "kind": kind}, "body": body}


def parse(text: str) -> tuple[str, Any]:
    """Header-checked ``(kind, body)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExchangeError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "header" not in doc or "body" not in doc:
        raise ExchangeError("field 'header'/'body': missing")
    h = doc["header"]
    if not isinstance(h, dict) or h.get("format_version") != FORMAT_VERSION:
        raise ExchangeError(f"field 'header.format_version': expected {FORMAT_VERSION!r}")
    if h.get("kind") not in KINDS:
        raise ExchangeError(f"field 'header.kind': unknown kind {h.get('kind')!r}")
    return h["kind"], doc["body"]


def read(path: str) -> tuple[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ExchangeError(f"{path}: {exc.strerror}") from None
    return parse(text)


def write(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


# ---------------------------------------------------------------------------
# field access with path diagnostics

def _get(body, key: str, path: str):
    if not isinstance(body, dict) or key not in body:
        raise ExchangeError(f"field '{path}{key}': missing")
    return body[key]


def _int(v, path: str, bound: int | None = None) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or v < 0 or (bound is not None and v >= bound):
        raise ExchangeError(f"field '{path}': expected an index below {bound}, got {v!r}")
    return v


def _ints(v, path: str, length: int | None = None, bound: int | None = None) -> tuple[int, ...]:
    if not isinstance(v, list) or (length is not None and len(v) != length):
        raise ExchangeError(f"field '{path}': expected a list of length {length}")
    return tuple(_int(x, f"{path}[{k}]", bound) for k, x in enumerate(v))


def _rows(v, path: str, width: int) -> tuple[tuple[int, ...], ...]:
    if not isinstance(v, list):
        raise ExchangeError(f"field '{path}': expected a list of rows")
    return tuple(_ints(r, f"{path}[{k}]", width) for k, r in enumerate(v))


def _wrap(fn, *args):
    try:
        return fn(*args)
    except ExchangeError:
        raise
    except StructuralError as exc:
        raise ExchangeError(str(exc)) from None


# ---------------------------------------------------------------------------
# simplicial sets and maps

def simplicial_body(X: TruncatedSimplicialSet) -> dict:
    return {"sizes": list(X.sizes), "faces": [[list(d) for d in lv] for lv in X.faces],
            "degens": [[list(s) for s in lv] for lv in X.degens]}


def simplicial_from_body(b, path: str = "body.") -> TruncatedSimplicialSet:
    sizes = _ints(_get(b, "sizes", path), path + "sizes")
    faces = _get(b, "faces", path)
    degens = _get(b, "degens", path)
    if not isinstance(faces, list) or not isinstance(degens, list):
        raise ExchangeError(f"field '{path}faces'/'{path}degens': expected lists")
    F = tuple(tuple(_ints(d, f"{path}faces[{n}][{i}]") for i, d in enumerate(lv)) for n, lv in enumerate(faces))
    S = tuple(tuple(_ints(s, f"{path}degens[{n}][{i}]") for i, s in enumerate(lv)) for n, lv in enumerate(degens))
    return _wrap(TruncatedSimplicialSet, sizes, F, S)


def map_body(f: SimplicialMap) -> dict:
    return {"levels": [list(l) for l in f.levels]}


def map_from_body(b, Z: TruncatedSimplicialSet, X: TruncatedSimplicialSet, path: str = "body.") -> SimplicialMap:
    levels = _get(b, "levels", path)
    if not isinstance(levels, list) or len(levels) != min(Z.trunc_dim, X.trunc_dim) + 1:
        raise ExchangeError(f"field '{path}levels': expected one map per common level")
    return SimplicialMap(Z, X, tuple(_ints(l, f"{path}levels[{n}]", Z.sizes[n], X.sizes[n])
                                     for n, l in enumerate(levels)))


# ---------------------------------------------------------------------------
# groupoids and bibundles

def groupoid_body(G: FiniteGroupoid) -> dict:
    return {"n_obj": G.n_obj, "src": list(G.src), "tgt": list(G.tgt), "unit": list(G.unit),
            "inv": list(G.inv), "comp": [list(r) for r in G.comp]}


def groupoid_from_body(b, path: str = "body.") -> FiniteGroupoid:
    n_obj = _int(_get(b, "n_obj", path), path + "n_obj")
    src = _ints(_get(b, "src", path), path + "src", None, n_obj)
    n = len(src)
    return FiniteGroupoid(n_obj, src, _ints(_get(b, "tgt", path), path + "tgt", n, n_obj),
                          _ints(_get(b, "unit", path), path + "unit", n_obj, n),
                          _ints(_get(b, "inv", path), path + "inv", n, n),
                          tuple(_ints(r, f"{path}comp[{k}]", 3, n)
                                for k, r in enumerate(_get(b, "comp", path))))


def _bibundle_core(E: Bibundle) -> dict:
    return {"size": E.size, "J_l": list(E.J_l), "J_r": list(E.J_r),
            "left_action": [list(r) for r in E.left_action], "right_action": [list(r) for r in E.right_action]}


def bibundle_body(E: Bibundle) -> dict:
    return {"left": groupoid_body(E.left), "right": groupoid_body(E.right), **_bibundle_core(E)}


def _bibundle_from_core(b, K: FiniteGroupoid, K2: FiniteGroupoid, path: str) -> Bibundle:
    size = _int(_get(b, "size", path), path + "size")
    return Bibundle(K, K2, size, _ints(_get(b, "J_l", path), path + "J_l", size, K.n_obj),
                    _ints(_get(b, "J_r", path), path + "J_r", size, K2.n_obj),
                    _rows(_get(b, "left_action", path), path + "left_action", 3),
                    _rows(_get(b, "right_action", path), path + "right_action", 3))


def bibundle_from_body(b, path: str = "body.") -> Bibundle:
    K = groupoid_from_body(_get(b, "left", path), path + "left.")
    K2 = groupoid_from_body(_get(b, "right", path), path + "right.")
    return _bibundle_from_core(b, K, K2, path)


# ---------------------------------------------------------------------------
# 2-groupoids and stacky data

def two_groupoid_body(D: TwoGroupoidData) -> dict:
    return {"sizes": list(D.sizes), "d1": [list(x) for x in D.d1], "s0": list(D.s0),
            "d2": [list(x) for x in D.d2], "s1": [list(x) for x in D.s1],
            "m": [[list(r) for r in t] for t in D.m]}


def two_groupoid_from_body(b, path: str = "body.") -> TwoGroupoidData:
    sizes = _ints(_get(b, "sizes", path), path + "sizes", 3)
    n0, n1, n2 = sizes
    d1 = tuple(_ints(x, f"{path}d1[{i}]", n1, n0) for i, x in enumerate(_get(b, "d1", path)))
    d2 = tuple(_ints(x, f"{path}d2[{i}]", n2, n1) for i, x in enumerate(_get(b, "d2", path)))
    s1 = tuple(_ints(x, f"{path}s1[{i}]", n1, n2) for i, x in enumerate(_get(b, "s1", path)))
    if (len(d1), len(d2), len(s1)) != (2, 3, 2):
        raise ExchangeError(f"field '{path}d1/d2/s1': wrong number of maps")
    m = _get(b, "m", path)
    if not isinstance(m, list) or len(m) != 4:
        raise ExchangeError(f"field '{path}m': expected four tables")
    tables = tuple(tuple(_ints(r, f"{path}m[{i}][{k}]", 4, n2) for k, r in enumerate(t)) for i, t in enumerate(m))
    return TwoGroupoidData(sizes, d1, _ints(_get(b, "s0", path), path + "s0", n0, n1), d2, s1, tables)


def stacky_body(S: StackyGroupoidData) -> dict:
    return {"G": groupoid_body(S.G), "M": S.M, "s": list(S.s), "t": list(S.t), "e": list(S.e),
            "E": _bibundle_core(S.E), "a": [list(r) for r in S.a],
            "b_l": [list(r) for r in S.b_l], "b_r": [list(r) for r in S.b_r]}


def stacky_from_body(b, path: str = "body.") -> StackyGroupoidData:
    G = groupoid_from_body(_get(b, "G", path), path + "G.")
    M = _int(_get(b, "M", path), path + "M")
    s = _ints(_get(b, "s", path), path + "s", G.n_obj, M)
    t = _ints(_get(b, "t", path), path + "t", G.n_obj, M)
    e = _ints(_get(b, "e", path), path + "e", M, G.n_obj)
    P = _wrap(product_groupoid, G, s, t)
    E = _bibundle_from_core(_get(b, "E", path), P, G, path + "E.")
    return StackyGroupoidData(G, M, s, t, e, E, _rows(_get(b, "a", path), path + "a", 4),
                              _rows(_get(b, "b_l", path), path + "b_l", 2),
                              _rows(_get(b, "b_r", path), path + "b_r", 2))


BODY_WRITERS = {
    TruncatedSimplicialSet: ("simplicial", simplicial_body),
    FiniteGroupoid: ("groupoid", groupoid_body),
    Bibundle: ("bibundle", bibundle_body),
    TwoGroupoidData: ("two_groupoid", two_groupoid_body),
    StackyGroupoidData: ("stacky", stacky_body),
}

BODY_READERS = {
    "simplicial": simplicial_from_body,
    "groupoid": groupoid_from_body,
    "bibundle": bibundle_from_body,
    "two_groupoid": two_groupoid_from_body,
    "stacky": stacky_from_body,
}


def to_document(obj) -> dict:
    kind, fn = BODY_WRITERS[type(obj)]
    return document(kind, fn(obj))


def from_document(kind: str, body):
    if kind not in BODY_READERS:
        raise ExchangeError(f"kind {kind!r} has no object reader")
    return BODY_READERS[kind](body)


def load(path: str, expect: str | None = None):
    kind, body = read(path)
    if expect is not None and kind != expect:
        raise ExchangeError(f"field 'header.kind': expected {expect!r}, got {kind!r}")
    return kind, from_document(kind, body)


def certificate(command: str, verdict: str, **fields) -> dict:
    return document("certificate", {"command": command, "verdict": verdict, **fields})
