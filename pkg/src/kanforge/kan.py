"""Kan horn conditions and n-groupoid classification.

A map out of the horn Lambda[m,j] is stored as the tuple of its faces
``(y_k)_{k != j}`` in level ``m-1`` (for ``m = 1`` a single vertex).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import StructuralError
from .simplicial import TruncatedSimplicialSet, compatible_families, hom_set, horn

HornTuple = tuple[int, ...]


def horn_maps(X: TruncatedSimplicialSet, m: int, j: int) -> list[HornTuple]:
    """``hom(Lambda[m,j], X)`` as glued face tuples, lexicographically."""
    if not (m >= 1 and 0 <= j <= m):
        raise StructuralError(f"no horn Lambda[{m},{j}]")
    X.require_dim(m - 1)
    pos = [k for k in range(m + 1) if k != j]
    return list(compatible_families(X, m, pos, f"hom(Lambda[{m},{j}], X)"))


def horn_restriction(X: TruncatedSimplicialSet, m: int, j: int, x: int) -> HornTuple:
    return tuple(X.faces[m][k][x] for k in range(m + 1) if k != j)


def restriction_fibers(X: TruncatedSimplicialSet, m: int, j: int) -> dict[HornTuple, list[int]]:
    """Fibre of ``hom(Delta[m], X) -> hom(Lambda[m,j], X)`` over every horn."""
    X.require_dim(m)
    fibers: dict[HornTuple, list[int]] = {h: [] for h in horn_maps(X, m, j)}
    for x in range(X.sizes[m]):
        h = horn_restriction(X, m, j, x)
        if h not in fibers:  # a face tuple that is not a horn: the identities are broken
            raise StructuralError(f"restriction of simplex {x} is not a horn map")
        fibers[h].append(x)
    return fibers


def fill_horn(X: TruncatedSimplicialSet, m: int, j: int, h: HornTuple) -> list[int]:
    """All fillers of the horn ``h``."""
    X.require_dim(m)
    pos = tuple(k for k in range(m + 1) if k != j)
    if len(h) != len(pos):
        raise StructuralError(f"a Lambda[{m},{j}] horn has {len(pos)} faces")
    return list(X.face_index(m, pos).get(tuple(h), ()))


@dataclass(frozen=True)
class HornStatus:
    m: int
    j: int
    kan: bool
    unique: bool
    horns: int
    fillers: int
    empty_witness: HornTuple | None = None
    multiple_witness: tuple[HornTuple, tuple[int, ...]] | None = None

    @property
    def status(self) -> str:
        return "iso" if self.unique else ("cover" if self.kan else "fail")


def horn_status(X: TruncatedSimplicialSet, m: int, j: int) -> HornStatus:
    fibers = restriction_fibers(X, m, j)
    empty = next((h for h, f in fibers.items() if not f), None)
    multi = next(((h, tuple(f)) for h, f in fibers.items() if len(f) > 1), None)
    return HornStatus(m, j, empty is None, empty is None and multi is None,
                      len(fibers), X.sizes[m], empty, multi)


def kan_condition(X: TruncatedSimplicialSet, m: int, j: int) -> bool:
    return horn_status(X, m, j).kan


def unique_kan_condition(X: TruncatedSimplicialSet, m: int, j: int) -> bool:
    return horn_status(X, m, j).unique


@dataclass(frozen=True)
class Classification:
    """Outcome of :func:`classify_n_groupoid`.

    ``n`` is the least level with unique fillers above it, valid only through
    ``checked_dim``; it is ``None`` when some horn has no filler.
    """

    n: int | None
    checked_dim: int
    report: dict = field(repr=False)
    failure: HornStatus | None = None

    def __str__(self) -> str:
        if self.n is None:
            f = self.failure
            return f"not Kan: Lambda[{f.m},{f.j}] horn {f.empty_witness} has no filler"
        return f"n = {self.n} up to dim {self.checked_dim}"


def classify_n_groupoid(X: TruncatedSimplicialSet, up_to_dim: int | None = None) -> Classification:
    D = X.trunc_dim if up_to_dim is None else up_to_dim
    X.require_dim(D)
    report: dict[tuple[int, int], HornStatus] = {}
    failure = None
    n = 0
    for m in range(1, D + 1):
        for j in range(m + 1):
            st = horn_status(X, m, j)
            report[(m, j)] = st
            if not st.kan and failure is None:
                failure = st
            if not st.unique:
                n = max(n, m)
    return Classification(None if failure else n, D, report, failure)


def is_n_groupoid(X: TruncatedSimplicialSet, n: int, up_to_dim: int | None = None) -> bool:
    c = classify_n_groupoid(X, up_to_dim)
    return c.n is not None and c.n <= n


def horn_maps_via_shape(X: TruncatedSimplicialSet, m: int, j: int) -> list[tuple[int, ...]]:
    """Second enumeration of horn maps through the generic shape hom-set.

    Returns the same face tuples as :func:`horn_maps`; used as a cross-check.
    """
    H = horn(m, j)
    tops = [tuple(v for v in range(m + 1) if v != k) for k in range(m + 1) if k != j]
    pos = [H.position[t] for t in tops]
    return sorted(tuple(a[p] for p in pos) for a in hom_set(H, X))
