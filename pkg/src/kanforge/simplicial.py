"""Finite truncated simplicial sets, standard shapes and hom-sets.

Levels are dense index sets ``0..size-1``; faces and degeneracies are index
tuples. Everything is enumerated in lexicographic order so results are
reproducible byte for byte.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Sequence

from .errors import Counter, DimensionError, StructuralError


# ---------------------------------------------------------------------------
# truncated simplicial sets

@dataclass(frozen=True)
class TruncatedSimplicialSet:
    """Levels ``0..N`` of a simplicial set.

    ``faces[n][i]`` maps level ``n`` to level ``n-1`` (``faces[0]`` is empty) and
    ``degens[n][i]`` maps level ``n`` to level ``n+1`` (``degens[N]`` is empty).
    ``labels`` optionally names elements; it never takes part in equality.
    """

    sizes: tuple[int, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    degens: tuple[tuple[tuple[int, ...], ...], ...]
    labels: tuple[tuple, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        N = len(self.sizes) - 1
        if N < 0:
            raise StructuralError("a simplicial set needs at least level 0")
        if len(self.faces) != N + 1 or len(self.degens) != N + 1:
            raise StructuralError("faces/degens must have one entry per level")
        for n in range(N + 1):
            nf = n + 1 if n >= 1 else 0
            if len(self.faces[n]) != nf:
                raise StructuralError(f"level {n} needs {nf} face maps, got {len(self.faces[n])}")
            for i, d in enumerate(self.faces[n]):
                _check_map(d, self.sizes[n], self.sizes[n - 1], f"d^{n}_{i}")
            nd = n + 1 if n < N else 0
            if len(self.degens[n]) != nd:
                raise StructuralError(f"level {n} needs {nd} degeneracy maps, got {len(self.degens[n])}")
            for i, s in enumerate(self.degens[n]):
                _check_map(s, self.sizes[n], self.sizes[n + 1], f"s^{n}_{i}")
        if self.labels is not None and [len(l) for l in self.labels] != list(self.sizes):
            raise StructuralError("labels do not match level sizes")

    @property
    def trunc_dim(self) -> int:
        return len(self.sizes) - 1

    def d(self, n: int, i: int, x: int) -> int:
        return self.faces[n][i][x]

    def s(self, n: int, i: int, x: int) -> int:
        return self.degens[n][i][x]

    def require_dim(self, n: int) -> None:
        if n > self.trunc_dim:
            raise DimensionError(f"level {n} requested but data is truncated at {self.trunc_dim}")

    @cached_property
    def _face_tuples(self) -> dict:
        return {}

    def face_tuples(self, n: int) -> list[tuple[int, ...]]:
        """``(d_0 x, ..., d_n x)`` for every ``x`` in level ``n``."""
        self.require_dim(n)
        cache = self._face_tuples
        if n not in cache:
            if n == 0:
                cache[n] = [()] * self.sizes[0]
            else:
                cache[n] = list(zip(*self.faces[n]))
        return cache[n]

    @cached_property
    def _indices(self) -> dict:
        return {}

    def face_index(self, n: int, positions: tuple[int, ...]) -> dict[tuple, list[int]]:
        """Group level ``n`` by the faces at ``positions``; buckets are sorted."""
        key = (n, positions)
        cache = self._indices
        if key not in cache:
            idx: dict[tuple, list[int]] = {}
            ft = self.face_tuples(n)
            for x in range(self.sizes[n]):
                idx.setdefault(tuple(ft[x][p] for p in positions), []).append(x)
            cache[key] = idx
        return cache[key]

    def boundary_index(self, n: int) -> dict[tuple, list[int]]:
        return self.face_index(n, tuple(range(n + 1)))

    def sub_face(self, n: int, x: int, vertices: Sequence[int]) -> int:
        """The face of ``x`` spanned by the sorted vertex subset ``vertices``."""
        keep = set(vertices)
        for i in range(n, -1, -1):
            if i not in keep:
                x = self.faces[n][i][x]
                n -= 1
        return x

    def degenerate(self, k: int, x: int, f: Sequence[int]) -> int:
        """Pull ``x`` in level ``k`` back along a monotone surjection ``f: [n] -> [k]``."""
        cur = k
        for i in range(len(f) - 1):
            if f[i] == f[i + 1]:
                x = self.degens[cur][i][x]
                cur += 1
        return x

    def truncate(self, N: int) -> "TruncatedSimplicialSet":
        self.require_dim(N)
        faces = self.faces[: N + 1]
        degens = self.degens[:N] + ((),)
        labels = None if self.labels is None else self.labels[: N + 1]
        return TruncatedSimplicialSet(self.sizes[: N + 1], faces, degens, labels)

    def is_degenerate(self, n: int, x: int) -> bool:
        if n == 0:
            return False
        return any(self.degens[n - 1][i][self.faces[n][i][x]] == x for i in range(n))


def _check_map(arr, n_src: int, n_tgt: int, name: str) -> None:
    if len(arr) != n_src:
        raise StructuralError(f"{name} has length {len(arr)}, expected {n_src}")
    for v in arr:
        if not (isinstance(v, int) and 0 <= v < n_tgt):
            raise StructuralError(f"{name} has out-of-range value {v!r}")


def from_labelled(levels: Sequence[Sequence], face: Callable, degen: Callable) -> TruncatedSimplicialSet:
    """Build a simplicial set from labelled levels.

    ``face(n, i, label)`` and ``degen(n, i, label)`` return labels; levels are
    sorted so indices follow label order.
    """
    levels = [sorted(l) for l in levels]
    index = [{lab: k for k, lab in enumerate(l)} for l in levels]
    N = len(levels) - 1
    faces, degens = [], []
    for n in range(N + 1):
        if n == 0:
            faces.append(())
        else:
            faces.append(tuple(tuple(_lookup(index[n - 1], face(n, i, lab), n - 1) for lab in levels[n])
                               for i in range(n + 1)))
        if n == N:
            degens.append(())
        else:
            degens.append(tuple(tuple(_lookup(index[n + 1], degen(n, i, lab), n + 1) for lab in levels[n])
                                for i in range(n + 1)))
    return TruncatedSimplicialSet(tuple(len(l) for l in levels), tuple(faces), tuple(degens),
                                  tuple(tuple(l) for l in levels))


def _lookup(index: dict, lab, n: int) -> int:
    try:
        return index[lab]
    except KeyError:
        raise StructuralError(f"label {lab!r} is not an element of level {n}") from None


# ---------------------------------------------------------------------------
# simplicial identities

@dataclass(frozen=True)
class IdentityViolation:
    identity: str
    level: int
    i: int
    j: int
    element: int
    lhs: int
    rhs: int


def check_simplicial_identities(X: TruncatedSimplicialSet) -> list[IdentityViolation]:
    """Every instance of the five simplicial identities inside the truncation."""
    N = X.trunc_dim
    F, S = X.faces, X.degens
    out: list[IdentityViolation] = []

    def note(name, level, i, j, x, a, b):
        if a != b:
            out.append(IdentityViolation(name, level, i, j, x, a, b))

    # d_i d_j = d_{j-1} d_i  (i < j), on level n
    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                for x in range(X.sizes[n]):
                    note("d_i d_j = d_{j-1} d_i", n, i, j, x, F[n - 1][i][F[n][j][x]], F[n - 1][j - 1][F[n][i][x]])
    # s_i s_j = s_{j+1} s_i  (i <= j), on level n
    for n in range(0, N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for x in range(X.sizes[n]):
                    note("s_i s_j = s_{j+1} s_i", n, i, j, x, S[n + 1][i][S[n][j][x]], S[n + 1][j + 1][S[n][i][x]])
    # face of degeneracy, on level n (s_j: n -> n+1, d_i: n+1 -> n)
    for n in range(0, N):
        for j in range(n + 1):
            for i in range(n + 2):
                for x in range(X.sizes[n]):
                    lhs = F[n + 1][i][S[n][j][x]]
                    if i < j:
                        note("d_i s_j = s_{j-1} d_i", n, i, j, x, lhs, S[n - 1][j - 1][F[n][i][x]])
                    elif i == j or i == j + 1:
                        note("d_j s_j = id = d_{j+1} s_j", n, i, j, x, lhs, x)
                    else:
                        note("d_i s_j = s_j d_{i-1}", n, i, j, x, lhs, S[n - 1][j][F[n][i - 1][x]])
    return out


# ---------------------------------------------------------------------------
# shapes: sub-simplicial sets of a standard simplex

def monotone_maps(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Monotone maps ``[n] -> [m]`` in lexicographic order."""
    return itertools.combinations_with_replacement(range(m + 1), n + 1)


@dataclass(frozen=True)
class Shape:
    """A sub-simplicial set of Delta[m] given by its nondegenerate simplices.

    ``simplices`` is downward closed and sorted by (dimension, lexicographic).
    ``kind`` is ``simplex``, ``horn``, ``boundary`` or ``custom``.
    """

    kind: str
    m: int
    j: int | None
    simplices: tuple[tuple[int, ...], ...]

    @cached_property
    def position(self) -> dict[tuple[int, ...], int]:
        return {s: k for k, s in enumerate(self.simplices)}

    @cached_property
    def face_positions(self) -> tuple[tuple[int, ...], ...]:
        pos = self.position
        return tuple(tuple(pos[s[:i] + s[i + 1:]] for i in range(len(s))) if len(s) > 1 else ()
                     for s in self.simplices)

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def contains(self, image: Sequence[int]) -> bool:
        """Membership rule for a monotone map with the given image."""
        img = set(image)
        if self.kind == "simplex":
            return True
        if self.kind == "horn":
            return not set(range(self.m + 1)) - {self.j} <= img
        if self.kind == "boundary":
            return img != set(range(self.m + 1))
        return tuple(sorted(img)) in self.position

    def level(self, n: int) -> list[tuple[int, ...]]:
        """Level ``n`` as monotone maps ``[n] -> [m]``."""
        return [f for f in monotone_maps(n, self.m) if self.contains(f)]

    def to_simplicial(self, N: int) -> TruncatedSimplicialSet:
        """Materialise levels ``0..N`` (faces drop a position, degeneracies repeat one)."""
        levels = [self.level(n) for n in range(N + 1)]
        return from_labelled(levels,
                             lambda n, i, f: f[:i] + f[i + 1:],
                             lambda n, i, f: f[:i + 1] + f[i:])

    def restriction_positions(self, sub: "Shape") -> tuple[int, ...]:
        """Positions in ``self.simplices`` of the simplices of ``sub``."""
        pos = self.position
        try:
            return tuple(pos[s] for s in sub.simplices)
        except KeyError as exc:
            raise StructuralError(f"simplex {exc.args[0]} of the subshape is missing") from None


def _closure(generators) -> tuple[tuple[int, ...], ...]:
    out = set()
    for g in generators:
        g = tuple(sorted(set(g)))
        for r in range(1, len(g) + 1):
            out.update(itertools.combinations(g, r))
    return tuple(sorted(out, key=lambda s: (len(s), s)))


def simplex(m: int) -> Shape:
    return Shape("simplex", m, None, _closure([range(m + 1)]))


def horn(m: int, j: int) -> Shape:
    if not (m >= 1 and 0 <= j <= m):
        raise StructuralError(f"no horn Lambda[{m},{j}]")
    gens = [tuple(v for v in range(m + 1) if v != k) for k in range(m + 1) if k != j]
    return Shape("horn", m, j, _closure(gens))


def boundary(m: int) -> Shape:
    if m == 0:
        return Shape("boundary", 0, None, ())
    gens = [tuple(v for v in range(m + 1) if v != k) for k in range(m + 1)]
    return Shape("boundary", m, None, _closure(gens))


def custom(m: int, generators) -> Shape:
    gens = [tuple(g) for g in generators]
    for g in gens:
        if any(not 0 <= v <= m for v in g):
            raise StructuralError(f"generator {g} does not lie in Delta[{m}]")
    return Shape("custom", m, None, _closure(gens))


def star2(m: int, j: int) -> Shape:
    """The 2-dimensional simplices of Delta[m] that contain vertex ``j``, with their faces."""
    gens = [t for t in itertools.combinations(range(m + 1), 3) if j in t]
    return custom(m, gens)


def skeleton2(m: int) -> Shape:
    """All simplices of Delta[m] of dimension at most 2."""
    return custom(m, [t for t in itertools.combinations(range(m + 1), min(3, m + 1))])


# ---------------------------------------------------------------------------
# hom-sets out of shapes

Assignment = tuple[int, ...]
"""A map from a shape: one element of ``X`` per nondegenerate simplex, in shape order."""


def hom_set(S: Shape, X: TruncatedSimplicialSet, lift: tuple | None = None) -> Iterator[Assignment]:
    """Enumerate simplicial maps ``S -> X`` in lexicographic order.

    With ``lift=(f, w)`` only maps ``u`` with ``f o u = w`` are produced, where
    ``f`` is a :class:`SimplicialMap` out of ``X`` and ``w`` an assignment of
    ``S`` in the target of ``f``.
    """
    if S.dim > X.trunc_dim:
        raise DimensionError(f"shape of dimension {S.dim} but data truncated at {X.trunc_dim}")
    simps = S.simplices
    fpos = S.face_positions
    counter = Counter(f"hom({S.kind}[{S.m}], X)")
    k = len(simps)
    assign = [0] * k
    level0 = range(X.sizes[0]) if X.sizes else range(0)

    def candidates(p: int):
        dim = len(simps[p]) - 1
        if dim == 0:
            cands = level0
        else:
            key = tuple(assign[q] for q in fpos[p])
            cands = X.boundary_index(dim).get(key, ())
        if lift is not None:
            f, w = lift
            lv = f.levels[dim]
            target = w[p]
            return [c for c in cands if lv[c] == target]
        return cands

    def rec(p: int):
        if p == k:
            counter.tick()
            yield tuple(assign)
            return
        for c in candidates(p):
            assign[p] = c
            yield from rec(p + 1)

    yield from rec(0)


def restrict(S: Shape, sub: Shape, a: Assignment) -> Assignment:
    return tuple(a[p] for p in S.restriction_positions(sub))


def assignment_of(X: TruncatedSimplicialSet, S: Shape, n: int, x: int) -> Assignment:
    """Restriction of ``x`` in ``X_n`` (a map ``Delta[n] -> X``) to ``S`` inside Delta[n]."""
    if S.m != n:
        raise StructuralError("shape and simplex dimension differ")
    return tuple(X.sub_face(n, x, s) for s in S.simplices)


def evaluate(S: Shape, X: TruncatedSimplicialSet, a: Assignment, f: Sequence[int]) -> int:
    """Value of a map ``S -> X`` on the (possibly degenerate) simplex ``f`` of ``S``."""
    image = tuple(sorted(set(f)))
    k = len(image) - 1
    x = a[S.position[image]]
    surj = [image.index(v) for v in f]
    return X.degenerate(k, x, surj)


def compatible_families(X: TruncatedSimplicialSet, k: int, positions: Sequence[int],
                        what: str = "compatible families") -> Iterator[tuple[int, ...]]:
    """Tuples ``(y_p)`` of level ``k-1`` with ``d_p y_q = d_{q-1} y_p`` for ``p < q``.

    With all positions ``0..k`` these are maps from the boundary of Delta[k];
    omitting ``j`` gives maps from the horn Lambda[k,j].
    """
    X.require_dim(k - 1)
    positions = tuple(positions)
    counter = Counter(what)
    n = k - 1
    ft = X.face_tuples(n) if n >= 1 else None
    # breadth-first extension; the output stays lexicographic
    partial: list[tuple[int, ...]] = [()]
    for t, q in enumerate(positions):
        if n == 0 or t == 0:
            partial = [c + (y,) for c in partial for y in range(X.sizes[n])]
            continue
        index = X.face_index(n, positions[:t])
        partial = [c + (y,) for c in partial
                   for y in index.get(tuple(ft[c[s]][q - 1] for s in range(t)), ())]
    for c in partial:
        counter.tick()
        yield c


# ---------------------------------------------------------------------------
# maps

@dataclass(frozen=True)
class SimplicialMap:
    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    levels: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.levels) - 1

    def __call__(self, n: int, x: int) -> int:
        return self.levels[n][x]


def check_simplicial_map(f: SimplicialMap) -> list[tuple]:
    """Violations of commutation with faces and degeneracies, as tuples."""
    X, Y, L = f.source, f.target, f.levels
    N = f.dim
    if N > min(X.trunc_dim, Y.trunc_dim):
        raise DimensionError("map defined beyond the truncation of its source or target")
    out = []
    for n in range(N + 1):
        _check_map(L[n], X.sizes[n], Y.sizes[n], f"f_{n}")
    for n in range(1, N + 1):
        for i in range(n + 1):
            for x in range(X.sizes[n]):
                if L[n - 1][X.faces[n][i][x]] != Y.faces[n][i][L[n][x]]:
                    out.append(("face", n, i, x))
    for n in range(N):
        for i in range(n + 1):
            for x in range(X.sizes[n]):
                if L[n + 1][X.degens[n][i][x]] != Y.degens[n][i][L[n][x]]:
                    out.append(("degeneracy", n, i, x))
    return out


def identity_map(X: TruncatedSimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, tuple(tuple(range(s)) for s in X.sizes))


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """``g o f``."""
    N = min(f.dim, g.dim)
    return SimplicialMap(f.source, g.target,
                         tuple(tuple(g.levels[n][v] for v in f.levels[n]) for n in range(N + 1)))


def is_isomorphism(f: SimplicialMap) -> bool:
    return not check_simplicial_map(f) and all(
        len(set(lv)) == len(lv) == f.target.sizes[n] for n, lv in enumerate(f.levels))


def extend_map(X: TruncatedSimplicialSet, Y: TruncatedSimplicialSet, low: Sequence[Sequence[int]],
               up_to: int) -> SimplicialMap | None:
    """Extend levels ``0..k`` of a map upward by matching face tuples.

    Needs ``Y`` to be determined by faces above ``k`` (for instance an
    n-groupoid with ``k > n``). Returns ``None`` if some simplex has no image
    or more than one candidate image.
    """
    levels = [tuple(l) for l in low]
    for n in range(len(levels), up_to + 1):
        idx = Y.boundary_index(n)
        prev = levels[n - 1]
        cur = []
        for x in range(X.sizes[n]):
            key = tuple(prev[X.faces[n][i][x]] for i in range(n + 1))
            hit = idx.get(key, ())
            if len(hit) != 1:
                return None
            cur.append(hit[0])
        levels.append(tuple(cur))
    return SimplicialMap(X, Y, tuple(levels))


def simplicial_maps(Y: TruncatedSimplicialSet, X: TruncatedSimplicialSet) -> Iterator[SimplicialMap]:
    """All maps ``Y -> X`` through the truncation of ``Y`` (lexicographic)."""
    N = Y.trunc_dim
    X.require_dim(N)
    counter = Counter("maps between simplicial sets")
    levels: list[tuple[int, ...]] = []

    def level_choices(n: int):
        if n == 0:
            return itertools.product(range(X.sizes[0]), repeat=Y.sizes[0])
        prev = levels[n - 1]
        idx = X.boundary_index(n)
        per = []
        for y in range(Y.sizes[n]):
            key = tuple(prev[Y.faces[n][i][y]] for i in range(n + 1))
            forced = {X.degens[n - 1][i][prev[z]] for i in range(n) for z in range(Y.sizes[n - 1])
                      if Y.degens[n - 1][i][z] == y}
            cands = idx.get(key, [])
            if forced:
                cands = [c for c in cands if c in forced] if len(forced) == 1 else []
            per.append(cands)
        return itertools.product(*per)

    def rec(n: int):
        if n > N:
            counter.tick()
            yield SimplicialMap(Y, X, tuple(levels))
            return
        for choice in level_choices(n):
            levels.append(tuple(choice))
            yield from rec(n + 1)
            levels.pop()

    yield from rec(0)


# ---------------------------------------------------------------------------
# skeleton and coskeleton

def skeleton(X: TruncatedSimplicialSet, m: int) -> tuple[TruncatedSimplicialSet, SimplicialMap]:
    """``Sk^m X`` inside the truncation of ``X``, with its inclusion."""
    N = X.trunc_dim
    keep: list[list[int]] = []
    for n in range(N + 1):
        if n <= m:
            keep.append(list(range(X.sizes[n])))
        else:
            keep.append(sorted({X.degens[n - 1][i][y] for y in keep[n - 1] for i in range(n)}))
    pos = [{x: k for k, x in enumerate(l)} for l in keep]
    faces = [()] + [tuple(tuple(pos[n - 1][X.faces[n][i][x]] for x in keep[n]) for i in range(n + 1))
                    for n in range(1, N + 1)]
    degens = [tuple(tuple(pos[n + 1][X.degens[n][i][x]] for x in keep[n]) for i in range(n + 1))
              for n in range(N)] + [()]
    labels = tuple(tuple(l) for l in keep)
    Sk = TruncatedSimplicialSet(tuple(len(l) for l in keep), tuple(faces), tuple(degens), labels)
    return Sk, SimplicialMap(Sk, X, labels)


def coskeleton(X: TruncatedSimplicialSet, m: int, out_dim: int) -> TruncatedSimplicialSet:
    """``Cosk^m X`` through level ``out_dim``.

    Level ``k > m`` consists of compatible families of ``k+1`` elements of level
    ``k-1``; elements above ``m`` are labelled by those tuples.
    """
    X.require_dim(m)
    sizes, faces, degens, labels = [], [], [], []
    for n in range(min(m, out_dim) + 1):
        sizes.append(X.sizes[n])
        faces.append(X.faces[n])
        labels.append(tuple(range(X.sizes[n])))
    for n in range(m + 1, out_dim + 1):
        prev = _FaceView(sizes, faces)
        fams = list(compatible_families(prev, n, range(n + 1), f"coskeleton level {n}"))
        sizes.append(len(fams))
        faces.append(tuple(tuple(f[i] for f in fams) for i in range(n + 1)))
        labels.append(tuple(fams))
    top = len(sizes) - 1
    # degeneracies: copied from X up to level m, then forced by the identities
    for n in range(top + 1):
        if n == top:
            degens.append(())
        elif n + 1 <= m:
            degens.append(X.degens[n])
        else:
            index = {lab: k for k, lab in enumerate(labels[n + 1])}
            rows = []
            for i in range(n + 1):
                row = []
                for x in range(sizes[n]):
                    fs = []
                    for j in range(n + 2):
                        if j < i:
                            fs.append(degens[n - 1][i - 1][faces[n][j][x]])
                        elif j in (i, i + 1):
                            fs.append(x)
                        else:
                            fs.append(degens[n - 1][i][faces[n][j - 1][x]])
                    row.append(index[tuple(fs)])
                rows.append(tuple(row))
            degens.append(tuple(rows))
    return TruncatedSimplicialSet(tuple(sizes), tuple(faces), tuple(degens), tuple(labels))


class _FaceView:
    """Just enough of a simplicial set for :func:`compatible_families` (faces only)."""

    def __init__(self, sizes, faces):
        self.sizes = list(sizes)
        self.faces = list(faces)
        self._ft: dict = {}
        self._idx: dict = {}

    @property
    def trunc_dim(self):
        return len(self.sizes) - 1

    def require_dim(self, n):
        if n > self.trunc_dim:
            raise DimensionError(f"level {n} not available")

    def face_tuples(self, n):
        if n not in self._ft:
            self._ft[n] = list(zip(*self.faces[n])) if n else [()] * self.sizes[0]
        return self._ft[n]

    face_index = TruncatedSimplicialSet.face_index
    _indices = property(lambda self: self._idx)


def coskeleton_unit(X: TruncatedSimplicialSet, m: int, out_dim: int) -> SimplicialMap:
    """The canonical map ``X -> Cosk^m X`` (identity through level ``m``)."""
    C = coskeleton(X, m, out_dim)
    levels = [tuple(range(X.sizes[n])) for n in range(m + 1)]
    for n in range(m + 1, out_dim + 1):
        index = {lab: k for k, lab in enumerate(C.labels[n])}
        prev = levels[n - 1]
        levels.append(tuple(index[tuple(prev[X.faces[n][i][x]] for i in range(n + 1))]
                            for x in range(X.sizes[n])))
    return SimplicialMap(X, C, tuple(levels))
