"""Finite 2-groupoids as levels 0..2 plus the four 3-multiplications.

``m[i]`` maps a Lambda[3,i] horn, written as its three faces ``(eta_k)_{k != i}``
in increasing ``k``, to the missing face ``eta_i``. Face ``eta_i`` of a
3-simplex is the triangle opposite vertex ``i``.

Simplices of the nerve above level 2 are stored as triangle assignments: one
element of ``X_2`` per triangle of Delta[k], triangles in lexicographic order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .errors import Counter, StructuralError
from .groupoid import FiniteGroupoid
from .kan import fill_horn, horn_maps
from .simplicial import TruncatedSimplicialSet, check_simplicial_identities

Horn3 = tuple[int, int, int]


@dataclass(frozen=True)
class TwoGroupoidData:
    sizes: tuple[int, int, int]
    d1: tuple[tuple[int, ...], tuple[int, ...]]
    s0: tuple[int, ...]
    d2: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    s1: tuple[tuple[int, ...], tuple[int, ...]]
    m: tuple[tuple[tuple[int, int, int, int], ...], ...]

    @cached_property
    def simplicial(self) -> TruncatedSimplicialSet:
        return TruncatedSimplicialSet(tuple(self.sizes), ((), self.d1, self.d2),
                                      ((self.s0,), self.s1, ()))

    @cached_property
    def mult(self) -> tuple[dict[Horn3, int], ...]:
        out = []
        for table in self.m:
            d: dict[Horn3, int] = {}
            for a, b, c, r in table:
                if (a, b, c) in d:
                    raise StructuralError(f"m has two values on horn {(a, b, c)}")
                d[(a, b, c)] = r
            out.append(d)
        return tuple(out)

    def mul(self, i: int, horn: Sequence[int]) -> int:
        try:
            return self.mult[i][tuple(horn)]
        except KeyError:
            raise StructuralError(f"m_{i} is undefined on {tuple(horn)}") from None

    def lambda2(self, j: int) -> list[tuple[int, int]]:
        return horn_maps(self.simplicial, 2, j)

    def lambda3(self, i: int) -> list[Horn3]:
        return horn_maps(self.simplicial, 3, i)

    def full_tuples(self, i: int) -> set[tuple[int, int, int, int]]:
        """``(eta_0, ..., eta_3)`` with ``eta_i = m_i(others)``."""
        out = set()
        for h, r in self.mult[i].items():
            t = list(h)
            t.insert(i, r)
            out.add(tuple(t))
        return out

    def edge(self, x: int, p: int, q: int) -> int:
        """Edge ``(p, q)`` of the triangle ``x``."""
        return self.d2[3 - p - q][x]


def lambda_space(D: TwoGroupoidData, m: int, j: int) -> list[tuple[int, ...]]:
    """``Lambda(X)_{m,j}`` for ``m`` in ``{2, 3}`` as glued face tuples."""
    if m not in (2, 3) or not 0 <= j <= m:
        raise StructuralError(f"no space Lambda(X)_{{{m},{j}}} in a 2-groupoid")
    return D.lambda2(j) if m == 2 else D.lambda3(j)


def m_equivalence_witnesses(D: TwoGroupoidData) -> list[tuple[int, tuple[int, int, int, int]]]:
    """Full tuples lying on the graph of some ``m_i`` but not on all four."""
    graphs = [D.full_tuples(i) for i in range(4)]
    every = set().union(*graphs)
    return sorted((i, t) for t in every for i in range(4) if t not in graphs[i])


def make_two_groupoid(sizes, d1, s0, d2, s1, m_funcs: Sequence[Callable[[Horn3], int | None]]) -> TwoGroupoidData:
    """Tabulate ``m_i`` over the horn spaces; a function may return ``None`` to leave a gap."""
    X = TwoGroupoidData(tuple(sizes), tuple(map(tuple, d1)), tuple(s0), tuple(map(tuple, d2)),
                        tuple(map(tuple, s1)), ((), (), (), ()))
    tables = []
    for i in range(4):
        rows = []
        for h in X.lambda3(i):
            r = m_funcs[i](h)
            if r is not None:
                rows.append(h + (r,))
        tables.append(tuple(rows))
    return TwoGroupoidData(X.sizes, X.d1, X.s0, X.d2, X.s1, tuple(tables))


def from_m0(sizes, d1, s0, d2, s1, m0: Callable[[Horn3], int]) -> TwoGroupoidData:
    """Data whose ``m_1..m_3`` are read off the graph of ``m_0`` (unique solutions only)."""
    X = make_two_groupoid(sizes, d1, s0, d2, s1, [m0, lambda h: None, lambda h: None, lambda h: None])
    graph = X.full_tuples(0)
    tables = [X.m[0]]
    for i in (1, 2, 3):
        found: dict[Horn3, list[int]] = {}
        for t in graph:
            found.setdefault(t[:i] + t[i + 1:], []).append(t[i])
        tables.append(tuple(sorted(h + (v[0],) for h, v in found.items() if len(v) == 1)))
    return TwoGroupoidData(X.sizes, X.d1, X.s0, X.d2, X.s1, tuple(tables))


# ---------------------------------------------------------------------------
# checking

@dataclass(frozen=True)
class TwoGroupoidReport:
    failures: tuple[tuple[str, object], ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def labels(self) -> set[str]:
        return {f[0] for f in self.failures}


def _is_boundary(X: TruncatedSimplicialSet, t: Sequence[int]) -> bool:
    d = X.faces[2]
    return all(d[i][t[j]] == d[j - 1][t[i]] for j in range(4) for i in range(j))


def check_two_groupoid(D: TwoGroupoidData, stop_early: bool = False) -> TwoGroupoidReport:
    """Every axiom of a finite 2-groupoid, each failure with a witness."""
    X = D.simplicial
    out: list[tuple[str, object]] = []
    for v in check_simplicial_identities(X):
        out.append(("simplicial-identities", v))
    if out:
        return TwoGroupoidReport(tuple(out))
    for i in range(2):
        missing = set(range(D.sizes[0])) - set(D.d1[i])
        if missing:
            out.append(("kan-1", (i, min(missing))))
    for j in range(3):
        pos = tuple(k for k in range(3) if k != j)
        hit = X.face_index(2, pos)
        for h in D.lambda2(j):
            if h not in hit:
                out.append(("kan-2", (j, h)))
                break
    for i in range(4):
        dom = D.lambda3(i)
        table = D.mult[i]
        extra = set(table) - set(dom)
        gaps = [h for h in dom if h not in table]
        if extra or gaps:
            out.append(("m-total", (i, min(gaps) if gaps else min(extra))))
        for h in dom:
            if h in table:
                r = table[h]
                if not 0 <= r < D.sizes[2]:
                    raise StructuralError(f"m_{i} value {r} out of range")
                t = list(h)
                t.insert(i, r)
                if not _is_boundary(X, t):
                    out.append(("m-faces", (i, h, r)))
                    break
    if stop_early and out:
        return TwoGroupoidReport(tuple(out))
    graphs = [D.full_tuples(i) for i in range(4)]
    for i in range(1, 4):
        diff = graphs[0] ^ graphs[i]
        if diff:
            out.append(("m-iso", (0, i, min(diff))))
    out += _coco(D)
    out += _pentagon(D)
    return TwoGroupoidReport(tuple(out))


def _coco(D: TwoGroupoidData) -> list[tuple[str, object]]:
    """Degenerate 3-simplices ``s_i eta`` must be m-compatible (both stated forms)."""
    out = []
    (d0, d1, d2), (s0, s1) = D.d2, D.s1
    T = D.mult
    for e in range(D.sizes[2]):
        checks = [
            (1, (e, s0[d1[e]], s0[d2[e]])), (0, (e, s0[d1[e]], s0[d2[e]])),
            (2, (s0[d0[e]], e, s1[d2[e]])), (1, (s0[d0[e]], e, s1[d2[e]])),
            (3, (s1[d0[e]], s1[d1[e]], e)), (2, (s1[d0[e]], s1[d1[e]], e)),
        ]
        for i, h in checks:
            if T[i].get(h) != e:
                out.append(("coco", (e, i, h)))
                break
    return out


def _pentagon(D: TwoGroupoidData) -> list[tuple[str, object]]:
    """``eta_123`` computed directly and around the other side of Delta[4] must agree."""
    out = []
    m0, m3 = D.mult[0], D.mult[3]
    star = [t for t in TRIANGLES[4] if 0 in t]
    for e in _assignments(D, 4, star, None, "pentagon configurations"):
        direct = m0.get((e[(0, 2, 3)], e[(0, 1, 3)], e[(0, 1, 2)]))
        e234 = m0.get((e[(0, 3, 4)], e[(0, 2, 4)], e[(0, 2, 3)]))
        e134 = m0.get((e[(0, 3, 4)], e[(0, 1, 4)], e[(0, 1, 3)]))
        e124 = m0.get((e[(0, 2, 4)], e[(0, 1, 4)], e[(0, 1, 2)]))
        other = m3.get((e234, e134, e124))
        if direct is None or other is None or direct != other:
            out.append(("pentagon", (tuple(sorted(e.items())), direct, other)))
            break
    return out


# ---------------------------------------------------------------------------
# the nerve

TRIANGLES = {k: tuple(itertools.combinations(range(k + 1), 3)) for k in range(2, 9)}


def _tri_index(k: int) -> dict[tuple[int, int, int], int]:
    return {t: p for p, t in enumerate(TRIANGLES[k])}


def _assignments(D: TwoGroupoidData, k: int, triangles: Sequence[tuple[int, int, int]],
                 accept: Callable[[tuple, dict], bool] | None, what: str):
    """Backtrack over triangles, keeping shared edges consistent.

    ``accept(t, chosen)`` runs after ``t`` is placed and may reject it.
    """
    X = D.simplicial
    counter = Counter(what)
    edges: dict[tuple[int, int], int] = {}
    chosen: dict[tuple[int, int, int], int] = {}
    order = list(triangles)

    def rec(p: int):
        if p == len(order):
            counter.tick()
            yield dict(chosen)
            return
        a, b, c = t = order[p]
        es = ((b, c), (a, c), (a, b))
        known = tuple(i for i in range(3) if es[i] in edges)
        key = tuple(edges[es[i]] for i in known)
        for x in X.face_index(2, known).get(key, ()):
            new = [es[i] for i in range(3) if i not in known]
            for i in range(3):
                if es[i] in new:
                    edges[es[i]] = X.faces[2][i][x]
            chosen[t] = x
            if accept is None or accept(t, chosen):
                yield from rec(p + 1)
            del chosen[t]
            for e in new:
                del edges[e]

    yield from rec(0)


def _tetra(chosen, q):
    a, b, c, d = q
    return (chosen[(b, c, d)], chosen[(a, c, d)], chosen[(a, b, d)], chosen[(a, b, c)])


def level_by_membership(D: TwoGroupoidData, k: int) -> list[tuple[int, ...]]:
    """Triangle assignments of Delta[k] all of whose tetrahedra are m-compatible."""
    graph = D.full_tuples(0)
    tris = TRIANGLES[k]

    def accept(t, chosen):
        b, c, d = t
        return all(_tetra(chosen, (a, b, c, d)) in graph for a in range(b))

    return sorted(tuple(ch[t] for t in tris)
                  for ch in _assignments(D, k, tris, accept, f"nerve level {k}"))


def level_by_induction(D: TwoGroupoidData, k: int, j: int) -> tuple[list[tuple[int, ...]], list]:
    """Extend maps from the triangles through vertex ``j`` by the m's.

    Returns the resulting assignments and any tetrahedra that came out
    incompatible (which the theory says never happens).
    """
    graph = D.full_tuples(0)
    tris = TRIANGLES[k]
    star = [t for t in tris if j in t]
    rest = [t for t in tris if j not in t]
    bad = []
    out = []
    for ch in _assignments(D, k, star, None, f"star of vertex {j} in Delta[{k}]"):
        ok = True
        for t in rest:
            q = tuple(sorted(t + (j,)))
            p = q.index(j)
            faces = [ch.get(tuple(v for v in q if v != q[i])) for i in range(4) if i != p]
            r = D.mult[p].get(tuple(faces))
            if r is None:
                ok = False
                bad.append(("undefined", t, tuple(faces)))
                break
            ch[t] = r
        if not ok:
            continue
        for q in itertools.combinations(range(k + 1), 4):
            if _tetra(ch, q) not in graph:
                bad.append(("incompatible", q))
                ok = False
                break
        if ok:
            out.append(tuple(ch[t] for t in tris))
    return sorted(out), bad


def _evaluate(D: TwoGroupoidData, k: int, assign: Sequence[int], f: Sequence[int]) -> int:
    """Value in ``X_2`` of the monotone map ``f: [2] -> [k]`` on a triangle assignment."""
    X = D.simplicial
    image = sorted(set(f))
    if len(image) == 3:
        x, dim = assign[_tri_index(k)[tuple(image)]], 2
    else:
        host = next(t for t in TRIANGLES[k] if set(image) <= set(t))
        x = X.sub_face(2, assign[_tri_index(k)[host]], [host.index(v) for v in image])
        dim = len(image) - 1
    return X.degenerate(dim, x, [image.index(v) for v in f])


def nerve_two_groupoid(D: TwoGroupoidData, N: int, method: str = "membership") -> TruncatedSimplicialSet:
    """Levels ``0..N`` of the nerve.

    ``method`` picks how levels above 2 are produced: ``membership`` filters
    triangle assignments by m-compatibility of every tetrahedron, ``induction``
    extends maps from the triangles through vertex 0.
    """
    if N <= 2:
        return D.simplicial.truncate(N)
    levels: list[list] = [list(range(s)) for s in D.sizes]
    for k in range(3, N + 1):
        if method == "membership":
            levels.append(level_by_membership(D, k))
        elif method == "induction":
            lv, bad = level_by_induction(D, k, 0)
            if bad:
                raise StructuralError(f"induction produced incompatible tetrahedra: {bad[0]}")
            levels.append(lv)
        else:
            raise ValueError(f"unknown method {method!r}")
    index = [None, None, None] + [{a: p for p, a in enumerate(levels[k])} for k in range(3, N + 1)]
    faces = [(), D.d1, D.d2]
    degens = [(D.s0,), D.s1]
    for k in range(3, N + 1):
        rows = []
        for i in range(k + 1):
            keep = [p for p, t in enumerate(TRIANGLES[k]) if i not in t]
            if k == 3:
                rows.append(tuple(a[keep[0]] for a in levels[k]))
            else:
                idx = index[k - 1]
                rows.append(tuple(idx[tuple(a[p] for p in keep)] for a in levels[k]))
        faces.append(tuple(rows))
    for k in range(2, N):
        rows = []
        for i in range(k + 1):
            sigma = [v if v <= i else v - 1 for v in range(k + 2)]
            row = []
            for p in range(len(levels[k])):
                assign = (p,) if k == 2 else levels[k][p]
                img = tuple(_evaluate(D, k, assign, [sigma[v] for v in t]) for t in TRIANGLES[k + 1])
                row.append(index[k + 1][img])
            rows.append(tuple(row))
        degens.append(tuple(rows))
    degens.append(())
    labels = tuple(tuple(l) for l in levels)
    return TruncatedSimplicialSet(tuple(len(l) for l in levels), tuple(faces), tuple(degens), labels)


def truncate_to_two_groupoid(X: TruncatedSimplicialSet) -> TwoGroupoidData:
    """Levels 0..2 of ``X`` with ``m_i`` read off the unique Lambda[3,i] fillers."""
    X.require_dim(3)
    tables = []
    for i in range(4):
        rows = []
        for h in horn_maps(X, 3, i):
            f = fill_horn(X, 3, i, h)
            if len(f) != 1:
                raise StructuralError(f"Lambda[3,{i}] horn {h} has {len(f)} fillers")
            rows.append(h + (X.faces[3][i][f[0]],))
        tables.append(tuple(rows))
    return TwoGroupoidData(X.sizes[:3], X.faces[1], X.degens[0][0], X.faces[2], X.degens[1], tuple(tables))


# ---------------------------------------------------------------------------
# generators

def promote_groupoid(G: FiniteGroupoid) -> TwoGroupoidData:
    """A groupoid as a 2-groupoid: triangles are composable pairs ``(a, b)``.

    ``d_0 = b``, ``d_1 = ab``, ``d_2 = a``; each m fills in the one triangle
    whose edges the horn already fixes.
    """
    pairs = sorted((a, b) for a, b, _ in G.comp)
    pi = {p: k for k, p in enumerate(pairs)}
    d2 = (tuple(b for a, b in pairs), tuple(G.mul(a, b) for a, b in pairs), tuple(a for a, b in pairs))
    s1 = (tuple(pi[(G.unit[G.tgt[g]], g)] for g in range(G.n_arr)),
          tuple(pi[(g, G.unit[G.src[g]])] for g in range(G.n_arr)))
    sizes = (G.n_obj, G.n_arr, len(pairs))

    def filler(i):
        def f(h):
            edges = {}
            for k, x in zip([k for k in range(4) if k != i], h):
                verts = [v for v in range(4) if v != k]
                a, b = pairs[x]
                edges[(verts[0], verts[1])] = a
                edges[(verts[1], verts[2])] = b
                edges[(verts[0], verts[2])] = G.mul(a, b)
            p, q, r = [v for v in range(4) if v != i]
            return pi.get((edges[(p, q)], edges[(q, r)]))
        return f

    return make_two_groupoid(sizes, (G.src, G.tgt), G.unit, d2, s1, [filler(i) for i in range(4)])


def abelian_two_group(table: Sequence[Sequence[int]], m0: Callable[[int, int, int], int] | None = None,
                      zero: int = 0) -> TwoGroupoidData:
    """One object, one arrow, triangles an abelian group ``A``.

    By default ``m_0(e1, e2, e3) = e1 - e2 + e3``; another ``m0`` can be given
    (the other three m's are then read off its graph).
    """
    n = len(table)
    neg = [next(b for b in range(n) if table[a][b] == zero) for a in range(n)]
    add = lambda a, b: table[a][b]
    sub = lambda a, b: table[a][neg[b]]
    if m0 is None:
        m0 = lambda a, b, c: add(sub(a, b), c)
    return from_m0((1, 1, n), ((0,), (0,)), (0,), ((0,) * n,) * 3, ((zero,), (zero,)),
                   lambda h: m0(*h))
