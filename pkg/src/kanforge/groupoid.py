"""Finite groupoids, their nerves, and Hilsum-Skandalis bibundles.

Composition ``comp(a, b)`` means "``b`` first, then ``a``" and is defined when
``src(a) == tgt(b)``. In the nerve, edge ``(0,1)`` of a simplex is an arrow from
vertex 1 to vertex 0, so ``d_0 = src`` and ``d_1 = tgt`` on level 1.

A bibundle ``E`` from ``K`` to ``K'`` carries a left ``K``-action along ``J_l``
and a right ``K'``-action along ``J_r``; ``k . e`` needs ``src(k) == J_l(e)`` and
``e . k'`` needs ``J_r(e) == tgt(k')``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

from .errors import Counter, StructuralError
from .kan import fill_horn
from .simplicial import TruncatedSimplicialSet, from_labelled


# ---------------------------------------------------------------------------
# groupoids

@dataclass(frozen=True)
class FiniteGroupoid:
    n_obj: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    unit: tuple[int, ...]
    inv: tuple[int, ...]
    comp: tuple[tuple[int, int, int], ...]
    obj_labels: tuple | None = field(default=None, compare=False, repr=False)
    arr_labels: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def n_arr(self) -> int:
        return len(self.src)

    @cached_property
    def table(self) -> dict[tuple[int, int], int]:
        return {(a, b): c for a, b, c in self.comp}

    def mul(self, a: int, b: int) -> int:
        try:
            return self.table[(a, b)]
        except KeyError:
            raise StructuralError(f"arrows {a} and {b} are not composable") from None

    @cached_property
    def by_tgt(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {x: [] for x in range(self.n_obj)}
        for g in range(self.n_arr):
            out[self.tgt[g]].append(g)
        return out

    @cached_property
    def by_src(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {x: [] for x in range(self.n_obj)}
        for g in range(self.n_arr):
            out[self.src[g]].append(g)
        return out

    def hom(self, x: int, y: int) -> list[int]:
        """Arrows from ``x`` to ``y``."""
        return [g for g in self.by_src[x] if self.tgt[g] == y]

    def is_discrete(self) -> bool:
        return self.n_arr == self.n_obj


def groupoid_from_mul(n_obj: int, src: Sequence[int], tgt: Sequence[int],
                      mul: Callable[[int, int], int], obj_labels=None, arr_labels=None) -> FiniteGroupoid:
    """Fill in units, inverses and the composition table from a multiplication."""
    n = len(src)
    by_src: dict[int, list[int]] = {}
    for g in range(n):
        by_src.setdefault(src[g], []).append(g)
    comp = tuple((a, b, mul(a, b)) for a in range(n) for b in range(n) if src[a] == tgt[b])
    table = {(a, b): c for a, b, c in comp}
    unit = []
    for x in range(n_obj):
        us = [u for u in range(n) if src[u] == tgt[u] == x and all(table[(u, g)] == g for g in range(n) if tgt[g] == x)]
        if len(us) != 1:
            raise StructuralError(f"object {x} has {len(us)} candidate units")
        unit.append(us[0])
    inv = []
    for g in range(n):
        cand = [h for h in range(n) if src[h] == tgt[g] and tgt[h] == src[g] and table[(g, h)] == unit[tgt[g]]]
        if len(cand) != 1:
            raise StructuralError(f"arrow {g} has {len(cand)} candidate inverses")
        inv.append(cand[0])
    return FiniteGroupoid(n_obj, tuple(src), tuple(tgt), tuple(unit), tuple(inv), comp,
                          None if obj_labels is None else tuple(obj_labels),
                          None if arr_labels is None else tuple(arr_labels))


def check_groupoid(G: FiniteGroupoid) -> list[tuple]:
    """Violations of the groupoid axioms as ``(label, witness)`` pairs."""
    out = []
    n, o = G.n_arr, G.n_obj
    if not (len(G.tgt) == len(G.inv) == n and len(G.unit) == o):
        raise StructuralError("groupoid arrays have inconsistent lengths")
    for arr, bound, name in ((G.src, o, "src"), (G.tgt, o, "tgt"), (G.unit, n, "unit"), (G.inv, n, "inv")):
        if any(not 0 <= v < bound for v in arr):
            raise StructuralError(f"{name} has an out-of-range entry")
    T = G.table
    if len(T) != len(G.comp):
        out.append(("composition-function", "duplicate entry"))
    for a in range(n):
        for b in range(n):
            if (G.src[a] == G.tgt[b]) != ((a, b) in T):
                out.append(("composition-domain", (a, b)))
    for (a, b), c in T.items():
        if not 0 <= c < n:
            raise StructuralError(f"composite {c} out of range")
        if G.src[c] != G.src[b] or G.tgt[c] != G.tgt[a]:
            out.append(("composition-typing", (a, b, c)))
    for x in range(o):
        u = G.unit[x]
        if G.src[u] != x or G.tgt[u] != x:
            out.append(("unit-typing", x))
    for g in range(n):
        if T.get((G.unit[G.tgt[g]], g)) != g or T.get((g, G.unit[G.src[g]])) != g:
            out.append(("unit-law", g))
        h = G.inv[g]
        if T.get((g, h)) != G.unit[G.tgt[g]] or T.get((h, g)) != G.unit[G.src[g]]:
            out.append(("inverse", g))
    for (a, b), ab in T.items():
        for c in G.by_tgt[G.src[b]]:
            bc = T.get((b, c))
            if bc is None:
                continue
            if T.get((ab, c)) != T.get((a, bc)):
                out.append(("associativity", (a, b, c)))
    return out


def group_groupoid(table: Sequence[Sequence[int]], labels=None) -> FiniteGroupoid:
    """One-object groupoid of a group given by its multiplication table."""
    n = len(table)
    return groupoid_from_mul(1, [0] * n, [0] * n, lambda a, b: table[a][b], None, labels)


def discrete_groupoid(n: int) -> FiniteGroupoid:
    return groupoid_from_mul(n, range(n), range(n), lambda a, b: a)


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Objects ``0..n-1`` and exactly one arrow ``(i, j)`` from ``j`` to ``i`` for each pair."""
    return cech_groupoid([0] * n)


def cech_groupoid(base: Sequence[int]) -> FiniteGroupoid:
    """Cech groupoid of the map ``U -> B``, ``u -> base[u]``: arrows ``U x_B U``."""
    arrs = [(i, j) for i in range(len(base)) for j in range(len(base)) if base[i] == base[j]]
    idx = {a: k for k, a in enumerate(arrs)}
    return groupoid_from_mul(len(base), [a[1] for a in arrs], [a[0] for a in arrs],
                             lambda a, b: idx[(arrs[a][0], arrs[b][1])], range(len(base)), arrs)


def connected_groupoid(k: int, table: Sequence[Sequence[int]]) -> FiniteGroupoid:
    """``k`` objects, every hom-set a copy of the group with the given table."""
    n = len(table)
    arrs = [(i, j, h) for i in range(k) for j in range(k) for h in range(n)]
    idx = {a: c for c, a in enumerate(arrs)}

    def mul(a, b):
        (i, _, h), (_, l, h2) = arrs[a], arrs[b]
        return idx[(i, l, table[h][h2])]

    return groupoid_from_mul(k, [a[1] for a in arrs], [a[0] for a in arrs], mul, None, arrs)


def disjoint_union(parts: Sequence[FiniteGroupoid]) -> FiniteGroupoid:
    src, tgt, unit, inv, comp = [], [], [], [], []
    o_off = a_off = 0
    for G in parts:
        src += [v + o_off for v in G.src]
        tgt += [v + o_off for v in G.tgt]
        unit += [v + a_off for v in G.unit]
        inv += [v + a_off for v in G.inv]
        comp += [(a + a_off, b + a_off, c + a_off) for a, b, c in G.comp]
        o_off += G.n_obj
        a_off += G.n_arr
    return FiniteGroupoid(o_off, tuple(src), tuple(tgt), tuple(unit), tuple(inv), tuple(sorted(comp)))


def relabel(G: FiniteGroupoid, obj_perm: Sequence[int], arr_perm: Sequence[int]) -> FiniteGroupoid:
    """Move object ``x`` to ``obj_perm[x]`` and arrow ``g`` to ``arr_perm[g]``."""
    n, o = G.n_arr, G.n_obj
    src, tgt, inv = [0] * n, [0] * n, [0] * n
    unit = [0] * o
    for g in range(n):
        src[arr_perm[g]] = obj_perm[G.src[g]]
        tgt[arr_perm[g]] = obj_perm[G.tgt[g]]
        inv[arr_perm[g]] = arr_perm[G.inv[g]]
    for x in range(o):
        unit[obj_perm[x]] = arr_perm[G.unit[x]]
    comp = tuple(sorted((arr_perm[a], arr_perm[b], arr_perm[c]) for a, b, c in G.comp))
    return FiniteGroupoid(o, tuple(src), tuple(tgt), tuple(unit), tuple(inv), comp)


def opposite(G: FiniteGroupoid) -> FiniteGroupoid:
    comp = tuple(sorted((b, a, c) for a, b, c in G.comp))
    return FiniteGroupoid(G.n_obj, G.tgt, G.src, G.unit, G.inv, comp, G.obj_labels, G.arr_labels)


def fibred_product(G: FiniteGroupoid, H: FiniteGroupoid, a: Sequence[int], b: Sequence[int]) -> FiniteGroupoid:
    """``G x_{a,M,b} H`` for maps ``a: G_0 -> M`` and ``b: H_0 -> M`` constant on orbits.

    Objects and arrows are pairs, sorted; labels record the pairs.
    """
    objs = [(x, y) for x in range(G.n_obj) for y in range(H.n_obj) if a[x] == b[y]]
    arrs = [(g, h) for g in range(G.n_arr) for h in range(H.n_arr) if a[G.src[g]] == b[H.src[h]]]
    oi = {p: k for k, p in enumerate(objs)}
    ai = {p: k for k, p in enumerate(arrs)}
    src = tuple(oi[(G.src[g], H.src[h])] for g, h in arrs)
    tgt = tuple(oi[(G.tgt[g], H.tgt[h])] for g, h in arrs)
    unit = tuple(ai[(G.unit[x], H.unit[y])] for x, y in objs)
    inv = tuple(ai[(G.inv[g], H.inv[h])] for g, h in arrs)
    GT, HT = G.table, H.table
    comp = []
    for k, (g, h) in enumerate(arrs):
        for l, (g2, h2) in enumerate(arrs):
            if G.src[g] == G.tgt[g2] and H.src[h] == H.tgt[h2]:
                comp.append((k, l, ai[(GT[(g, g2)], HT[(h, h2)])]))
    return FiniteGroupoid(len(objs), src, tgt, unit, inv, tuple(comp), tuple(objs), tuple(arrs))


# ---------------------------------------------------------------------------
# functors and isomorphisms

def check_functor(G: FiniteGroupoid, H: FiniteGroupoid, fo: Sequence[int], fa: Sequence[int]) -> list[tuple]:
    out = []
    for g in range(G.n_arr):
        if H.src[fa[g]] != fo[G.src[g]] or H.tgt[fa[g]] != fo[G.tgt[g]]:
            out.append(("typing", g))
    for x in range(G.n_obj):
        if fa[G.unit[x]] != H.unit[fo[x]]:
            out.append(("unit", x))
    HT = H.table
    for a, b, c in G.comp:
        if HT.get((fa[a], fa[b])) != fa[c]:
            out.append(("composition", (a, b)))
    return out


def is_groupoid_iso(G, H, fo, fa) -> bool:
    return (not check_functor(G, H, fo, fa) and sorted(fo) == list(range(H.n_obj))
            and sorted(fa) == list(range(H.n_arr)))


def _arrow_orders(G: FiniteGroupoid) -> list[int]:
    """Order of each loop in its vertex group; 0 for arrows between distinct objects."""
    out = []
    for g in range(G.n_arr):
        if G.src[g] != G.tgt[g]:
            out.append(0)
            continue
        k, p = 1, g
        while p != G.unit[G.src[g]]:
            p, k = G.mul(p, g), k + 1
        out.append(k)
    return out


def find_groupoid_iso(G: FiniteGroupoid, H: FiniteGroupoid) -> tuple[tuple, tuple] | None:
    """Search for an isomorphism ``G -> H``; ``None`` if there is none.

    Objects are permuted exhaustively; arrows are chosen one at a time and
    every composite and inverse of chosen arrows is forced before the next choice.
    """
    if (G.n_obj, G.n_arr) != (H.n_obj, H.n_arr):
        return None
    counter = Counter("groupoid isomorphism search")
    GT, HT = G.table, H.table
    og, oh = _arrow_orders(G), _arrow_orders(H)
    if sorted(og) != sorted(oh):
        return None

    def propagate(fa, pre, g, c) -> bool:
        queue = [(g, c)]
        while queue:
            g, c = queue.pop()
            if fa[g] is not None:
                if fa[g] != c:
                    return False
                continue
            if pre[c] is not None or og[g] != oh[c]:
                return False
            fa[g], pre[c] = c, g
            queue.append((G.inv[g], H.inv[c]))
            for h in range(G.n_arr):
                if fa[h] is None:
                    continue
                for a, b in ((g, h), (h, g)):
                    ab = GT.get((a, b))
                    if ab is not None:
                        queue.append((ab, HT[(fa[a], fa[b])]))
        return True

    for fo in itertools.permutations(range(H.n_obj)):
        if any(len(G.hom(x, y)) != len(H.hom(fo[x], fo[y])) for x in range(G.n_obj) for y in range(G.n_obj)):
            continue
        start_fa: list[int | None] = [None] * G.n_arr
        start_pre: list[int | None] = [None] * H.n_arr
        if not all(propagate(start_fa, start_pre, G.unit[x], H.unit[fo[x]]) for x in range(G.n_obj)):
            continue

        def rec(fa, pre):
            free = next((g for g in range(G.n_arr) if fa[g] is None), None)
            if free is None:
                return fa
            for c in H.hom(fo[G.src[free]], fo[G.tgt[free]]):
                if pre[c] is not None or oh[c] != og[free]:
                    continue
                counter.tick()
                fa2, pre2 = list(fa), list(pre)
                if propagate(fa2, pre2, free, c):
                    found = rec(fa2, pre2)
                    if found is not None:
                        return found
            return None

        fa = rec(start_fa, start_pre)
        if fa is not None:
            return tuple(fo), tuple(fa)
    return None


# ---------------------------------------------------------------------------
# nerves

def nerve_groupoid(G: FiniteGroupoid, N: int) -> TruncatedSimplicialSet:
    """Levels ``0..N`` of the nerve; an n-simplex is a string ``(g_1, ..., g_n)``
    with ``src(g_k) == tgt(g_{k+1})``; level 0 is labelled by ``(x,)``."""
    levels = [[(x,) for x in range(G.n_obj)]]
    if N >= 1:
        levels.append([(g,) for g in range(G.n_arr)])
    for n in range(2, N + 1):
        levels.append([s + (g,) for s in levels[-1] for g in G.by_tgt[G.src[s[-1]]]])
    T = G.table

    def face(n, i, s):
        if n == 1:
            return (G.src[s[0]],) if i == 0 else (G.tgt[s[0]],)
        if i == 0:
            return s[1:]
        if i == n:
            return s[:-1]
        return s[:i - 1] + (T[(s[i - 1], s[i])],) + s[i + 1:]

    def degen(n, i, s):
        if n == 0:
            return (G.unit[s[0]],)
        v = G.tgt[s[0]] if i == 0 else G.src[s[i - 1]]
        return s[:i] + (G.unit[v],) + s[i:]

    return from_labelled(levels, face, degen)


def groupoid_from_1groupoid(X: TruncatedSimplicialSet) -> FiniteGroupoid:
    """Recover a groupoid from a simplicial set with unique 2-dimensional fillers.

    Composition fills Lambda[2,1]; inverses fill Lambda[2,0] against a unit.
    Every axiom, associativity included, is re-verified.
    """
    X.require_dim(2)
    d0, d1 = X.faces[1]
    s0 = X.degens[0][0]
    n = X.sizes[1]
    comp = []
    for a in range(n):
        for b in range(n):
            if d0[a] == d1[b]:
                f = fill_horn(X, 2, 1, (b, a))
                if len(f) != 1:
                    raise StructuralError(f"Lambda[2,1] horn {(b, a)} has {len(f)} fillers")
                comp.append((a, b, X.faces[2][1][f[0]]))
    inv = []
    for g in range(n):
        f = fill_horn(X, 2, 0, (s0[d1[g]], g))
        if len(f) != 1:
            raise StructuralError(f"Lambda[2,0] horn over arrow {g} has {len(f)} fillers")
        inv.append(X.faces[2][0][f[0]])
    G = FiniteGroupoid(X.sizes[0], tuple(d0), tuple(d1), tuple(s0), tuple(inv), tuple(comp))
    bad = check_groupoid(G)
    if bad:
        raise StructuralError(f"recovered structure is not a groupoid: {bad[0]}")
    return G


# ---------------------------------------------------------------------------
# bibundles

@dataclass(frozen=True)
class Bibundle:
    left: FiniteGroupoid
    right: FiniteGroupoid
    size: int
    J_l: tuple[int, ...]
    J_r: tuple[int, ...]
    left_action: tuple[tuple[int, int, int], ...]
    right_action: tuple[tuple[int, int, int], ...]
    labels: tuple | None = field(default=None, compare=False, repr=False)

    @cached_property
    def lact(self) -> dict[tuple[int, int], int]:
        return {(k, e): r for k, e, r in self.left_action}

    @cached_property
    def ract(self) -> dict[tuple[int, int], int]:
        return {(e, k): r for e, k, r in self.right_action}

    def act_l(self, k: int, e: int) -> int:
        return self.lact[(k, e)]

    def act_r(self, e: int, k: int) -> int:
        return self.ract[(e, k)]


def make_bibundle(K: FiniteGroupoid, K2: FiniteGroupoid, size: int, J_l, J_r,
                  left: Callable[[int, int], int], right: Callable[[int, int], int], labels=None) -> Bibundle:
    """Tabulate actions given as functions on their domains of definition."""
    la = tuple((k, e, left(k, e)) for k in range(K.n_arr) for e in range(size) if K.src[k] == J_l[e])
    ra = tuple((e, k, right(e, k)) for e in range(size) for k in range(K2.n_arr) if J_r[e] == K2.tgt[k])
    return Bibundle(K, K2, size, tuple(J_l), tuple(J_r), la, ra, labels)


def check_bibundle(E: Bibundle) -> list[tuple]:
    K, K2 = E.left, E.right
    out = []
    if len(E.J_l) != E.size or len(E.J_r) != E.size:
        raise StructuralError("moment maps have the wrong length")
    if any(not 0 <= v < K.n_obj for v in E.J_l) or any(not 0 <= v < K2.n_obj for v in E.J_r):
        raise StructuralError("moment map out of range")
    L, R = E.lact, E.ract
    for (k, e), r in L.items():
        if not 0 <= r < E.size:
            raise StructuralError("left action value out of range")
    for (e, k), r in R.items():
        if not 0 <= r < E.size:
            raise StructuralError("right action value out of range")
    for k in range(K.n_arr):
        for e in range(E.size):
            if (K.src[k] == E.J_l[e]) != ((k, e) in L):
                out.append(("left-action-domain", (k, e)))
    for e in range(E.size):
        for k in range(K2.n_arr):
            if (E.J_r[e] == K2.tgt[k]) != ((e, k) in R):
                out.append(("right-action-domain", (e, k)))
    if out:
        return out
    for (k, e), r in L.items():
        if E.J_l[r] != K.tgt[k] or E.J_r[r] != E.J_r[e]:
            out.append(("left-moment", (k, e)))
    for (e, k), r in R.items():
        if E.J_r[r] != K2.src[k] or E.J_l[r] != E.J_l[e]:
            out.append(("right-moment", (e, k)))
    if out:
        return out
    for e in range(E.size):
        if L[(K.unit[E.J_l[e]], e)] != e:
            out.append(("left-unit", e))
        if R[(e, K2.unit[E.J_r[e]])] != e:
            out.append(("right-unit", e))
    for (a, b), c in K.table.items():
        for e in range(E.size):
            if K.src[b] == E.J_l[e] and L[(c, e)] != L[(a, L[(b, e)])]:
                out.append(("left-associativity", (a, b, e)))
    for (a, b), c in K2.table.items():
        for e in range(E.size):
            if E.J_r[e] == K2.tgt[a] and R[(e, c)] != R[(R[(e, a)], b)]:
                out.append(("right-associativity", (e, a, b)))
    for (k, e), r in L.items():
        for k2 in K2.by_tgt[E.J_r[e]]:
            if R[(r, k2)] != L[(k, R[(e, k2)])]:
                out.append(("actions-commute", (k, e, k2)))
    return out


def _principal(E: Bibundle, side: str) -> list[tuple]:
    """Principality of the right action over ``J_l`` (side ``right``) or of the
    left action over ``J_r`` (side ``left``)."""
    out = []
    if side == "right":
        base, moment, G, act = E.left, E.J_l, E.right, E.ract
        move = lambda e, k: act[(e, k)]
        anchor = lambda e: G.by_tgt[E.J_r[e]]
    else:
        base, moment, G, act = E.right, E.J_r, E.left, E.lact
        move = lambda e, k: act[(k, e)]
        anchor = lambda e: G.by_src[E.J_l[e]]
    hit = set(moment)
    for x in range(base.n_obj):
        if x not in hit:
            out.append((f"{side}-principal-surjective", x))
    fibres: dict[int, list[int]] = {}
    for e in range(E.size):
        fibres.setdefault(moment[e], []).append(e)
    for e in range(E.size):
        orbit = {}
        for k in anchor(e):
            r = move(e, k)
            if r in orbit:
                out.append((f"{side}-principal-free", (e, k, orbit[r])))
            orbit[r] = k
        missing = set(fibres[moment[e]]) - set(orbit)
        if missing:
            out.append((f"{side}-principal-transitive", (e, min(missing))))
    return out


def right_principal(E: Bibundle) -> list[tuple]:
    return _principal(E, "right")


def left_principal(E: Bibundle) -> list[tuple]:
    return _principal(E, "left")


def check_morita(E: Bibundle) -> list[tuple]:
    """Empty list iff ``E`` is a well-formed bibundle principal on both sides."""
    bad = check_bibundle(E)
    if bad:
        return bad
    return right_principal(E) + left_principal(E)


def reverse_bibundle(E: Bibundle) -> Bibundle:
    """The same set seen from ``E.right`` to ``E.left``, acting through inverses."""
    K, K2 = E.left, E.right
    return make_bibundle(K2, K, E.size, E.J_r, E.J_l,
                         lambda k, e: E.act_r(e, K2.inv[k]), lambda e, k: E.act_l(K.inv[k], e), E.labels)


def identity_bibundle(G: FiniteGroupoid) -> Bibundle:
    return make_bibundle(G, G, G.n_arr, G.tgt, G.src, G.mul, G.mul)


def functor_bibundle(K: FiniteGroupoid, K2: FiniteGroupoid, fo: Sequence[int], fa: Sequence[int]) -> Bibundle:
    """Bibundle of a strict functor: pairs ``(x, g)`` with ``fo(x) == tgt(g)``."""
    pairs = [(x, g) for x in range(K.n_obj) for g in range(K2.n_arr) if fo[x] == K2.tgt[g]]
    idx = {p: k for k, p in enumerate(pairs)}
    return make_bibundle(
        K, K2, len(pairs), [p[0] for p in pairs], [K2.src[p[1]] for p in pairs],
        lambda k, e: idx[(K.tgt[k], K2.mul(fa[k], pairs[e][1]))],
        lambda e, k: idx[(pairs[e][0], K2.mul(pairs[e][1], k))], pairs)


def compose_bibundles(E: Bibundle, F: Bibundle) -> Bibundle:
    """``F o E`` as a bibundle from ``E.left`` to ``F.right``.

    The total set is ``E x_{K'_0} F`` modulo ``(e . k, f) ~ (e, k . f)``; each
    class is named by its least pair.
    """
    if E.right != F.left:
        raise StructuralError("middle groupoids differ")
    M = E.right
    pairs = [(e, f) for e in range(E.size) for f in range(F.size) if E.J_r[e] == F.J_l[f]]
    counter = Counter("bibundle composite")
    counter.tick(len(pairs))
    rep: dict[tuple[int, int], tuple[int, int]] = {}
    for p in pairs:
        if p in rep:
            continue
        e, f = p
        orbit = [(E.act_r(e, k), F.act_l(M.inv[k], f)) for k in M.by_tgt[E.J_r[e]]]
        r = min(orbit)
        for q in orbit:
            rep[q] = r
    classes = sorted(set(rep.values()))
    ci = {c: k for k, c in enumerate(classes)}
    return make_bibundle(
        E.left, F.right, len(classes),
        [E.J_l[e] for e, _ in classes], [F.J_r[f] for _, f in classes],
        lambda k, c: ci[rep[(E.act_l(k, classes[c][0]), classes[c][1])]],
        lambda c, k: ci[rep[(classes[c][0], F.act_r(classes[c][1], k))]], tuple(classes))


def check_bibundle_iso(E: Bibundle, F: Bibundle, phi: Sequence[int]) -> list[tuple]:
    out = []
    if (E.left, E.right) != (F.left, F.right):
        return [("groupoids-differ", None)]
    if len(phi) != E.size or sorted(phi) != list(range(F.size)):
        return [("not-bijective", None)]
    for e in range(E.size):
        if F.J_l[phi[e]] != E.J_l[e] or F.J_r[phi[e]] != E.J_r[e]:
            out.append(("moment", e))
    for (k, e), r in E.lact.items():
        if F.lact.get((k, phi[e])) != phi[r]:
            out.append(("left-equivariance", (k, e)))
    for (e, k), r in E.ract.items():
        if F.ract.get((phi[e], k)) != phi[r]:
            out.append(("right-equivariance", (e, k)))
    return out


def _orbit(E: Bibundle, e: int) -> dict[int, list[tuple[int, int]]]:
    """Elements reachable from ``e``, each with the list of ``(k, k')`` reaching it."""
    out: dict[int, list[tuple[int, int]]] = {}
    for k in E.left.by_src[E.J_l[e]]:
        ke = E.act_l(k, e)
        for k2 in E.right.by_tgt[E.J_r[ke]]:
            out.setdefault(E.act_r(ke, k2), []).append((k, k2))
    return out


def find_bibundle_iso(E: Bibundle, F: Bibundle) -> tuple[int, ...] | None:
    """Search for an equivariant bijection ``E -> F``; ``None`` if none exists.

    Orbits of the combined action are matched one at a time: the image of an
    orbit is fixed by the image of its least element.
    """
    if (E.left, E.right) != (F.left, F.right) or E.size != F.size:
        return None
    counter = Counter("bibundle isomorphism search")
    reps, seen = [], set()
    orbits = {}
    for e in range(E.size):
        if e not in seen:
            orb = _orbit(E, e)
            orbits[e] = orb
            seen.update(orb)
            reps.append(e)
    phi: dict[int, int] = {}
    used: set[int] = set()

    def try_map(r: int, f: int) -> dict[int, int] | None:
        local: dict[int, int] = {}
        for x, words in orbits[r].items():
            for k, k2 in words:
                kf = F.lact.get((k, f))
                y = None if kf is None else F.ract.get((kf, k2))
                if y is None or local.setdefault(x, y) != y or y in used:
                    return None
        if len(set(local.values())) != len(local):
            return None
        return local

    def rec(t: int) -> bool:
        if t == len(reps):
            return True
        r = reps[t]
        for f in range(F.size):
            if f in used or F.J_l[f] != E.J_l[r] or F.J_r[f] != E.J_r[r]:
                continue
            counter.tick()
            local = try_map(r, f)
            if local is None:
                continue
            phi.update(local)
            used.update(local.values())
            if rec(t + 1):
                return True
            for x, y in local.items():
                del phi[x]
                used.discard(y)
        return False

    if not rec(0):
        return None
    result = tuple(phi[e] for e in range(E.size))
    return result if not check_bibundle_iso(E, F, result) else None


def extract_good_chart(G: FiniteGroupoid, n_points: int, E: Bibundle):
    """Identity section from a bibundle ``E`` from the discrete groupoid on ``M`` to ``G``.

    Uses the least element of each fibre of ``J_l`` as the section ``sigma``;
    returns ``e = J_r o sigma`` and the isomorphism from the bibundle of the
    strict map ``e`` onto ``E``.
    """
    bad = check_bibundle(E) + right_principal(E)
    if bad:
        raise StructuralError(f"not a principal bibundle: {bad[0]}")
    sigma = []
    for x in range(n_points):
        fib = [p for p in range(E.size) if E.J_l[p] == x]
        sigma.append(min(fib))
    e = tuple(E.J_r[p] for p in sigma)
    D = E.left
    strict = functor_bibundle(D, G, e, [G.unit[e[D.src[k]]] for k in range(D.n_arr)])
    phi = tuple(E.act_r(sigma[x], g) for x, g in strict.labels)
    return e, strict, phi
