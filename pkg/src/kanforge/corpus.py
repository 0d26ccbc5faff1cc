"""Test corpus: every group of order at most 12, every finite groupoid with at
most 3 objects and 12 arrows (up to isomorphism), seeded random relabelled
groupoids, small abelian 2-groups and cover generators."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .groupoid import (FiniteGroupoid, connected_groupoid, disjoint_union, discrete_groupoid,
                       group_groupoid, groupoid_from_mul, relabel)
from .simplicial import SimplicialMap
from .two_gpd import TwoGroupoidData, abelian_two_group

Table = tuple[tuple[int, ...], ...]


def cyclic(n: int) -> Table:
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


def direct_product(A: Table, B: Table) -> Table:
    nb = len(B)
    els = [(a, b) for a in range(len(A)) for b in range(nb)]
    return tuple(tuple(A[a][c] * nb + B[b][d] for c, d in els) for a, b in els)


def metacyclic(n: int, twist: int, square: int) -> Table:
    """Elements ``a^i x^j`` with ``a^n = 1``, ``x a x^-1 = a^twist``, ``x^2 = a^square``."""
    els = [(i, j) for j in range(2) for i in range(n)]
    idx = {e: k for k, e in enumerate(els)}

    def mul(p, q):
        (i, j), (k, l) = p, q
        i2 = (i + (k * twist if j else k)) % n
        if j and l:
            return (i2 + square) % n, 0
        return i2, j ^ l
    return tuple(tuple(idx[mul(p, q)] for q in els) for p in els)


def alternating4() -> Table:
    perms = sorted(p for p in itertools.permutations(range(4))
                   if sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0)
    idx = {p: k for k, p in enumerate(perms)}
    return tuple(tuple(idx[tuple(p[q[i]] for i in range(4))] for q in perms) for p in perms)


@lru_cache(maxsize=None)
def small_groups() -> dict[str, Table]:
    """All 24 groups of order 1..12 up to isomorphism."""
    g = {f"C{n}": cyclic(n) for n in range(1, 13)}
    C2, C3, C4 = cyclic(2), cyclic(3), cyclic(4)
    g.update({
        "C2xC2": direct_product(C2, C2),
        "S3": metacyclic(3, -1, 0),
        "C2xC4": direct_product(C2, C4),
        "C2^3": direct_product(C2, direct_product(C2, C2)),
        "D4": metacyclic(4, -1, 0),
        "Q8": metacyclic(4, -1, 2),
        "C3xC3": direct_product(C3, C3),
        "D5": metacyclic(5, -1, 0),
        "C2xC6": direct_product(C2, cyclic(6)),
        "A4": alternating4(),
        "D6": metacyclic(6, -1, 0),
        "Dic3": metacyclic(6, -1, 3),
    })
    return g


def groups_of_order(n: int) -> list[str]:
    return sorted(k for k, t in small_groups().items() if len(t) == n)


@dataclass(frozen=True)
class CorpusGroupoid:
    name: str
    G: FiniteGroupoid


def _component(k: int, name: str) -> FiniteGroupoid:
    return connected_groupoid(k, small_groups()[name])


def _components(max_obj: int, max_arr: int):
    """Connected groupoids ``(k objects, vertex group)`` within the bounds."""
    out = []
    for k in range(1, max_obj + 1):
        for n in range(1, max_arr // (k * k) + 1):
            for name in groups_of_order(n):
                out.append((k * k * n, k, name))
    return sorted(out)


def exhaustive_groupoids(max_obj: int = 3, max_arr: int = 12) -> list[CorpusGroupoid]:
    """Nonempty groupoids up to isomorphism: multisets of connected components."""
    comps = _components(max_obj, max_arr)
    out = []

    def rec(start, objs, arrs, chosen):
        if chosen:
            G = disjoint_union([_component(comps[c][1], comps[c][2]) for c in chosen])
            name = "+".join(f"{comps[c][1]}x{comps[c][2]}" if comps[c][1] > 1 else comps[c][2] for c in chosen)
            out.append(CorpusGroupoid(name, G))
        for c in range(start, len(comps)):
            a, k, _ = comps[c]
            if objs + k <= max_obj and arrs + a <= max_arr:
                rec(c, objs + k, arrs + a, chosen + [c])

    rec(0, 0, 0, [])
    return out


def random_groupoids(count: int = 50, seed: int = 20240611, max_obj: int = 4,
                     max_arr: int = 16) -> list[CorpusGroupoid]:
    """Random disjoint unions of connected groupoids with shuffled indices."""
    rng = random.Random(seed)
    comps = _components(max_obj, max_arr)
    out = []
    while len(out) < count:
        objs = arrs = 0
        chosen = []
        while True:
            fits = [c for c in comps if objs + c[1] <= max_obj and arrs + c[0] <= max_arr]
            if not fits or (chosen and rng.random() < 0.4):
                break
            c = rng.choice(fits)
            chosen.append(c)
            objs, arrs = objs + c[1], arrs + c[0]
        G = disjoint_union([_component(c[1], c[2]) for c in chosen])
        op = list(range(G.n_obj))
        ap = list(range(G.n_arr))
        rng.shuffle(op)
        rng.shuffle(ap)
        name = f"random{len(out)}:" + "+".join(f"{k}x{n}" for _, k, n in chosen)
        out.append(CorpusGroupoid(name, relabel(G, op, ap)))
    return out


def groupoid_corpus() -> list[CorpusGroupoid]:
    return exhaustive_groupoids() + random_groupoids()


ABELIAN = {
    "Z/2": cyclic(2),
    "Z/3": cyclic(3),
    "Z/4": cyclic(4),
    "Z/2xZ/2": direct_product(cyclic(2), cyclic(2)),
}


def abelian_two_groups() -> dict[str, TwoGroupoidData]:
    return {k: abelian_two_group(t) for k, t in ABELIAN.items()}


def pullback_groupoid(G: FiniteGroupoid, phi) -> tuple[FiniteGroupoid, list[int], list[int]]:
    """``phi^* G`` for ``phi: U -> G_0``: arrows ``(u, g, v)`` with ``g: phi(v) -> phi(u)``.

    Returns the groupoid and the object and arrow maps of the projection functor.
    """
    phi = list(phi)
    arrs = sorted((u, g, v) for u in range(len(phi)) for v in range(len(phi)) for g in range(G.n_arr)
                  if G.tgt[g] == phi[u] and G.src[g] == phi[v])
    idx = {a: k for k, a in enumerate(arrs)}

    def mul(p, q):
        (u, g, v), (v2, h, w) = arrs[p], arrs[q]
        return idx[(u, G.mul(g, h), w)] if v == v2 else None

    P = groupoid_from_mul(len(phi), [a[2] for a in arrs], [a[0] for a in arrs], mul, arr_labels=arrs)
    return P, phi, [a[1] for a in arrs]


def cech_covers(bases=(1, 2, 3), extra=(1, 2)) -> list[tuple[str, FiniteGroupoid, list[int]]]:
    """Surjections ``U -> B`` onto discrete bases with 1..3 points."""
    out = []
    for b in bases:
        for e in extra:
            for heavy in range(b):
                phi = sorted(list(range(b)) + [heavy] * e)
                out.append((f"cech{b}:{''.join(map(str, phi))}", discrete_groupoid(b), phi))
    return out


def base_groupoids() -> list[tuple[str, FiniteGroupoid]]:
    """Small bases over 1..3 objects for cover families."""
    from .groupoid import pair_groupoid
    return [("pt", discrete_groupoid(1)), ("Z/2", group_groupoid(cyclic(2))),
            ("Z/3", group_groupoid(cyclic(3))), ("S3", group_groupoid(small_groups()["S3"])),
            ("pair2", pair_groupoid(2)), ("2pts", discrete_groupoid(2)),
            ("Z/2+pt", disjoint_union([group_groupoid(cyclic(2)), discrete_groupoid(1)])),
            ("3pts", discrete_groupoid(3))]


@dataclass(frozen=True)
class CoverInstance:
    """A hypercover ``cover: Z -> X`` of ``n``-groupoids and a second one
    ``upper: Z' -> Z`` to compose with it."""
    name: str
    n: int
    cover: SimplicialMap
    upper: SimplicialMap
    check_dim: int


def _groupoid_cover(G: FiniteGroupoid, phi, N: int):
    from .hyper import functor_nerve_map
    from .groupoid import nerve_groupoid
    P, fo, fa = pullback_groupoid(G, phi)
    return P, functor_nerve_map(P, G, fo, fa, nerve_groupoid(P, N), nerve_groupoid(G, N))


def _groupoid_instance(name: str, G: FiniteGroupoid, phi) -> CoverInstance:
    P, f = _groupoid_cover(G, phi, 3)
    _, g = _groupoid_cover(P, sorted(list(range(P.n_obj)) + [0]), 3)
    return CoverInstance(name, 1, f, g, 2)


def _two_group_instance(name: str, table: Table, copies0, copies1, upper0) -> CoverInstance:
    from .hyper import product_cover, pullback_two_groupoid, two_groupoid_nerve_map
    X = abelian_two_group(table)
    Z, fs = pullback_two_groupoid(X, product_cover(X, copies0, copies1))
    _, _, f = two_groupoid_nerve_map(Z, X, *fs, 3)
    Z2, gs = pullback_two_groupoid(Z, product_cover(Z, upper0))
    _, _, g = two_groupoid_nerve_map(Z2, Z, *gs, 3)
    return CoverInstance(name, 2, f, g, 3)


def cover_instances() -> list[CoverInstance]:
    """Cech covers of discrete bases, pulled-back groupoids and pulled-back 2-groupoids."""
    out = [_groupoid_instance(name, B, phi) for name, B, phi in cech_covers()]
    for name, B in base_groupoids():
        n = B.n_obj
        for phi in (sorted(list(range(n)) + [0]), sorted(list(range(n)) + [n - 1] * 2)):
            out.append(_groupoid_instance(f"{name}:{''.join(map(str, phi))}", B, phi))
    for gname in ("Z/2", "Z/3"):
        for copies0, copies1 in (([2], 1), ([1], 2)):
            upper0 = [2] + [1] * (copies0[0] - 1)
            out.append(_two_group_instance(f"pb2:{gname}:{copies0[0]}x{copies1}", ABELIAN[gname],
                                           copies0, copies1, upper0))
    return out
