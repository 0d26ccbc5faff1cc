"""Pullback spaces, hypercovers and pulled-back 2-groupoids.

``PB(T, Z, S, X)`` for shapes ``T`` inside ``S`` and a map ``f: Z -> X`` is the
set of pairs ``(u, v)`` with ``u: T -> Z``, ``v: S -> X`` and ``f o u = v|_T``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ClassificationError, Counter, StructuralError
from .groupoid import FiniteGroupoid
from .kan import classify_n_groupoid, horn_maps, horn_restriction
from .simplicial import (Shape, SimplicialMap, TruncatedSimplicialSet, assignment_of, boundary,
                         check_simplicial_map, compose_maps, extend_map, hom_set, simplex)
from .two_gpd import TwoGroupoidData, make_two_groupoid, nerve_two_groupoid

PBElement = tuple[tuple[int, ...], tuple[int, ...]]


def _codomain_maps(S: Shape, X: TruncatedSimplicialSet):
    if S.kind == "simplex":
        X.require_dim(S.m)
        return [assignment_of(X, S, S.m, x) for x in range(X.sizes[S.m])]
    return list(hom_set(S, X))


def pb_space(T: Shape, S: Shape, f: SimplicialMap) -> list[PBElement]:
    """``PB(T, Z, S, X)`` by direct enumeration (lexicographic in ``(v, u)``)."""
    pos = S.restriction_positions(T)
    out = []
    for v in _codomain_maps(S, f.target):
        w = tuple(v[p] for p in pos)
        for u in hom_set(T, f.source, lift=(f, w)):
            out.append((u, v))
    # simplex indices of X need not be lexicographic in their face assignments
    return sorted(out, key=lambda e: (e[1], e[0]))


def pb_space_inductive(T: Shape, S: Shape, f: SimplicialMap) -> list[PBElement]:
    """``PB(T, Z, S, X)`` built one simplex of ``T`` at a time.

    Adding a simplex ``sigma`` of dimension ``l`` to ``T'`` gives
    ``PB(T', Z, S, X) x_{PB(dDelta[l], Z, Delta[l], X)} Z_l``.
    """
    Z = f.source
    counter = Counter("inductive pullback")
    Spos = S.position
    current: list[PBElement] = [((), v) for v in _codomain_maps(S, f.target)]
    for p, sigma in enumerate(T.simplices):
        l = len(sigma) - 1
        Z.require_dim(l)
        fibre: dict[tuple, list[int]] = {}
        for z in range(Z.sizes[l]):
            key = (tuple(Z.faces[l][i][z] for i in range(l + 1)) if l else (), f.levels[l][z])
            fibre.setdefault(key, []).append(z)
        fp = T.face_positions[p]
        sp = Spos[sigma]
        nxt = []
        for u, v in current:
            key = (tuple(u[q] for q in fp), v[sp])
            for z in fibre.get(key, ()):
                counter.tick()
                nxt.append((u + (z,), v))
        current = nxt
    return sorted(current, key=lambda e: (e[1], e[0]))


def boundary_pb(f: SimplicialMap, k: int) -> list[PBElement]:
    return pb_space(boundary(k), simplex(k), f)


def boundary_key(f: SimplicialMap, k: int, z: int) -> PBElement:
    """Image of ``z`` in ``PB(dDelta[k], Z, Delta[k], X)``."""
    Z, X = f.source, f.target
    return (assignment_of(Z, boundary(k), k, z) if k else (),
            assignment_of(X, simplex(k), k, f.levels[k][z]))


@dataclass(frozen=True)
class LevelCertificate:
    k: int
    required: str            # "cover" or "iso"
    pb_size: int
    fibres: tuple[tuple[int, ...], ...] = field(repr=False)
    ok: bool = True
    witness: object = None


@dataclass(frozen=True)
class HypercoverCertificate:
    n: int
    levels: tuple[LevelCertificate, ...]
    extra: tuple[tuple[str, object], ...] = ()

    @property
    def ok(self) -> bool:
        return all(l.ok for l in self.levels) and not self.extra

    @property
    def failure(self):
        for l in self.levels:
            if not l.ok:
                return ("level", l.k, l.required, l.witness)
        return self.extra[0] if self.extra else None


def _level_certificate(f: SimplicialMap, k: int, required: str) -> LevelCertificate:
    pb = boundary_pb(f, k)
    idx = {e: i for i, e in enumerate(pb)}
    fibres: list[list[int]] = [[] for _ in pb]
    for z in range(f.source.sizes[k]):
        key = boundary_key(f, k, z)
        if key not in idx:
            raise StructuralError(f"simplex {z} does not land in the pullback at level {k}")
        fibres[idx[key]].append(z)
    empty = next((pb[i] for i, fb in enumerate(fibres) if not fb), None)
    multi = next(((pb[i], tuple(fb)) for i, fb in enumerate(fibres) if len(fb) > 1), None)
    ok = empty is None and (required == "cover" or multi is None)
    witness = None if ok else (("unhit", empty) if empty is not None else ("collision", multi))
    return LevelCertificate(k, required, len(pb), tuple(tuple(fb) for fb in fibres), ok, witness)


def check_hypercover(f: SimplicialMap, n: int, check_dim: int | None = None,
                     require_groupoids: bool = True) -> HypercoverCertificate:
    """Surjective at levels below ``n``, bijective at ``n`` and, as a re-check,
    bijective up to ``check_dim`` (default ``n + 1`` within the truncation)."""
    bad = check_simplicial_map(f)
    if bad:
        raise StructuralError(f"not a simplicial map: {bad[0]}")
    top = min(f.dim, n + 1) if check_dim is None else check_dim
    if require_groupoids:
        for name, Y in (("source", f.source), ("target", f.target)):
            c = classify_n_groupoid(Y, min(top, Y.trunc_dim))
            if c.n is None or c.n > n:
                raise ClassificationError(f"{name} is not an {n}-groupoid: {c}")
    levels = [_level_certificate(f, k, "cover" if k < n else "iso") for k in range(top + 1)]
    extra = []
    if all(l.ok for l in levels):
        extra = lemma_checks(f, top)
    return HypercoverCertificate(n, tuple(levels), tuple(extra))


def lemma_checks(f: SimplicialMap, up_to: int) -> list[tuple[str, object]]:
    """Consequences of being a hypercover, re-verified by enumeration:

    * ``Z_m -> PB(Lambda[m,j], Z, Delta[m], X)`` is onto,
    * ``hom(Lambda[m,j], Z) -> hom(Lambda[m,j], X)`` is onto,
    * ``PB(dDelta[m], Z, Delta[m], X) -> X_m`` is onto.
    """
    Z, X, L = f.source, f.target, f.levels
    out = []
    for m in range(1, up_to + 1):
        for j in range(m + 1):
            hz = horn_maps(Z, m, j)
            hx = set(horn_maps(X, m, j))
            images = {tuple(L[m - 1][y] for y in h) for h in hz}
            if images != hx:
                out.append(("horn-lift", (m, j, min(hx - images))))
                return out
            by_image: dict[tuple, list[tuple]] = {}
            for h in hz:
                by_image.setdefault(tuple(L[m - 1][y] for y in h), []).append(h)
            hit = {(horn_restriction(Z, m, j, z), L[m][z]) for z in range(Z.sizes[m])}
            for x in range(X.sizes[m]):
                for h in by_image.get(horn_restriction(X, m, j, x), ()):
                    if (h, x) not in hit:
                        out.append(("horn-pullback", (m, j, h, x)))
                        return out
        over = {v[-1] for _, v in boundary_pb(f, m)}
        if over != set(range(X.sizes[m])):
            out.append(("boundary-pullback-onto", (m, min(set(range(X.sizes[m])) - over))))
            return out
    return out


def check_1_hypercover(f: SimplicialMap, n: int, check_dim: int | None = None) -> HypercoverCertificate:
    cert = check_hypercover(f, n, check_dim)
    if sorted(f.levels[0]) != list(range(f.target.sizes[0])):
        return HypercoverCertificate(cert.n, cert.levels, cert.extra + (("level-0-not-bijective", f.levels[0]),))
    return cert


def compose_hypercovers(f: SimplicialMap, g: SimplicialMap, n: int, check_dim: int | None = None):
    """Certify ``f``, ``g`` and then ``g o f`` (the composite is certified on its own)."""
    cf = check_hypercover(f, n, check_dim)
    cg = check_hypercover(g, n, check_dim)
    h = compose_maps(g, f)
    return h, cf, cg, check_hypercover(h, n, check_dim)


def fibre_product(f: SimplicialMap, g: SimplicialMap):
    """``Z x_X Z'`` levelwise with its two projections."""
    if f.target != g.target:
        raise StructuralError("maps have different targets")
    N = min(f.dim, g.dim)
    Z, Z2 = f.source, g.source
    levels = []
    for n in range(N + 1):
        by = {}
        for b in range(Z2.sizes[n]):
            by.setdefault(g.levels[n][b], []).append(b)
        levels.append(sorted((a, b) for a in range(Z.sizes[n]) for b in by.get(f.levels[n][a], ())))
    index = [{p: k for k, p in enumerate(l)} for l in levels]
    faces = [()] + [tuple(tuple(index[n - 1][(Z.faces[n][i][a], Z2.faces[n][i][b])] for a, b in levels[n])
                          for i in range(n + 1)) for n in range(1, N + 1)]
    degens = [tuple(tuple(index[n + 1][(Z.degens[n][i][a], Z2.degens[n][i][b])] for a, b in levels[n])
                    for i in range(n + 1)) for n in range(N)] + [()]
    W = TruncatedSimplicialSet(tuple(len(l) for l in levels), tuple(faces), tuple(degens),
                               tuple(tuple(l) for l in levels))
    p1 = SimplicialMap(W, Z, tuple(tuple(a for a, _ in l) for l in levels))
    p2 = SimplicialMap(W, Z2, tuple(tuple(b for _, b in l) for l in levels))
    return W, p1, p2


def fibre_product_ngroupoids(f: SimplicialMap, cover: SimplicialMap, n: int, check_dim: int | None = None):
    """Pull the hypercover ``cover`` back along ``f``.

    Returns ``W``, both projections, the classification of ``W`` and the
    certificate that the projection onto the source of ``f`` is a hypercover.
    """
    W, p1, p2 = fibre_product(f, cover)
    cls = classify_n_groupoid(W, min(W.trunc_dim, (check_dim or n + 1)))
    cert = check_hypercover(p1, n, check_dim)
    return W, p1, p2, cls, cert


# ---------------------------------------------------------------------------
# maps between nerves

def functor_nerve_map(G: FiniteGroupoid, H: FiniteGroupoid, fo, fa, ZN: TruncatedSimplicialSet,
                      XN: TruncatedSimplicialSet) -> SimplicialMap:
    """Nerve of a functor between the nerves ``ZN`` of ``G`` and ``XN`` of ``H``."""
    levels = []
    for n in range(ZN.trunc_dim + 1):
        idx = {lab: k for k, lab in enumerate(XN.labels[n])}
        if n == 0:
            levels.append(tuple(idx[(fo[x],)] for (x,) in ZN.labels[0]))
        else:
            levels.append(tuple(idx[tuple(fa[g] for g in lab)] for lab in ZN.labels[n]))
    return SimplicialMap(ZN, XN, tuple(levels))


def two_groupoid_nerve_map(Z: TwoGroupoidData, X: TwoGroupoidData, f0, f1, f2, N: int):
    """Nerves of ``Z`` and ``X`` through level ``N`` and the map extending ``f0, f1, f2``."""
    ZN, XN = nerve_two_groupoid(Z, N), nerve_two_groupoid(X, N)
    low = [tuple(f0), tuple(f1), tuple(f2)][: N + 1]
    f = extend_map(ZN, XN, low, N)
    if f is None:
        raise StructuralError("the level maps do not extend to the nerves")
    return ZN, XN, f


# ---------------------------------------------------------------------------
# pulled-back 2-groupoids

@dataclass(frozen=True)
class Level1Cover:
    """Levels 0 and 1 of ``Z`` with their map to a 2-groupoid ``X``."""
    n0: int
    f0: tuple[int, ...]
    d10: tuple[int, ...]
    d11: tuple[int, ...]
    s00: tuple[int, ...]
    f1: tuple[int, ...]


def pullback_two_groupoid(X: TwoGroupoidData, C: Level1Cover):
    """``Z_2 = PB(dDelta[2], Z, Delta[2], X)`` with m's borrowed from ``X``.

    Elements of ``Z_2`` are ``(h_0, h_1, h_2, eta)``. Returns the 2-groupoid
    data and the three level maps into ``X``.
    """
    (xd0, xd1, xd2), (xs0, xs1) = X.d2, X.s1
    by_faces: dict[tuple, list[int]] = {}
    for e in range(X.sizes[2]):
        by_faces.setdefault((xd0[e], xd1[e], xd2[e]), []).append(e)
    n1 = len(C.f1)
    d = (C.d10, C.d11)
    elems = []
    for h0 in range(n1):
        for h1 in range(n1):
            if d[0][h1] != d[0][h0]:      # d_0 h_1 = d_0 h_0
                continue
            for h2 in range(n1):
                if d[0][h2] != d[1][h0] or d[1][h2] != d[1][h1]:
                    continue
                for e in by_faces.get((C.f1[h0], C.f1[h1], C.f1[h2]), ()):
                    elems.append((h0, h1, h2, e))
    elems.sort()
    ei = {t: k for k, t in enumerate(elems)}
    s10 = tuple(ei[(h, h, C.s00[C.d11[h]], xs0[C.f1[h]])] for h in range(n1))
    s11 = tuple(ei[(C.s00[C.d10[h]], h, h, xs1[C.f1[h]])] for h in range(n1))

    def mult(i):
        def m(horn):
            edges = {}
            for k, z in zip([k for k in range(4) if k != i], horn):
                V = [v for v in range(4) if v != k]
                h0, h1, h2, _ = elems[z]
                edges[(V[1], V[2])], edges[(V[0], V[2])], edges[(V[0], V[1])] = h0, h1, h2
            p, q, r = [v for v in range(4) if v != i]
            e = X.mult[i].get(tuple(elems[z][3] for z in horn))
            return None if e is None else ei.get((edges[(q, r)], edges[(p, r)], edges[(p, q)], e))
        return m

    Z = make_two_groupoid((C.n0, n1, len(elems)), d, C.s00,
                          tuple(tuple(t[i] for t in elems) for i in range(3)), (s10, s11),
                          [mult(i) for i in range(4)])
    return Z, (C.f0, C.f1, tuple(t[3] for t in elems))


def product_cover(X: TwoGroupoidData, copies0: Sequence[int], copies1: int = 1) -> Level1Cover:
    """A cover with ``copies0[x]`` points over each object ``x`` and ``copies1``
    arrows over each element of ``PB(dDelta[1], Z, Delta[1], X)``."""
    pts = [(x, c) for x in range(X.sizes[0]) for c in range(copies0[x])]
    arrs = []
    for a, (xa, _) in enumerate(pts):
        for b, (xb, _) in enumerate(pts):
            for g in range(X.sizes[1]):
                if X.d1[0][g] == xa and X.d1[1][g] == xb:
                    for c in range(copies1):
                        arrs.append((a, b, g, c))
    arrs.sort()
    ai = {t: k for k, t in enumerate(arrs)}
    s00 = tuple(ai[(z, z, X.s0[pts[z][0]], 0)] for z in range(len(pts)))
    return Level1Cover(len(pts), tuple(p[0] for p in pts), tuple(t[0] for t in arrs),
                       tuple(t[1] for t in arrs), s00, tuple(t[2] for t in arrs))


def lemma_fp(B_A: Sequence[int], C_A: Sequence[int], L_A: Sequence[int], M_B: Sequence[int],
             M_L: Sequence[int], N_LC: Sequence[tuple[int, int]]) -> bool:
    """Set-level lemma: covers ``L -> A``, ``M -> B``, ``N -> L x_A C`` and a
    compatible ``M -> L`` give a surjection ``M x_L N -> B x_A C``."""
    target = {(b, c) for b in range(len(B_A)) for c in range(len(C_A)) if B_A[b] == C_A[c]}
    image = {(M_B[m], c) for m in range(len(M_B)) for (l, c) in N_LC if M_L[m] == l}
    return image == target
