"""Finite stacky groupoids and their correspondence with finite 2-groupoids.

A stacky groupoid is presented by a groupoid ``G`` (presenting the space of
arrows), a set ``M`` of points, maps ``s, t: G_0 -> M``, an identity section
``e: M -> G_0`` and a bibundle ``E`` from ``G x_{s,M,t} G`` to ``G`` presenting
multiplication.

Each element of ``E`` is read as a triangle: ``pr_1 J_l`` is edge 01,
``pr_2 J_l`` is edge 12 and ``J_r`` is edge 02. The two composites of three
arrows are then triangulated squares:

* ``L``: pairs ``(eta_012, eta_023)`` glued along 02, modulo ``G`` acting on 02,
* ``R``: pairs ``(eta_123, eta_013)`` glued along 13, modulo ``G`` acting on 13.

The associator ``a: L -> R`` is stored on canonical (least) representatives
as rows ``(eta_012, eta_023, eta_123, eta_013)``. The unitors ``b_l`` and ``b_r``
map the triangles whose edge 01 (respectively 12) is an identity onto arrows of ``G``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import StructuralError
from .groupoid import (Bibundle, FiniteGroupoid, check_bibundle, check_functor, check_groupoid,
                       check_morita, discrete_groupoid, fibred_product, make_bibundle, opposite,
                       right_principal)
from .two_gpd import TwoGroupoidData, check_two_groupoid, make_two_groupoid

Pair = tuple[int, int]


@dataclass(frozen=True)
class StackyGroupoidData:
    G: FiniteGroupoid
    M: int
    s: tuple[int, ...]
    t: tuple[int, ...]
    e: tuple[int, ...]
    E: Bibundle
    a: tuple[tuple[int, int, int, int], ...]
    b_l: tuple[tuple[int, int], ...]
    b_r: tuple[tuple[int, int], ...]

    @cached_property
    def ops(self) -> "Ops":
        return Ops(self)


def product_groupoid(G: FiniteGroupoid, s, t) -> FiniteGroupoid:
    """``G x_{s,M,t} G``: pairs of composable arrows of the presented groupoid."""
    return fibred_product(G, G, s, t)


class Ops:
    """Triangle vocabulary for the bibundle ``E``."""

    def __init__(self, S: StackyGroupoidData):
        self.S = S
        G, E = S.G, S.E
        P = E.left
        if P.obj_labels is None or P.arr_labels is None:
            raise StructuralError("the left groupoid of E must carry its pair labels")
        self.pobj = P.obj_labels
        self.parr = {p: k for k, p in enumerate(P.arr_labels)}
        self.x = tuple(self.pobj[j][0] for j in E.J_l)
        self.y = tuple(self.pobj[j][1] for j in E.J_l)
        self.r = E.J_r
        self.G = G
        self.E = E
        self.a_map = {(p, q): (u, v) for p, q, u, v in S.a}
        self.a_inv = {(u, v): (p, q) for p, q, u, v in S.a}
        self.bl = dict(S.b_l)
        self.br = dict(S.b_r)
        self.eset = set(S.e)

    def right(self, eta: int, g: int) -> int:
        return self.E.act_r(eta, g)

    def left1(self, g: int, eta: int) -> int:
        """Act on edge 01."""
        return self.E.act_l(self.parr[(g, self.G.unit[self.y[eta]])], eta)

    def left2(self, g: int, eta: int) -> int:
        """Act on edge 12."""
        return self.E.act_l(self.parr[(self.G.unit[self.x[eta]], g)], eta)

    # squares -----------------------------------------------------------
    def l_orbit(self, p: int, q: int) -> list[Pair]:
        G = self.G
        return [(self.right(p, g), self.left1(G.inv[g], q)) for g in G.by_tgt[self.r[p]]]

    def r_orbit(self, p: int, q: int) -> list[Pair]:
        G = self.G
        return [(self.right(p, g), self.left2(G.inv[g], q)) for g in G.by_tgt[self.r[p]]]

    def canon_l(self, p: int, q: int) -> Pair:
        return min(self.l_orbit(p, q))

    def canon_r(self, p: int, q: int) -> Pair:
        return min(self.r_orbit(p, q))

    @cached_property
    def l_reps(self) -> list[Pair]:
        n = self.E.size
        return sorted({self.canon_l(p, q) for p in range(n) for q in range(n) if self.r[p] == self.x[q]})

    @cached_property
    def r_reps(self) -> list[Pair]:
        n = self.E.size
        return sorted({self.canon_r(p, q) for p in range(n) for q in range(n) if self.r[p] == self.y[q]})

    def flip(self, p: int, q: int) -> Pair:
        """Apply ``a`` to the square ``(pqr, pru)``; returns a representative ``(qru, pqu)``."""
        return self.a_map[self.canon_l(p, q)]

    # unitors ------------------------------------------------------------
    @cached_property
    def dom_l(self) -> list[int]:
        return [h for h in range(self.E.size) if self.x[h] in self.eset]

    @cached_property
    def dom_r(self) -> list[int]:
        return [h for h in range(self.E.size) if self.y[h] in self.eset]

    @cached_property
    def bl_inv(self) -> dict[int, int]:
        return {g: h for h, g in self.bl.items()}

    @cached_property
    def br_inv(self) -> dict[int, int]:
        return {g: h for h, g in self.br.items()}


# ---------------------------------------------------------------------------
# checking

@dataclass(frozen=True)
class StackyReport:
    failures: tuple[tuple[str, object], ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def labels(self) -> set[str]:
        return {f[0] for f in self.failures}


def check_stacky(S: StackyGroupoidData) -> StackyReport:
    """Every item of the definition, one labelled failure per broken item."""
    out: list[tuple[str, object]] = []
    G = S.G
    bad = check_groupoid(G)
    if bad:
        return StackyReport((("groupoid", bad[0]),))
    for name, f in (("s", S.s), ("t", S.t)):
        if len(f) != G.n_obj or any(not 0 <= v < S.M for v in f):
            raise StructuralError(f"{name} is not a map G_0 -> M")
        if any(f[G.src[g]] != f[G.tgt[g]] for g in range(G.n_arr)):
            out.append(("moment-maps", f"{name} is not constant on G-orbits"))
        if set(f) != set(range(S.M)):
            out.append(("moment-maps", f"{name} is not surjective"))
    if len(S.e) != S.M or any(not 0 <= v < G.n_obj for v in S.e):
        raise StructuralError("e is not a map M -> G_0")
    if any(S.s[S.e[p]] != p or S.t[S.e[p]] != p for p in range(S.M)):
        out.append(("identity-section", "s o e or t o e is not the identity"))
    E = S.E
    if E.left != product_groupoid(G, S.s, S.t) or E.right != G:
        return StackyReport(tuple(out) + (("bibundle", "E has the wrong groupoids"),))
    bad = check_bibundle(E) + right_principal(E)
    if bad:
        return StackyReport(tuple(out) + (("bibundle", bad[0]),))
    O = S.ops
    for h in range(E.size):
        if S.t[O.r[h]] != S.t[O.x[h]] or S.s[O.r[h]] != S.s[O.y[h]]:
            out.append(("m1", h))
            break
    pairs = {(u, v) for u in range(G.n_obj) for v in range(G.n_obj) if S.s[u] == S.s[v]}
    missing = pairs - {(O.y[h], O.r[h]) for h in range(E.size)}
    if missing:
        out.append(("kan22", min(missing)))
    assoc = _check_associator(S)
    out += assoc
    if not assoc:
        out += _check_cube(S)
    units = _check_unitors(S)
    out += units
    if not units and not assoc:
        out += _check_unit_coherence(S)
    bad = check_morita(inverse_bibundle(S))
    if bad:
        out.append(("inverse", bad[0]))
    return StackyReport(tuple(out))


def _check_associator(S: StackyGroupoidData) -> list:
    O, G = S.ops, S.G
    out = []
    if len(O.a_map) != len(S.a):
        return [("associator", "a has repeated rows")]
    if set(O.a_map) != set(O.l_reps):
        diff = set(O.a_map) ^ set(O.l_reps)
        return [("associator", ("domain", min(diff)))]
    if sorted(O.a_map.values()) != O.r_reps:
        return [("associator", "a is not a bijection onto the R classes")]
    x, y, r = O.x, O.y, O.r
    for (p, q), (u, v) in O.a_map.items():
        if (x[p], y[p], y[q]) != (x[v], x[u], y[u]) or r[q] != r[v]:
            out.append(("associator", ("moment", (p, q))))
            break
        img = (u, v)
        moves = []
        for g in G.by_src[x[p]]:
            moves.append(((O.left1(g, p), q), (u, O.left1(g, v))))
        for g in G.by_src[y[p]]:
            moves.append(((O.left2(g, p), q), (O.left1(g, u), v)))
        for g in G.by_src[y[q]]:
            moves.append(((p, O.left2(g, q)), (O.left2(g, u), v)))
        for g in G.by_tgt[r[q]]:
            moves.append(((p, O.right(q, g)), (u, O.right(v, g))))
        for (lp, lq), (rp, rq) in moves:
            if O.a_map[O.canon_l(lp, lq)] != O.canon_r(rp, rq):
                out.append(("associator", ("equivariance", (p, q))))
                return out
        del img
    return out


def _final_class(O: Ops, t234: int, t124: int, t014: int) -> tuple[int, int, int]:
    """Least representative of a triangulation ``(234, 124, 014)`` of the pentagon."""
    G = O.G
    best = None
    for g in G.by_tgt[O.r[t234]]:
        a = O.right(t234, g)
        b0 = O.left2(G.inv[g], t124)
        for g2 in G.by_tgt[O.r[b0]]:
            cand = (a, O.right(b0, g2), O.left2(G.inv[g2], t014))
            if best is None or cand < best:
                best = cand
    return best


def _check_cube(S: StackyGroupoidData) -> list:
    """Both ways of rebracketing four arrows through ``a`` agree (pentagon form)."""
    O = S.ops
    n = S.E.size
    by_x: dict[int, list[int]] = {}
    for h in range(n):
        by_x.setdefault(O.x[h], []).append(h)
    for t012 in range(n):
        for t023 in by_x.get(O.r[t012], ()):
            for t034 in by_x.get(O.r[t023], ()):
                t234, t024 = O.flip(t023, t034)
                t124, t014 = O.flip(t012, t024)
                one = _final_class(O, t234, t124, t014)
                t123, t013 = O.flip(t012, t023)
                t134, t014b = O.flip(t013, t034)
                t234b, t124b = O.flip(t123, t134)
                two = _final_class(O, t234b, t124b, t014b)
                if one != two:
                    return [("cube", (t012, t023, t034))]
    return []


def _check_unitors(S: StackyGroupoidData) -> list:
    O, G = S.ops, S.G
    out = []
    for name, b, dom, other, act in (("unitor-left", O.bl, O.dom_l, O.y, O.left2),
                                     ("unitor-right", O.br, O.dom_r, O.x, O.left1)):
        if sorted(b) != dom:
            out.append((name, "domain"))
            continue
        if sorted(b.values()) != list(range(G.n_arr)):
            out.append((name, "not a bijection onto G_1"))
            continue
        for h, g in b.items():
            if G.tgt[g] != other[h] or G.src[g] != O.r[h]:
                out.append((name, ("moment", h)))
                break
            if any(b[act(k, h)] != G.mul(k, g) for k in G.by_src[other[h]]) or \
                    any(b[O.right(h, k)] != G.mul(g, k) for k in G.by_tgt[O.r[h]]):
                out.append((name, ("equivariance", h)))
                break
    return out


def _check_unit_coherence(S: StackyGroupoidData) -> list:
    O, G = S.ops, S.G
    out = []
    for h in set(O.dom_l) & set(O.dom_r):
        if O.bl[h] != O.br[h]:
            out.append(("b-on-M", h))
            break
    for xi in range(S.E.size):
        unit = G.unit[O.r[xi]]
        t023 = O.br_inv[unit]
        t123, t013 = O.flip(xi, t023)
        if O.left2(O.br[t123], t013) != xi:
            out.append(("br", xi))
            break
    for xi in range(S.E.size):
        unit = G.unit[O.r[xi]]
        t013 = O.bl_inv[unit]
        t012, t023 = O.a_inv[O.canon_r(xi, t013)]
        if O.left1(O.bl[t012], t023) != xi:
            out.append(("bl", xi))
            break
    n = S.E.size
    for p in O.dom_r:
        for q in range(n):
            if O.x[q] != O.r[p]:
                continue
            lhs = O.left1(O.br[p], q)
            u, v = O.flip(p, q)
            rhs = O.left2(O.bl[u], v)
            if lhs != rhs:
                out.append(("bl-br", (p, q)))
                return out
    return out


def inverse_bibundle(S: StackyGroupoidData) -> Bibundle:
    """``E x_{J_r, G_0, e} M`` as a bibundle from ``G`` to ``G^op``.

    ``G`` acts on edge 01 and ``G^op`` on edge 12, with moment maps
    ``pr_1 J_l`` and ``pr_2 J_l``.
    """
    O, G = S.ops, S.G
    tot = [(h, p) for h in range(S.E.size) for p in range(S.M) if S.e[p] == O.r[h]]
    idx = {q: k for k, q in enumerate(tot)}
    return make_bibundle(
        G, opposite(G), len(tot), [O.x[h] for h, _ in tot], [O.y[h] for h, _ in tot],
        lambda g, k: idx[(O.left1(g, tot[k][0]), tot[k][1])],
        lambda k, g: idx[(O.left2(g, tot[k][0]), tot[k][1])], tuple(tot))


# ---------------------------------------------------------------------------
# constructions

def stacky_from_two_groupoid(D: TwoGroupoidData) -> StackyGroupoidData:
    """The bigon groupoid and its multiplication bibundle ``E = X_2``."""
    rep = check_two_groupoid(D)
    if not rep.ok:
        raise StructuralError(f"not a 2-groupoid: {rep.failures[0]}")
    X = D.simplicial
    (d10, d11), s00 = D.d1, D.s0
    (d0, d1, d2), (s10, s11) = D.d2, D.s1
    m0, m1, m3 = D.mult[0], D.mult[1], D.mult[3]
    degenerate_edges = set(s00)
    bigons = [h for h in range(D.sizes[2]) if d2[h] in degenerate_edges]
    bi = {h: k for k, h in enumerate(bigons)}

    def act_right(h, g):  # g is a triangle; glue along edge 02 of h
        return m1[(h, g, s10[d2[h]])]

    def act_left1(g, h):
        return m0[(h, s10[d1[h]], g)]

    def act_left2(g, h):
        return m1[(g, h, s11[d2[h]])]

    comp = tuple((a, b, bi[act_right(bigons[a], bigons[b])])
                 for a in range(len(bigons)) for b in range(len(bigons)) if d1[bigons[a]] == d0[bigons[b]])
    inv = []
    for h in bigons:
        vertex = X.sub_face(2, h, [0])
        inv.append(bi[m0[(s10[d1[h]], h, s10[s00[vertex]])]])
    G = FiniteGroupoid(D.sizes[1], tuple(d1[h] for h in bigons), tuple(d0[h] for h in bigons),
                       tuple(bi[s10[g]] for g in range(D.sizes[1])), tuple(inv), comp)
    bad = check_groupoid(G)
    if bad:
        raise StructuralError(f"bigons do not form a groupoid: {bad[0]}")
    P = product_groupoid(G, d10, d11)
    pobj = {p: k for k, p in enumerate(P.obj_labels)}

    def left(k, h):
        g1, g2 = P.arr_labels[k]
        return act_left1(bigons[g1], act_left2(bigons[g2], h))

    E = make_bibundle(P, G, D.sizes[2], [pobj[(d2[h], d0[h])] for h in range(D.sizes[2])], d1,
                      left, lambda h, g: act_right(h, bigons[g]))
    b_l = tuple((h, bi[h]) for h in bigons)
    b_r = tuple((h, bi[m3[(h, s11[d1[h]], s10[d1[h]])]])
                for h in range(D.sizes[2]) if d0[h] in degenerate_edges)
    S = StackyGroupoidData(G, D.sizes[0], d10, d11, s00, E, (), b_l, b_r)
    O = S.ops
    edge_index = X.face_index(2, (1, 2))
    rows = []
    for p, q in O.l_reps:
        images = {O.canon_r(m0[(q, h, p)], h) for h in edge_index.get((d1[q], d2[p]), ())}
        if len(images) != 1:
            raise StructuralError(f"associator is not well defined on {(p, q)}")
        u, v = images.pop()
        rows.append((p, q, u, v))
    return StackyGroupoidData(G, D.sizes[0], d10, d11, s00, E, tuple(rows), b_l, b_r)


@dataclass(frozen=True)
class BigonIso:
    """``phi`` from bigons (``d_2`` degenerate) to triangles with ``d_0`` degenerate."""
    phi: dict[int, int]
    phi_inv: dict[int, int]
    failures: tuple


def bigon_iso_phi(D: TwoGroupoidData) -> BigonIso:
    (d0, d1, d2), (s10, s11) = D.d2, D.s1
    degenerate_edges = set(D.s0)
    m0, m3 = D.mult[0], D.mult[3]
    phi = {b: m0[(s11[d1[b]], s10[d1[b]], b)] for b in range(D.sizes[2]) if d2[b] in degenerate_edges}
    phi_inv = {h: m3[(h, s11[d1[h]], s10[d1[h]])] for h in range(D.sizes[2]) if d0[h] in degenerate_edges}
    out = []
    for b, h in phi.items():
        if phi_inv.get(h) != b:
            out.append(("inverse", b))
        if (d1[h], d2[h]) != (d1[b], d0[b]):
            out.append(("edges", b))
    if sorted(phi.values()) != sorted(phi_inv):
        out.append(("bijective", None))
    return BigonIso(phi, phi_inv, tuple(out))


def _pick(orbit, pos: int, value: int, want: int):
    hits = {c[want] for c in orbit if c[pos] == value}
    return hits.pop() if len(hits) == 1 else None


def two_groupoid_from_stacky(S: StackyGroupoidData) -> TwoGroupoidData:
    """Levels ``M``, ``G_0``, ``E`` with the m's read off the associator.

    Each m picks the unique member of an associator class with one prescribed
    triangle (freeness of the actions on ``E``).
    """
    O, G = S.ops, S.G
    d2 = (O.y, O.r, O.x)
    s1 = (tuple(O.bl_inv[G.unit[g]] for g in range(G.n_obj)),
          tuple(O.br_inv[G.unit[g]] for g in range(G.n_obj)))

    def m0(h):
        e1, e2, e3 = h
        u, v = O.a_map[O.canon_l(e3, e1)]
        return _pick(O.r_orbit(u, v), 1, e2, 0)

    def m1(h):
        e0, e2, e3 = h
        p, q = O.a_inv[O.canon_r(e0, e2)]
        return _pick(O.l_orbit(p, q), 0, e3, 1)

    def m2(h):
        e0, e1, e3 = h
        u, v = O.a_map[O.canon_l(e3, e1)]
        return _pick(O.r_orbit(u, v), 0, e0, 1)

    def m3(h):
        e0, e1, e2 = h
        p, q = O.a_inv[O.canon_r(e0, e2)]
        return _pick(O.l_orbit(p, q), 1, e1, 0)

    return make_two_groupoid((S.M, G.n_obj, S.E.size), (S.s, S.t), S.e, d2, s1, [m0, m1, m2, m3])


def strict_stacky(K: FiniteGroupoid) -> StackyGroupoidData:
    """A groupoid ``K`` viewed as a stacky groupoid: ``G`` is the discrete
    groupoid on the arrows of ``K`` and ``E`` is the graph of composition."""
    G = discrete_groupoid(K.n_arr)
    P = product_groupoid(G, K.src, K.tgt)
    pairs = P.obj_labels
    E = make_bibundle(P, G, len(pairs), range(len(pairs)), [K.mul(a, b) for a, b in pairs],
                      lambda k, h: h, lambda h, g: h, pairs)
    pi = {p: k for k, p in enumerate(pairs)}
    rows = []
    for (g1, g2) in pairs:
        g12 = K.mul(g1, g2)
        for g3 in K.by_tgt[K.src[g2]]:
            rows.append((pi[(g1, g2)], pi[(g12, g3)], pi[(g2, g3)], pi[(g1, K.mul(g2, g3))]))
    b_l = tuple((pi[(K.unit[K.tgt[g]], g)], g) for g in range(K.n_arr))
    b_r = tuple((pi[(g, K.unit[K.src[g]])], g) for g in range(K.n_arr))
    return StackyGroupoidData(G, K.n_obj, K.src, K.tgt, K.unit, E, tuple(sorted(rows)),
                              tuple(sorted(b_l)), tuple(sorted(b_r)))


def check_inverse_axiom(S: StackyGroupoidData) -> list:
    return check_morita(inverse_bibundle(S))


def bigon_roundtrip(S: StackyGroupoidData) -> list:
    """Roundtrip starting from a stacky groupoid: the bigons of the 2-groupoid
    built from ``S`` map isomorphically onto ``G`` through ``b_l``, and ``E``
    comes back with the same moment maps."""
    D = two_groupoid_from_stacky(S)
    S2 = stacky_from_two_groupoid(D)
    O = S.ops
    bigons = [h for h, _ in S2.b_l]
    fa = [O.bl[h] for h in bigons]
    out = [("functor", f) for f in check_functor(S2.G, S.G, list(range(S.G.n_obj)), fa)]
    if sorted(fa) != list(range(S.G.n_arr)):
        out.append(("functor", "not bijective on arrows"))
    O2 = S2.ops
    if (O2.x, O2.y, O2.r) != (O.x, O.y, O.r):
        out.append(("E", "moment maps changed"))
    return out
