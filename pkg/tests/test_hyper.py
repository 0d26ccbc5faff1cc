import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kanforge.corpus import cyclic
from kanforge.errors import ClassificationError
from kanforge.groupoid import discrete_groupoid, nerve_groupoid, pair_groupoid
from kanforge.hyper import (boundary_pb, check_1_hypercover, check_hypercover, compose_hypercovers,
                            fibre_product, fibre_product_ngroupoids, functor_nerve_map, lemma_fp,
                            pb_space, pb_space_inductive, product_cover, pullback_two_groupoid,
                            two_groupoid_nerve_map)
from kanforge.kan import classify_n_groupoid
from kanforge.simplicial import boundary, custom, horn, identity_map, simplex
from kanforge.two_gpd import abelian_two_group, check_two_groupoid


def pair_functor(G, H, fo, N):
    """Nerve map of the functor between pair/Cech groupoids induced by ``fo``."""
    fa = [next(b for b in range(H.n_arr) if H.src[b] == fo[G.src[a]] and H.tgt[b] == fo[G.tgt[a]])
          for a in range(G.n_arr)]
    return functor_nerve_map(G, H, fo, fa, nerve_groupoid(G, N), nerve_groupoid(H, N))


def to_point(G, N=3):
    return pair_functor(G, discrete_groupoid(1), [0] * G.n_obj, N)


def test_boundary_pullback_over_a_point():
    f = to_point(pair_groupoid(2))
    # over a point, PB(dDelta[k]) is hom(dDelta[k], N Pair2): vertex labellings (2^2, 2^3)
    assert len(boundary_pb(f, 1)) == 4
    assert len(boundary_pb(f, 2)) == 8
    # dDelta[3] in the nerve of Pair2: again any 4 vertices
    assert len(boundary_pb(f, 3)) == 16


@pytest.mark.parametrize("T,S", [(horn(2, 0), simplex(2)), (boundary(2), simplex(2)), (horn(3, 1), simplex(3)),
                                 (boundary(3), simplex(3)), (custom(3, [(0, 1), (2, 3)]), simplex(3))])
def test_direct_and_inductive_pullbacks_agree(T, S):
    G = pair_groupoid(3)
    fo = [0, 0, 1]
    f = pair_functor(G, pair_groupoid(2), fo, 3)
    assert pb_space(T, S, f) == pb_space_inductive(T, S, f)


def test_pullback_against_brute_force():
    G = pair_groupoid(3)
    f = pair_functor(G, pair_groupoid(2), [0, 0, 1], 2)
    # edges (u0, u1) of Pair3 over a 2-simplex of Pair2 matching on vertices 0, 1
    brute = sum(1 for v in itertools.product(range(2), repeat=3) for u in itertools.product(range(3), repeat=2)
                if [0, 0, 1][u[0]] == v[0] and [0, 0, 1][u[1]] == v[1])
    T = custom(2, [(0, 1)])
    assert len(pb_space(T, simplex(2), f)) == brute == 18


def test_pair_over_point_is_hypercover():
    f = to_point(pair_groupoid(2))
    cert = check_hypercover(f, 1)
    assert cert.ok and cert.failure is None
    assert [l.pb_size for l in cert.levels] == [1, 4, 8]


def test_point_into_pair_is_refuted():
    f = pair_functor(discrete_groupoid(1), pair_groupoid(2), [0], 3)
    cert = check_hypercover(f, 1)
    assert not cert.ok
    kind, k, req, (what, _) = cert.failure
    assert (kind, k, req, what) == ("level", 0, "cover", "unhit")


def test_not_injective_at_level_n():
    # Pair2 -> pt as 0-groupoids fails its precondition; as n=1 the top level is bijective
    with pytest.raises(ClassificationError):
        check_hypercover(to_point(pair_groupoid(2)), 0)


def test_identity_is_hypercover(z2_nerve):
    assert check_hypercover(identity_map(z2_nerve), 1).ok
    assert check_1_hypercover(identity_map(z2_nerve), 1).ok


def test_one_hypercover_needs_bijective_objects():
    cert = check_1_hypercover(to_point(pair_groupoid(2)), 1)
    assert not cert.ok and cert.failure[0] == "level-0-not-bijective"


def test_composition():
    f = pair_functor(pair_groupoid(3), pair_groupoid(2), [0, 0, 1], 3)
    g = to_point(pair_groupoid(2))
    h, cf, cg, ch = compose_hypercovers(f, g, 1)
    assert cf.ok and cg.ok and ch.ok
    assert h.levels == to_point(pair_groupoid(3)).levels


def test_fibre_product_over_point():
    f, g = to_point(pair_groupoid(2)), to_point(pair_groupoid(3))
    W, p1, p2 = fibre_product(f, g)
    assert W.sizes == (6, 36, 216, 1296)
    W, p1, p2, cls, cert = fibre_product_ngroupoids(f, g, 1)
    assert cls.n == 1 and cert.ok


def test_pullback_of_non_cover_is_not_a_cover():
    P = pair_groupoid(2)
    ident = identity_map(nerve_groupoid(P, 3))
    g = pair_functor(discrete_groupoid(1), P, [0], 3)
    W, p1, p2, cls, cert = fibre_product_ngroupoids(ident, g, 1)
    assert W.sizes[0] == 1 and not cert.ok
    assert cert.failure[:3] == ("level", 0, "cover")


def brute_z2_size(X, copies0, copies1):
    """``|PB(dDelta[2])|`` for a product cover of a one-object 2-group."""
    pts = copies0[0]
    return pts ** 3 * copies1 ** 3 * X.sizes[2]


@pytest.mark.parametrize("copies0,copies1", [([1], 1), ([2], 1), ([1], 2)])
def test_pullback_two_groupoid_sizes(copies0, copies1):
    X = abelian_two_group(cyclic(2))
    Z, (f0, f1, f2) = pullback_two_groupoid(X, product_cover(X, copies0, copies1))
    assert Z.sizes == (copies0[0], copies0[0] ** 2 * copies1, brute_z2_size(X, copies0, copies1))
    assert check_two_groupoid(Z).ok


def test_identity_cover_recovers_x():
    X = abelian_two_group(cyclic(3))
    Z, (f0, f1, f2) = pullback_two_groupoid(X, product_cover(X, [1], 1))
    assert Z == X and f2 == tuple(range(3))


def test_pullback_two_groupoid_is_hypercover():
    X = abelian_two_group(cyclic(2))
    Z, fs = pullback_two_groupoid(X, product_cover(X, [2], 1))
    ZN, XN, f = two_groupoid_nerve_map(Z, X, *fs, 3)
    assert classify_n_groupoid(ZN, 3).n == 2
    cert = check_hypercover(f, 2, 3)
    assert cert.ok
    assert not check_1_hypercover(f, 2, 3).ok


def test_doubled_arrows_give_one_hypercover():
    X = abelian_two_group(cyclic(2))
    Z, fs = pullback_two_groupoid(X, product_cover(X, [1], 2))
    ZN, XN, f = two_groupoid_nerve_map(Z, X, *fs, 3)
    assert check_1_hypercover(f, 2, 3).ok


sets = st.integers(min_value=1, max_value=3)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_lemma_fp(data):
    nA = data.draw(sets)
    B_A = data.draw(st.lists(st.integers(0, nA - 1), min_size=1, max_size=3))
    C_A = data.draw(st.lists(st.integers(0, nA - 1), min_size=1, max_size=3))
    L_A = list(range(nA)) + data.draw(st.lists(st.integers(0, nA - 1), max_size=2))
    BL = [(b, l) for b in range(len(B_A)) for l in range(len(L_A)) if B_A[b] == L_A[l]]
    LC = [(l, c) for l in range(len(L_A)) for c in range(len(C_A)) if L_A[l] == C_A[c]]
    M = BL + data.draw(st.lists(st.sampled_from(BL), max_size=2)) if BL else []
    N = LC + data.draw(st.lists(st.sampled_from(LC), max_size=2)) if LC else []
    assert lemma_fp(B_A, C_A, L_A, [b for b, _ in M], [l for _, l in M], N)


def test_lemma_fp_needs_cover():
    # M misses the only point over b = 0
    assert not lemma_fp([0], [0], [0], [], [], [(0, 0)])
