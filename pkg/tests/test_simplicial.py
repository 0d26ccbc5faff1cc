import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from kanforge.corpus import cyclic, small_groups
from kanforge.errors import BudgetExceeded, DimensionError, StructuralError, budget
from kanforge.groupoid import group_groupoid, nerve_groupoid, pair_groupoid
from kanforge.simplicial import (SimplicialMap, TruncatedSimplicialSet, assignment_of, boundary,
                                 check_simplicial_identities, coskeleton, coskeleton_unit, custom, evaluate,
                                 hom_set, horn, identity_map, is_isomorphism, simplex, simplicial_maps, skeleton)


def monotone_count(n, m):
    """Independent count of monotone maps [n] -> [m] by recursion on the last value."""
    @__import__("functools").lru_cache(None)
    def rec(length, top):
        if length == 0:
            return 1
        return sum(rec(length - 1, v) for v in range(top + 1))
    return rec(n + 1, m)


def brute_level(kind, m, j, n):
    maps = [f for f in itertools.product(range(m + 1), repeat=n + 1) if list(f) == sorted(f)]
    if kind == "simplex":
        return len(maps)
    if kind == "horn":
        need = set(range(m + 1)) - {j}
        return sum(1 for f in maps if not need <= set(f))
    return sum(1 for f in maps if set(f) != set(range(m + 1)))


def test_simplex1_levels():
    assert [len(simplex(1).level(n)) for n in range(5)] == [2, 3, 4, 5, 6]


def test_horn21_levels():
    H = horn(2, 1)
    assert len(H.level(0)) == 3
    assert sorted(H.level(1)) == [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)]


def test_boundary1_is_two_points():
    B = boundary(1)
    assert B.simplices == ((0,), (1,))
    assert len(B.level(1)) == 2  # only the degenerate 00 and 11


@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("n", range(5))
def test_shape_counts_match_brute_force(m, n):
    assert len(simplex(m).level(n)) == monotone_count(n, m) == comb(n + m + 1, n + 1)
    assert len(boundary(m).level(n)) == brute_level("boundary", m, None, n)
    for j in range(m + 1):
        if m >= 1:
            assert len(horn(m, j).level(n)) == brute_level("horn", m, j, n)


def test_horn_rejects_bad_index():
    with pytest.raises(StructuralError):
        horn(2, 3)


def test_delta2_identities_hold():
    X = simplex(2).to_simplicial(3)
    assert check_simplicial_identities(X) == []


def test_trivial_nerve_identities():
    X = nerve_groupoid(group_groupoid(cyclic(1)), 3)
    assert X.sizes == (1, 1, 1, 1)
    assert check_simplicial_identities(X) == []


def _swap_faces(X, n, a, b, x):
    faces = [list(map(list, lv)) for lv in X.faces]
    faces[n][a][x], faces[n][b][x] = faces[n][b][x], faces[n][a][x]
    return TruncatedSimplicialSet(X.sizes, tuple(tuple(map(tuple, lv)) for lv in faces), X.degens)


def test_perturbed_delta2_reports_degeneracy_identity():
    X = simplex(2).to_simplicial(2)
    x = X.labels[2].index((0, 1, 1))
    bad = check_simplicial_identities(_swap_faces(X, 2, 0, 1, x))
    labels = {v.identity for v in bad}
    assert "d_j s_j = id = d_{j+1} s_j" in labels
    v = next(v for v in bad if v.identity.startswith("d_j s_j"))
    assert (v.level, v.j) == (1, 1) and v.lhs != v.rhs


def test_level1_face_swap_on_nondegenerate_edge_breaks_face_identities():
    X = simplex(2).to_simplicial(2)
    e = X.labels[1].index((0, 1))
    labels = {v.identity for v in check_simplicial_identities(_swap_faces(X, 1, 0, 1, e))}
    assert "d_i d_j = d_{j-1} d_i" in labels


def test_structural_errors_are_distinct():
    with pytest.raises(StructuralError):
        TruncatedSimplicialSet((1, 1), ((), ((0,),)), (((0,),), ()))
    with pytest.raises(StructuralError):
        TruncatedSimplicialSet((1, 1), ((), ((0,), (1,))), (((0,),), ()))


def test_hom_counts(z2_nerve):
    assert len(list(hom_set(simplex(1), z2_nerve))) == 2
    assert len(list(hom_set(horn(2, 1), z2_nerve))) == 4
    assert [assignment_of(z2_nerve, simplex(0), 0, 0)] == list(hom_set(simplex(0), z2_nerve))


def test_hom_delta_m_is_level_m():
    X = nerve_groupoid(pair_groupoid(2), 3)
    for m in range(4):
        homs = list(hom_set(simplex(m), X))
        assert len(homs) == X.sizes[m]
        assert sorted(homs) == sorted(assignment_of(X, simplex(m), m, x) for x in range(X.sizes[m]))


def test_hom_horn_into_delta2():
    assert len(list(hom_set(horn(2, 1), simplex(2).to_simplicial(2)))) == 10


def test_hom_dimension_error(z2_nerve):
    with pytest.raises(DimensionError):
        list(hom_set(simplex(5), z2_nerve))


def test_evaluate_on_degenerate_simplex():
    X = nerve_groupoid(pair_groupoid(2), 2)
    a = assignment_of(X, simplex(1), 1, 1)
    x = evaluate(simplex(1), X, a, (0, 1, 1))
    assert X.faces[2][2][x] == 1 and X.faces[2][0][x] == X.degens[0][0][X.faces[1][0][1]]


def test_skeleton_of_delta2_has_only_degenerate_top():
    X = simplex(2).to_simplicial(2)
    Sk, inc = skeleton(X, 1)
    assert Sk.sizes[2] == X.sizes[2] - 1
    assert all(Sk.is_degenerate(2, x) for x in range(Sk.sizes[2]))
    assert not check_simplicial_identities(Sk)


def test_coskeleton_group_nerve():
    X = nerve_groupoid(group_groupoid(cyclic(2)), 2)
    C = coskeleton(X, 2, 3)
    assert C.sizes[3] == 8
    assert not check_simplicial_identities(C)


def test_coskeleton_n_plus_one_is_identity_for_z3():
    X = nerve_groupoid(group_groupoid(cyclic(3)), 3)
    assert is_isomorphism(coskeleton_unit(X, 2, 3))


def test_coskeleton_budget():
    X = nerve_groupoid(pair_groupoid(3), 1)
    with budget(50), pytest.raises(BudgetExceeded):
        coskeleton(X, 1, 3)


def _restrict_levels(f, n):
    return tuple(f.levels[: n + 1])


@pytest.mark.parametrize("n", [0, 1])
def test_skeleton_coskeleton_adjunction(n):
    """hom(Sk^n Y, X) and hom(Y, Cosk^n X) both restrict bijectively onto maps of n-truncations."""
    Y = simplex(1).to_simplicial(2)
    X = nerve_groupoid(pair_groupoid(2), 2)
    Sk, _ = skeleton(Y, n)
    C = coskeleton(X.truncate(n), n, 2)
    left = [_restrict_levels(f, n) for f in simplicial_maps(Sk, X)]
    right = [_restrict_levels(f, n) for f in simplicial_maps(Y, C)]
    truncated = [f.levels for f in simplicial_maps(Y.truncate(n), X.truncate(n))]
    assert len(set(left)) == len(left) and len(set(right)) == len(right)
    assert set(left) == set(right) == set(truncated)


def test_identity_map_is_iso(z2_nerve):
    assert is_isomorphism(identity_map(z2_nerve))


GROUPS = sorted(small_groups())


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(GROUPS), st.integers(min_value=1, max_value=3))
def test_group_nerves_satisfy_identities(name, N):
    G = group_groupoid(small_groups()[name])
    X = nerve_groupoid(G, N)
    assert check_simplicial_identities(X) == []
    assert X.sizes == tuple(G.n_arr ** k for k in range(N + 1))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.data())
def test_custom_shapes_are_closed(m, data):
    tops = data.draw(st.lists(st.sampled_from(list(itertools.chain.from_iterable(
        itertools.combinations(range(m + 1), k) for k in range(1, m + 2)))), min_size=1, max_size=4))
    S = custom(m, tops)
    for s in S.simplices:
        for i in range(len(s)):
            if len(s) > 1:
                assert s[:i] + s[i + 1:] in S.position
    X = S.to_simplicial(max(S.dim, 1))
    assert check_simplicial_identities(X) == []
