import pytest

from kanforge.corpus import cyclic, small_groups
from kanforge.errors import DimensionError, StructuralError
from kanforge.groupoid import discrete_groupoid, group_groupoid, groupoid_from_1groupoid, nerve_groupoid, pair_groupoid
from kanforge.kan import (classify_n_groupoid, fill_horn, horn_maps, horn_maps_via_shape, horn_restriction,
                          horn_status, is_n_groupoid, kan_condition, restriction_fibers, unique_kan_condition)
from kanforge.simplicial import coskeleton_unit, is_isomorphism, simplex, skeleton
from kanforge.two_gpd import abelian_two_group, nerve_two_groupoid


def test_z2_composition_fibers_are_singletons(z2_nerve):
    fib = restriction_fibers(z2_nerve, 2, 1)
    assert len(fib) == 4 and all(len(v) == 1 for v in fib.values())


def test_point_has_singleton_fibers():
    X = nerve_groupoid(discrete_groupoid(1), 4)
    for m in range(1, 5):
        for j in range(m + 1):
            assert all(len(v) == 1 for v in restriction_fibers(X, m, j).values())


def test_skeleton_destroys_filler():
    D2 = simplex(2).to_simplicial(2)
    Sk, _ = skeleton(D2, 1)
    fib = restriction_fibers(Sk, 2, 1)
    e01, e12 = D2.labels[1].index((0, 1)), D2.labels[1].index((1, 2))
    # horn faces are (d_0, d_2) = (12, 01)
    assert fib[(e12, e01)] == []
    c = classify_n_groupoid(Sk, 2)
    assert c.n is None and c.failure.empty_witness is not None


def test_classify_z2_nerve(z2_nerve):
    c = classify_n_groupoid(z2_nerve, 3)
    assert c.n == 1 and c.checked_dim == 3
    assert str(c) == "n = 1 up to dim 3"


def test_classify_abelian_two_group():
    X = nerve_two_groupoid(abelian_two_group(cyclic(2)), 4)
    assert classify_n_groupoid(X, 4).n == 2


def test_classify_point():
    assert classify_n_groupoid(nerve_groupoid(discrete_groupoid(1), 4), 4).n == 0


def test_classify_dimension_error(z2_nerve):
    with pytest.raises(DimensionError):
        classify_n_groupoid(z2_nerve, 7)


def test_fill_horn_outer(z2_nerve):
    X = z2_nerve
    g = 1  # the nontrivial arrow as a 1-simplex
    (x,) = fill_horn(X, 2, 0, (g, g))
    assert X.faces[2][0][x] == 0  # g2 = g1^-1 (g1 g2) is the unit


def test_fill_horn_inner(z2_nerve):
    X = z2_nerve
    (x,) = fill_horn(X, 2, 1, (1, 1))
    assert X.faces[2][1][x] == 0


def test_fill_horn_contains_source_simplex():
    X = nerve_groupoid(pair_groupoid(3), 3)
    for m in (2, 3):
        for j in range(m + 1):
            for x in range(0, X.sizes[m], 7):
                assert x in fill_horn(X, m, j, horn_restriction(X, m, j, x))


def test_fill_horn_arity():
    X = nerve_groupoid(pair_groupoid(2), 2)
    with pytest.raises(StructuralError):
        fill_horn(X, 2, 1, (0,))


def test_status_kinds(z2_nerve):
    assert horn_status(z2_nerve, 1, 0).status == "cover"
    assert horn_status(z2_nerve, 2, 1).status == "iso"
    Sk, _ = skeleton(simplex(2).to_simplicial(2), 1)
    assert horn_status(Sk, 2, 1).status == "fail"


def test_kan_predicates(z2_nerve):
    assert kan_condition(z2_nerve, 1, 1) and not unique_kan_condition(z2_nerve, 1, 1)
    assert unique_kan_condition(z2_nerve, 3, 2)
    assert is_n_groupoid(z2_nerve, 1, 4) and not is_n_groupoid(z2_nerve, 0, 4)


@pytest.mark.parametrize("name", ["C1", "C2", "S3", "Q8"])
def test_horn_maps_two_ways(name):
    X = nerve_groupoid(group_groupoid(small_groups()[name]), 3)
    for m in (1, 2, 3):
        for j in range(m + 1):
            assert horn_maps(X, m, j) == horn_maps_via_shape(X, m, j)


def test_horn_maps_two_ways_on_two_groupoid():
    X = nerve_two_groupoid(abelian_two_group(cyclic(3)), 3)
    for j in range(4):
        assert horn_maps(X, 3, j) == horn_maps_via_shape(X, 3, j)


def test_associativity_from_kan(full_corpus):
    for c in full_corpus[::9]:
        H = groupoid_from_1groupoid(nerve_groupoid(c.G, 3))
        for (a, b), ab in H.table.items():
            for (b2, cc), bc in H.table.items():
                if b2 == b:
                    assert H.mul(ab, cc) == H.mul(a, bc)


def test_cosk_sk_recovers_n_groupoid(z2_nerve):
    X = z2_nerve
    Sk, _ = skeleton(X, 2)
    from kanforge.simplicial import coskeleton
    C = coskeleton(Sk, 2, 4)
    assert C.sizes == X.sizes
    assert is_isomorphism(coskeleton_unit(X, 2, 4))
