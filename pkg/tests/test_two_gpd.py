import pytest

from kanforge.corpus import ABELIAN, abelian_two_groups, cyclic, small_groups
from kanforge.errors import StructuralError
from kanforge.groupoid import discrete_groupoid, group_groupoid, nerve_groupoid, pair_groupoid
from kanforge.kan import classify_n_groupoid
from kanforge.simplicial import check_simplicial_identities, extend_map, is_isomorphism
from kanforge.two_gpd import (TwoGroupoidData, abelian_two_group, check_two_groupoid, lambda_space,
                              level_by_induction, level_by_membership, m_equivalence_witnesses,
                              nerve_two_groupoid, promote_groupoid, truncate_to_two_groupoid)


def composable_pairs(G):
    return sum(1 for a in range(G.n_arr) for b in range(G.n_arr) if G.src[a] == G.tgt[b])


def swap_m_values(D, i, r, s):
    m = list(D.m)
    rows = list(m[i])
    rows[r], rows[s] = rows[r][:3] + (rows[s][3],), rows[s][:3] + (rows[r][3],)
    m[i] = tuple(rows)
    return TwoGroupoidData(D.sizes, D.d1, D.s0, D.d2, D.s1, tuple(m))


def test_lambda_spaces():
    A = abelian_two_group(cyclic(2))
    assert len(lambda_space(A, 3, 0)) == 8
    P = pair_groupoid(2)
    assert len(lambda_space(promote_groupoid(P), 2, 1)) == 8
    S3 = group_groupoid(small_groups()["S3"])
    assert len(lambda_space(promote_groupoid(S3), 2, 1)) == composable_pairs(S3) == 36
    with pytest.raises(StructuralError):
        lambda_space(A, 4, 0)


@pytest.mark.parametrize("name", sorted(ABELIAN))
def test_abelian_two_groups_pass(name):
    assert check_two_groupoid(abelian_two_group(ABELIAN[name])).ok


def test_plain_sum_breaks_coherence():
    D = abelian_two_group(cyclic(3), m0=lambda a, b, c: (a + b + c) % 3)
    rep = check_two_groupoid(D)
    assert "coco" in rep.labels()
    e, i, h = next(w for lab, w in rep.failures if lab == "coco")
    assert D.mult[i].get(h) != e  # the witness re-verifies on its own


def test_promoted_groupoids_pass(full_corpus):
    for c in full_corpus[::11]:
        assert check_two_groupoid(promote_groupoid(c.G)).ok, c.name


def test_nerve_of_z2_two_group():
    X = nerve_two_groupoid(abelian_two_group(cyclic(2)), 4)
    assert X.sizes[:4] == (1, 1, 2, 8)
    assert check_simplicial_identities(X) == []


def test_trivial_two_group_nerve_is_point():
    assert nerve_two_groupoid(abelian_two_group(cyclic(1)), 4).sizes == (1,) * 5


@pytest.mark.parametrize("G", [pair_groupoid(2), group_groupoid(cyclic(3)), discrete_groupoid(2)])
def test_promoted_nerve_is_groupoid_nerve(G):
    PN = nerve_two_groupoid(promote_groupoid(G), 4)
    GN = nerve_groupoid(G, 4)
    assert PN.sizes == GN.sizes
    f = extend_map(PN, GN, [range(G.n_obj), range(G.n_arr)], 4)
    assert f is not None and is_isomorphism(f)


def test_truncation_roundtrips(two_groups, full_corpus):
    for D in list(two_groups.values()) + [promote_groupoid(c.G) for c in full_corpus[::23]]:
        assert truncate_to_two_groupoid(nerve_two_groupoid(D, 4)) == D
    G = group_groupoid(cyclic(2))
    assert truncate_to_two_groupoid(nerve_groupoid(G, 4)) == promote_groupoid(G)
    assert truncate_to_two_groupoid(nerve_groupoid(discrete_groupoid(1), 4)) == abelian_two_group(cyclic(1))


def test_m_equivalence_on_every_full_tuple(two_groups, full_corpus):
    for D in list(two_groups.values()) + [promote_groupoid(c.G) for c in full_corpus[::7]]:
        assert m_equivalence_witnesses(D) == []


def test_m_equivalence_catches_swapped_values(two_groups):
    B = swap_m_values(two_groups["Z/4"], 1, 0, 1)
    bad = m_equivalence_witnesses(B)
    assert bad
    i, t = bad[0]
    assert t not in B.full_tuples(i)
    assert "m-iso" in check_two_groupoid(B).labels()


def test_induction_matches_membership(two_groups):
    for D in list(two_groups.values()) + [promote_groupoid(pair_groupoid(3))]:
        for k in (3, 4):
            ref = level_by_membership(D, k)
            for j in range(k + 1):
                levels, bad = level_by_induction(D, k, j)
                assert bad == [] and levels == ref


def test_nerve_methods_agree(two_groups):
    D = two_groups["Z/2xZ/2"]
    assert nerve_two_groupoid(D, 4, method="induction") == nerve_two_groupoid(D, 4)


def test_nerve_classifies_as_two_groupoid(two_groups):
    for D in two_groups.values():
        assert classify_n_groupoid(nerve_two_groupoid(D, 4), 4).n == 2
