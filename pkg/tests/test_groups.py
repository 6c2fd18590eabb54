"""Tests for the finite-group propositions and the F_2-subspace lemmas."""

import pytest

from finegrading.errors import GroupError
from finegrading.groups import (
    Q83K,
    f2_subspace_cases,
    maximal_abelian_FxQ82K,
    maximal_abelian_Q83K,
    q8_automorphisms,
    q8_mul,
)


def test_q8_multiplication():
    one, i, j, k = (0, 0), (1, 0), (2, 0), (3, 0)
    minus = lambda x: (x[0], x[1] ^ 1)
    assert q8_mul(i, i) == minus(one)
    assert q8_mul(i, j) == k
    assert q8_mul(j, i) == minus(k)
    assert q8_mul(j, k) == i
    assert q8_mul(k, i) == j
    assert q8_mul(minus(i), j) == minus(k)
    assert q8_mul(one, k) == k


def test_q8_automorphism_count():
    autos = q8_automorphisms()
    assert len(autos) == 24
    assert len({tuple(sorted(a.items())) for a in autos}) == 24
    ident = {x: x for x in autos[0]}
    assert ident in autos


def test_group_order_and_center():
    G = Q83K()
    assert len(G.elements) == 128
    assert len(G.center) == 2
    minus_one = G.coset(((0, 1), (0, 1), (0, 1)))
    assert minus_one == G.identity or minus_one in G.center
    # (-1,-1,-1)K is the nontrivial central class: (-1,-1,1) lies in K
    assert minus_one != G.identity
    assert G.coset(((0, 1), (0, 1), (0, 0))) == G.identity


def test_coset_folding():
    G = Q83K()
    # flipping two signs is a K-operation and fixes the class
    a = G.coset(((1, 0), (2, 1), (3, 1)))
    b = G.coset(((1, 1), (2, 0), (3, 1)))
    assert a == b
    assert G.coset(((1, 1), (2, 1), (3, 1))) != a


def test_maximal_abelian_q83k_report():
    report = maximal_abelian_Q83K()
    assert report["ok"]
    assert report["group_order"] == 128
    assert report["subgroup_count"] == 135
    assert report["isomorphism_type"] == "Z_2^2 x Z_4"
    assert report["orbit_count"] == 3
    assert report["orbit_sizes"] == (27, 54, 54)
    assert all(len(rep) == 16 for rep in report["orbit_representatives"])


def test_subspace_cases_three_blocks():
    report = f2_subspace_cases(3)
    assert report["ok"]
    assert report["conditioned_count"] == 514
    assert report["maximal_count"] == 135
    assert report["family_counts"] == {1: 27, 2: 54, 3: 54}
    for fam in report["families"].values():
        for B in fam:
            assert len(B) == 8  # dimension 3


def test_subspace_cases_two_blocks():
    report = f2_subspace_cases(2)
    assert report["ok"]
    assert report["conditioned_count"] == 31
    assert report["maximal_count"] == 15
    assert report["family_counts"] == {1: 25, 2: 6}


def test_subspace_cases_rejects_other_block_counts():
    with pytest.raises(GroupError):
        f2_subspace_cases(4)


def test_group_and_subspace_classifications_agree():
    # quotienting (Q_8)^3/K by its center identifies maximal abelian
    # subgroups with maximal conditioned subspaces, orbit by orbit
    ga = maximal_abelian_Q83K()
    sa = f2_subspace_cases(3)
    assert ga["subgroup_count"] == sa["maximal_count"]
    assert ga["orbit_sizes"] == tuple(sorted(sa["family_counts"].values()))


def test_maximal_abelian_fxq82k_report():
    report = maximal_abelian_FxQ82K()
    assert report["ok"]
    assert report["maximal_count"] == 15
    assert report["rectangle_count"] == 9
    assert report["graph_count"] == 6
    assert report["orbit_count"] == 2
    assert report["orbit_sizes"] == (6, 9)
