"""Group layer: subgroup enumeration, conjugation, cosets, class poset."""

from __future__ import annotations

from itertools import combinations

import pytest

from dowlingnest import (
    FiniteGroup,
    InstanceError,
    OrderBoundExceeded,
    Subgroup,
    conjugate_subgroup,
    enumerate_subgroups,
    left_cosets,
    subgroup_conj_classes,
)
from dowlingnest.groups import check_subgroup, coset_rep, subgroup_closure

from conftest import s3_cayley_table


def brute_force_subgroups(G):
    """Oracle: close every subset of G and collect the distinct results."""
    found = set()
    elems = list(G.elements())
    for size in range(len(elems) + 1):
        for subset in combinations(elems, size):
            found.add(subgroup_closure(G, subset).elements)
    return sorted(found, key=lambda e: (len(e), e))


def test_trivial_group_has_one_subgroup():
    G = FiniteGroup.from_abelian([1])
    assert enumerate_subgroups(G) == [Subgroup((0,))]


def test_klein_four_group_subgroups():
    G = FiniteGroup.from_abelian([2, 2])
    subs = enumerate_subgroups(G)
    assert [s.elements for s in subs] == brute_force_subgroups(G)
    assert len(subs) == 5
    assert sorted(len(s) for s in subs) == [1, 2, 2, 2, 4]


def test_s3_subgroups_against_brute_force():
    _, table = s3_cayley_table()
    G = FiniteGroup.from_cayley(table)
    subs = enumerate_subgroups(G)
    assert [s.elements for s in subs] == brute_force_subgroups(G)
    assert len(subs) == 6
    for H in subs:
        check_subgroup(G, H)


def test_order_bound_is_enforced():
    G = FiniteGroup.from_abelian([3])
    with pytest.raises(OrderBoundExceeded):
        enumerate_subgroups(G, order_bound=2)


def test_conjugation_identity_and_abelian():
    G = FiniteGroup.from_abelian([2, 2])
    for H in enumerate_subgroups(G):
        assert conjugate_subgroup(G, H, 0) == H
        for g in G.elements():
            assert conjugate_subgroup(G, H, g) == H


def test_s3_conjugation_moves_transpositions():
    perms, table = s3_cayley_table()
    G = FiniteGroup.from_cayley(table)
    idx = {p: i for i, p in enumerate(perms)}
    swap_01 = idx[(1, 0, 2)]
    swap_12 = idx[(0, 2, 1)]
    three_cycle = idx[(1, 2, 0)]
    H = Subgroup((0, swap_01))
    conj = conjugate_subgroup(G, H, three_cycle)
    assert conj == Subgroup((0, swap_12))
    assert len(conj) == len(H)


def test_conjugation_preserves_order_everywhere():
    _, table = s3_cayley_table()
    G = FiniteGroup.from_cayley(table)
    for H in enumerate_subgroups(G):
        for g in G.elements():
            assert len(conjugate_subgroup(G, H, g)) == len(H)


def test_conj_classes_partition_the_subgroups():
    _, table = s3_cayley_table()
    G = FiniteGroup.from_cayley(table)
    subs = enumerate_subgroups(G)
    poset = subgroup_conj_classes(G, subs)
    covered = sorted(
        m.elements for cls in poset.classes for m in cls.members
    )
    assert covered == sorted(s.elements for s in subs)
    sizes = sorted(len(cls.members) for cls in poset.classes)
    assert sizes == [1, 1, 1, 3]  # {e}, A3, S3 are normal; transpositions fuse


def test_abelian_classes_are_singletons_with_inclusion_order():
    G = FiniteGroup.from_abelian([2, 2])
    subs = enumerate_subgroups(G)
    poset = subgroup_conj_classes(G, subs)
    assert all(len(cls.members) == 1 for cls in poset.classes)
    for P in subs:
        for Q in subs:
            assert poset.leq(P, Q) == P.is_subset(Q)


def test_class_order_is_a_partial_order():
    _, table = s3_cayley_table()
    G = FiniteGroup.from_cayley(table)
    poset = subgroup_conj_classes(G)
    k = len(poset.classes)
    for i in range(k):
        assert poset.leq_index(i, i)
        for j in range(k):
            if i != j and poset.leq_index(i, j):
                assert not poset.leq_index(j, i) or (
                    poset.classes[i].members == poset.classes[j].members
                )
            for l in range(k):
                if poset.leq_index(i, j) and poset.leq_index(j, l):
                    assert poset.leq_index(i, l)


def test_left_cosets_partition():
    G = FiniteGroup.from_abelian([4])
    K = Subgroup((0, 2))
    cosets = left_cosets(G, K)
    assert [c.members for c in cosets] == [(0, 2), (1, 3)]
    assert [c.rep for c in cosets] == [0, 1]

    whole = Subgroup((0, 1, 2, 3))
    assert [c.rep for c in left_cosets(G, whole)] == [0]

    klein = FiniteGroup.from_abelian([2, 2])
    singles = left_cosets(klein, Subgroup((0,)))
    assert len(singles) == 4
    assert all(len(c.members) == 1 for c in singles)


def test_coset_partition_properties_s3():
    _, table = s3_cayley_table()
    G = FiniteGroup.from_cayley(table)
    for K in enumerate_subgroups(G):
        cosets = left_cosets(G, K)
        assert len(cosets) == G.order // len(K)
        seen = sorted(x for c in cosets for x in c.members)
        assert seen == list(G.elements())
        assert all(len(c.members) == len(K) for c in cosets)
        assert cosets[0].rep == 0
        for c in cosets:
            for g in c.members:
                assert coset_rep(G, K, g) == c.rep


def test_bad_cayley_tables_rejected():
    with pytest.raises(InstanceError):
        FiniteGroup.from_cayley([[0, 1], [1, 1]])  # 1 has no inverse row
    with pytest.raises(InstanceError):
        FiniteGroup.from_cayley([[1, 0], [0, 1]])  # 0 not the identity


def test_abelian_spec_mixed_radix_roundtrip():
    G = FiniteGroup.from_abelian([2, 4])
    assert G.order == 8
    for a in G.elements():
        assert G.tuple_to_id(G.id_to_tuple(a)) == a
    assert G.id_to_tuple(0) == (0, 0)
    assert G.exponent() == 4
