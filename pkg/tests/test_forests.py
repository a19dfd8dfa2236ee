"""Forest validation, the nested-set bijection, and decompositions."""

from __future__ import annotations

import pytest

from dowlingnest import (
    Block,
    MalformedForest,
    NestedSet,
    Subgroup,
    decompose_forest,
    enumerate_forests,
    enumerate_nested_sets,
    forest_to_nested,
    is_nested,
    nested_to_forest,
    validate_forest,
)
from dowlingnest.forests import (
    LabelledForest,
    Leaf,
    Vertex,
    forest_from_json,
    forest_to_json,
    forest_violation,
)

from conftest import make_abelian_instance


# -- the eight-leaf worked example -----------------------------------------------------

C2 = Subgroup((0, 2))
C1 = Subgroup((0, 1, 2, 3))
C1P = Subgroup((0, 2, 4, 6))
WHOLE8 = Subgroup(tuple(range(8)))

# edge elements: a = (1,0) -> id 4, b = (1,2) -> id 6 (coset rep 4 mod C1),
# c = (1,1) -> id 5 (rep 5 mod C2), d = (1,0) -> id 4 (rep 4 mod C2)


def example_forest():
    lower_c1 = Vertex(C1, ((0, Leaf(4)), (4, Leaf(7))))
    low_c2 = Vertex(C2, ((0, Leaf(2)), (4, Leaf(6))))
    mid_c2 = Vertex(C2, ((5, Leaf(3)), (0, low_c2)))
    top_c1 = Vertex(C1, ((4, lower_c1), (0, mid_c2)))
    root_g = Vertex(WHOLE8, ((0, top_c1),))
    chain = Vertex(C1P, ((0, Vertex(C2, ((0, Leaf(5)),))),))
    return LabelledForest((Leaf(1), root_g, chain, Leaf(8)))


EXPECTED_BLOCKS = {
    Block(WHOLE8, (2, 3, 4, 6, 7), (0, 0, 0, 0, 0)),
    Block(C1, (2, 3, 4, 6, 7), (0, 4, 4, 4, 0)),
    Block(C1, (4, 7), (0, 4)),
    Block(C2, (2, 3, 6), (0, 5, 4)),
    Block(C2, (2, 6), (0, 4)),
    Block(C1P, (5,), (0,)),
    Block(C2, (5,), (0,)),
}


def test_example_forest_is_valid(chains8):
    assert validate_forest(chains8, example_forest())
    assert example_forest().fallen_leaves == (1, 8)


def test_example_forest_maps_to_the_seven_blocks(chains8):
    ns = forest_to_nested(chains8, example_forest())
    assert set(ns.blocks) == EXPECTED_BLOCKS
    assert is_nested(chains8, ns.blocks)


def test_seven_blocks_map_back_to_the_forest(chains8):
    ns = NestedSet(tuple(EXPECTED_BLOCKS))
    assert nested_to_forest(chains8, ns) == example_forest()


def test_unary_trivial_vertex_over_leaf_is_rejected(chains8):
    trivial = Subgroup((0,))
    bad = LabelledForest(
        (
            Vertex(trivial, ((0, Leaf(1)),)),
            Vertex(WHOLE8, tuple((0, Leaf(i)) for i in range(2, 9))),
        )
    )
    assert forest_violation(chains8, bad).startswith("rule (2)")


def test_two_trees_with_the_full_group_are_rejected(chains8):
    t1 = Vertex(WHOLE8, tuple((0, Leaf(i)) for i in (1, 2, 3, 4)))
    t2 = Vertex(WHOLE8, tuple((0, Leaf(i)) for i in (5, 6, 7, 8)))
    bad = LabelledForest((t1, t2))
    assert forest_violation(chains8, bad).startswith("rule (3)")


def test_smallest_leaf_edge_must_be_trivial(z3):
    e = Subgroup((0,))
    bad = LabelledForest((Vertex(e, ((1, Leaf(1)), (0, Leaf(2)))),))
    assert forest_violation(z3, bad).startswith("rule (5)")


def test_noncanonical_edge_representative_rejected(z4):
    whole = Subgroup((0, 1, 2, 3))
    sub = Subgroup((0, 2))
    # 3 is in the coset {1,3} of <2>, whose canonical representative is 1
    bad = LabelledForest(
        (Vertex(sub, ((0, Leaf(1)), (3, Leaf(2)))),)
    )
    inst = make_abelian_instance([4], [[1], [2]], 2)
    assert forest_violation(inst, bad).startswith("rule (4)")


def test_descendant_label_order_enforced(z4_plane):
    whole = Subgroup((0, 1, 2, 3))
    mid = Subgroup((0, 2))
    bad = LabelledForest(
        (
            Vertex(
                mid,
                (
                    (0, Vertex(whole, ((0, Leaf(1)), (0, Leaf(2))))),
                ),
            ),
        )
    )
    violation = forest_violation(z4_plane, bad)
    assert violation.startswith("rule (1)") or violation.startswith("rule (2)")


def test_forest_without_internal_vertices_rejected():
    inst = make_abelian_instance([2], [[1]], 2)
    bare = LabelledForest((Leaf(1), Leaf(2)))
    assert forest_violation(inst, bare) == "forest has no internal vertex"


def test_malformed_forests_raise():
    inst = make_abelian_instance([2], [[1]], 2)
    with pytest.raises(MalformedForest):
        forest_violation(inst, LabelledForest((Leaf(1), Leaf(1))))
    with pytest.raises(MalformedForest):
        forest_violation(inst, LabelledForest((Leaf(1),)))
    with pytest.raises(MalformedForest):
        forest_violation(
            inst,
            LabelledForest((Leaf(1), Vertex(Subgroup((0, 1)), ()))),
        )


def test_single_tree_one_block_map(z2):
    e = Subgroup((0,))
    tree = Vertex(e, ((0, Leaf(1)), (1, Leaf(2))))
    ns = forest_to_nested(z2, LabelledForest((tree,)))
    assert ns.blocks == (Block(e, (1, 2), (0, 1)),)


def test_singleton_block_forest(z3):
    whole = Subgroup((0, 1, 2))
    inst = z3.with_n(3)
    ns = NestedSet((Block(whole, (2,), (0,)),))
    forest = nested_to_forest(inst, ns)
    assert forest.fallen_leaves == (1, 3)
    assert forest.internal_count() == 1
    assert forest_to_nested(inst, forest) == ns


# -- enumeration and the bijection ---------------------------------------------------


def test_single_factor_sign_has_one_forest():
    inst = make_abelian_instance([2], [[1]], 1)
    forests = enumerate_forests(inst)
    assert len(forests) == 1
    (forest,) = forests
    assert forest.internal_count() == 1


def test_forest_cap_raises(z2):
    from dowlingnest import SizeBoundExceeded

    with pytest.raises(SizeBoundExceeded):
        enumerate_forests(z2, cap=3)


def test_forest_count_equals_nested_count(z2, z3, z4, klein, s3):
    for inst in (z2, z3, z4, klein, s3):
        assert len(enumerate_forests(inst)) == len(enumerate_nested_sets(inst))


def test_bijection_round_trips(z2, z3, z4, klein, s3):
    for inst in (z2, z3, z4, klein, s3):
        nested = enumerate_nested_sets(inst)
        forests = enumerate_forests(inst)
        image = set()
        for forest in forests:
            ns = forest_to_nested(inst, forest)
            assert nested_to_forest(inst, ns) == forest
            image.add(ns)
        assert image == set(nested)
        for ns in nested:
            forest = nested_to_forest(inst, ns)
            assert forest_to_nested(inst, forest) == ns


def test_full_group_blocks_in_one_nested_set_form_a_chain(klein):
    whole = Subgroup((0, 1, 2, 3))
    from dowlingnest import block_leq

    for ns in enumerate_nested_sets(klein):
        g_blocks = [b for b in ns.blocks if b.subgroup == whole]
        for a in g_blocks:
            for b in g_blocks:
                assert block_leq(klein, a, b) or block_leq(klein, b, a)


def test_enumerated_forests_all_validate(z4, klein, s3):
    for inst in (z4, klein, s3):
        for forest in enumerate_forests(inst):
            assert validate_forest(inst, forest)


def test_rule_4_condition_is_coset_invariant(s3):
    """Whether a^-1 P a lies in Q depends only on the coset aQ, so checking
    the canonical representative is exact."""
    from dowlingnest import closed_subgroups
    from dowlingnest.groups import coset_rep

    G = s3.group
    members = closed_subgroups(s3).members
    for Q in members:
        for P in members:
            for a in G.elements():
                direct = all(G.conj(G.inv(a), p) in Q.elements for p in P)
                rep = coset_rep(G, Q, a)
                via_rep = all(G.conj(G.inv(rep), p) in Q.elements for p in P)
                assert direct == via_rep


def test_s3_cross_transposition_edges_admit_one_coset(s3):
    """Conjugating one transposition subgroup into another pins the edge
    coset: exactly one of the three cosets satisfies the rule, and the
    enumeration produces forests using it."""
    from dowlingnest import closed_subgroups
    from dowlingnest.groups import left_cosets

    G = s3.group
    taus = [K for K in closed_subgroups(s3).members if len(K) == 2]
    assert len(taus) == 3
    found_edge = False
    for Q in taus:
        for P in taus:
            if P == Q:
                continue
            good = [
                c.rep
                for c in left_cosets(G, Q)
                if all(G.conj(G.inv(c.rep), p) in Q.elements for p in P)
            ]
            assert len(good) == 1
    for forest in enumerate_forests(s3):
        for tree in forest.trees:
            if isinstance(tree, Leaf):
                continue
            for v in _all_vertices(tree):
                for rep, child in v.children:
                    if (
                        isinstance(child, Vertex)
                        and len(v.subgroup) == 2
                        and len(child.subgroup) == 2
                        and child.subgroup != v.subgroup
                    ):
                        found_edge = True
    assert found_edge


def _all_vertices(node):
    if isinstance(node, Vertex):
        yield node
        for _, child in node.children:
            yield from _all_vertices(child)


def test_abelian_rule_variants_accept_the_same_forests(z4_plane, klein):
    for inst in (z4_plane, klein):
        for forest in enumerate_forests(inst):
            assert validate_forest(inst, forest, variant="general")
            assert validate_forest(inst, forest, variant="abelian")
        # and both reject the same tampered forests
        e = Subgroup((0,))
        whole = Subgroup(tuple(inst.group.elements()))
        bad = LabelledForest(
            (
                Vertex(e, ((0, Leaf(1)),)),
                Vertex(whole, ((0, Leaf(2)),)),
            )
        )
        assert not validate_forest(inst, bad, variant="general")
        assert not validate_forest(inst, bad, variant="abelian")


def test_canonical_form_idempotent(klein):
    for forest in enumerate_forests(klein):
        rebuilt = LabelledForest(forest.trees)
        assert rebuilt == forest


def test_forest_json_round_trip(klein):
    for forest in enumerate_forests(klein)[:25]:
        data = forest_to_json(forest)
        assert forest_from_json(data) == forest


# -- decomposition ------------------------------------------------------------------


def test_example_decomposition_counts(chains8):
    dec = decompose_forest(chains8, example_forest())
    assert dec.fallen == 2  # leaves 1 and 8
    assert dec.components == 4
    counts = {K.elements: c for K, c in dec.leaf_counts}
    # leaves 4, 7 hang on C1 vertices; 2, 3, 6 and 5 hang on C2 vertices
    assert counts[C1.elements] == 2
    assert counts[C2.elements] == 4
    assert counts.get(C1P.elements, 0) == 0
    assert counts.get(WHOLE8.elements, 0) == 0
    subforests = {K.elements: trees for K, trees in dec.subforests}
    # C1 cluster: the top C1 vertex with its lower C1 child stay connected
    assert len(subforests[C1.elements]) == 1
    assert len(subforests[C2.elements]) == 2
    assert len(subforests[C1P.elements]) == 1
    assert len(subforests[WHOLE8.elements]) == 1


def test_single_label_decomposition(z2):
    e = Subgroup((0,))
    forest = LabelledForest((Vertex(e, ((0, Leaf(1)), (1, Leaf(2)))),))
    dec = decompose_forest(z2, forest)
    assert dec.fallen == 0
    assert dec.components == 1
    assert dec.leaf_counts == ((e, 2),)


def test_subforest_leaves_are_unlabelled(chains8):
    dec = decompose_forest(chains8, example_forest())
    for K, trees in dec.subforests:
        for tree in trees:
            for _, child in _walk_edges(tree):
                if isinstance(child, Leaf):
                    assert child.label is None


def _walk_edges(node):
    for rep, child in node.children:
        yield rep, child
        if isinstance(child, Vertex):
            yield from _walk_edges(child)
