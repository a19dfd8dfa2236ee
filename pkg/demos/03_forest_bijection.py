"""The forest picture of a nested set, on an eight-leaf example.

The host group is Z/2 x Z/4 with a four-character representation chosen so
that two chains of closed subgroups {e} < C2 < C1 < G and
{e} < C2 < C1' < G exist.  A forest with two fallen leaves, one tree
crowned by the full group, and a small chain tree maps to a seven-block
nested set; the blocks read cosets off the edge paths, multiplying deeper
labels on the left.  Going back recovers the forest on the nose.

Run from the repository root:  python demos/03_forest_bijection.py
"""

from dowlingnest import (
    FiniteGroup,
    ProblemInstance,
    Representation,
    Subgroup,
    decompose_forest,
    forest_to_nested,
    is_nested,
    nested_to_forest,
    validate_forest,
)
from dowlingnest.forests import LabelledForest, Leaf, Vertex

group = FiniteGroup.from_abelian([2, 4])
rep = Representation.from_characters(group, [[0, 1], [1, 2], [1, 0], [0, 2]])
names = {
    (0,): "e",
    (0, 2): "C2",
    (0, 1, 2, 3): "C1",
    (0, 2, 4, 6): "C1'",
    tuple(range(8)): "G",
}
inst = ProblemInstance(8, group, rep, names=names)

C2 = Subgroup((0, 2))
C1 = Subgroup((0, 1, 2, 3))
C1P = Subgroup((0, 2, 4, 6))
G = Subgroup(tuple(range(8)))

# edge labels: element 4 = (1,0), 6 = (1,2), 5 = (1,1); representatives
# are the minimal ids in each coset
lower = Vertex(C1, ((0, Leaf(4)), (4, Leaf(7))))
low_c2 = Vertex(C2, ((0, Leaf(2)), (4, Leaf(6))))
mid_c2 = Vertex(C2, ((5, Leaf(3)), (0, low_c2)))
top = Vertex(C1, ((4, lower), (0, mid_c2)))
big_tree = Vertex(G, ((0, top),))
chain_tree = Vertex(C1P, ((0, Vertex(C2, ((0, Leaf(5)),))),))
forest = LabelledForest((Leaf(1), big_tree, chain_tree, Leaf(8)))

print("forest valid:", validate_forest(inst, forest))
print("fallen leaves:", forest.fallen_leaves)

nested = forest_to_nested(inst, forest)
print(f"\nthe {len(nested.blocks)} blocks of the image nested set:")
for blk in nested.blocks:
    print("  " + blk.describe(inst))

print("\nnested by the antichain check:", is_nested(inst, nested.blocks))
print("round trip reproduces the forest:", nested_to_forest(inst, nested) == forest)

dec = decompose_forest(inst, forest)
print(f"\ndecomposition: {dec.components} components, {dec.fallen} fallen leaves")
for K, count in dec.leaf_counts:
    print(f"  label {inst.subgroup_label(K):3}: {count} leaves attached")
