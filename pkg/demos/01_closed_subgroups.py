"""Closed subgroups of a representation, step by step.

The running example: the Klein four-group acting on the plane, the first
generator flipping the x-axis and the second flipping the y-axis.  Three
of the five subgroups survive the closure operator; the diagonal subgroup
fixes only the origin, exactly like the full group, so it closes up to G.

Run from the repository root:  python demos/01_closed_subgroups.py
"""

from dowlingnest import (
    FiniteGroup,
    ProblemInstance,
    Representation,
    Subgroup,
    closed_subgroups,
    closure_phi,
)

group = FiniteGroup.from_abelian([2, 2])
rep = Representation.from_characters(group, [[1, 0], [0, 1]])
inst = ProblemInstance(2, group, rep, names={
    (0,): "e",
    (0, 2): "H1",
    (0, 1): "H2",
    (0, 3): "D",
    (0, 1, 2, 3): "G",
})

print("element ids are mixed-radix pairs: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1)")
print(f"the group has {len(inst.subgroups())} subgroups:\n")

cs = closed_subgroups(inst)
for H in inst.subgroups():
    phi = closure_phi(inst, H)
    fixed = inst.rep.fix_true_dim(H)
    status = "closed" if H in cs else f"not closed, closure = {inst.subgroup_label(phi)}"
    print(f"  {inst.subgroup_label(H):3} fixes a {fixed}-dimensional subspace  ({status})")

print()
print("the diagonal D = {(0,0),(1,1)} acts by +-1 on both axes at once,")
print("so it fixes only the origin -- the same fixed space as all of G.")
print("The closure operator therefore sends D to G, and D is not closed.")

diag = Subgroup((0, 3))
assert closure_phi(inst, diag).elements == (0, 1, 2, 3)
print()
print(f"closed subgroups: {[inst.subgroup_label(K) for K in cs.members]}")
