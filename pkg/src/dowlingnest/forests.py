"""Labelled forests and their bijection with nested sets.

A forest on leaves {1..n} has internal vertices labelled by closed
subgroups and edges labelled by canonical coset representatives of the
parent vertex's subgroup.  The admissible labelings:

  (1) an internal vertex below a vertex labelled Q carries a label P with
      [P] <= [Q] in the conjugacy-class order;
  (2) a unary vertex over an internal vertex strictly decreases the class
      going down, and a unary vertex over a leaf is not labelled {e};
  (3) the full-group label appears in at most one tree, and such a vertex
      has at most one direct full-group child;
  (4) an edge out of a vertex labelled Q carries a coset aQ, and when the
      child is internal with label P the representative satisfies
      a^-1 P a <= Q (a coset-invariant condition);
  (5) at every internal vertex, the edge toward the subtree holding the
      smallest descendant leaf carries the trivial coset.

Isolated leaves (single-vertex trees) are the fallen leaves; a forest must
contain at least one internal vertex.

Each internal vertex v maps to the block whose label is the label of v,
whose indices are the leaves below v, and whose coset at leaf i is the
product of the edge representatives along the path from v down to i,
deeper edges multiplying on the left.  This map is a bijection onto the
nonempty nested sets; the inverse hangs every leaf below the smallest
block containing it and solves the edge cosets from coset mismatches.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .arrangement import Block, NestedSet, block_leq, closed_subgroups
from .errors import MalformedForest, NotRealizable, SizeBoundExceeded
from .groups import Subgroup, coset_rep

_NO_LEAF = 10**9  # sort sentinel for unlabelled leaves


@dataclass(frozen=True)
class Leaf:
    """Leaf vertex; label None only occurs in decomposition subforests."""

    label: object = None


@dataclass(frozen=True)
class Vertex:
    """Internal vertex: a subgroup label and (coset representative, child) pairs."""

    subgroup: Subgroup
    children: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "children",
            tuple(sorted(self.children, key=lambda e: min_leaf(e[1]))),
        )


def min_leaf(node):
    if isinstance(node, Leaf):
        return node.label if node.label is not None else _NO_LEAF
    if not node.children:  # malformed; caught by check_structure
        return _NO_LEAF
    return min(min_leaf(child) for _, child in node.children)


def leaves_below(node):
    if isinstance(node, Leaf):
        return (node.label,) if node.label is not None else ()
    out = []
    for _, child in node.children:
        out.extend(leaves_below(child))
    return tuple(sorted(out))


def internal_vertices(node):
    if isinstance(node, Leaf):
        return
    yield node
    for _, child in node.children:
        yield from internal_vertices(child)


@dataclass(frozen=True)
class LabelledForest:
    trees: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "trees", tuple(sorted(self.trees, key=min_leaf))
        )

    @property
    def fallen_leaves(self):
        return tuple(
            t.label for t in self.trees if isinstance(t, Leaf) and t.label is not None
        )

    @property
    def leaf_labels(self):
        out = []
        for t in self.trees:
            out.extend(leaves_below(t))
        return tuple(sorted(out))

    def internal_count(self):
        return sum(1 for t in self.trees for _ in internal_vertices(t))

    def components(self):
        return len(self.trees)


def check_structure(inst, forest):
    """Raise MalformedForest unless leaves biject onto {1..n} and nodes are sane."""
    seen = []

    def walk(node):
        if isinstance(node, Leaf):
            if not isinstance(node.label, int):
                raise MalformedForest("forest leaf without an integer label")
            seen.append(node.label)
            return
        if not isinstance(node, Vertex):
            raise MalformedForest(f"unexpected node {node!r}")
        if not isinstance(node.subgroup, Subgroup):
            raise MalformedForest("internal vertex without a subgroup label")
        if not node.children:
            raise MalformedForest("internal vertex with no children")
        for rep, child in node.children:
            if not isinstance(rep, int):
                raise MalformedForest("edge without an integer coset representative")
            walk(child)

    for t in forest.trees:
        walk(t)
    if sorted(seen) != list(range(1, inst.n + 1)):
        raise MalformedForest(
            f"leaf labels {sorted(seen)} are not a bijection onto 1..{inst.n}"
        )


def forest_violation(inst, forest, variant="general"):
    """First violated rule as a string, or None when the forest is valid.

    variant="abelian" applies the simplified unary/coset clauses; on abelian
    instances both variants accept exactly the same forests.
    """
    check_structure(inst, forest)
    G = inst.group
    conj = inst.conj_classes()
    whole = Subgroup(tuple(range(G.order)))
    trivial = Subgroup((G.identity,))

    def class_lt(P, Q):
        return conj.leq(P, Q) and conj.class_index(P) != conj.class_index(Q)

    trees_with_g = 0
    for tree in forest.trees:
        if any(v.subgroup.elements == whole.elements for v in internal_vertices(tree)):
            trees_with_g += 1
    if trees_with_g > 1:
        return "rule (3): the full-group label appears in more than one tree"

    for tree in forest.trees:
        for v in internal_vertices(tree):
            Q = v.subgroup
            g_children = 0
            for rep, child in v.children:
                if rep != coset_rep(G, Q, rep):
                    return (
                        "rule (4): edge representative is not canonical for a coset "
                        f"of {Q.label()}"
                    )
                if isinstance(child, Vertex):
                    P = child.subgroup
                    if variant == "abelian":
                        if not P.is_subset(Q):
                            return "rule (1): descendant label not below its ancestor"
                    else:
                        if not conj.leq(P, Q):
                            return "rule (1): descendant class not below its ancestor"
                        a_inv = G.inv(rep)
                        if any(G.conj(a_inv, p) not in Q.elements for p in P):
                            return (
                                "rule (4): representative does not conjugate the child "
                                "label into the parent label"
                            )
                    if P.elements == whole.elements:
                        g_children += 1
            if Q.elements == whole.elements and g_children > 1:
                return "rule (3): a full-group vertex has two full-group children"
            if len(v.children) == 1:
                rep, child = v.children[0]
                if isinstance(child, Leaf):
                    if Q.elements == trivial.elements:
                        return "rule (2): a unary vertex over a leaf is labelled {e}"
                else:
                    P = child.subgroup
                    if variant == "abelian":
                        if not (P.is_subset(Q) and P.elements != Q.elements):
                            return "rule (2): unary vertex without a strict label drop"
                    else:
                        if not class_lt(P, Q):
                            return "rule (2): unary vertex without a strict class drop"
            # rule (5): the edge toward the smallest descendant leaf is trivial
            smallest = min(min_leaf(c) for _, c in v.children)
            for rep, child in v.children:
                if min_leaf(child) == smallest and rep != 0:
                    return "rule (5): smallest-leaf edge does not carry the trivial coset"
    if forest.internal_count() == 0:
        return "forest has no internal vertex"
    return None


def validate_forest(inst, forest, variant="general"):
    return forest_violation(inst, forest, variant=variant) is None


# -- forest -> nested set ---------------------------------------------------------


def forest_to_nested(inst, forest):
    """One block per internal vertex, cosets from the path-product rule."""
    G = inst.group
    blocks = []

    def leaf_products(node):
        """leaf -> product of edge representatives from this vertex down."""
        out = {}
        for rep, child in node.children:
            if isinstance(child, Leaf):
                out[child.label] = rep
            else:
                for leaf, p in leaf_products(child).items():
                    out[leaf] = G.mul(p, rep)  # deeper edges multiply on the left
        return out

    for tree in forest.trees:
        for v in internal_vertices(tree):
            prods = leaf_products(v)
            indices = tuple(sorted(prods))
            K = v.subgroup
            cosets = tuple(coset_rep(G, K, prods[i]) for i in indices)
            if cosets[0] != 0:
                raise NotRealizable(
                    "smallest-leaf coset is not trivial; the forest breaks rule (5)"
                )
            blocks.append(Block(subgroup=K, indices=indices, cosets=cosets))
    return NestedSet(tuple(blocks))


# -- nested set -> forest ---------------------------------------------------------


def nested_to_forest(inst, nested):
    """The unique forest mapping onto the given nested set.

    Containment of blocks gives the vertex hierarchy, each leaf hangs below
    the smallest block containing it, and edge representatives are solved
    from the coset mismatch at any shared index.
    """
    G = inst.group
    blocks = list(nested.blocks)
    m = len(blocks)
    leq = [[block_leq(inst, a, b) for b in blocks] for a in blocks]
    strict = [
        [leq[i][j] and blocks[i] != blocks[j] for j in range(m)] for i in range(m)
    ]

    def parent_of(i):
        ups = [j for j in range(m) if strict[i][j]]
        if not ups:
            return None
        best = None
        for j in ups:
            if best is None or strict[j][best]:
                best = j
        for j in ups:  # superiors of a block must form a chain
            if j != best and not strict[best][j]:
                raise NotRealizable("block superiors do not form a chain")
        return best

    parents = [parent_of(i) for i in range(m)]
    coset_of = [dict(zip(b.indices, b.cosets)) for b in blocks]

    leaf_home = {}
    for leaf in range(1, inst.n + 1):
        holding = [i for i in range(m) if leaf in blocks[i].indices]
        if not holding:
            continue
        low = holding[0]
        for i in holding[1:]:
            if strict[i][low]:
                low = i
        for i in holding:  # blocks sharing an index are totally ordered
            if i != low and not strict[low][i]:
                raise NotRealizable("blocks sharing a leaf are not a chain")
        leaf_home[leaf] = low

    built = {}

    def build(i):
        if i in built:
            return built[i]
        K = blocks[i].subgroup
        children = []
        for leaf, home in leaf_home.items():
            if home == i:
                children.append((coset_of[i][leaf], Leaf(leaf)))
        for j in range(m):
            if parents[j] == i:
                p = blocks[j].indices[0]
                a = G.mul(G.inv(coset_of[j][p]), coset_of[i][p])
                children.append((coset_rep(G, K, a), build(j)))
        if not children:
            raise NotRealizable("block vertex ended up with no children")
        node = Vertex(subgroup=K, children=tuple(children))
        built[i] = node
        return node

    trees = [build(i) for i in range(m) if parents[i] is None]
    trees.extend(
        Leaf(leaf) for leaf in range(1, inst.n + 1) if leaf not in leaf_home
    )
    forest = LabelledForest(trees=tuple(trees))
    problem = forest_violation(inst, forest)
    if problem is not None:
        raise NotRealizable(f"reconstructed forest is invalid: {problem}")
    return forest


# -- direct enumeration ------------------------------------------------------------


def _set_partitions(items):
    """All set partitions, each part a sorted tuple, parts ordered by minimum."""
    items = list(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        yield ((first,),) + sub
        for i, part in enumerate(sub):
            yield tuple(
                tuple(sorted(part + (first,))) if i == j else p
                for j, p in enumerate(sub)
            )


def _proper_partitions(items):
    """Set partitions into at least two parts."""
    for p in _set_partitions(items):
        if len(p) >= 2:
            yield tuple(sorted(p, key=min))


def enumerate_forests(inst, cap=None):
    """Generate every valid forest directly from the labeling rules."""
    cap = cap or inst.cap_nested
    G = inst.group
    cs = closed_subgroups(inst)
    conj = inst.conj_classes()
    whole = Subgroup(tuple(range(G.order)))
    trivial = Subgroup((G.identity,))
    from .groups import left_cosets

    coset_reps = {K: tuple(c.rep for c in left_cosets(G, K)) for K in cs.members}
    memo = {}

    def admissible_reps(K, child_label):
        """Coset representatives of K allowed on an edge to a child subtree."""
        if child_label is None:
            return coset_reps[K]
        out = []
        for a in coset_reps[K]:
            a_inv = G.inv(a)
            if all(G.conj(a_inv, p) in K.elements for p in child_label):
                out.append(a)
        return tuple(out)

    def trees_on(part):
        part = tuple(sorted(part))
        if part in memo:
            return memo[part]
        smallest = part[0]
        by_label = {K: [] for K in cs.members}
        if len(part) == 1:
            for K in cs.members:
                if K.elements != trivial.elements:
                    by_label[K].append(Vertex(subgroup=K, children=((0, Leaf(smallest)),)))
        for split in _proper_partitions(part):
            child_options = []
            for piece in split:
                opts = []
                if len(piece) == 1:
                    opts.append((None, Leaf(piece[0])))
                for sub in trees_on(piece):
                    opts.append((sub.subgroup, sub))
                child_options.append(opts)
            for K in cs.members:
                for combo in iter_product(*child_options):
                    if any(
                        lbl is not None and not conj.leq(lbl, K)
                        for lbl, _ in combo
                    ):
                        continue
                    g_roots = sum(
                        1
                        for lbl, _ in combo
                        if lbl is not None and lbl.elements == whole.elements
                    )
                    if g_roots > (1 if K.elements == whole.elements else 0):
                        continue
                    rep_choices = []
                    ok = True
                    for piece, (lbl, node) in zip(split, combo):
                        if piece[0] == smallest:
                            if lbl is not None and not lbl.is_subset(K):
                                ok = False
                                break
                            rep_choices.append((0,))
                        else:
                            reps = admissible_reps(K, lbl)
                            if not reps:
                                ok = False
                                break
                            rep_choices.append(reps)
                    if not ok:
                        continue
                    for reps in iter_product(*rep_choices):
                        children = tuple(
                            (rep, node) for rep, (_, node) in zip(reps, combo)
                        )
                        by_label[K].append(Vertex(subgroup=K, children=children))
        # unary chains: strictly larger label over an existing root
        for K in sorted(cs.members, key=lambda s: s.sort_key):
            for P in cs.members:
                if P.is_subset(K) and P.elements != K.elements:
                    for sub in list(by_label[P]):
                        by_label[K].append(Vertex(subgroup=K, children=((0, sub),)))
        result = tuple(t for K in cs.members for t in by_label[K])
        memo[part] = result
        return result

    forests = []
    for partition in _set_partitions(range(1, inst.n + 1)):
        options = []
        for part in partition:
            opts = []
            if len(part) == 1:
                opts.append(Leaf(part[0]))
            opts.extend(trees_on(part))
            options.append(opts)
        for combo in iter_product(*options):
            internal = [t for t in combo if isinstance(t, Vertex)]
            if not internal:
                continue
            with_g = sum(
                1 for t in internal if t.subgroup.elements == whole.elements
            )
            if with_g > 1:
                continue
            if len(forests) >= cap:
                raise SizeBoundExceeded(
                    f"forest enumeration exceeded the cap of {cap}"
                )
            forests.append(LabelledForest(trees=tuple(combo)))
    return sorted(forests, key=_forest_sort_key)


def _node_sort_key(node):
    if isinstance(node, Leaf):
        return (0, node.label if node.label is not None else _NO_LEAF)
    return (
        1,
        node.subgroup.sort_key,
        tuple((rep, _node_sort_key(child)) for rep, child in node.children),
    )


def _forest_sort_key(forest):
    return tuple(_node_sort_key(t) for t in forest.trees)


# -- decomposition into subforests ---------------------------------------------------


@dataclass(frozen=True)
class ForestDecomposition:
    """Per-label subforests plus the counting statistics they induce.

    components counts the trees of the original forest (fallen leaves
    included), fallen counts isolated leaves, and leaf_counts[H] counts the
    original leaves attached directly to a vertex labelled H.
    """

    components: int
    fallen: int
    leaf_counts: tuple  # pairs (Subgroup, count)
    subforests: tuple  # pairs (Subgroup, tuple of subforest root vertices)

    def count_for(self, H):
        for K, c in self.leaf_counts:
            if K.elements == H.elements:
                return c
        return 0


def decompose_forest(inst, forest):
    counts = {}
    roots = {}

    def clip(node, label):
        """Copy of the node keeping only the cluster with the given label."""
        children = []
        for rep, child in node.children:
            if isinstance(child, Vertex) and child.subgroup.elements == label.elements:
                children.append((rep, clip(child, label)))
            else:
                children.append((rep, Leaf(None)))
        return Vertex(subgroup=node.subgroup, children=tuple(children))

    for tree in forest.trees:
        for v in internal_vertices(tree):
            K = v.subgroup
            for rep, child in v.children:
                if isinstance(child, Leaf):
                    counts[K] = counts.get(K, 0) + 1

        def walk(node, parent_label):
            if isinstance(node, Leaf):
                return
            if parent_label is None or parent_label.elements != node.subgroup.elements:
                roots.setdefault(node.subgroup, []).append(
                    clip(node, node.subgroup)
                )
            for rep, child in node.children:
                walk(child, node.subgroup)

        walk(tree, None)

    ordered = sorted(set(counts) | set(roots), key=lambda s: s.sort_key)
    return ForestDecomposition(
        components=forest.components(),
        fallen=len(forest.fallen_leaves),
        leaf_counts=tuple((K, counts.get(K, 0)) for K in ordered),
        subforests=tuple((K, tuple(roots.get(K, ()))) for K in ordered),
    )


# -- serialization ---------------------------------------------------------------------


def node_to_json(node):
    if isinstance(node, Leaf):
        return {"leaf": node.label}
    return {
        "subgroup": list(node.subgroup.elements),
        "children": [
            {"coset": rep, "child": node_to_json(child)}
            for rep, child in node.children
        ],
    }


def node_from_json(data):
    if "leaf" in data:
        label = data["leaf"]
        if not isinstance(label, int):
            raise MalformedForest("leaf label must be an integer")
        return Leaf(label)
    if "subgroup" not in data or "children" not in data:
        raise MalformedForest("internal node needs 'subgroup' and 'children'")
    children = tuple(
        (edge["coset"], node_from_json(edge["child"])) for edge in data["children"]
    )
    return Vertex(subgroup=Subgroup(tuple(data["subgroup"])), children=children)


def forest_to_json(forest):
    return {
        "trees": [node_to_json(t) for t in forest.trees],
        "fallen_leaves": list(forest.fallen_leaves),
    }


def forest_from_json(data):
    if "trees" not in data:
        raise MalformedForest("forest JSON needs a 'trees' list")
    return LabelledForest(trees=tuple(node_from_json(t) for t in data["trees"]))
