"""The arrangement of a triple (n, G, V): closed subgroups, blocks, nested sets.

The arrangement lives in V^n and consists of the subspaces

    H(i, j, g) = { v : v_j = rho(g) v_i }        for i < j and g in G,
    H(i, i, g) = { v : v_i = rho(g) v_i }        for g != e.

Its intersection lattice (ordered by reverse inclusion) is a generalized
Dowling lattice.  The minimal building set consists of the blocks

    H^K(i_1^{g_1 K}, ..., i_k^{g_k K})
        = { v : v_{i_1} = g_1 w, ..., v_{i_k} = g_k w,  w in Fix(K) }

with K a closed subgroup (K != {e} when k = 1).  Conjugating K moves a
block to an equal subspace, so blocks are stored in the normal form whose
first coset is eK; for closed K that normal form is unique per subspace.

Everything downstream (compatibility, nestedness) is phrased dually to the
annihilator picture: a family of annihilators is in direct sum exactly when
the codimension of the intersection of the blocks equals the sum of their
codimensions, and the annihilator sum lands in the building set exactly
when that intersection is itself a block subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InstanceError, SizeBoundExceeded
from .groups import (
    Subgroup,
    conjugate_subgroup,
    coset_rep,
    enumerate_subgroups,
    subgroup_conj_classes,
)
from .linalg import Subspace
from .poset import Poset
from .reps import Representation, pointwise_stabilizer

DEFAULT_CAP_LATTICE = 10**6
DEFAULT_CAP_NESTED = 10**7


class ProblemInstance:
    """Immutable bundle (n, G, V) plus caches for derived data."""

    def __init__(self, n, group, rep, names=None, cap_lattice=None, cap_nested=None):
        if n < 1:
            raise InstanceError("n must be a positive integer")
        if rep.group is not group:
            raise InstanceError("representation does not belong to the given group")
        self.n = n
        self.group = group
        self.rep = rep
        self.names = dict(names or {})
        self.cap_lattice = cap_lattice or DEFAULT_CAP_LATTICE
        self.cap_nested = cap_nested or DEFAULT_CAP_NESTED
        self._subgroups = None
        self._conj = None
        self._closed = None
        self._blocks = None
        self._block_subspaces = {}
        self._fix_lookup = None
        self._meet_cache = {}
        self._recon_cache = {}

    # -- cached group-level data ---------------------------------------------

    @property
    def ambient_dim(self):
        return self.n * self.rep.matrix_dim

    @property
    def block_width(self):
        return self.rep.matrix_dim

    def subgroups(self):
        if self._subgroups is None:
            self._subgroups = tuple(enumerate_subgroups(self.group))
        return self._subgroups

    def conj_classes(self):
        if self._conj is None:
            self._conj = subgroup_conj_classes(self.group, self.subgroups())
        return self._conj

    def fix(self, H):
        return self.rep.fix(H)

    def subgroup_label(self, H):
        return self.names.get(H.elements, H.label())

    def meet(self, A, B):
        """Cached subspace intersection (hot path of the nested checks)."""
        key = (A.basis, B.basis) if A.basis <= B.basis else (B.basis, A.basis)
        got = self._meet_cache.get(key)
        if got is None:
            got = A.intersect(B)
            self._meet_cache[key] = got
        return got

    def with_n(self, n):
        """Same group and representation, different number of factors."""
        inst = ProblemInstance(
            n,
            self.group,
            self.rep,
            names=self.names,
            cap_lattice=self.cap_lattice,
            cap_nested=self.cap_nested,
        )
        inst._subgroups = self._subgroups
        inst._conj = self._conj
        inst._closed = self._closed
        inst._fix_lookup = self._fix_lookup
        return inst


def build_instance(n, group, rep_data, names=None, cap_lattice=None, cap_nested=None):
    """Construct an instance from raw representation data.

    rep_data is either {"characters": [...]} or {"matrices": {id: rows}}.
    """
    if "characters" in rep_data:
        rep = Representation.from_characters(group, rep_data["characters"])
    elif "matrices" in rep_data:
        mats = {int(k): v for k, v in rep_data["matrices"].items()}
        rep = Representation.from_matrices(group, mats)
    else:
        raise InstanceError("representation must give 'characters' or 'matrices'")
    return ProblemInstance(
        n, group, rep, names=names, cap_lattice=cap_lattice, cap_nested=cap_nested
    )


# -- closure operator and closed subgroups -----------------------------------


def closure_phi(inst, H):
    """The largest subgroup with the same fixed subspace as H.

    Computed as the pointwise stabilizer of Fix(H); this is a closure
    operator (extensive, idempotent, monotone).
    """
    rep = inst.rep
    if rep.char_exponents is not None:
        coords = rep.fixed_coordinates(H.elements)
        members = tuple(
            g
            for g in range(inst.group.order)
            if all(rep.char_exponents[g][j] == 0 for j in coords)
        )
        return Subgroup(members)
    return pointwise_stabilizer(rep, rep.fix(H))


@dataclass(frozen=True)
class ClosedSubgroupSet:
    members: tuple  # closed subgroups, sorted by (size, elements)
    closure_map: tuple  # pairs (subgroup, phi(subgroup)) over all subgroups

    def __contains__(self, H):
        return any(H.elements == K.elements for K in self.members)

    def phi(self, H):
        for S, P in self.closure_map:
            if S.elements == H.elements:
                return P
        raise KeyError(H)

    @property
    def proper(self):
        """Closed subgroups other than the full group."""
        full = max(len(K) for K in self.members)
        return tuple(K for K in self.members if len(K) != full)


def closed_subgroups(inst):
    """The subgroups fixed by the closure operator, with the full phi map."""
    if inst._closed is not None:
        return inst._closed
    pairs = []
    closed = []
    for H in inst.subgroups():
        P = closure_phi(inst, H)
        pairs.append((H, P))
        if P.elements == H.elements:
            closed.append(H)
    result = ClosedSubgroupSet(
        members=tuple(sorted(closed, key=lambda K: K.sort_key)),
        closure_map=tuple(pairs),
    )
    _check_closed_set(inst, result)
    inst._closed = result
    inst._fix_lookup = {
        inst.fix(K).basis: K for K in result.members
    }
    return result


def _check_closed_set(inst, cs):
    G = inst.group
    whole = Subgroup(tuple(range(G.order)))
    trivial = Subgroup((G.identity,))
    if trivial not in cs or whole not in cs:
        raise InstanceError("closed subgroups must include {e} and G")
    seen = {}
    for K in cs.members:
        key = inst.fix(K).basis
        if key in seen:
            raise InstanceError("two closed subgroups share a fixed subspace")
        seen[key] = K
    for K in cs.members:
        for g in G.elements():
            if conjugate_subgroup(G, K, g) not in cs:
                raise InstanceError("closed subgroups are not conjugation-stable")


# -- raw arrangement and intersection lattice ---------------------------------


def _factor_embed(inst, factor, rows):
    """Place vectors living in one V-factor into V^n coordinates."""
    b = inst.block_width
    out = []
    for row in rows:
        v = [Fraction(0)] * inst.ambient_dim
        for c, x in enumerate(row):
            v[factor * b + c] = x
        out.append(tuple(v))
    return out


def _pair_subspace(inst, i, j, g):
    """H(i, j, g) = { v_j = rho(g) v_i } as a canonical subspace of V^n."""
    b = inst.block_width
    rep = inst.rep
    vectors = []
    # graph over the i-th factor: (w, rho(g) w) plus all other factors free
    mat = rep.matrix(g)
    for c in range(b):
        w = tuple(Fraction(1) if cc == c else Fraction(0) for cc in range(b))
        img = mat.apply(w)
        v = [Fraction(0)] * inst.ambient_dim
        v[i * b + c] = Fraction(1)
        for cc, x in enumerate(img):
            v[j * b + cc] = x
        vectors.append(tuple(v))
    for f in range(inst.n):
        if f in (i, j):
            continue
        for c in range(b):
            v = [Fraction(0)] * inst.ambient_dim
            v[f * b + c] = Fraction(1)
            vectors.append(tuple(v))
    return Subspace.from_spanning(inst.ambient_dim, vectors)


def _self_subspace(inst, i, g):
    """H(i, i, g) = { v_i = rho(g) v_i }: the i-th factor pinned to Fix(<g>)."""
    from .groups import subgroup_closure

    fix_g = inst.fix(subgroup_closure(inst.group, (g,)))
    vectors = _factor_embed(inst, i, fix_g.basis)
    b = inst.block_width
    for f in range(inst.n):
        if f == i:
            continue
        for c in range(b):
            v = [Fraction(0)] * inst.ambient_dim
            v[f * b + c] = Fraction(1)
            vectors.append(tuple(v))
    return Subspace.from_spanning(inst.ambient_dim, vectors)


def raw_arrangement(inst):
    """The subspaces H(i, j, g), deduplicated and canonically ordered."""
    seen = {}
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            for g in inst.group.elements():
                s = _pair_subspace(inst, i, j, g)
                seen[s.basis] = s
        for g in inst.group.elements():
            if g != inst.group.identity:
                s = _self_subspace(inst, i, g)
                seen[s.basis] = s
    return sorted(seen.values(), key=lambda s: s.sort_key)


def intersection_lattice(inst, cap=None):
    """Closure of the raw arrangement under intersection, as a Poset.

    Ordered by reverse inclusion, with the ambient space as bottom.  Each
    element of the closure is an intersection of raw subspaces, so it is
    enough to fold raw generators into the worklist one at a time.
    """
    cap = cap or inst.cap_lattice
    raw = raw_arrangement(inst)
    ambient = Subspace.full(inst.ambient_dim)
    elems = {ambient.basis: ambient}
    for s in raw:
        elems[s.basis] = s
    worklist = list(elems.values())
    while worklist:
        current = worklist.pop()
        for gen in raw:
            meet = current.intersect(gen)
            if meet.basis not in elems:
                if len(elems) >= cap:
                    raise SizeBoundExceeded(
                        f"intersection lattice exceeded the cap of {cap} elements"
                    )
                elems[meet.basis] = meet
                worklist.append(meet)
    ordered = sorted(elems.values(), key=lambda s: (-s.dim, s.basis))
    matrix = [
        [a.contains(b) for b in ordered]
        for a in ordered
    ]
    return Poset(ordered, matrix)


# -- blocks -------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """Building-set element in normal form.

    indices are 1-based and strictly increasing; cosets[r] is the canonical
    representative of the coset attached to indices[r], and cosets[0] is
    always the representative of eK (element id 0).
    """

    subgroup: Subgroup
    indices: tuple
    cosets: tuple

    @property
    def sort_key(self):
        return (self.subgroup.sort_key, self.indices, self.cosets)

    def describe(self, inst=None):
        name = inst.subgroup_label(self.subgroup) if inst else self.subgroup.label()
        parts = ",".join(
            f"{i}^{c}" for i, c in zip(self.indices, self.cosets)
        )
        return f"H^{name}({parts})"


def block_subspace_from(inst, K, indices, elements):
    """Subspace for arbitrary coset elements g_r (not necessarily normal form)."""
    b = inst.block_width
    fix = inst.fix(K)
    vectors = []
    for w in fix.basis:
        v = [Fraction(0)] * inst.ambient_dim
        for idx, g in zip(indices, elements):
            img = inst.rep.matrix(g).apply(w)
            for c, x in enumerate(img):
                v[(idx - 1) * b + c] = x
        vectors.append(tuple(v))
    used = {idx - 1 for idx in indices}
    for f in range(inst.n):
        if f in used:
            continue
        for c in range(b):
            v = [Fraction(0)] * inst.ambient_dim
            v[f * b + c] = Fraction(1)
            vectors.append(tuple(v))
    return Subspace.from_spanning(inst.ambient_dim, vectors)


def block_subspace(inst, block):
    got = inst._block_subspaces.get(block)
    if got is None:
        got = block_subspace_from(inst, block.subgroup, block.indices, block.cosets)
        expected = inst.fix(block.subgroup).dim + (inst.n - len(block.indices)) * inst.block_width
        if got.dim != expected:
            raise InstanceError(
                f"block {block.describe()} has dim {got.dim}, expected {expected}"
            )
        inst._block_subspaces[block] = got
    return got


def building_blocks(inst):
    """All blocks in normal form, one per distinct subspace.

    A subspace determines its normal form uniquely when the label is
    closed (the label is the pointwise stabilizer of the projected fixed
    space, and the cosets are then pinned), so this is checked rather than
    resolved by a tie-break.
    """
    if inst._blocks is not None:
        return inst._blocks
    cs = closed_subgroups(inst)
    G = inst.group
    trivial = Subgroup((G.identity,))
    blocks = []
    by_subspace = {}
    from itertools import combinations, product

    for K in cs.members:
        reps = tuple(c.rep for c in _coset_list(inst, K))
        for k in range(1, inst.n + 1):
            if k == 1 and K.elements == trivial.elements:
                continue
            for idxs in combinations(range(1, inst.n + 1), k):
                for tail in product(reps, repeat=k - 1):
                    blk = Block(subgroup=K, indices=idxs, cosets=(0,) + tail)
                    sub = block_subspace(inst, blk)
                    other = by_subspace.get(sub.basis)
                    if other is not None:
                        # normal forms are unique per subspace; keep the
                        # lexicographically smaller one if this ever fires
                        if blk.sort_key < other.sort_key:
                            by_subspace[sub.basis] = blk
                        continue
                    by_subspace[sub.basis] = blk
    blocks = sorted(by_subspace.values(), key=lambda b: b.sort_key)
    inst._blocks = tuple(blocks)
    return inst._blocks


def _coset_list(inst, K):
    from .groups import left_cosets

    return left_cosets(inst.group, K)


# -- order and compatibility ----------------------------------------------------


def block_leq(inst, b1, b2):
    """True iff subspace(b1) contains subspace(b2).

    Decided purely combinatorially from the block data:
      (1) the index set of b1 is contained in that of b2;
      (2) for each shared index, conjugating the b1 label by the coset
          mismatch lands inside the b2 label (equivalent, for closed
          labels, to the fixed-space condition);
      (3) coset mismatches are consistent across pairs of shared indices.
    The linear-algebra containment oracle must agree on every pair.
    """
    G = inst.group
    pos2 = {idx: r for r, idx in enumerate(b2.indices)}
    for idx in b1.indices:
        if idx not in pos2:
            return False
    K1 = b1.subgroup
    K2 = b2.subgroup
    k2set = set(K2.elements)
    mismatches = []
    for r, idx in enumerate(b1.indices):
        g_r = b1.cosets[r]
        h_t = b2.cosets[pos2[idx]]
        a = G.mul(G.inv(h_t), g_r)  # condition (2): a K1 a^-1 inside K2
        if any(G.conj(a, x) not in k2set for x in K1):
            return False
        mismatches.append((g_r, h_t))
    for g_r, h_t in mismatches:
        for g_th, h_ga in mismatches:
            x = G.mul(G.mul(G.inv(h_ga), g_th), G.mul(G.inv(g_r), h_t))
            if x not in k2set:
                return False
    return True


def blocks_compatible(inst, b1, b2):
    """Can b1 and b2 live in a common nested set?

    Either comparable, or index-disjoint with at most one label equal to G.
    """
    if block_leq(inst, b1, b2) or block_leq(inst, b2, b1):
        return True
    if set(b1.indices) & set(b2.indices):
        return False
    whole = inst.group.order
    return not (len(b1.subgroup) == whole and len(b2.subgroup) == whole)


def is_block_subspace(inst, W):
    """Reconstruct the normal-form block with subspace W, or None.

    Works without enumerating the building set: the constrained factors are
    those whose full coordinate block is not inside W; the tied structure is
    then a graph over the first constrained factor, whose projection must be
    the fixed space of a closed subgroup.
    """
    if W.basis in inst._recon_cache:
        return inst._recon_cache[W.basis]
    result = _reconstruct_block(inst, W)
    inst._recon_cache[W.basis] = result
    return result


def _reconstruct_block(inst, W):
    b = inst.block_width
    n = inst.n
    closed_subgroups(inst)
    factor_axes = {}
    constrained = []
    for f in range(n):
        unit_rows = []
        for c in range(b):
            v = [Fraction(0)] * inst.ambient_dim
            v[f * b + c] = Fraction(1)
            unit_rows.append(tuple(v))
        factor_axes[f] = unit_rows
        if not all(W.contains_vector(v) for v in unit_rows):
            constrained.append(f)
    if not constrained:
        return None
    k = len(constrained)
    free_count = (n - k) * b
    # W must split as (tied part over the constrained factors) + (free factors)
    tied_dim = W.dim - free_count
    if tied_dim < 0:
        return None
    tied = W.intersect(_coordinate_subspace(inst, constrained))
    if tied.dim != tied_dim:
        return None
    j1 = constrained[0]
    proj = Subspace.from_spanning(
        b, tuple(v[j1 * b : (j1 + 1) * b] for v in tied.basis)
    )
    if proj.dim != tied.dim:
        return None
    # find, per further factor, a group element carrying the j1 component
    carries = []
    for f in constrained[1:]:
        found = None
        for g in inst.group.elements():
            mat = inst.rep.matrix(g)
            if all(
                tuple(mat.apply(v[j1 * b : (j1 + 1) * b])) == tuple(v[f * b : (f + 1) * b])
                for v in tied.basis
            ):
                found = g
                break
        if found is None:
            return None
        carries.append(found)
    K = pointwise_stabilizer(inst.rep, proj)
    if inst.fix(K).basis != proj.basis:
        return None
    if inst._fix_lookup is not None and proj.basis not in inst._fix_lookup:
        return None
    if k == 1 and len(K) == 1:
        return None
    indices = tuple(f + 1 for f in constrained)
    cosets = (0,) + tuple(coset_rep(inst.group, K, g) for g in carries)
    candidate = Block(subgroup=K, indices=indices, cosets=cosets)
    if block_subspace(inst, candidate).basis != W.basis:
        return None
    return candidate


def _coordinate_subspace(inst, factors):
    b = inst.block_width
    rows = []
    for f in factors:
        for c in range(b):
            v = [Fraction(0)] * inst.ambient_dim
            v[f * b + c] = Fraction(1)
            rows.append(tuple(v))
    return Subspace.from_spanning(inst.ambient_dim, rows)


# -- nested sets ----------------------------------------------------------------


@dataclass(frozen=True)
class NestedSet:
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "blocks", tuple(sorted(self.blocks, key=lambda b: b.sort_key))
        )

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    @property
    def sort_key(self):
        return (len(self.blocks), tuple(b.sort_key for b in self.blocks))


def pairwise_compatible(inst, blocks):
    blocks = list(blocks)
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if not blocks_compatible(inst, blocks[i], blocks[j]):
                return False
    return True


def _antichain_violation(inst, blocks, leq, subspaces, required=None):
    """Search antichain subsets (of size >= 2) violating the nested condition.

    The violation is either a failure of codimension additivity (the
    annihilators are not in direct sum) or an intersection that is itself a
    block subspace (the annihilator sum lies in the building set).  When
    `required` is given, only antichains containing that index are checked.
    """
    m = len(blocks)
    ambient = inst.ambient_dim
    comparable = [
        [i != j and (leq[i][j] or leq[j][i]) for j in range(m)] for i in range(m)
    ]

    def extend(chosen, meet, codim_sum, start):
        if len(chosen) >= 2 and (required is None or required in chosen):
            if meet.codim != codim_sum:
                return True
            if is_block_subspace(inst, meet) is not None:
                return True
        for nxt in range(start, m):
            if any(comparable[nxt][c] for c in chosen):
                continue
            new_meet = inst.meet(meet, subspaces[nxt])
            if extend(chosen + [nxt], new_meet, codim_sum + subspaces[nxt].codim, nxt + 1):
                return True
        return False

    full = Subspace.full(ambient)
    return extend([], full, 0, 0)


def is_nested(inst, blocks):
    """Definition-level check quantifying over every antichain subset.

    The pairwise compatibility test is used as a sound fast rejection, after
    which every antichain of size >= 2 is verified.
    """
    blocks = sorted(set(blocks), key=lambda b: b.sort_key)
    if len(blocks) <= 1:
        return True
    if not pairwise_compatible(inst, blocks):
        return False
    leq = [[block_leq(inst, a, b) for b in blocks] for a in blocks]
    subspaces = [block_subspace(inst, b) for b in blocks]
    return not _antichain_violation(inst, blocks, leq, subspaces)


def enumerate_nested_sets(inst, cap=None):
    """All nonempty nested sets, in depth-first lexicographic block order.

    Supersets of non-nested sets are non-nested, so the backtracking prunes
    on the first antichain violation involving the newly added block.
    """
    cap = cap or inst.cap_nested
    blocks = building_blocks(inst)
    m = len(blocks)
    leq = [[block_leq(inst, a, b) for b in blocks] for a in blocks]
    compat = [
        [blocks_compatible(inst, blocks[i], blocks[j]) for j in range(m)]
        for i in range(m)
    ]
    subspaces = [block_subspace(inst, b) for b in blocks]
    out = []

    def admissible(chosen, new):
        sub = [*chosen, new]
        sub_leq = [[leq[i][j] for j in sub] for i in sub]
        sub_spaces = [subspaces[i] for i in sub]
        sub_blocks = [blocks[i] for i in sub]
        return not _antichain_violation(
            inst, sub_blocks, sub_leq, sub_spaces, required=len(sub) - 1
        )

    def extend(chosen, candidates):
        for pos, idx in enumerate(candidates):
            if not admissible(chosen, idx):
                continue
            picked = chosen + [idx]
            if len(out) >= cap:
                raise SizeBoundExceeded(
                    f"nested-set enumeration exceeded the cap of {cap}"
                )
            out.append(NestedSet(tuple(blocks[i] for i in picked)))
            remaining = [j for j in candidates[pos + 1 :] if compat[idx][j]]
            extend(picked, remaining)

    extend([], list(range(m)))
    return out


def nested_sets_poset(nested_sets):
    """Nested sets ordered by inclusion."""
    keys = [frozenset(ns.blocks) for ns in nested_sets]
    matrix = [[a <= b for b in keys] for a in keys]
    return Poset(tuple(nested_sets), matrix)
