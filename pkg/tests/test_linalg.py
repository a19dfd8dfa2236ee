"""Exact subspace arithmetic and representation fixed spaces."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dowlingnest import (
    AmbientMismatch,
    FiniteGroup,
    InstanceError,
    RMatrix,
    Representation,
    Subgroup,
    Subspace,
    kernel,
)
from dowlingnest.reps import (
    cyclotomic_polynomial,
    fix_subspace,
    fix_subspace_via_kernels,
)

from conftest import make_abelian_instance, make_s3_instance


def test_kernel_of_zero_and_identity():
    assert kernel(RMatrix.zero(3, 3)) == Subspace.full(3)
    assert kernel(RMatrix.identity(3)) == Subspace.zero_space(3)


def test_kernel_of_diagonal():
    M = RMatrix(((-2, 0), (0, 0)))
    assert kernel(M) == Subspace.from_spanning(2, [(0, 1)])


def test_intersect_with_full_and_self_sum():
    A = Subspace.from_spanning(3, [(1, 2, 3)])
    assert A.intersect(Subspace.full(3)) == A
    assert A.sum(A) == A


def test_axes_in_the_plane():
    x = Subspace.from_spanning(2, [(1, 0)])
    y = Subspace.from_spanning(2, [(0, 1)])
    assert x.intersect(y) == Subspace.zero_space(2)
    assert x.sum(y) == Subspace.full(2)


def test_ambient_mismatch_raises():
    with pytest.raises(AmbientMismatch):
        Subspace.full(2).sum(Subspace.full(3))


small_fracs = st.fractions(
    min_value=-3, max_value=3, max_denominator=4
)


@st.composite
def random_subspace(draw, ambient=4, max_vecs=3):
    k = draw(st.integers(min_value=0, max_value=max_vecs))
    vecs = [
        tuple(draw(small_fracs) for _ in range(ambient)) for _ in range(k)
    ]
    return Subspace.from_spanning(ambient, vecs)


@settings(max_examples=60, deadline=None)
@given(random_subspace(), random_subspace())
def test_grassmann_identity(A, B):
    assert A.dim + B.dim == A.sum(B).dim + A.intersect(B).dim


@settings(max_examples=60, deadline=None)
@given(random_subspace())
def test_canonical_form_idempotent(A):
    assert Subspace.from_spanning(A.ambient_dim, A.basis) == A
    assert A.perp().perp() == A


@settings(max_examples=60, deadline=None)
@given(random_subspace(), random_subspace())
def test_containment_consistent_with_sum(A, B):
    assert A.contains(B) == (A.sum(B) == A)


def test_fix_subspace_trivial_subgroup_is_everything(klein):
    assert klein.rep.fix(Subgroup((0,))) == Subspace.full(2)


def test_klein_fix_examples(klein):
    # rho(1,0) = diag(-1, 1): the second axis is fixed
    h1 = Subgroup((0, 2))
    assert klein.rep.fix(h1) == Subspace.from_spanning(2, [(0, 1)])
    assert klein.rep.matrix(2).entries == (
        (Fraction(-1), Fraction(0)),
        (Fraction(0), Fraction(1)),
    )
    whole = Subgroup((0, 1, 2, 3))
    assert klein.rep.fix(whole).dim == 0


def test_fix_generator_independence(s3):
    for H in s3.subgroups():
        assert fix_subspace(s3.rep, H.elements) == fix_subspace(
            s3.rep, _generators_of(s3.group, H)
        )


def _generators_of(G, H):
    from dowlingnest.groups import subgroup_closure

    gens = []
    for g in H:
        if subgroup_closure(G, gens).elements == H.elements:
            break
        gens.append(g)
    current = subgroup_closure(G, gens)
    for g in H:
        if current.elements == H.elements:
            break
        gens.append(g)
        current = subgroup_closure(G, gens)
    return gens or [G.identity]


def test_character_fix_agrees_with_kernel_route():
    for inst in (
        make_abelian_instance([3], [[1]], 1),
        make_abelian_instance([4], [[1], [2]], 1),
        make_abelian_instance([2, 2], [[1, 0], [0, 1]], 1),
    ):
        for H in inst.subgroups():
            assert fix_subspace(inst.rep, H.elements) == fix_subspace_via_kernels(
                inst.rep, H.elements
            )


def test_conjugation_covariance(s3):
    rep = s3.rep
    for H in s3.subgroups():
        for g in s3.group.elements():
            from dowlingnest import conjugate_subgroup

            conj_fix = rep.fix(conjugate_subgroup(s3.group, H, g))
            assert conj_fix == rep.fix(H).image_under(rep.matrix(g))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(2) == [1, 1]
    assert cyclotomic_polynomial(3) == [1, 1, 1]
    assert cyclotomic_polynomial(4) == [1, 0, 1]
    assert cyclotomic_polynomial(6) == [1, -1, 1]


def test_character_realization_is_faithful_rational_homomorphism():
    G = FiniteGroup.from_abelian([4])
    rep = Representation.from_characters(G, [[1]])
    assert rep.scalar_degree == 2  # phi(4)
    assert rep.matrix_dim == 2
    i_mat = rep.matrix(1)
    assert i_mat.mul(i_mat).entries == rep.matrix(2).entries
    assert i_mat.mul(i_mat).mul(i_mat).mul(i_mat).is_identity()


def test_faithless_characters_rejected():
    G = FiniteGroup.from_abelian([4])
    with pytest.raises(InstanceError, match="faithful"):
        Representation.from_characters(G, [[2]])


def test_trivial_component_rejected():
    G = FiniteGroup.from_abelian([2])
    with pytest.raises(InstanceError, match="trivial"):
        Representation.from_characters(G, [[1], [0]])


def test_matrix_extension_needs_generators():
    _, = (make_s3_instance(1),)  # full matrices work
    from conftest import deleted_permutation_matrix, s3_cayley_table

    perms, table = s3_cayley_table()
    G = FiniteGroup.from_cayley(table)
    # a transposition and a 3-cycle generate S3
    gens = {2: deleted_permutation_matrix(perms[2]), 3: deleted_permutation_matrix(perms[3])}
    rep = Representation.from_matrices(G, gens)
    full = Representation.from_matrices(
        G, {i: deleted_permutation_matrix(p) for i, p in enumerate(perms)}
    )
    assert all(rep.matrix(g) == full.matrix(g) for g in G.elements())
    with pytest.raises(InstanceError, match="generating"):
        Representation.from_matrices(G, {2: deleted_permutation_matrix(perms[2])})


def test_non_homomorphic_matrices_rejected():
    G = FiniteGroup.from_abelian([2])
    with pytest.raises(InstanceError, match="homomorphism"):
        Representation(
            G,
            dim_v=1,
            scalar_degree=1,
            matrices=(RMatrix(((1,),)), RMatrix(((2,),))),
        )
