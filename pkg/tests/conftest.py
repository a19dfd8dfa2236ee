"""Shared instance fixtures.

Instances are built once per session; ProblemInstance caches derived data
internally, so reusing them keeps the suite fast without hidden coupling.
"""

from __future__ import annotations

from itertools import permutations

import pytest

from dowlingnest import FiniteGroup, ProblemInstance, Representation


def make_abelian_instance(factors, characters, n, names=None):
    G = FiniteGroup.from_abelian(factors)
    rep = Representation.from_characters(G, characters)
    return ProblemInstance(n, G, rep, names=names)


def s3_cayley_table():
    perms = sorted(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [
        [idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms
    ]
    return perms, table


def _e_diff(a, b):
    base = {(0, 1): (1, 0), (1, 2): (0, 1), (0, 2): (1, 1)}
    if (a, b) in base:
        return base[(a, b)]
    x, y = base[(b, a)]
    return (-x, -y)


def deleted_permutation_matrix(p):
    """Matrix of a permutation of {0,1,2} on the sum-zero plane,
    in the basis f1 = e0 - e1, f2 = e1 - e2."""
    c1 = _e_diff(p[0], p[1])
    c2 = _e_diff(p[1], p[2])
    return ((c1[0], c2[0]), (c1[1], c2[1]))


def make_s3_instance(n):
    perms, table = s3_cayley_table()
    G = FiniteGroup.from_cayley(table)
    mats = {i: deleted_permutation_matrix(p) for i, p in enumerate(perms)}
    rep = Representation.from_matrices(G, mats)
    return ProblemInstance(n, G, rep)


KLEIN_NAMES = {
    (0,): "e",
    (0, 2): "H1",
    (0, 1): "H2",
    (0, 3): "D",
    (0, 1, 2, 3): "G",
}


@pytest.fixture(scope="session")
def z2():
    return make_abelian_instance([2], [[1]], 2)


@pytest.fixture(scope="session")
def z3():
    return make_abelian_instance([3], [[1]], 2)


@pytest.fixture(scope="session")
def z4():
    return make_abelian_instance([4], [[1]], 2)


@pytest.fixture(scope="session")
def klein(request):
    return make_abelian_instance([2, 2], [[1, 0], [0, 1]], 2, names=KLEIN_NAMES)


@pytest.fixture(scope="session")
def z4_plane():
    """Z/4 acting on a plane through the two faithful-together characters 1, 2;
    the closed subgroups form the chain {e} < <2> < G."""
    return make_abelian_instance([4], [[1], [2]], 2)


@pytest.fixture(scope="session")
def s3():
    return make_s3_instance(2)


@pytest.fixture(scope="session")
def chains8():
    """Z/2 x Z/4 with four characters: hosts two chains
    {e} < C2 < C1 < G and {e} < C2 < C1' < G of closed subgroups."""
    return make_abelian_instance(
        [2, 4], [[0, 1], [1, 2], [1, 0], [0, 2]], 8
    )
