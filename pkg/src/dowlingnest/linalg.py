"""Exact rational matrices and subspaces in reduced row echelon form.

Everything here is over Fraction; no floating point is used anywhere, so
containment and equality of subspaces are genuine decisions.  A Subspace is
canonically represented by the RREF basis of its row space, which makes
set-equality of subspaces the same as equality of the dataclass fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AmbientMismatch, InstanceError

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac_rows(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class RMatrix:
    """Immutable rational matrix."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", _frac_rows(self.entries))
        if self.entries and any(len(r) != len(self.entries[0]) for r in self.entries):
            raise InstanceError("ragged matrix")

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows, cols):
        return cls(tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows)))

    def mul(self, other):
        if self.cols != other.rows:
            raise AmbientMismatch("matrix product shape mismatch")
        bt = tuple(zip(*other.entries))
        return RMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            )
        )

    def sub(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise AmbientMismatch("matrix difference shape mismatch")
        return RMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def apply(self, vector):
        if len(vector) != self.cols:
            raise AmbientMismatch("matrix-vector shape mismatch")
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.entries)

    def is_identity(self):
        return self == RMatrix.identity(self.rows)


def rref(rows):
    """Reduced row echelon form; returns (rows_without_zero_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    out = tuple(tuple(row) for row in m[:r])
    return out, tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^ambient_dim, stored as an RREF basis (rows)."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def from_spanning(cls, ambient_dim, vectors):
        vecs = _frac_rows(vectors)
        for v in vecs:
            if len(v) != ambient_dim:
                raise AmbientMismatch("spanning vector has wrong length")
        rows, _ = rref(vecs)
        return cls(ambient_dim=ambient_dim, basis=rows)

    @classmethod
    def full(cls, ambient_dim):
        return cls(
            ambient_dim=ambient_dim,
            basis=RMatrix.identity(ambient_dim).entries,
        )

    @classmethod
    def zero_space(cls, ambient_dim):
        return cls(ambient_dim=ambient_dim, basis=())

    @property
    def dim(self):
        return len(self.basis)

    @property
    def codim(self):
        return self.ambient_dim - len(self.basis)

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(
                f"ambient dims differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def contains_vector(self, v):
        v = list(Fraction(x) for x in v)
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector has wrong length")
        for row in self.basis:
            lead = next((c for c, x in enumerate(row) if x != 0), None)
            if lead is not None and v[lead] != 0:
                f = v[lead]
                v = [x - f * y for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    def contains(self, other):
        """Set containment: other is a subspace of self."""
        self._check(other)
        return all(self.contains_vector(v) for v in other.basis)

    def sum(self, other):
        self._check(other)
        return Subspace.from_spanning(self.ambient_dim, self.basis + other.basis)

    def perp(self):
        """Orthogonal complement under the standard dot product.

        Over Q the form is positive definite, so perp is a genuine
        complement and perp(perp(S)) == S.
        """
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return kernel(RMatrix(self.basis))

    def intersect(self, other):
        self._check(other)
        return self.perp().sum(other.perp()).perp()

    def image_under(self, matrix):
        """The subspace {M v : v in self}."""
        if matrix.cols != self.ambient_dim:
            raise AmbientMismatch("matrix does not act on this ambient space")
        return Subspace.from_spanning(
            matrix.rows, tuple(matrix.apply(v) for v in self.basis)
        )

    @property
    def sort_key(self):
        return (len(self.basis), self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.ambient_dim})"


def kernel(M):
    """Canonical Subspace of all v with M v = 0."""
    rows, pivots = rref(M.entries)
    n = M.cols
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    canon, _ = rref(basis)
    return Subspace(ambient_dim=n, basis=canon)


def subspace_sum(A, B):
    return A.sum(B)


def subspace_intersect(A, B):
    return A.intersect(B)


def subspace_contains(A, B):
    return A.contains(B)


def subspace_dim(A):
    return A.dim
