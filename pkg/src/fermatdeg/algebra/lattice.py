"""Integer lattices in Z^n stored by canonical HNF basis."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import AmbientMismatch, NotSublattice
from .intmat import IntegerMatrix, hermite_normal_form, hnf_rows

INFINITE = math.inf


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank.

    ``basis`` is always the list of nonzero HNF rows of any generating set, so
    two Lattice objects are equal exactly when they describe the same lattice.
    Build instances through :meth:`from_generators` unless the basis is already
    canonical.
    """

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, vectors: Iterable[Sequence[int]], ambient_rank: int) -> "Lattice":
        vecs = [tuple(int(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_rank:
                raise AmbientMismatch(f"vector of length {len(v)} in Z^{ambient_rank}")
        return cls(ambient_rank, tuple(hnf_rows(vecs, ambient_rank)))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, ())

    @classmethod
    def coordinate(cls, n: int, coords: Iterable[int]) -> "Lattice":
        """Sublattice spanned by the standard basis vectors e_i, i in coords."""
        coords = sorted(set(coords))
        return cls(n, tuple(tuple(1 if j == i else 0 for j in range(n)) for i in coords))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows(self.basis, self.ambient_rank)

    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(b) if x) for b in self.basis]

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coordinates of v in the HNF basis, or None if v is not in the lattice."""
        if len(v) != self.ambient_rank:
            raise AmbientMismatch("vector length differs from ambient rank")
        w = list(v)
        coeffs = []
        start = 0
        for b, piv in zip(self.basis, self.pivots()):
            if any(w[start:piv]):
                return None
            q, r = divmod(w[piv], b[piv])
            if r:
                return None
            coeffs.append(q)
            if q:
                w = [x - q * y for x, y in zip(w, b)]
            start = piv + 1
        if any(w):
            return None
        return tuple(coeffs)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_lattice(self, other: "Lattice") -> bool:
        _check_ambient(self, other)
        return all(self.contains(b) for b in other.basis)

    def gram_determinant(self) -> int:
        """det(B B^T); equals covolume squared."""
        G = IntegerMatrix.from_rows(
            [[sum(x * y for x, y in zip(a, b)) for b in self.basis] for a in self.basis],
            self.rank)
        return G.determinant()

    def __repr__(self):
        return f"Lattice(Z^{self.ambient_rank}, rank={self.rank}, basis={list(self.basis)!r})"


def _check_ambient(a: Lattice, b: Lattice):
    if a.ambient_rank != b.ambient_rank:
        raise AmbientMismatch(f"Z^{a.ambient_rank} vs Z^{b.ambient_rank}")


def integer_kernel(M: IntegerMatrix) -> Lattice:
    """Saturated lattice {v in Z^cols : M v = 0}.

    Rows of the unimodular transform U with H = U M^T whose H-row vanishes span
    the kernel; since U is unimodular this basis extends to a basis of Z^cols,
    so the result is saturated by construction.
    """
    n = M.ncols
    if M.nrows == 0:
        return Lattice.full(n)
    H, U = hermite_normal_form(M.transpose())
    kernel_rows = [U.row(i) for i in range(H.nrows) if not any(H.row(i))]
    return Lattice.from_generators(kernel_rows, n)


def lattice_sum(L1: Lattice, L2: Lattice) -> Lattice:
    _check_ambient(L1, L2)
    return Lattice.from_generators(L1.basis + L2.basis, L1.ambient_rank)


def sublattice_index(L: Lattice, ambient: Lattice) -> int | float:
    """[ambient : L], or INFINITE when L has smaller rank."""
    _check_ambient(L, ambient)
    coords = []
    for b in L.basis:
        c = ambient.coordinates(b)
        if c is None:
            raise NotSublattice(f"basis vector {b} not in ambient lattice")
        coords.append(c)
    if L.rank < ambient.rank:
        return INFINITE
    C = IntegerMatrix.from_rows(coords, ambient.rank)
    return abs(C.determinant())


def saturate(L: Lattice) -> Lattice:
    """(L tensor Q) intersect Z^n."""
    n = L.ambient_rank
    if L.rank == 0:
        return L
    perp = integer_kernel(L.basis_matrix())
    if perp.rank == 0:
        return Lattice.full(n)
    return integer_kernel(perp.basis_matrix())


def is_saturated(L: Lattice) -> bool:
    return saturate(L) == L
