"""Monomial Hodge cycles of J_m and the torus they cut out.

omega_i (1 <= i <= g) carries character i mod m and its conjugate carries
m - i.  A monomial (a | b) of codimension d is Hodge iff for every unit t

    sum_i rho(t a_i) + sum_j rho(-t b_j) = d m,   rho(x) in {1, ..., m-1}.

Because rho(-x) = m - rho(x) this is linear in v = ind(a) - ind(b):
v must lie in the kernel of R[t, i] = rho(t i).  Every Hodge monomial is
therefore (A + C | B + C) where v = ind(A) - ind(B) is a {-1, 0, 1} kernel
vector and C is any set disjoint from A and B.  Enumeration works on the
kernel vectors and attaches the common part C afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .algebra.intmat import IntegerMatrix, hnf_rows, matrix_rank
from .algebra.lattice import Lattice, integer_kernel, saturate
from .cm import units
from .errors import CodimOutOfRange, InvalidModulus


@dataclass(frozen=True, order=True)
class HodgeMonomial:
    """omega_{a_1} ^ ... ^ omega_{a_d} ^ conj(omega_{b_1}) ^ ... ^ conj(omega_{b_d})."""

    hol: tuple[int, ...]
    anti: tuple[int, ...]

    def __post_init__(self):
        if len(self.hol) != len(self.anti):
            raise ValueError("holomorphic and antiholomorphic parts differ in size")
        if list(self.hol) != sorted(set(self.hol)) or list(self.anti) != sorted(set(self.anti)):
            raise ValueError("index sets must be strictly increasing")

    @property
    def codim(self) -> int:
        return len(self.hol)

    def characters(self, m: int) -> tuple[list[int], list[int]]:
        return [a % m for a in self.hol], [(m - b) % m for b in self.anti]

    def vector(self, g: int) -> tuple[int, ...]:
        v = [0] * g
        for a in self.hol:
            v[a - 1] += 1
        for b in self.anti:
            v[b - 1] -= 1
        return tuple(v)

    @property
    def is_divisorial(self) -> bool:
        return self.hol == self.anti

    def conjugate(self) -> "HodgeMonomial":
        return HodgeMonomial(self.anti, self.hol)

    def __str__(self):
        return f"({','.join(map(str, self.hol))}|{','.join(map(str, self.anti))})"


def _rho(x: int, m: int) -> int:
    return x % m


def genus(m: int) -> int:
    return (m - 1) // 2


def _check_m(m: int):
    if m < 3 or m % 2 == 0:
        raise InvalidModulus(f"m={m} must be odd and at least 3")


def is_hodge(m: int, hol: Sequence[int], anti: Sequence[int]) -> bool:
    """Direct residue-sum test of one monomial."""
    d = len(hol)
    if len(anti) != d:
        return False
    return all(sum(_rho(t * a, m) for a in hol) + sum(_rho(-t * b, m) for b in anti) == d * m
               for t in units(m))


def hodge_condition_matrix(m: int) -> IntegerMatrix:
    """R[t, i] = rho(t i), rows over ascending units t, columns i = 1..g."""
    _check_m(m)
    g = genus(m)
    return IntegerMatrix.from_rows([[_rho(t * i, m) for i in range(1, g + 1)] for t in units(m)], g)


def holomorphic_count_matrix(m: int) -> IntegerMatrix:
    """E[t, i] = +1 if t i mod m lies in (0, m/2), else -1.

    ker E is the condition that tau_t keeps the number of holomorphic factors
    equal to d; kept as an independent formulation of the Hodge criterion.
    """
    _check_m(m)
    g = genus(m)
    return IntegerMatrix.from_rows(
        [[1 if 2 * ((t * i) % m) < m else -1 for i in range(1, g + 1)] for t in units(m)], g)


def ternary_kernel_vectors(K: Lattice) -> list[tuple[int, ...]]:
    """All nonzero vectors of K with entries in {-1, 0, 1}, lexicographically sorted.

    Backtracks over coefficients of the HNF basis: the pivot entry of the i-th
    basis row only meets rows 1..i, so each coefficient has at most three
    admissible values once the earlier ones are fixed.
    """
    basis = [list(b) for b in K.basis]
    g = K.ambient_rank
    if not basis:
        return []
    pivots = [next(j for j, x in enumerate(b) if x) for b in basis]
    bounds = pivots[1:] + [g]
    out = []

    def rec(i: int, partial: list[int]):
        if i == len(basis):
            if any(partial):
                out.append(tuple(partial))
            return
        b, p = basis[i], pivots[i]
        for target in (-1, 0, 1):
            c, r = divmod(target - partial[p], b[p])
            if r:
                continue
            cand = [x + c * y for x, y in zip(partial, b)] if c else partial
            if all(-1 <= cand[j] <= 1 for j in range(p, bounds[i])):
                rec(i + 1, cand)

    rec(0, [0] * g)
    return sorted(set(out))


@lru_cache(maxsize=None)
def hodge_kernel(m: int) -> Lattice:
    return integer_kernel(hodge_condition_matrix(m))


@lru_cache(maxsize=None)
def hodge_vectors(m: int) -> tuple[tuple[int, ...], ...]:
    """Nonzero {-1,0,1} vectors v = ind(a) - ind(b) of Hodge monomials."""
    return tuple(ternary_kernel_vectors(hodge_kernel(m)))


def _split(v: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    pos = tuple(i + 1 for i, x in enumerate(v) if x > 0)
    neg = tuple(i + 1 for i, x in enumerate(v) if x < 0)
    return pos, neg


def monomials_from_vectors(vectors: Iterable[Sequence[int]], g: int, d: int) -> list[HodgeMonomial]:
    """All (A + C | B + C) of codimension d, v ranging over ``vectors`` plus v = 0."""
    out = []
    vecs = [tuple([0] * g)] + [tuple(v) for v in vectors]
    for v in vecs:
        A, B = _split(v)
        k = len(A)
        if len(B) != k or k > d:
            continue
        free = [i for i in range(1, g + 1) if v[i - 1] == 0]
        for C in combinations(free, d - k):
            out.append(HodgeMonomial(tuple(sorted(A + C)), tuple(sorted(B + C))))
    return sorted(out)


@dataclass(frozen=True)
class HodgeSpaceReport:
    m: int
    d: int
    all: tuple[HodgeMonomial, ...]
    divisor_generated: tuple[HodgeMonomial, ...]
    exceptional: tuple[HodgeMonomial, ...]
    quotient_dim: int

    def to_dict(self, include_monomials: bool = False) -> dict:
        out = {"d": self.d, "numHodge": len(self.all), "numDivisorGenerated": len(self.divisor_generated),
               "numExceptional": len(self.exceptional), "quotientDim": self.quotient_dim}
        if include_monomials:
            out["exceptional"] = [str(x) for x in self.exceptional]
        return out


def quotient_dim(m: int, d: int) -> int:
    """dim B^d / sum_{r=1}^{d-1} B^r B^{d-r}.

    Products of monomials are +-monomials or zero, so the product space is
    spanned by the monomials that factor; a monomial with common part C != 0
    factors through (c|c), and one with C = 0 factors iff its vector has a
    proper sub-support restriction in the kernel.
    """
    g = genus(m)
    if not 0 <= d <= g:
        raise CodimOutOfRange(f"d={d} outside 0..{g}")
    if d == 0:
        return 1
    if d == 1:
        return len(monomials_from_vectors(hodge_vectors(m), g, 1))
    return _indecomposable_counts(m).get(d, 0)


def _masks(v: Sequence[int]) -> tuple[int, int]:
    pos = sum(1 << i for i, x in enumerate(v) if x > 0)
    neg = sum(1 << i for i, x in enumerate(v) if x < 0)
    return pos, neg


@lru_cache(maxsize=None)
def _indecomposable_counts(m: int) -> dict[int, int]:
    # w restricts v iff its positive and negative supports sit inside v's
    masks = [_masks(v) for v in hodge_vectors(m)]
    out: dict[int, int] = {}
    for pv, nv in masks:
        if any(pw | pv == pv and nw | nv == nv and (pw, nw) != (pv, nv) for pw, nw in masks):
            continue
        k = bin(pv).count("1")
        out[k] = out.get(k, 0) + 1
    return out


def count_hodge_monomials(m: int, d: int) -> tuple[int, int]:
    """(#Hodge monomials, #exceptional ones) of codimension d, without listing them."""
    g = genus(m)
    if not 0 <= d <= g:
        raise CodimOutOfRange(f"d={d} outside 0..{g}")
    by_k: dict[int, int] = {}
    for v in hodge_vectors(m):
        k = sum(1 for x in v if x > 0)
        by_k[k] = by_k.get(k, 0) + 1
    exc = sum(n * math.comb(g - 2 * k, d - k) for k, n in by_k.items() if k <= d)
    return exc + math.comb(g, d), exc


def _wedge_product(x: HodgeMonomial, y: HodgeMonomial) -> tuple[int, HodgeMonomial] | None:
    """Sign and monomial of x ^ y in the basis omega_a... ^ conj(omega)_b..., or None if zero."""
    if set(x.hol) & set(y.hol) or set(x.anti) & set(y.anti):
        return None
    # x = w(a) wb(b), y = w(a') wb(b'); moving w(a') past wb(b) costs |b||a'| transpositions
    seq_h = list(x.hol) + list(y.hol)
    seq_a = list(x.anti) + list(y.anti)
    sign = (-1) ** (len(x.anti) * len(y.hol))
    sign *= _perm_sign(seq_h) * _perm_sign(seq_a)
    return sign, HodgeMonomial(tuple(sorted(seq_h)), tuple(sorted(seq_a)))


def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def quotient_dim_linear(m: int, d: int) -> int:
    """Same quantity as quotient_dim, by rank of the product matrix over Q."""
    g = genus(m)
    if d <= 1:
        return quotient_dim(m, d)
    vectors = hodge_vectors(m)
    basis = monomials_from_vectors(vectors, g, d)
    pos = {x: i for i, x in enumerate(basis)}
    rows = []
    for r in range(1, d // 2 + 1):
        left = monomials_from_vectors(vectors, g, r)
        right = left if r == d - r else monomials_from_vectors(vectors, g, d - r)
        for x in left:
            for y in right:
                w = _wedge_product(x, y)
                if w is None:
                    continue
                row = [0] * len(basis)
                row[pos[w[1]]] = w[0]
                rows.append(row)
    if not rows:
        return len(basis)
    return len(basis) - matrix_rank(IntegerMatrix.from_rows(rows, len(basis)))


def enumerate_hodge_cycles(m: int, d: int) -> HodgeSpaceReport:
    _check_m(m)
    g = genus(m)
    if not 0 <= d <= g:
        raise CodimOutOfRange(f"d={d} outside 0..{g} for m={m}")
    allm = tuple(monomials_from_vectors(hodge_vectors(m), g, d))
    div = tuple(x for x in allm if x.is_divisorial)
    exc = tuple(x for x in allm if not x.is_divisorial)
    return HodgeSpaceReport(m, d, allm, div, exc, quotient_dim(m, d))


def exceptional_census(m: int) -> list[tuple[int, int, int]]:
    """(d, #exceptional, quotientDim) for d = 1..g.

    A monomial is divisorial iff its vector is zero, so the exceptional
    count only needs the kernel vectors, not the monomials themselves.
    """
    _check_m(m)
    return [(d, count_hodge_monomials(m, d)[1], quotient_dim(m, d)) for d in range(1, genus(m) + 1)]


@dataclass(frozen=True)
class TorusEmbedding:
    """Subtorus of U(1)^g: u_i = z^{parametrization[i]}, z in U(1)^r."""

    g: int
    relation_lattice: Lattice
    free_rank: int
    parametrization: tuple[tuple[int, ...], ...]
    free_coordinates: tuple[int, ...] | None = None
    label: str = "monomial-cut torus"

    @classmethod
    def from_parametrization(cls, rows: Sequence[Sequence[int]], label: str = "") -> "TorusEmbedding":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        g, r = len(rows), len(rows[0])
        rel = relation_lattice_of(rows)
        return cls(g, rel, r, rows, None, label)

    def relation_holds(self, v: Sequence[int]) -> bool:
        return all(sum(vi * row[j] for vi, row in zip(v, self.parametrization)) == 0
                   for j in range(self.free_rank))

    def diagonal_power(self, k: int) -> "TorusEmbedding":
        """The same torus acting diagonally on k copies (U(1)^g)^k."""
        rows = self.parametrization * k
        T = TorusEmbedding.from_parametrization(rows, f"{self.label} x{k}")
        return TorusEmbedding(T.g, T.relation_lattice, T.free_rank, T.parametrization,
                              self.free_coordinates, T.label)

    def describe(self) -> list[str]:
        """Entries in the U_i / Ubar_i notation."""
        names = self.free_coordinates or tuple(range(1, self.free_rank + 1))
        out = []
        for row in self.parametrization:
            parts = []
            for j, e in enumerate(row):
                if e == 0:
                    continue
                base = f"U{names[j]}" if e > 0 else f"Ubar{names[j]}"
                parts.append(base if abs(e) == 1 else f"{base}^{abs(e)}")
            out.append("*".join(parts) if parts else "1")
        return out

    def to_dict(self) -> dict:
        return {"g": self.g, "freeRank": self.free_rank, "label": self.label,
                "relationBasis": [list(b) for b in self.relation_lattice.basis],
                "parametrization": [list(r) for r in self.parametrization],
                "entries": self.describe()}


def relation_lattice_of(param: Sequence[Sequence[int]]) -> Lattice:
    """{v in Z^g : sum_i v_i param[i] = 0}."""
    g, r = len(param), len(param[0])
    PT = IntegerMatrix.from_rows([[param[i][j] for i in range(g)] for j in range(r)], g)
    return integer_kernel(PT)


def parametrize(rel: Lattice) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...] | None]:
    """Parametrization with the highest-index coordinates dependent.

    Reversing the coordinates before taking the HNF puts each relation's pivot
    at its largest index; when every pivot is 1 the non-pivot coordinates are
    free and each pivot coordinate is the monomial solving its relation.
    Otherwise fall back to a basis of the orthogonal complement.
    """
    g = rel.ambient_rank
    rev = hnf_rows([tuple(reversed(b)) for b in rel.basis], g)
    rows = [tuple(reversed(b)) for b in rev]
    pivots = [g - 1 - next(j for j, x in enumerate(b) if x) for b in rev]
    if all(row[p] == 1 for row, p in zip(rows, pivots)):
        free = [i for i in range(g) if i not in pivots]
        col = {c: k for k, c in enumerate(free)}
        param = []
        for i in range(g):
            if i in col:
                param.append(tuple(1 if k == col[i] else 0 for k in range(len(free))))
            else:
                row = rows[pivots.index(i)]
                param.append(tuple(-row[c] for c in free))
        return tuple(param), tuple(c + 1 for c in free)
    perp = integer_kernel(rel.basis_matrix())
    r = perp.rank
    return tuple(tuple(perp.basis[k][i] for k in range(r)) for i in range(g)), None


def relation_lattice(m: int) -> Lattice:
    g = genus(m)
    return saturate(Lattice.from_generators(hodge_vectors(m), g))


def hodge_torus(m: int) -> TorusEmbedding:
    _check_m(m)
    g = genus(m)
    rel = relation_lattice(m)
    param, free = parametrize(rel)
    return TorusEmbedding(g, rel, g - rel.rank, param, free)


def fixed_monomials(T: TorusEmbedding, d: int) -> list[HodgeMonomial]:
    """Monomials of codimension d on which the torus T acts trivially."""
    return monomials_from_vectors(ternary_kernel_vectors(T.relation_lattice), T.g, d)
