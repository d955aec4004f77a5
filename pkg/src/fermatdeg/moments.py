"""Exact Sato-Tate moment sequences of tori and their finite extensions.

A torus element is U(z) = diag(u_1, ubar_1, ..., u_g, ubar_g) with
u_i = z^{P_i}.  The 2g coordinates come in consecutive (u, ubar) pairs and the
symplectic form is diag(J, ..., J) with J = [[0, 1], [-1, 0]].

M_n on the coset gamma^k T is the Haar integral of tr(gamma^k U(z))^n over T,
which is the constant term of the n-th power of a Laurent polynomial in z.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .algebra.laurent import LaurentPolynomial, constant_terms
from .errors import NotNormalizing
from .hodge import TorusEmbedding

DEFAULT_MAX_N = 12

Matrix = tuple[tuple[int, ...], ...]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(a[i], bt[j])) for j in range(n)) for i in range(n))


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class ComponentRep:
    """A signed permutation matrix of size 2g in (u, ubar)-pair block form."""

    matrix: Matrix
    order: int = field(init=False)

    def __post_init__(self):
        mat = tuple(tuple(int(x) for x in r) for r in self.matrix)
        object.__setattr__(self, "matrix", mat)
        n = len(mat)
        if n % 2 or any(len(r) != n for r in mat):
            raise ValueError("component representative must be square of even size")
        for r in mat:
            nz = [x for x in r if x]
            if len(nz) != 1 or nz[0] not in (1, -1):
                raise ValueError("component representative must be a signed permutation")
        for c in zip(*mat):
            if sum(1 for x in c if x) != 1:
                raise ValueError("component representative must be a signed permutation")
        ident, power, k = _identity(n), mat, 1
        while power != ident:
            power = _matmul(power, mat)
            k += 1
        object.__setattr__(self, "order", k)

    @classmethod
    def identity(cls, g: int) -> "ComponentRep":
        return cls(_identity(2 * g))

    @classmethod
    def from_json(cls, text: str) -> "ComponentRep":
        return cls(tuple(tuple(r) for r in json.loads(text)))

    @property
    def size2g(self) -> int:
        return len(self.matrix)

    def power(self, k: int) -> Matrix:
        out = _identity(self.size2g)
        for _ in range(k % self.order):
            out = _matmul(out, self.matrix)
        return out

    def is_symplectic(self) -> bool:
        n = self.size2g
        omega = [[0] * n for _ in range(n)]
        for i in range(0, n, 2):
            omega[i][i + 1], omega[i + 1][i] = 1, -1
        omega = tuple(map(tuple, omega))
        gt = tuple(zip(*self.matrix))
        return _matmul(_matmul(gt, omega), self.matrix) == omega


def gamma_j9() -> ComponentRep:
    """The order-12 representative generating the component group for m = 9."""
    I = ((1, 0), (0, 1))
    J = ((0, 1), (-1, 0))
    Z = ((0, 0), (0, 0))
    blocks = [[Z, I, Z, Z],
              [Z, Z, Z, I],
              [Z, Z, J, Z],
              [J, Z, Z, Z]]
    rows = []
    for brow in blocks:
        for r in range(2):
            rows.append(tuple(x for blk in brow for x in blk[r]))
    return ComponentRep(tuple(rows))


def _diagonal_characters(T: TorusEmbedding) -> list[tuple[int, ...]]:
    chars = []
    for row in T.parametrization:
        chars.append(tuple(row))
        chars.append(tuple(-x for x in row))
    return chars


def check_normalizes(T: TorusEmbedding, rep: ComponentRep) -> None:
    """Raise NotNormalizing unless rep U(z) rep^-1 lies in T for every z."""
    if rep.size2g != 2 * T.g:
        raise NotNormalizing(f"representative has size {rep.size2g}, torus needs {2 * T.g}")
    if not rep.is_symplectic():
        raise NotNormalizing("representative is not symplectic")
    chars = _diagonal_characters(T)
    new = [None] * len(chars)
    for i, r in enumerate(rep.matrix):
        j = next(c for c, x in enumerate(r) if x)
        new[i] = chars[j]  # (g U g^-1)_{ii} = U_{jj}
    for i in range(T.g):
        if new[2 * i + 1] != tuple(-x for x in new[2 * i]):
            raise NotNormalizing("conjugation breaks the (u, ubar) pairing")
    images = [new[2 * i] for i in range(T.g)]
    for v in T.relation_lattice.basis:
        if any(sum(vi * img[k] for vi, img in zip(v, images)) for k in range(T.free_rank)):
            raise NotNormalizing(f"relation {v} fails after conjugation")


def identity_trace_polynomial(T: TorusEmbedding) -> LaurentPolynomial:
    r = T.free_rank
    terms: dict[tuple[int, ...], int] = {}
    for row in T.parametrization:
        for e in (tuple(row), tuple(-x for x in row)):
            terms[e] = terms.get(e, 0) + 1
    return LaurentPolynomial(r, terms)


def coset_trace_polynomial(T: TorusEmbedding, rep: ComponentRep, k: int) -> LaurentPolynomial:
    mat = rep.power(k)
    terms: dict[tuple[int, ...], int] = {}
    for i, ch in enumerate(_diagonal_characters(T)):
        s = mat[i][i]
        if s:
            terms[ch] = terms.get(ch, 0) + s
    return LaurentPolynomial(T.free_rank, terms)


@dataclass(frozen=True)
class MomentReport:
    m: int | None
    field: str
    moments: tuple[tuple[int, Fraction | int], ...]
    cosets: tuple[tuple[tuple[int, int], ...], ...] = ()
    note: str = ""

    def value(self, n: int):
        return dict(self.moments)[n]

    def even(self, upto: int | None = None) -> list:
        return [v for n, v in self.moments if n % 2 == 0 and n > 0 and (upto is None or n <= upto)]

    def to_dict(self) -> dict:
        def enc(x):
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        out = {"field": self.field, "moments": {str(n): enc(v) for n, v in self.moments}}
        if self.note:
            out["note"] = self.note
        return out


def _check_max_n(max_n: int, bound: int):
    if max_n < 0 or max_n > bound:
        raise ValueError(f"max_n={max_n} outside 0..{bound}")


def identity_moments(T: TorusEmbedding, max_n: int = DEFAULT_MAX_N, *, m: int | None = None,
                     bound: int = DEFAULT_MAX_N) -> MomentReport:
    _check_max_n(max_n, bound)
    f = identity_trace_polynomial(T)
    vals = tuple(enumerate(constant_terms(f, max_n)))
    return MomentReport(m, "identity component", vals)


def coset_moments(T: TorusEmbedding, rep: ComponentRep, max_n: int = DEFAULT_MAX_N, *,
                  m: int | None = None, bound: int = DEFAULT_MAX_N) -> MomentReport:
    """Per-coset sequences for gamma^k T, k = 0..order-1."""
    _check_max_n(max_n, bound)
    check_normalizes(T, rep)
    per = []
    cache: dict[LaurentPolynomial, tuple] = {}
    for k in range(rep.order):
        f = coset_trace_polynomial(T, rep, k)
        if f not in cache:
            cache[f] = tuple(enumerate(constant_terms(f, max_n)))
        per.append(cache[f])
    return MomentReport(m, "cosets", per[0], tuple(per))


def group_moments(T: TorusEmbedding, rep: ComponentRep, max_n: int = DEFAULT_MAX_N, *,
                  m: int | None = None, bound: int = DEFAULT_MAX_N, note: str = "") -> MomentReport:
    cm = coset_moments(T, rep, max_n, m=m, bound=bound)
    avg = []
    for n in range(max_n + 1):
        s = Fraction(sum(c[n][1] for c in cm.cosets), rep.order)
        avg.append((n, s.numerator if s.denominator == 1 else s))
    return MomentReport(m, "full group", tuple(avg), cm.cosets, note)


def component_count(T: TorusEmbedding, rep: ComponentRep) -> int:
    """Smallest k >= 1 with rep^k in T (a diagonal matrix whose entries are torus characters)."""
    chars = _diagonal_characters(T)
    for k in range(1, rep.order + 1):
        mat = rep.power(k)
        if all(mat[i][j] == 0 for i in range(len(mat)) for j in range(len(mat)) if i != j):
            signs = [mat[i][i] for i in range(len(mat))]
            # diag(signs) lies in T iff it is a torsion point of T; signs are +-1
            if _sign_vector_in_torus(T, signs):
                return k
    return rep.order


def _sign_vector_in_torus(T: TorusEmbedding, signs: Sequence[int]) -> bool:
    if any(signs[2 * i] != signs[2 * i + 1] for i in range(T.g)):
        return False
    # u_i = s_i must satisfy every relation: prod s_i^{v_i} = 1
    for v in T.relation_lattice.basis:
        neg = sum(abs(vi) for vi, s in zip(v, signs[::2]) if s == -1) % 2
        if neg:
            return False
    return True


def u1_moment(n: int) -> int:
    return comb(n, n // 2) if n % 2 == 0 else 0


def binomial_convolution_moments(k: int, max_n: int) -> list[int]:
    """Moments of the trace on U(1)^k by repeated binomial convolution."""
    base = [u1_moment(n) for n in range(max_n + 1)]
    cur = [1] + [0] * max_n
    for _ in range(k):
        cur = [sum(comb(n, j) * cur[j] * base[n - j] for j in range(n + 1)) for n in range(max_n + 1)]
    return cur
