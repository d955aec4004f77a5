"""Valuations of Jacobi sums at the primes above a split p, and the torsion test.

For p = 1 mod m let w = G^((p-1)/m) with G the character generator.  The
primes above p are P_t = (p, zeta - w^t) for units t mod m.  Since p is
unramified, P_t^k = (p^k, zeta - W_k) with W_k the Hensel lift of w^t to a
root of Phi_m mod p^k, and membership is tested against the HNF lattice
spanned by p^k and zeta^i - W_k^i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..algebra.cyclotomic import CyclotomicElement, cyclotomic_polynomial, euler_phi
from ..algebra.intmat import IntegerMatrix
from ..algebra.lattice import Lattice, integer_kernel
from ..cm import units
from ..errors import NotSplit
from .jacobi import JacobiSum, frobenius_root, jacobi_sums
from .primes import is_prime, primitive_root


def _check_split(m: int, p: int):
    if not is_prime(p) or p % m != 1:
        raise NotSplit(f"p={p} does not split completely in Q(zeta_{m})")


def _hensel_root(m: int, w: int, p: int, k: int) -> int:
    """Lift a simple root w of Phi_m mod p to a root mod p^k."""
    phi = cyclotomic_polynomial(m)
    dphi = [i * c for i, c in enumerate(phi)][1:]

    def ev(poly, x, mod):
        r = 0
        for c in reversed(poly):
            r = (r * x + c) % mod
        return r

    x, mod = w % p, p
    while mod < p ** k:
        mod = min(mod * mod, p ** k)
        x = (x - ev(phi, x, mod) * pow(ev(dphi, x, mod), -1, mod)) % mod
    return x


@lru_cache(maxsize=512)
def ideal_power_lattice(m: int, p: int, t: int, k: int) -> Lattice:
    """HNF lattice of P_t^k inside Z[zeta_m] (power-basis coordinates)."""
    _check_split(m, p)
    n = euler_phi(m)
    w = pow(primitive_root(p), (p - 1) // m, p)
    W = _hensel_root(m, pow(w, t, p), p, k)
    mod = p ** k
    gens = [[mod] + [0] * (n - 1)]
    for i in range(1, n):
        v = [0] * n
        v[0] = -pow(W, i, mod)
        v[i] = 1
        gens.append(v)
    return Lattice.from_generators(gens, n)


def valuation(x: CyclotomicElement, p: int, t: int, max_k: int = 64) -> int:
    """v_{P_t}(x) for a nonzero algebraic integer x."""
    if x.is_zero():
        raise ValueError("valuation of zero")
    if not x.is_integral():
        raise ValueError("element is not integral")
    k = 0
    while k < max_k and ideal_power_lattice(x.m, p, t, k + 1).contains(x.coeffs):
        k += 1
    return k


def stickelberger_valuations(J: Sequence[JacobiSum]) -> IntegerMatrix:
    """Rows: units t mod m ascending.  Columns: the given Jacobi sums in order."""
    if not J:
        raise ValueError("no Jacobi sums given")
    m, p = J[0].m, J[0].p
    _check_split(m, p)
    rows = [[valuation(j.value, p, t) for j in J] for t in units(m)]
    return IntegerMatrix.from_rows(rows, len(J))


def stickelberger_oracle(m: int, t: int, a: int) -> int:
    """Fractional-part formula for v_{P_t}(J(chi^a, chi_2)).

    J = g(chi^a) g(chi_2) / g(chi^a chi_2) and the Gauss-sum valuation
    gives <-at/m> + <1/2> - <-at/m + 1/2>.
    """
    x = Fraction(-a * t, m) % 1
    half = Fraction(1, 2)
    return int(x + half - (x + half) % 1)


@dataclass(frozen=True)
class SplitTestResult:
    m: int
    p: int
    torsion_free: bool
    relation_rank: int
    witness_relation: tuple[int, ...] | None = None
    witness_value: tuple[int, int] | None = None  # (sign, k): product = sign * zeta_m^k

    def to_dict(self) -> dict:
        return {"m": self.m, "p": self.p, "torsionFree": self.torsion_free,
                "relationRank": self.relation_rank,
                "witnessRelation": list(self.witness_relation) if self.witness_relation else None}


def root_group_product(roots: Sequence[CyclotomicElement], e: Sequence[int], p: int) -> CyclotomicElement:
    """prod roots_i^e_i, using beta^-1 = conj(beta) / p."""
    m = roots[0].m
    num = CyclotomicElement.one(m)
    neg = 0
    for b, k in zip(roots, e):
        if k > 0:
            num = num * b ** k
        elif k < 0:
            num = num * b.conjugate() ** (-k)
            neg += -k
    return num / (p ** neg) if neg else num


def evaluate_relation(m: int, p: int, e: Sequence[int]) -> CyclotomicElement:
    """Recompute a root-group product from scratch (for checking witnesses)."""
    roots = [frobenius_root(j) for j in jacobi_sums(m, p)]
    return root_group_product(roots, e, p)


def torsion_free_test(m: int, p: int) -> SplitTestResult:
    _check_split(m, p)
    J = jacobi_sums(m, p)
    roots = [frobenius_root(j) for j in J]
    V = stickelberger_valuations(J)
    K = integer_kernel(V)
    for e in K.basis:
        val = root_group_product(roots, e, p)
        ru = val.signed_root_of_unity()
        if ru is None:
            raise ArithmeticError(f"kernel product {e} is not a root of unity")
        if ru != (1, 0):
            return SplitTestResult(m, p, False, K.rank, tuple(e), ru)
    return SplitTestResult(m, p, True, K.rank)
