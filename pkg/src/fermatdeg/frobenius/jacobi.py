"""Jacobi sums J(chi^a, chi_2) and Frobenius polynomials of C_m.

Character convention: on F_q with primitive element G (for q = p prime, G is
the smallest primitive root mod p) the character of order n is
chi(G^k) = zeta_n^k.  Values are stored in Z[zeta_m].

The Frobenius eigenvalue attached to the character index a is
beta_a = -chi_2(-1) J(chi^a, chi_2); this sign makes
t_p = sum_a beta_a agree with point counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..algebra.cyclotomic import CyclotomicElement
from ..errors import BoundExceeded, CongruenceViolation, InvalidModulus
from .finite_field import DEFAULT_FIELD_BOUND, FiniteField, get_field
from .primes import is_prime, multiplicative_order


@dataclass(frozen=True)
class JacobiSum:
    m: int
    p: int
    a: int
    value: CyclotomicElement
    generator: int
    field_degree: int = 1

    @property
    def q(self) -> int:
        return self.p ** self.field_degree

    def check_norm(self) -> bool:
        return self.value * self.value.conjugate() == self.q


def jacobi_histogram(F: FiniteField, n: int) -> np.ndarray:
    """H[r] = sum over x != 0, 1 with log x = r mod n of chi_2(1 - x)."""
    if (F.q - 1) % n:
        raise CongruenceViolation(f"{n} does not divide q - 1 = {F.q - 1}")
    _, exp, log = F.log_tables()
    xs = exp[1:]  # every x != 0, 1
    r = np.arange(1, F.q - 1, dtype=np.int64) % n
    parity = log[F.one_minus(xs)] & 1
    key = 2 * r + parity
    cnt = np.bincount(key, minlength=2 * n)
    return cnt[0::2] - cnt[1::2]


def _jacobi_from_histogram(H: np.ndarray, n: int, a: int, m: int) -> CyclotomicElement:
    """sum_r H[r] zeta_n^(a r), embedded in Q(zeta_m)."""
    s = m // n
    coeffs = [0] * m
    for r, h in enumerate(H):
        if h:
            coeffs[(a * r * s) % m] += int(h)
    return CyclotomicElement.from_power_sums(m, coeffs)


def jacobi_sums(m: int, p: int) -> list[JacobiSum]:
    """J(chi^a, chi_2) over F_p for a = 1..m-1; requires p = 1 mod m."""
    if not is_prime(p) or p % m != 1:
        raise CongruenceViolation(f"p={p} must be a prime congruent to 1 mod {m}")
    F = get_field(p, 1, max(DEFAULT_FIELD_BOUND, p))
    G = F.log_tables()[0]
    H = jacobi_histogram(F, m)
    return [JacobiSum(m, p, a, _jacobi_from_histogram(H, m, a, m), G) for a in range(1, m)]


def jacobi_sum(m: int, p: int, a: int) -> JacobiSum:
    if not 1 <= a <= m - 1:
        raise CongruenceViolation(f"character index {a} outside 1..{m - 1}")
    return jacobi_sums(m, p)[a - 1]


def frobenius_root(J: JacobiSum) -> CyclotomicElement:
    sign = 1 if J.q % 4 == 1 else -1
    return -sign * J.value


def _orbits(m: int, p: int) -> list[list[int]]:
    seen, out = set(), []
    for a in range(1, m):
        if a in seen:
            continue
        orb, x = [], a
        while x not in orb:
            orb.append(x)
            x = x * p % m
        seen.update(orb)
        out.append(orb)
    return out


def orbit_eigenvalues(m: int, p: int, max_degree: int | None = None,
                      bound: int = DEFAULT_FIELD_BOUND) -> list[tuple[list[int], CyclotomicElement]]:
    """(orbit, gamma_O) with Frob_p^|O| acting on the orbit's eigenlines as gamma_O.

    Orbits longer than max_degree are skipped.
    """
    out = []
    cache: dict[int, FiniteField] = {}
    for orb in _orbits(m, p):
        f = len(orb)
        if max_degree is not None and f > max_degree:
            continue
        a = orb[0]
        n = m // math.gcd(a, m)
        q = p ** f
        if q > bound:
            raise BoundExceeded(f"orbit {orb} needs F_{p}^{f} of size {q} > {bound}")
        F = cache.setdefault(f, get_field(p, f, bound))
        H = jacobi_histogram(F, n)
        J = _jacobi_from_histogram(H, n, a // math.gcd(a, m), m)
        sign = 1 if q % 4 == 1 else -1
        out.append((orb, -sign * J))
    return out


def trace_over_extension(m: int, p: int, n: int = 1, bound: int = DEFAULT_FIELD_BOUND) -> int:
    """t_{p^n} = sum over orbits O with |O| dividing n of |O| gamma_O^(n/|O|)."""
    if p == 2 or m % p == 0:
        raise InvalidModulus(f"p={p} is not coprime to 2m")
    total = CyclotomicElement.zero(m)
    for orb, gamma in orbit_eigenvalues(m, p, max_degree=n, bound=bound):
        f = len(orb)
        if n % f == 0:
            total = total + f * gamma ** (n // f)
    return int(total.rational_value())


@dataclass(frozen=True)
class FrobeniusData:
    m: int
    p: int
    trace: int
    polynomial: tuple[int, ...] | None = None  # c_0 + c_1 x + ... + c_{2g} x^{2g}

    def functional_equation_holds(self) -> bool:
        if self.polynomial is None:
            return True
        c = self.polynomial
        g = (len(c) - 1) // 2
        # x^{2g} P(p/x) = p^g P(x) reads c_i = p^{g-i} c_{2g-i}
        return all(c[i] == self.p ** (g - i) * c[2 * g - i] for i in range(g + 1))

    def to_dict(self) -> dict:
        return {"m": self.m, "p": self.p, "trace": self.trace,
                "polynomial": list(self.polynomial) if self.polynomial else None}


def _poly_mul(a: Sequence[CyclotomicElement], b: Sequence[CyclotomicElement], m: int):
    out = [CyclotomicElement.zero(m) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def frobenius_polynomial(m: int, p: int, bound: int = DEFAULT_FIELD_BOUND) -> FrobeniusData:
    """Characteristic polynomial of Frob_p on H^1, i.e. prod (x - alpha) over the 2g roots."""
    if m < 3 or m % 2 == 0:
        raise InvalidModulus(f"m={m} must be odd")
    if p == 2 or m % p == 0 or not is_prime(p):
        raise InvalidModulus(f"p={p} must be a prime coprime to 2m")
    poly = [CyclotomicElement.one(m)]
    for orb, gamma in orbit_eigenvalues(m, p, bound=bound):
        f = len(orb)
        factor = [-gamma] + [CyclotomicElement.zero(m)] * (f - 1) + [CyclotomicElement.one(m)]
        poly = _poly_mul(poly, factor, m)
    coeffs = []
    for c in poly:
        if not c.is_rational() or c.rational_value().denominator != 1:
            raise ArithmeticError(f"non-integral Frobenius coefficient {c}")
        coeffs.append(int(c.rational_value()))
    g = (m - 1) // 2
    trace = -coeffs[2 * g - 1]
    return FrobeniusData(m, p, trace, tuple(coeffs))


def factor_degrees(poly: Sequence[int]) -> list[int]:
    """Degrees (with multiplicity) of the irreducible factors over Z."""
    import flint
    _, facs = flint.fmpz_poly(list(poly)).factor()
    out = []
    for fac, e in facs:
        out.extend([fac.degree()] * int(e))
    return sorted(out)
