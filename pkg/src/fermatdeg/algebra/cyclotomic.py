"""Exact arithmetic in Q(zeta_m).

An element is stored as an integer coefficient vector in the power basis
1, x, ..., x^(phi(m)-1) of Z[x]/Phi_m(x) together with a positive common
denominator, so inverses stay exact.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..errors import AmbientMismatch, DivisionByZero


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    # x^m - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(a: list[int], b: Sequence[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            if c % lead:
                raise ArithmeticError("inexact polynomial division")
            c //= lead
            q[k - db] = c
            for i, bi in enumerate(b):
                a[k - db + i] -= c * bi
    if any(a):
        raise ArithmeticError("nonzero remainder")
    return q


def euler_phi(n: int) -> int:
    result, k = n, 2
    while k * k <= n:
        if n % k == 0:
            while n % k == 0:
                n //= k
            result -= result // k
        k += 1
    if n > 1:
        result -= result // n
    return result


def _reduce(coeffs: Sequence[int], m: int) -> list[int]:
    """Reduce an arbitrary-length coefficient list modulo x^m - 1 and then Phi_m."""
    if len(coeffs) > m:
        folded = [0] * m
        for i, c in enumerate(coeffs):
            folded[i % m] += c
        coeffs = folded
    phi = cyclotomic_polynomial(m)
    n = len(phi) - 1
    a = list(coeffs) + [0] * max(0, n - len(coeffs))
    for k in range(len(a) - 1, n - 1, -1):
        c = a[k]
        if c:
            # Phi_m is monic
            for i in range(n + 1):
                a[k - n + i] -= c * phi[i]
    return a[:n]


class CyclotomicElement:
    """Element (sum c_i zeta^i) / den of Q(zeta_m)."""

    __slots__ = ("m", "coeffs", "den")

    def __init__(self, m: int, coeffs: Sequence[int], den: int = 1, *, _reduced: bool = False):
        if m < 1:
            raise ValueError("modulus must be positive")
        if den == 0:
            raise DivisionByZero("zero denominator")
        cs = list(coeffs) if _reduced else _reduce(coeffs, m)
        if den < 0:
            den, cs = -den, [-c for c in cs]
        if den != 1:
            g = den
            for c in cs:
                g = math.gcd(g, c)
                if g == 1:
                    break
            if g > 1:
                den //= g
                cs = [c // g for c in cs]
        self.m = m
        self.coeffs = tuple(cs)
        self.den = den

    # constructors
    @classmethod
    def zero(cls, m: int) -> "CyclotomicElement":
        return cls(m, [])

    @classmethod
    def one(cls, m: int) -> "CyclotomicElement":
        return cls(m, [1])

    @classmethod
    def from_int(cls, m: int, n: int) -> "CyclotomicElement":
        return cls(m, [n])

    @classmethod
    def from_rational(cls, m: int, q) -> "CyclotomicElement":
        q = Fraction(q)
        return cls(m, [q.numerator], q.denominator)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CyclotomicElement":
        k %= m
        return cls(m, [0] * k + [1])

    @classmethod
    def from_power_sums(cls, m: int, coeffs_mod_m: Sequence[int]) -> "CyclotomicElement":
        """Element sum_k c_k zeta^k with k running over 0..m-1 (any length accepted)."""
        return cls(m, list(coeffs_mod_m))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def _coerce(self, other) -> "CyclotomicElement":
        if isinstance(other, CyclotomicElement):
            if other.m != self.m:
                raise AmbientMismatch(f"Q(zeta_{self.m}) vs Q(zeta_{other.m})")
            return other
        if isinstance(other, int):
            return CyclotomicElement.from_int(self.m, other)
        if isinstance(other, Fraction):
            return CyclotomicElement.from_rational(self.m, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.den * o.den // math.gcd(self.den, o.den)
        a, b = d // self.den, d // o.den
        return CyclotomicElement(self.m, [a * x + b * y for x, y in zip(self.coeffs, o.coeffs)], d,
                                 _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.m, [-c for c in self.coeffs], self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicElement(self.m, prod, self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.invert() ** (-e)
        result = CyclotomicElement.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicElement.from_rational(self.m, other)
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self.m == other.m and self.den == other.den and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.den, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        """True iff the element lies in Z[zeta_m] (the power basis is an integral basis)."""
        return self.den == 1

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.coeffs[0] if self.coeffs else 0, self.den)

    def galois(self, t: int) -> "CyclotomicElement":
        """Image under zeta -> zeta^t, gcd(t, m) = 1."""
        if math.gcd(t, self.m) != 1:
            raise ValueError("automorphism index must be a unit")
        out = [0] * self.m
        for i, c in enumerate(self.coeffs):
            out[(i * t) % self.m] += c
        return CyclotomicElement(self.m, out, self.den)

    def conjugate(self) -> "CyclotomicElement":
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Absolute norm N_{Q(zeta_m)/Q}."""
        prod = CyclotomicElement.one(self.m)
        for t in range(1, self.m):
            if math.gcd(t, self.m) == 1:
                prod = prod * self.galois(t)
        return prod.rational_value()

    def invert(self) -> "CyclotomicElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(zeta_m)")
        others = CyclotomicElement.one(self.m)
        for t in range(2, self.m):
            if math.gcd(t, self.m) == 1:
                others = others * self.galois(t)
        n = (self * others).rational_value()
        return CyclotomicElement(self.m, [c * n.denominator for c in others.coeffs],
                                 others.den * n.numerator, _reduced=True)

    def embed(self, new_m: int) -> "CyclotomicElement":
        """Image under the canonical inclusion Q(zeta_m) in Q(zeta_new_m), zeta_m -> zeta_new^(new_m/m)."""
        if new_m % self.m:
            raise AmbientMismatch(f"{self.m} does not divide {new_m}")
        s = new_m // self.m
        out = [0] * ((len(self.coeffs) - 1) * s + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * s] = c
        return CyclotomicElement(new_m, out, self.den)

    def complex_embedding(self, t: int = 1) -> complex:
        z = cmath.exp(2j * math.pi * t / self.m)
        return sum(c * z ** i for i, c in enumerate(self.coeffs)) / self.den

    def root_of_unity_index(self) -> int | None:
        """k with self == zeta_m^k, or None (for odd m, -zeta^j = zeta_2m^.. is detected separately)."""
        if self.den != 1:
            return None
        for k in range(self.m):
            if self == CyclotomicElement.zeta(self.m, k):
                return k
        return None

    def signed_root_of_unity(self) -> tuple[int, int] | None:
        """(sign, k) with self == sign * zeta_m^k, or None."""
        k = self.root_of_unity_index()
        if k is not None:
            return 1, k
        k = (-self).root_of_unity_index()
        if k is not None:
            return -1, k
        return None

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"Cyc{self.m}[{body}]"


def cyclotomic_mul(a: CyclotomicElement, b: CyclotomicElement) -> CyclotomicElement:
    return a * b


def cyclotomic_invert(a: CyclotomicElement) -> CyclotomicElement:
    return a.invert()
