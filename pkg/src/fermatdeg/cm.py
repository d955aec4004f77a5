"""Galois and CM-type combinatorics of Q(zeta_m), and the splitting of J_m.

Conventions: tau_j denotes zeta_m -> zeta_m^j and is identified with the label
j in (Z/mZ)^x.  Units are always listed in ascending order; that order indexes
the rows of every projection matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra.cyclotomic import euler_phi
from .errors import InvalidModulus, Unsupported


def units(m: int) -> tuple[int, ...]:
    return tuple(j for j in range(1, m) if math.gcd(j, m) == 1) if m > 1 else (0,)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    k = 2
    while k * k <= n:
        while n % k == 0:
            out[k] = out.get(k, 0) + 1
            n //= k
        k += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


@dataclass(frozen=True)
class GaloisData:
    """G = Gal(Q(zeta_m)/Q) as (Z/mZ)^x with a fixed ordering of its elements."""

    m: int
    units: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.m < 3:
            raise InvalidModulus(f"m={self.m} must be at least 3")
        object.__setattr__(self, "units", units(self.m))

    @property
    def order(self) -> int:
        return len(self.units)

    def index(self, j: int) -> int:
        return self._index_map()[j % self.m]

    @lru_cache(maxsize=None)
    def _index_map(self) -> dict[int, int]:
        return {u: i for i, u in enumerate(self.units)}

    def subgroup_for(self, d: int) -> tuple[int, ...]:
        """H_d = Gal(Q(zeta_m)/Q(zeta_d)) = {j : j = 1 mod d}."""
        if self.m % d:
            raise InvalidModulus(f"{d} does not divide {self.m}")
        return tuple(j for j in self.units if j % d == 1 % d)


@dataclass(frozen=True)
class CMType:
    """A CM type of Q(zeta_d), given by labels in (Z/dZ)^x."""

    field_modulus: int
    members: frozenset[int]

    def __post_init__(self):
        d = self.field_modulus
        mem = frozenset(j % d for j in self.members)
        object.__setattr__(self, "members", mem)
        us = set(units(d))
        if not mem <= us:
            raise InvalidModulus(f"{sorted(mem - us)} are not units mod {d}")
        for j in us:
            if (j in mem) == ((-j) % d in mem):
                raise InvalidModulus(f"CM-type axiom fails at {j} mod {d}")

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def translate(self, a: int) -> "CMType":
        return CMType(self.field_modulus, frozenset(a * j for j in self.members))

    def __repr__(self):
        return f"CMType(Q(zeta_{self.field_modulus}), {self.sorted()})"


def _check_odd(m: int):
    if m < 3 or m % 2 == 0:
        raise InvalidModulus(f"m={m} must be odd and at least 3")


def prym_cm_type(m: int) -> CMType:
    """Phi = {j : gcd(j, m) = 1, 1 <= j <= (m-1)/2}."""
    _check_odd(m)
    g = (m - 1) // 2
    return CMType(m, frozenset(j for j in range(1, g + 1) if math.gcd(j, m) == 1))


def reflex_type(phi: CMType) -> CMType:
    """Reflex of a CM type of the abelian field Q(zeta_d): the inverse set."""
    d = phi.field_modulus
    if d <= 2:
        return phi
    return CMType(d, frozenset(pow(j, -1, d) for j in phi.members))


def stabilizer(phi: CMType) -> list[int]:
    d = phi.field_modulus
    return [a for a in units(d) if phi.translate(a).members == phi.members]


def is_primitive(phi: CMType) -> bool:
    """True iff a*Phi = Phi forces a = 1 (checked over all units a)."""
    return stabilizer(phi) == [1 % phi.field_modulus]


@dataclass(frozen=True)
class Factor:
    label: str
    dimension: int
    cm_modulus: int

    def as_tuple(self) -> tuple[str, int, int]:
        return (self.label, self.dimension, self.cm_modulus)


@dataclass(frozen=True)
class DecompositionLedger:
    m: int
    factors: tuple[Factor, ...]
    multiplicity: int = 1

    @property
    def genus(self) -> int:
        return self.multiplicity * sum(f.dimension for f in self.factors)

    def labels(self) -> list[str]:
        return [f.label for f in self.factors]

    def by_label(self, label: str) -> Factor:
        for f in self.factors:
            if f.label == label:
                return f
        raise KeyError(label)


def _factor_labels(m: int, ds: list[int]) -> dict[int, str]:
    fac = factorize(m)
    labels = {}
    if len(fac) == 1:
        (p, k), = fac.items()
        for d in ds:
            e = round(math.log(d, p))
            if e == 1:
                labels[d] = f"J{p}"
            elif k == 2:
                labels[d] = "X"
            else:
                labels[d] = f"X{e - 1}"
        return labels
    for d in ds:
        if is_prime(d):
            labels[d] = f"J{d}"
        elif d == m:
            labels[d] = "X"
        else:
            labels[d] = f"X{d}"
    return labels


@lru_cache(maxsize=None)
def decompose_jacobian(m: int) -> DecompositionLedger:
    """One simple factor of dimension phi(d)/2 with CM by Q(zeta_d) per divisor d > 1.

    Labels: J_p for prime d; for m = p^k the Pryms are X_{k-1}, ..., X_1 (plain
    X when k = 2); otherwise X for d = m and X<d> for other composite d.
    Even m = 2m' with m' odd gives the ledger of m' with multiplicity two.
    """
    if m < 3:
        raise InvalidModulus(f"m={m} must be at least 3")
    if m % 4 == 0:
        raise Unsupported(f"m={m} is divisible by 4; no decomposition is available")
    if m % 2 == 0:
        base = decompose_jacobian(m // 2)
        return DecompositionLedger(m, base.factors, 2 * base.multiplicity)
    ds = sorted((d for d in divisors(m) if d > 1), reverse=True)
    labels = _factor_labels(m, ds)
    return DecompositionLedger(m, tuple(Factor(labels[d], euler_phi(d) // 2, d) for d in ds))
