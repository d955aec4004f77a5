"""Traces of Frobenius of C_m : y^2 = x^m - 1.

t_q = q + 1 - #C_m(F_q) = -sum_x chi_2(x^m - 1)   (m odd: one point at infinity).

Two routes:

* :func:`point_count_trace` evaluates the character sum literally with
  square-and-multiply powering over F_q.  It is the oracle.
* :func:`fast_trace` works over F_p only.  With d = gcd(m, p - 1) the maps
  x -> x^m and x -> x^d have the same fibres, and expanding the fibre counts
  in characters of order d gives

      t_p = -chi_2(-1) (d H_0 + 1),   H_0 = sum_{u in (F_p^x)^d, u != 1} chi_2(1 - u),

  which needs only the (p-1)/d nontrivial d-th powers and a table of squares.

  The sweep uses a numba kernel for this when numba imports; the numpy
  version stays as the fallback and as a cross-check in the tests.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import BoundExceeded, InvalidModulus
from .finite_field import DEFAULT_FIELD_BOUND, get_field
from .primes import power_table, prime_factors, primitive_root

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

BRUTE_FORCE_BOUND = 10 ** 6


def _prime_power(q: int) -> tuple[int, int]:
    fs = prime_factors(q)
    if len(fs) != 1:
        raise InvalidModulus(f"{q} is not a prime power")
    p = fs[0]
    f, r = 0, q
    while r > 1:
        r //= p
        f += 1
    return p, f


def point_count_trace(m: int, q: int, bound: int = BRUTE_FORCE_BOUND) -> int:
    if q > bound:
        raise BoundExceeded(f"q={q} exceeds brute-force bound {bound}")
    p, f = _prime_power(q)
    if p == 2 or m % p == 0:
        raise InvalidModulus(f"q={q} is not coprime to 2m={2 * m}")
    F = get_field(p, f, max(bound, q))
    x = F.elements()
    y = F.sub_one(F.pow(x, m))
    return -int(F.quadratic_character(y).sum())


def legendre_table(p: int) -> np.ndarray:
    """chi_2 on 0..p-1 as int8."""
    tab = -np.ones(p, dtype=np.int8)
    i = np.arange(1, (p + 1) // 2, dtype=np.int64)
    tab[i * i % p] = 1
    tab[0] = 0
    return tab


def _h0_python(p: int, h: int, n: int) -> int:
    u = power_table(h, n, p)[1:]  # nontrivial d-th powers
    chi = legendre_table(p)
    return int(chi[(1 - u) % p].sum(dtype=np.int64))


if numba is not None:

    @numba.njit(cache=True)
    def _h0_jit(p, h, n):  # pragma: no cover - compiled
        # squares by running sums of odd numbers, no division
        tab = np.full(p, -1, dtype=np.int8)
        tab[0] = 0
        s = 0
        for i in range(1, (p + 1) // 2):
            s += 2 * i - 1
            if s >= p:
                s -= p
            tab[s] = 1
        acc = 0
        u = h
        for _ in range(1, n):
            acc += tab[p + 1 - u]  # 1 - u mod p, u != 1
            u = u * h % p
        return acc
else:  # pragma: no cover
    _h0_jit = None


def fast_trace(m: int, p: int, compiled: bool = True) -> int:
    if p == 2 or m % p == 0:
        raise InvalidModulus(f"p={p} is not coprime to 2m={2 * m}")
    d = math.gcd(m, p - 1)
    if d == 1:
        return 0
    g = primitive_root(p)
    n = (p - 1) // d
    h = pow(g, d, p)
    if compiled and _h0_jit is not None:
        h0 = int(_h0_jit(p, h, n))
    else:
        h0 = _h0_python(p, h, n)
    sign = 1 if p % 4 == 1 else -1  # chi_2(-1)
    return -sign * (d * h0 + 1)


def weil_bound_ok(t: int, m: int, q: int) -> bool:
    g = (m - 1) // 2
    return t * t <= 4 * g * g * q
