"""Prime sieving and primitive roots."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def prime_sieve(n: int) -> np.ndarray:
    """All primes < n as an int64 array."""
    if n < 3:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for k in range(3, int(n ** 0.5) + 1, 2):
        if flags[k]:
            flags[k * k::2 * k] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p < hi."""
    return [int(p) for p in prime_sieve(hi) if p >= lo]


def prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1 if k == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return prime_factors(n) == [n]


@lru_cache(maxsize=4096)
def primitive_root(p: int) -> int:
    """Smallest generator of (Z/pZ)^x."""
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


def multiplicative_order(a: int, n: int) -> int:
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def power_table(base: int, count: int, p: int) -> np.ndarray:
    """[base^0, ..., base^(count-1)] mod p, vectorised in sqrt-sized blocks (p < 2^31)."""
    if count <= 0:
        return np.zeros(0, dtype=np.int64)
    B = max(1, int(np.ceil(np.sqrt(count))))
    small = np.empty(B, dtype=np.int64)
    small[0] = 1
    for i in range(1, B):
        small[i] = small[i - 1] * base % p
    step = pow(base, B, p)
    nb = (count + B - 1) // B
    big = np.empty(nb, dtype=np.int64)
    big[0] = 1
    for i in range(1, nb):
        big[i] = big[i - 1] * step % p
    return (big[:, None] * small[None, :] % p).ravel()[:count]
