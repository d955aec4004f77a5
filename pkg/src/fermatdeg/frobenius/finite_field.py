"""Vectorised arithmetic in F_q, q = p^f.

Elements are integers 0 <= x < q whose base-p digits are the coefficients of
a polynomial in F_p[X] / (h), h a fixed monic irreducible of degree f.
Two independent tools live here: square-and-multiply powering on arrays
(used by the brute-force point counts) and discrete-log tables built from a
primitive element (used by the Jacobi sums).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import BoundExceeded
from .primes import prime_factors, primitive_root

DEFAULT_FIELD_BOUND = 10 ** 7


def _poly_mod(a: list[int], h: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    f = len(h) - 1
    for k in range(len(a) - 1, f - 1, -1):
        c = a[k]
        if c:
            for i in range(f + 1):
                a[k - f + i] = (a[k - f + i] - c * h[i]) % p
    return (a + [0] * f)[:f]


def _poly_mulmod(a, b, h, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, h, p)


def _poly_powmod(a, e, h, p):
    result = [1] + [0] * (len(h) - 2)
    while e:
        if e & 1:
            result = _poly_mulmod(result, a, h, p)
        a = _poly_mulmod(a, a, h, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(x):
        while x and x[-1] % p == 0:
            x = x[:-1]
        return x
    a, b = trim([x % p for x in a]), trim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % p
            a = trim(a)
        a, b = b, a
    return a


def is_irreducible(h: list[int], p: int) -> bool:
    """Rabin-style test: gcd(X^(p^i) - X, h) = 1 for i <= f/2."""
    f = len(h) - 1
    if f == 1:
        return True
    x = [0, 1] + [0] * (f - 2)
    power = x
    for i in range(1, f // 2 + 1):
        power = _poly_powmod(power, p, h, p)
        diff = list(power)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(list(h), diff, p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def conway_like_modulus(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree f (coefficients low to high)."""
    if f == 1:
        return (0, 1)
    n = 0
    while True:
        digits, k = [], n
        for _ in range(f):
            digits.append(k % p)
            k //= p
        n += 1
        h = digits + [1]
        if h[0] == 0:
            continue
        if is_irreducible(h, p):
            return tuple(h)


class FiniteField:
    def __init__(self, p: int, f: int = 1, bound: int = DEFAULT_FIELD_BOUND):
        q = p ** f
        if q > bound:
            raise BoundExceeded(f"field of size {q} exceeds bound {bound}")
        self.p, self.f, self.q = p, f, q
        self.modulus = conway_like_modulus(p, f)
        self._tables = None

    def __repr__(self):
        return f"GF({self.p}^{self.f})"

    # representation
    def to_digits(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        out = np.empty(x.shape + (self.f,), dtype=np.int64)
        for i in range(self.f):
            out[..., i] = x % self.p
            x = x // self.p
        return out

    def from_digits(self, d: np.ndarray) -> np.ndarray:
        out = np.zeros(d.shape[:-1], dtype=np.int64)
        for i in reversed(range(self.f)):
            out = out * self.p + d[..., i]
        return out

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def sub_one(self, x: np.ndarray) -> np.ndarray:
        """x - 1, elementwise."""
        x = np.asarray(x, dtype=np.int64)
        low = x % self.p
        return x - low + (low - 1) % self.p

    def one_minus(self, x: np.ndarray) -> np.ndarray:
        """1 - x, elementwise."""
        return self.neg(self.sub_one(x))

    def neg(self, x: np.ndarray) -> np.ndarray:
        d = self.to_digits(x)
        return self.from_digits((-d) % self.p)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p, f = self.p, self.f
        if f == 1:
            return np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64) % p
        da, db = self.to_digits(a), self.to_digits(b)
        da, db = np.broadcast_arrays(da, db)
        conv = np.zeros(da.shape[:-1] + (2 * f - 1,), dtype=np.int64)
        for i in range(f):
            for j in range(f):
                conv[..., i + j] += da[..., i] * db[..., j]
        conv %= p
        h = self.modulus
        for k in range(2 * f - 2, f - 1, -1):
            c = conv[..., k].copy()
            for i in range(f + 1):
                conv[..., k - f + i] = (conv[..., k - f + i] - c * h[i]) % p
        return self.from_digits(conv[..., :f])

    def pow(self, x: np.ndarray, e: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        result = np.ones_like(x)
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def quadratic_character(self, y: np.ndarray) -> np.ndarray:
        """chi_2(y) in {-1, 0, 1} by Euler's criterion."""
        y = np.asarray(y, dtype=np.int64)
        e = self.pow(y, (self.q - 1) // 2)
        out = np.where(e == 1, 1, -1)
        return np.where(y == 0, 0, out)

    # discrete logs
    def primitive_element(self) -> int:
        if self.f == 1:
            return primitive_root(self.p)
        qs = prime_factors(self.q - 1)
        for g in range(self.p, self.q):
            arr = np.array([g], dtype=np.int64)
            if all(self.pow(arr, (self.q - 1) // r)[0] != 1 for r in qs):
                return g
        raise ArithmeticError("no primitive element found")

    def log_tables(self) -> tuple[int, np.ndarray, np.ndarray]:
        """(generator, exp, log) with exp[k] = G^k and log[exp[k]] = k; log[0] = -1."""
        if self._tables is None:
            G = self.primitive_element()
            n = self.q - 1
            if self.f == 1:
                from .primes import power_table
                exp = power_table(G, n, self.p)
            else:
                B = max(1, int(np.ceil(np.sqrt(n))))
                small = np.empty(B, dtype=np.int64)
                small[0] = 1
                g_arr = np.array([G], dtype=np.int64)
                for i in range(1, B):
                    small[i] = self.mul(small[i - 1:i], g_arr)[0]
                step = self.pow(g_arr, B)
                nb = (n + B - 1) // B
                big = np.empty(nb, dtype=np.int64)
                big[0] = 1
                for i in range(1, nb):
                    big[i] = self.mul(big[i - 1:i], step)[0]
                exp = self.mul(big[:, None], small[None, :]).ravel()[:n]
            log = np.full(self.q, -1, dtype=np.int64)
            log[exp] = np.arange(n, dtype=np.int64)
            if (log[1:] < 0).any():
                raise ArithmeticError("exp table is not a permutation; generator check failed")
            self._tables = (G, exp, log)
        return self._tables


@lru_cache(maxsize=64)
def get_field(p: int, f: int = 1, bound: int = DEFAULT_FIELD_BOUND) -> FiniteField:
    return FiniteField(p, f, bound)
