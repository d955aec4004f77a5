"""Sparse multivariate Laurent polynomials with integer coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPolynomial:
    """Immutable map exponent-vector -> nonzero integer coefficient."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping[tuple[int, ...], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], int] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars:
                raise ValueError(f"exponent {exp} has wrong length for {num_vars} variables")
            c = clean.get(exp, 0) + int(c)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self.num_vars = num_vars
        self.terms = clean

    @classmethod
    def constant(cls, num_vars: int, c: int = 1) -> "LaurentPolynomial":
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def monomial(cls, exponent, coeff: int = 1) -> "LaurentPolynomial":
        exponent = tuple(exponent)
        return cls(len(exponent), {exponent: coeff})

    @classmethod
    def variable(cls, i: int, num_vars: int, power: int = 1) -> "LaurentPolynomial":
        e = [0] * num_vars
        e[i] = power
        return cls(num_vars, {tuple(e): 1})

    def _check(self, other: "LaurentPolynomial"):
        if other.num_vars != self.num_vars:
            raise ValueError("variable count mismatch")

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(self.num_vars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(self.num_vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = LaurentPolynomial.constant(self.num_vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exponent) -> int:
        return self.terms.get(tuple(exponent), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.num_vars, 0)

    def invert_variables(self) -> "LaurentPolynomial":
        """f(z^-1)."""
        return LaurentPolynomial(self.num_vars, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def substitute_monomials(self, images) -> "LaurentPolynomial":
        """Apply the monomial map z_i -> z^{images[i]} (images: list of exponent vectors)."""
        k = len(images[0]) if images else 0
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms.items():
            img = [0] * k
            for ei, row in zip(e, images):
                if ei:
                    for j, x in enumerate(row):
                        img[j] += ei * x
            key = tuple(img)
            out[key] = out.get(key, 0) + c
        return LaurentPolynomial(k, out)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(f"z{i + 1}^{x}" if x != 1 else f"z{i + 1}" for i, x in enumerate(e) if x)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def constant_term_power(f: LaurentPolynomial, n: int) -> int:
    """Coefficient of z^0 in f^n.

    Splits n = a + b and pairs exponent e of f^a with -e of f^b, which needs
    only the two half powers.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    a = n // 2
    A = f ** a
    B = A if n - a == a else A * f
    total = 0
    for e, c in A.terms.items():
        d = B.terms.get(tuple(-x for x in e))
        if d:
            total += c * d
    return total


def constant_terms(f: LaurentPolynomial, max_n: int) -> list[int]:
    """[CT(f^0), CT(f^1), ..., CT(f^max_n)].

    Builds f^1 .. f^h (h = ceil(max_n / 2)) by repeated multiplication with
    the sparse f and pairs half powers as in :func:`constant_term_power`.
    Exponent vectors are packed into signed mixed-radix integers so that
    addition and negation act on single ints.
    """
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    h = (max_n + 1) // 2
    width = max((abs(x) for e in f.terms for x in e), default=0)
    base = 2 * h * width + 1
    weights = [base ** i for i in range(f.num_vars)]

    def pack(e):
        return sum(x * w for x, w in zip(e, weights))

    fp = {}
    for e, c in f.terms.items():
        k = pack(e)
        fp[k] = fp.get(k, 0) + c
    powers = [{0: 1}]
    for _ in range(h):
        prev, out = powers[-1], {}
        get = out.get
        for k1, c1 in prev.items():
            for k2, c2 in fp.items():
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        powers.append({k: c for k, c in out.items() if c})
    res = []
    for n in range(max_n + 1):
        a = n // 2
        A, B = powers[a], powers[n - a]
        res.append(sum(c * B.get(-k, 0) for k, c in A.items()))
    return res
