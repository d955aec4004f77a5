"""Mumford-Tate projection matrices and the isomorphism / isogeny test.

The matrix M has one row per tau_j in (Z/mZ)^x and one block of columns per
simple factor; the column for the character sigma_b of Q(zeta_d) has a one in
row j exactly when j mod d lies in Phi_d^* b.

A projection onto the factors in ``target`` is classified through

    Z^n / (T_target + ker M)  ~=  M(Z^n) / M(T_target),

so the verdict depends only on the column lattices of M and of the target
blocks.  Three interchangeable routes compute it:

* ``kernel``     : the literal construction, integer kernel + coordinate lattice,
                   pure Python; used for small matrices.
* ``column``     : column lattices via FLINT's exact HNF.
* ``group-ring`` : for m = p^k the unit group is cyclic and every block's
                   column lattice is a principal ideal of Z[C_n]; ideal
                   membership reduces to polynomial arithmetic.  Only decides
                   ISOMORPHISM / NEITHER; other outcomes defer to ``column``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .algebra.intmat import IntegerMatrix
from .algebra.lattice import INFINITE, Lattice, integer_kernel, lattice_sum, sublattice_index
from .cm import DecompositionLedger, GaloisData, decompose_jacobian, factorize, prym_cm_type, reflex_type, units
from .errors import LedgerMismatch

# Above this many columns the pure-Python kernel route is slow.
KERNEL_ROUTE_MAX_COLS = 90


class VerdictKind(str, enum.Enum):
    ISOMORPHISM = "ISOMORPHISM"
    ISOGENY = "ISOGENY"
    NEITHER = "NEITHER"


@dataclass(frozen=True)
class ProjectionVerdict:
    target: tuple[str, ...]
    kind: VerdictKind
    degree: int | None = None
    method: str = ""

    def __post_init__(self):
        if self.kind is VerdictKind.ISOGENY and (self.degree is None or self.degree < 2):
            raise ValueError("an isogeny verdict needs degree >= 2")

    def describe(self) -> str:
        if self.kind is VerdictKind.ISOGENY:
            return f"ISOGENY({self.degree})"
        return self.kind.value

    def to_dict(self) -> dict:
        return {"target": list(self.target), "kind": self.kind.value, "degree": self.degree}


@dataclass(frozen=True)
class ProjectionMatrix:
    m: int
    labels: tuple[str, ...]
    moduli: tuple[int, ...]
    blocks: tuple[IntegerMatrix, ...]
    column_spans: tuple[tuple[int, int], ...]
    row_labels: tuple[int, ...]

    @property
    def matrix(self) -> IntegerMatrix:
        return self.blocks[0].hstack(*self.blocks[1:])

    @property
    def ncols(self) -> int:
        return self.column_spans[-1][1]

    def block(self, label: str) -> IntegerMatrix:
        return self.blocks[self.labels.index(label)]

    def column_labels(self, label: str) -> tuple[int, ...]:
        return units(self.moduli[self.labels.index(label)])

    def target_columns(self, target: Iterable[str]) -> list[int]:
        cols = []
        for lab in target:
            if lab not in self.labels:
                raise LedgerMismatch(f"unknown factor {lab!r}; ledger has {list(self.labels)}")
            a, b = self.column_spans[self.labels.index(lab)]
            cols.extend(range(a, b))
        return sorted(cols)

    def reorder(self, order: Sequence[str]) -> "ProjectionMatrix":
        """Same data with blocks permuted."""
        idx = [self.labels.index(lab) for lab in order]
        blocks = tuple(self.blocks[i] for i in idx)
        spans, off = [], 0
        for b in blocks:
            spans.append((off, off + b.ncols))
            off += b.ncols
        return ProjectionMatrix(self.m, tuple(order), tuple(self.moduli[i] for i in idx), blocks,
                                tuple(spans), self.row_labels)


def _block_rows(m: int, d: int) -> list[list[int]]:
    phi_star = reflex_type(prym_cm_type(d)).members if d >= 3 else frozenset({0})
    cols = units(d)
    rows = []
    for j in units(m):
        jd = j % d
        rows.append([1 if (jd * pow(b, -1, d)) % d in phi_star else 0 for b in cols])
    return rows


def build_projection_matrix(m: int, ledger: DecompositionLedger | None = None) -> ProjectionMatrix:
    ledger = decompose_jacobian(m) if ledger is None else ledger
    if ledger.multiplicity != 1 or ledger.m != m:
        raise LedgerMismatch("projection matrices are defined for odd m with its own ledger")
    G = GaloisData(m)
    moduli = [f.cm_modulus for f in ledger.factors]
    if len(set(moduli)) != len(moduli):
        raise LedgerMismatch("factor CM moduli must be pairwise distinct")
    blocks, spans, off = [], [], 0
    for f in ledger.factors:
        if m % f.cm_modulus:
            raise LedgerMismatch(f"factor {f.label}: {f.cm_modulus} does not divide {m}")
        B = IntegerMatrix.from_rows(_block_rows(m, f.cm_modulus), len(units(f.cm_modulus)))
        blocks.append(B)
        spans.append((off, off + B.ncols))
        off += B.ncols
    return ProjectionMatrix(m, tuple(ledger.labels()), tuple(moduli), tuple(blocks), tuple(spans),
                            G.units)


def _verdict(target, index, method) -> ProjectionVerdict:
    target = tuple(target)
    if index == INFINITE:
        return ProjectionVerdict(target, VerdictKind.NEITHER, None, method)
    if index == 1:
        return ProjectionVerdict(target, VerdictKind.ISOMORPHISM, 1, method)
    return ProjectionVerdict(target, VerdictKind.ISOGENY, int(index), method)


def projection_index_kernel(P: ProjectionMatrix, target: Iterable[str]) -> int | float:
    """[Z^n : T_target + ker M] by the literal lattice construction."""
    n = P.ncols
    L = lattice_sum(Lattice.coordinate(n, P.target_columns(target)), integer_kernel(P.matrix))
    return sublattice_index(L, Lattice.full(n))


def _flint_col_hnf(M: IntegerMatrix, cols: Sequence[int]):
    import flint
    rows = [[M[i, j] for i in range(M.nrows)] for j in cols]
    H = flint.fmpz_mat(rows).hnf()
    out = []
    for i in range(H.nrows()):
        r = [int(H[i, j]) for j in range(H.ncols())]
        if any(r):
            out.append(r)
    return out


def projection_index_column(P: ProjectionMatrix, target: Iterable[str]) -> int | float:
    """[M(Z^n) : M(T_target)] through FLINT HNF of the column lattices."""
    import flint
    M = P.matrix
    all_basis = _flint_col_hnf(M, range(M.ncols))
    tgt_basis = _flint_col_hnf(M, P.target_columns(target))
    if len(tgt_basis) < len(all_basis):
        return INFINITE
    pivots = [next(j for j, x in enumerate(r) if x) for r in all_basis]
    cov_all = math.prod(r[p] for r, p in zip(all_basis, pivots))
    sub = flint.fmpz_mat([[r[p] for p in pivots] for r in tgt_basis])
    cov_t = abs(int(sub.det()))
    q, rem = divmod(cov_t, cov_all)
    if rem:
        raise ArithmeticError("target column lattice is not contained in the full one")
    return q


def _cyclic_setup(m: int):
    fac = factorize(m)
    if len(fac) != 1:
        return None
    (p, _), = fac.items()
    if p == 2:
        return None
    n = len(units(m))
    g = next(a for a in range(2, m) if math.gcd(a, m) == 1 and _order(a, m) == n)
    logs = {}
    x = 1
    for k in range(n):
        logs[x] = k
        x = x * g % m
    return n, logs


def _order(a: int, m: int) -> int:
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


def _generator_poly(m: int, d: int, n: int, logs: dict[int, int]):
    """Column lattice generator of block d in Z[x]/(x^n - 1)."""
    import flint
    phi_star = reflex_type(prym_cm_type(d)).members if d >= 3 else frozenset({0})
    c = [0] * n
    for j, k in logs.items():
        if j % d in phi_star:
            c[k] = 1
    return flint.fmpz_poly(c)


def projection_group_ring(P: ProjectionMatrix, target: Sequence[str]) -> VerdictKind | None:
    """ISOMORPHISM / NEITHER for a single full-field target when m = p^k, else None."""
    import flint
    target = list(target)
    if len(target) != 1 or P.moduli[P.labels.index(target[0])] != P.m:
        return None
    setup = _cyclic_setup(P.m)
    if setup is None:
        return None
    n, logs = setup
    xn1 = flint.fmpz_poly([-1] + [0] * (n - 1) + [1])
    theta = _generator_poly(P.m, P.m, n, logs)
    F = theta.gcd(xn1)
    Q = xn1 // F
    theta_red = theta // F
    Qq = flint.fmpq_poly(Q.coeffs())
    g, s, _ = flint.fmpq_poly(theta_red.coeffs()).xgcd(Qq)
    if g.degree() != 0:
        return None
    s = s / g
    integral = True
    for d in P.moduli:
        if d == P.m:
            continue
        eta = _generator_poly(P.m, d, n, logs)
        if eta % F != 0:
            return VerdictKind.NEITHER
        xi = (flint.fmpq_poly((eta // F).coeffs()) * s) % Qq
        if xi.denom() != 1:
            integral = False
    return VerdictKind.ISOMORPHISM if integral else None


def classify_projection(P: ProjectionMatrix, target: Iterable[str], method: str = "auto") -> ProjectionVerdict:
    target = tuple(target)
    if not target:
        raise ValueError("target must be nonempty")
    P.target_columns(target)  # validates labels
    if method == "auto":
        if P.ncols <= KERNEL_ROUTE_MAX_COLS:
            method = "kernel"
        else:
            kind = projection_group_ring(P, target)
            if kind is not None:
                return ProjectionVerdict(target, kind, 1 if kind is VerdictKind.ISOMORPHISM else None,
                                         "group-ring")
            method = "column"
    if method == "kernel":
        return _verdict(target, projection_index_kernel(P, target), "kernel")
    if method == "column":
        return _verdict(target, projection_index_column(P, target), "column")
    if method == "group-ring":
        kind = projection_group_ring(P, target)
        if kind is None:
            raise ValueError("group-ring route does not apply or cannot decide this projection")
        return ProjectionVerdict(target, kind, 1 if kind is VerdictKind.ISOMORPHISM else None, "group-ring")
    raise ValueError(f"unknown method {method!r}")


def mt_rank(P: ProjectionMatrix) -> int:
    if P.ncols <= KERNEL_ROUTE_MAX_COLS:
        return P.ncols - integer_kernel(P.matrix).rank
    import flint
    M = P.matrix
    return flint.fmpz_mat(M.tolist()).rank()


def standard_targets(P: ProjectionMatrix) -> list[tuple[str, ...]]:
    """Every factor subset of size <= 2, plus the full set."""
    out = []
    for k in (1, 2):
        out.extend(combinations(P.labels, k))
    if tuple(P.labels) not in out:
        out.append(tuple(P.labels))
    return out
