"""Prime sweeps: trace tables, numerical a_1-moments and split densities.

Work is split into disjoint prime ranges which may run in a process pool;
results are merged in ascending range order so the output never depends on
scheduling.  Moments are correctly rounded sums (math.fsum) over primes in
ascending order, so they are reproducible bit for bit.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from ..cache import TraceCache
from ..errors import BoundExceeded
from .primes import prime_sieve
from .stickelberger import torsion_free_test
from .traces import fast_trace, weil_bound_ok

SWEEP_CEILING = 2 ** 28
CHARACTER_CONVENTION = "chi(g^k) = zeta_n^k, g the smallest primitive root mod p"
DEFAULT_PARTITION = 2 ** 16


class Selector(str, enum.Enum):
    ALL = "ALL"
    CONGRUENT_1_MOD_M = "CONGRUENT_1_MOD_M"
    TORSION_FREE = "TORSION_FREE"


def good_primes(m: int, bound: int, lo: int = 3) -> list[int]:
    return [int(p) for p in prime_sieve(bound) if p >= lo and m % p]


def _ranges(bound: int, partition: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + partition, bound)) for lo in range(0, bound, partition)]


def _trace_range(args) -> list[tuple[int, int]]:
    m, primes = args
    out = []
    for p in primes:
        t = fast_trace(m, p)
        if not weil_bound_ok(t, m, p):
            raise ArithmeticError(f"Weil bound violated at p={p}: t={t}")
        out.append((p, t))
    return out


def _torsion_range(args) -> list[tuple[int, bool, tuple | None]]:
    m, primes = args
    out = []
    for p in primes:
        r = torsion_free_test(m, p)
        out.append((p, r.torsion_free, r.witness_relation))
    return out


def _run(func: Callable, chunks: list, workers: int) -> list:
    if workers <= 1 or len(chunks) <= 1:
        return [func(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, chunks))


def _chunked(m: int, primes: list[int], bound: int, partition: int) -> list[tuple[int, list[int]]]:
    chunks = []
    pending = list(primes)
    idx = 0
    for lo, hi in _ranges(bound, partition):
        start = idx
        while idx < len(pending) and pending[idx] < hi:
            idx += 1
        if idx > start:
            chunks.append((m, pending[start:idx]))
    return chunks


def trace_sweep(m: int, bound: int, workers: int = 1, partition: int = DEFAULT_PARTITION,
                cache: TraceCache | None = None) -> dict[int, int]:
    """t_p for all good primes p < bound, reusing and extending ``cache``."""
    if bound > SWEEP_CEILING:
        raise BoundExceeded(f"bound {bound} exceeds sweep ceiling {SWEEP_CEILING}")
    primes = good_primes(m, bound)
    todo = [p for p in primes if cache is None or p not in cache]
    fresh: dict[int, int] = {}
    for part in _run(_trace_range, _chunked(m, todo, bound, partition), workers):
        fresh.update(part)
    if cache is not None:
        cache.update(fresh)
        return {p: cache.entries[p] for p in primes}
    return {p: fresh[p] for p in primes}


@dataclass(frozen=True)
class NumericalMomentReport:
    m: int
    bound: int
    selector: Selector
    count: int
    moments: tuple[tuple[int, float], ...]
    note: str = ""

    def value(self, n: int) -> float:
        return dict(self.moments)[n]

    def to_dict(self) -> dict:
        out = {"m": self.m, "bound": self.bound, "selector": self.selector.value,
               "primes": self.count, "moments": {str(n): v for n, v in self.moments}}
        if self.note:
            out["note"] = self.note
        return out


def torsion_free_primes(m: int, bound: int, workers: int = 1,
                        partition: int = DEFAULT_PARTITION) -> list[tuple[int, bool, tuple | None]]:
    primes = [p for p in good_primes(m, bound) if p % m == 1]
    out = []
    for part in _run(_torsion_range, _chunked(m, primes, bound, partition), workers):
        out.extend(part)
    return out


def normalized_power(t: int, p: int, n: int) -> float:
    """(t / sqrt(p))^n, exactly rounded for even n."""
    if n % 2 == 0:
        return float(Fraction(t ** n, p ** (n // 2)))
    return float(Fraction(t ** n, p ** (n // 2))) / math.sqrt(p)


def numerical_moments(m: int, bound: int, selector: Selector | str = Selector.ALL, max_n: int = 12,
                      workers: int = 1, partition: int = DEFAULT_PARTITION,
                      cache: TraceCache | None = None) -> NumericalMomentReport:
    selector = Selector(selector)
    if max_n > 12:
        raise BoundExceeded("moments are supported up to n = 12")
    traces = trace_sweep(m, bound, workers, partition, cache)
    note = ""
    if selector is Selector.ALL:
        chosen = list(traces)
    elif selector is Selector.CONGRUENT_1_MOD_M:
        chosen = [p for p in traces if p % m == 1]
    else:
        flags = torsion_free_primes(m, bound, workers, partition)
        chosen = [p for p, ok, _ in flags if ok]
        note = "torsion-free split primes; stand-in for the connectedness field L"
    count = len(chosen)
    moments = []
    for n in range(max_n + 1):
        s = math.fsum(normalized_power(traces[p], p, n) for p in chosen)
        moments.append((n, s / count if count else float("nan")))
    return NumericalMomentReport(m, bound, selector, count, tuple(moments), note)


@dataclass(frozen=True)
class SplitDensityReport:
    m: int
    bound: int
    split_primes: int
    torsion_free: int
    witnesses: tuple[tuple[int, tuple[int, ...]], ...] = ()

    @property
    def fraction(self) -> float:
        return self.torsion_free / self.split_primes if self.split_primes else float("nan")

    def to_dict(self) -> dict:
        return {"m": self.m, "bound": self.bound, "splitPrimes": self.split_primes,
                "torsionFree": self.torsion_free, "fraction": self.fraction,
                "witnessCount": len(self.witnesses), "characterConvention": CHARACTER_CONVENTION}


def split_density(m: int, bound: int, workers: int = 1, partition: int = DEFAULT_PARTITION) -> SplitDensityReport:
    rows = torsion_free_primes(m, bound, workers, partition)
    wit = tuple((p, w) for p, ok, w in rows if not ok)
    return SplitDensityReport(m, bound, len(rows), sum(1 for _, ok, _ in rows if ok), wit)
