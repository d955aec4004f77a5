"""End-to-end analysis of one curve y^2 = x^m - 1.

``analyze`` runs the stages in order (decomposition, projections, Hodge
census and torus, exact moments, optionally a prime sweep), records a list
of consistency checks and returns a :class:`DegeneracyReport`.  The JSON
form has sorted keys and no timing data, so equal configs give identical
bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import reference as ref
from .cache import TraceCache, default_cache_path
from .cm import decompose_jacobian, factorize
from .errors import InvalidModulus
from .frobenius.sweep import DEFAULT_PARTITION, Selector, numerical_moments, split_density
from .hodge import exceptional_census, hodge_torus, quotient_dim_linear, relation_lattice_of
from .moments import ComponentRep, MomentReport, gamma_j9, group_moments, identity_moments
from .mt import build_projection_matrix, classify_projection, mt_rank, standard_targets

FORMAT_VERSION = "1"

EXIT_CODES = {
    "algebra": 10,
    "cm": 11,
    "mt": 12,
    "hodge": 13,
    "moments": 14,
    "frobenius": 15,
    "cache": 16,
    "core": 17,
}


@dataclass(frozen=True)
class AnalysisConfig:
    m: int
    prime_bound: int | None = None
    max_moment: int = 12
    moment_tolerance_percent: Fraction = Fraction(2)
    cache_path: Path | None = None
    selector: Selector = Selector.ALL
    split_density: bool = False
    workers: int = 1
    partition: int = DEFAULT_PARTITION
    gamma: ComponentRep | None = None

    def __post_init__(self):
        if self.m < 3:
            raise InvalidModulus(f"m={self.m} must be at least 3")
        if self.prime_bound is not None and self.prime_bound < 100:
            raise ValueError("primeBound must be at least 100")
        if not 0 <= self.max_moment <= 12:
            raise ValueError("maxMoment must lie in 0..12")
        if self.moment_tolerance_percent <= 0:
            raise ValueError("tolerance must be positive")
        object.__setattr__(self, "selector", Selector(self.selector))
        object.__setattr__(self, "moment_tolerance_percent", Fraction(self.moment_tolerance_percent))


@dataclass(frozen=True)
class Check:
    module: str
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"module": self.module, "name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class DegeneracyReport:
    m: int
    base_m: int
    ledger: dict
    verdicts: list[dict]
    mt_rank: int
    census: list[tuple[int, int, int]]
    torus: dict
    exact_moments: list[dict]
    numerical_moments: dict | None = None
    split_density: dict | None = None
    checks: list[Check] = field(default_factory=list)
    format_version: str = FORMAT_VERSION

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def exit_code(self) -> int:
        for c in self.checks:
            if not c.passed:
                return EXIT_CODES.get(c.module, EXIT_CODES["core"])
        return 0

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "formatVersion": self.format_version,
            "m": self.m,
            "ledger": self.ledger,
            "verdicts": self.verdicts,
            "mtRank": self.mt_rank,
            "hodgeCensus": [{"d": d, "exceptional": e, "quotientDim": q} for d, e, q in self.census],
            "torus": self.torus,
            "exactMoments": self.exact_moments,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.base_m != self.m:
            out["baseM"] = self.base_m
        if self.numerical_moments is not None:
            out["numericalMoments"] = self.numerical_moments
        if self.split_density is not None:
            out["splitDensity"] = self.split_density
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        return render_table(self)


def _moment_block(rep: MomentReport, label: str) -> dict:
    d = rep.to_dict()
    d["group"] = label
    return d


def _fixture(checks: list, module: str, name: str, got, want):
    checks.append(Check(module, name, got == want, "" if got == want else f"got {got}, expected {want}"))


def analyze(config: AnalysisConfig) -> DegeneracyReport:
    m = config.m
    ledger = decompose_jacobian(m)
    base = m // ledger.multiplicity
    copies = ledger.multiplicity
    checks: list[Check] = []

    P = build_projection_matrix(base)
    verdicts = []
    for target in standard_targets(P):
        v = classify_projection(P, target)
        verdicts.append({"target": list(target), "verdict": v.describe(), "method": v.method})
    rank = mt_rank(P)

    census = exceptional_census(base)
    T = hodge_torus(base)
    if copies > 1:
        T = T.diagonal_power(copies)
    # rebuild the parametrization from the lattice as an independent check
    rel = relation_lattice_of(T.parametrization)
    checks.append(Check("hodge", "torus lattice round trip", rel == T.relation_lattice))
    checks.append(Check("hodge", "freeRank + 1 = mt rank", T.free_rank + 1 == rank,
                        f"freeRank={T.free_rank}, mtRank={rank}"))
    composite = len(factorize(base)) > 1 or max(factorize(base).values()) > 1
    if composite:
        n_exc = sum(e for _, e, _ in census)
        checks.append(Check("hodge", "nonempty exceptional census", n_exc > 0, f"{n_exc} exceptional"))

    exact = [_moment_block(identity_moments(T, config.max_moment, m=m), "identity component")]
    gamma = config.gamma
    if gamma is None and m == 9:
        gamma = gamma_j9()
    full = None
    if gamma is not None:
        note = "conjectural model moments" if config.gamma is None else "user-supplied component representative"
        full = group_moments(T, gamma, config.max_moment, m=m, note=note)
        exact.append(_moment_block(full, f"full group, {gamma.order} powers of gamma"))

    _reference_fixtures(checks, m, verdicts, census, T, exact)

    numerical = None
    density = None
    if config.prime_bound is not None:
        cache = TraceCache.load(config.cache_path or default_cache_path(m), m=m) if m % 2 else None
        if m % 2:
            nm = numerical_moments(m, config.prime_bound, config.selector, config.max_moment,
                                   config.workers, config.partition, cache)
            numerical = nm.to_dict()
            _numerical_checks(checks, config, nm, exact, full)
        if config.split_density and m % 2:
            density = split_density(m, config.prime_bound, config.workers, config.partition).to_dict()

    ledger_d = {"genus": ledger.genus, "multiplicity": ledger.multiplicity,
                "factors": [{"label": f.label, "dimension": f.dimension, "cmField": f"Q(zeta_{f.cm_modulus})"}
                            for f in ledger.factors]}
    torus_d = T.to_dict()
    return DegeneracyReport(m, base, ledger_d, verdicts, rank, census, torus_d, exact, numerical, density, checks)


def _reference_fixtures(checks, m, verdicts, census, T, exact):
    got = {tuple(v["target"]): v["verdict"] for v in verdicts}
    for target, want in ref.VERDICTS.get(m, {}).items():
        _fixture(checks, "mt", f"verdict {'+'.join(target)}", got.get(target), want)
    if m in ref.EXCEPTIONAL_CODIM2:
        _fixture(checks, "hodge", "exceptional codim-2 cycles", census[1][1], ref.EXCEPTIONAL_CODIM2[m])
    if m == 9:
        _fixture(checks, "hodge", "no exceptional cycles outside codim 2",
                 [d for d, e, _ in census if e and d != 2], [])
    if m == 15:
        _fixture(checks, "hodge", "B^3 = B^1 B^2", quotient_dim_linear(15, 3), 0)
    if m in ref.TORUS_RANKS:
        _fixture(checks, "hodge", "torus rank", T.free_rank, ref.TORUS_RANKS[m])
        want = relation_lattice_of(ref.parse_torus_entries(ref.TORI[m]))
        _fixture(checks, "hodge", "torus lattice", T.relation_lattice, want)
    ident = [v for n, v in sorted((int(k), v) for k, v in exact[0]["moments"].items()) if n % 2 == 0 and n > 0]
    tables = {9: ref.TABLE_1, 15: ref.TABLE_4, 18: ref.TABLE_3}
    if m in tables:
        n = min(len(ident), len(tables[m]))
        _fixture(checks, "moments", "identity moments", ident[:n], list(tables[m][:n]))
    if m == 9 and len(exact) > 1:
        full = [v for n, v in sorted((int(k), v) for k, v in exact[1]["moments"].items()) if n % 2 == 0 and n > 0]
        n = min(len(full), len(ref.TABLE_2))
        _fixture(checks, "moments", "full group moments", full[:n], list(ref.TABLE_2[:n]))


def _numerical_checks(checks, config, nm, exact, full):
    # ALL compares with the full group; the other selectors see the identity component
    if nm.selector is Selector.ALL:
        if full is None:
            return
        vals = {n: Fraction(v) for n, v in full.moments}
    else:
        vals = {int(k): Fraction(v) for k, v in exact[0]["moments"].items()}
    tol = float(config.moment_tolerance_percent) / 100
    for n in range(2, config.max_moment + 1, 2):
        if n not in vals or vals[n] == 0:
            continue
        got, want = nm.value(n), float(vals[n])
        ok = abs(got - want) <= tol * want
        checks.append(Check("frobenius", f"numerical M{n}", ok, f"{got:.6g} vs {want:g}"))
    for n in range(3, config.max_moment, 2):
        if n - 1 in vals and n + 1 in vals:
            band = odd_moment_band(float(vals[n - 1]), float(vals[n + 1]))
            got = nm.value(n)
            checks.append(Check("frobenius", f"numerical M{n} near zero", abs(got) <= band,
                                f"|{got:.4g}| vs band {band:.4g}"))


ODD_BAND_FACTOR = 0.02


def odd_moment_band(m_below: float, m_above: float, factor: float = ODD_BAND_FACTOR) -> float:
    """Allowed |M_n| for odd n: factor times the geometric mean of its even neighbours."""
    return factor * math.sqrt(m_below * m_above)


def _rows_to_text(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    out.extend(fmt.format(*r) for r in rows)
    return [line.rstrip() for line in out]


def render_table(r: DegeneracyReport) -> str:
    lines = [f"y^2 = x^{r.m} - 1   genus {r.ledger['genus']}   report format {r.format_version}", ""]
    lines += _rows_to_text(["factor", "dim", "CM field"],
                           [[f["label"], str(f["dimension"]), f["cmField"]] for f in r.ledger["factors"]])
    lines.append("")
    lines += _rows_to_text(["target", "verdict"], [["+".join(v["target"]), v["verdict"]] for v in r.verdicts])
    lines.append(f"mt rank {r.mt_rank}")
    lines.append("")
    lines += _rows_to_text(["d", "exceptional", "quotientDim"],
                           [[str(d), str(e), str(q)] for d, e, q in r.census])
    lines.append("")
    lines.append(f"torus rank {r.torus['freeRank']}: diag(" + ", ".join(r.torus["entries"]) + ")")
    for block in r.exact_moments:
        lines.append("")
        ks = [k for k in sorted(block["moments"], key=int) if int(k) % 2 == 0 and int(k) > 0]
        lines.append(block["group"])
        lines += _rows_to_text([f"M{k}" for k in ks], [[str(block["moments"][k]) for k in ks]])
    if r.numerical_moments:
        nm = r.numerical_moments
        lines.append("")
        lines.append(f"a1 moments, {nm['selector']}, p < {nm['bound']} ({nm['primes']} primes)")
        ks = [k for k in sorted(nm["moments"], key=int) if int(k) > 0]
        lines += _rows_to_text([f"M{k}" for k in ks], [[f"{nm['moments'][k]:.6g}" for k in ks]])
    if r.split_density:
        sd = r.split_density
        lines.append("")
        lines.append(f"torsion-free split primes: {sd['torsionFree']}/{sd['splitPrimes']} = {sd['fraction']:.4f}")
    lines.append("")
    for c in r.checks:
        lines.append(f"[{'ok' if c.passed else 'FAIL'}] {c.module}: {c.name}" + (f" ({c.detail})" if c.detail else ""))
    return "\n".join(lines) + "\n"
