"""Command-line front end.

Every subcommand prints JSON (default, stable key order) or an aligned text
table with ``--table``.  Module errors exit with the module's code from
:data:`fermatdeg.report.EXIT_CODES`; ``analyze`` also exits nonzero when a
consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cache import TraceCache, cache_merge, default_cache_path
from .cm import decompose_jacobian, is_primitive, prym_cm_type, reflex_type, stabilizer
from .errors import FermatError
from .frobenius.sweep import DEFAULT_PARTITION, Selector, numerical_moments, split_density, trace_sweep
from .hodge import enumerate_hodge_cycles, exceptional_census, hodge_torus
from .moments import ComponentRep, gamma_j9, group_moments, identity_moments
from .mt import build_projection_matrix, classify_projection, mt_rank, standard_targets
from .report import EXIT_CODES, AnalysisConfig, analyze


def _emit(args, payload: dict, table: str):
    text = table if args.table else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _grid(headers, rows) -> str:
    rows = [[str(x) for x in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*r) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _cache_for(args, m: int) -> TraceCache | None:
    if getattr(args, "no_cache", False):
        return None
    return TraceCache.load(args.cache or default_cache_path(m), m=m)


def _load_gamma(args) -> ComponentRep | None:
    if getattr(args, "gamma_file", None):
        return ComponentRep.from_json(Path(args.gamma_file).read_text())
    if getattr(args, "with_gamma", False):
        if args.m != 9:
            raise SystemExit("--with-gamma has a built-in representative only for m = 9; use --gamma-file")
        return gamma_j9()
    return None


def cmd_analyze(args) -> int:
    cfg = AnalysisConfig(args.m, args.bound, args.max_moment, Fraction(args.tolerance),
                         Path(args.cache) if args.cache else None, Selector(args.selector),
                         args.split_density, args.workers, args.partition, _load_gamma(args))
    rep = analyze(cfg)
    _emit(args, rep.to_dict(), rep.to_table())
    code = rep.exit_code()
    if code:
        for c in rep.checks:
            if not c.passed:
                print(f"[{c.module}] check failed: {c.name} {c.detail}", file=sys.stderr)
    return code


def cmd_cm(args) -> int:
    ledger = decompose_jacobian(args.m)
    payload = {"m": args.m, "genus": ledger.genus, "multiplicity": ledger.multiplicity, "factors": []}
    rows = []
    for f in ledger.factors:
        phi = prym_cm_type(f.cm_modulus)
        entry = {"label": f.label, "dimension": f.dimension, "cmModulus": f.cm_modulus,
                 "cmType": sorted(phi.members), "reflexType": sorted(reflex_type(phi).members),
                 "stabilizer": stabilizer(phi), "primitive": is_primitive(phi)}
        payload["factors"].append(entry)
        rows.append([f.label, f.dimension, f"Q(zeta_{f.cm_modulus})", entry["cmType"], entry["reflexType"]])
    table = f"m={args.m} genus {ledger.genus} (x{ledger.multiplicity})\n" + _grid(
        ["factor", "dim", "CM field", "CM type", "reflex"], rows)
    _emit(args, payload, table)
    return 0


def cmd_mt(args) -> int:
    P = build_projection_matrix(args.m)
    targets = [tuple(args.target.split(","))] if args.target else standard_targets(P)
    verdicts = [classify_projection(P, t, args.method) for t in targets]
    payload = {"m": args.m, "labels": list(P.labels), "mtRank": mt_rank(P),
               "verdicts": [{"target": list(v.target), "verdict": v.describe(), "method": v.method}
                            for v in verdicts]}
    table = _grid(["target", "verdict", "method"], [["+".join(v.target), v.describe(), v.method] for v in verdicts])
    if args.matrix:
        payload["rowLabels"] = list(P.row_labels)
        payload["matrix"] = P.matrix.tolist()
        table = "\n".join(" ".join(str(x) for x in r) for r in P.matrix.tolist()) + "\n\n" + table
    _emit(args, payload, table)
    return 0


def cmd_hodge(args) -> int:
    payload: dict = {"m": args.m}
    parts = []
    if args.codim is not None:
        rep = enumerate_hodge_cycles(args.m, args.codim)
        payload["codim"] = rep.to_dict(include_monomials=True)
        parts.append(f"codim {args.codim}: {len(rep.all)} Hodge monomials, {len(rep.exceptional)} exceptional, "
                     f"quotientDim {rep.quotient_dim}\n" + "".join(f"  {x}\n" for x in rep.exceptional))
    else:
        census = exceptional_census(args.m)
        payload["census"] = [{"d": d, "exceptional": e, "quotientDim": q} for d, e, q in census]
        parts.append(_grid(["d", "exceptional", "quotientDim"], census))
    if args.embedding:
        T = hodge_torus(args.m)
        payload["torus"] = T.to_dict()
        parts.append(f"torus rank {T.free_rank}: diag(" + ", ".join(T.describe()) + ")\n")
    _emit(args, payload, "\n".join(parts))
    return 0


def cmd_st_moments(args) -> int:
    ledger = decompose_jacobian(args.m)
    base = args.m // ledger.multiplicity
    T = hodge_torus(base)
    if ledger.multiplicity > 1:
        T = T.diagonal_power(ledger.multiplicity)
    reps = [identity_moments(T, args.max_n, m=args.m)]
    gamma = _load_gamma(args)
    if gamma is not None:
        reps.append(group_moments(T, gamma, args.max_n, m=args.m))
    payload = {"m": args.m, "tables": [r.to_dict() for r in reps]}
    ns = [n for n in range(2, args.max_n + 1, 2)]
    table = _grid(["group"] + [f"M{n}" for n in ns], [[r.field] + [r.value(n) for n in ns] for r in reps])
    _emit(args, payload, table)
    return 0


def cmd_sweep(args) -> int:
    traces = trace_sweep(args.m, args.bound, args.workers, args.partition, _cache_for(args, args.m))
    payload = {"m": args.m, "bound": args.bound, "primes": len(traces),
               "traces": {str(p): t for p, t in traces.items()}}
    table = f"{len(traces)} traces for m={args.m}, p < {args.bound}\n"
    _emit(args, payload, table)
    return 0


def cmd_num_moments(args) -> int:
    rep = numerical_moments(args.m, args.bound, args.selector, args.max_n, args.workers, args.partition,
                            _cache_for(args, args.m))
    ns = [n for n, _ in rep.moments if n > 0]
    table = (f"{rep.selector.value}: {rep.count} primes below {rep.bound}\n"
             + _grid([f"M{n}" for n in ns], [[f"{rep.value(n):.6g}" for n in ns]]))
    _emit(args, rep.to_dict(), table)
    return 0


def cmd_split_density(args) -> int:
    rep = split_density(args.m, args.bound, args.workers, args.partition)
    payload = rep.to_dict()
    payload["witnesses"] = [{"p": p, "relation": list(w)} for p, w in rep.witnesses]
    table = f"{rep.torsion_free}/{rep.split_primes} torsion-free split primes = {rep.fraction:.4f}\n"
    _emit(args, payload, table)
    return 0


def cmd_cache_merge(args) -> int:
    merged = cache_merge(args.paths)
    if not args.output:
        sys.stdout.write(merged.render())
        return 0
    out = merged.save(args.output)
    payload = {"m": merged.m, "entries": len(merged), "output": str(out)}
    _emit(argparse.Namespace(table=args.table, output=None), payload,
          f"merged {len(merged)} entries for m={merged.m} into {out}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fermatdeg", description="Degeneracy analysis of y^2 = x^m - 1.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, m=True):
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="JSON output (default)")
        fmt.add_argument("--table", action="store_true", help="aligned text output")
        p.add_argument("--output", help="write to this file instead of stdout")
        if m:
            p.add_argument("--m", type=int, required=True)

    def sweep_opts(p):
        p.add_argument("--bound", type=int, required=True)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--partition", type=int, default=DEFAULT_PARTITION)

    def cache_opts(p):
        p.add_argument("--cache", help="trace cache file (default under $FERMAT_CACHE_DIR)")
        p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("analyze", help="full report")
    common(p)
    p.add_argument("--bound", type=int, help="prime bound for the numerical stage")
    p.add_argument("--max-moment", type=int, default=12)
    p.add_argument("--tolerance", default="2", help="moment tolerance in percent")
    p.add_argument("--selector", default="ALL", choices=[s.value for s in Selector])
    p.add_argument("--split-density", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--partition", type=int, default=DEFAULT_PARTITION)
    p.add_argument("--cache")
    p.add_argument("--gamma-file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cm", help="decomposition ledger and CM types")
    common(p)
    p.set_defaults(func=cmd_cm)

    p = sub.add_parser("mt", help="projection matrix and verdicts")
    common(p)
    p.add_argument("--target", help="comma-separated factor labels, e.g. X,J3")
    p.add_argument("--matrix", action="store_true", help="include the projection matrix")
    p.add_argument("--method", default="auto", choices=["auto", "kernel", "column", "group-ring"])
    p.set_defaults(func=cmd_mt)

    p = sub.add_parser("hodge", help="exceptional census, monomials, torus")
    common(p)
    p.add_argument("--codim", type=int)
    p.add_argument("--embedding", action="store_true")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("st-moments", help="exact Sato-Tate moments")
    common(p)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--with-gamma", action="store_true")
    p.add_argument("--gamma-file")
    p.set_defaults(func=cmd_st_moments)

    p = sub.add_parser("sweep", help="trace table over good primes")
    common(p)
    sweep_opts(p)
    cache_opts(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("num-moments", help="numerical a1 moments")
    common(p)
    sweep_opts(p)
    cache_opts(p)
    p.add_argument("--selector", default="ALL", choices=[s.value for s in Selector])
    p.add_argument("--max-n", type=int, default=12)
    p.set_defaults(func=cmd_num_moments)

    p = sub.add_parser("split-density", help="torsion-free fraction of split primes")
    common(p)
    sweep_opts(p)
    p.set_defaults(func=cmd_split_density)

    p = sub.add_parser("cache-merge", help="merge trace caches")
    common(p, m=False)
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_cache_merge)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FermatError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CODES.get(exc.module, EXIT_CODES["core"])


if __name__ == "__main__":
    sys.exit(main())
