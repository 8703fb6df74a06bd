"""Command-line interface: solve, generate, validate, bench."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .certificate import Certificate
from .corealgo import Tour, algorithm_A
from .driver import asymptotic, eptas
from .exact import HELD_KARP_CAP, held_karp_max
from .merge import kostochka_serdyukov_56
from .metricspace import (
    FAMILIES,
    GeneratorSpec,
    Instance,
    dump_instance,
    generate,
    load_instance,
    validate_metric,
)

ORACLE_N_CAP = 10


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxtsp",
        description="Metric maximum traveling salesman solver with certified bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("file")
    mode = p_solve.add_mutually_exclusive_group(required=True)
    mode.add_argument("--eptas", type=float, metavar="EPS", help="target accuracy in (0,1)")
    mode.add_argument("--asymptotic", action="store_true", help="error shrinking with n")
    mode.add_argument("--algoA", type=float, metavar="DELTA", help="gluing pipeline at delta")
    mode.add_argument("--exact", action="store_true", help=f"exact DP (n <= {HELD_KARP_CAP})")
    mode.add_argument("--five-sixths", action="store_true", help="5/6 fallback")
    p_solve.add_argument("--dim", type=float, help="doubling-dimension upper bound")
    p_solve.add_argument("--out", choices=("json", "text"), default="text")

    p_gen = sub.add_parser("generate", help="write a generated instance file")
    p_gen.add_argument("--family", required=True, choices=FAMILIES)
    p_gen.add_argument("--n", required=True, type=int)
    p_gen.add_argument("--d", type=int, help="coordinate dimension (euclidean)")
    p_gen.add_argument("--seed", required=True, type=int)
    p_gen.add_argument("--scale", type=float, default=1.0)
    p_gen.add_argument("--out", required=True)

    p_val = sub.add_parser("validate", help="metric validation report")
    p_val.add_argument("file")
    p_val.add_argument("--tol", type=float, default=None)

    p_bench = sub.add_parser("bench", help="benchmark table over (n, seed) cells")
    p_bench.add_argument("--family", required=True, choices=FAMILIES)
    p_bench.add_argument("--n-list", required=True, help="comma-separated sizes")
    p_bench.add_argument("--seeds", required=True, type=int)
    p_bench.add_argument("--solver", required=True, help="algoA:<delta> | eptas:<eps> | asymptotic | exact | five-sixths")
    p_bench.add_argument("--dim", type=float)
    p_bench.add_argument("--d", type=int, help="coordinate dimension (euclidean)")
    p_bench.add_argument("--scale", type=float, default=1.0)
    return parser


def _read_instance(path: str, dim: Optional[float]) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        inst = load_instance(fh.read())
    if dim is not None:
        inst = inst.with_dim_hint(dim)
    return inst


def _exact_certificate(tour: Tour) -> Certificate:
    return Certificate(
        branch="exact-dp", weight_tour=tour.weight, claimed_bound=1.0, certified=True
    )


def _run_solver(args, parser, inst: Instance):
    if args.eptas is not None:
        if args.dim is None:
            parser.error("--eptas requires --dim")
        return eptas(inst, args.eptas, args.dim)
    if args.asymptotic:
        if args.dim is None:
            parser.error("--asymptotic requires --dim")
        return asymptotic(inst, args.dim)
    if args.algoA is not None:
        return algorithm_A(inst, args.algoA)
    if args.exact:
        tour = held_karp_max(inst)
        return tour, _exact_certificate(tour)
    tour, cert = kostochka_serdyukov_56(inst)
    return tour, cert


def _cmd_solve(args, parser) -> int:
    inst = _read_instance(args.file, args.dim)
    tour, cert = _run_solver(args, parser, inst)
    if args.out == "json":
        payload = {
            "tour": list(tour.order),
            "weight": tour.weight,
            "certificate": cert.to_dict(),
        }
        print(json.dumps(payload))
    else:
        if not cert.certified:
            print("*** certified = false: this run carries no accuracy guarantee "
                  "beyond its cover-relative bound ***")
        print("tour:", " ".join(str(v) for v in tour.order))
        print("weight:", repr(tour.weight))
        print(cert.to_text())
    return 0


def _cmd_generate(args) -> int:
    spec = GeneratorSpec(
        family=args.family, n=args.n, seed=args.seed, d=args.d, scale=args.scale
    )
    inst = generate(spec)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(dump_instance(inst))
    print(f"wrote {args.out}: family={args.family} n={args.n} seed={args.seed}")
    return 0


def _cmd_validate(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        text = fh.read()
    # parse leniently: reuse the loader's parser but report instead of raising
    try:
        inst = load_instance(text, tol=args.tol)
    except ValueError as exc:
        print(f"invalid: {exc}")
        return 1
    report = validate_metric(inst, tol=args.tol)
    print(report.summary())
    return 0 if report.passed else 1


def _parse_bench_solver(spec: str, dim: Optional[float], parser):
    name, _, param = spec.partition(":")
    if name == "algoA":
        delta = float(param)
        return lambda inst: algorithm_A(inst, delta)
    if name == "eptas":
        eps = float(param)
        if dim is None:
            parser.error("--solver eptas:<eps> requires --dim")
        return lambda inst: eptas(inst, eps, dim)
    if name == "asymptotic":
        if dim is None:
            parser.error("--solver asymptotic requires --dim")
        return lambda inst: asymptotic(inst, dim)
    if name == "exact":
        return lambda inst: (held_karp_max(inst), None)
    if name == "five-sixths":
        return lambda inst: kostochka_serdyukov_56(inst)
    parser.error(f"unknown solver spec {spec!r}")


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _cmd_bench(args, parser) -> int:
    try:
        sizes = [int(tok) for tok in args.n_list.split(",") if tok.strip()]
    except ValueError:
        parser.error(f"bad --n-list {args.n_list!r}")
    if not sizes:
        parser.error("empty --n-list")
    run = _parse_bench_solver(args.solver, args.dim, parser)
    columns = (
        "n seed weight_cover k_initial k_final weight_tour "
        "claimed_bound ratio_cover ratio_opt"
    )
    print(columns)
    sys.stdout.flush()
    for n in sizes:
        for seed in range(args.seeds):
            spec = GeneratorSpec(
                family=args.family, n=n, seed=seed, d=args.d, scale=args.scale
            )
            inst = generate(spec)
            if args.dim is not None:
                inst = inst.with_dim_hint(args.dim)
            tour, cert = run(inst)
            if cert is None:
                cert = _exact_certificate(tour)
            ratio_cover = (
                tour.weight / cert.weight_cover if cert.weight_cover else None
            )
            ratio_opt = None
            if n <= ORACLE_N_CAP:
                opt = held_karp_max(inst)
                ratio_opt = tour.weight / opt.weight if opt.weight else None
            row = [
                n,
                seed,
                cert.weight_cover,
                cert.k_initial,
                cert.k_after_gluing,
                tour.weight,
                cert.claimed_bound,
                ratio_cover,
                ratio_opt,
            ]
            print(" ".join(_fmt(v) for v in row))
            sys.stdout.flush()
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args, parser)
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "validate":
            return _cmd_validate(args)
        return _cmd_bench(args, parser)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
