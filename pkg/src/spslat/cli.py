"""Command-line entry point: ``spslat {gen,check,seq,con,export,stats}``.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import io
from .congruence import join_irreducible_congruences, prime_congruences
from .constructions import fixture, generate_patch_lattices
from .errors import LatticeError
from .lattice import PrimeInterval, is_patch_lattice, is_sps
from .swing import (
    Report,
    find_prime_projectivity,
    find_swing_sequence,
    lemma_suite,
    sl_persistence,
    verify_prime_projectivity_lemma,
    verify_swing_lemma,
)

PPROJ_FIXTURES = ("N5", "M3", "S7", "B2", "C2xC3")
SUITES = {
    "swing": verify_swing_lemma,
    "pproj": verify_prime_projectivity_lemma,
    "lemmas": lemma_suite,
}


class UsageError(Exception):
    pass


def _lattice_arg(args):
    if args.lattice and args.fixture:
        raise UsageError("give either --lattice or --fixture")
    if args.lattice:
        return io.load(args.lattice), args.lattice
    if args.fixture:
        return fixture(args.fixture), args.fixture
    raise UsageError("a lattice is required (--lattice FILE or --fixture NAME)")


def _prime_arg(L, text):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected BOTTOM,TOP, got {text!r}")
    try:
        b, t = (L.index(s.strip()) for s in parts)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    if not L.covers(b, t):
        raise UsageError(f"[{text}] is not a prime interval")
    return PrimeInterval(b, t)


def _run_suite(job):
    suite, name, L = job
    return SUITES[suite](L, name)


def cmd_gen(args, out):
    gens = generate_patch_lattices(args.forks, with_meta=True)
    entries = io.write_catalog(gens, args.out)
    for e in entries:
        print(json.dumps({"id": e.id, "path": e.path, "n": e.n, "fork_depth": e.fork_depth}, sort_keys=True), file=out)
    return 0


def cmd_check(args, out):
    if args.lattice or args.fixture:
        L, name = _lattice_arg(args)
        targets = [(name, L)]
    else:
        targets = [(g.id, g.lattice) for g in generate_patch_lattices(args.forks, with_meta=True)]
        if args.suite == "pproj":
            targets += [(f, fixture(f)) for f in PPROJ_FIXTURES]
    reports: list[Report] = []
    if args.suite == "sl":
        reports.append(sl_persistence(args.forks))
    else:
        jobs = [(args.suite, name, L) for name, L in targets]
        workers = io.worker_count()
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                reports = list(pool.map(_run_suite, jobs))
        else:
            reports = [_run_suite(j) for j in jobs]
    failures = 0
    for r in reports:
        print(r.jsonl(), file=out)
        failures += len(r.discrepancies)
    total = sum(r.checked for r in reports)
    print(json.dumps({"suite": args.suite, "lattices": len(reports), "checked": total,
                      "discrepancies": failures}, sort_keys=True), file=out)
    return 0 if failures == 0 else 1


def cmd_seq(args, out):
    L, _ = _lattice_arg(args)
    p, q = _prime_arg(L, args.from_), _prime_arg(L, args.to)
    find = find_swing_sequence if args.mode == "swing" else find_prime_projectivity
    seq = find(L, p, q)
    if seq is None:
        print("none", file=out)
        return 0
    print(seq.format(L), file=out)
    print("steps: " + " ".join(str(k) for k in seq.steps), file=out)
    return 0


def cmd_con(args, out):
    L, name = _lattice_arg(args)
    principal = prime_congruences(L)
    order = join_irreducible_congruences(L, principal)
    for p in sorted(principal):
        print(f"con({L.label(p.bottom)},{L.label(p.top)}): {principal[p].format(L)}", file=out)
    nodes = [f"con({L.label(g.bottom)},{L.label(g.top)})" for g in order.generators]
    print(io.order_to_dot(nodes, order.covers, f"J(Con {name})"), end="", file=out)
    return 0


def cmd_export(args, out):
    L, name = _lattice_arg(args)
    if args.format == "dot":
        print(io.to_dot(L, name), end="", file=out)
    else:
        print(io.dumps(L), end="", file=out)
    return 0


def cmd_stats(args, out):
    gens = generate_patch_lattices(args.forks, with_meta=True)
    by_depth: dict[int, list[int]] = {}
    for g in gens:
        by_depth.setdefault(g.depth, []).append(g.lattice.n)
    for d in sorted(by_depth):
        sizes = by_depth[d]
        print(json.dumps({"depth": d, "new_lattices": len(sizes), "min_n": min(sizes), "max_n": max(sizes)},
                         sort_keys=True), file=out)
    print(json.dumps({"total": len(gens),
                      "all_sps": all(is_sps(g.lattice) for g in gens),
                      "all_patch": all(is_patch_lattice(g.lattice) for g in gens),
                      "max_primes": max(len(g.lattice.prime_intervals()) for g in gens)},
                     sort_keys=True), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spslat", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, help="accepted for compatibility; every algorithm is deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    def lattice_opts(p):
        p.add_argument("--lattice", help="lattice JSON file")
        p.add_argument("--fixture", help="named fixture (B2, S7, N5, M3, C3, C2xC3, ...)")

    p = sub.add_parser("gen", help="generate slim patch lattices by fork insertion")
    p.add_argument("--forks", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="verify a lemma against the congruence oracle")
    p.add_argument("--suite", choices=["swing", "pproj", "lemmas", "sl"], required=True)
    p.add_argument("--forks", type=int, default=2)
    lattice_opts(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("seq", help="print a witness sequence between two prime intervals")
    lattice_opts(p)
    p.add_argument("--from", dest="from_", required=True, metavar="BOTTOM,TOP")
    p.add_argument("--to", required=True, metavar="BOTTOM,TOP")
    p.add_argument("--mode", choices=["swing", "pproj"], default="swing")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("con", help="principal congruences and J(Con L)")
    lattice_opts(p)
    p.set_defaults(func=cmd_con)

    p = sub.add_parser("export", help="write a lattice as DOT or JSON")
    lattice_opts(p)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("stats", help="summary of the generated family")
    p.add_argument("--forks", type=int, default=3)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args, out)
    except (UsageError, LatticeError, OSError, KeyError) as exc:
        print(f"spslat: error: {exc}", file=sys.stderr)
        return 2


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
