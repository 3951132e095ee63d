"""Command line interface: ``pcc analyze|gen|find|oracle|verify|experiment``.

Exit status: 0 success, 1 not found / failure / invalid certificate, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import certify
from .certify import Certificate, validate_certificate
from .errors import BudgetExceeded, GraphFormatError, SearchFailure
from .experiments import DEFAULT_SAMPLES, scan_conjecture, scan_threshold
from .factor import find_pc_two_factor, find_pc_two_factor_min_length
from .generators import GenSpec, gen_random
from .graph import EdgeColouredGraph, delta1, max_mono_degree, min_colour_degree
from .pancyclic import DriverConfig, _solve_length, find_pc_triangle, pancyclic_all, prepare_long

OK, NOT_FOUND, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _read_graph(path: str) -> EdgeColouredGraph:
    try:
        return EdgeColouredGraph.from_ecg(_read_text(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PCC_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"PCC_SEED must be an integer, got {env!r}") from None


# -- subcommands ------------------------------------------------------------


def cmd_analyze(args) -> int:
    G = _read_graph(args.graph)
    print(f"n {G.n}")
    print(f"m {G.m}")
    if G.n:
        print(f"colour_degree {min_colour_degree(G)}")
        print(f"delta1 {delta1(G)}")
        print(f"max_mono {max_mono_degree(G)}")
    return OK


def cmd_gen(args) -> int:
    if args.kind == "extremal":
        spec = GenSpec("extremal", args.n, delta=args.delta)
    else:
        spec = GenSpec(args.model, args.n, colours=args.colours, cap=args.cap, p=args.p, seed=_seed(args))
    try:
        G = gen_random(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(G.to_ecg(), args.out)
    return OK


def _config(args) -> DriverConfig:
    try:
        return DriverConfig(
            epsilon=args.epsilon,
            seed=_seed(args),
            direct_budget=args.budget,
            workers=args.workers,
            fidelity=args.fidelity,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_find(args) -> int:
    G = _read_graph(args.graph)
    cfg = _config(args)
    what = args.what
    note = {"algorithm": what, **cfg.describe()}
    if what == "pancyclic":
        report = pancyclic_all(G, cfg, args.cert_out)
        sys.stdout.write(report.to_csv())
        print(f"# success {len(report.successes())}/{len(report.results)}", file=sys.stderr)
        return OK if len(report.successes()) == len(report.results) else NOT_FOUND
    try:
        if what == "2factor":
            cert = Certificate.make(certify.TWO_FACTOR, find_pc_two_factor(G, fallback=args.fallback == "on"), **note)
        elif what == "2factor-minlen":
            if args.k is None:
                raise InputError("2factor-minlen needs --k")
            cycles = find_pc_two_factor_min_length(G, args.k)
            cert = Certificate.make(certify.TWO_FACTOR, cycles, k=args.k, **note)
        elif what == "triangle":
            if args.vertex is None or not 0 <= args.vertex < G.n:
                raise InputError("triangle needs --vertex inside the graph")
            cert = Certificate.make(certify.TRIANGLE, [find_pc_triangle(G, args.vertex)], **note)
        else:
            length = G.n if what == "hamilton" else args.length
            if length is None or not 3 <= length <= G.n:
                raise InputError(f"cycle length must lie in 3..{G.n}")
            ctx = None
            if length > 3:
                try:
                    ctx = prepare_long(G, cfg)
                except SearchFailure:
                    ctx = None
            cyc, method, _ = _solve_length(G, length, cfg, ctx)
            cert = Certificate.make(certify.CYCLE, [cyc], length, method=method, **note)
    except SearchFailure as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return NOT_FOUND
    if not validate_certificate(G, cert):
        print("internal error: emitted certificate does not validate", file=sys.stderr)
        return NOT_FOUND
    _emit(cert.to_text(), args.cert_out)
    return OK


def cmd_oracle(args) -> int:
    G = _read_graph(args.graph)
    b = args.budget
    try:
        if args.kind == "two-factor":
            cycles = certify.oracle_pc_two_factor(G, budget=b)
            if cycles is None:
                print("none")
                return NOT_FOUND
            sys.stdout.write(Certificate.make(certify.TWO_FACTOR, cycles, algorithm="oracle").to_text())
        elif args.kind == "max-cover":
            print(certify.oracle_max_pc_cycle_cover(G, budget=b))
        elif args.kind == "longest-path":
            print(certify.oracle_longest_pc_path(G, budget=b))
        else:
            length = G.n if args.kind == "hamilton" else args.length
            if length is None or not 3 <= length <= G.n:
                raise InputError(f"cycle length must lie in 3..{G.n}")
            cyc = certify.oracle_pc_cycle(G, length, budget=b)
            if cyc is None:
                print("none")
                return NOT_FOUND
            sys.stdout.write(Certificate.make(certify.CYCLE, [cyc], length, algorithm="oracle").to_text())
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return NOT_FOUND
    return OK


def cmd_verify(args) -> int:
    G = _read_graph(args.graph)
    try:
        cert = Certificate.from_text(_read_text(args.cert))
    except GraphFormatError as exc:
        raise InputError(f"{args.cert}: {exc}") from None
    verdict = validate_certificate(G, cert)
    if verdict:
        print("valid")
        return OK
    print(f"invalid: {verdict.reason}")
    return NOT_FOUND


def cmd_experiment(args) -> int:
    if args.n_min > args.n_max:
        raise InputError("--n-min exceeds --n-max")
    seed = _seed(args)
    if args.kind == "threshold":
        cells = [(n, d) for n in range(max(args.n_min, 2), args.n_max + 1) for d in range(1, n)]
        report = scan_threshold(cells, args.samples, args.budget, seed, args.workers)
        _emit(report.to_csv(), args.out)
        return OK
    try:
        report = scan_conjecture(list(range(args.n_min, args.n_max + 1)), args.samples, seed, args.workers, args.dump_dir)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(report.to_csv(), args.out)
    return NOT_FOUND if report.violations else OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcc", description="Properly coloured cycles in edge-coloured graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="colour statistics of a graph")
    a.add_argument("graph", nargs="?", default="-")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("kind", choices=["extremal", "random"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--delta", type=int)
    g.add_argument("--model", choices=["complete", "gnp"], default="complete")
    g.add_argument("--colours", type=int)
    g.add_argument("--cap", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("find", help="constructive search with a certificate")
    f.add_argument("what", choices=["2factor", "2factor-minlen", "cycle", "hamilton", "triangle", "pancyclic"])
    f.add_argument("graph", nargs="?", default="-")
    f.add_argument("--k", type=int)
    f.add_argument("--length", type=int)
    f.add_argument("--vertex", type=int)
    f.add_argument("--fallback", choices=["on", "off"], default="on")
    f.add_argument("--seed", type=int)
    f.add_argument("--epsilon", default="1/20")
    f.add_argument("--budget", type=int, default=10**6)
    f.add_argument("--workers", type=int, default=1)
    f.add_argument("--fidelity", action="store_true")
    f.add_argument("--cert-out", help="certificate file (directory for pancyclic)")
    f.set_defaults(func=cmd_find)

    o = sub.add_parser("oracle", help="exhaustive search (small graphs)")
    o.add_argument("kind", choices=["two-factor", "max-cover", "longest-path", "cycle", "hamilton"])
    o.add_argument("graph", nargs="?", default="-")
    o.add_argument("--length", type=int)
    o.add_argument("--budget", type=int, default=certify.DEFAULT_BUDGET)
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="check a certificate against a graph")
    v.add_argument("graph")
    v.add_argument("cert")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment", help="threshold or conjecture scans")
    e.add_argument("kind", choices=["threshold", "conjecture"])
    e.add_argument("--n-min", type=int, default=4)
    e.add_argument("--n-max", type=int, default=7)
    e.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    e.add_argument("--budget", type=int, default=10**7)
    e.add_argument("--seed", type=int)
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--dump-dir")
    e.add_argument("--out")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # a graph path given after the options lands in extra
    if len(extra) == 1 and getattr(args, "graph", None) == "-" and not extra[0].startswith("-"):
        args.graph = extra[0]
    elif extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
