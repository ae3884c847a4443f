"""Command line interface.

Commands: solve, strong-solve, link-solve (constructive engine), decide
(exact oracle), verify (linkage validation), certify (instance sweeps),
suite (invariant suites), bench (engine timing percentiles).

Exit codes: 0 on success / linked / valid; 1 when an instance is unlinked,
a linkage is invalid, or a certification run records failures; 2 for usage
problems, including malformed JSON (reported with line and column); 3 for
internal invariant failures, which also write a replayable dump to a temp
file, and for exhausted search budgets.

Vertices are binary strings, most significant coordinate first; pair lists
look like "00000:11111,00001:11110"; avoid lists are comma separated.  An
instance file (or "-" for stdin) overrides the flag-built instance.  Output
is JSON by default (stable: key-sorted, and timing fields appear only with
--timing) or a text rendering with --format text.  LINKAGE_BUDGET and
LINKAGE_WORKERS set defaults for --budget and --workers.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time

from . import cube_core
from .certifier import (
    BOTH,
    DEFAULT_SEED,
    ENGINE,
    EXHAUSTIVE,
    ORACLE,
    SAMPLED,
    SUITE_NAMES,
    CertificationJob,
    certify,
    parse_host_spec,
    property_suite,
    sample_instances,
)
from .cube_core import CubeGraph, link_graph, opposite
from .linkage_engine import (
    SolveResult,
    UnsupportedInstanceError,
    detect_config_3F,
    solve_avoiding,
    solve_link,
    solve_linkage,
    solve_strong,
)
from .path_oracle import (
    BUDGET_EXCEEDED,
    DEFAULT_NODE_BUDGET,
    LINKED,
    UNLINKED,
    InvariantError,
    Pairing,
    decide_linked,
    host_to_json,
    linkage_from_json,
    linkage_to_json,
    parse_instance,
    pyramid2_quad,
    validate_linkage,
)


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True, default=str))


def _read_json(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer, got {raw!r}")


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    return _env_int("LINKAGE_BUDGET", DEFAULT_NODE_BUDGET)


def _workers(args) -> int:
    if getattr(args, "workers", None) is not None:
        return args.workers
    return _env_int("LINKAGE_WORKERS", 1)


def _parse_pairs(G, text: str) -> Pairing:
    pairs = []
    for chunk in text.split(","):
        s, sep, t = chunk.partition(":")
        if not sep:
            raise ValueError(f"pair {chunk!r} must look like vertex:vertex")
        pairs.append((G.parse_vertex(s.strip()), G.parse_vertex(t.strip())))
    return Pairing(tuple(pairs))


def _parse_avoid(G, text: str | None) -> frozenset:
    if not text:
        return frozenset()
    return frozenset(G.parse_vertex(v.strip()) for v in text.split(","))


def _require(args, *names: str) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            raise ValueError(f"--{name.replace('_', '-')} is required without an instance file")


def _result_json(result: SolveResult, args, wall: float) -> dict:
    out = result.to_json()
    if args.timing:
        out["wall_time_s"] = round(wall, 6)
    return out


def _print_solve(result: SolveResult, args, wall: float) -> None:
    if args.format == "text":
        print("trace:", " ".join(result.trace))
        for path in result.linkage:
            print(" ".join(result.host.format_vertex(v) for v in path))
        if args.timing:
            print(f"wall: {wall:.6f}s")
    else:
        _emit(_result_json(result, args, wall))


def _cmd_solve(args) -> int:
    start = time.perf_counter()
    if args.instance:
        host, Y = parse_instance(_read_json(args.instance))
        if not isinstance(host, CubeGraph):
            raise ValueError("solve expects a cube host")
        result = solve_avoiding(host.d, Y, host.removed)
    else:
        _require(args, "dim", "pairs")
        G = CubeGraph(args.dim)
        Y = _parse_pairs(G, args.pairs)
        result = solve_avoiding(args.dim, Y, _parse_avoid(G, args.avoid))
    _print_solve(result, args, time.perf_counter() - start)
    return 0


def _cmd_strong_solve(args) -> int:
    start = time.perf_counter()
    if args.instance:
        host, Y = parse_instance(_read_json(args.instance))
        if not isinstance(host, CubeGraph) or len(host.removed) != 1:
            raise ValueError("strong-solve expects a cube host with one forbidden vertex")
        result = solve_strong(host.d, Y, next(iter(host.removed)))
    else:
        _require(args, "dim", "pairs", "avoid")
        G = CubeGraph(args.dim)
        forbidden = sorted(_parse_avoid(G, args.avoid))
        if len(forbidden) != 1:
            raise ValueError("strong-solve needs exactly one forbidden vertex in --avoid")
        result = solve_strong(args.dim, _parse_pairs(G, args.pairs), forbidden[0])
    _print_solve(result, args, time.perf_counter() - start)
    return 0


def _cmd_link_solve(args) -> int:
    start = time.perf_counter()
    if args.instance:
        host, Y = parse_instance(_read_json(args.instance))
        if not isinstance(host, CubeGraph) or len(host.removed) != 2:
            raise ValueError("link-solve expects a cube host minus two opposite vertices")
        a, b = sorted(host.removed)
        if b != opposite(host.d, a):
            raise ValueError("link-solve expects the two removed vertices to be opposite")
        apex = a
        if args.apex is not None:
            apex = host.parse_vertex(args.apex)
            if apex not in (a, b):
                raise ValueError("--apex must be one of the removed vertices")
        result = solve_link(host.d, apex, Y)
    else:
        _require(args, "dim", "pairs", "apex")
        G = CubeGraph(args.dim)
        result = solve_link(args.dim, G.parse_vertex(args.apex),
                            _parse_pairs(G, args.pairs))
    _print_solve(result, args, time.perf_counter() - start)
    return 0


def _decide_host(args):
    if args.instance:
        return parse_instance(_read_json(args.instance))
    _require(args, "pairs")
    spec = args.host
    if spec is None:
        _require(args, "dim")
        spec = f"cube:{args.dim}"
    kind, d = parse_host_spec(spec)
    if kind == "cube":
        G = CubeGraph(d)
        G = G.without(_parse_avoid(G, args.avoid))
    elif kind == "link":
        plain = CubeGraph(d)
        apex = plain.parse_vertex(args.apex) if args.apex is not None else 0
        G = link_graph(d, apex)
    else:
        G = pyramid2_quad()
        G = G.without(_parse_avoid(G, args.avoid))
    return G, _parse_pairs(G, args.pairs)


def _cmd_decide(args) -> int:
    G, Y = _decide_host(args)
    start = time.perf_counter()
    outcome = decide_linked(G, Y, budget=_budget(args))
    wall = time.perf_counter() - start
    out = {"host": host_to_json(G), "pairs": [[G.format_vertex(s), G.format_vertex(t)]
                                              for s, t in Y.pairs],
           "status": outcome.status, "nodes_used": outcome.nodes_used}
    if outcome.status == LINKED:
        out["paths"] = linkage_to_json(G, outcome.linkage)
    certificate = None
    if (outcome.status == UNLINKED and isinstance(G, CubeGraph)
            and G.d == 3 and not G.removed and Y.k == 2):
        cert = detect_config_3F(Y)
        if cert is not None:
            certificate = {
                "face": cube_core.format_face(3, cert.face),
                "witness_terminal": cube_core.format_vertex(3, cert.witness_terminal),
            }
    if certificate is not None:
        out["certificate"] = certificate
    if args.timing:
        out["wall_time_s"] = round(wall, 6)
    if args.format == "text":
        print(outcome.status)
        if outcome.status == LINKED:
            for path in outcome.linkage:
                print(" ".join(G.format_vertex(v) for v in path))
        if certificate is not None:
            print(f"certificate: face {certificate['face']} "
                  f"witness {certificate['witness_terminal']}")
    else:
        _emit(out)
    if outcome.status == LINKED:
        return 0
    if outcome.status == BUDGET_EXCEEDED:
        return 3
    return 1


def _cmd_verify(args) -> int:
    obj = _read_json(args.instance or "-")
    G, Y = parse_instance(obj)
    if "paths" not in obj:
        raise ValueError("verify needs a 'paths' field alongside the instance")
    L = linkage_from_json(G, obj["paths"])
    report = validate_linkage(G, Y, L)
    out = {"ok": report.ok}
    if not report.ok:
        out["clause"] = report.clause
        out["witness"] = report.witness
        out["message"] = report.message
    if args.format == "text":
        print("valid" if report.ok else f"invalid: {report.clause}: {report.message}")
    else:
        _emit(out)
    return 0 if report.ok else 1


def _cmd_certify(args) -> int:
    job = CertificationJob(
        host=args.host,
        k=args.k,
        mode=args.mode,
        solver=args.solver,
        samples=args.samples,
        seed=args.seed,
        strong=args.strong,
        budget=_budget(args),
        fail_fast=args.fail_fast,
        workers=_workers(args),
    )
    report = certify(job)
    if args.format == "text":
        print(report.summary_text(timing=args.timing))
    else:
        _emit(report.to_json(timing=args.timing))
    if report.failures:
        return 1
    if report.budget_cases:
        return 3
    return 0


def _cmd_suite(args) -> int:
    report = property_suite(args.name, seed=args.seed, samples=args.samples)
    if args.format == "text":
        print(report.summary_text(timing=args.timing))
    else:
        _emit(report.to_json(timing=args.timing))
    return 0 if report.ok else 1


def _bench_solve(inst):
    if inst.kind == "strong":
        return solve_strong(inst.d, inst.pairing, inst.forbidden)
    if inst.kind == "link":
        return solve_link(inst.d, inst.apex, inst.pairing)
    return solve_linkage(inst.d, inst.pairing)


def _percentile(sorted_times: list, q: float) -> float:
    idx = round(q * (len(sorted_times) - 1))
    return sorted_times[idx]


def _cmd_bench(args) -> int:
    kind, _ = parse_host_spec(args.host)
    if kind == "fixture":
        raise ValueError("bench drives the engine, which needs a cube host")
    times = []
    start = time.perf_counter()
    for inst in sample_instances(args.host, args.k, args.samples, args.seed,
                                 strong=args.strong):
        t0 = time.perf_counter()
        _bench_solve(inst)
        times.append(time.perf_counter() - t0)
    total = time.perf_counter() - start
    times.sort()
    out = {
        "host": args.host,
        "k": args.k,
        "samples": args.samples,
        "seed": args.seed,
        "total_s": round(total, 3),
        "p50_ms": round(1000 * _percentile(times, 0.50), 3),
        "p90_ms": round(1000 * _percentile(times, 0.90), 3),
        "p99_ms": round(1000 * _percentile(times, 0.99), 3),
        "max_ms": round(1000 * times[-1], 3),
    }
    if args.format == "text":
        width = max(len(key) for key in out)
        for key, value in out.items():
            print(f"{key:<{width}}  {value}")
    else:
        _emit(out)
    return 0


def _replay_dump(exc: InvariantError) -> str:
    payload = {"error": str(exc), "context": getattr(exc, "context", None)}
    fd, path = tempfile.mkstemp(prefix="cubelink-replay-", suffix=".json")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=str)
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubelink",
        description="Construct and certify disjoint path linkages in cube graphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock fields in the output")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_parser(name: str, help_text: str):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("instance", nargs="?",
                       help="instance JSON file, or - for stdin (overrides flags)")
        p.add_argument("--dim", type=int)
        p.add_argument("--pairs", help='e.g. "00000:11111,00001:11110"')
        return p

    p = solver_parser("solve", "engine: linkage in Q_d")
    p.add_argument("--avoid", help="comma-separated forbidden vertices")
    p.set_defaults(func=_cmd_solve)

    p = solver_parser("strong-solve", "engine: linkage avoiding one vertex")
    p.add_argument("--avoid", help="the single forbidden vertex")
    p.set_defaults(func=_cmd_strong_solve)

    p = solver_parser("link-solve", "engine: linkage in Q_D minus an opposite pair")
    p.add_argument("--apex", help="the removed vertex v (its opposite goes too)")
    p.set_defaults(func=_cmd_link_solve)

    p = solver_parser("decide", "oracle: exact linked/unlinked decision")
    p.add_argument("--avoid", help="comma-separated forbidden vertices")
    p.add_argument("--apex", help="apex vertex for link hosts")
    p.add_argument("--host", help="cube:D, link:D, or pyramid2-quad")
    p.add_argument("--budget", type=int, help="search node budget")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("verify", parents=[common],
                       help="validate a solve result against its instance")
    p.add_argument("instance", nargs="?",
                   help="result JSON file, or - for stdin (default)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("certify", parents=[common],
                       help="sweep instances and validate every output")
    p.add_argument("--host", required=True, help="cube:D, link:D, or pyramid2-quad")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=(EXHAUSTIVE, SAMPLED), default=EXHAUSTIVE)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--solver", choices=(ENGINE, ORACLE, BOTH), default=ENGINE)
    p.add_argument("--strong", action="store_true",
                   help="route around a forbidden vertex as well")
    p.add_argument("--workers", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--fail-fast", action="store_true")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("suite", parents=[common], help="run a named invariant suite")
    p.add_argument("name", choices=SUITE_NAMES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(func=_cmd_suite)

    p = sub.add_parser("bench", parents=[common],
                       help="time engine solves over a sampled batch")
    p.add_argument("--host", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--strong", action="store_true")
    p.set_defaults(func=_cmd_bench)

    return parser


def run(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno} column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return 2
    except UnsupportedInstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        cert = exc.certificate
        if cert is not None:
            print(f"certificate: face {cube_core.format_face(3, cert.face)} "
                  f"witness {cube_core.format_vertex(3, cert.witness_terminal)}",
                  file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        path = _replay_dump(exc)
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        print(f"replay dump: {path}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))
