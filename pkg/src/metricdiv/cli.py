"""Command-line front end.

Exit codes: 0 success or predicate true, 1 predicate false, 2 bad input,
3 internal invariant violation (with a diagnostic dump on stderr).
Graphs must not be circles or single points.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .divisor import apply_certificate
from .engine import break_representative, equivalence_certificate, is_break, semibreak_reduce
from .errors import InputError, InvariantViolation, MetricDivError
from .minmax import error_of_set, max_error_profile
from .oracle import is_semibreak_bruteforce, max_error_bruteforce

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class InputFileError(InputError):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputFileError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFileError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _parse(path: str, parser, *args):
    data = _load(path)
    try:
        return parser(*args, data)
    except (InputError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputFileError):
            raise
        raise InputFileError(f"{path}: {exc}") from exc


def _graph(path):
    return _parse(path, io.graph_from_json)


def _divisor(graph, path):
    return _parse(path, io.divisor_from_json, graph)


def _emit(payload, out: str | None = None):
    text = io.dumps(payload)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def cmd_validate(args):
    graph = _graph(args.graph)
    payload = {
        "valid": True,
        "genus": graph.genus,
        "branch_points": list(graph.branch_points),
    }
    if args.divisor:
        D = _divisor(graph, args.divisor)
        payload["divisor"] = {"degree": D.degree, "effective": D.is_effective}
    _emit(payload)
    return EXIT_OK


def cmd_semibreak(args):
    graph = _graph(args.graph)
    D = _divisor(graph, args.divisor)
    result = semibreak_reduce(graph, D, args.strategy, keep_trace=args.trace)
    if args.cert:
        Path(args.cert).write_text(io.dumps(io.certificate_to_json(result.certificate)) + "\n")
    _emit(io.result_to_json(result), args.out)
    return EXIT_OK


def cmd_breakrep(args):
    graph = _graph(args.graph)
    D = _divisor(graph, args.divisor)
    _emit(io.divisor_to_json(break_representative(graph, D, args.strategy)), args.out)
    return EXIT_OK


def cmd_equiv(args):
    graph = _graph(args.graph)
    D1 = _divisor(graph, args.d1)
    D2 = _divisor(graph, args.d2)
    cert = equivalence_certificate(graph, D1, D2, args.strategy)
    payload = {"equivalent": cert is not None}
    if cert is not None:
        payload["certificate"] = io.certificate_to_json(cert)
        if args.cert:
            Path(args.cert).write_text(io.dumps(payload["certificate"]) + "\n")
    _emit(payload, args.out)
    return EXIT_OK if cert is not None else EXIT_FALSE


def cmd_error(args):
    graph = _graph(args.graph)
    D = _divisor(graph, args.divisor)
    S = _parse(args.set, io.set_from_json, graph)
    _emit({"error": error_of_set(S.model, D, S)}, args.out)
    return EXIT_OK


def cmd_minmax(args):
    graph = _graph(args.graph)
    D = _divisor(graph, args.divisor)
    _emit(io.profile_to_json(max_error_profile(graph, D, args.strategy)), args.out)
    return EXIT_OK


def cmd_is_break(args):
    graph = _graph(args.graph)
    D = _divisor(graph, args.divisor)
    verdict = is_break(graph, D, args.strategy)
    _emit({"is_break": verdict}, args.out)
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_oracle_semibreak(args):
    graph = _graph(args.graph)
    D = _divisor(graph, args.divisor)
    verdict = is_semibreak_bruteforce(graph, D)
    _emit({"is_semibreak": verdict}, args.out)
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_oracle_me(args):
    graph = _graph(args.graph)
    D = _divisor(graph, args.divisor)
    _emit(io.profile_to_json(max_error_bruteforce(graph, D)), args.out)
    return EXIT_OK


def cmd_verify_cert(args):
    graph = _graph(args.graph)
    D = _divisor(graph, args.divisor)
    target = _divisor(graph, args.target)
    data = _load(args.cert)
    if isinstance(data, dict) and "certificate" in data:
        data = data["certificate"]
    try:
        cert = io.certificate_from_json(graph, data)
    except (InputError, KeyError, TypeError, ValueError) as exc:
        raise InputFileError(f"{args.cert}: {exc}") from exc
    try:
        reached = apply_certificate(graph, D, cert)
    except InputError as exc:
        _emit({"valid": False, "reason": str(exc)}, args.out)
        return EXIT_FALSE
    ok = reached == target
    payload = {"valid": ok}
    if not ok:
        payload["reached"] = io.divisor_to_json(reached)
    _emit(payload, args.out)
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metricdiv",
        description="Exact divisor computations on metric graphs (circles and points are rejected).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, strategy=True, out=True):
        p = sub.add_parser(name)
        for arg in positional:
            p.add_argument(arg)
        if strategy:
            p.add_argument("--strategy", choices=["exhaustive", "min-norm"], default="exhaustive")
        if out:
            p.add_argument("--out", help="also write the JSON result to this file")
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "graph", strategy=False, out=False)
    p.add_argument("divisor", nargs="?")
    p = add("semibreak", cmd_semibreak, "graph", "divisor")
    p.add_argument("--cert", help="write the firing certificate to this file")
    p.add_argument("--trace", action="store_true", help="include the per-iteration trace")
    add("breakrep", cmd_breakrep, "graph", "divisor")
    p = add("equiv", cmd_equiv, "graph", "d1", "d2")
    p.add_argument("--cert", help="write the certificate for d1 ~ d2 to this file")
    add("error", cmd_error, "graph", "divisor", "set", strategy=False)
    add("minmax", cmd_minmax, "graph", "divisor")
    add("is-break", cmd_is_break, "graph", "divisor")
    add("oracle-semibreak", cmd_oracle_semibreak, "graph", "divisor", strategy=False)
    add("oracle-me", cmd_oracle_me, "graph", "divisor", strategy=False)
    add("verify-cert", cmd_verify_cert, "graph", "divisor", "target", "cert", strategy=False)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "strategy", None) == "min-norm":
        args.strategy = "min_norm"
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        print(json.dumps({"error": str(exc), "dump": exc.dump}, indent=2, default=str), file=sys.stderr)
        return EXIT_INVARIANT
    except MetricDivError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
