"""Command-line front end: ``braidc compile|evaluate|model-check|diagram``.

Exit codes: 0 ok, 1 model-check violation, 2 bad arguments or word text,
3 non-unitary target, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

import numpy as np

from . import __version__, braid, model, render, search

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NONUNITARY, EXIT_IO = 0, 1, 2, 3, 4
CHECK_THRESHOLD = 1e-10
SCHEMA_VERSION = 1
CONVENTION = "temporal-order"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def load_schema(name: str) -> dict:
    """One of ``compile_report``, ``evaluate_report``, ``model_check_report``."""
    text = resources.files("braidc").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def matrix_json(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def _target(name: str) -> search.TargetGate:
    try:
        return search.target(name)
    except braid.NonUnitaryError as exc:
        raise CliError(str(exc), EXIT_NONUNITARY) from exc
    except search.UnknownTargetError as exc:
        raise CliError(exc.args[0], EXIT_USAGE) from exc
    except OSError as exc:
        raise CliError(f"cannot read target {name!r}: {exc}", EXIT_IO) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


def _word(text: str, order: str) -> braid.BraidWord:
    try:
        word = braid.text_to_word(text)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    return word.reversed() if order == "operator" else word


def _emit(payload: dict, output: str, text_lines: list[str]) -> None:
    if output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _format_matrix(m) -> list[str]:
    return ["  [" + ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row) + "]" for row in np.asarray(m)]


def default_threads() -> int:
    env = os.environ.get("BRAIDC_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise CliError(f"BRAIDC_THREADS must be an integer, got {env!r}", EXIT_USAGE)
        if n < 1:
            raise CliError("BRAIDC_THREADS must be positive", EXIT_USAGE)
        return n
    return 1


def cmd_compile(args) -> int:
    gate = _target(args.target)
    threads = args.threads if args.threads is not None else default_threads()
    method = "bidirectional" if args.method == "bidir" else "brute"
    try:
        budget = search.SearchBudget(args.max_len, args.max_slots, method, threads)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    try:
        result = search.compile_gate(gate, budget)
    except search.SearchResourceError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "convention": CONVENTION,
        "target": {"name": gate.name, "matrix": matrix_json(gate.matrix)},
        "method": result.method,
        "budget": {"max_exchanges": budget.max_exchanges, "max_slots": budget.max_slots,
                   "threads": budget.threads},
        "word": braid.word_to_text(result.word),
        "crossings": result.word.length,
        "matrix": matrix_json(result.matrix),
        "error": result.error,
        "nodes_visited": result.nodes_visited,
        "wall_time_ms": result.wall_time * 1000.0,
    }
    _emit(report, args.output, [
        f"target:  {gate.name}",
        f"method:  {result.method} (max {budget.max_exchanges} crossings, {budget.max_slots} slots)",
        f"word:    {report['word'] or '(empty)'}   [temporal order, {result.word.length} crossings]",
        f"error:   {result.error:.17g}",
        "matrix:",
        *_format_matrix(result.matrix),
        f"visited: {result.nodes_visited} weaves in {report['wall_time_ms']:.1f} ms",
    ])
    return EXIT_OK


def cmd_evaluate(args) -> int:
    word = _word(args.word, args.order)
    m = braid.evaluate(word)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "convention": CONVENTION,
        "word": braid.word_to_text(word),
        "crossings": word.length,
        "matrix": matrix_json(m),
    }
    lines = [f"word:   {report['word'] or '(empty)'}   [temporal order]", "matrix:", *_format_matrix(m)]
    if args.target:
        gate = _target(args.target)
        err = braid.distance(m, gate.matrix)
        report["target"] = {"name": gate.name, "matrix": matrix_json(gate.matrix)}
        report["error"] = err
        lines.append(f"error vs {gate.name}: {err:.17g}")
    _emit(report, args.output, lines)
    return EXIT_OK


def cmd_model_check(args) -> int:
    F = model.FIBONACCI_F
    if args.perturb_f:
        key = (1, 1, 1, 1, 0, 0)
        F = F.with_entry(key, F(*key) + args.perturb_f)
    residuals = braid.algebra_residuals(F, model.FIBONACCI_R)
    ok = all(r < CHECK_THRESHOLD for r in residuals.values())
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "threshold": CHECK_THRESHOLD,
        "residuals": residuals,
        "ok": ok,
    }
    _emit(report, args.output, [f"{name:15s} {val:.3e}" for name, val in residuals.items()]
          + ["ok" if ok else "VIOLATION"])
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_diagram(args) -> int:
    word = _word(args.word, args.order)
    doc = render.diagram(word, args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(doc)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from exc
    else:
        sys.stdout.write(doc)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidc", description="Compile single-qubit gates into Fibonacci-anyon weaves.")
    parser.add_argument("--version", action="version", version=f"braidc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def positive(text):
        n = int(text)
        if n < 1:
            raise argparse.ArgumentTypeError("must be positive")
        return n

    order = dict(choices=("temporal", "operator"), default="temporal",
                 help="word order: temporal (first exchange first) or operator (as printed in formulas)")

    p = sub.add_parser("compile", help="search for the weave closest to a target gate")
    p.add_argument("--target", required=True, help=f"one of {', '.join(search.LIBRARY)} or a JSON file")
    p.add_argument("--max-len", type=positive, default=30, help="max elementary crossings (default 30)")
    p.add_argument("--max-slots", type=positive, default=None, help="max power slots (default max-len // 2)")
    p.add_argument("--method", choices=("brute", "bidir"), default="brute")
    p.add_argument("--threads", type=positive, default=None, help="worker threads (default $BRAIDC_THREADS or 1)")
    p.add_argument("--output", choices=("json", "text"), default="text")
    p.add_argument("--seedless", action="store_true", help="reserved; searches are always deterministic")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("evaluate", help="print the matrix of a braid word")
    p.add_argument("--word", required=True, help='e.g. "s1^4 s2^-2"')
    p.add_argument("--target", help="also print the error against this gate")
    p.add_argument("--order", **order)
    p.add_argument("--output", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("model-check", help="check pentagon, hexagon and braid identities")
    p.add_argument("--output", choices=("json", "text"), default="text")
    p.add_argument("--perturb-f", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_model_check)

    p = sub.add_parser("diagram", help="draw the world lines of a braid word")
    p.add_argument("--word", required=True)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--order", **order)
    p.set_defaults(func=cmd_diagram)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"braidc: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
