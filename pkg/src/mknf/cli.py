"""Command-line interface.

Subcommands: compile, query, repl, check, bench, gen. Exit codes:
0 success, 1 compile/parse error, 2 usage error, 3 an inconsistency was
detected while --strict is set.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import BenchConfig, generate_bench, run_bench
from .errors import MknfError
from .ground import ground
from .parser import parse_program, parse_query
from .prolog import export_native, export_prolog, load_compiled
from .query import answer
from .syntax import to_source
from .transform import DoubledProgram, compile_kb
from .wfs import alternating_fixed_point, mknf_consistency_check, relevance_slice

OK, ERROR, USAGE, INCONSISTENT = 0, 1, 2, 3


def _load_program(path: str) -> DoubledProgram:
    """Compile a source knowledge base, or load an exported program."""
    text = Path(path).read_text(encoding="utf-8")
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        if stripped.startswith("#"):
            return compile_kb(parse_program(text))
        return load_compiled(text)
    return compile_kb(parse_program(text))


def _print_unsupported(program: DoubledProgram):
    for axiom, reason in program.unsupported:
        print(f"unsupported axiom: {axiom.render()}  [{reason}]", file=sys.stderr)


def cmd_compile(args) -> int:
    try:
        program = compile_kb(parse_program(Path(args.input).read_text(encoding="utf-8")))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except MknfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    _print_unsupported(program)
    text = export_prolog(program) if args.format == "prolog" else export_native(program)
    try:
        if args.output == "-":
            sys.stdout.write(text)
        else:
            Path(args.output).write_text(text, encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    return OK


def _solve(program: DoubledProgram, query_text: str, strict: bool):
    query = parse_query(query_text)
    if strict:
        sliced = program  # the check must see the whole program
    else:
        sliced = relevance_slice(program, query)
    model = alternating_fixed_point(ground(sliced))
    return query, model


def _emit_rows(result, query_text: str, as_json: bool):
    if as_json:
        for row in result.rows:
            print(
                json.dumps(
                    {
                        "query": query_text,
                        "binding": row.binding,
                        "classification": row.classification,
                    }
                )
            )
    else:
        for row in result.rows:
            print(row.render())


def cmd_query(args) -> int:
    try:
        program = _load_program(args.input)
        query, model = _solve(program, args.query, args.strict)
        result = answer(query, model, args.mode)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except MknfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    _emit_rows(result, args.query, args.json)
    if args.strict:
        report = mknf_consistency_check(model)
        if report:
            print(report.render(), file=sys.stderr)
            return INCONSISTENT
    return OK


def cmd_check(args) -> int:
    try:
        program = _load_program(args.input)
        model = alternating_fixed_point(ground(program))
    except (OSError, MknfError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    _print_unsupported(program)
    report = mknf_consistency_check(model)
    print(report.render())
    if report and args.strict:
        return INCONSISTENT
    return OK


def cmd_repl(args) -> int:
    try:
        program = _load_program(args.input)
        model = alternating_fixed_point(ground(program))
    except (OSError, MknfError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    mode = args.mode
    print(f"loaded {args.input}; {len(model.program)} ground rules. "
          ":mode, :check or :quit", file=sys.stderr)
    while True:
        try:
            line = input("?- ")
        except EOFError:
            return OK
        line = line.strip()
        if not line:
            continue
        if line == ":quit":
            return OK
        if line == ":check":
            print(mknf_consistency_check(model).render())
            continue
        if line.startswith(":mode"):
            requested = line.split(None, 1)[1:] or [""]
            if requested[0] in ("consistent", "inconsistent", "all"):
                mode = requested[0]
                print(f"mode set to {mode}")
            else:
                print("usage: :mode consistent|inconsistent|all")
            continue
        try:
            result = answer(parse_query(line), model, mode)
        except MknfError as exc:
            print(f"error: {exc}")
            continue
        if not result.rows:
            print("no answers")
        _emit_rows(result, line, args.json)


def cmd_bench(args) -> int:
    queries: list[str] = []
    if args.queries:
        path = Path(args.queries)
        if not path.exists():
            print(f"error: queries file {path} does not exist", file=sys.stderr)
            return USAGE
        for raw in path.read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if line and not line.startswith("%"):
                queries.append(line)
    config = BenchConfig(args.rules, args.constants, args.seed, args.chain_depth)
    try:
        report = run_bench(config, queries, parallel=args.parallel)
    except MknfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    print(report.to_json() if args.json else report.render())
    return OK


def cmd_gen(args) -> int:
    config = BenchConfig(args.rules, args.constants, args.seed, args.chain_depth)
    text = to_source(generate_bench(config))
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return OK


def _build_argparser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="mknf",
        description="Compile hybrid rules+ontology knowledge bases and answer "
        "queries paraconsistently under the well-founded semantics.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="translate a knowledge base into a logic program")
    p.add_argument("input")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--format", choices=("native", "prolog"), default="native")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("query", help="answer one query against a knowledge base")
    p.add_argument("input", help="source .mknf file or a compiled export")
    p.add_argument("query")
    p.add_argument("--mode", choices=("consistent", "inconsistent", "all"), default="all")
    p.add_argument("--json", action="store_true")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 if the knowledge base has contradictory atoms")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("repl", help="interactive query loop over a cached model")
    p.add_argument("input")
    p.add_argument("--mode", choices=("consistent", "inconsistent", "all"), default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_repl)

    p = sub.add_parser("check", help="report atoms that are true but contradicted")
    p.add_argument("input")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="generate a knowledge base and time the pipeline")
    p.add_argument("--rules", type=int, default=100)
    p.add_argument("--constants", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--chain-depth", type=int, default=4)
    p.add_argument("--queries", help="file with one query per line")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write a generated benchmark knowledge base")
    p.add_argument("--rules", type=int, default=100)
    p.add_argument("--constants", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--chain-depth", type=int, default=4)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)
    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_argparser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
