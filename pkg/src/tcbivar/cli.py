"""Command line interface.

    tcbivar solve FILE [--format text|structured] [--no-literature-facts]
                       [--max-iterations N] [--timings]
    tcbivar lcp FILE --pair ID
    tcbivar explain FILE --quantity EXPR
    tcbivar selftest
    tcbivar batch DIR [--no-literature-facts] [--max-iterations N]

Exit codes: 0 success, 1 contradiction (or selftest/batch failure),
2 parse error, 3 semantic error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .dsl import DslSemanticError, DslSyntaxError, parse
from .errors import TcbivarError
from .report import render_structured, render_text
from .runner import RunOptions, run

EXIT_OK = 0
EXIT_CONTRADICTION = 1
EXIT_PARSE = 2
EXIT_SEMANTIC = 3


def _options(args) -> RunOptions:
    return RunOptions(
        literature_facts=not getattr(args, "no_literature_facts", False),
        max_iterations=getattr(args, "max_iterations", 50),
        include_timings=getattr(args, "timings", False),
    )


def _load(path: str):
    return parse(Path(path).read_text(encoding="utf-8"))


def _emit(report, args, out=None) -> int:
    options = _options(args)
    if getattr(args, "format", "text") == "structured":
        blob = render_structured(report, include_timings=options.include_timings)
    else:
        blob = render_text(report)
    (out or sys.stdout.buffer).write(blob)
    return EXIT_CONTRADICTION if report.status == "contradiction" else EXIT_OK


def _cmd_solve(args) -> int:
    report = run(_load(args.file), _options(args))
    return _emit(report, args)


def _cmd_lcp(args) -> int:
    doc = _load(args.file)
    doc.queries = [q for q in doc.queries if q.kind == "lcp" and q.pair == args.pair]
    if not doc.queries:
        from .dsl import QueryStmt

        known_pairs = [p.id for p in doc.pairs]
        if args.pair not in known_pairs:
            raise DslSemanticError(f"no pair {args.pair!r} in {args.file}", 1, 1)
        doc.queries = [QueryStmt("lcp", pair=args.pair)]
    report = run(doc, _options(args))
    return _emit(report, args)


def _cmd_explain(args) -> int:
    doc = _load(args.file)
    from .dsl import Parser, _Cursor, _lex_line

    parser = Parser()
    parser.doc = doc
    for kind, decls in (("space", doc.spaces), ("map", doc.maps),
                        ("pair", doc.pairs)):
        for decl in decls:
            parser.known[decl.id] = kind
    cur = _Cursor(_lex_line(args.quantity, 1), 1)
    ref = parser._quantity_ref(cur)
    cur.require_end()
    from .dsl import QueryStmt

    doc.queries = [QueryStmt("explain", ref=ref)]
    report = run(doc, _options(args))
    return _emit(report, args)


def _cmd_batch(args) -> int:
    directory = Path(args.dir)
    files = sorted(directory.glob("*.tcb"))
    if not files:
        print(f"no .tcb files in {directory}", file=sys.stderr)
        return EXIT_SEMANTIC
    worst = EXIT_OK
    for path in files:
        out_path = path.with_suffix(".out.json")
        try:
            report = run(parse(path.read_text(encoding="utf-8")), _options(args))
        except DslSyntaxError as exc:
            print(f"{path}: parse error: {exc}", file=sys.stderr)
            worst = max(worst, EXIT_PARSE)
            continue
        except DslSemanticError as exc:
            print(f"{path}: semantic error: {exc}", file=sys.stderr)
            worst = max(worst, EXIT_SEMANTIC)
            continue
        blob = render_structured(report)
        tmp = out_path.with_suffix(".out.json.tmp")
        tmp.write_bytes(blob)
        os.replace(tmp, out_path)
        status = report.status
        print(f"{path.name}: {status} -> {out_path.name}")
        if status == "contradiction":
            worst = max(worst, EXIT_CONTRADICTION)
    return worst


def _cmd_selftest(args) -> int:
    """Solve the built-in recorded instances and run the oracle sweep."""
    import random

    from .algebra import embed_left, embed_right, exterior_algebra, tensor_product
    from .catalog import builtin_instances
    from .cuplength import lcp_bruteforce, lcp_subspace_iteration
    from .engine import bound_from_cohomology, propagate
    from .fields import CoefficientField
    from .homs import ZeroDivisorSet
    from .runner import apply_facts

    failures = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        line = f"{'ok  ' if ok else 'FAIL'} {name}"
        if detail and not ok:
            line += f"  ({detail})"
        print(line)
        if not ok:
            failures += 1

    expected = {
        "sphere-deg-2-3": {"TC": "[2, inf]", "TCH": "[2, 2]"},
        "torus-5-mixed": {"TC": "[5, 5]", "TCH": "[5, 5]"},
        "iconic-circle": {"TC": "[1, 1]", "TCH": "[0, 0]"},
        "constant-distinct": {"TC": "[inf, inf]", "TCH": "[0, 0]"},
        "collaboration-s2": {"TC": "[1, 1]", "TCH": "[1, 1]"},
        "wedge-nonsync": {"TC": "[inf, inf]"},
        "sphere-in-r3": {"TC": "[2, 2]", "TCH": "[0, 0]"},
    }
    for name, graph in builtin_instances().items():
        graph.prepare()
        apply_facts(graph, RunOptions())
        for pid in sorted(graph.pairs):
            bound_from_cohomology(graph, pid)
        propagate(graph)
        pair = graph.pairs["P"]
        for quantity, want in expected[name].items():
            got = str(pair.quantities[quantity])
            check(f"{name} {quantity} = {want}", got == want, f"got {got}")

    rng = random.Random(20250808)
    mismatches = 0
    for trial in range(25):
        field = CoefficientField.rationals() if trial % 2 == 0 \
            else CoefficientField.prime_field(2)
        alg = exterior_algebra(field, [1] * rng.randint(1, 3))
        square = tensor_product(alg, alg)
        gens, labels = [], []
        for i in alg.positive_indices():
            u = alg.basis_element(i)
            bar = embed_left(u, square).scale(rng.randint(-5, 5)) \
                - embed_right(u, square).scale(rng.randint(-5, 5))
            if not bar.is_zero():
                gens.append(bar)
                labels.append(alg.labels[i])
        gen_set = ZeroDivisorSet(square, tuple(gens), tuple(labels))
        if lcp_subspace_iteration(gen_set).value != lcp_bruteforce(gen_set):
            mismatches += 1
    check("oracle equivalence sweep (25 random instances)", mismatches == 0,
          f"{mismatches} mismatches")

    print(f"selftest: {'ok' if failures == 0 else f'{failures} failures'}")
    return EXIT_OK if failures == 0 else EXIT_CONTRADICTION


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="tcbivar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--no-literature-facts", action="store_true",
                       help="ignore literature-sourced facts")
        p.add_argument("--max-iterations", type=int, default=50)
        p.add_argument("--timings", action="store_true",
                       help="embed timing data in structured output")

    p_solve = sub.add_parser("solve", help="solve a problem file")
    p_solve.add_argument("file")
    add_common(p_solve)
    p_solve.set_defaults(fn=_cmd_solve)

    p_lcp = sub.add_parser("lcp", help="cup-length bound for one pair")
    p_lcp.add_argument("file")
    p_lcp.add_argument("--pair", required=True)
    add_common(p_lcp)
    p_lcp.set_defaults(fn=_cmd_lcp)

    p_explain = sub.add_parser("explain", help="derivation chain for a quantity")
    p_explain.add_argument("file")
    p_explain.add_argument("--quantity", required=True,
                           help="for instance TC(P) or cat(f)")
    add_common(p_explain)
    p_explain.set_defaults(fn=_cmd_explain)

    p_batch = sub.add_parser("batch", help="solve every .tcb file in a directory")
    p_batch.add_argument("dir")
    add_common(p_batch)
    p_batch.set_defaults(fn=_cmd_batch)

    p_self = sub.add_parser("selftest", help="run the recorded instances and"
                            " oracle sweep")
    p_self.set_defaults(fn=_cmd_selftest)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DslSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DslSemanticError as exc:
        print(f"semantic error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except TcbivarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION


if __name__ == "__main__":
    sys.exit(main())
