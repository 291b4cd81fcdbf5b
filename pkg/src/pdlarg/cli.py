"""Command-line driver.

Exit status: 0 when everything checked holds, 1 when a check produced a
counterexample, 2 for unreadable or invalid input, 3 when a capacity limit
was hit.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from . import __version__
from .arguments import MAX_ARGUMENTS
from .dung import complete_extensions, grounded, preferred_extensions, stable_extensions
from .errors import CapacityError, InputError, ParseError, ValidationError, VocabularyError
from .export import to_dot, to_json
from .generate import random_pdt
from .io import parse_pdt, serialise_pdt
from .pdl import all_extensions, nbd
from .sp import compact_order, sp_partial, sp_structure1
from .theory import MAX_LINEARISATIONS, PDT, all_strict_partial_orders
from .verify import (analyse, check_greedy_generator, check_rationality, check_reconstruction,
                     check_representation_partial, check_representation_total, check_trivialisation,
                     rules_all_used)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3

PENGUIN = """\
atoms: a b
default r1: true => a
default r2: a => b
default r3: true => ~b
"""


def _load(path: str) -> tuple[PDT, list]:
    if path == "-":
        data = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            data = fh.read()
    return parse_pdt(data)


def _fmt_set(formulas) -> str:
    return "{" + ", ".join(sorted(str(f) for f in formulas)) + "}"


def _semantics(af, name):
    if name == "grounded":
        return [grounded(af)]
    return {"complete": complete_extensions, "preferred": preferred_extensions,
            "stable": stable_extensions}[name](af)


def cmd_extensions(args, out) -> int:
    t, queries = _load(args.file)
    exts = all_extensions(t, args.max_linearisations)
    print(f"default logic: {len(exts)} extension(s)", file=out)
    for i, e in enumerate(exts, 1):
        print(f"  E{i} = Th({_fmt_set(e.generators)})", file=out)
        print(f"       trace: {' '.join(e.trace) or '-'}; non-blocked: {' '.join(sorted(nbd(t, e))) or '-'}",
              file=out)
    a = analyse(t, max_arguments=args.max_arguments)
    found = _semantics(a.af, args.semantics)
    print(f"argumentation ({args.semantics}): {len(found)} extension(s) over {len(a.store)} arguments",
          file=out)
    for i, s in enumerate(found, 1):
        print(f"  S{i}: Conc = {_fmt_set(a.store.conclusions(s))}", file=out)
    for q in queries:
        verdict = all(e.entails(q) for e in exts)
        print(f"query {q}: {'sceptically entailed' if verdict else 'not sceptically entailed'}", file=out)
    return EXIT_OK


def _penguin_table(out) -> None:
    t, _ = parse_pdt(PENGUIN)
    rows: dict[str, list[str]] = {}
    for order in all_strict_partial_orders(list(t.ids)):
        sp = sp_partial(t.rule_table, order, t.facts, t.vocabulary)
        rows.setdefault(compact_order(sp), []).append(compact_order(order))
    print("input <D -> <SP", file=out)
    for sp, inputs in rows.items():
        print(f"  {', '.join(sorted(inputs))} -> {sp}", file=out)


def cmd_sp(args, out) -> int:
    if args.table:
        _penguin_table(out)
        if not args.file:
            return EXIT_OK
    if not args.file:
        raise InputError("sp needs a theory file unless --table is given")
    t, _ = _load(args.file)
    a = analyse(t, max_arguments=args.max_arguments)
    print(f"<D  = {compact_order(t.priority)}", file=out)
    seqs = sp_structure1(t.rule_table, t.priority, store=a.store)
    print("sequences (least preferred first):", file=out)
    for s in sorted(seqs):
        print("  " + (" ".join(s) or "(empty)"), file=out)
    print(f"<SP = {compact_order(a.sp)}", file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    t, _ = _load(args.file)
    a = analyse(t, max_arguments=args.max_arguments)
    reports = []
    if t.priority.is_total():
        reports += [check_representation_total(t, analysis=a), check_trivialisation(t, analysis=a),
                    check_greedy_generator(t, analysis=a)]
    reports += [check_representation_partial(t, analysis=a, max_linearisations=args.max_linearisations),
                check_rationality(t, analysis=a)]
    if rules_all_used(a.store):
        for s in stable_extensions(a.af):
            rules = frozenset().union(*(a.store[i].dr for i in s)) if s else frozenset()
            reports.append(check_reconstruction(t, rules, a.sp, a.store))
    for r in reports:
        print(r.line(), file=out)
        for key, value in sorted(r.witness.items()) if not r.passed else ():
            text = value if isinstance(value, str) else repr(value)
            print(f"  {key}: {text.rstrip()}".replace("\n", "\n    "), file=out)
    return EXIT_OK if all(reports) else EXIT_VIOLATION


def cmd_export(args, out) -> int:
    t, _ = _load(args.file)
    a = analyse(t, max_arguments=args.max_arguments)
    out.write(to_dot(a) if args.format == "dot" else to_json(a))
    return EXIT_OK


def cmd_random(args, out) -> int:
    rng = random.Random(args.seed if args.seed is not None else 0)
    t = random_pdt(rng, args.defaults, args.atoms, total=args.total, density=args.density)
    out.write(serialise_pdt(t))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-linearisations", type=int, default=argparse.SUPPRESS,
                        help=f"cap on enumerated linearisations (default {MAX_LINEARISATIONS})")
    common.add_argument("--max-arguments", type=int, default=argparse.SUPPRESS,
                        help=f"cap on constructed arguments (default {MAX_ARGUMENTS})")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")

    parser = argparse.ArgumentParser(prog="pdlarg", parents=[common],
                                     description="Prioritised default logic and its argumentation counterpart.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extensions", parents=[common], help="list extensions on both sides")
    p.add_argument("file")
    p.add_argument("--semantics", choices=("grounded", "complete", "preferred", "stable"), default="stable")
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser("sp", parents=[common], help="show the structure-preference order")
    p.add_argument("file", nargs="?")
    p.add_argument("--table", action="store_true", help="tabulate every priority on the penguin triangle")
    p.set_defaults(func=cmd_sp)

    p = sub.add_parser("check", parents=[common], help="run every applicable check")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", parents=[common], help="emit the defeat graph")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("random", parents=[common], help="emit a random theory file")
    p.add_argument("--defaults", type=int, default=4)
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--density", type=float, default=0.4, help="priority edge probability")
    p.add_argument("--total", action="store_true", help="emit a total priority")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    for name, default in (("max_linearisations", MAX_LINEARISATIONS), ("max_arguments", MAX_ARGUMENTS),
                          ("seed", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args, out)
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValidationError as exc:
        print("invalid theory:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, InputError, VocabularyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
