"""``comtrace`` command-line interface."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import convert
from .alphabet import parse_alphabet, steps
from .cdgraph import validate_cdgraph
from .errors import ComtraceError, ResourceLimitError
from .formats import export_dot, format_structure, parse_structure_file
from .lsos import quotient, validate_lsos
from .monoid import DEFAULT_MAX_MEMBERS, comtrace, concat, equivalent, sequence_key
from .relations import DEFAULT_MAX_EXT_SIZE, format_node, node_key, stratified_extensions
from .sequences import (
    format_blocks,
    format_step,
    format_step_sequence,
    parse_step_sequence,
    sequence_of_order,
)

EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", required=True, metavar="FILE", help="alphabet file")
    common.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    common.add_argument("--max-members", type=int, default=DEFAULT_MAX_MEMBERS, metavar="N")
    common.add_argument("--max-ext", type=int, default=DEFAULT_MAX_EXT_SIZE, metavar="N",
                        help="largest universe for extension enumeration")

    parser = argparse.ArgumentParser(prog="comtrace", description="Combined trace toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("steps", parents=[common], help="list the steps of the alphabet")
    for name, args, text in [
        ("expand", ["U"], "list all members of [U]"),
        ("equiv", ["U", "V"], "exit 0 iff U and V are congruent"),
        ("to-sos", ["U"], "the lsos-comtrace of [U]"),
        ("to-cdg", ["U"], "the cd-graph of [U]"),
        ("quotient", ["U"], "the quotient of the so-structure of [U]"),
        ("extensions", ["U"], "stratified extensions of the so-structure of [U]"),
        ("compose", ["U", "V"], "canonical member of [U][V]"),
        ("validate-lsos", ["FILE"], "check LC1-LC5 for a structure file"),
        ("validate-cdg", ["FILE"], "check CD1-CD4 for a structure file"),
    ]:
        p = sub.add_parser(name, parents=[common], help=text)
        for a in args:
            p.add_argument(a)
    return parser


def _run(args, out) -> int:
    theta = parse_alphabet(Path(args.alphabet).read_text(encoding="utf-8"))
    cmd = args.command

    def seq(text):
        return parse_step_sequence(text, theta)

    if cmd == "steps":
        for s in steps(theta):
            print(format_step(s, theta), file=out)
        return 0
    if cmd == "expand":
        print(comtrace(seq(args.U), theta, args.max_members).format(), file=out)
        return 0
    if cmd == "equiv":
        same = equivalent(seq(args.U), seq(args.V), theta)
        print("equivalent" if same else "not equivalent", file=out)
        return 0 if same else 1
    if cmd == "compose":
        r = comtrace(seq(args.U), theta, args.max_members)
        t = comtrace(seq(args.V), theta, args.max_members)
        print(format_step_sequence(concat(r, t, args.max_members).canonical, theta), file=out)
        return 0
    if cmd in ("to-sos", "to-cdg", "quotient", "extensions"):
        u = seq(args.U)
        t = comtrace(u, theta, args.max_members)
        if cmd == "to-cdg":
            d = convert.ct2dep(t)
            out.write(export_dot(d, theta) if args.dot else format_structure(d))
            return 0
        lsos = convert.ct2lct(t)
        if cmd == "to-sos":
            out.write(export_dot(lsos, theta) if args.dot else format_structure(lsos))
        elif cmd == "quotient":
            q = quotient(lsos)
            if args.dot:
                out.write(export_dot(q, theta))
            else:
                for c in q.classes:
                    labels = ",".join(theta.sorted_events(q.class_labels[c]))
                    print(f"class {format_node(c)} {labels}", file=out)
                for word, rel in (("prec", q.prec), ("weak", q.weak)):
                    for a, b in sorted(rel, key=node_key):
                        print(f"{word} {format_node(a)} {format_node(b)}", file=out)
        else:
            exts = stratified_extensions(lsos.structure, args.max_ext)
            for e in sorted(exts, key=lambda e: sequence_key(theta, sequence_of_order(e))):
                print(format_blocks(e.blocks, theta), file=out)
        return 0
    if cmd in ("validate-lsos", "validate-cdg"):
        kind = "lsos" if cmd == "validate-lsos" else "cdg"
        structure = parse_structure_file(args.FILE, kind)
        check = validate_lsos if kind == "lsos" else validate_cdgraph
        verdict = check(structure, theta)
        print(str(verdict), file=out)
        return 0 if verdict else 1
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, sys.stdout)
    except ResourceLimitError as exc:
        print(f"comtrace: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ComtraceError, OSError) as exc:
        print(f"comtrace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
