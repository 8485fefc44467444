"""Text formats for labeled structures, and DOT export."""

from __future__ import annotations

from pathlib import Path

from .cdgraph import CdGraph
from .errors import InvalidStructureError, ParseError
from .lsos import LabeledSoStructure, QuotientSoStructure
from .relations import LabeledStructure, RelationalStructure, format_node, node_key

_EDGE_KINDS = {"prec": "lsos", "weak": "lsos", "solid": "cdg", "dashed": "cdg"}


def format_structure(t: LabeledStructure) -> str:
    """``node``/``prec``/``weak`` lines, or ``solid``/``dashed`` for cd-graphs."""
    first, second = ("solid", "dashed") if isinstance(t, CdGraph) else ("prec", "weak")
    lines = [f"node {format_node(x)} {t.labels[x]}" for x in t.universe]
    for word, rel in ((first, t.r1), (second, t.r2)):
        for x, y in sorted(rel, key=node_key):
            lines.append(f"{word} {format_node(x)} {format_node(y)}")
    return "\n".join(lines) + "\n"


def parse_structure_text(text: str, kind: str | None = None):
    """Parse a structure file. ``kind`` is ``"lsos"``, ``"cdg"`` or None to
    infer it from the edge directives (node-only files are lsos)."""
    nodes: dict[str, str] = {}
    edges = {"prec": [], "weak": [], "solid": [], "dashed": []}
    seen_kind = kind
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        where = f"line {lineno}"
        if head == "node":
            if len(args) != 2:
                raise ParseError("'node' takes an id and an event", where)
            if args[0] in nodes:
                raise ParseError(f"duplicate node {args[0]!r}", where)
            nodes[args[0]] = args[1]
        elif head in _EDGE_KINDS:
            if seen_kind is not None and _EDGE_KINDS[head] != seen_kind:
                raise ParseError(f"'{head}' is not allowed in a {seen_kind} file", where)
            seen_kind = _EDGE_KINDS[head]
            if len(args) != 2:
                raise ParseError(f"'{head}' takes two node ids", where)
            for a in args:
                if a not in nodes:
                    raise ParseError(f"unknown node {a!r}", where)
            if args[0] == args[1]:
                raise ParseError(f"reflexive pair {args[0]} {args[1]}", where)
            edges[head].append(tuple(args))
        else:
            raise ParseError(f"unknown directive {head!r}", where)
    if (seen_kind or "lsos") == "cdg":
        return CdGraph(RelationalStructure(nodes, edges["solid"], edges["dashed"]), nodes)
    structure = RelationalStructure(nodes, edges["prec"], edges["weak"])
    try:
        return LabeledSoStructure(structure, nodes)
    except InvalidStructureError as exc:
        raise InvalidStructureError(f"structure file: {exc}", exc.verdict) from None


def parse_structure_file(path, kind: str | None = None):
    return parse_structure_text(Path(path).read_text(encoding="utf-8"), kind)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _label_set(labels, theta) -> str:
    names = theta.sorted_events(labels) if theta is not None else sorted(labels)
    return ",".join(names)


def export_dot(obj, theta=None, name: str | None = None) -> str:
    """DOT digraph: solid edges for ≺ (or →), dashed for ⊏∖≺ (or ⇢∖→)."""
    if isinstance(obj, QuotientSoStructure):
        s = obj.structure
        node_labels = {c: _label_set(obj.class_labels.get(c, ()), theta) for c in s.universe}
        graph = name or "quotient"
    elif isinstance(obj, LabeledStructure):
        s = obj.structure
        node_labels = {x: str(x) if hasattr(x, "event") else f"{x}:{obj.labels[x]}"
                       for x in s.universe}
        graph = name or ("cdgraph" if isinstance(obj, CdGraph) else "lsos")
    elif isinstance(obj, RelationalStructure):
        s = obj
        node_labels = {x: format_node(x) for x in s.universe}
        graph = name or "sos"
    else:
        raise TypeError(f"cannot export {type(obj).__name__} to DOT")
    lines = [f"digraph {graph} {{"]
    for x in s.universe:
        lines.append(f"  {_quote(format_node(x))} [label={_quote(node_labels[x])}];")
    for x, y in sorted(s.r1, key=node_key):
        lines.append(f"  {_quote(format_node(x))} -> {_quote(format_node(y))};")
    for x, y in sorted(s.r2 - s.r1, key=node_key):
        lines.append(f"  {_quote(format_node(x))} -> {_quote(format_node(y))} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
