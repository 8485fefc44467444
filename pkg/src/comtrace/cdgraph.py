"""Combined dependency graphs ``(X, →, ⇢, λ)``."""

from __future__ import annotations

import itertools
from collections import Counter

from .alphabet import ComtraceAlphabet
from .graphs import strongly_connected_components
from .lsos import _check_labels, canonicalize, cross_pairs, shift_occurrences
from .relations import (
    PASS,
    LabeledStructure,
    RelationalStructure,
    Verdict,
    check_so_axioms,
    diamond_closure,
    node_key,
)


class CdGraph(LabeledStructure):
    """Solid edges ``→`` are ``r1``; dashed edges ``⇢`` are ``r2``."""

    @property
    def solid(self) -> frozenset:
        return self.structure.r1

    @property
    def dashed(self) -> frozenset:
        return self.structure.r2


EMPTY = CdGraph(RelationalStructure(()), {})


def validate_cdgraph(d: LabeledStructure, theta: ComtraceAlphabet) -> Verdict:
    """PASS, or the first failure: labels, reflexive edge, closure axioms, CD1-CD4."""
    lab = d.labels
    for x in d.universe:
        if lab[x] not in theta:
            return Verdict(False, "labels", (x,), f"label {lab[x]!r} not in the alphabet")
    for kind, rel in (("solid", d.r1), ("dashed", d.r2)):
        for x in sorted({a for a, b in rel if a == b}, key=node_key):
            return Verdict(False, "irreflexive", (x,), f"reflexive {kind} edge")
    verdict = check_so_axioms(diamond_closure(d.structure))
    if not verdict:
        return Verdict(False, "closure", verdict.witness, f"◊-closure fails {verdict.rule}")
    solid, dashed = d.r1, d.r2
    pairs = list(itertools.permutations(d.universe, 2))
    for x, y in pairs:
        if not theta.in_sim(lab[x], lab[y]) and (x, y) not in solid and (y, x) not in solid:
            return Verdict(False, "CD1", (x, y), "non-simultaneous pair without solid edge")
    for x, y in pairs:
        if not theta.in_ser(lab[x], lab[y]) and (x, y) not in solid and (y, x) not in dashed:
            return Verdict(False, "CD2", (x, y), "non-serializable pair is unordered")
    for x, y in sorted(solid, key=node_key):
        if theta.in_ser(lab[x], lab[y]):
            return Verdict(False, "CD3", (x, y), "solid edge between serializable labels")
    for x, y in sorted(dashed, key=node_key):
        if theta.in_ser(lab[y], lab[x]):
            return Verdict(False, "CD4", (x, y), "dashed edge against reverse-serializable labels")
    return PASS


def non_serializable_sets(d: LabeledStructure) -> list[frozenset]:
    """SCCs of the dashed graph, sorted by least member."""
    succ = {x: [] for x in d.universe}
    for x, y in d.r2:
        succ[x].append(y)
    comps = strongly_connected_components(d.universe, succ.__getitem__)
    return sorted(comps, key=lambda c: min(node_key(x) for x in c))


def canonicalize_cdg(d: LabeledStructure) -> CdGraph:
    """Rename nodes to event occurrences via the ``ξ`` of the ◊-closure."""
    closed = LabeledStructure(diamond_closure(d.structure), d.labels)
    _, xi = canonicalize(closed)
    back = {x: o for o, x in xi.items()}
    return CdGraph(d.structure.rename(back), {o: o.event for o in xi})


def compose_cdg(d1: LabeledStructure, d2: LabeledStructure,
                theta: ComtraceAlphabet) -> CdGraph:
    """``D1 ⊚ D2``: disjoint union plus cross edges, without closure."""
    _check_labels(d1, theta)
    _check_labels(d2, theta)
    c1 = canonicalize_cdg(d1)
    c2 = shift_occurrences(canonicalize_cdg(d2), Counter(c1.labels.values()))
    labels = {**c1.labels, **c2.labels}
    solid, dashed = cross_pairs(c1.universe, c2.universe, labels, theta)
    return CdGraph(
        RelationalStructure(
            labels,
            set(c1.r1) | set(c2.r1) | set(solid),
            set(c1.r2) | set(c2.r2) | set(dashed),
        ),
        labels,
    )
