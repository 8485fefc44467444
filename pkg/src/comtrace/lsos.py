"""Labeled so-structures: ⊏-cycle classes, quotients, the lsos-comtrace
conditions LC1-LC5, canonical enumeration, lp-isomorphism and composition."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .alphabet import ComtraceAlphabet
from .errors import AlphabetError, InvalidStructureError, ResourceLimitError
from .graphs import strongly_connected_components
from .relations import (
    PASS,
    LabeledStructure,
    RelationalStructure,
    SoStructure,
    Verdict,
    check_so_axioms,
    covering,
    diamond_closure,
    is_extension_pair,
    node_key,
)
from .sequences import Occurrence, StratifiedOrder

MAX_CLASS_SIZE = 12


class LabeledSoStructure(LabeledStructure):
    """``(X, ≺, ⊏, λ)`` whose relational part passes S1-S4."""

    def __init__(self, structure: RelationalStructure, labels):
        super().__init__(SoStructure.of(structure), labels)

    @property
    def prec(self) -> frozenset:
        return self.structure.r1

    @property
    def weak(self) -> frozenset:
        return self.structure.r2


EMPTY = LabeledSoStructure(RelationalStructure(()), {})


def _structure(t) -> RelationalStructure:
    return t.structure if isinstance(t, LabeledStructure) else t


def cycle_classes(s) -> list[frozenset]:
    """The ``≡_⊏`` classes, i.e. SCCs of ``(X, ⊏)``, sorted by least member."""
    s = _structure(s)
    succ = {x: [] for x in s.universe}
    for x, y in s.r2:
        succ[x].append(y)
    for x in succ:
        succ[x].sort(key=node_key)
    comps = strongly_connected_components(s.universe, succ.__getitem__)
    return sorted(comps, key=lambda c: min(node_key(x) for x in c))


@dataclass(frozen=True)
class QuotientSoStructure:
    """``S/≡_⊏``: classes as nodes, with ``≺̂`` and ``⊏̂`` as ``structure.r1/r2``."""

    structure: SoStructure
    class_labels: dict

    @property
    def classes(self) -> tuple:
        return self.structure.universe

    @property
    def prec(self) -> frozenset:
        return self.structure.r1

    @property
    def weak(self) -> frozenset:
        return self.structure.r2


def quotient(t) -> QuotientSoStructure:
    s = _structure(t)
    classes = cycle_classes(s)
    of = {x: c for c in classes for x in c}
    prec = {(of[x], of[y]) for x, y in s.r1}
    weak = {(of[x], of[y]) for x, y in s.r2 if of[x] != of[y]}
    labels = t.labels if isinstance(t, LabeledStructure) else None
    class_labels = (
        {c: frozenset(labels[x] for x in c) for c in classes} if labels is not None else {}
    )
    return QuotientSoStructure(SoStructure(classes, prec, weak), class_labels)


def _subset_product_in_ser(theta, left, right) -> bool:
    return all(theta.in_ser(a, b) for a in left for b in right)


def validate_lsos(t: LabeledStructure, theta: ComtraceAlphabet) -> Verdict:
    """PASS, or the first failure among labels, S1-S4 and LC1-LC5."""
    for x in t.universe:
        if t.labels[x] not in theta:
            return Verdict(False, "labels", (x,), f"label {t.labels[x]!r} not in the alphabet")
    verdict = check_so_axioms(_structure(t))
    if not verdict:
        return verdict
    lab = t.labels
    q = quotient(t)
    cover = sorted(covering(q.weak, q.classes), key=node_key)
    for a, b in cover:
        if (a, b) in q.prec and _subset_product_in_ser(theta, q.class_labels[a], q.class_labels[b]):
            return Verdict(False, "LC1", (a, b), "causal cover with serializable labels")
    for a, b in cover:
        if (a, b) not in q.prec and _subset_product_in_ser(
            theta, q.class_labels[b], q.class_labels[a]
        ):
            return Verdict(False, "LC2", (a, b), "weak cover with reverse-serializable labels")
    for c in q.classes:
        if len(c) > MAX_CLASS_SIZE:
            raise ResourceLimitError(f"cycle class of size {len(c)} exceeds {MAX_CLASS_SIZE}")
        members = sorted(c, key=node_key)
        for r in range(1, len(members) + 1):
            for left in itertools.combinations(members, r):
                rest = [x for x in members if x not in left]
                for k in range(len(left) + 1):
                    for extra in itertools.combinations(left, k):
                        right = rest + list(extra)
                        if not right:
                            continue
                        if _subset_product_in_ser(
                            theta, {lab[x] for x in left}, {lab[x] for x in right}
                        ):
                            return Verdict(
                                False, "LC3", (frozenset(left), frozenset(right)),
                                "cycle class splits serializably",
                            )
    pairs = list(itertools.permutations(t.universe, 2))
    prec, weak = t.r1, t.r2
    for x, y in pairs:
        if not theta.in_ser(lab[x], lab[y]) and (x, y) not in prec and (y, x) not in weak:
            return Verdict(False, "LC4", (x, y), "non-serializable pair is unordered")
    for x, y in pairs:
        if not theta.in_sim(lab[x], lab[y]) and (x, y) not in prec and (y, x) not in prec:
            return Verdict(False, "LC5", (x, y), "non-simultaneous pair is not causal")
    return PASS


def some_extension(t) -> StratifiedOrder:
    """One stratified extension: ⊏-cycle classes as blocks in a topological
    order of ``⊏̂`` (ties broken by least member)."""
    q = quotient(t)
    indeg = {c: 0 for c in q.classes}
    succ = {c: [] for c in q.classes}
    for a, b in q.weak:
        indeg[b] += 1
        succ[a].append(b)
    ready = sorted((c for c in q.classes if not indeg[c]), key=node_key)
    blocks = []
    while ready:
        c = ready.pop(0)
        blocks.append(c)
        for d in succ[c]:
            indeg[d] -= 1
            if not indeg[d]:
                ready.append(d)
        ready.sort(key=node_key)
    return StratifiedOrder(tuple(blocks))


def canonicalize(t: LabeledStructure, extension: StratifiedOrder | None = None,
                 theta: ComtraceAlphabet | None = None):
    """Enumerated copy of ``t`` over event occurrences, and the map ``ξ``.

    ``ξ`` sends ``e(j)`` in block ``i`` of ``map(λ, Ω_⊲)`` to the element of
    block ``i`` labelled ``e``. Returns ``(T0, xi)`` with ``xi`` a dict from
    occurrences to nodes of ``t``.
    """
    if theta is not None:
        verdict = validate_lsos(t, theta)
        if not verdict:
            raise InvalidStructureError(f"not an lsos-comtrace: {verdict}", verdict)
    if extension is None:
        extension = some_extension(t)
    elif not is_extension_pair(_structure(t), extension):
        raise InvalidStructureError("order is not a stratified extension of the structure")
    seen: Counter = Counter()
    xi = {}
    for block in extension.blocks:
        block_labels = [t.labels[x] for x in block]
        if len(set(block_labels)) != len(block_labels):
            raise InvalidStructureError("an extension step repeats a label")
        for x in sorted(block, key=node_key):
            e = t.labels[x]
            seen[e] += 1
            xi[Occurrence(e, seen[e])] = x
    back = {x: o for o, x in xi.items()}
    s = _structure(t)
    t0 = LabeledSoStructure(
        RelationalStructure(
            xi,
            [(back[x], back[y]) for x, y in s.r1],
            [(back[x], back[y]) for x, y in s.r2],
        ),
        {o: o.event for o in xi},
    )
    return t0, xi


def labels_chained(t: LabeledStructure) -> bool:
    """True iff equally-labelled distinct elements are always ≺-comparable."""
    prec = t.r1
    return all(
        (x, y) in prec or (y, x) in prec
        for x, y in itertools.combinations(t.universe, 2)
        if t.labels[x] == t.labels[y]
    )


def canonical_form(t: LabeledStructure) -> LabeledSoStructure:
    return canonicalize(t)[0]


def lp_isomorphic(t1: LabeledStructure, t2: LabeledStructure) -> bool:
    if Counter(t1.labels.values()) != Counter(t2.labels.values()):
        return False
    if (
        is_so(t1) and is_so(t2) and labels_chained(t1) and labels_chained(t2)
    ):
        return canonical_form(t1) == canonical_form(t2)
    from .oracle import brute_lp_isomorphic

    return brute_lp_isomorphic(t1, t2)


def is_so(t) -> bool:
    return check_so_axioms(_structure(t)).ok


def _check_labels(t, theta):
    for e in t.labels.values():
        if e not in theta:
            raise AlphabetError(f"label {e!r} is not an event of the alphabet")


def shift_occurrences(t: LabeledStructure, offset: Counter) -> LabeledStructure:
    """Rename ``e(j)`` to ``e(j + offset[e])``."""
    return t.rename(lambda o: Occurrence(o.event, o.index + offset[o.event]))


def disjoint_union(t1: LabeledStructure, t2: LabeledStructure):
    """Canonical forms of ``t1`` and ``t2``, with ``t2``'s occurrence indices
    offset past ``t1``'s so the universes are disjoint."""
    c1, c2 = canonical_form(t1), canonical_form(t2)
    offset = Counter(c1.labels.values())
    return c1, shift_occurrences(c2, offset)


def cross_pairs(x1, x2, labels, theta: ComtraceAlphabet):
    """Cross pairs added by composition: ``(causal, weak)`` subsets of ``X1 × X2``."""
    causal = [(a, b) for a in x1 for b in x2 if not theta.in_ser(labels[a], labels[b])]
    weak = [(a, b) for a in x1 for b in x2 if not theta.in_ser(labels[b], labels[a])]
    return causal, weak


def compose_lsos(t1: LabeledStructure, t2: LabeledStructure,
                 theta: ComtraceAlphabet) -> LabeledSoStructure:
    """``T1 ⊙ T2``: disjoint union plus label-driven cross pairs, ◊-closed."""
    _check_labels(t1, theta)
    _check_labels(t2, theta)
    c1, c2 = disjoint_union(t1, t2)
    labels = {**c1.labels, **c2.labels}
    causal, weak = cross_pairs(c1.universe, c2.universe, labels, theta)
    union = RelationalStructure(
        labels,
        set(c1.r1) | set(c2.r1) | set(causal),
        set(c1.r2) | set(c2.r2) | set(weak),
    )
    return LabeledSoStructure(diamond_closure(union), labels)
