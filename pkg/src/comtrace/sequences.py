"""Step sequences, their occurrence-numbered form, and stratified orders."""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .alphabet import ComtraceAlphabet, Step, is_step
from .errors import AlphabetError, InvalidStructureError, ParseError

StepSequence = tuple  # tuple[Step, ...]; () is the empty sequence

EMPTY_TEXT = "(empty)"


@dataclass(frozen=True, order=True, repr=False)
class Occurrence:
    """The ``index``-th occurrence of ``event`` (1-based)."""

    event: str
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"occurrence index must be >= 1, got {self.index}")

    def __str__(self):
        return f"{self.event}({self.index})"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "Occurrence":
        m = re.fullmatch(r"([a-z][a-z0-9_]*)\((\d+)\)", text)
        if not m:
            raise ParseError(f"not an occurrence: {text!r}")
        return cls(m.group(1), int(m.group(2)))


def label(occ: Occurrence) -> str:
    return occ.event


@dataclass(frozen=True)
class EnumeratedStepSequence:
    steps: tuple[frozenset[Occurrence], ...]
    pos: dict = field(compare=False, hash=False, repr=False)

    @property
    def occurrences(self) -> frozenset[Occurrence]:
        return frozenset(self.pos)

    def label(self, occ: Occurrence) -> str:
        return occ.event

    def labels(self) -> StepSequence:
        return tuple(frozenset(o.event for o in block) for block in self.steps)

    def count(self, event: str) -> int:
        return sum(1 for o in self.pos if o.event == event)


def enumerate_occurrences(t: Iterable[Iterable[str]]) -> EnumeratedStepSequence:
    seen: Counter = Counter()
    blocks = []
    pos = {}
    for i, step in enumerate(t, 1):
        block = []
        for e in step:
            seen[e] += 1
            occ = Occurrence(e, seen[e])
            block.append(occ)
            pos[occ] = i
        blocks.append(frozenset(block))
    return EnumeratedStepSequence(tuple(blocks), pos)


@dataclass(frozen=True)
class StratifiedOrder:
    """A stratified order given by its sequence of incomparability blocks."""

    blocks: tuple[frozenset, ...]

    def __post_init__(self):
        seen = set()
        for b in self.blocks:
            if not b:
                raise InvalidStructureError("stratified order has an empty block")
            if seen & b:
                raise InvalidStructureError("stratified order blocks overlap")
            seen |= b

    @property
    def universe(self) -> frozenset:
        return frozenset().union(*self.blocks)

    def position(self) -> dict:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def relation(self) -> frozenset:
        """The strict order: pairs in strictly earlier/later blocks."""
        return frozenset(
            (x, y)
            for i, j in itertools.combinations(range(len(self.blocks)), 2)
            for x in self.blocks[i]
            for y in self.blocks[j]
        )

    def not_greater(self) -> frozenset:
        """``⊲ ∪ ⌢``: distinct pairs whose first element is not in a later block."""
        pos = self.position()
        return frozenset((x, y) for x in pos for y in pos if x != y and pos[x] <= pos[y])

    @classmethod
    def from_relation(cls, universe, pairs) -> "StratifiedOrder":
        """Recover the block form of a strict order, checking it is stratified."""
        universe = list(universe)
        rel = set(pairs)
        uset = set(universe)
        for x, y in rel:
            if x not in uset or y not in uset:
                raise InvalidStructureError(f"pair {(x, y)!r} leaves the universe")
            if x == y:
                raise InvalidStructureError(f"relation is reflexive at {x!r}", (x, x, x))
        for x, y in rel:
            for z in universe:
                if (y, z) in rel and (x, z) not in rel:
                    raise InvalidStructureError(
                        f"relation is not transitive: {(x, y, z)!r}", (x, y, z)
                    )

        def incomparable(a, b):
            return (a, b) not in rel and (b, a) not in rel

        for x, y, z in itertools.permutations(universe, 3):
            if incomparable(x, y) and incomparable(y, z) and not incomparable(x, z):
                raise InvalidStructureError(
                    f"incomparability is not transitive: {(x, y, z)!r}", (x, y, z)
                )
        below = {x: sum(1 for y in universe if (y, x) in rel) for x in universe}
        groups: dict[int, set] = {}
        for x in universe:
            groups.setdefault(below[x], set()).add(x)
        return cls(tuple(frozenset(groups[k]) for k in sorted(groups)))


def order_of_sequence(t) -> StratifiedOrder:
    return StratifiedOrder(enumerate_occurrences(t).steps)


def sequence_of_order(order: StratifiedOrder, labelling=label) -> StepSequence:
    """``map(labelling, Ω)``: the label-level step sequence of the blocks."""
    return tuple(frozenset(labelling(x) for x in b) for b in order.blocks)


def occurrence_counts(t) -> Counter:
    return Counter(e for step in t for e in step)


_NAME = re.compile(r"[a-z][a-z0-9_]*")


def parse_step_sequence(text: str, theta: ComtraceAlphabet) -> StepSequence:
    """Parse ``{a}{b,c}``-style text; every group must be a step of ``theta``.

    Whitespace is ignored. The empty string and ``(empty)`` both denote ε.
    """
    if text.strip() == EMPTY_TEXT:
        return ()
    result = []
    i, n = 0, len(text)

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    while True:
        i = skip_ws(i)
        if i >= n:
            return tuple(result)
        if text[i] != "{":
            raise ParseError(f"expected '{{', got {text[i]!r}", i)
        brace = i
        group: list[str] = []
        i += 1
        while True:
            i = skip_ws(i)
            m = _NAME.match(text, i)
            if not m:
                got = repr(text[i]) if i < n else "end of input"
                raise ParseError(f"expected event name, got {got}", i)
            name = m.group()
            if name not in theta:
                raise AlphabetError(f"unknown event {name!r} (at {i})")
            if name in group:
                raise ParseError(f"event {name!r} repeated in one step", i)
            group.append(name)
            i = skip_ws(m.end())
            if i < n and text[i] == ",":
                i += 1
                continue
            if i < n and text[i] == "}":
                i += 1
                break
            got = repr(text[i]) if i < n else "end of input"
            raise ParseError(f"expected ',' or '}}', got {got}", i)
        if not is_step(theta, group):
            raise AlphabetError(
                "{" + ",".join(group) + f"}} is not a step of the alphabet (at {brace})"
            )
        result.append(frozenset(group))


def format_step(step, theta: ComtraceAlphabet | None = None) -> str:
    names = theta.sorted_events(step) if theta is not None else sorted(step)
    return "{" + ",".join(names) + "}"


def format_step_sequence(t, theta: ComtraceAlphabet | None = None) -> str:
    if not t:
        return EMPTY_TEXT
    return "".join(format_step(s, theta) for s in t)


def format_blocks(blocks, theta: ComtraceAlphabet | None = None) -> str:
    """Render occurrence blocks as ``{a(1),b(1)}{b(2)}``."""
    if not blocks:
        return EMPTY_TEXT
    key = (lambda o: (theta.index(o.event), o.index)) if theta else None
    return "".join("{" + ",".join(str(o) for o in sorted(b, key=key)) + "}" for b in blocks)


def format_enumerated(e: EnumeratedStepSequence, theta: ComtraceAlphabet | None = None) -> str:
    return format_blocks(e.steps, theta)
