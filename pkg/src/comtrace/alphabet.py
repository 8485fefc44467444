"""Comtrace alphabets ``(E, sim, ser)`` and the step universe they generate."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import AlphabetError, ParseError, ResourceLimitError

EVENT_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

DEFAULT_MAX_STEPS = 2**16

Step = frozenset  # frozenset[str]; nonempty clique of sim


@dataclass(frozen=True)
class ComtraceAlphabet:
    """Events in a fixed order, with sim stored symmetric and ser ordered.

    Construct through :func:`build_alphabet`, which validates the relations.
    """

    events: tuple[str, ...]
    sim: frozenset[tuple[str, str]]
    ser: frozenset[tuple[str, str]]

    def index(self, event: str) -> int:
        return self._order[event]

    @property
    def _order(self) -> dict[str, int]:
        order = self.__dict__.get("_order_cache")
        if order is None:
            order = {e: i for i, e in enumerate(self.events)}
            object.__setattr__(self, "_order_cache", order)
        return order

    def __contains__(self, event: object) -> bool:
        return event in self._order

    def sorted_events(self, events: Iterable[str]) -> list[str]:
        """Events in alphabet order."""
        return sorted(events, key=self.index)

    def step_key(self, step: Iterable[str]) -> tuple[int, ...]:
        return tuple(sorted(self.index(e) for e in step))

    def in_sim(self, a: str, b: str) -> bool:
        return (a, b) in self.sim

    def in_ser(self, a: str, b: str) -> bool:
        return (a, b) in self.ser

    def to_text(self) -> str:
        lines = ["events " + " ".join(self.events)]
        for a, b in sorted(self.sim, key=lambda p: (self.index(p[0]), self.index(p[1]))):
            if self.index(a) < self.index(b):
                lines.append(f"sim {a} {b}")
        for a, b in sorted(self.ser, key=lambda p: (self.index(p[0]), self.index(p[1]))):
            lines.append(f"ser {a} {b}")
        return "\n".join(lines) + "\n"


def build_alphabet(events, sim_pairs=(), ser_pairs=()) -> ComtraceAlphabet:
    """Validate and build an alphabet.

    ``sim_pairs`` may list each unordered pair in either or both directions;
    it is closed symmetrically. Every ``ser`` pair must lie in that closure.
    """
    events = tuple(events)
    seen = set()
    for e in events:
        if not isinstance(e, str) or not EVENT_RE.match(e):
            raise AlphabetError(f"invalid event name {e!r}")
        if e in seen:
            raise AlphabetError(f"duplicate event {e!r}")
        seen.add(e)

    def check_known(pair, kind):
        for e in pair:
            if e not in seen:
                raise AlphabetError(f"{kind} pair {pair!r} names unknown event {e!r}")

    sim = set()
    for a, b in sim_pairs:
        check_known((a, b), "sim")
        if a == b:
            raise AlphabetError(f"sim pair {(a, b)!r} is reflexive")
        sim.add((a, b))
        sim.add((b, a))
    ser = set()
    for a, b in ser_pairs:
        check_known((a, b), "ser")
        if (a, b) not in sim:
            raise AlphabetError(f"ser pair {(a, b)!r} is not in sim")
        ser.add((a, b))
    return ComtraceAlphabet(events, frozenset(sim), frozenset(ser))


def is_step(theta: ComtraceAlphabet, members: Iterable[str]) -> bool:
    members = list(members)
    for e in members:
        if e not in theta:
            raise AlphabetError(f"unknown event {e!r}")
    if not members:
        return False
    return all(theta.in_sim(a, b) for a, b in itertools.combinations(set(members), 2))


def steps(theta: ComtraceAlphabet, max_steps: int = DEFAULT_MAX_STEPS) -> list[Step]:
    """All nonempty cliques of ``(E, sim)``, by size then alphabet order.

    Cliques are grown from smaller ones, so only cliques are ever visited.
    """
    layer = [(i,) for i in range(len(theta.events))]
    found: list[tuple[int, ...]] = []
    ev = theta.events
    while layer:
        found.extend(layer)
        if len(found) > max_steps:
            raise ResourceLimitError(f"more than {max_steps} steps")
        nxt = []
        for clique in layer:
            for j in range(clique[-1] + 1, len(ev)):
                if all(theta.in_sim(ev[i], ev[j]) for i in clique):
                    nxt.append(clique + (j,))
        layer = nxt
    return [frozenset(ev[i] for i in c) for c in found]


def parse_alphabet(text: str) -> ComtraceAlphabet:
    """Parse the line format: ``events a b c``, ``sim x y``, ``ser x y``."""
    events = None
    sim, ser = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if head == "events":
            if events is not None:
                raise ParseError("duplicate 'events' line", f"line {lineno}")
            events = args
        elif head in ("sim", "ser"):
            if len(args) != 2:
                raise ParseError(f"'{head}' takes exactly two events", f"line {lineno}")
            (sim if head == "sim" else ser).append(tuple(args))
        else:
            raise ParseError(f"unknown directive {head!r}", f"line {lineno}")
    if events is None:
        raise ParseError("missing 'events' line")
    return build_alphabet(events, sim, ser)
