"""The comtrace congruence, comtrace expansion and concatenation, and the
so-structure a step sequence induces."""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable

from .alphabet import ComtraceAlphabet, Step, is_step
from .errors import AlphabetError, ResourceLimitError
from .relations import RelationalStructure, SoStructure, diamond_closure
from .sequences import (
    StepSequence,
    enumerate_occurrences,
    format_step_sequence,
    occurrence_counts,
)

DEFAULT_MAX_MEMBERS = 10**5


def sequence_key(theta: ComtraceAlphabet, t) -> tuple:
    """Sort key for step sequences: step by step, larger steps first, then
    by the alphabet positions of their events."""
    return tuple((-len(a), theta.step_key(a)) for a in t)


def check_sequence(t, theta: ComtraceAlphabet) -> StepSequence:
    t = tuple(frozenset(a) for a in t)
    for a in t:
        if not is_step(theta, a):
            raise AlphabetError(f"{sorted(a)} is not a step of the alphabet")
    return t


class Comtrace:
    """A finite ≡-class of step sequences together with its least member."""

    def __init__(self, alphabet: ComtraceAlphabet, members: Iterable):
        members = frozenset(tuple(frozenset(a) for a in m) for m in members)
        if not members:
            raise ValueError("a comtrace has at least one member")
        self.alphabet = alphabet
        self.members = members
        self.canonical = min(members, key=lambda m: sequence_key(alphabet, m))

    def sorted_members(self) -> list[StepSequence]:
        """Canonical member first, the rest in increasing key order."""
        return sorted(self.members, key=lambda m: sequence_key(self.alphabet, m))

    def __len__(self):
        return len(self.members)

    def __contains__(self, t):
        return tuple(frozenset(a) for a in t) in self.members

    def __iter__(self):
        return iter(self.sorted_members())

    def __eq__(self, other):
        if not isinstance(other, Comtrace):
            return NotImplemented
        return self.alphabet == other.alphabet and self.members == other.members

    def __hash__(self):
        return hash((self.alphabet, self.members))

    def __repr__(self):
        return f"Comtrace([{format_step_sequence(self.canonical, self.alphabet)}], {len(self)} members)"

    def format(self) -> str:
        lines = []
        for m in self.sorted_members():
            prefix = "* " if m == self.canonical else "  "
            lines.append(prefix + format_step_sequence(m, self.alphabet))
        return "\n".join(lines)


def _splits(step: Step, theta: ComtraceAlphabet):
    """Ordered pairs ``(B, C)`` with ``B ∪ C = step`` and ``B × C ⊆ ser``."""
    items = theta.sorted_events(step)
    for r in range(1, len(items)):
        for b in itertools.combinations(items, r):
            c = [e for e in items if e not in b]
            if all(theta.in_ser(x, y) for x in b for y in c):
                yield frozenset(b), frozenset(c)


def rewrite_neighbors(u, theta: ComtraceAlphabet) -> set[StepSequence]:
    """Sequences one split (``A → BC``) or one merge (``BC → A``) away from ``u``."""
    u = tuple(u)
    out = set()
    for i, a in enumerate(u):
        for b, c in _splits(a, theta):
            out.add(u[:i] + (b, c) + u[i + 1 :])
    for i in range(len(u) - 1):
        b, c = u[i], u[i + 1]
        if all(theta.in_ser(x, y) for x in b for y in c):
            merged = b | c
            if is_step(theta, merged):
                out.add(u[:i] + (merged,) + u[i + 2 :])
    return out


def comtrace(u, theta: ComtraceAlphabet, max_members: int = DEFAULT_MAX_MEMBERS) -> Comtrace:
    """``[u]``: the staged closure ``D⁰(u) ⊆ D¹(u) ⊆ …`` until it stops growing."""
    u = check_sequence(u, theta)
    seen = {u}
    frontier = [u]
    while frontier:
        nxt = []
        for v in frontier:
            for w in rewrite_neighbors(v, theta):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > max_members:
                        raise ResourceLimitError(f"comtrace has more than {max_members} members")
        frontier = nxt
    return Comtrace(theta, seen)


def induced_relations(u, theta: ComtraceAlphabet) -> RelationalStructure:
    """``(Σ_u, ≺_u, ⊏_u)``, the pairwise causality read off one sequence."""
    enum = enumerate_occurrences(u)
    pos = enum.pos
    prec, weak = [], []
    for x, y in itertools.permutations(pos, 2):
        if pos[x] < pos[y] and not theta.in_ser(x.event, y.event):
            prec.append((x, y))
        if pos[x] <= pos[y] and not theta.in_ser(y.event, x.event):
            weak.append((x, y))
    return RelationalStructure(pos, prec, weak)


def comtrace_sos(u, theta: ComtraceAlphabet) -> SoStructure:
    """``S_[u] = (Σ_u, ≺_u, ⊏_u)◊``."""
    closed = diamond_closure(induced_relations(u, theta))
    return SoStructure.of(closed)


def equivalent(u, t, theta: ComtraceAlphabet) -> bool:
    """``u ≡ t``, decided by comparing the induced dependency structures."""
    u = check_sequence(u, theta)
    t = check_sequence(t, theta)
    if occurrence_counts(u) != occurrence_counts(t):
        return False
    return induced_relations(u, theta) == induced_relations(t, theta)


def concat(s: Comtrace, t: Comtrace, max_members: int = DEFAULT_MAX_MEMBERS) -> Comtrace:
    """``[r] ⊛ [t] = [r t]``."""
    if s.alphabet != t.alphabet:
        raise AlphabetError("cannot concatenate comtraces over different alphabets")
    return comtrace(s.canonical + t.canonical, s.alphabet, max_members)


def identity(theta: ComtraceAlphabet) -> Comtrace:
    return Comtrace(theta, [()])
