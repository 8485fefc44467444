"""Relational structures ``(X, R1, R2)``, the so-structure axioms, ◊-closure,
stratified extensions and their intersection.

Relations are held as dense boolean matrices over a sorted universe; the
pair-set views are derived on demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import InvalidStructureError, ResourceLimitError
from .sequences import Occurrence, StratifiedOrder

DEFAULT_MAX_EXT_SIZE = 9


def node_key(x):
    """Total sort key over the node kinds used in this package."""
    if isinstance(x, Occurrence):
        return (0, x.event, x.index)
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, (frozenset, set)):
        return (3, tuple(sorted(node_key(y) for y in x)))
    if isinstance(x, tuple):
        return (4, tuple(node_key(y) for y in x))
    return (5, repr(x))


def bool_compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def transitive_closure(m: np.ndarray) -> np.ndarray:
    """Irreflexive transitive closure R+ (Warshall)."""
    c = m.copy()
    for k in range(c.shape[0]):
        c |= np.outer(c[:, k], c[k, :])
    return c


def format_node(x) -> str:
    if isinstance(x, (frozenset, set)):
        return "{" + ",".join(format_node(y) for y in sorted(x, key=node_key)) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(format_node(y) for y in x) + ")"
    return str(x)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a validator: ok, or the first failed rule with a witness."""

    ok: bool
    rule: str | None = None
    witness: tuple = ()
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "PASS"
        wit = " ".join(format_node(w) for w in self.witness)
        text = f"FAIL {self.rule}"
        if wit:
            text += f": {wit}"
        if self.detail:
            text += f" ({self.detail})"
        return text


PASS = Verdict(True)


class RelationalStructure:
    """A finite triple ``(X, R1, R2)``.

    For so-structures ``R1`` is causality ``≺`` and ``R2`` weak causality
    ``⊏``; :attr:`prec` and :attr:`weak` are aliases. Equality ignores the
    internal universe ordering.
    """

    __slots__ = ("universe", "index", "m1", "m2", "__dict__")

    def __init__(self, universe: Iterable, r1=(), r2=()):
        self.universe = tuple(sorted(set(universe), key=node_key))
        self.index = {x: i for i, x in enumerate(self.universe)}
        n = len(self.universe)
        self.m1 = self._matrix(r1, n)
        self.m2 = self._matrix(r2, n)

    def _matrix(self, rel, n):
        if isinstance(rel, np.ndarray):
            m = rel.astype(bool, copy=True)
            if m.shape != (n, n):
                raise ValueError("relation matrix has the wrong shape")
        else:
            m = np.zeros((n, n), dtype=bool)
            for x, y in rel:
                try:
                    m[self.index[x], self.index[y]] = True
                except KeyError:
                    raise InvalidStructureError(f"pair {(x, y)!r} leaves the universe") from None
        m.setflags(write=False)
        return m

    @classmethod
    def from_matrices(cls, universe: tuple, m1: np.ndarray, m2: np.ndarray):
        """Build from matrices aligned with an already sorted ``universe``."""
        obj = cls.__new__(cls)
        obj.universe = universe
        obj.index = {x: i for i, x in enumerate(universe)}
        obj.m1 = m1.astype(bool, copy=True)
        obj.m2 = m2.astype(bool, copy=True)
        obj.m1.setflags(write=False)
        obj.m2.setflags(write=False)
        return obj

    def _pairs(self, m):
        u = self.universe
        return frozenset((u[i], u[j]) for i, j in zip(*np.nonzero(m)))

    @cached_property
    def r1(self) -> frozenset:
        return self._pairs(self.m1)

    @cached_property
    def r2(self) -> frozenset:
        return self._pairs(self.m2)

    @property
    def prec(self) -> frozenset:
        return self.r1

    @property
    def weak(self) -> frozenset:
        return self.r2

    def __len__(self):
        return len(self.universe)

    def key(self):
        return (frozenset(self.universe), self.r1, self.r2)

    def __eq__(self, other):
        if not isinstance(other, RelationalStructure):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (
            f"{type(self).__name__}(universe={list(self.universe)!r}, "
            f"r1={sorted(self.r1, key=node_key)!r}, r2={sorted(self.r2, key=node_key)!r})"
        )

    def rename(self, mapping) -> "RelationalStructure":
        f = mapping if callable(mapping) else mapping.__getitem__
        return RelationalStructure(
            [f(x) for x in self.universe],
            [(f(x), f(y)) for x, y in self.r1],
            [(f(x), f(y)) for x, y in self.r2],
        )

    def issubstructure(self, other: "RelationalStructure") -> bool:
        """``self ⊆ other``: same universe, both relations contained."""
        return (
            set(self.universe) == set(other.universe)
            and self.r1 <= other.r1
            and self.r2 <= other.r2
        )


def diamond_closure(s: RelationalStructure) -> RelationalStructure:
    """``((R1∪R2)* ∘ R1 ∘ (R1∪R2)*, (R1∪R2)* ∖ id)``."""
    n = len(s.universe)
    eye = np.eye(n, dtype=bool)
    star = transitive_closure(s.m1 | s.m2) | eye
    prec = bool_compose(bool_compose(star, s.m1), star)
    return RelationalStructure.from_matrices(s.universe, prec, star & ~eye)


def check_so_axioms(s: RelationalStructure) -> Verdict:
    """First violated axiom among S1-S4, scanning the universe in order."""
    u, p, w = s.universe, s.m1, s.m2
    n = len(u)
    for a in range(n):
        if w[a, a]:
            return Verdict(False, "S1", (u[a],), "weak causality is reflexive")
    for a, b in itertools.product(range(n), repeat=2):
        if p[a, b] and not w[a, b]:
            return Verdict(False, "S2", (u[a], u[b]), "causal pair missing from weak causality")
    for a, b, c in itertools.product(range(n), repeat=3):
        if a != c and w[a, b] and w[b, c] and not w[a, c]:
            return Verdict(False, "S3", (u[a], u[b], u[c]), "weak causality not transitive")
    for a, b, c in itertools.product(range(n), repeat=3):
        if ((w[a, b] and p[b, c]) or (p[a, b] and w[b, c])) and not p[a, c]:
            return Verdict(False, "S4", (u[a], u[b], u[c]), "mixed chain not causal")
    return PASS


def is_so_structure(s: RelationalStructure) -> bool:
    return check_so_axioms(s).ok


class SoStructure(RelationalStructure):
    """A relational structure validated against S1-S4 on construction."""

    __slots__ = ()

    def __init__(self, universe, prec=(), weak=()):
        super().__init__(universe, prec, weak)
        self._validate()

    def _validate(self):
        verdict = check_so_axioms(self)
        if not verdict:
            raise InvalidStructureError(f"not an so-structure: {verdict}", verdict)

    @classmethod
    def from_matrices(cls, universe, m1, m2):
        obj = super().from_matrices(universe, m1, m2)
        obj._validate()
        return obj

    @classmethod
    def of(cls, s: RelationalStructure) -> "SoStructure":
        if isinstance(s, SoStructure):
            return s
        return cls.from_matrices(s.universe, s.m1, s.m2)


def _check_universe(s: RelationalStructure, order: StratifiedOrder):
    if set(s.universe) != order.universe:
        raise InvalidStructureError("structure and order have different universes")


def is_extension_pair(s: RelationalStructure, order: StratifiedOrder) -> bool:
    """``≺ ⊆ ⊲`` and ``⊏ ⊆ ⊲⌢``."""
    _check_universe(s, order)
    pos = order.position()
    return all(pos[x] < pos[y] for x, y in s.r1) and all(
        x != y and pos[x] <= pos[y] for x, y in s.r2
    )


def stratified_extensions(
    s: RelationalStructure, max_size: int = DEFAULT_MAX_EXT_SIZE
) -> list[StratifiedOrder]:
    """Every stratified extension of ``s``, in a fixed deterministic order.

    Blocks are chosen left to right; a block may only hold elements with no
    remaining ≺-predecessor, and must contain every remaining ⊏-predecessor
    of its members. This visits exactly the ordered partitions that pass
    :func:`is_extension_pair`, without generating the rest.
    """
    n = len(s.universe)
    if n > max_size:
        raise ResourceLimitError(f"universe of size {n} exceeds extension bound {max_size}")
    if s.m2.diagonal().any():
        return []
    prec_pred = [sum(1 << a for a in range(n) if s.m1[a, b]) for b in range(n)]
    weak_pred = [sum(1 << a for a in range(n) if s.m2[a, b]) for b in range(n)]
    u = s.universe
    out: list[StratifiedOrder] = []

    def extend(remaining: int, blocks: list):
        if not remaining:
            out.append(StratifiedOrder(tuple(blocks)))
            return
        ready = [b for b in range(n) if remaining >> b & 1 and not prec_pred[b] & remaining]
        for r in range(1, len(ready) + 1):
            for chosen in itertools.combinations(ready, r):
                mask = sum(1 << b for b in chosen)
                rest = remaining & ~mask
                if any(weak_pred[b] & rest for b in chosen):
                    continue
                blocks.append(frozenset(u[b] for b in chosen))
                extend(rest, blocks)
                blocks.pop()

    extend((1 << n) - 1, [])
    return out


def intersect_extensions(orders: Iterable[StratifiedOrder]) -> SoStructure:
    """``(X, ⋂⊲, ⋂⊲⌢)`` over a nonempty family of orders on one universe."""
    orders = list(orders)
    if not orders:
        raise ValueError("cannot intersect an empty family of orders")
    universe = orders[0].universe
    if any(o.universe != universe for o in orders):
        raise InvalidStructureError("orders have different universes")
    ordered = tuple(sorted(universe, key=node_key))
    n = len(ordered)
    index = {x: i for i, x in enumerate(ordered)}
    eye = np.eye(n, dtype=bool)
    lt = np.ones((n, n), dtype=bool)
    le = ~eye
    for o in orders:
        pos = np.empty(n, dtype=np.int64)
        for x, i in o.position().items():
            pos[index[x]] = i
        lt &= pos[:, None] < pos[None, :]
        le &= pos[:, None] <= pos[None, :]
    return SoStructure.from_matrices(ordered, lt, le)


def covering(rel: Iterable[tuple], universe: Iterable | None = None) -> frozenset:
    """Pairs ``(x, y)`` of ``rel`` with no ``z`` such that ``x R z R y``."""
    rel = frozenset(rel)
    if universe is None:
        universe = {x for pair in rel for x in pair}
    return frozenset(
        (x, y) for x, y in rel if not any((x, z) in rel and (z, y) in rel for z in universe)
    )


class LabeledStructure:
    """A relational structure with a total labelling ``λ: X → E``."""

    def __init__(self, structure: RelationalStructure, labels):
        labels = dict(labels)
        if set(labels) != set(structure.universe):
            missing = set(structure.universe) - set(labels)
            extra = set(labels) - set(structure.universe)
            raise InvalidStructureError(
                f"labelling is not total on the universe (missing {sorted(map(str, missing))},"
                f" extra {sorted(map(str, extra))})"
            )
        self.structure = structure
        self.labels = labels

    @classmethod
    def build(cls, universe, r1, r2, labels):
        return cls(RelationalStructure(universe, r1, r2), labels)

    @property
    def universe(self) -> tuple:
        return self.structure.universe

    @property
    def r1(self) -> frozenset:
        return self.structure.r1

    @property
    def r2(self) -> frozenset:
        return self.structure.r2

    def __len__(self):
        return len(self.structure)

    def key(self):
        return (self.structure.key(), frozenset(self.labels.items()))

    def __eq__(self, other):
        if not isinstance(other, LabeledStructure) or type(self) is not type(other):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        lab = {str(x): self.labels[x] for x in self.universe}
        return (
            f"{type(self).__name__}(labels={lab!r}, "
            f"r1={sorted(self.r1, key=node_key)!r}, r2={sorted(self.r2, key=node_key)!r})"
        )

    def rename(self, mapping):
        f = mapping if callable(mapping) else mapping.__getitem__
        return type(self)(self.structure.rename(f), {f(x): e for x, e in self.labels.items()})
