"""Brute-force reference implementations and seeded random instances.

Nothing here calls the optimised algorithms; only the plain data types are
shared. Everything is exponential and meant for small inputs.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from math import comb

from .alphabet import ComtraceAlphabet, build_alphabet
from .errors import ResourceLimitError
from .sequences import Occurrence, StratifiedOrder

ORACLE_MAX_SIZE = 9


def ordered_bell(n: int) -> int:
    """Number of ordered set partitions: a(n) = Σ_k C(n,k) a(n-k)."""
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


def ordered_partitions(universe, max_size: int = ORACLE_MAX_SIZE):
    """Yield every ordered set partition of ``universe`` as a tuple of frozensets."""
    items = list(universe)
    if len(items) > max_size:
        raise ResourceLimitError(f"{len(items)} elements exceeds oracle bound {max_size}")

    def rec(rest, blocks):
        if not rest:
            yield tuple(blocks)
            return
        for r in range(1, len(rest) + 1):
            for first in itertools.combinations(rest, r):
                chosen = frozenset(first)
                yield from rec([x for x in rest if x not in chosen], blocks + [chosen])

    return rec(items, [])


def all_stratified_orders(universe, max_size: int = ORACLE_MAX_SIZE) -> list[StratifiedOrder]:
    return [StratifiedOrder(blocks) for blocks in ordered_partitions(universe, max_size)]


def _is_ext(prec, weak, blocks) -> bool:
    where = {}
    for i, block in enumerate(blocks):
        for x in block:
            where[x] = i
    for x, y in prec:
        if not where[x] < where[y]:
            return False
    for x, y in weak:
        if x == y or where[x] > where[y]:
            return False
    return True


def brute_extensions(s, max_size: int = ORACLE_MAX_SIZE) -> list[StratifiedOrder]:
    """Filter every ordered partition of the universe."""
    prec, weak = set(s.r1), set(s.r2)
    return [
        StratifiedOrder(blocks)
        for blocks in ordered_partitions(s.universe, max_size)
        if _is_ext(prec, weak, blocks)
    ]


def brute_intersection(orders):
    """``(⋂⊲, ⋂⊲⌢)`` as pair sets."""
    prec = weak = None
    for o in orders:
        where = {x: i for i, b in enumerate(o.blocks) for x in b}
        lt = {(x, y) for x in where for y in where if where[x] < where[y]}
        le = {(x, y) for x in where for y in where if x != y and where[x] <= where[y]}
        prec = lt if prec is None else prec & lt
        weak = le if weak is None else weak & le
    return prec, weak


def _compose(r, s):
    return {(x, z) for x, y in r for y2, z in s if y == y2}


def brute_diamond(universe, r1, r2):
    """◊-closure by literal relation composition and fixpoint iteration."""
    ident = {(x, x) for x in universe}
    both = set(r1) | set(r2)
    star = set(ident)
    while True:
        bigger = star | _compose(star, both)
        if bigger == star:
            break
        star = bigger
    return _compose(_compose(star, set(r1)), star), star - ident


def brute_cycle_classes(universe, weak) -> set[frozenset]:
    """Mutual reachability classes of ``weak``."""
    reach = {x: {x} for x in universe}
    changed = True
    while changed:
        changed = False
        for x, y in weak:
            for z in list(reach):
                if x in reach[z] and not reach[y] <= reach[z]:
                    reach[z] |= reach[y]
                    changed = True
    return {frozenset(y for y in universe if y in reach[x] and x in reach[y]) for x in universe}


def brute_lp_isomorphic(t1, t2, max_size: int = 8) -> bool:
    """Backtracking search for a label-preserving bijection."""
    x1, x2 = list(t1.universe), list(t2.universe)
    if len(x1) != len(x2):
        return False
    if len(x1) > max_size:
        raise ResourceLimitError(f"{len(x1)} elements exceeds oracle bound {max_size}")
    p1, q1, p2, q2 = set(t1.r1), set(t1.r2), set(t2.r1), set(t2.r2)
    l1, l2 = t1.labels, t2.labels
    f: dict = {}
    used: set = set()

    def consistent(a, b):
        for c, d in f.items():
            if ((a, c) in p1) != ((b, d) in p2) or ((c, a) in p1) != ((d, b) in p2):
                return False
            if ((a, c) in q1) != ((b, d) in q2) or ((c, a) in q1) != ((d, b) in q2):
                return False
        return ((a, a) in p1) == ((b, b) in p2) and ((a, a) in q1) == ((b, b) in q2)

    def rec(i):
        if i == len(x1):
            return True
        a = x1[i]
        for b in x2:
            if b in used or l1[a] != l2[b] or not consistent(a, b):
                continue
            f[a] = b
            used.add(b)
            if rec(i + 1):
                return True
            del f[a]
            used.discard(b)
        return False

    return rec(0)


def _all_cliques(theta: ComtraceAlphabet):
    ev = theta.events
    return [
        frozenset(c)
        for r in range(1, len(ev) + 1)
        for c in itertools.combinations(ev, r)
        if all((a, b) in theta.sim for a in c for b in c if a != b)
    ]


def _splits_into(a, b, c, ser) -> bool:
    return bool(b) and bool(c) and b | c == a and all((x, y) in ser for x in b for y in c)


def one_rewrite(t, u, ser) -> bool:
    """``t ≈ u``: ``t = wAz`` and ``u = wBCz`` with ``B ∪ C = A``, ``B × C ⊆ ser``."""
    if len(u) != len(t) + 1:
        return False
    for i in range(len(t)):
        if t[:i] == u[:i] and t[i + 1:] == u[i + 2:] and _splits_into(t[i], u[i], u[i + 1], ser):
            return True
    return False


def brute_comtrace(u, theta: ComtraceAlphabet, limit: int = 10**5) -> set:
    """The ≡-class of ``u`` by closing under single rewrites both ways."""
    u = tuple(frozenset(a) for a in u)
    ser = theta.ser
    cliques = set(_all_cliques(theta))
    found = {u}
    stack = [u]
    while stack:
        v = stack.pop()
        cand = set()
        for i, a in enumerate(v):
            items = sorted(a)
            for mask in range(1, (1 << len(items)) - 1):
                b = frozenset(x for k, x in enumerate(items) if mask >> k & 1)
                cand.add(v[:i] + (b, a - b) + v[i + 1:])
            if i + 1 < len(v) and v[i] | v[i + 1] in cliques:
                cand.add(v[:i] + (v[i] | v[i + 1],) + v[i + 2:])
        for w in cand:
            if w not in found and (one_rewrite(v, w, ser) or one_rewrite(w, v, ser)):
                found.add(w)
                stack.append(w)
                if len(found) > limit:
                    raise ResourceLimitError("oracle closure limit exceeded")
    return found


def exhaustive_comtrace(u, theta: ComtraceAlphabet) -> set:
    """The ≡-class of ``u`` found by listing every step sequence with the same
    event counts and taking the rewrite-connected component of ``u``."""
    u = tuple(frozenset(a) for a in u)
    target = Counter(e for a in u for e in a)
    cliques = _all_cliques(theta)
    pool = []

    def rec(prefix, left):
        if not +left:
            pool.append(tuple(prefix))
            return
        for c in cliques:
            if all(left[e] > 0 for e in c):
                rec(prefix + [c], left - Counter(c))

    rec([], target)
    component = {u}
    grew = True
    while grew:
        grew = False
        for w in pool:
            if w not in component and any(
                one_rewrite(v, w, theta.ser) or one_rewrite(w, v, theta.ser) for v in component
            ):
                component.add(w)
                grew = True
    return component


def random_alphabet(rng: random.Random, max_events: int = 4, sim_prob: float = 0.6,
                    ser_prob: float = 0.5, force_empty_sim: bool = False) -> ComtraceAlphabet:
    n = rng.randint(1, max_events)
    events = [chr(ord("a") + i) for i in range(n)]
    sim, ser = [], []
    for a, b in itertools.combinations(events, 2):
        if not force_empty_sim and rng.random() < sim_prob:
            sim.append((a, b))
            for pair in ((a, b), (b, a)):
                if rng.random() < ser_prob:
                    ser.append(pair)
    return build_alphabet(events, sim, ser)


def random_sequence(rng: random.Random, theta: ComtraceAlphabet, max_length: int = 4,
                    max_step: int = 3, max_occurrences: int = 8, min_length: int = 0) -> tuple:
    pool = [c for c in _all_cliques(theta) if len(c) <= max_step]
    length = rng.randint(min(min_length, max_length), max_length)
    seq, total = [], 0
    for _ in range(length):
        options = [c for c in pool if total + len(c) <= max_occurrences]
        if not options:
            break
        step = rng.choice(options)
        seq.append(step)
        total += len(step)
    return tuple(seq)


def random_instances(seed: int, max_events: int = 4, max_length: int = 4, max_step: int = 3,
                     max_occurrences: int = 8, force_empty_sim: bool = False,
                     min_length: int = 0):
    """A reproducible ``(alphabet, step sequence)`` pair for ``seed``."""
    rng = random.Random(seed)
    theta = random_alphabet(rng, max_events, force_empty_sim=force_empty_sim)
    return theta, random_sequence(rng, theta, max_length, max_step, max_occurrences, min_length)


def occurrence_universe(t) -> set:
    counts: Counter = Counter()
    out = set()
    for a in t:
        for e in a:
            counts[e] += 1
            out.add(Occurrence(e, counts[e]))
    return out
