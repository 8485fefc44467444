"""Shared builders for the test suite: fixed alphabets, seeded families and
random so-structures."""

from __future__ import annotations

import random

from comtrace import RelationalStructure, SoStructure, build_alphabet, comtrace, parse_step_sequence
from comtrace.oracle import (
    all_stratified_orders,
    brute_intersection,
    random_alphabet,
    random_instances,
    random_sequence,
)

SEEDS = range(200)
PAIR_SEEDS = range(100)


def theta1():
    return build_alphabet("abc", [("b", "c")], [("b", "c")])


def theta2():
    return build_alphabet(
        "abc", [("a", "b"), ("a", "c"), ("b", "c")], [("a", "b"), ("b", "a"), ("a", "c")]
    )


def sample_sequence():
    return parse_step_sequence("{a,b}{c}{b,c}", theta2())


def instance(seed):
    """Seeded ``(θ, u)``; odd seeds get at least three steps so the family
    is not dominated by tiny sequences."""
    return random_instances(seed, min_length=3 if seed % 2 else 0)


def family(seed, count, max_occurrences=3):
    """One alphabet and ``count`` comtraces over it."""
    rng = random.Random(10_000 + seed)
    theta = random_alphabet(rng)
    members = [
        comtrace(random_sequence(rng, theta, max_length=3, max_occurrences=max_occurrences), theta)
        for _ in range(count)
    ]
    return theta, members


def random_so_structure(rng: random.Random, max_size=5, size=None) -> SoStructure:
    """Intersection of a random nonempty set of stratified orders on
    ``{0..n-1}``; such intersections are always so-structures."""
    n = rng.randint(0, max_size) if size is None else size
    orders = all_stratified_orders(range(n))
    chosen = rng.sample(orders, rng.randint(1, min(4, len(orders))))
    prec, weak = brute_intersection(chosen)
    return SoStructure(range(n), prec, weak)


def random_relational(rng: random.Random, max_size=5, density=0.25):
    n = rng.randint(0, max_size)
    pairs = [(x, y) for x in range(n) for y in range(n)]
    r1 = [p for p in pairs if rng.random() < density / 2]
    r2 = [p for p in pairs if p[0] != p[1] and rng.random() < density]
    return RelationalStructure(range(n), r1, r2)
