"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import itertools
import random
import sys
import tempfile
import time
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from comtrace import (
    CdGraph,
    Occurrence,
    RelationalStructure,
    canonical_form,
    canonicalize,
    check_so_axioms,
    comtrace,
    comtrace_sos,
    compose_cdg,
    compose_lsos,
    concat,
    covering,
    ct2dep,
    ct2lct,
    cycle_classes,
    dep2lct,
    diamond_closure,
    intersect_extensions,
    is_step,
    lct2ct,
    lct2dep,
    order_of_sequence,
    quotient,
    stratified_extensions,
    validate_cdgraph,
    validate_lsos,
)
from comtrace.cdgraph import EMPTY as EMPTY_CDG
from comtrace.cdgraph import canonicalize_cdg
from comtrace.cli import main
from comtrace.lsos import EMPTY as EMPTY_LSOS
from comtrace.monoid import identity
from comtrace.oracle import (
    all_stratified_orders,
    brute_comtrace,
    brute_extensions,
    brute_lp_isomorphic,
    ordered_bell,
)

sys.path.insert(0, str(Path(__file__).parent))
from helpers import (  # noqa: E402
    PAIR_SEEDS,
    SEEDS,
    family,
    sample_sequence,
    instance,
    random_relational,
    random_so_structure,
    theta1,
    theta2,
)


class CriterionFailed(AssertionError):
    pass


def require(cond, message):
    if not cond:
        raise CriterionFailed(message)


def scrambled(t, seed):
    nodes = list(t.universe)
    ids = list(range(len(nodes)))
    random.Random(seed).shuffle(ids)
    return t.rename(dict(zip(nodes, ids)))


_instances = None


def instances():
    """The 200 seeded ``(seed, θ, u, [u])`` tuples; built on first use, which is
    inside criterion 3's timing."""
    global _instances
    if _instances is None:
        _instances = []
        for seed in SEEDS:
            theta, u = instance(seed)
            _instances.append((seed, theta, u, comtrace(u, theta)))
    return _instances


def cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def check_example_theta1():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "theta1.txt"
        path.write_text("events a b c\nsim b c\nser b c\n")
        alpha = ("--alphabet", str(path))
        code, out = cli("steps", *alpha)
        require(code == 0 and out.splitlines() == ["{a}", "{b}", "{c}", "{b,c}"], f"steps: {out!r}")
        code, out = cli("expand", "{a}{b,c}", *alpha)
        members = [line[2:] for line in out.splitlines()]
        require(code == 0 and members == ["{a}{b,c}", "{a}{b}{c}"], f"expand: {out!r}")
        require(out.splitlines()[0].startswith("* "), "canonical member not marked first")
        code, out = cli("equiv", "{a}{c}{b}", "{a}{b,c}", *alpha)
        require(code == 1 and out.strip() == "not equivalent", f"equiv: {code} {out!r}")
    return "steps, expand and equiv outputs exact"


def check_example_theta2():
    theta = theta2()
    t = comtrace(sample_sequence(), theta)
    lsos = ct2lct(t)
    b2, c2 = Occurrence("b", 2), Occurrence("c", 2)
    nontrivial = [c for c in cycle_classes(lsos) if len(c) > 1]
    require(nontrivial == [frozenset({b2, c2})], f"nontrivial classes {nontrivial}")
    q = quotient(lsos)
    require(len(q.classes) == 4, f"quotient has {len(q.classes)} nodes")
    named = {c: "".join(sorted(f"{o.event}{o.index}" for o in c)) for c in q.classes}
    prec = {(named[a], named[b]) for a, b in q.prec}
    weak_only = {(named[a], named[b]) for a, b in q.weak - q.prec}
    require(prec == {("b1", "c1"), ("c1", "b2c2"), ("a1", "b2c2"), ("b1", "b2c2")}, f"≺̂ {prec}")
    require(weak_only == {("a1", "c1")}, f"⊏̂∖≺̂ {weak_only}")
    back = lct2ct(lsos, theta)
    oracle = brute_comtrace(sample_sequence(), theta)
    require(set(back.members) == oracle and len(oracle) == 4, "lct2ct differs from rewrite oracle")
    return "one nontrivial class, 4 quotient nodes, 4 members match oracle"


def check_com2sos():
    largest = 0
    for seed, theta, u, t in instances():
        s = comtrace_sos(u, theta)
        require(len(s) <= 8, f"seed {seed}: |Σ| = {len(s)}")
        largest = max(largest, len(s))
        members = {order_of_sequence(w) for w in t.members}
        require(set(stratified_extensions(s)) == members, f"seed {seed}: ext(S) != member orders")
        require(intersect_extensions(members) == s, f"seed {seed}: intersection differs")
    return f"{len(instances())} instances, largest |Σ| = {largest}"


def check_first_representation():
    for seed, theta, u, t in instances():
        lsos = ct2lct(t)
        require(lct2ct(lsos, theta) == t, f"seed {seed}: lct2ct∘ct2lct")
        copy = scrambled(lsos, seed)
        require(ct2lct(lct2ct(copy, theta)) == canonical_form(copy), f"seed {seed}: ct2lct∘lct2ct")
    return f"{len(instances())} instances, both directions"


def _random_graphs(theta, universe, labels, rng, count):
    for _ in range(count):
        solid, dashed = set(), set()
        for x, y in itertools.permutations(universe, 2):
            if not theta.in_ser(labels[x], labels[y]) and rng.random() < 0.5:
                solid.add((x, y))
            if not theta.in_ser(labels[y], labels[x]) and rng.random() < 0.5:
                dashed.add((x, y))
        yield CdGraph(RelationalStructure(universe, solid, dashed), labels)


def check_second_representation():
    single_valid = sampled_valid = 0
    rng = random.Random(5)
    for seed, theta, u, t in instances():
        dep, lsos = ct2dep(t), ct2lct(t)
        require(lct2dep(dep2lct(dep), theta) == dep, f"seed {seed}: lct2dep∘dep2lct")
        require(dep2lct(lct2dep(lsos, theta)) == lsos, f"seed {seed}: dep2lct∘lct2dep")
        universe, labels = dep.universe, dep.labels
        for x, y in itertools.permutations(universe, 2):
            for side in (0, 1):
                rel = [set(dep.r1), set(dep.r2)]
                rel[side] ^= {(x, y)}
                other = CdGraph(RelationalStructure(universe, *rel), labels)
                if validate_cdgraph(other, theta):
                    single_valid += 1
                    require(dep2lct(other) != lsos, f"seed {seed}: single-edge change kept the image")
        images = {}
        for g in _random_graphs(theta, universe, labels, rng, 40):
            if not validate_cdgraph(g, theta):
                continue
            sampled_valid += 1
            rep, image = canonicalize_cdg(g), dep2lct(g)
            require(images.setdefault(image, rep) == rep, f"seed {seed}: two cd-graphs, one image")
            require(lct2dep(image, theta) == rep, f"seed {seed}: sampled graph round trip")
    return (
        f"{len(instances())} instances; valid single-edge perturbations {single_valid}, "
        f"sampled valid cd-graphs {sampled_valid}, no collisions"
    )


def check_closure_laws():
    rng = random.Random(6)
    for i in range(200):
        s = random_relational(rng)
        closed = diamond_closure(s)
        require(diamond_closure(closed) == closed, f"idempotence #{i}")
        require(s.issubstructure(closed), f"extensive #{i}")
    so_structures = [random_so_structure(rng, 6) for _ in range(200)]
    so_structures += [comtrace_sos(u, theta) for _, theta, u, _ in instances()]
    for i, s in enumerate(so_structures):
        require(check_so_axioms(s), f"generator produced a non-so-structure #{i}")
        require(diamond_closure(s) == s, f"fixpoint #{i}")
        sub = RelationalStructure(
            s.universe,
            [p for p in s.r1 if rng.random() < 0.6],
            [p for p in s.r2 if rng.random() < 0.6],
        )
        closed = diamond_closure(sub)
        require(check_so_axioms(closed) and closed.issubstructure(s), f"containment #{i}")
    return f"200 random structures, {len(so_structures)} so-structures"


def check_monoid_laws():
    for seed in PAIR_SEEDS:
        theta, (r, s, t) = family(seed, 3)
        require(concat(concat(r, s), t) == concat(r, concat(s, t)), f"seed {seed}: ⊛ assoc")
        e = identity(theta)
        require(concat(e, t) == t == concat(t, e), f"seed {seed}: ⊛ identity")

        R, S, T = (ct2lct(x) for x in (r, s, t))
        left = canonical_form(compose_lsos(compose_lsos(R, S, theta), T, theta))
        right = canonical_form(compose_lsos(R, compose_lsos(S, T, theta), theta))
        require(left == right, f"seed {seed}: ⊙ assoc")
        require(canonical_form(compose_lsos(EMPTY_LSOS, T, theta)) == T, f"seed {seed}: ⊙ left id")
        require(canonical_form(compose_lsos(T, EMPTY_LSOS, theta)) == T, f"seed {seed}: ⊙ right id")

        D1, D2, D3 = (ct2dep(x) for x in (r, s, t))
        left = canonicalize_cdg(compose_cdg(compose_cdg(D1, D2, theta), D3, theta))
        right = canonicalize_cdg(compose_cdg(D1, compose_cdg(D2, D3, theta), theta))
        require(left == right, f"seed {seed}: ⊚ assoc")
        require(canonicalize_cdg(compose_cdg(EMPTY_CDG, D3, theta)) == D3, f"seed {seed}: ⊚ left id")
        require(canonicalize_cdg(compose_cdg(D3, EMPTY_CDG, theta)) == D3, f"seed {seed}: ⊚ right id")

    for seed in PAIR_SEEDS:
        theta, (r, t) = family(seed + 500, 2, max_occurrences=4)
        R, T = ct2lct(r), ct2lct(t)
        RT = compose_lsos(R, T, theta)
        require(ct2lct(concat(r, t)) == canonical_form(RT), f"seed {seed}: ct2lct hom")
        require(lct2ct(RT, theta) == concat(r, t), f"seed {seed}: lct2ct hom")
        require(
            lct2dep(RT, theta) == canonicalize_cdg(compose_cdg(lct2dep(R, theta), lct2dep(T, theta), theta)),
            f"seed {seed}: lct2dep hom",
        )
        D1, D2 = ct2dep(r), ct2dep(t)
        require(
            dep2lct(compose_cdg(D1, D2, theta)) == canonical_form(compose_lsos(dep2lct(D1), dep2lct(D2), theta)),
            f"seed {seed}: dep2lct hom",
        )
    theta = theta1()
    require(ct2lct(identity(theta)) == EMPTY_LSOS, "ct2lct of the identity")
    require(ct2dep(identity(theta)) == EMPTY_CDG, "ct2dep of the identity")
    return f"{len(PAIR_SEEDS)} triples, {len(PAIR_SEEDS)} pairs"


def _class_propositions(s, where):
    exts = stratified_extensions(s)
    classes = cycle_classes(s)
    of = {x: c for c in classes for x in c}
    for x, y in itertools.combinations(s.universe, 2):
        together = all(e.position()[x] == e.position()[y] for e in exts)
        require(together == (of[x] == of[y]), f"{where}: class vs simultaneity for {x}, {y}")
    for c in classes:
        require(any(c in e.blocks for e in exts), f"{where}: class {set(c)} never a whole step")
    q = quotient(s)
    for a, b in covering(q.weak, q.classes):
        adjacent = any(
            e.blocks[i] == a and e.blocks[i + 1] == b for e in exts for i in range(len(e.blocks) - 1)
        )
        require(adjacent, f"{where}: covering classes never adjacent")
    return exts


def check_appendix():
    rng = random.Random(8)
    for i in range(200):
        _class_propositions(random_so_structure(rng, 6), f"so-structure #{i}")
    for seed, theta, u, t in instances():
        lsos = ct2lct(t)
        verdict = validate_lsos(lsos, theta)
        require(verdict, f"seed {seed}: ct2lct output fails {verdict}")
        copy = scrambled(lsos, seed)
        exts = _class_propositions(copy.structure, f"seed {seed}")
        outputs = set()
        for e in exts:
            for block in e.blocks:
                names = [copy.labels[x] for x in block]
                require(len(set(names)) == len(names), f"seed {seed}: a step repeats a label")
                require(is_step(theta, names), f"seed {seed}: {names} is not a step")
            t0, xi = canonicalize(copy, e)
            outputs.add((t0, tuple(sorted(xi.items()))))
        require(len(outputs) == 1, f"seed {seed}: ξ depends on the extension")
    return f"200 so-structures, {len(instances())} lsos-comtraces"


def check_oracles():
    for n in range(6):
        require(len(all_stratified_orders(range(n))) == ordered_bell(n), f"ordered Bell at {n}")
    require([ordered_bell(n) for n in range(6)] == [1, 1, 3, 13, 75, 541], "Bell recurrence")
    rng = random.Random(9)
    structures = [random_so_structure(rng, 6) for _ in range(200)]
    structures += [comtrace_sos(u, theta) for _, theta, u, _ in instances()]
    for i, s in enumerate(structures):
        require(set(brute_extensions(s)) == set(stratified_extensions(s)), f"extensions #{i}")
    pairs = 0
    for seed, theta, u, t in instances():
        if len(t.canonical) > 6 or sum(map(len, u)) > 6:
            continue
        one = ct2lct(t)
        shuffled = tuple(random.Random(seed).sample(u, len(u)))
        for two in (scrambled(one, seed), scrambled(ct2lct(comtrace(shuffled, theta)), seed + 1)):
            pairs += 1
            fast = canonical_form(one) == canonical_form(two)
            require(brute_lp_isomorphic(one, two) == fast, f"seed {seed}: isomorphism disagreement")
    return f"Bell n≤5, {len(structures)} extension checks, {pairs} isomorphism pairs"


CRITERIA = [
    (1, "θ1 example", check_example_theta1, 1.0),
    (2, "θ2 example", check_example_theta2, 1.0),
    (3, "so-structure of a comtrace", check_com2sos, 60.0),
    (4, "1st representation theorem", check_first_representation, None),
    (5, "2nd representation theorem", check_second_representation, None),
    (6, "◊-closure laws", check_closure_laws, None),
    (7, "monoid laws and homomorphisms", check_monoid_laws, None),
    (8, "appendix propositions", check_appendix, None),
    (9, "oracle self-consistency", check_oracles, 30.0),
]


def run_criterion(number):
    _, name, fn, budget = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except CriterionFailed as exc:
        detail, ok = str(exc), False
    elapsed = time.perf_counter() - start
    if ok and budget is not None and elapsed >= budget:
        ok, detail = False, f"{detail}; took {elapsed:.2f}s, budget {budget:.0f}s"
    line = f"criterion {number} [{name}]: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}"
    return ok, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n, *_ in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
