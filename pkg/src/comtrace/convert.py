"""Representation mappings between comtraces, lsos-comtraces and cd-graphs.

Every mapping returns structures over the canonical occurrence universe, so
round trips can be checked with plain equality.
"""

from __future__ import annotations

from .alphabet import ComtraceAlphabet
from .cdgraph import CdGraph, canonicalize_cdg
from .errors import InvalidStructureError
from .lsos import LabeledSoStructure, canonical_form, validate_lsos
from .monoid import Comtrace, comtrace_sos, induced_relations
from .relations import DEFAULT_MAX_EXT_SIZE, LabeledStructure, diamond_closure, stratified_extensions
from .sequences import sequence_of_order


def ct2lct(t: Comtrace) -> LabeledSoStructure:
    s = comtrace_sos(t.canonical, t.alphabet)
    return LabeledSoStructure(s, {o: o.event for o in s.universe})


def lct2ct(t: LabeledStructure, theta: ComtraceAlphabet, max_size: int = DEFAULT_MAX_EXT_SIZE,
           validate: bool = True) -> Comtrace:
    """``{map(λ, Ω_⊲) : ⊲ ∈ ext(T)}``."""
    if validate:
        verdict = validate_lsos(t, theta)
        if not verdict:
            raise InvalidStructureError(f"not an lsos-comtrace: {verdict}", verdict)
    exts = stratified_extensions(t.structure, max_size)
    return Comtrace(theta, (sequence_of_order(o, t.labels.__getitem__) for o in exts))


def ct2dep(t: Comtrace) -> CdGraph:
    d = induced_relations(t.canonical, t.alphabet)
    return CdGraph(d, {o: o.event for o in d.universe})


def dep2lct(d: LabeledStructure) -> LabeledSoStructure:
    closed = LabeledSoStructure(diamond_closure(d.structure), d.labels)
    return canonical_form(closed)


def lct2dep(t: LabeledStructure, theta: ComtraceAlphabet,
            max_size: int = DEFAULT_MAX_EXT_SIZE) -> CdGraph:
    return ct2dep(lct2ct(t, theta, max_size))


__all__ = ["ct2lct", "lct2ct", "ct2dep", "dep2lct", "lct2dep", "canonicalize_cdg"]
