"""Combined traces as step-sequence quotients, labeled stratified order
structures, and combined dependency graphs."""

from .alphabet import ComtraceAlphabet, build_alphabet, is_step, parse_alphabet, steps
from .cdgraph import CdGraph, compose_cdg, non_serializable_sets, validate_cdgraph
from .convert import ct2dep, ct2lct, dep2lct, lct2ct, lct2dep
from .errors import (
    AlphabetError,
    ComtraceError,
    InvalidStructureError,
    ParseError,
    ResourceLimitError,
)
from .lsos import (
    LabeledSoStructure,
    QuotientSoStructure,
    canonical_form,
    canonicalize,
    compose_lsos,
    cycle_classes,
    lp_isomorphic,
    quotient,
    validate_lsos,
)
from .monoid import (
    Comtrace,
    comtrace,
    comtrace_sos,
    concat,
    equivalent,
    induced_relations,
    rewrite_neighbors,
)
from .relations import (
    LabeledStructure,
    RelationalStructure,
    SoStructure,
    Verdict,
    check_so_axioms,
    covering,
    diamond_closure,
    intersect_extensions,
    is_extension_pair,
    stratified_extensions,
)
from .sequences import (
    EnumeratedStepSequence,
    Occurrence,
    StratifiedOrder,
    enumerate_occurrences,
    format_step_sequence,
    order_of_sequence,
    parse_step_sequence,
    sequence_of_order,
)

__version__ = "0.1.0"
