"""divwords: combinatorics on words around n-divisibility and bounded height.

Exact deciders and witnesses for n-divisibility (ordinary and tail sense),
power and period detection, chain decompositions of tail and cycle posets with
selector-tuple run statistics, height and essential-fragment decompositions
with the excision process, closed-form bound evaluation, and an exhaustive
avoidance search with a randomized audit harness.
"""

from .errors import InputError, InvariantViolation, RangeError
from .words import (
    Alphabet,
    BOTTOM,
    LexOutcome,
    TailRef,
    Word,
    compare,
    k_tail,
    leftmost_first,
)
from .periodicity import (
    PowerOccurrence,
    WordCycle,
    distinct_factors,
    find_power,
    primitive_root,
    root_from_few_factors,
    rotations,
)
from .divisibility import (
    NDivisionWitness,
    ReducibilityVerdict,
    TailDivisionWitness,
    is_n_divisible,
    is_tail_n_divisible,
    max_division_index,
    reducibility,
)
from .dilworth import (
    ChainDecomposition,
    Poset,
    build_cycle_poset,
    build_tail_poset,
    chain_decompose,
    max_antichain,
    process_check,
    selector,
    selector_run_length,
)
from .height import (
    EssentialFragments,
    ExcisionTrace,
    HeightDecomposition,
    essential_fragments,
    excise,
    fragment_statistics,
    word_height,
)
from .bounds import (
    BoundValue,
    essential_height_bound,
    external_bounds,
    height_bound,
    multilinear_word_bound,
    word_length_bound,
)
from .search import (
    AvoiderQuery,
    HarnessConfig,
    SearchReport,
    count_avoiders,
    extremal_length,
    multilinear_count,
    property_harness,
)

__version__ = "0.1.0"
