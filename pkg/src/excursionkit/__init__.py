"""Excursions of ±1 random walks with state-dependent jump laws.

The package covers the combinatorial side (excursions, their individuals
and trees, level numbers, exact counting and enumeration), the group of
level-number-preserving transformations (reversal, negation, bridge and
excursion shifts, the unique-maximum rotation), exact probability
evaluation under finite-table jump laws (excursion and class laws, ruin
and height distributions, the return-conditioned transition law), and a
deterministic Monte Carlo sampler for the conditioned excursion law.
"""

from .core import (
    Excursion,
    Individual,
    LevelNumbers,
    from_index_sequence,
    from_jumps,
    from_values,
    index_sequence,
    individuals,
    level_numbers,
)
from .enumeration import (
    brute_force,
    canonical_excursion,
    count_excursions,
    decompositions,
    enumerate_excursions,
    eta,
)
from .errors import (
    BoundExceeded,
    ExcursionKitError,
    InvalidDecomposition,
    LevelNumbersMismatch,
    MalformedSequence,
    NotAnExcursion,
    OutOfDomain,
)
from .montecarlo import (
    Event,
    SampleReport,
    always,
    estimate,
    height_at_least,
    is_positive_event,
    level_process_histogram,
    sample_excursion,
    summarize,
    unique_max_height,
)
from .probability import (
    BoundaryData,
    JumpLaw,
    boundary,
    class_prob,
    conditional_excursion_prob,
    doob_law,
    excursion_prob,
    height_tail,
    height_unique,
    ruin_prob,
)
from .transforms import (
    ShiftOp,
    compose,
    negate,
    reverse,
    shift,
    shift_sequence,
)
from .trees import OrderedTree, contour, equivalent, tree_of
from .vervaat import in_domain, rotation_uniqueness_check, vervaat

__version__ = "0.1.0"
