"""Desk-scale laboratory for ordinal walks, ladder systems, downward-closed
pair families, separation solving, and the spaces they induce."""

from .cdw import (
    CdwSet,
    EMPTY_CDW,
    ExtractionResult,
    HFamily,
    SpaceData,
    downward_close,
    explicit_hfamily,
    extract_from_space,
    sum_threshold,
    sum_threshold_family,
)
from .errors import (
    ClosureError,
    DomainError,
    FanlabError,
    GuardExceeded,
    OrdinalParseError,
    ValidationError,
)
from .families import (
    BoundWitness,
    FuncFamily,
    SampleClosure,
    WeakBound,
    bound_function,
    close_avoiding,
    close_below,
    disagreement_index,
    empirical_witness,
    family_value,
    is_closed,
    separation_labeling,
    verify_witness,
    weak_bound_avoiding,
    weak_bound_below,
)
from .ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Classified,
    LadderSystem,
    Ordinal,
    canonical_ladder,
    classify,
    first_limits,
    ladder,
    omega_power,
    parse_ordinal,
    random_limit,
    random_ordinal,
)
from .separation import (
    MinSumResult,
    SeparationResult,
    adversary_two_sets,
    check_separation,
    exists_separation_capped,
    is_separation,
    largest_separable_subset,
    min_cap,
    min_sum_labeling,
    solve_separation,
)
from .spaces import (
    CombSpace,
    FanClosureResult,
    build_space,
    clopen_check,
    export_space,
    induced_point_set,
    probe_fan_closure,
    product_open_meets,
    space_from_json,
    space_separation_check,
    space_to_json,
    tabulate_intersections,
)
from .walks import CSequence, WalkTrace

__all__ = [name for name in dir() if not name.startswith("_")]
