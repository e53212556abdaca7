"""Collatz trajectories, step counts and the 4x+1 odd-number families."""
from .cache import ConventionMismatch, FormatError, MemoTable, build_memo, load_memo, save_memo
from .core import (
    DEFAULT_BUDGET,
    U128_MAX,
    BudgetExhausted,
    CollatzError,
    CollatzOverflow,
    Decomposition,
    Trajectory,
    collatz_step,
    stopping_count,
    syracuse_decompose,
    trajectory,
)
from .families import (
    PARAMETRIC,
    REGISTRY,
    FamilyRoot,
    FamilySpec,
    ParametricFamily,
    SeedCandidate,
    SeedNotFound,
    SeedWitness,
    family,
    family_from_recurrence,
    family_root,
    family_term,
    general_term,
    parametric_term,
    predicted_steps,
    seed_search,
    seed_witness,
    theorem_steps,
)
from .verify import (
    InvalidConfig,
    VerifyConfig,
    VerifyReport,
    check_partition,
    check_step_identities,
    decomposition_consistency,
    verify_range,
)
