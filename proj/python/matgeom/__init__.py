"""Matrix geometry over small finite fields: adjacency, full-rank
differences, their preservers and the Grassmann dictionary."""

from ._matgeom import (
    BudgetExceeded,
    DecomposeError,
    Field,
    GrassmannPoint,
    Matrix,
    ParseError,
    PreconditionError,
    SpecMismatch,
    StandardPreserver,
    adjacency_witness,
    adjacent_via_dis,
    certify_dis,
    compose,
    count_by_rank,
    decompose,
    enumerate_points,
    from_matrix,
    grassmann_point_count,
    is_adjacent,
    is_dis,
    random_preserver,
    rank,
    separating_X,
    to_table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
