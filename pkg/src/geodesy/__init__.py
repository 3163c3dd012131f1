"""Geodesic problems in finitely generated groups.

Exact Cayley-ball oracles for the five geodesic problems, the reductions
between them, regular geodesic acceptors and growth counting.
"""

__version__ = "0.1.0"

from .core import (
    EMPTY,
    GeodesyError,
    Letter,
    ParityClass,
    Presentation,
    Word,
    alphabet,
    format_word,
    free_reduce,
    invert_word,
    parse_word,
    relator_parity,
    rewrite_to_normal_form,
    validate_rules,
)
from .models import (
    GroupModel,
    bs_model,
    equal,
    free_abelian_model,
    free_group_model,
    model_from_selector,
    rewriting_model,
)
from .oracles import (
    Ball,
    CallStats,
    OracleSuite,
    bfs_bounded,
    bfs_delta,
    bfs_geodesic,
    bfs_length,
    build_ball,
    is_geodesic,
)
