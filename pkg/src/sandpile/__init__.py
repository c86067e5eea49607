"""Symmetric sand pile models (sequential and parallel) and their fixed points."""

from .config import (
    ConfigParseError,
    Configuration,
    DeltaSeq,
    config_from_json,
    config_to_json,
    delta,
    format_config,
    is_close,
    is_weakly_close,
    lex_cmp,
    parse_config,
)
from .dynamics import (
    FiringPlan,
    Rule,
    UnimodalityError,
    apply_word,
    can_fire_left,
    can_fire_right,
    choice_column,
    is_fixed,
    is_unimodal,
    op_L,
    op_R,
    psspm_step,
    sspm_successors,
)
from .explorer import (
    CapExceeded,
    CycleDetected,
    ModelKind,
    TransitionDiagram,
    bfs_reachable,
    diagram_stats,
    fixed_points_of,
    strict_inclusion_witness,
    to_dot,
    to_json,
)
from .fixpoints import (
    ChainBroken,
    FixpointChain,
    MalformedFixpoint,
    PlateauProfile,
    enumerate_fixpoints,
    interval_check,
    leftmost_fixpoint,
    plateau_profile,
    rightmost_fixpoint,
    successor,
    support_radius_report,
)

__version__ = "0.1.0"
