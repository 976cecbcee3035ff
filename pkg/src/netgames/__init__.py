"""Equilibria and certificates for layered network games.

Build single-layer, overlay (shared node set, convexly mixed layers), and
block-coupled (stacked action spaces) games; compute every Nash
equilibrium of their linear best replies through a complementarity
formulation; and certify uniqueness, existence, and strong stability from
matrix-class and spectral conditions, with exact ground truth available at
small sizes.

Heavy kernels are compiled with numba when it is importable; set
``NETGAMES_NO_NUMBA=1`` to force the pure-numpy fallback paths.
"""

from ._accel import USE_NUMBA, backend_name
from .certificates import (
    EXISTS,
    GUARANTEED_UNIQUE,
    INCONCLUSIVE,
    NOT_EXISTS,
    NOT_GUARANTEED_UNIQUE,
    NOT_STRONGLY_STABLE,
    STRONGLY_STABLE,
    Certificate,
    chain_cycle_degenerate,
    existence_check,
    layer_addition_check,
    multiplex_existence,
    prop1_pair_failure,
    prop2_closed_classes,
    prop3_perturbation,
    prop4_twosided_failure,
    prop5_multilayer_failure,
    prop6_oneway,
    prop7_complements_bdd,
    prop8_uniqueness_implies_stability,
    strong_stability,
)
from .errors import (
    BudgetError,
    CapacityError,
    DegeneratePivotError,
    InfeasibleError,
    InternalConsistencyError,
    InvalidParameterError,
    NetgamesError,
    ParseError,
    ShapeError,
    SingularBlockError,
)
from .games import (
    AdjacencyMatrix,
    EffortProfile,
    MultilayerGame,
    MultiplexGame,
    NetworkGame,
    best_response,
    build_multiplex,
    build_supra,
    game_from_dict,
    is_nash,
    load_game,
    load_matrix,
    save_game,
    save_matrix,
    target_from_exponential_benefit,
)
from .lcp import (
    IndexPartition,
    LcpProblem,
    LcpSolution,
    RayTermination,
    enumerate_solutions,
    from_game,
    lemke,
    nonuniqueness_target,
    partition,
    residual_of,
)
from .matclass import (
    ClassVerdict,
    SpectralSummary,
    is_b_matrix,
    is_p_matrix,
    is_positive_definite,
    is_strictly_row_dd,
    is_symmetric,
    schur_complement,
    spectral,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyMatrix",
    "BudgetError",
    "CapacityError",
    "Certificate",
    "ClassVerdict",
    "DegeneratePivotError",
    "EffortProfile",
    "EXISTS",
    "GUARANTEED_UNIQUE",
    "INCONCLUSIVE",
    "IndexPartition",
    "InfeasibleError",
    "InternalConsistencyError",
    "InvalidParameterError",
    "LcpProblem",
    "LcpSolution",
    "MultilayerGame",
    "MultiplexGame",
    "NetgamesError",
    "NetworkGame",
    "NOT_EXISTS",
    "NOT_GUARANTEED_UNIQUE",
    "NOT_STRONGLY_STABLE",
    "ParseError",
    "RayTermination",
    "STRONGLY_STABLE",
    "ShapeError",
    "SingularBlockError",
    "SpectralSummary",
    "USE_NUMBA",
    "backend_name",
    "best_response",
    "build_multiplex",
    "build_supra",
    "chain_cycle_degenerate",
    "enumerate_solutions",
    "existence_check",
    "from_game",
    "game_from_dict",
    "is_b_matrix",
    "is_nash",
    "is_p_matrix",
    "is_positive_definite",
    "is_strictly_row_dd",
    "is_symmetric",
    "layer_addition_check",
    "lemke",
    "load_game",
    "load_matrix",
    "multiplex_existence",
    "nonuniqueness_target",
    "partition",
    "prop1_pair_failure",
    "prop2_closed_classes",
    "prop3_perturbation",
    "prop4_twosided_failure",
    "prop5_multilayer_failure",
    "prop6_oneway",
    "prop7_complements_bdd",
    "prop8_uniqueness_implies_stability",
    "residual_of",
    "save_game",
    "save_matrix",
    "schur_complement",
    "spectral",
    "strong_stability",
    "target_from_exponential_benefit",
]
