"""Permutation routing via matchings on pyramids, multi-grids, meshes, and paths."""

from .engine import (
    RouteProblem,
    Trace,
    apply_matching,
    concat_traces,
    initial_configuration,
    load_trace,
    make_step,
    merge_parallel,
    relabel_trace,
    save_trace,
    validate_trace,
)
from .errors import (
    InternalInvariantError,
    InvalidMatchingError,
    NotRoutedError,
    ParallelConflictError,
    ResourceLimitError,
    RoutingError,
    TraceInvalidError,
)
from .mesh_router import (
    color_regular_bipartite,
    distance_swap_trace,
    mesh_bound,
    route_mesh,
    route_mesh_phases,
    route_path,
)
from .oracle import all_matchings, exact_routing_number, exact_rt
from .permutation import (
    compose,
    cycles,
    decompose_involutions,
    derive_seed,
    identity,
    invert,
    is_involution,
    is_permutation,
    parse_perm,
    random_permutation,
)
from .pyramid_router import (
    InvolutionRoute,
    PairPlan,
    assign_paths,
    classify_pairs,
    plan_staging,
    route_involution,
    route_pyramid,
    step_bound,
)
from .topology import (
    Graph,
    LevelCoord,
    PyramidSpec,
    VerticalPathSet,
    build_mesh,
    build_multigrid,
    build_path,
    build_pyramid,
    parse_graph_spec,
    phi,
    vertical_paths,
)

__version__ = "0.1.0"
