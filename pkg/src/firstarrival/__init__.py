"""First arrival times of probabilistic spread processes on multigraphs."""

from .bounds import (
    BoundsReport,
    ConjectureReport,
    ReliabilityCoefficients,
    bounds_report,
    conjecture_scan,
    effective_resistance,
    insertion_probability,
    lower_bound_lyons_tau,
    lower_bound_reliability,
    reliability_polynomial,
    upper_bound_distance,
)
from .errors import SpreadError
from .exact import (
    ArrivalPmf,
    ExpectationResult,
    StateSpace,
    arrival_pmf,
    build_state_space,
    expected_arrival,
    expected_first_arrival,
    ogf_eval,
    transition_probability,
)
from .graphs import (
    complete_graph,
    cycle_graph,
    glue_parallel,
    glue_series,
    parallel_paths_graph,
    path_graph,
    random_multigraph,
    star_graph,
)
from .montecarlo import (
    SimConfig,
    SimEstimate,
    sample_exponential_sp,
    sample_geometric_sp,
    simulate_spread,
)
from .multigraph import (
    FLOAT,
    RATIONAL,
    MultiGraph,
    cut_edges,
    distance,
    load_graph,
    merge_vertices,
    open_neighborhood,
    parse_graph,
    simplify_parallel,
)
from .resistance import exponential_expectation, resistance_limit_check, spreading_resistance
from .series import (
    PowerSeries,
    cauchy_mul,
    expectation_from_survival,
    hadamard,
    hadamard_geometric_closed,
    parallel_reduce,
    path_ogf,
    r_geometric,
    series_reduce,
    two_paths_ogf,
)
from .special import (
    ParallelPathSpec,
    kn_expected,
    kn_resistance,
    parallel_paths_resistance,
    tree_expected,
)

__version__ = "0.1.0"
