"""Distributed maximal bounded-degree subgraph selection on stream
contention graphs: topology generation, the synchronous round engine, its
restricted variants, independent verifiers and an experiment driver."""

from .engine import (
    EXCLUDED,
    SELECTED,
    UNDECIDED,
    VARIANTS,
    InvariantError,
    Rank,
    RoundEvents,
    RunConfig,
    RunResult,
    VertexState,
    init_states,
    run_round,
    run_to_completion,
)
from .experiment import (
    ConfigError,
    ExperimentConfig,
    ExperimentRow,
    VerificationFailure,
    break_even_gain,
    emit_csv,
    load_config,
    mix_seed,
    run_sweep,
    sweep_graph,
)
from .graph import (
    ContentionGraph,
    GraphFormatError,
    load_graph,
    parse_graph,
    serialize_graph,
)
from .topology import (
    GeoNetwork,
    GeoNode,
    StreamLabel,
    build_network,
    build_stream_graph,
    build_udg,
    default_tx_radius,
    generate_nodes,
    rng_prune,
)
from .verify import (
    Violation,
    check_degree_bound,
    check_maximal,
    check_restrictions,
    enumerate_maximal,
    exact_max_ibds,
)

__version__ = "0.1.0"
