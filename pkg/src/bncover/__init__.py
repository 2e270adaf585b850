"""Coverability checking for broadcast networks of infinite-state processes."""

from .explore import (
    ReplayResult,
    Run,
    RunStep,
    SelfLoopError,
    bn_step,
    explore,
    reconfigure,
    replay,
)
from .graphs import (
    ClassViolation,
    Clique,
    DiamDeg,
    Graph,
    LabelledGraph,
    PathBounded,
    Reconfigurable,
    TopologyClass,
    canonical_form,
    diam_deg_size_bound,
    diameter,
    enumerate_diam_deg_graphs,
    enumerate_extensions,
    enumerate_graphs,
    graph_embeds,
    graph_injections,
    in_class,
    longest_simple_path_length,
    max_degree,
    multiset_embeds,
    single_vertex,
)
from .modelfile import (
    DimensionMismatch,
    ModelError,
    ModelFile,
    ModelSyntaxError,
    Query,
    UndeclaredIdentifier,
    parse_model,
)
from .order import (
    OrderedSpace,
    ResourceExhausted,
    ResourceLimits,
    Verdict,
    backward_coverability,
    basis_subsumes,
    minimize,
)
from .pushdown import (
    BOTTOM,
    PdsConfig,
    PdsRule,
    PushdownSpec,
    pds_coverable,
    pds_covered_by_initial,
    pds_initial_configs,
    pds_leq,
    pds_min_enabling,
    pds_successors,
)
from .rbn import (
    QueryRecord,
    RbnResult,
    SaturationTrace,
    SweepRecord,
    WitnessExtractionFailed,
    rbn_coverable,
    rbn_witness,
)
from .report import (
    QueryReport,
    Report,
    report_from_json,
    report_to_json,
    run_from_json,
    run_to_json,
)
from .static_cover import (
    WILDCARD,
    GraphSpace,
    diam_deg_coverable,
    static_coverable,
    static_pre_basis,
    static_witness_run,
)
from .vass import (
    Label,
    VassConfig,
    VassSpace,
    VassSpec,
    VassTransition,
    add_receives,
    complete_receives,
    finite_spec,
    strip_receives,
    vass_covered_by_initial,
    vass_initial_configs,
    vass_leq,
    vass_min_enabling,
    vass_pre_basis,
    vass_successors,
)
from .cli import run_queries

__version__ = "0.1.0"
