"""hyperrec: reconstruct hypergraphs from their pairwise projections.

A projected graph joins two nodes whenever they share a hyperedge.  This
package recovers the hyperedges behind such a graph by optimizing a budgeted
clique sampler on a training hypergraph from the same domain and classifying
the sampled candidate cliques with structural features, alongside the
topological diagnostics and deterministic baselines needed to evaluate the
approach.
"""

from .baselines import baseline_clique_cover, baseline_max_clique, baseline_multiplicity
from .classifier import (
    HyperedgeClassifier,
    Model,
    TrainConfig,
    classify,
    predict_proba,
    train,
)
from .cliques import (
    CliqueCountOverflow,
    CliqueLimitError,
    CliqueSet,
    count_all_cliques,
    maximal_cliques,
)
from .diagnostics import (
    ErrorReport,
    PropertyVector,
    RhoCell,
    RhoTable,
    error_partition,
    property_vector,
    rho_distance,
    rho_table,
)
from .features import (
    MotifContext,
    count_features,
    extract_matrix,
    motif_features,
    summarize,
)
from .hypergraph import (
    FormatError,
    Hypergraph,
    HypergraphFile,
    ProjectedGraph,
    load_hyperedges,
    load_weighted_edges,
    project,
    save_hyperedges,
)
from .pipeline import (
    EvaluationReport,
    HypergraphReconstructor,
    PipelineResult,
    evaluate_partitioned,
    feature_ablation,
    jaccard,
    run_pipeline,
    run_repeated,
    split_dataset,
    tune_beta,
)
from .predicates import is_conformal, is_conformal_triangle, is_sperner
from .sampler import (
    CandidateSet,
    CliqueSampler,
    SamplerPlan,
    ablation_sampler,
    draw_candidates,
    expected_yield,
    optimize_plan,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateSet",
    "CliqueCountOverflow",
    "CliqueLimitError",
    "CliqueSampler",
    "CliqueSet",
    "ErrorReport",
    "EvaluationReport",
    "FormatError",
    "Hypergraph",
    "HypergraphFile",
    "HyperedgeClassifier",
    "HypergraphReconstructor",
    "Model",
    "MotifContext",
    "PipelineResult",
    "ProjectedGraph",
    "PropertyVector",
    "RhoCell",
    "RhoTable",
    "SamplerPlan",
    "TrainConfig",
    "ablation_sampler",
    "baseline_clique_cover",
    "baseline_max_clique",
    "baseline_multiplicity",
    "classify",
    "count_all_cliques",
    "count_features",
    "draw_candidates",
    "error_partition",
    "evaluate_partitioned",
    "expected_yield",
    "extract_matrix",
    "feature_ablation",
    "is_conformal",
    "is_conformal_triangle",
    "is_sperner",
    "jaccard",
    "load_hyperedges",
    "load_weighted_edges",
    "maximal_cliques",
    "motif_features",
    "optimize_plan",
    "predict_proba",
    "project",
    "property_vector",
    "rho_distance",
    "rho_table",
    "run_pipeline",
    "run_repeated",
    "save_hyperedges",
    "split_dataset",
    "summarize",
    "train",
    "tune_beta",
]
