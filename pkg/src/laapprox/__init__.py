"""Learning-augmented approximation for dense combinatorial maximization.

Sampled one-bit predictions of an optimal solution drive LP relaxations of
smooth polynomial integer programs; randomized rounding and prediction-free
fallbacks turn them into solutions with checkable guarantees.
"""

from .instances import (
    CnfFormula,
    DensityReport,
    Graph,
    Hypergraph,
    density,
    generate_dense_cnf,
    generate_dense_graph,
    generate_dense_hypergraph,
    generate_planted_maxcut,
    instance_from_json,
    instance_to_json,
    parse_dimacs_cnf,
    parse_dimacs_graph,
    serialize_dimacs_cnf,
    serialize_dimacs_graph,
)
from .polynomial import (
    Decomposition,
    SmoothnessCertificate,
    SmoothPolynomial,
    decompose,
    evaluate_exact,
    linear_polynomial,
    random_smooth_polynomial,
    smoothness,
)
from .prediction import (
    PredictionBundle,
    SampleSet,
    draw_sample,
    noisy_predictor,
    perfect_predictor,
    prediction_error,
    sample_size_maxcut,
)
from .estimator import (
    CutEstimates,
    EvalEstimate,
    RecursiveEstimator,
    estimate_cut_coefficients,
    estimate_slack,
    evaluate_recursive,
)
from .linearize import (
    BinarySearchResult,
    LinearConstraint,
    LinearSystem,
    assemble_dip,
    binary_search_M,
    linearize,
)
from .lp import LpProblem, LpSolution, check_feasible, parse_lp_text, solve_lp, to_lp_text
from .rounding import (
    RoundingOutcome,
    repair_cardinality,
    round_once,
    round_with_retries,
)
from .reductions import (
    cut_value,
    dense_lower_bound,
    densest_subgraph_pip,
    dicut_value,
    hypercut_polynomial,
    hypercut_value,
    induced_edges,
    maxcut_polynomial,
    maxdicut_polynomial,
    maxksat_polynomial,
    satisfied_clauses,
)
from .pipelines import (
    PipSpec,
    RunReport,
    best_of_k_predictions,
    greedy_local_search_cut,
    la_ptas,
    la_ptas_cut,
    laa_cut,
    laa_general,
)
from .oracle import (
    brute_force_max,
    canonical_optimum,
    solve_instance_exactly,
)

__version__ = "0.1.0"
