"""Interactive ant-colony workbench for early object-oriented class design.

Groups a problem's attributes and methods into classes by ant-colony search
over three minimized design measures (external coupling, class-size
unevenness, attribute-to-method imbalance), with a designer in the loop who
rates candidates, freezes classes and archives designs.  Ratings train a
linear surrogate whose coefficients steer the objective weights.
"""

from .colony import (
    AcoParams,
    BestSoFar,
    ColonySnapshot,
    ColonyState,
    DisplayCandidate,
    FreezeError,
    construct_path,
    construct_paths,
    deposit,
    evaporate,
    init_pheromone,
    run_iteration,
    select_display_candidate,
    vertex_count,
)
from .metrics import (
    EQUAL_WEIGHTS,
    INITIAL_WEIGHTS,
    MetricVector,
    WeightVector,
    atmr,
    cbo,
    class_cohesion,
    cohesion_tier,
    combined_score,
    coupling_matrix,
    coupling_strength,
    detect_god_class,
    dominates,
    metric_vector,
    nac,
    non_dominated,
)
from .problem import (
    SCALE_PRESETS,
    DesignProblem,
    DesignSolution,
    ProblemError,
    check_solution,
    generate_problem,
    load_problem,
    parse_problem,
    problem_document,
    problem_from_document,
    serialize_problem,
)
from .session import (
    ArchiveEntry,
    CandidateView,
    EvaluatorError,
    InteractionError,
    InteractionResponse,
    InteractiveSession,
    Persona,
    designer_rng,
    log_to_csv,
    next_interval,
    persona_evaluator,
    replay_log,
    simulated_designer,
)
from .surrogate import (
    INITIAL_COEFFICIENTS,
    SurrogateModel,
    refit_surrogate,
    weights_from_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "AcoParams",
    "ArchiveEntry",
    "BestSoFar",
    "CandidateView",
    "ColonySnapshot",
    "ColonyState",
    "DesignProblem",
    "DesignSolution",
    "DisplayCandidate",
    "EQUAL_WEIGHTS",
    "EvaluatorError",
    "FreezeError",
    "INITIAL_COEFFICIENTS",
    "INITIAL_WEIGHTS",
    "InteractionError",
    "InteractionResponse",
    "InteractiveSession",
    "MetricVector",
    "Persona",
    "ProblemError",
    "SCALE_PRESETS",
    "SurrogateModel",
    "WeightVector",
    "atmr",
    "cbo",
    "check_solution",
    "class_cohesion",
    "cohesion_tier",
    "combined_score",
    "construct_path",
    "construct_paths",
    "coupling_matrix",
    "coupling_strength",
    "deposit",
    "designer_rng",
    "detect_god_class",
    "dominates",
    "evaporate",
    "generate_problem",
    "init_pheromone",
    "load_problem",
    "log_to_csv",
    "metric_vector",
    "nac",
    "next_interval",
    "non_dominated",
    "parse_problem",
    "persona_evaluator",
    "problem_document",
    "problem_from_document",
    "refit_surrogate",
    "replay_log",
    "run_iteration",
    "select_display_candidate",
    "serialize_problem",
    "simulated_designer",
    "vertex_count",
    "weights_from_coefficients",
]
