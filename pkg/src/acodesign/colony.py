"""Elitist max-min ant search over the class-assignment graph.

A candidate design is a complete path over one vertex per attribute/method
plus ``class_count - 1`` end-of-class delimiter vertices; delimiters cut the
path into class groups.  Trails are symmetric, clamped to
``[t_min, t_max]``, start at ``t_max``, and only the iteration-best ant
deposits, scaled by its weighted quality.  There is no heuristic visibility
term and no local search.

Determinism: every random draw derives from the colony seed.  Ant ``i`` of
iteration ``k`` consumes row ``i`` of a pre-drawn uniform block for that
iteration, so results do not depend on the order ants are evaluated in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .metrics import MetricVector, WeightVector, combined_score, metric_vector, non_dominated
from .problem import DesignProblem, DesignSolution

# Sub-stream tags so independent purposes never share draws.
_DOMAIN_ANTS = 0
_DOMAIN_DISPLAY = 1

FrozenClasses = dict[int, tuple[int, ...]]


class FreezeError(ValueError):
    """Raised when a frozen-class assignment cannot be honored."""


@dataclass(frozen=True)
class AcoParams:
    """Colony parameters; defaults follow the published configuration."""

    colony_size: int = 100
    alpha: float = 1.5
    mu: float = 3.0
    sigma: float = 0.035
    t_min: float = 0.5
    t_max: float = 3.5

    def __post_init__(self):
        if self.colony_size < 1:
            raise ValueError("colony_size must be >= 1")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        if not 0.0 < self.sigma < 1.0:
            raise ValueError("sigma must be in (0,1)")
        if not 0.0 < self.t_min < self.t_max:
            raise ValueError("need 0 < t_min < t_max")


def vertex_count(problem: DesignProblem) -> int:
    """Element vertices plus class_count - 1 delimiters (path end closes the last class)."""
    return problem.element_count + problem.class_count - 1


def init_pheromone(problem: DesignProblem, params: AcoParams) -> np.ndarray:
    return np.full((vertex_count(problem), vertex_count(problem)), params.t_max)


def evaporate(trail: np.ndarray, params: AcoParams) -> np.ndarray:
    """Decay every trail by sigma, floored at t_min.  Mutates and returns ``trail``."""
    np.maximum(params.t_min, trail * (1.0 - params.sigma), out=trail)
    return trail


def solution_vertex_sequence(problem: DesignProblem, solution: DesignSolution) -> np.ndarray:
    """The complete path encoding a solution: groups in class order, delimiters between."""
    base = problem.element_count
    seq: list[int] = []
    for c, group in enumerate(solution.classes):
        seq.extend(group)
        if c < len(solution.classes) - 1:
            seq.append(base + c)
    return np.asarray(seq, dtype=np.intp)


def deposit(
    trail: np.ndarray,
    problem: DesignProblem,
    path: DesignSolution,
    quality: float,
    params: AcoParams,
) -> np.ndarray:
    """Reinforce consecutive vertex pairs of ``path`` by mu*quality, capped at t_max."""
    if not 0.0 <= quality <= 1.0:
        raise ValueError(f"quality must be in [0,1], got {quality}")
    seq = solution_vertex_sequence(problem, path)
    a, b = seq[:-1], seq[1:]
    trail[a, b] = np.minimum(params.t_max, trail[a, b] + params.mu * quality)
    trail[b, a] = trail[a, b]
    return trail


def check_frozen(problem: DesignProblem, frozen: FrozenClasses) -> None:
    if not frozen:
        return
    seen: set[int] = set()
    for class_idx, members in frozen.items():
        if not 0 <= class_idx < problem.class_count:
            raise FreezeError(f"invalid frozen class index {class_idx}")
        for e in members:
            if not 0 <= e < problem.element_count:
                raise FreezeError(f"frozen member {e} is not an element")
            if e in seen:
                raise FreezeError(f"element {e} appears in two frozen classes")
            seen.add(e)
    if len(frozen) >= problem.class_count:
        raise FreezeError("at least one class must remain unfrozen")


def _residual_layout(problem: DesignProblem, frozen: FrozenClasses):
    """Vertices the ants actually sequence once frozen classes are carved out.

    Returns (vertices, n_free_elements, free_class_slots): ``vertices`` lists
    free element vertex ids first, then the first ``len(free_slots) - 1``
    delimiter vertex ids.
    """
    frozen_members = {e for members in frozen.values() for e in members}
    free_elements = [e for e in range(problem.element_count) if e not in frozen_members]
    free_slots = [c for c in range(problem.class_count) if c not in frozen]
    base = problem.element_count
    delimiters = [base + k for k in range(len(free_slots) - 1)]
    vertices = np.asarray(free_elements + delimiters, dtype=np.intp)
    return vertices, len(free_elements), free_slots


def _walk_batch(sub_alpha: np.ndarray, n_start: int, uniforms: np.ndarray) -> np.ndarray:
    """Sequence all residual vertices for a batch of ants.

    ``sub_alpha`` is trail**alpha restricted to the residual vertices (local
    indexing), ``n_start`` the number of leading vertices eligible as start
    (elements), ``uniforms`` an (ants, vertices) block in [0,1).  One draw is
    consumed per step, forced moves included.  Returns local visit orders.
    """
    n_ants, n_vertices = uniforms.shape
    order = np.empty((n_ants, n_vertices), dtype=np.intp)
    rows = np.arange(n_ants)

    # floor(u * n) can round up to n when u is the largest double below 1
    cur = np.minimum((uniforms[:, 0] * n_start).astype(np.intp), n_start - 1)
    order[:, 0] = cur
    weights = sub_alpha[cur].copy()
    weights[rows, cur] = 0.0

    for step in range(1, n_vertices):
        cum = np.cumsum(weights, axis=1)
        draw = uniforms[:, step] * cum[:, -1]
        nxt = np.minimum((cum <= draw[:, None]).sum(axis=1), n_vertices - 1)
        order[:, step] = nxt
        weights = sub_alpha[nxt]
        weights[rows[:, None], order[:, : step + 1]] = 0.0
    return order


def _orders_to_solutions(
    problem: DesignProblem,
    frozen: FrozenClasses,
    vertices: np.ndarray,
    free_slots: list[int],
    orders: np.ndarray,
) -> list[DesignSolution]:
    base = problem.element_count
    solutions = []
    for row in orders:
        seq = vertices[row]
        groups: list[list[int]] = [[]]
        for v in seq.tolist():
            if v >= base:
                groups.append([])
            else:
                groups[-1].append(v)
        classes: list[tuple[int, ...]] = []
        free_iter = iter(groups)
        for c in range(problem.class_count):
            if c in frozen:
                classes.append(tuple(frozen[c]))
            else:
                classes.append(tuple(next(free_iter)))
        solutions.append(DesignSolution(classes=tuple(classes)))
    return solutions


def construct_paths(
    trail: np.ndarray,
    problem: DesignProblem,
    frozen: FrozenClasses,
    params: AcoParams,
    uniforms: np.ndarray,
) -> list[DesignSolution]:
    """Build one valid solution per row of ``uniforms``.

    Start vertices are uniform over unfrozen elements; each later step picks
    an unvisited residual vertex with probability proportional to
    trail(current, v)**alpha.  Frozen classes keep exactly their members.
    """
    check_frozen(problem, frozen)
    vertices, n_free_elements, free_slots = _residual_layout(problem, frozen)
    n_ants = uniforms.shape[0]

    if n_free_elements == 0:
        empty = np.empty((n_ants, 0), dtype=np.intp)
        return _orders_to_solutions(problem, frozen, vertices[:0], free_slots, empty)

    sub_alpha = trail[np.ix_(vertices, vertices)] ** params.alpha
    orders = _walk_batch(sub_alpha, n_free_elements, uniforms[:, : len(vertices)])
    return _orders_to_solutions(problem, frozen, vertices, free_slots, orders)


def construct_path(
    trail: np.ndarray,
    problem: DesignProblem,
    frozen: FrozenClasses,
    params: AcoParams,
    rng: np.random.Generator,
) -> DesignSolution:
    """Single-ant construction drawing its uniforms from ``rng``."""
    n_vertices = vertex_count(problem)
    uniforms = rng.random(n_vertices).reshape(1, -1)
    return construct_paths(trail, problem, frozen, params, uniforms)[0]


@dataclass(frozen=True)
class BestSoFar:
    solution: DesignSolution
    metrics: MetricVector
    quality: float


@dataclass(frozen=True)
class DisplayCandidate:
    solution: DesignSolution
    metrics: MetricVector


@dataclass
class ColonySnapshot:
    """Everything one iteration produced."""

    iteration: int
    paths: list[DesignSolution]
    metrics: list[MetricVector]
    iteration_best: int
    best: BestSoFar


@dataclass
class ColonyState:
    """Mutable search state; advance it with :func:`run_iteration`."""

    problem: DesignProblem
    params: AcoParams
    seed: int
    trail: np.ndarray = field(init=False)
    iteration: int = field(default=0, init=False)
    best: BestSoFar | None = field(default=None, init=False)

    def __post_init__(self):
        self.trail = init_pheromone(self.problem, self.params)


def ant_uniforms(state: ColonyState, iteration: int) -> np.ndarray:
    """Pre-drawn uniform block for one iteration: row i is ant i's stream."""
    rng = np.random.default_rng((state.seed, _DOMAIN_ANTS, iteration))
    return rng.random((state.params.colony_size, vertex_count(state.problem)))


def display_rng(seed: int, iteration: int) -> np.random.Generator:
    return np.random.default_rng((seed, _DOMAIN_DISPLAY, iteration))


def run_iteration(
    state: ColonyState,
    weights: WeightVector,
    frozen: FrozenClasses | None = None,
) -> ColonySnapshot:
    """Construct, evaluate and reinforce one colony generation.

    The iteration-best ant (ties broken by lowest index) deposits after
    global evaporation; the best-so-far record only moves on a strict
    quality improvement.
    """
    frozen = frozen or {}
    iteration = state.iteration + 1
    uniforms = ant_uniforms(state, iteration)
    paths = construct_paths(state.trail, state.problem, frozen, state.params, uniforms)
    vectors = [metric_vector(state.problem, p) for p in paths]
    scores = [combined_score(m, weights) for m in vectors]

    best_idx = int(np.argmax(scores))
    evaporate(state.trail, state.params)
    deposit(state.trail, state.problem, paths[best_idx], scores[best_idx], state.params)

    if state.best is None or scores[best_idx] > state.best.quality:
        state.best = BestSoFar(paths[best_idx], vectors[best_idx], scores[best_idx])
    state.iteration = iteration
    return ColonySnapshot(
        iteration=iteration,
        paths=paths,
        metrics=vectors,
        iteration_best=best_idx,
        best=state.best,
    )


def select_display_candidate(
    snapshot: ColonySnapshot, rng: np.random.Generator
) -> DisplayCandidate:
    """Uniform pick from the snapshot's non-dominated paths."""
    front = non_dominated(snapshot.metrics)
    pick = front[int(rng.integers(len(front)))]
    return DisplayCandidate(solution=snapshot.paths[pick], metrics=snapshot.metrics[pick])
