"""Structural and elegance measures over candidate designs, all minimized.

Three measures drive the search:

* coupling: fraction of method-uses-attribute pairs that cross a class
  boundary (0 = every use stays inside its class),
* count evenness: mean of the population standard deviations of per-class
  attribute counts and per-class method counts,
* ratio evenness: population standard deviation across classes of the
  attribute-to-method ratio.

Also provides the weighted scalar quality used to rank ants, Pareto
dominance, per-class cohesion/coupling for display, and a god-class check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import DesignProblem, DesignSolution, element_class_array

WEIGHT_SUM_TOLERANCE = 1e-9

# Cohesion display tiers (fractions of a class's touching uses kept internal).
TIER_HIGH_MIN = 2.0 / 3.0
TIER_INTERMEDIATE_MIN = 1.0 / 3.0


@dataclass(frozen=True)
class MetricVector:
    """The three minimized measures for one candidate design."""

    cbo: float
    nac: float
    atmr: float

    def __post_init__(self):
        if not 0.0 <= self.cbo <= 1.0:
            raise ValueError(f"cbo must be in [0,1], got {self.cbo}")
        if self.nac < 0.0 or self.atmr < 0.0:
            raise ValueError("nac and atmr must be non-negative")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.cbo, self.nac, self.atmr)


@dataclass(frozen=True)
class WeightVector:
    """Non-negative objective weights summing to one."""

    w_cbo: float
    w_nac: float
    w_atmr: float

    def __post_init__(self):
        if min(self.w_cbo, self.w_nac, self.w_atmr) < 0.0:
            raise ValueError("weights must be non-negative")
        total = self.w_cbo + self.w_nac + self.w_atmr
        if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise ValueError(f"weights must sum to 1, got {total!r}")

    @classmethod
    def normalized(cls, a: float, b: float, c: float) -> "WeightVector":
        total = a + b + c
        if total <= 0.0:
            raise ValueError("cannot normalize non-positive weight total")
        return cls(a / total, b / total, c / total)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.w_cbo, self.w_nac, self.w_atmr)


INITIAL_WEIGHTS = WeightVector(0.34, 0.33, 0.33)
EQUAL_WEIGHTS = WeightVector.normalized(1.0, 1.0, 1.0)


def _class_counts(problem: DesignProblem, solution: DesignSolution):
    el_class = element_class_array(problem, solution)
    attr_counts = np.bincount(
        el_class[: problem.attribute_count], minlength=problem.class_count
    )
    method_counts = np.bincount(
        el_class[problem.attribute_count :], minlength=problem.class_count
    )
    return el_class, attr_counts, method_counts


def cbo(problem: DesignProblem, solution: DesignSolution) -> float:
    """Fraction of uses whose method and attribute live in different classes."""
    el_class = element_class_array(problem, solution)
    crossing = el_class[problem.use_method_elements] != el_class[problem.use_attribute_elements]
    return float(np.count_nonzero(crossing)) / len(problem.uses)


def nac(problem: DesignProblem, solution: DesignSolution) -> float:
    """Mean of the population std-devs of per-class attribute and method counts."""
    _, attr_counts, method_counts = _class_counts(problem, solution)
    return float((np.std(attr_counts) + np.std(method_counts)) / 2.0)


def atmr(problem: DesignProblem, solution: DesignSolution) -> float:
    """Population std-dev across classes of attributes per method.

    Methodless classes contribute ratio attribute_count / 1 so the measure
    stays finite.
    """
    _, attr_counts, method_counts = _class_counts(problem, solution)
    ratios = attr_counts / np.maximum(method_counts, 1)
    return float(np.std(ratios))


def metric_vector(problem: DesignProblem, solution: DesignSolution) -> MetricVector:
    el_class, attr_counts, method_counts = _class_counts(problem, solution)
    crossing = el_class[problem.use_method_elements] != el_class[problem.use_attribute_elements]
    ratios = attr_counts / np.maximum(method_counts, 1)
    return MetricVector(
        cbo=float(np.count_nonzero(crossing)) / len(problem.uses),
        nac=float((np.std(attr_counts) + np.std(method_counts)) / 2.0),
        atmr=float(np.std(ratios)),
    )


def combined_score(m: MetricVector, w: WeightVector) -> float:
    """Scalar quality in [0,1], higher is better.

    Each measure is mapped to [0,1] through a fixed bounded transform
    (1 - cbo, 1/(1+x)) so scores stay comparable across iterations.
    """
    return (
        w.w_cbo * (1.0 - m.cbo)
        + w.w_nac * (1.0 / (1.0 + m.nac))
        + w.w_atmr * (1.0 / (1.0 + m.atmr))
    )


def dominates(a: MetricVector, b: MetricVector) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and better somewhere."""
    at, bt = a.as_tuple(), b.as_tuple()
    return all(x <= y for x, y in zip(at, bt)) and any(x < y for x, y in zip(at, bt))


def non_dominated(vectors: list[MetricVector]) -> list[int]:
    """Indices of vectors not dominated by any other; duplicates all survive."""
    if not vectors:
        raise ValueError("non_dominated requires a non-empty set")
    arr = np.array([v.as_tuple() for v in vectors])
    # le[i, j]: i is no worse than j everywhere; lt[i, j]: better somewhere
    le = (arr[:, None, :] <= arr[None, :, :]).all(axis=2)
    lt = (arr[:, None, :] < arr[None, :, :]).any(axis=2)
    dominated = (le & lt).any(axis=0)
    return [int(i) for i in np.flatnonzero(~dominated)]


def class_cohesion(problem: DesignProblem, solution: DesignSolution, class_idx: int) -> float:
    """Internal uses over uses touching the class; 0 when nothing touches it."""
    if not 0 <= class_idx < problem.class_count:
        raise ValueError(f"invalid class index {class_idx}")
    el_class = element_class_array(problem, solution)
    m_cls = el_class[problem.use_method_elements]
    a_cls = el_class[problem.use_attribute_elements]
    touching = (m_cls == class_idx) | (a_cls == class_idx)
    n_touching = int(np.count_nonzero(touching))
    if n_touching == 0:
        return 0.0
    internal = int(np.count_nonzero((m_cls == class_idx) & (a_cls == class_idx)))
    return internal / n_touching


def cohesion_tier(value: float) -> str:
    if value >= TIER_HIGH_MIN:
        return "high"
    if value >= TIER_INTERMEDIATE_MIN:
        return "intermediate"
    return "low"


def coupling_strength(
    problem: DesignProblem, solution: DesignSolution, i: int, j: int
) -> int:
    """Number of uses with method in class ``i`` and attribute in class ``j``."""
    if i == j:
        raise ValueError("coupling is defined between distinct classes")
    for idx in (i, j):
        if not 0 <= idx < problem.class_count:
            raise ValueError(f"invalid class index {idx}")
    el_class = element_class_array(problem, solution)
    m_cls = el_class[problem.use_method_elements]
    a_cls = el_class[problem.use_attribute_elements]
    return int(np.count_nonzero((m_cls == i) & (a_cls == j)))


def coupling_matrix(problem: DesignProblem, solution: DesignSolution) -> np.ndarray:
    """Directed class-to-class use counts; the diagonal (internal uses) is zeroed."""
    el_class = element_class_array(problem, solution)
    m_cls = el_class[problem.use_method_elements]
    a_cls = el_class[problem.use_attribute_elements]
    c = problem.class_count
    out = np.bincount(m_cls * c + a_cls, minlength=c * c).reshape(c, c)
    np.fill_diagonal(out, 0)
    return out


def detect_god_class(problem: DesignProblem, solution: DesignSolution) -> int | None:
    """Index of a class holding a strict majority of all elements, if any.

    Only meaningful with three or more classes; below that a majority holder
    is unremarkable, so nothing is flagged.
    """
    if problem.class_count < 3:
        return None
    half = problem.element_count / 2.0
    for idx, group in enumerate(solution.classes):
        if len(group) > half:
            return idx
    return None
