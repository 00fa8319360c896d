"""Linear surrogate of the designer's 1-100 rating and the derived weights.

The model predicts rating = a0 + a1*cbo + a2*nac + a3*atmr and is refit by
ordinary least squares whenever a new rating arrives.  Objective weights are
the coefficient magnitudes of the three measures, normalized to sum to one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Integral

import numpy as np

from .metrics import WeightVector, INITIAL_WEIGHTS
from .metrics import MetricVector

Coefficients = tuple[float, float, float, float]

INITIAL_COEFFICIENTS: Coefficients = (0.0, 0.34, 0.33, 0.33)

# OLS has four unknowns; below this the previous fit is kept.
MIN_OBSERVATIONS = 4


def refit_surrogate(
    observations: list[tuple[float, float, float, float]],
    previous: Coefficients,
) -> Coefficients:
    """Least-squares refit over all observations, or ``previous`` when degenerate.

    An observation is (cbo, nac, atmr, rating).  The fit is attempted only
    with at least four observations and a full-column-rank design matrix
    (intercept plus the three measures); otherwise the previous coefficients
    survive unchanged.
    """
    if len(observations) < MIN_OBSERVATIONS:
        return previous
    data = np.asarray(observations, dtype=float)
    design = np.column_stack([np.ones(len(data)), data[:, :3]])
    solution, _, rank, _ = np.linalg.lstsq(design, data[:, 3], rcond=None)
    if rank < design.shape[1]:
        return previous
    return tuple(float(c) for c in solution)


def weights_from_coefficients(
    a1: float, a2: float, a3: float, previous: WeightVector = INITIAL_WEIGHTS
) -> WeightVector:
    """Objective weights proportional to coefficient magnitude.

    Fitted measure coefficients are expected negative (lower measure, higher
    rating), so magnitudes are used.  All-zero coefficients carry the
    previous weights forward.
    """
    magnitudes = (abs(a1), abs(a2), abs(a3))
    total = sum(magnitudes)
    if total == 0.0:
        return previous
    return WeightVector(*(m / total for m in magnitudes))


@dataclass
class SurrogateModel:
    """Current fit plus the append-only observation log behind it."""

    coefficients: Coefficients = INITIAL_COEFFICIENTS
    observations: list[tuple[float, float, float, float]] = field(default_factory=list)

    def record_evaluation(self, metrics: MetricVector, rating: int) -> None:
        """Append one rated observation and refit."""
        if not isinstance(rating, Integral) or isinstance(rating, bool):
            raise ValueError(f"rating must be an integer, got {rating!r}")
        if not 1 <= rating <= 100:
            raise ValueError(f"rating must be in [1,100], got {rating}")
        self.observations.append((metrics.cbo, metrics.nac, metrics.atmr, float(rating)))
        self.coefficients = refit_surrogate(self.observations, self.coefficients)

    def predict(self, metrics: MetricVector) -> float:
        a0, a1, a2, a3 = self.coefficients
        return a0 + a1 * metrics.cbo + a2 * metrics.nac + a3 * metrics.atmr

    def weights(self, previous: WeightVector = INITIAL_WEIGHTS) -> WeightVector:
        _, a1, a2, a3 = self.coefficients
        return weights_from_coefficients(a1, a2, a3, previous)
