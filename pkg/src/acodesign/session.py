"""One interactive design episode: search legs, ratings, hints and the log.

A session alternates colony iterations with designer interactions.  At each
interaction a candidate drawn from the iteration's non-dominated set is
shown; the designer rates it 1-100 and may freeze/unfreeze classes, archive
the candidate or halt.  Ratings feed the surrogate model, whose refit
coefficients become the objective weights for subsequent iterations, and the
gap to the next interaction shrinks as the best quality rises.

Everything that happens is appended to an episode log of newline-delimited
JSON records.  Given the same problem, parameters, seed and scripted
interactions the log is byte-identical, and :func:`replay_log` rebuilds the
final session state from a log alone.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass

import numpy as np

from .colony import (
    AcoParams,
    BestSoFar,
    ColonySnapshot,
    ColonyState,
    DisplayCandidate,
    display_rng,
    run_iteration,
    select_display_candidate,
)
from .metrics import INITIAL_WEIGHTS, MetricVector, WeightVector, combined_score
from .problem import DesignProblem, DesignSolution, problem_document, problem_from_document
from .surrogate import SurrogateModel

LOG_SCHEMA_VERSION = 1

RUNNING = "running"
HALTED = "halted"

# Interaction gap bounds: 15 iterations while fitness is poor, floor of 3 so
# the designer is never interrupted every iteration.
INTERVAL_MIN = 3
INTERVAL_MAX = 15

_DOMAIN_DESIGNER = 2

# Column order of the CSV export of an episode log; absent fields stay empty.
CSV_COLUMNS = [
    "type",
    "run_id",
    "iteration",
    "best_cbo",
    "best_nac",
    "best_atmr",
    "rating",
    "w_cbo",
    "w_nac",
    "w_atmr",
    "frozen",
    "unfrozen",
    "archived",
    "halted",
    "candidate_cbo",
    "candidate_nac",
    "candidate_atmr",
    "reason",
]


class InteractionError(ValueError):
    """An interaction command that cannot be applied to the current state."""


class EvaluatorError(RuntimeError):
    """The designer callback failed; the session is paused, state untouched."""


def next_interval(best_quality: float) -> int:
    """Iterations until the next interaction, decreasing in quality."""
    if not 0.0 <= best_quality <= 1.0:
        raise ValueError(f"quality must be in [0,1], got {best_quality}")
    raw = INTERVAL_MIN + round((INTERVAL_MAX - INTERVAL_MIN) * (1.0 - best_quality))
    return int(min(INTERVAL_MAX, max(INTERVAL_MIN, raw)))


@dataclass(frozen=True)
class Persona:
    """A scripted designer: fixed objective weights plus rating noise."""

    weights: WeightVector
    noise: float = 0.0

    def __post_init__(self):
        if self.noise < 0.0:
            raise ValueError("noise must be non-negative")


def simulated_designer(
    metrics: MetricVector, persona: Persona, rng: np.random.Generator
) -> int:
    """Rating a persona would give: 100 x its weighted quality, plus noise."""
    value = 100.0 * combined_score(metrics, persona.weights)
    if persona.noise > 0.0:
        value += rng.normal(0.0, persona.noise)
    return int(min(100, max(1, round(value))))


def designer_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng((seed, _DOMAIN_DESIGNER))


def persona_evaluator(persona: Persona, seed: int):
    """Evaluator callback that rates every candidate and never halts."""
    rng = designer_rng(seed)

    def evaluate(view: CandidateView) -> InteractionResponse:
        return InteractionResponse(rating=simulated_designer(view.metrics, persona, rng))

    return evaluate


@dataclass(frozen=True)
class InteractionResponse:
    """Everything a designer may do at one interaction point."""

    rating: int | None = None
    freeze: tuple[tuple[int, tuple[int, ...]], ...] = ()
    unfreeze: tuple[int, ...] = ()
    archive: bool = False
    halt: bool = False


@dataclass(frozen=True)
class CandidateView:
    """What the designer sees when asked for an interaction."""

    iteration: int
    solution: DesignSolution
    metrics: MetricVector
    weights: WeightVector
    best_quality: float
    interaction_count: int


@dataclass(frozen=True)
class ArchiveEntry:
    solution: DesignSolution
    metrics: MetricVector
    iteration: int


def compute_run_id(problem: DesignProblem, params: AcoParams, seed: int,
                   max_iterations: int | None) -> str:
    """Deterministic episode id: same configuration, same id."""
    material = json.dumps(
        {
            "problem": problem_document(problem),
            "params": _params_document(params),
            "seed": seed,
            "maxIterations": max_iterations,
        },
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
    )
    digest = hashlib.sha1(material.encode("utf-8")).hexdigest()[:8]
    return f"{problem.name}-s{seed}-{digest}"


def _params_document(params: AcoParams) -> dict:
    return {
        "colonySize": params.colony_size,
        "alpha": params.alpha,
        "mu": params.mu,
        "sigma": params.sigma,
        "tMin": params.t_min,
        "tMax": params.t_max,
    }


def _params_from_document(doc: dict) -> AcoParams:
    return AcoParams(
        colony_size=doc["colonySize"],
        alpha=doc["alpha"],
        mu=doc["mu"],
        sigma=doc["sigma"],
        t_min=doc["tMin"],
        t_max=doc["tMax"],
    )


def dump_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class InteractiveSession:
    """Mutable episode state driven by :meth:`step` or the service layer."""

    def __init__(
        self,
        problem: DesignProblem,
        params: AcoParams | None = None,
        seed: int = 0,
        max_iterations: int | None = None,
        initial_weights: WeightVector = INITIAL_WEIGHTS,
    ):
        self.problem = problem
        self.params = params or AcoParams()
        self.seed = seed
        self.max_iterations = max_iterations
        self.colony = ColonyState(problem=problem, params=self.params, seed=seed)
        self.weights = initial_weights
        self.surrogate = SurrogateModel()
        self.frozen: dict[int, tuple[int, ...]] = {}
        self.archive: list[ArchiveEntry] = []
        self.records: list[dict] = []
        self.status = RUNNING
        self.interaction_count = 0
        self.next_interaction_at = next_interval(0.0)
        self.displayed: DisplayCandidate | None = None
        # Optional callable(snapshot, weights, best) invoked after every
        # iteration; used by the CLI to collect the fitness curve.
        self.iteration_observer = None
        self._last_snapshot: ColonySnapshot | None = None
        self._pending_freezes: list[tuple[int, tuple[int, ...]]] = []
        self._pending_unfreezes: list[int] = []
        self._pending_archived = False
        self.run_id = compute_run_id(problem, self.params, seed, max_iterations)
        self.records.append(
            {
                "type": "run",
                "schema": LOG_SCHEMA_VERSION,
                "runId": self.run_id,
                "problem": problem_document(problem),
                "params": _params_document(self.params),
                "seed": seed,
                "maxIterations": max_iterations,
                "initialWeights": list(initial_weights.as_tuple()),
            }
        )

    # -- search legs ---------------------------------------------------

    @property
    def awaiting_interaction(self) -> bool:
        return self.displayed is not None

    @property
    def iteration(self) -> int:
        return self.colony.iteration

    @property
    def best(self) -> BestSoFar | None:
        return self.colony.best

    def advance_to_interaction(self) -> CandidateView | None:
        """Run iterations up to the next interaction point and pick a candidate.

        Returns None once the session halts (designer or iteration cap).
        Idempotent while an interaction is pending, so a failed evaluator can
        simply be retried.
        """
        if self.status != RUNNING:
            return None
        if self.displayed is not None:
            return self._view()
        while self.colony.iteration < self.next_interaction_at:
            if (
                self.max_iterations is not None
                and self.colony.iteration >= self.max_iterations
            ):
                self._halt_at_cap()
                return None
            snapshot = run_iteration(self.colony, self.weights, self.frozen)
            self._last_snapshot = snapshot
            self.records.append(
                {
                    "type": "iteration",
                    "runId": self.run_id,
                    "iteration": snapshot.iteration,
                    "bestCbo": min(m.cbo for m in snapshot.metrics),
                    "bestNac": min(m.nac for m in snapshot.metrics),
                    "bestAtmr": min(m.atmr for m in snapshot.metrics),
                }
            )
            if self.iteration_observer is not None:
                self.iteration_observer(snapshot, self.weights, self.colony.best)
        rng = display_rng(self.seed, self.colony.iteration)
        self.displayed = select_display_candidate(self._last_snapshot, rng)
        return self._view()

    def _view(self) -> CandidateView:
        return CandidateView(
            iteration=self.colony.iteration,
            solution=self.displayed.solution,
            metrics=self.displayed.metrics,
            weights=self.weights,
            best_quality=self.colony.best.quality if self.colony.best else 0.0,
            interaction_count=self.interaction_count,
        )

    def _halt_at_cap(self) -> None:
        self.status = HALTED
        self.records.append(
            {
                "type": "halt",
                "runId": self.run_id,
                "iteration": self.colony.iteration,
                "reason": "max-iterations",
            }
        )

    # -- interaction commands (valid only while a candidate is displayed) --

    def _require_displayed(self) -> DisplayCandidate:
        if self.displayed is None:
            raise InteractionError("no interaction pending")
        return self.displayed

    def freeze_class(self, class_idx: int, members: tuple[int, ...]) -> None:
        """Pin a class to ``members`` (a group of the displayed candidate)."""
        displayed = self._require_displayed()
        members = tuple(members)
        if not members:
            raise InteractionError("cannot freeze an empty member set")
        if not 0 <= class_idx < self.problem.class_count:
            raise InteractionError(f"invalid class index {class_idx}")
        if class_idx in self.frozen:
            raise InteractionError(f"class {class_idx} is already frozen")
        if len(self.frozen) + 1 >= self.problem.class_count:
            raise InteractionError("at least one class must remain unfrozen")
        shown = set(displayed.solution.classes[class_idx])
        if not set(members) <= shown:
            raise InteractionError(
                "members must currently sit in that class of the displayed candidate"
            )
        already = {e for ms in self.frozen.values() for e in ms}
        overlap = already & set(members)
        if overlap:
            raise InteractionError(f"elements {sorted(overlap)} are already frozen")
        self.frozen[class_idx] = members
        self._pending_freezes.append((class_idx, members))

    def unfreeze_class(self, class_idx: int) -> None:
        self._require_displayed()
        if class_idx not in self.frozen:
            raise InteractionError(f"class {class_idx} is not frozen")
        del self.frozen[class_idx]
        self._pending_unfreezes.append(class_idx)

    def archive_displayed(self) -> None:
        displayed = self._require_displayed()
        self.archive.append(
            ArchiveEntry(
                solution=displayed.solution,
                metrics=displayed.metrics,
                iteration=self.colony.iteration,
            )
        )
        self._pending_archived = True

    def conclude_interaction(self, rating: int | None, halt: bool = False) -> None:
        """Close the pending interaction: learn from the rating, log, reschedule."""
        displayed = self._require_displayed()
        if rating is None and not halt:
            raise InteractionError("a rating is required unless halting")
        if rating is not None:
            self.surrogate.record_evaluation(displayed.metrics, rating)
            self.weights = self.surrogate.weights(previous=self.weights)
            best = self.colony.best
            if best is not None:
                self.colony.best = BestSoFar(
                    best.solution,
                    best.metrics,
                    combined_score(best.metrics, self.weights),
                )
        self.interaction_count += 1
        self.records.append(
            {
                "type": "interaction",
                "runId": self.run_id,
                "iteration": self.colony.iteration,
                "rating": rating,
                "weights": list(self.weights.as_tuple()),
                "frozen": [[c, list(ms)] for c, ms in self._pending_freezes],
                "unfrozen": list(self._pending_unfreezes),
                "archived": self._pending_archived,
                "halted": halt,
                "candidate": list(displayed.metrics.as_tuple()),
            }
        )
        self._pending_freezes = []
        self._pending_unfreezes = []
        self._pending_archived = False
        self.displayed = None
        if halt:
            self.status = HALTED
        else:
            quality = self.colony.best.quality if self.colony.best else 0.0
            self.next_interaction_at = self.colony.iteration + next_interval(quality)

    def apply_interaction(self, response: InteractionResponse) -> None:
        for class_idx, members in response.freeze:
            self.freeze_class(class_idx, members)
        for class_idx in response.unfreeze:
            self.unfreeze_class(class_idx)
        if response.archive:
            self.archive_displayed()
        self.conclude_interaction(response.rating, halt=response.halt)

    # -- drivers -------------------------------------------------------

    def step(self, evaluator) -> str:
        """Advance to the next interaction and let ``evaluator`` respond to it."""
        view = self.advance_to_interaction()
        if view is None:
            return self.status
        try:
            response = evaluator(view)
        except Exception as exc:
            raise EvaluatorError(f"designer callback failed: {exc}") from exc
        self.apply_interaction(response)
        return self.status

    def run(self, evaluator) -> str:
        while self.status == RUNNING:
            self.step(evaluator)
        return self.status

    # -- log export ----------------------------------------------------

    def export_log(self) -> str:
        return "\n".join(dump_record(r) for r in self.records) + "\n"


def _freeze_csv(actions: list) -> str:
    return ";".join(f"{c}:" + "+".join(str(e) for e in ms) for c, ms in actions)


def log_to_csv(log_text: str) -> str:
    """Flatten an episode log into CSV with the fixed CSV_COLUMNS order."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for line in log_text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        row = {k: "" for k in CSV_COLUMNS}
        row["type"] = rec["type"]
        row["run_id"] = rec.get("runId", "")
        if "iteration" in rec:
            row["iteration"] = rec["iteration"]
        if rec["type"] == "iteration":
            row["best_cbo"] = rec["bestCbo"]
            row["best_nac"] = rec["bestNac"]
            row["best_atmr"] = rec["bestAtmr"]
        elif rec["type"] == "interaction":
            row["rating"] = "" if rec["rating"] is None else rec["rating"]
            row["w_cbo"], row["w_nac"], row["w_atmr"] = rec["weights"]
            row["frozen"] = _freeze_csv(rec["frozen"])
            row["unfrozen"] = ";".join(str(c) for c in rec["unfrozen"])
            row["archived"] = str(rec["archived"]).lower()
            row["halted"] = str(rec["halted"]).lower()
            row["candidate_cbo"], row["candidate_nac"], row["candidate_atmr"] = rec[
                "candidate"
            ]
        elif rec["type"] == "halt":
            row["reason"] = rec["reason"]
        writer.writerow([row[k] for k in CSV_COLUMNS])
    return out.getvalue()


def replay_log(log_text: str) -> InteractiveSession:
    """Rebuild the session a log came from by re-running it.

    The header pins problem, parameters and seed; interaction records are
    applied as a scripted designer.  Because the engine is deterministic the
    rebuilt session matches the original state field for field, including a
    pending displayed candidate if the log ends mid-episode.
    """
    lines = [json.loads(l) for l in log_text.splitlines() if l.strip()]
    if not lines or lines[0].get("type") != "run":
        raise ValueError("episode log must start with a run record")
    header = lines[0]
    session = InteractiveSession(
        problem=problem_from_document(header["problem"]),
        params=_params_from_document(header["params"]),
        seed=header["seed"],
        max_iterations=header["maxIterations"],
        initial_weights=WeightVector(*header["initialWeights"]),
    )
    interactions = [r for r in lines if r["type"] == "interaction"]
    for rec in interactions:
        view = session.advance_to_interaction()
        if view is None or session.colony.iteration != rec["iteration"]:
            raise ValueError(
                f"log replay diverged at iteration {rec['iteration']}"
            )
        session.apply_interaction(
            InteractionResponse(
                rating=rec["rating"],
                freeze=tuple((c, tuple(ms)) for c, ms in rec["frozen"]),
                unfreeze=tuple(rec["unfrozen"]),
                archive=rec["archived"],
                halt=rec["halted"],
            )
        )
    # Trailing records past the last interaction mean the session was mid-leg
    # or waiting again (or hit its cap); one more advance reproduces that.
    last_iteration = max((r["iteration"] for r in lines if "iteration" in r), default=0)
    if session.status == RUNNING and last_iteration > session.colony.iteration:
        session.advance_to_interaction()
    return session
