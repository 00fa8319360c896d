"""HTTP facade for interactive sessions, consumed by the browser front end.

The contract is plain request/response with polling.  A freshly created
session sits at iteration 0 and is not awaiting input; a POST to
``/advance`` runs the colony to the next interaction point, after which the
snapshot carries the displayed candidate and ``awaiting`` is true.  Designer
actions are submitted one at a time: freeze, unfreeze and archive apply
immediately and keep the session awaiting, while rate and halt conclude the
interaction (rate also advances to the next interaction point).  Submissions
while the session is not awaiting are rejected with 409 and change nothing.

Endpoints (all JSON unless noted):

    POST /api/sessions                         create a session
    GET  /api/sessions/{id}/snapshot           point-in-time state
    POST /api/sessions/{id}/advance            run to the next interaction
    POST /api/sessions/{id}/interactions       submit one designer action
    GET  /api/sessions/{id}/archive            archived candidates
    GET  /api/sessions/{id}/log?format=...     episode log (ndjson or csv)

Session ids are transport-only UUIDs; reproducibility hangs off the run id
and seed inside the episode log.
"""

from __future__ import annotations

import threading
import uuid
from datetime import datetime, timezone
from typing import Literal

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel, Field, model_validator

from .colony import AcoParams
from .metrics import class_cohesion, cohesion_tier, coupling_matrix
from .problem import DesignProblem, ProblemError, generate_problem, problem_from_document
from .session import InteractionError, InteractiveSession, log_to_csv

API_SCHEMA_VERSION = 1


class GenerateSpec(BaseModel):
    attributes: int
    methods: int
    uses: int
    classCount: int


class ParamsSpec(BaseModel):
    colonySize: int | None = None
    alpha: float | None = None
    mu: float | None = None
    sigma: float | None = None
    tMin: float | None = None
    tMax: float | None = None

    def to_params(self) -> AcoParams:
        defaults = AcoParams()
        return AcoParams(
            colony_size=self.colonySize if self.colonySize is not None else defaults.colony_size,
            alpha=self.alpha if self.alpha is not None else defaults.alpha,
            mu=self.mu if self.mu is not None else defaults.mu,
            sigma=self.sigma if self.sigma is not None else defaults.sigma,
            t_min=self.tMin if self.tMin is not None else defaults.t_min,
            t_max=self.tMax if self.tMax is not None else defaults.t_max,
        )


class CreateSessionRequest(BaseModel):
    problem: dict | None = None
    generate: GenerateSpec | None = None
    seed: int = 0
    params: ParamsSpec | None = None
    maxIterations: int | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.problem is None) == (self.generate is None):
            raise ValueError("provide exactly one of 'problem' or 'generate'")
        return self


class InteractionRequest(BaseModel):
    action: Literal["rate", "freeze", "unfreeze", "archive", "halt"]
    rating: int | None = Field(default=None, ge=1, le=100)
    classIndex: int | None = None
    # member labels to pin; omitted = the displayed class's full member set
    members: list[str] | None = None

    @model_validator(mode="after")
    def _shape(self):
        if self.action == "rate" and self.rating is None:
            raise ValueError("'rate' requires a rating")
        if self.action in ("freeze", "unfreeze") and self.classIndex is None:
            raise ValueError(f"'{self.action}' requires a classIndex")
        return self


class _Held:
    """One server-side session plus its serialization lock."""

    def __init__(self, session: InteractiveSession):
        self.session = session
        self.lock = threading.Lock()
        self.created_at = datetime.now(timezone.utc).isoformat()


def _label_index(problem: DesignProblem, label: str) -> int:
    for idx in range(problem.element_count):
        if problem.element_label(idx) == label:
            return idx
    raise InteractionError(f"unknown element label {label!r}")


def _candidate_payload(session: InteractiveSession) -> dict | None:
    displayed = session.displayed
    if displayed is None:
        return None
    problem = session.problem
    solution = displayed.solution
    classes = []
    for idx, group in enumerate(solution.classes):
        tier = cohesion_tier(class_cohesion(problem, solution, idx))
        classes.append(
            {
                "index": idx,
                "members": [problem.element_label(e) for e in group],
                "cohesionTier": tier,
                "frozen": idx in session.frozen,
            }
        )
    strengths = coupling_matrix(problem, solution)
    couples = [
        {"fromClass": int(i), "toClass": int(j), "strength": int(strengths[i, j])}
        for i in range(problem.class_count)
        for j in range(problem.class_count)
        if strengths[i, j] > 0
    ]
    return {
        "classes": classes,
        "couples": couples,
        "metrics": {
            "cbo": displayed.metrics.cbo,
            "nac": displayed.metrics.nac,
            "atmr": displayed.metrics.atmr,
        },
    }


def _snapshot_payload(session_id: str, held: _Held) -> dict:
    session = held.session
    best = session.best
    return {
        "schema": API_SCHEMA_VERSION,
        "sessionId": session_id,
        "runId": session.run_id,
        "problemName": session.problem.name,
        "status": session.status,
        "iteration": session.iteration,
        "awaiting": session.awaiting_interaction,
        "weights": {
            "cbo": session.weights.w_cbo,
            "nac": session.weights.w_nac,
            "atmr": session.weights.w_atmr,
        },
        "bestQuality": best.quality if best is not None else None,
        "candidate": _candidate_payload(session),
        "interactionCount": session.interaction_count,
        "archiveSize": len(session.archive),
    }


def create_app() -> FastAPI:
    app = FastAPI(title="acodesign session service", version="1.0")
    sessions: dict[str, _Held] = {}

    def held_or_404(session_id: str) -> _Held:
        held = sessions.get(session_id)
        if held is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return held

    @app.post("/api/sessions", status_code=201)
    def create_session(request: CreateSessionRequest) -> dict:
        try:
            if request.problem is not None:
                problem = problem_from_document(request.problem)
            else:
                g = request.generate
                problem = generate_problem(
                    g.attributes, g.methods, g.uses, g.classCount, seed=request.seed
                )
            params = (request.params or ParamsSpec()).to_params()
            session = InteractiveSession(
                problem,
                params=params,
                seed=request.seed,
                max_iterations=request.maxIterations,
            )
        except (ProblemError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session_id = str(uuid.uuid4())
        held = _Held(session)
        sessions[session_id] = held
        return {
            "schema": API_SCHEMA_VERSION,
            "sessionId": session_id,
            "runId": session.run_id,
            "problemName": problem.name,
            "status": session.status,
            "createdAt": held.created_at,
        }

    @app.get("/api/sessions/{session_id}/snapshot")
    def get_snapshot(session_id: str) -> dict:
        held = held_or_404(session_id)
        with held.lock:
            return _snapshot_payload(session_id, held)

    @app.post("/api/sessions/{session_id}/advance")
    def advance(session_id: str) -> dict:
        held = held_or_404(session_id)
        with held.lock:
            held.session.advance_to_interaction()
            return _snapshot_payload(session_id, held)

    @app.post("/api/sessions/{session_id}/interactions")
    def submit_interaction(session_id: str, request: InteractionRequest) -> dict:
        held = held_or_404(session_id)
        with held.lock:
            session = held.session
            if not session.awaiting_interaction:
                raise HTTPException(
                    status_code=409,
                    detail="session is not awaiting an interaction",
                )
            try:
                if request.action == "rate":
                    session.conclude_interaction(request.rating)
                    session.advance_to_interaction()
                elif request.action == "halt":
                    session.conclude_interaction(None, halt=True)
                elif request.action == "freeze":
                    if request.members is None:
                        members = session.displayed.solution.classes[request.classIndex]
                    else:
                        members = tuple(
                            _label_index(session.problem, l) for l in request.members
                        )
                    session.freeze_class(request.classIndex, members)
                elif request.action == "unfreeze":
                    session.unfreeze_class(request.classIndex)
                else:
                    session.archive_displayed()
            except (InteractionError, IndexError, ValueError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            return _snapshot_payload(session_id, held)

    @app.get("/api/sessions/{session_id}/archive")
    def list_archive(session_id: str) -> dict:
        held = held_or_404(session_id)
        with held.lock:
            session = held.session
            problem = session.problem
            entries = [
                {
                    "iteration": entry.iteration,
                    "classes": [
                        [problem.element_label(e) for e in group]
                        for group in entry.solution.classes
                    ],
                    "metrics": {
                        "cbo": entry.metrics.cbo,
                        "nac": entry.metrics.nac,
                        "atmr": entry.metrics.atmr,
                    },
                }
                for entry in session.archive
            ]
            return {"schema": API_SCHEMA_VERSION, "entries": entries}

    @app.get("/api/sessions/{session_id}/log")
    def export_log(session_id: str, format: Literal["ndjson", "csv"] = "ndjson"):
        held = held_or_404(session_id)
        with held.lock:
            text = held.session.export_log()
        if format == "csv":
            return Response(content=log_to_csv(text), media_type="text/csv")
        return Response(content=text, media_type="application/x-ndjson")

    return app
