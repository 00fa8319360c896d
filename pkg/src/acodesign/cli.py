"""Command-line entry points: headless experiment runs and the web service.

``acodesign run`` executes one episode against a problem instance (from a
file or generated on the fly) with either a scripted persona or an
interactive terminal prompt, then writes four artifacts into a per-run
directory:

    problem.json    the problem instance that was solved
    episode.ndjson  the full episode log (replayable)
    best_design.json  the best design found, with labels and scores
    fitness.csv     per-iteration curve: iteration, bestCBO, bestNAC,
                    bestATMR, bestQuality, wCbo, wNac, wAtmr

Runs are deterministic: the same configuration and seed yield byte-identical
artifacts.  Nothing is written until the episode has completed, so a failed
run leaves no partial output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .colony import AcoParams
from .metrics import WeightVector
from .problem import DesignProblem, ProblemError, generate_problem, load_problem, serialize_problem
from .session import (
    CandidateView,
    InteractionResponse,
    InteractiveSession,
    Persona,
    persona_evaluator,
)

FITNESS_COLUMNS = [
    "iteration",
    "bestCBO",
    "bestNAC",
    "bestATMR",
    "bestQuality",
    "wCbo",
    "wNac",
    "wAtmr",
]


def _parse_generate(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            "expected attrs,methods,uses,classes (four integers)"
        )
    try:
        a, m, u, c = (int(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer spec: {text!r}") from exc
    return a, m, u, c


def _parse_persona(text: str) -> Persona:
    parts = text.split(",")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError(
            "expected cbo,nac,atmr weights with optional ,noise"
        )
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a numeric spec: {text!r}") from exc
    noise = values[3] if len(values) == 4 else 0.0
    if noise < 0:
        raise argparse.ArgumentTypeError("noise must be non-negative")
    try:
        weights = WeightVector.normalized(*values[:3])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    return Persona(weights=weights, noise=noise)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acodesign",
        description="Interactive ant-colony workbench for early class design",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute one design episode and write artifacts")
    source = run.add_mutually_exclusive_group(required=True)
    source.add_argument("--problem", type=Path, help="problem instance JSON file")
    source.add_argument(
        "--generate",
        type=_parse_generate,
        metavar="A,M,U,C",
        help="generate an instance: attrs,methods,uses,classes (seeded by --seed)",
    )
    run.add_argument("--seed", type=int, required=True, help="master seed for the episode")
    run.add_argument(
        "--iterations",
        type=int,
        default=None,
        help="iteration cap (default 1000 headless, unlimited interactive)",
    )
    driver = run.add_mutually_exclusive_group()
    driver.add_argument(
        "--persona",
        type=_parse_persona,
        metavar="CBO,NAC,ATMR[,NOISE]",
        help="scripted designer: objective weights plus optional rating noise",
    )
    driver.add_argument(
        "--interactive",
        action="store_true",
        help="prompt on stdin at each interaction point",
    )
    run.add_argument("--ants", type=int, default=None, help="colony size")
    run.add_argument("--alpha", type=float, default=None, help="trail exponent")
    run.add_argument("--mu", type=float, default=None, help="deposit factor")
    run.add_argument("--sigma", type=float, default=None, help="evaporation rate")
    run.add_argument("--tmin", type=float, default=None, help="trail floor")
    run.add_argument("--tmax", type=float, default=None, help="trail ceiling")
    run.add_argument(
        "--out", type=Path, default=Path("runs"), help="artifact directory root"
    )

    serve = sub.add_parser("serve", help="start the session web service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _build_params(args: argparse.Namespace) -> AcoParams:
    defaults = AcoParams()
    return AcoParams(
        colony_size=args.ants if args.ants is not None else defaults.colony_size,
        alpha=args.alpha if args.alpha is not None else defaults.alpha,
        mu=args.mu if args.mu is not None else defaults.mu,
        sigma=args.sigma if args.sigma is not None else defaults.sigma,
        t_min=args.tmin if args.tmin is not None else defaults.t_min,
        t_max=args.tmax if args.tmax is not None else defaults.t_max,
    )


def _load_or_generate(args: argparse.Namespace) -> DesignProblem:
    if args.problem is not None:
        return load_problem(args.problem)
    a, m, u, c = args.generate
    return generate_problem(a, m, u, c, seed=args.seed)


def best_design_document(session: InteractiveSession) -> dict:
    """The final best design with human-readable labels and its scores."""
    best = session.best
    if best is None:
        raise RuntimeError("session produced no iterations, nothing to report")
    problem = session.problem
    return {
        "schema": 1,
        "runId": session.run_id,
        "problem": problem.name,
        "iteration": session.iteration,
        "classes": [
            [problem.element_label(e) for e in group] for group in best.solution.classes
        ],
        "metrics": {
            "cbo": best.metrics.cbo,
            "nac": best.metrics.nac,
            "atmr": best.metrics.atmr,
        },
        "quality": best.quality,
        "weights": {
            "cbo": session.weights.w_cbo,
            "nac": session.weights.w_nac,
            "atmr": session.weights.w_atmr,
        },
    }


def fitness_rows_to_csv(rows: list[tuple]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(FITNESS_COLUMNS)
    writer.writerows(rows)
    return out.getvalue()


def _interactive_evaluator(session: InteractiveSession, out=sys.stdout, inp=sys.stdin):
    """Terminal prompt shown at each interaction point."""

    def show(view: CandidateView) -> None:
        problem = session.problem
        print(f"\niteration {view.iteration}  candidate design:", file=out)
        for idx, group in enumerate(view.solution.classes):
            labels = ", ".join(problem.element_label(e) for e in group) or "(empty)"
            mark = " [frozen]" if idx in session.frozen else ""
            print(f"  class {idx}{mark}: {labels}", file=out)
        m = view.metrics
        print(
            f"  cbo={m.cbo:.3f} nac={m.nac:.3f} atmr={m.atmr:.3f}"
            f"  best quality={view.best_quality:.3f}",
            file=out,
        )

    def evaluate(view: CandidateView) -> InteractionResponse:
        show(view)
        print(
            "commands: rate <1-100> | freeze <class> | unfreeze <class>"
            " | archive | halt | show",
            file=out,
        )
        while True:
            print("> ", end="", file=out, flush=True)
            line = inp.readline()
            if not line:
                return InteractionResponse(halt=True)
            words = line.split()
            if not words:
                continue
            cmd, rest = words[0], words[1:]
            try:
                if cmd == "rate" and len(rest) == 1:
                    rating = int(rest[0])
                    if not 1 <= rating <= 100:
                        raise ValueError(f"rating must be in [1,100], got {rating}")
                    return InteractionResponse(rating=rating)
                if cmd == "halt":
                    return InteractionResponse(halt=True)
                if cmd == "archive":
                    session.archive_displayed()
                    print("archived", file=out)
                elif cmd == "freeze" and len(rest) == 1:
                    idx = int(rest[0])
                    members = session.displayed.solution.classes[idx]
                    session.freeze_class(idx, members)
                    print(f"class {idx} frozen", file=out)
                elif cmd == "unfreeze" and len(rest) == 1:
                    session.unfreeze_class(int(rest[0]))
                    print("unfrozen", file=out)
                elif cmd == "show":
                    show(view)
                else:
                    print(f"unrecognized command: {line.strip()}", file=out)
            except (ValueError, IndexError) as exc:
                print(f"cannot do that: {exc}", file=out)

    return evaluate


def run_command(args: argparse.Namespace) -> int:
    if args.persona is None and not args.interactive:
        print("error: one of --persona or --interactive is required", file=sys.stderr)
        return 2
    try:
        params = _build_params(args)
        problem = _load_or_generate(args)
    except (OSError, ProblemError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.iterations is not None:
        max_iterations = args.iterations
    else:
        max_iterations = None if args.interactive else 1000

    session = InteractiveSession(
        problem, params=params, seed=args.seed, max_iterations=max_iterations
    )
    fitness_rows: list[tuple] = []

    def observe(snapshot, weights, best):
        quality = best.quality if best is not None else 0.0
        fitness_rows.append(
            (
                snapshot.iteration,
                min(m.cbo for m in snapshot.metrics),
                min(m.nac for m in snapshot.metrics),
                min(m.atmr for m in snapshot.metrics),
                quality,
                weights.w_cbo,
                weights.w_nac,
                weights.w_atmr,
            )
        )

    session.iteration_observer = observe
    if args.interactive:
        evaluator = _interactive_evaluator(session)
    else:
        evaluator = persona_evaluator(args.persona, seed=args.seed)
    session.run(evaluator)

    run_dir = args.out / session.run_id
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "problem.json").write_text(serialize_problem(problem), encoding="utf-8")
    (run_dir / "episode.ndjson").write_text(session.export_log(), encoding="utf-8")
    (run_dir / "best_design.json").write_text(
        json.dumps(best_design_document(session), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    (run_dir / "fitness.csv").write_text(
        fitness_rows_to_csv(fitness_rows), encoding="utf-8"
    )
    best = session.best
    print(
        f"{session.run_id}: {session.iteration} iterations,"
        f" {session.interaction_count} interactions,"
        f" best quality {best.quality:.4f} -> {run_dir}"
    )
    return 0


def serve_command(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return run_command(args)
    return serve_command(args)


if __name__ == "__main__":
    sys.exit(main())
