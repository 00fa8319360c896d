"""Weight-learning sweep with simulated designers.

For each single-minded persona (cares only about one metric) and noise level,
runs interactive sessions against the simulated designer and reports the
steering weights the surrogate learned after a fixed number of ratings.

Usage:
    python3 scripts/persona_sweep.py --seeds 10 --ratings 20 --noise 0.0 0.05
"""

import argparse
import csv
import statistics
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from acodesign import (
    AcoParams,
    InteractionResponse,
    InteractiveSession,
    Persona,
    WeightVector,
    designer_rng,
    generate_problem,
    simulated_designer,
)

PERSONAS = {
    "cbo": WeightVector(1.0, 0.0, 0.0),
    "nac": WeightVector(0.0, 1.0, 0.0),
    "atmr": WeightVector(0.0, 0.0, 1.0),
}


def learned_weights(problem, persona: Persona, seed: int, ratings: int):
    session = InteractiveSession(
        problem, params=AcoParams(), seed=seed, max_iterations=5000
    )
    rng = designer_rng(seed)

    def evaluator(view):
        rating = simulated_designer(view.metrics, persona, rng)
        return InteractionResponse(rating=rating, halt=view.interaction_count >= ratings - 1)

    session.run(evaluator)
    return session.weights


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--ratings", type=int, default=20)
    ap.add_argument("--noise", type=float, nargs="*", default=[0.0, 0.05])
    ap.add_argument("--instance-seed", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("persona_sweep.csv"))
    args = ap.parse_args()

    problem = generate_problem(16, 15, 39, 5, seed=args.instance_seed)
    with args.out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["persona", "noise", "medianWCbo", "medianWNac", "medianWAtmr"])
        for name, target in PERSONAS.items():
            for noise in args.noise:
                persona = Persona(weights=target, noise=noise)
                ws = [
                    learned_weights(problem, persona, seed, args.ratings)
                    for seed in range(args.seeds)
                ]
                med = (
                    statistics.median(w.w_cbo for w in ws),
                    statistics.median(w.w_nac for w in ws),
                    statistics.median(w.w_atmr for w in ws),
                )
                writer.writerow([name, noise] + [f"{v:.4f}" for v in med])
                print(
                    f"persona={name:4s} noise={noise:<5g} learned "
                    f"wCbo={med[0]:.3f} wNac={med[1]:.3f} wAtmr={med[2]:.3f}"
                )
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
