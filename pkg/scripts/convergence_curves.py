"""Headless convergence curves across the built-in problem scales.

Runs the colony with fixed equal weights for several seeds per scale and
writes one CSV of median best-quality-so-far per iteration, plus a console
table of milestone iterations.

Usage:
    python3 scripts/convergence_curves.py --out curves.csv --seeds 10 --iterations 100
"""

import argparse
import csv
import statistics
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from acodesign import (
    SCALE_PRESETS,
    AcoParams,
    ColonyState,
    EQUAL_WEIGHTS,
    generate_problem,
    run_iteration,
)

MILESTONES = (1, 10, 25, 35, 50, 75, 100)


def curve_for(problem, seed: int, iterations: int) -> list[float]:
    state = ColonyState(problem=problem, params=AcoParams(), seed=seed)
    return [run_iteration(state, EQUAL_WEIGHTS).best.quality for _ in range(iterations)]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scales", nargs="*", default=sorted(SCALE_PRESETS))
    ap.add_argument("--seeds", type=int, default=10, help="number of seeds per scale")
    ap.add_argument("--iterations", type=int, default=100)
    ap.add_argument("--instance-seed", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("convergence_curves.csv"))
    args = ap.parse_args()

    rows = []
    for scale in args.scales:
        if scale not in SCALE_PRESETS:
            ap.error(f"unknown scale {scale!r}; choose from {sorted(SCALE_PRESETS)}")
        problem = generate_problem(*SCALE_PRESETS[scale], seed=args.instance_seed)
        curves = [curve_for(problem, s, args.iterations) for s in range(args.seeds)]
        medians = [statistics.median(c[k] for c in curves) for k in range(args.iterations)]
        rows.append((scale, medians))
        marks = {m: medians[m - 1] for m in MILESTONES if m <= args.iterations}
        print(f"{scale:4s} " + "  ".join(f"it{m}={q:.4f}" for m, q in marks.items()))

    with args.out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scale", "iteration", "medianBestQuality"])
        for scale, medians in rows:
            for k, q in enumerate(medians, start=1):
                writer.writerow([scale, k, f"{q:.6f}"])
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
