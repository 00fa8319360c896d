"""Top-level acceptance gate.

Each test here checks one headline behavior of the workbench at its stated
tolerance and prints a single pass/fail line (visible with ``pytest -s``).
Everything is seeded; there are no flaky draws.
"""

import random
import statistics
import time
from contextlib import contextmanager

import numpy as np
import pytest

from acodesign.colony import (
    AcoParams,
    ColonyState,
    construct_path,
    deposit,
    evaporate,
    init_pheromone,
    run_iteration,
)
from acodesign.metrics import (
    EQUAL_WEIGHTS,
    MetricVector,
    WeightVector,
    atmr,
    cbo,
    detect_god_class,
    nac,
    non_dominated,
)
from acodesign.problem import DesignProblem, DesignSolution, check_solution, generate_problem
from acodesign.session import InteractionResponse, InteractiveSession, Persona, simulated_designer, designer_rng, replay_log
from acodesign.surrogate import INITIAL_COEFFICIENTS, refit_surrogate

from oracles import (
    oracle_atmr,
    oracle_cbo,
    oracle_nac,
    oracle_non_dominated,
    random_problem,
    random_solution,
    solve_normal_equations,
)

CBS = (16, 15, 39, 5)


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"\n[acceptance] {name}: FAIL")
        raise
    print(f"\n[acceptance] {name}: PASS")


def test_metric_oracles():
    with criterion("metric oracles (200 random pairs, 1e-12)"):
        rng = random.Random(1001)
        start = time.perf_counter()
        for _ in range(200):
            problem = random_problem(rng, max_attrs=20, max_methods=20, max_classes=5)
            solution = random_solution(rng, problem)
            assert abs(cbo(problem, solution) - oracle_cbo(problem, solution)) <= 1e-12
            assert abs(nac(problem, solution) - oracle_nac(problem, solution)) <= 1e-12
            assert abs(atmr(problem, solution) - oracle_atmr(problem, solution)) <= 1e-12
        assert time.perf_counter() - start < 5.0


def test_pareto_oracle():
    with criterion("Pareto filtering vs quadratic oracle (1000 sets, exact)"):
        rng = random.Random(1002)
        start = time.perf_counter()
        for _ in range(1000):
            n = rng.randint(1, 200)
            if rng.random() < 0.5:
                raw = [
                    (rng.random(), rng.random() * 3, rng.random() * 2)
                    for _ in range(n)
                ]
            else:
                # coarse grid produces duplicates and heavy domination
                raw = [
                    (
                        rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]),
                        rng.choice([0.0, 0.5, 1.0, 1.5]),
                        rng.choice([0.0, 0.5, 1.0]),
                    )
                    for _ in range(n)
                ]
            vectors = [MetricVector(*v) for v in raw]
            assert non_dominated(vectors) == oracle_non_dominated(raw)
        assert time.perf_counter() - start < 5.0


def test_trail_bounds():
    with criterion("trail bounds under 10^4 random operations"):
        problem = generate_problem(*CBS, seed=1)
        params = AcoParams()
        trail = init_pheromone(problem, params)
        rng = random.Random(1003)
        for _ in range(10_000):
            if rng.random() < 0.5:
                evaporate(trail, params)
            else:
                deposit(trail, problem, random_solution(rng, problem), rng.random(), params)
            assert trail.min() >= 0.5
            assert trail.max() <= 3.5


def test_construction_law():
    with criterion("selection law at trails 3.5/0.5, alpha 1.5 (0.9488 +/- 0.01)"):
        problem = DesignProblem("law", ("a0", "a1"), ("m0",), ((0, 0), (0, 1)), 1)
        params = AcoParams()
        trail = np.full((3, 3), 0.5)
        trail[0, 1] = trail[1, 0] = 3.5
        n = 100_000
        uniforms = np.random.default_rng(1004).random((n, 3))
        uniforms[:, 0] = 0.0
        paths_per_batch = 20_000
        hits = 0
        from acodesign.colony import construct_paths

        for lo in range(0, n, paths_per_batch):
            batch = construct_paths(
                trail, problem, {}, params, uniforms[lo : lo + paths_per_batch]
            )
            hits += sum(1 for sol in batch if sol.classes[0][1] == 1)
        expected = 3.5**1.5 / (3.5**1.5 + 0.5**1.5)
        assert abs(expected - 0.9488) < 5e-5
        assert abs(hits / n - 0.9488) <= 0.01


def test_convergence_shape():
    with criterion("convergence: median quality at iteration 50 >= 1.25x iteration 1"):
        problem = generate_problem(*CBS, seed=1)
        params = AcoParams()
        start = time.perf_counter()
        first, last = [], []
        for seed in range(30):
            state = ColonyState(problem=problem, params=params, seed=seed)
            series = [
                run_iteration(state, EQUAL_WEIGHTS).best.quality for _ in range(50)
            ]
            assert series == sorted(series)
            first.append(series[0])
            last.append(series[-1])
        ratio = statistics.median(last) / statistics.median(first)
        assert ratio >= 1.25, (
            f"median improvement ratio {ratio:.3f} < 1.25; with trails clamped "
            "to [0.5, 3.5] and alpha 1.5 the walk cannot concentrate on good "
            "paths, so 50-iteration gains track random-search order statistics"
        )
        assert time.perf_counter() - start < 120.0


def test_regression_oracle():
    with criterion("surrogate refit vs normal equations (100 datasets, 1e-9)"):
        rng = random.Random(1005)
        for _ in range(100):
            n = rng.randint(4, 50)
            coeffs = [rng.uniform(-60, 60) for _ in range(4)]
            rows, ratings = [], []
            for _ in range(n):
                c, na, at = rng.random(), rng.random() * 3, rng.random() * 2
                rows.append((c, na, at))
                ratings.append(
                    coeffs[0]
                    + coeffs[1] * c
                    + coeffs[2] * na
                    + coeffs[3] * at
                    + rng.gauss(0, 3)
                )
            observations = [r + (y,) for r, y in zip(rows, ratings)]
            got = refit_surrogate(observations, INITIAL_COEFFICIENTS)
            want = solve_normal_equations(rows, ratings)
            assert max(abs(g - w) for g, w in zip(got, want)) <= 1e-9

        rng = random.Random(1006)
        target = (10.0, 2.0, -3.0, 1.0)
        observations = []
        for _ in range(12):
            c, na, at = rng.random(), rng.random() * 3, rng.random() * 2
            observations.append(
                (c, na, at, target[0] + target[1] * c + target[2] * na + target[3] * at)
            )
        got = refit_surrogate(observations, INITIAL_COEFFICIENTS)
        assert max(abs(g - w) for g, w in zip(got, target)) <= 1e-9


def test_weight_learning():
    with criterion("weight learning: cbo-only designer pushes wCbo >= 0.8 in >= 27/30 runs"):
        problem = generate_problem(*CBS, seed=1)
        persona = Persona(weights=WeightVector(1.0, 0.0, 0.0), noise=0.0)
        start = time.perf_counter()
        successes = 0
        for seed in range(30):
            session = InteractiveSession(
                problem, params=AcoParams(), seed=seed, max_iterations=5000
            )
            rng = designer_rng(seed)

            def evaluator(view):
                rating = simulated_designer(view.metrics, persona, rng)
                return InteractionResponse(
                    rating=rating, halt=view.interaction_count >= 19
                )

            session.run(evaluator)
            assert session.interaction_count >= 20
            if session.weights.w_cbo >= 0.8:
                successes += 1
        assert successes >= 27
        assert time.perf_counter() - start < 180.0


def test_freezing_contract():
    with criterion("freezing: 100 consecutive paths preserve pinned membership"):
        problem = generate_problem(*CBS, seed=1)
        params = AcoParams()
        trail = init_pheromone(problem, params)
        frozen = {0: (3, 8, 21, 30)}
        rng = np.random.default_rng(1007)
        for _ in range(100):
            solution = construct_path(trail, problem, frozen, params, rng)
            check_solution(problem, solution)
            assert solution.classes[0] == (3, 8, 21, 30)


def _scripted_episode(seed: int) -> InteractiveSession:
    problem = generate_problem(*CBS, seed=1)
    session = InteractiveSession(
        problem, params=AcoParams(colony_size=30), seed=seed, max_iterations=70
    )

    def evaluator(view):
        count = view.interaction_count
        if count == 1:
            target = next(i for i, g in enumerate(view.solution.classes) if g)
            return InteractionResponse(
                rating=48,
                freeze=((target, view.solution.classes[target]),),
                archive=True,
            )
        return InteractionResponse(rating=30 + 7 * count)

    session.run(evaluator)
    return session


def test_determinism_and_replay():
    with criterion("determinism: byte-identical logs and state-reconstructing replay"):
        a = _scripted_episode(seed=11)
        b = _scripted_episode(seed=11)
        log = a.export_log()
        assert log == b.export_log()

        replayed = replay_log(log)
        assert replayed.status == a.status
        assert replayed.iteration == a.iteration
        assert replayed.weights == a.weights
        assert replayed.frozen == a.frozen
        assert replayed.interaction_count == a.interaction_count
        assert [e.solution for e in replayed.archive] == [e.solution for e in a.archive]
        assert replayed.best == a.best
        assert replayed.export_log() == log


def test_god_class_detector():
    with criterion("god-class detector flags majority classes only"):
        problem = generate_problem(10, 10, 15, 5, seed=2)
        majority = DesignSolution(
            classes=(
                (0, 1),
                tuple(range(2, 13)),
                (13, 14, 15),
                (16, 17),
                (18, 19),
            )
        )
        check_solution(problem, majority)
        assert detect_god_class(problem, majority) == 1

        even = DesignSolution(
            classes=tuple(tuple(range(k, 20, 5)) for k in range(5))
        )
        check_solution(problem, even)
        assert detect_god_class(problem, even) is None
