"""Shared fixtures and hypothesis strategies for the suite."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from acodesign.problem import DesignProblem, DesignSolution


@st.composite
def problems(draw, max_attrs: int = 6, max_methods: int = 6, max_classes: int = 4):
    n_attrs = draw(st.integers(1, max_attrs))
    n_methods = draw(st.integers(1, max_methods))
    grid = [(m, a) for m in range(n_methods) for a in range(n_attrs)]
    uses = draw(
        st.lists(st.sampled_from(grid), min_size=1, max_size=len(grid), unique=True)
    )
    class_count = draw(st.integers(1, min(max_classes, n_attrs + n_methods)))
    return DesignProblem(
        name="strategy",
        attributes=tuple(f"a{i}" for i in range(n_attrs)),
        methods=tuple(f"m{i}" for i in range(n_methods)),
        uses=tuple(sorted(uses)),
        class_count=class_count,
    )


@st.composite
def solutions_for(draw, problem: DesignProblem):
    assignment = draw(
        st.lists(
            st.integers(0, problem.class_count - 1),
            min_size=problem.element_count,
            max_size=problem.element_count,
        )
    )
    groups: list[list[int]] = [[] for _ in range(problem.class_count)]
    for e, c in enumerate(assignment):
        groups[c].append(e)
    return DesignSolution(classes=tuple(tuple(g) for g in groups))


@st.composite
def problem_solution_pairs(draw, **kwargs):
    problem = draw(problems(**kwargs))
    solution = draw(solutions_for(problem))
    return problem, solution


@pytest.fixture
def tiny_problem() -> DesignProblem:
    """Two attributes, two methods, four uses, two classes."""
    return DesignProblem(
        name="tiny",
        attributes=("balance", "owner"),
        methods=("deposit", "rename"),
        uses=((0, 0), (0, 1), (1, 1), (1, 0)),
        class_count=2,
    )


@pytest.fixture
def uneven_problem() -> DesignProblem:
    """Three attributes, two methods, three uses, two classes."""
    return DesignProblem(
        name="uneven",
        attributes=("a0", "a1", "a2"),
        methods=("m0", "m1"),
        uses=((0, 0), (0, 1), (1, 2)),
        class_count=2,
    )
