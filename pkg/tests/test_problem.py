"""Instance validation, JSON round-trips and the seeded generator."""

import json

import pytest
from hypothesis import given, settings

from acodesign.problem import (
    SCALE_PRESETS,
    DesignProblem,
    DesignSolution,
    ProblemError,
    check_solution,
    element_class_array,
    generate_problem,
    load_problem,
    parse_problem,
    problem_document,
    problem_from_document,
    serialize_problem,
)

from conftest import problems


def make_document(**overrides) -> dict:
    doc = {
        "name": "doc",
        "classCount": 2,
        "attributes": ["x", "y"],
        "methods": ["f", "g"],
        "uses": [["f", "x"], ["g", "y"]],
    }
    doc.update(overrides)
    return doc


class TestValidation:
    def test_minimal_problem_accepted(self):
        p = DesignProblem("p", ("a",), ("m",), ((0, 0),), 1)
        assert p.element_count == 2

    def test_duplicate_attribute_label_rejected(self):
        with pytest.raises(ProblemError, match="duplicate attribute"):
            DesignProblem("p", ("a", "a"), ("m",), ((0, 0),), 1)

    def test_duplicate_use_rejected(self):
        with pytest.raises(ProblemError, match="duplicate use"):
            DesignProblem("p", ("a",), ("m",), ((0, 0), (0, 0)), 1)

    def test_use_with_unknown_method_rejected(self):
        with pytest.raises(ProblemError, match="unknown method"):
            DesignProblem("p", ("a",), ("m",), ((3, 0),), 1)

    def test_class_count_below_one_rejected(self):
        with pytest.raises(ProblemError, match="classCount"):
            DesignProblem("p", ("a",), ("m",), ((0, 0),), 0)

    def test_class_count_above_elements_rejected(self):
        with pytest.raises(ProblemError, match="classCount"):
            DesignProblem("p", ("a",), ("m",), ((0, 0),), 3)

    def test_empty_uses_rejected(self):
        with pytest.raises(ProblemError, match="use"):
            DesignProblem("p", ("a",), ("m",), (), 1)

    def test_element_addressing(self):
        p = DesignProblem("p", ("a0", "a1"), ("m0",), ((0, 0),), 2)
        assert p.element_label(0) == "a0"
        assert p.element_label(2) == "m0"
        assert p.is_attribute(1)
        assert not p.is_attribute(2)


class TestDocuments:
    def test_parse_counts_echo_input(self):
        p = parse_problem(json.dumps(make_document()))
        assert (p.attribute_count, p.method_count, len(p.uses), p.class_count) == (
            2,
            2,
            2,
            2,
        )

    def test_parse_unknown_attribute_label(self):
        doc = make_document(uses=[["f", "nope"]])
        with pytest.raises(ProblemError, match="unknown attribute"):
            parse_problem(json.dumps(doc))

    def test_parse_unknown_method_label(self):
        doc = make_document(uses=[["nope", "x"]])
        with pytest.raises(ProblemError, match="unknown method"):
            parse_problem(json.dumps(doc))

    def test_parse_missing_field(self):
        doc = make_document()
        del doc["classCount"]
        with pytest.raises(ProblemError, match="classCount"):
            parse_problem(json.dumps(doc))

    def test_parse_malformed_json(self):
        with pytest.raises(ProblemError, match="malformed"):
            parse_problem("{not json")

    def test_parse_non_object(self):
        with pytest.raises(ProblemError):
            parse_problem("[1,2]")

    def test_parse_bad_use_shape(self):
        doc = make_document(uses=[["f"]])
        with pytest.raises(ProblemError, match="pair"):
            parse_problem(json.dumps(doc))

    def test_round_trip_minimal(self):
        p = DesignProblem("p", ("a",), ("m",), ((0, 0),), 1)
        assert parse_problem(serialize_problem(p)) == p

    def test_round_trip_gdp_scale(self):
        p = generate_problem(*SCALE_PRESETS["gdp"], seed=3)
        assert parse_problem(serialize_problem(p)) == p

    def test_unicode_labels_round_trip_byte_stable(self):
        p = DesignProblem("unicode", ("saldo", "dueño"), ("función",), ((0, 1),), 2)
        text = serialize_problem(p)
        assert serialize_problem(parse_problem(text)) == text
        assert "dueño" in text

    def test_document_round_trip_dict_level(self):
        p = generate_problem(4, 4, 6, 3, seed=0)
        assert problem_from_document(problem_document(p)) == p

    @settings(max_examples=50)
    @given(problems())
    def test_round_trip_property(self, p):
        assert parse_problem(serialize_problem(p)) == p

    def test_load_problem(self, tmp_path):
        p = generate_problem(3, 3, 4, 2, seed=9)
        path = tmp_path / "inst.json"
        path.write_text(serialize_problem(p), encoding="utf-8")
        assert load_problem(path) == p


class TestGenerator:
    def test_exact_counts(self):
        p = generate_problem(16, 15, 39, 5, seed=1)
        assert p.attribute_count == 16
        assert p.method_count == 15
        assert len(p.uses) == 39
        assert p.class_count == 5

    def test_every_method_used(self):
        for seed in range(5):
            p = generate_problem(10, 8, 12, 3, seed=seed)
            used_methods = {m for m, _ in p.uses}
            assert used_methods == set(range(8))

    def test_deterministic(self):
        assert generate_problem(6, 5, 9, 3, seed=42) == generate_problem(
            6, 5, 9, 3, seed=42
        )

    def test_seed_changes_instance(self):
        a = generate_problem(16, 15, 39, 5, seed=1)
        b = generate_problem(16, 15, 39, 5, seed=2)
        assert a.uses != b.uses

    def test_infeasible_too_many_uses(self):
        with pytest.raises(ProblemError, match="2x2|4"):
            generate_problem(2, 2, 5, 1, seed=1)

    def test_infeasible_fewer_uses_than_methods(self):
        with pytest.raises(ProblemError):
            generate_problem(5, 4, 3, 2, seed=1)

    def test_all_scale_presets_valid(self):
        for name, (a, m, u, c) in SCALE_PRESETS.items():
            p = generate_problem(a, m, u, c, seed=7)
            assert p.attribute_count == a and p.method_count == m
            assert len(p.uses) == u and p.class_count == c


class TestSolutions:
    def test_check_solution_accepts_valid_partition(self, tiny_problem):
        sol = DesignSolution(classes=((0, 2), (1, 3)))
        check_solution(tiny_problem, sol)

    def test_check_solution_rejects_missing_element(self, tiny_problem):
        with pytest.raises(ProblemError, match="every element"):
            check_solution(tiny_problem, DesignSolution(classes=((0, 2), (1,))))

    def test_check_solution_rejects_duplicate_element(self, tiny_problem):
        with pytest.raises(ProblemError, match="every element"):
            check_solution(tiny_problem, DesignSolution(classes=((0, 2), (1, 3, 0))))

    def test_check_solution_rejects_wrong_class_count(self, tiny_problem):
        with pytest.raises(ProblemError, match="classes"):
            check_solution(tiny_problem, DesignSolution(classes=((0, 1, 2, 3),)))

    def test_class_of(self):
        sol = DesignSolution(classes=((2, 0), (1,)))
        assert sol.class_of(2) == 0
        assert sol.class_of(1) == 1
        with pytest.raises(ValueError):
            sol.class_of(9)

    def test_element_class_array(self, tiny_problem):
        sol = DesignSolution(classes=((0, 3), (1, 2)))
        assert element_class_array(tiny_problem, sol).tolist() == [0, 1, 1, 0]
