"""Design-problem instances: validation, JSON serialization and a seeded generator.

A problem instance fixes a set of attributes, a set of methods, the
method-uses-attribute pairs derived from usage scenarios, and the number of
classes the design must have.  A candidate design groups every attribute and
method into exactly one of those classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

INSTANCE_SCHEMA_VERSION = 1

# Table-style scales used throughout the test-suite and experiment scripts:
# (attributes, methods, uses, classes) for a small, mid and large instance.
SCALE_PRESETS = {
    "cbs": (16, 15, 39, 5),
    "gdp": (43, 12, 121, 5),
    "sc": (52, 30, 126, 15),
}

_GENERATOR_MAX_RETRIES = 1000


class ProblemError(ValueError):
    """Raised for malformed or inconsistent problem instances."""


@dataclass(frozen=True)
class DesignProblem:
    """An immutable class-design search instance.

    Elements are addressed by dense integer ids: attribute ``k`` has id ``k``,
    method ``j`` has id ``attribute_count + j``.  ``uses`` holds
    (method_index, attribute_index) pairs, i.e. category-local indices.
    """

    name: str
    attributes: tuple[str, ...]
    methods: tuple[str, ...]
    uses: tuple[tuple[int, int], ...]
    class_count: int

    def __post_init__(self):
        if not self.name:
            raise ProblemError("problem name must be non-empty")
        if not self.attributes or not self.methods:
            raise ProblemError("need at least one attribute and one method")
        for label in self.attributes + self.methods:
            if not isinstance(label, str) or not label:
                raise ProblemError("labels must be non-empty strings")
        if len(set(self.attributes)) != len(self.attributes):
            raise ProblemError("duplicate attribute label")
        if len(set(self.methods)) != len(self.methods):
            raise ProblemError("duplicate method label")
        if not self.uses:
            raise ProblemError("need at least one use")
        if len(set(self.uses)) != len(self.uses):
            raise ProblemError("duplicate use pair")
        for m, a in self.uses:
            if not 0 <= m < len(self.methods):
                raise ProblemError(f"use references unknown method index {m}")
            if not 0 <= a < len(self.attributes):
                raise ProblemError(f"use references unknown attribute index {a}")
        if self.class_count < 1:
            raise ProblemError("classCount must be >= 1")
        if self.class_count > self.element_count:
            raise ProblemError("classCount exceeds number of attributes and methods")

    @property
    def attribute_count(self) -> int:
        return len(self.attributes)

    @property
    def method_count(self) -> int:
        return len(self.methods)

    @property
    def element_count(self) -> int:
        return len(self.attributes) + len(self.methods)

    def element_label(self, element: int) -> str:
        if element < self.attribute_count:
            return self.attributes[element]
        return self.methods[element - self.attribute_count]

    def is_attribute(self, element: int) -> bool:
        return element < self.attribute_count

    # Per-use element ids, cached as arrays for the metric hot path.
    @cached_property
    def use_method_elements(self) -> np.ndarray:
        return np.array([self.attribute_count + m for m, _ in self.uses], dtype=np.intp)

    @cached_property
    def use_attribute_elements(self) -> np.ndarray:
        return np.array([a for _, a in self.uses], dtype=np.intp)


@dataclass(frozen=True)
class DesignSolution:
    """A partition of all elements into ``class_count`` ordered groups.

    Groups hold element ids and may be empty; element order inside a group is
    the order the constructing ant visited them.
    """

    classes: tuple[tuple[int, ...], ...]

    def class_of(self, element: int) -> int:
        for idx, group in enumerate(self.classes):
            if element in group:
                return idx
        raise ValueError(f"element {element} not present in solution")


def check_solution(problem: DesignProblem, solution: DesignSolution) -> None:
    """Raise ProblemError unless ``solution`` is a valid partition for ``problem``."""
    if len(solution.classes) != problem.class_count:
        raise ProblemError(
            f"expected {problem.class_count} classes, got {len(solution.classes)}"
        )
    seen = [e for group in solution.classes for e in group]
    if len(seen) != problem.element_count or set(seen) != set(range(problem.element_count)):
        raise ProblemError("solution must contain every element exactly once")


def element_class_array(problem: DesignProblem, solution: DesignSolution) -> np.ndarray:
    """Dense element-id -> class-index lookup for a solution."""
    out = np.empty(problem.element_count, dtype=np.intp)
    for idx, group in enumerate(solution.classes):
        for e in group:
            out[e] = idx
    return out


def parse_problem(document: str) -> DesignProblem:
    """Parse a UTF-8 JSON instance document (see schemas/instance.schema.json).

    The document references elements by label; the returned problem uses
    category-local indices internally.
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"malformed instance document: {exc}") from exc
    return problem_from_document(raw)


def problem_from_document(raw) -> DesignProblem:
    """Build a problem from an already-decoded instance document."""
    if not isinstance(raw, dict):
        raise ProblemError("instance document must be a JSON object")

    missing = {"name", "classCount", "attributes", "methods", "uses"} - raw.keys()
    if missing:
        raise ProblemError(f"missing fields: {sorted(missing)}")
    if not isinstance(raw["name"], str):
        raise ProblemError("name must be a string")
    if not isinstance(raw["classCount"], int) or isinstance(raw["classCount"], bool):
        raise ProblemError("classCount must be an integer")
    for field in ("attributes", "methods", "uses"):
        if not isinstance(raw[field], list):
            raise ProblemError(f"{field} must be an array")

    attributes = tuple(raw["attributes"])
    methods = tuple(raw["methods"])
    attr_index = {label: i for i, label in enumerate(attributes) if isinstance(label, str)}
    method_index = {label: i for i, label in enumerate(methods) if isinstance(label, str)}

    uses = []
    for pair in raw["uses"]:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ProblemError("each use must be a [methodLabel, attributeLabel] pair")
        method_label, attr_label = pair
        if method_label not in method_index:
            raise ProblemError(f"use references unknown method {method_label!r}")
        if attr_label not in attr_index:
            raise ProblemError(f"use references unknown attribute {attr_label!r}")
        uses.append((method_index[method_label], attr_index[attr_label]))

    return DesignProblem(
        name=raw["name"],
        attributes=attributes,
        methods=methods,
        uses=tuple(uses),
        class_count=raw["classCount"],
    )


def problem_document(problem: DesignProblem) -> dict:
    """The instance document for a problem, as a plain dict."""
    return {
        "name": problem.name,
        "classCount": problem.class_count,
        "attributes": list(problem.attributes),
        "methods": list(problem.methods),
        "uses": [
            [problem.methods[m], problem.attributes[a]] for m, a in problem.uses
        ],
    }


def serialize_problem(problem: DesignProblem) -> str:
    """Serialize to the canonical JSON instance document (round-trip stable)."""
    return json.dumps(problem_document(problem), indent=2, ensure_ascii=False) + "\n"


def load_problem(path) -> DesignProblem:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def generate_problem(
    attr_count: int,
    method_count: int,
    use_count: int,
    class_count: int,
    seed: int,
) -> DesignProblem:
    """Generate a random instance with exactly the requested counts.

    Deterministic in all arguments including ``seed``.  Use pairs are drawn
    uniformly without replacement from the method x attribute grid and
    re-drawn (bounded retries) until every method appears in at least one
    use; attributes may stay unused.
    """
    if min(attr_count, method_count, use_count, class_count) < 1:
        raise ProblemError("all counts must be >= 1")
    if use_count > attr_count * method_count:
        raise ProblemError(
            f"infeasible counts: {use_count} uses > {attr_count}x{method_count} pairs"
        )
    if use_count < method_count:
        raise ProblemError(
            "infeasible counts: need at least one use per method"
        )
    if class_count > attr_count + method_count:
        raise ProblemError("classCount exceeds number of attributes and methods")

    width_a = len(str(attr_count - 1))
    width_m = len(str(method_count - 1))
    attributes = tuple(f"attr{i:0{width_a}d}" for i in range(attr_count))
    methods = tuple(f"method{i:0{width_m}d}" for i in range(method_count))

    rng = np.random.default_rng((seed, attr_count, method_count, use_count, class_count))
    for _ in range(_GENERATOR_MAX_RETRIES):
        flat = rng.choice(attr_count * method_count, size=use_count, replace=False)
        method_ids = flat // attr_count
        if len(np.unique(method_ids)) == method_count:
            attr_ids = flat % attr_count
            uses = tuple(sorted(zip(method_ids.tolist(), attr_ids.tolist())))
            return DesignProblem(
                name=f"gen-a{attr_count}m{method_count}u{use_count}c{class_count}-s{seed}",
                attributes=attributes,
                methods=methods,
                uses=uses,
                class_count=class_count,
            )
    raise ProblemError(
        "could not cover every method within retry budget; "
        "use counts too tight for the grid"
    )
