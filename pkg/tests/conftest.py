"""Shared fixtures: the planets demo context, mid suite, random-context helpers."""

from __future__ import annotations

import random

import pytest

from latloc.corpus import SuiteSpec, generate_context, mid_demo_suite
from latloc.fca import Context
from latloc.trace_model import FAIL, PASS, TestExecution, TraceContext, line_item

PLANET_ROWS = {
    "Mercury": {"small", "near", "without"},
    "Venus": {"small", "near", "without"},
    "Earth": {"small", "near", "with"},
    "Mars": {"small", "near", "with"},
    "Jupiter": {"large", "far", "with"},
    "Saturn": {"large", "far", "with"},
    "Uranus": {"medium", "far", "with"},
    "Neptune": {"medium", "far", "with"},
}


@pytest.fixture(scope="session")
def planets() -> Context:
    return Context.from_table(PLANET_ROWS)


@pytest.fixture(scope="session")
def mid_suite() -> TraceContext:
    return mid_demo_suite()


def random_context(rng: random.Random, n_objects: int, n_attrs: int, density=0.45) -> Context:
    objects = [f"o{i}" for i in range(n_objects)]
    attributes = [f"a{j}" for j in range(n_attrs)]
    rows = [
        sum(1 << j for j in range(n_attrs) if rng.random() < density)
        for _ in range(n_objects)
    ]
    return Context(objects, attributes, rows)


def random_trace_context(
    rng: random.Random,
    n_tests: int = 8,
    n_items: int = 8,
    density: float = 0.5,
    min_failing: int = 1,
) -> TraceContext:
    """Random coverage-mode context with at least ``min_failing`` failing tests."""
    executions = []
    for t in range(n_tests):
        coverage = frozenset(
            line_item(i) for i in range(1, n_items + 1) if rng.random() < density
        ) or frozenset({line_item(1)})
        failed = t < min_failing or rng.random() < 0.4
        executions.append(
            TestExecution(f"t{t}", FAIL if failed else PASS, coverage)
        )
    return TraceContext(executions, mode="coverage")


@pytest.fixture(scope="session")
def mutant1_suite():
    return generate_context(SuiteSpec("trityp", (1,), grid=7, extra=50, seed=0))


@pytest.fixture(scope="session")
def mutant126_suite():
    return generate_context(SuiteSpec("trityp", (1, 2, 6), grid=7, extra=50, seed=0))


@pytest.fixture(scope="session")
def mutant17_suite():
    return generate_context(SuiteSpec("trityp", (1, 7), grid=7, extra=50, seed=0))
