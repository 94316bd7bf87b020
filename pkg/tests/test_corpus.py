"""Reference benchmarks: behavior, trace fidelity, suite generation, ground truth."""

from __future__ import annotations

import random

import pytest

from latloc.corpus import (
    MID_DEMO_ROWS,
    MID_LINES,
    TRITYP_LINES,
    TRITYP_MUTATIONS,
    SuiteSpec,
    generate_context,
    mid_demo_suite,
    run_mid,
    run_program,
    run_trityp,
)
from latloc.errors import CorpusError
from latloc.failure_lattice import ID, classify_dependency

SCALENE, ISOSCELES, EQUILATERAL, NOT_A_TRIANGLE = 1, 2, 3, 4


# -- reference behavior ----------------------------------------------------------


@pytest.mark.parametrize(
    "inp,expected",
    [
        ((3, 4, 5), SCALENE),
        ((2, 2, 3), ISOSCELES),
        ((2, 3, 2), ISOSCELES),
        ((3, 2, 2), ISOSCELES),
        ((1, 1, 1), EQUILATERAL),
        ((0, 1, 1), NOT_A_TRIANGLE),
        ((1, 0, 1), NOT_A_TRIANGLE),
        ((1, 2, 3), NOT_A_TRIANGLE),  # degenerate: 1+2 == 3
        ((1, 1, 3), NOT_A_TRIANGLE),  # degenerate isosceles
        ((7, 2, 2), NOT_A_TRIANGLE),
    ],
)
def test_trityp_reference_classification(inp, expected):
    assert run_trityp(inp)[0] == expected


def test_trityp_zero_input_goes_through_line_59():
    code, trace = run_trityp((0, 5, 5))
    assert code == NOT_A_TRIANGLE
    assert 59 in trace and 62 not in trace


def test_trityp_traces_within_line_map():
    rng = random.Random(1)
    for _ in range(200):
        inp = (rng.randint(0, 9), rng.randint(0, 9), rng.randint(0, 9))
        muts = tuple(m for m in TRITYP_MUTATIONS if rng.random() < 0.2)
        lines = {m_line for m_line in run_trityp(inp, muts)[1]}
        assert lines <= TRITYP_LINES


def test_mutation_table_lines():
    expected = {1: 84, 2: 79, 3: 64, 4: 87, 5: 65, 6: 74, 7: 90, 8: 66}
    assert {m: line for m, (line, _) in TRITYP_MUTATIONS.items()} == expected


def test_mutant1_failure_cases():
    # isosceles with i == k flips to "not a triangle"
    assert run_trityp((2, 3, 2))[0] == ISOSCELES
    assert run_trityp((2, 3, 2), (1,))[0] == NOT_A_TRIANGLE
    # j == k with i + k > j but j + k <= i flips to isosceles
    assert run_trityp((4, 1, 1))[0] == NOT_A_TRIANGLE
    assert run_trityp((4, 1, 1), (1,))[0] == ISOSCELES
    # equilateral unaffected
    assert run_trityp((2, 2, 2), (1,))[0] == EQUILATERAL


def test_mutant2_fails_on_equilateral_only():
    for inp in [(1, 1, 1), (5, 5, 5)]:
        assert run_trityp(inp, (2,))[0] != run_trityp(inp)[0]
    for inp in [(2, 3, 4), (2, 2, 3), (0, 1, 1)]:
        assert run_trityp(inp, (2,))[0] == run_trityp(inp)[0]


def test_mutant6_fails_on_valid_scalene_only():
    assert run_trityp((2, 3, 4), (6,))[0] != SCALENE
    assert run_trityp((1, 2, 3), (6,))[0] == NOT_A_TRIANGLE
    assert run_trityp((2, 2, 3), (6,))[0] == ISOSCELES


def test_mid_reference_rows():
    code, trace = run_mid((3, 3, 5))
    assert code == 3
    assert trace == [4, 4, 5, 10, 11, 12, 14, 15, 24, 6]


def test_mid_faulty_variant():
    assert run_mid((2, 1, 3)) == (2, [4, 4, 5, 10, 11, 12, 14, 15, 24, 6])
    code, trace = run_mid((2, 1, 3), (1,))
    assert code == 1  # expected 2
    assert trace == [4, 4, 5, 10, 11, 12, 14, 15, 24, 6]


def test_mid_is_median():
    rng = random.Random(2)
    for _ in range(300):
        x, y, z = (rng.randint(0, 9) for _ in range(3))
        assert run_mid((x, y, z))[0] == sorted((x, y, z))[1]


def test_run_program_entry():
    assert run_program("trityp", (), (3, 4, 5))[0] == SCALENE
    assert run_program("mid", (1,), (2, 1, 3))[0] == 1
    with pytest.raises(CorpusError):
        run_program("quicksort", (), (1, 2, 3))
    with pytest.raises(CorpusError):
        run_program("mid", (), (1, 2))


# -- demo suite -------------------------------------------------------------------


def test_demo_suite_matches_rows():
    ctx = mid_demo_suite()
    assert len(ctx.executions) == 6
    by_id = {ex.test_id: ex for ex in ctx.executions}
    for test_id, _inp, _exp, _act, verdict, trace in MID_DEMO_ROWS:
        ex = by_id[test_id]
        assert ex.verdict == verdict
        assert tuple(it.id for it in ex.sequence) == trace
    assert {it.id for it in ctx.items} <= MID_LINES


def test_demo_suite_verdict_values():
    # the one failing row is the faulty run whose output disagrees
    for _tid, inp, expected, actual, verdict, _trace in MID_DEMO_ROWS:
        assert run_mid(inp)[0] == expected
        assert run_mid(inp, (1,))[0] == actual
        assert verdict == ("pass" if actual == expected else "fail")


# -- suite generation ---------------------------------------------------------------


def test_generate_context_verdicts_consistent():
    suite = generate_context(SuiteSpec("trityp", (1,), grid=4, extra=10, seed=3))
    for ex in suite.context.executions:
        inp = suite.inputs[ex.test_id]
        expected = run_trityp(inp)[0]
        actual = run_trityp(inp, (1,))[0]
        assert (ex.verdict == "fail") == (expected != actual)


def test_generate_context_items_within_line_map():
    suite = generate_context(SuiteSpec("trityp", (1, 2), grid=3, extra=5, seed=1))
    assert {it.id for it in suite.context.items} <= TRITYP_LINES


def test_reference_vs_reference_no_failures():
    suite = generate_context(SuiteSpec("trityp", (), grid=3, extra=5, seed=0))
    assert not suite.context.failing


def test_conflicting_mutations_rejected():
    with pytest.raises(CorpusError):
        generate_context(SuiteSpec("trityp", (1, 1), grid=2))
    with pytest.raises(CorpusError):
        generate_context(SuiteSpec("trityp", (42,), grid=2))


def test_ground_truth_attribution(mutant126_suite):
    suite = mutant126_suite
    failing_ids = {ex.test_id for ex in suite.context.failing}
    assert set().union(*suite.truth.values()) == failing_ids
    for v, ids in suite.truth.items():
        assert ids, f"mutation {v} never fired on the default grid"
        for tid in ids:
            inp = suite.inputs[tid]
            assert run_trityp(inp, (v,))[0] != run_trityp(inp)[0]


def test_mutants_126_pairwise_independent(mutant126_suite):
    truth = mutant126_suite.truth
    for a, b in [(1, 2), (1, 6), (2, 6)]:
        assert classify_dependency(truth[a], truth[b]).kind == ID


def test_generation_is_deterministic():
    a = generate_context(SuiteSpec("trityp", (1, 7), grid=3, extra=10, seed=5))
    b = generate_context(SuiteSpec("trityp", (1, 7), grid=3, extra=10, seed=5))
    assert a.context == b.context
    assert a.truth == b.truth
    c = generate_context(SuiteSpec("trityp", (1, 7), grid=3, extra=10, seed=6))
    assert a.inputs != c.inputs
