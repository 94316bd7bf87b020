"""Executable reference benchmarks with seeded faults and verdict oracles.

Two classic desk-scale programs are reimplemented with explicit line-trace
emission so every analysis runs on regenerable data:

* ``trityp`` — triangle classification (scalene/isosceles/equilateral/none),
  with a catalog of eight single-line faults that can be combined. The widely
  circulated listing of this benchmark contains typos (line 87 compares
  ``(j+k) > j``, line 71 is garbled); the reference here uses the semantically
  correct triangle logic, and each seeded fault is applied relative to it.
* ``mid`` — median-of-three, one fault variant (line 15 assigns ``y`` for
  ``x``). A bundled six-test demo suite ships verbatim for the N-gram
  benchmark; note its recorded traces for t3..t5 disagree with the program's
  actual control flow, so analyses over it treat the rows as ground truth
  rather than re-deriving them.

Verdicts always compare the integer output of a variant against the
reference run on the same input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from latloc.errors import CorpusError
from latloc.trace_model import (
    FAIL,
    PASS,
    TestExecution,
    TraceContext,
    coverage_of,
    line_item,
)

TRITYP = "trityp"
MID = "mid"

# Seeded-fault catalog: mutation id -> (line changed, replacement text).
TRITYP_MUTATIONS: dict[int, tuple[int, str]] = {
    1: (84, "if ((trityp == 3) && (i+k) > j)"),
    2: (79, "trityp = 0;"),
    3: (64, "trityp = i+1;"),
    4: (87, "if ((trityp != 3) && (j+k) > i)"),
    5: (65, "if (i >= k)"),
    6: (74, "trityp = 0;"),
    7: (90, "trityp = 3;"),
    8: (66, "trityp = trityp+20;"),
}

MID_MUTATIONS: dict[int, tuple[int, str]] = {
    1: (15, "m = y;"),
}

TRITYP_LINES = frozenset(
    [57, 58, 59, 62, 63, 64, 65, 66, 67, 68, 69, 71, 72, 74, 78, 79, 81, 82, 84, 85,
     87, 88, 90, 93, 96, 97, 99, 101, 103, 105]
)
MID_LINES = frozenset([4, 5, 6, 10, 11, 12, 13, 14, 15, 18, 19, 20, 21, 24])


def run_trityp(inp: Sequence[int], mutations: Iterable[int] = ()) -> tuple[int, list[int]]:
    """Classify three segment lengths; returns (code, executed line trace).

    Codes: 1 scalene, 2 isosceles, 3 equilateral, 4 not a triangle. The
    classification helper lines (96..105) are traced too since they are part
    of the program under test.
    """
    muts = frozenset(mutations)
    unknown = muts - TRITYP_MUTATIONS.keys()
    if unknown:
        raise CorpusError(f"unknown trityp mutation id(s) {sorted(unknown)}")
    i, j, k = inp
    trace = [57, 58]
    if i == 0 or j == 0 or k == 0:
        trace.append(59)
        t = 4
    else:
        trace.append(62)
        t = 0
        trace.append(63)
        if i == j:
            trace.append(64)
            t = i + 1 if 3 in muts else t + 1
        trace.append(65)
        if (i >= k) if 5 in muts else (i == k):
            trace.append(66)
            t = t + 20 if 8 in muts else t + 2
        trace.append(67)
        if j == k:
            trace.append(68)
            t = t + 3
        trace.append(69)
        if t == 0:
            trace.append(71)
            if i + j <= k or j + k <= i or i + k <= j:
                trace.append(72)
                t = 4
            else:
                trace.append(74)
                t = 0 if 6 in muts else 1
        else:
            trace.append(78)
            if t > 3:
                trace.append(79)
                t = 0 if 2 in muts else 3
            else:
                trace.append(81)
                if t == 1 and i + j > k:
                    trace.append(82)
                    t = 2
                else:
                    trace.append(84)
                    if (t == 3 and i + k > j) if 1 in muts else (t == 2 and i + k > j):
                        trace.append(85)
                        t = 2
                    else:
                        trace.append(87)
                        if (t != 3 and j + k > i) if 4 in muts else (t == 3 and j + k > i):
                            trace.append(88)
                            t = 2
                        else:
                            trace.append(90)
                            t = 3 if 7 in muts else 4
    trace.append(93)
    trace.extend([96, 97, {1: 99, 2: 101, 3: 103}.get(t, 105)])
    return t, trace


def run_mid(inp: Sequence[int], mutations: Iterable[int] = ()) -> tuple[int, list[int]]:
    """Median of three; line 4 is traced twice (input scan loop)."""
    muts = frozenset(mutations)
    unknown = muts - MID_MUTATIONS.keys()
    if unknown:
        raise CorpusError(f"unknown mid mutation id(s) {sorted(unknown)}")
    x, y, z = inp
    trace = [4, 4, 5, 10]
    m = z
    trace.append(11)
    if y < z:
        trace.append(12)
        if x < y:
            trace.append(13)
            m = y
        else:
            trace.append(14)
            if x < z:
                trace.append(15)
                m = y if 1 in muts else x
    else:
        trace.append(18)
        if x > y:
            trace.append(19)
            m = y
        else:
            trace.append(20)
            if x > z:
                trace.append(21)
                m = x
    trace.append(24)
    trace.append(6)
    return m, trace


@dataclass(frozen=True)
class ReferenceProgram:
    name: str
    runner: Callable[[Sequence[int], Iterable[int]], tuple[int, list[int]]]
    mutations: dict[int, tuple[int, str]]
    line_map: frozenset[int]


PROGRAMS: dict[str, ReferenceProgram] = {
    TRITYP: ReferenceProgram(TRITYP, run_trityp, TRITYP_MUTATIONS, TRITYP_LINES),
    MID: ReferenceProgram(MID, run_mid, MID_MUTATIONS, MID_LINES),
}


def run_program(
    program: str, variant: Iterable[int], inp: Sequence[int]
) -> tuple[int, list[int]]:
    """Run the named program (reference when ``variant`` is empty)."""
    prog = PROGRAMS.get(program)
    if prog is None:
        raise CorpusError(f"unknown program {program!r}")
    if len(inp) != 3:
        raise CorpusError("inputs are integer triples")
    return prog.runner(inp, variant)


@dataclass(frozen=True)
class SuiteSpec:
    """A benchmark context request: program, combined mutations, inputs."""

    program: str
    variants: tuple[int, ...]
    inputs: tuple[tuple[int, int, int], ...] = ()
    grid: int = 7
    extra: int = 50
    extra_bound: int = 30
    seed: int = 0

    def resolve_inputs(self) -> list[tuple[int, int, int]]:
        if self.inputs:
            return list(self.inputs)
        inputs = [
            (i, j, k)
            for i in range(self.grid + 1)
            for j in range(self.grid + 1)
            for k in range(self.grid + 1)
        ]
        rng = random.Random(self.seed)
        for _ in range(self.extra):
            inputs.append(
                (
                    rng.randint(0, self.extra_bound),
                    rng.randint(0, self.extra_bound),
                    rng.randint(0, self.extra_bound),
                )
            )
        return inputs


@dataclass(frozen=True)
class GeneratedSuite:
    context: TraceContext
    # Ground truth: mutation id -> test ids whose failure that mutation alone explains.
    truth: dict[int, frozenset[str]]
    inputs: dict[str, tuple[int, int, int]]


def _validate_variants(prog: ReferenceProgram, variants: Sequence[int]) -> None:
    if len(set(variants)) != len(variants):
        raise CorpusError("duplicate mutation ids")
    lines = [prog.mutations[v][0] for v in variants if v in prog.mutations]
    unknown = set(variants) - prog.mutations.keys()
    if unknown:
        raise CorpusError(f"unknown mutation id(s) {sorted(unknown)}")
    if len(set(lines)) != len(lines):
        raise CorpusError("conflicting mutations on the same line")


def generate_context(spec: SuiteSpec) -> GeneratedSuite:
    """Run the combined mutant against the reference on every input.

    A test fails iff the mutant's output differs from the reference's. The
    truth sidecar attributes each failure class by re-running every mutation
    in isolation.
    """
    prog = PROGRAMS.get(spec.program)
    if prog is None:
        raise CorpusError(f"unknown program {spec.program!r}")
    _validate_variants(prog, spec.variants)

    inputs = spec.resolve_inputs()
    width = len(str(max(len(inputs) - 1, 1)))
    executions = []
    input_map: dict[str, tuple[int, int, int]] = {}
    truth: dict[int, set[str]] = {v: set() for v in spec.variants}
    for idx, inp in enumerate(inputs):
        test_id = f"t{idx:0{width}d}"
        input_map[test_id] = tuple(inp)
        expected, _ = prog.runner(inp, ())
        actual, trace = prog.runner(inp, spec.variants)
        verdict = PASS if actual == expected else FAIL
        seq = tuple(line_item(l) for l in trace)
        executions.append(TestExecution(test_id, verdict, coverage_of(seq), seq))
        for v in spec.variants:
            single, _ = prog.runner(inp, (v,))
            if single != expected:
                truth[v].add(test_id)
    context = TraceContext(executions, mode="sequence")
    return GeneratedSuite(
        context,
        {v: frozenset(ids) for v, ids in truth.items()},
        input_map,
    )


# Bundled six-test demo suite for mid (id, input, expected, actual, verdict, trace).
MID_DEMO_ROWS: tuple[tuple[str, tuple[int, int, int], int, int, str, tuple[int, ...]], ...] = (
    ("t1", (3, 3, 5), 3, 3, PASS, (4, 4, 5, 10, 11, 12, 14, 15, 24, 6)),
    ("t2", (1, 2, 3), 2, 2, PASS, (4, 4, 5, 10, 11, 12, 13, 24, 6)),
    ("t3", (3, 2, 1), 2, 2, PASS, (4, 4, 5, 10, 11, 18, 13, 24, 6)),
    ("t4", (5, 5, 5), 5, 5, PASS, (4, 4, 5, 10, 11, 18, 13, 24, 6)),
    ("t5", (5, 3, 4), 4, 4, PASS, (4, 4, 5, 10, 11, 12, 13, 24, 6)),
    ("t6", (2, 1, 3), 2, 1, FAIL, (4, 4, 5, 10, 11, 12, 14, 15, 24, 6)),
)


def mid_demo_suite() -> TraceContext:
    """The six canonical mid executions, traces verbatim."""
    executions = []
    for test_id, _inp, _exp, _act, verdict, trace in MID_DEMO_ROWS:
        seq = tuple(line_item(l) for l in trace)
        executions.append(TestExecution(test_id, verdict, coverage_of(seq), seq))
    return TraceContext(executions, mode="sequence")
