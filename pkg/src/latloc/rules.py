"""Association-rule indicators and failure-rule mining.

Indicators are kept as exact rationals end to end so the monotony laws the
downstream lattice relies on hold exactly; floats appear only at presentation
time. Mining enumerates premises that are closed with respect to the failing
executions — each closure shares its failing extent (hence its support) with
every premise it subsumes, so thresholding on closed premises loses no
failure-explanation class while keeping the enumeration small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from latloc.errors import IndicatorUndefinedError, MiningError
from latloc.fca import _kernel
from latloc.fca.context import Context
from latloc.trace_model import FAIL_ITEM, Item, TraceContext


@dataclass(frozen=True)
class RuleStats:
    support: int
    normalized_support: Fraction
    confidence: Fraction
    lift: Fraction


@dataclass(frozen=True)
class FailureRule:
    """A mined ``premise -> FAIL`` rule (conclusion implicit)."""

    premise: frozenset[Item]
    stats: RuleStats

    def __post_init__(self):
        if not self.premise:
            raise ValueError("premise must be non-empty")
        if any(it.kind.startswith("verdict") for it in self.premise):
            raise ValueError("premise may not contain verdict items")

    @property
    def sorted_premise(self) -> tuple[Item, ...]:
        return tuple(sorted(self.premise))


def _stats_from_counts(n: int, e_premise: int, e_both: int, e_conclusion: int) -> RuleStats:
    if e_premise == 0:
        raise IndicatorUndefinedError("confidence undefined: premise covered by no object")
    if e_conclusion == 0:
        raise IndicatorUndefinedError("lift undefined: conclusion covered by no object")
    return RuleStats(
        support=e_both,
        normalized_support=Fraction(e_both, n),
        confidence=Fraction(e_both, e_premise),
        lift=Fraction(e_both * n, e_premise * e_conclusion),
    )


def rule_stats(ctx, premise: Iterable, conclusion: Iterable) -> RuleStats:
    """Support / normalized support / confidence / lift of premise -> conclusion.

    Support is the raw co-occurrence count. An empty premise yields the
    conclusion's base rate (lift 1); an empty extent raises instead of
    producing NaNs.
    """
    if not isinstance(ctx, Context) and hasattr(ctx, "to_context"):
        ctx = ctx.to_context()
    p_mask = ctx.attr_mask(premise)
    c_mask = ctx.attr_mask(conclusion)
    n = len(ctx.objects)
    e_premise = bin(ctx.extent_mask(p_mask)).count("1")
    e_both = bin(ctx.extent_mask(p_mask | c_mask)).count("1")
    e_conclusion = bin(ctx.extent_mask(c_mask)).count("1")
    return _stats_from_counts(n, e_premise, e_both, e_conclusion)


def failure_rule_stats(tc: TraceContext, premise: Iterable[Item]) -> RuleStats:
    """Indicators of ``premise -> FAIL`` over a trace context."""
    if not tc.failing:
        raise MiningError("no failing tests in the context")
    return rule_stats(tc.to_context(), premise, [FAIL_ITEM])


def mine_failure_rules(
    tc: TraceContext,
    min_sup: int = 1,
    min_lift: Fraction | int | float = 1,
    max_premises: int = 100_000,
) -> list[FailureRule]:
    """All failure rules with closed premises above the thresholds.

    Premises are closed w.r.t. the failing executions; support counts failing
    tests covering the premise, and min_sup therefore ranges over
    1..|failing tests|. Results are ordered by support descending, then by
    the premise's sorted item ids.
    """
    failing = tc.failing
    if not failing:
        raise MiningError("no failing tests in the context")
    if not 1 <= min_sup <= len(failing):
        raise MiningError(
            f"min_sup must be within 1..{len(failing)} (number of failing tests), "
            f"got {min_sup}"
        )
    min_lift = Fraction(min_lift)

    items = tc.items
    index = {it: j for j, it in enumerate(items)}
    fail_rows = [
        sum(1 << index[it] for it in ex.coverage) for ex in failing
    ]
    try:
        closed = _kernel.closed_intents(fail_rows, len(items), max_premises)
    except _kernel.CapExceeded as exc:
        raise MiningError(str(exc)) from exc

    # Full-context columns (verdict-free premises; FAIL column handled apart).
    all_rows = [sum(1 << index[it] for it in ex.coverage) for ex in tc.executions]
    n = len(all_rows)
    fail_total = len(failing)
    fail_flags = [ex.failed for ex in tc.executions]

    rules = []
    for mask in closed:
        if mask == 0:
            continue
        support = sum(1 for r in fail_rows if r & mask == mask)
        if support < min_sup:
            continue
        e_premise = 0
        e_both = 0
        for r, failed in zip(all_rows, fail_flags):
            if r & mask == mask:
                e_premise += 1
                if failed:
                    e_both += 1
        stats = _stats_from_counts(n, e_premise, e_both, fail_total)
        if stats.lift < min_lift:
            continue
        premise = frozenset(items[j] for j in range(len(items)) if mask >> j & 1)
        rules.append(FailureRule(premise, stats))

    rules.sort(key=lambda r: (-r.stats.support, r.sorted_premise))
    return rules
