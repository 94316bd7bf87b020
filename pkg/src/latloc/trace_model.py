"""Data model and ingestion for test executions.

A trace file holds one record per test case: an id, a pass/fail verdict and
the executed items (source lines or GUI events) in order. Loading produces an
immutable :class:`TraceContext` — the boolean objects-by-attributes relation
that every analysis stage consumes. Verdicts become two dedicated attribute
columns injected by the loader; they can never be spoofed from the input,
which only carries integer item ids.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from latloc.errors import TraceFormatError

KIND_LINE = "line"
KIND_EVENT = "event"
KIND_BLOCK = "block"
KIND_PASS = "verdict-pass"
KIND_FAIL = "verdict-fail"

PASS = "pass"
FAIL = "fail"

MODE_COVERAGE = "coverage"
MODE_SEQUENCE = "sequence"


@dataclass(frozen=True, order=True)
class Item:
    """One observable of an execution: a source line, event or block.

    Identity is (kind, id); the display string is presentation-only, so two
    files with the same ids but different labels load to equal contexts.
    """

    kind: str
    id: int
    display: str = field(compare=False, default="")

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"item id must be non-negative, got {self.id}")
        if not self.display:
            object.__setattr__(self, "display", str(self.id))


PASS_ITEM = Item(KIND_PASS, 0, "PASS")
FAIL_ITEM = Item(KIND_FAIL, 0, "FAIL")


def line_item(line: int) -> Item:
    return Item(KIND_LINE, line)


def event_item(event: int) -> Item:
    return Item(KIND_EVENT, event)


@dataclass(frozen=True)
class TestExecution:
    """A single test run: verdict plus what it executed.

    ``sequence`` preserves order and repeats (needed by the N-gram engine) and
    may be absent in coverage mode; ``coverage`` is always the deduplicated
    item set.
    """

    __test__ = False  # keep pytest from collecting this as a test class

    test_id: str
    verdict: str
    coverage: frozenset[Item]
    sequence: tuple[Item, ...] | None = None

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.sequence is not None:
            if not self.sequence:
                raise ValueError("sequence must be non-empty")
            if frozenset(self.sequence) != self.coverage:
                raise ValueError("coverage must equal the deduplicated sequence")
        elif not self.coverage:
            raise ValueError("coverage must be non-empty")

    @property
    def verdict_item(self) -> Item:
        return FAIL_ITEM if self.verdict == FAIL else PASS_ITEM

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL


def coverage_of(run: "TestExecution | Iterable[Item]") -> frozenset[Item]:
    """Deduplicated item set of a sequence or execution (the spectrum view)."""
    if isinstance(run, TestExecution):
        return run.coverage if run.sequence is None else frozenset(run.sequence)
    return frozenset(run)


class TraceContext:
    """Immutable formal context over test executions.

    Objects are the executions; attributes are the distinct executed items
    plus the verdict columns. Every attribute occurs in at least one row, and
    each row carries exactly one verdict item.
    """

    def __init__(self, executions: Sequence[TestExecution], mode: str = MODE_SEQUENCE):
        if not executions:
            raise TraceFormatError("no executions")
        seen: set[str] = set()
        for ex in executions:
            if ex.test_id in seen:
                raise TraceFormatError(f"duplicate test id {ex.test_id!r}")
            seen.add(ex.test_id)
        self.executions: tuple[TestExecution, ...] = tuple(executions)
        self.mode = mode
        items: set[Item] = set()
        for ex in self.executions:
            items |= ex.coverage
        self.items: tuple[Item, ...] = tuple(sorted(items))
        verdicts: list[Item] = []
        if any(not ex.failed for ex in self.executions):
            verdicts.append(PASS_ITEM)
        if any(ex.failed for ex in self.executions):
            verdicts.append(FAIL_ITEM)
        self.attributes: tuple[Item, ...] = self.items + tuple(verdicts)

    @property
    def failing(self) -> tuple[TestExecution, ...]:
        return tuple(ex for ex in self.executions if ex.failed)

    @property
    def passing(self) -> tuple[TestExecution, ...]:
        return tuple(ex for ex in self.executions if not ex.failed)

    def row(self, ex: TestExecution) -> frozenset[Item]:
        return ex.coverage | {ex.verdict_item}

    def to_context(self):
        """View as a generic formal context (objects = test ids)."""
        from latloc.fca.context import Context

        return Context.from_table(
            {ex.test_id: self.row(ex) for ex in self.executions},
            attributes=self.attributes,
        )

    def __eq__(self, other) -> bool:
        # Order-insensitive on rows and columns; sequences compare only when
        # both sides retained them.
        if not isinstance(other, TraceContext):
            return NotImplemented

        def key(ctx: TraceContext):
            keep_seq = self.mode == MODE_SEQUENCE and other.mode == MODE_SEQUENCE
            return {
                ex.test_id: (ex.verdict, ex.coverage, ex.sequence if keep_seq else None)
                for ex in ctx.executions
            }

        return key(self) == key(other)

    def __hash__(self):
        return hash(frozenset((ex.test_id, ex.verdict, ex.coverage) for ex in self.executions))

    def __repr__(self):
        return (
            f"TraceContext({len(self.executions)} executions, "
            f"{len(self.items)} items, {len(self.failing)} failing)"
        )


def _parse_jsonl(text: str, mode: str, item_kind: str) -> list[TestExecution]:
    executions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(f"invalid JSON ({exc.msg})", lineno) from exc
        if not isinstance(record, dict):
            raise TraceFormatError("record is not an object", lineno)
        missing = {"test", "verdict", "trace"} - record.keys()
        if missing:
            raise TraceFormatError(f"missing field(s) {sorted(missing)}", lineno)
        verdict = record["verdict"]
        if verdict not in (PASS, FAIL):
            raise TraceFormatError(f"unknown verdict token {verdict!r}", lineno)
        trace = record["trace"]
        if not isinstance(trace, list) or not trace:
            raise TraceFormatError("trace must be a non-empty list", lineno)
        try:
            items = tuple(Item(item_kind, int(v)) for v in trace)
        except (TypeError, ValueError) as exc:
            raise TraceFormatError(f"bad item id in trace: {exc}", lineno) from exc
        executions.append(_make_execution(str(record["test"]), verdict, items, mode, lineno))
    return executions


def _parse_csv(text: str, mode: str, item_kind: str) -> list[TestExecution]:
    if mode != MODE_COVERAGE:
        raise TraceFormatError("CSV input is accepted for coverage mode only")
    executions = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not any(cell.strip() for cell in row):
            continue
        if len(row) < 3:
            raise TraceFormatError("expected test,verdict,items...", lineno)
        test_id, verdict = row[0].strip(), row[1].strip()
        if verdict not in (PASS, FAIL):
            raise TraceFormatError(f"unknown verdict token {verdict!r}", lineno)
        try:
            items = tuple(Item(item_kind, int(cell)) for cell in row[2:] if cell.strip())
        except ValueError as exc:
            raise TraceFormatError(f"bad item id: {exc}", lineno) from exc
        if not items:
            raise TraceFormatError("record has no items", lineno)
        executions.append(_make_execution(test_id, verdict, items, mode, lineno))
    return executions


def _make_execution(
    test_id: str, verdict: str, items: tuple[Item, ...], mode: str, lineno: int
) -> TestExecution:
    try:
        if mode == MODE_SEQUENCE:
            return TestExecution(test_id, verdict, coverage_of(items), items)
        return TestExecution(test_id, verdict, coverage_of(items))
    except ValueError as exc:
        raise TraceFormatError(str(exc), lineno) from exc


def load_trace_context(
    path: str | Path, mode: str = MODE_COVERAGE, item_kind: str = KIND_LINE
) -> TraceContext:
    """Load and validate a trace file (JSONL, or CSV for coverage mode).

    In sequence mode the per-test order and repeats are retained; in coverage
    mode only the deduplicated item sets are stored.
    """
    if mode not in (MODE_COVERAGE, MODE_SEQUENCE):
        raise ValueError(f"unknown mode {mode!r}")
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        executions = _parse_csv(text, mode, item_kind)
    else:
        executions = _parse_jsonl(text, mode, item_kind)
    if not executions:
        raise TraceFormatError("no executions")
    return TraceContext(executions, mode=mode)


def dump_trace_context(ctx: TraceContext, path: str | Path) -> None:
    """Serialize back to JSONL. Coverage-mode rows are written sorted by id."""
    path = Path(path)
    with path.open("w") as fh:
        for ex in ctx.executions:
            if ex.sequence is not None:
                trace = [it.id for it in ex.sequence]
            else:
                trace = [it.id for it in sorted(ex.coverage)]
            fh.write(
                json.dumps({"test": ex.test_id, "verdict": ex.verdict, "trace": trace})
                + "\n"
            )
