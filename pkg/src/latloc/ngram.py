"""N-gram fault localization over exact execution sequences.

Line mode compresses traces into linear execution blocks first (a block
N-gram then witnesses N-1 branch decisions); event mode ranks raw event
subsequences. Both share the same pipeline: generate contiguous N-grams,
keep the relevant ones, threshold on failing-trace support, rank by the
exact failure confidence, and report items by first appearance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, Mapping, Sequence

from latloc.errors import BlockTraceError
from latloc.trace_model import FAIL, Item

Gram = tuple
Sequence_ = Sequence[Item]


@dataclass(frozen=True)
class Xsg:
    """Execution sequence graph: an edge per observed immediate succession.

    ``starts`` records trace-initial vertices; the block decomposition must
    open a block there or traces could begin mid-chain.
    """

    vertices: frozenset[Item]
    edges: frozenset[tuple[Item, Item]]
    starts: frozenset[Item] = frozenset()


@dataclass(frozen=True)
class LinearExecutionBlock:
    block_id: int
    items: tuple[Item, ...]

    @property
    def head(self) -> Item:
        return self.items[0]


@dataclass(frozen=True)
class NGramRecord:
    gram: Gram
    support: int
    total: int
    confidence: Fraction
    items: tuple[Item, ...]  # expansion to line/event items


@dataclass(frozen=True)
class TieGroup:
    confidence: Fraction
    gram_indices: tuple[int, ...]
    new_items: tuple[Item, ...]  # first-appearance order within the group


@dataclass(frozen=True)
class RankedReport:
    mode: str
    items: tuple[tuple[Item, int], ...]  # (item, 1-based first rank)
    grams: tuple[NGramRecord, ...]
    tie_groups: tuple[TieGroup, ...]
    relevant: frozenset

    def rank_of(self, item: Item) -> int | None:
        for it, rank in self.items:
            if it == item:
                return rank
        return None


@dataclass(frozen=True)
class BestWorstEnvelope:
    ranks: dict[Item, tuple[int, int]]
    best_order: tuple[Item, ...]
    worst_order: tuple[Item, ...]
    not_localized: frozenset[Item]


def build_xsg(sequences: Iterable[Sequence_]) -> Xsg:
    """Adjacency of immediate succession across all sequences (self-edges kept)."""
    vertices: set[Item] = set()
    edges: set[tuple[Item, Item]] = set()
    starts: set[Item] = set()
    for seq in sequences:
        if not seq:
            continue
        starts.add(seq[0])
        vertices.update(seq)
        for a, b in zip(seq, seq[1:]):
            edges.add((a, b))
    return Xsg(frozenset(vertices), frozenset(edges), frozenset(starts))


def linear_blocks(xsg: Xsg) -> list[LinearExecutionBlock]:
    """Single-entry chains of the graph.

    A vertex opens a block when its indegree differs from 1, when its unique
    predecessor branches, when it carries a self-loop, or when some trace
    starts there. Chains extend through outdegree-1 vertices only, so entering
    a block forces traversing it. Ids follow the heads' item order.
    """
    preds: dict[Item, set[Item]] = {v: set() for v in xsg.vertices}
    succs: dict[Item, set[Item]] = {v: set() for v in xsg.vertices}
    for a, b in xsg.edges:
        preds[b].add(a)
        succs[a].add(b)

    def is_start(v: Item) -> bool:
        if v in xsg.starts or (v, v) in xsg.edges:
            return True
        if len(preds[v]) != 1:
            return True
        (p,) = preds[v]
        return len(succs[p]) != 1 or p == v

    heads = sorted(v for v in xsg.vertices if is_start(v))
    blocks = []
    for bid, head in enumerate(heads, start=1):
        chain = [head]
        cur = head
        while len(succs[cur]) == 1:
            (nxt,) = succs[cur]
            if is_start(nxt):
                break
            chain.append(nxt)
            cur = nxt
        blocks.append(LinearExecutionBlock(bid, tuple(chain)))
    return blocks


def to_block_trace(sequence: Sequence_, blocks: Sequence[LinearExecutionBlock]) -> list[int]:
    """Compress a sequence to block ids; expanding them reproduces the input.

    Only the final block may be truncated (a trace can stop mid-block); any
    other divergence from a block interior is an inconsistency.
    """
    owner: dict[Item, LinearExecutionBlock] = {}
    for block in blocks:
        for item in block.items:
            owner[item] = block
    out: list[int] = []
    i = 0
    n = len(sequence)
    while i < n:
        item = sequence[i]
        block = owner.get(item)
        if block is None:
            raise BlockTraceError(f"item {item.display} belongs to no block")
        if item != block.head:
            raise BlockTraceError(
                f"item {item.display} entered mid-block (head is {block.head.display})"
            )
        for k, expected in enumerate(block.items):
            if i + k >= n:
                break  # truncated tail block
            if sequence[i + k] != expected:
                raise BlockTraceError(
                    f"sequence diverges inside block {block.block_id} at {expected.display}"
                )
        out.append(block.block_id)
        i += min(len(block.items), n - i)
    return out


def expand_block_trace(
    block_trace: Sequence[int], blocks: Sequence[LinearExecutionBlock], length: int | None = None
) -> list[Item]:
    """Inverse of :func:`to_block_trace`; ``length`` trims a truncated tail."""
    by_id = {b.block_id: b for b in blocks}
    out: list[Item] = []
    for bid in block_trace:
        out.extend(by_id[bid].items)
    if length is not None:
        out = out[:length]
    return out


def generate_ngrams(traces: Iterable[Sequence], n: int) -> set[Gram]:
    """Distinct contiguous length-n subsequences across all traces."""
    if n < 1:
        raise ValueError("n must be >= 1")
    grams: set[Gram] = set()
    for trace in traces:
        for start in range(len(trace) - n + 1):
            grams.add(tuple(trace[start : start + n]))
    return grams


def _contains(trace: Sequence, gram: Gram) -> bool:
    n = len(gram)
    return any(tuple(trace[i : i + n]) == gram for i in range(len(trace) - n + 1))


def _as_fraction(value: float | Fraction) -> Fraction:
    # Floats go through their decimal rendering so 0.9 means exactly 9/10.
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def _rank_grams(
    traces: list[Sequence],
    failing: list[Sequence],
    grams: set[Gram],
    min_sup: float | Fraction,
    expand,
    mode: str,
) -> RankedReport:
    threshold = max(1, ceil(_as_fraction(min_sup) * len(failing)))
    records = []
    for gram in grams:
        support = sum(1 for tr in failing if _contains(tr, gram))
        if support < threshold:
            continue
        total = sum(1 for tr in traces if _contains(tr, gram))
        records.append(
            NGramRecord(gram, support, total, Fraction(support, total), expand(gram))
        )
    # Confidence descending; longer grams first among ties, then item order.
    records.sort(key=lambda r: (-r.confidence, -len(r.gram), r.gram))

    ranked_items: list[tuple[Item, int]] = []
    seen: set[Item] = set()
    tie_groups: list[TieGroup] = []
    i = 0
    while i < len(records):
        j = i
        while j < len(records) and records[j].confidence == records[i].confidence:
            j += 1
        new_items: list[Item] = []
        for rec in records[i:j]:
            for item in rec.items:
                if item not in seen:
                    seen.add(item)
                    new_items.append(item)
                    ranked_items.append((item, len(ranked_items) + 1))
        tie_groups.append(
            TieGroup(records[i].confidence, tuple(range(i, j)), tuple(new_items))
        )
        i = j
    relevant = frozenset().union(*(set(r.gram) for r in records)) if records else frozenset()
    return RankedReport(
        mode=mode,
        items=tuple(ranked_items),
        grams=tuple(records),
        tie_groups=tuple(tie_groups),
        relevant=relevant,
    )


def _empty_report(mode: str) -> RankedReport:
    return RankedReport(mode, (), (), (), frozenset())


def localize_lines(
    traces: Sequence[Sequence_],
    verdicts: Sequence[str],
    min_sup: float | Fraction = 0.9,
    n_max: int = 3,
) -> RankedReport:
    """Rank source lines by failure confidence of block N-grams.

    Relevant blocks are those covered by every failing trace; grams touching
    no relevant block are dropped, the rest thresholded at
    ceil(min_sup * |failing|) failing occurrences. An empty report (not an
    error) signals that no block is common to all failures.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    failing = [tr for tr, v in zip(traces, verdicts) if v == FAIL]
    if not failing:
        raise ValueError("at least one failing trace required")

    xsg = build_xsg(traces)
    blocks = linear_blocks(xsg)
    block_traces = [to_block_trace(tr, blocks) for tr in traces]
    failing_blocks = [bt for bt, v in zip(block_traces, verdicts) if v == FAIL]

    grams: set[Gram] = set()
    for n in range(1, n_max + 1):
        grams |= generate_ngrams(block_traces, n)

    relevant: set[int] = set()
    for gram in [g for g in grams if len(g) == 1]:
        support = sum(1 for bt in failing_blocks if _contains(bt, gram))
        if support != len(failing_blocks):
            grams.discard(gram)
        else:
            relevant.add(gram[0])
    if not relevant:
        return _empty_report("line")
    grams = {g for g in grams if any(b in relevant for b in g)}

    by_id = {b.block_id: b for b in blocks}

    def expand(gram: Gram) -> tuple[Item, ...]:
        out: list[Item] = []
        for bid in gram:
            out.extend(by_id[bid].items)
        return tuple(out)

    return _rank_grams(block_traces, failing_blocks, grams, min_sup, expand, "line")


def localize_events(
    sequences: Sequence[Sequence_],
    verdicts: Sequence[str],
    min_sup: float | Fraction = 0.9,
    n_max: int = 3,
) -> RankedReport:
    """Rank events by failure confidence of event N-grams (no block compression).

    Relevance here only requires an event to appear in some failing sequence.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    failing = [sq for sq, v in zip(sequences, verdicts) if v == FAIL]
    if not failing:
        raise ValueError("at least one failing sequence required")

    seqs = [tuple(sq) for sq in sequences]
    failing_seqs = [tuple(sq) for sq in failing]
    grams: set[Gram] = set()
    for n in range(1, n_max + 1):
        grams |= generate_ngrams(seqs, n)

    relevant: set[Item] = set()
    for gram in [g for g in grams if len(g) == 1]:
        if any(_contains(sq, gram) for sq in failing_seqs):
            relevant.add(gram[0])
        else:
            grams.discard(gram)
    if not relevant:
        return _empty_report("event")
    grams = {g for g in grams if any(e in relevant for e in g)}

    return _rank_grams(failing=failing_seqs, traces=seqs, grams=grams, min_sup=min_sup,
                       expand=lambda g: tuple(g), mode="event")


def best_worst_ranks(
    report: RankedReport,
    ground_truth: Mapping[Item, int] | Iterable[Item],
    seed: int = 0,
) -> BestWorstEnvelope:
    """Rank envelope over confidence ties, given known faulty items.

    Within a tie group the new items may legally appear in any order sorted by
    their fault count — descending in the best situation, ascending in the
    worst. (best, worst) are the extreme positions an item can take across
    those orders; the concrete orders break equal-count ties with the seeded
    RNG. Items outside the report are flagged not-localized.
    """
    if isinstance(ground_truth, Mapping):
        counts = dict(ground_truth)
    else:
        counts = {item: 1 for item in ground_truth}
    rng = random.Random(seed)

    ranks: dict[Item, tuple[int, int]] = {}
    best_order: list[Item] = []
    worst_order: list[Item] = []
    base = 0
    for group in report.tie_groups:
        members = list(group.new_items)
        fault = {item: counts.get(item, 0) for item in members}
        for item in members:
            higher = sum(1 for o in members if fault[o] > fault[item])
            not_higher = sum(1 for o in members if fault[o] <= fault[item])
            ranks[item] = (base + higher + 1, base + not_higher)
        shuffled = members[:]
        rng.shuffle(shuffled)
        best_order.extend(sorted(shuffled, key=lambda it: -fault[it]))
        shuffled = members[:]
        rng.shuffle(shuffled)
        worst_order.extend(sorted(shuffled, key=lambda it: fault[it]))
        base += len(members)

    localized = {item for item, _ in report.items}
    not_localized = frozenset(item for item in counts if item not in localized)
    return BestWorstEnvelope(ranks, tuple(best_order), tuple(worst_order), not_localized)
