"""Failure lattice: mined-rule context, clusters, failure concepts, exploration.

The failure context takes the mined rules as objects and their premise items
as attributes; its concept lattice (annotated with each rule's support and
lift) is the structure a debugger explores bottom-up. The exploration session
implements the frontier/explained bookkeeping with a pluggable oracle: a human
at the CLI/HTTP surface, or a scripted ground-truth stand-in in tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from latloc.errors import MiningError, SessionError
from latloc.fca.context import Context
from latloc.fca.lattice import ConceptLattice, build_lattice
from latloc.rules import FailureRule
from latloc.trace_model import Item

STRATEGY_QUEUE = "queue"
STRATEGY_STACK = "stack"

MSD = "MSD"
SD = "SD"
LD = "LD"
ID = "ID"


@dataclass(frozen=True)
class RuleAnnotation:
    support: int
    lift: Fraction


@dataclass(frozen=True)
class SupportCluster:
    """Connected component of comparable annotated concepts sharing a support."""

    concepts: frozenset[int]
    support: int
    head: int


@dataclass(frozen=True)
class FaultDependency:
    """How two faults' failing-test sets relate (MSD/SD/LD/ID)."""

    kind: str
    direction: str | None = None  # for SD: "first_in_second" | "second_in_first"


class FailureLattice:
    """Concept lattice of the failure context plus per-rule annotations."""

    def __init__(self, lattice: ConceptLattice, rules: Sequence[FailureRule]):
        self.lattice = lattice
        self.rules = tuple(rules)
        self.annotations: dict[int, RuleAnnotation] = {}
        by_premise = {rule.premise: rule for rule in self.rules}
        for idx, concept in enumerate(lattice.concepts):
            rule = by_premise.get(frozenset(concept.intent))
            if rule is not None:
                self.annotations[idx] = RuleAnnotation(rule.stats.support, rule.stats.lift)
        self.clusters: tuple[SupportCluster, ...] = tuple(support_clusters(self))
        self.cluster_of: dict[int, int] = {}
        for cid, cluster in enumerate(self.clusters):
            for c in cluster.concepts:
                self.cluster_of[c] = cid

    def intent_items(self, idx: int) -> frozenset[Item]:
        return frozenset(self.lattice.concepts[idx].intent)

    def label_items(self, idx: int) -> tuple[Item, ...]:
        """Attribute label of a concept: the items new at this level."""
        return tuple(sorted(self.lattice.attr_labels.get(idx, frozenset())))

    def cluster_members(self, idx: int) -> frozenset[int]:
        cid = self.cluster_of.get(idx)
        if cid is None:
            return frozenset({idx})
        return self.clusters[cid].concepts


def build_failure_lattice(rules: Sequence[FailureRule]) -> FailureLattice:
    """Concept lattice over the rules-by-premise-items context."""
    if not rules:
        raise MiningError("cannot build a failure lattice from zero rules")
    premises = [rule.premise for rule in rules]
    if len(set(premises)) != len(premises):
        raise MiningError("rule premises must be pairwise distinct")
    items = sorted(set().union(*premises))
    table = {f"r{i + 1}": rule.premise for i, rule in enumerate(rules)}
    ctx = Context.from_table(table, attributes=items)
    return FailureLattice(build_lattice(ctx), rules)


def support_clusters(fl: FailureLattice) -> list[SupportCluster]:
    """Partition of annotated concepts into maximal connected same-support sets.

    Two concepts are adjacent when comparable with equal support; the head is
    the inclusion-maximal extent (ties broken by extent size then index, though
    mined lattices never need the tiebreak).
    """
    lattice = fl.lattice
    annotated = sorted(fl.annotations)
    clusters: list[SupportCluster] = []
    unassigned = set(annotated)
    for seed in annotated:
        if seed not in unassigned:
            continue
        support = fl.annotations[seed].support
        member_pool = [
            c for c in annotated if fl.annotations[c].support == support
        ]
        component = {seed}
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            for other in member_pool:
                if other in component:
                    continue
                if lattice.leq(cur, other) or lattice.leq(other, cur):
                    component.add(other)
                    frontier.append(other)
        unassigned -= component
        head = max(
            component,
            key=lambda c: (bin(lattice.extent_masks[c]).count("1"), -c),
        )
        clusters.append(SupportCluster(frozenset(component), support, head))
    clusters.sort(key=lambda cl: cl.head)
    return clusters


def failure_concepts(
    fl: FailureLattice, failing_traces: Iterable[Iterable[Item]]
) -> frozenset[int]:
    """Maximally specific concepts whose intent fits inside a failed execution."""
    coverages = [frozenset(tr) for tr in failing_traces]
    lattice = fl.lattice
    qualifying = {
        idx
        for idx in range(len(lattice.concepts))
        if any(fl.intent_items(idx) <= cov for cov in coverages)
    }
    return frozenset(
        c
        for c in qualifying
        if not any(o != c and lattice.leq(o, c) for o in qualifying)
    )


def classify_dependency(fail1: Iterable, fail2: Iterable) -> FaultDependency:
    """Relate two faults by their failing-test sets.

    Equal sets are mutually strongly dependent; disjoint sets independent;
    strict containment is strong dependency (direction recorded); any other
    overlap is loose dependency.
    """
    f1, f2 = frozenset(fail1), frozenset(fail2)
    if f1 == f2:
        return FaultDependency(MSD)
    if not f1 & f2:
        return FaultDependency(ID)
    if f1 < f2:
        return FaultDependency(SD, "first_in_second")
    if f2 < f1:
        return FaultDependency(SD, "second_in_first")
    return FaultDependency(LD)


# -- exploration -------------------------------------------------------------


@dataclass
class Presented:
    concept: int
    label: tuple[Item, ...]
    fault_context: tuple[Item, ...]


@dataclass
class ExplorationSession:
    """Mutable state of one bottom-up traversal (single writer)."""

    strategy: str
    frontier: list[int] = field(default_factory=list)
    failures_to_explain: set[int] = field(default_factory=set)
    explained: set[int] = field(default_factory=set)
    explored: set[int] = field(default_factory=set)
    fault_context: list[Item] = field(default_factory=list)
    log: list[dict] = field(default_factory=list)
    pending: int | None = None
    located: set[Item] = field(default_factory=set)

    @property
    def done(self) -> bool:
        return (not self.failures_to_explain or not self.frontier) and self.pending is None

    def snapshot(self) -> dict:
        return {
            "frontier": list(self.frontier),
            "failures_to_explain": sorted(self.failures_to_explain),
            "explained": sorted(self.explained),
            "fault_context": [it.id for it in self.fault_context],
            "log": list(self.log),
            "pending": self.pending,
            "strategy": self.strategy,
            "done": self.done,
        }


def start_session(
    fl: FailureLattice,
    failing_traces: Iterable[Iterable[Item]],
    strategy: str = STRATEGY_QUEUE,
) -> ExplorationSession:
    """Fresh session: frontier and unexplained set are the failure concepts."""
    if strategy not in (STRATEGY_QUEUE, STRATEGY_STACK):
        raise SessionError(f"unknown strategy {strategy!r}")
    fc = failure_concepts(fl, failing_traces)
    if not fc:
        raise SessionError("no failure concepts (thresholds too high?)")
    ordered = sorted(fc)
    return ExplorationSession(
        strategy=strategy,
        frontier=ordered,
        failures_to_explain=set(fc),
    )


def next_concept(session: ExplorationSession, fl: FailureLattice) -> Presented:
    """Pick the next frontier concept (FIFO for queue, LIFO for stack), present
    its label together with the fault context accumulated so far."""
    if session.pending is not None:
        raise SessionError("previous concept still awaiting a decision")
    if not session.frontier:
        raise SessionError("frontier is empty")
    if session.strategy == STRATEGY_QUEUE:
        concept = session.frontier.pop(0)
    else:
        concept = session.frontier.pop()
    session.explored.add(concept)
    session.pending = concept
    label = fl.label_items(concept)
    context_before = tuple(session.fault_context)
    for item in label:
        if item not in session.fault_context:
            session.fault_context.append(item)
    session.log.append(
        {
            "event": "present",
            "concept": concept,
            "label": [it.id for it in label],
            "fault_context": [it.id for it in session.fault_context],
        }
    )
    return Presented(concept, label, context_before)


def apply_decision(
    session: ExplorationSession,
    fl: FailureLattice,
    concept: int,
    decision: str,
    items: Iterable[Item] = (),
) -> ExplorationSession:
    """Apply the oracle's verdict for the concept just presented.

    ``no_fault`` pushes the concept's upper neighbours (minus anything already
    explored, explained or queued); ``fault_located`` marks the concept's
    subconcepts and its whole support cluster as explained.
    """
    if session.pending != concept:
        raise SessionError(f"concept {concept} was not the one presented")
    if decision == "no_fault":
        queued = set(session.frontier)
        for parent in fl.lattice.upper_neighbours(concept):
            if parent in session.explored or parent in session.explained or parent in queued:
                continue
            session.frontier.append(parent)
            queued.add(parent)
    elif decision == "fault_located":
        explained = fl.lattice.subconcepts(concept) | fl.cluster_members(concept)
        session.explained |= explained
        session.failures_to_explain -= explained
        session.frontier = [c for c in session.frontier if c not in explained]
        session.located |= set(items)
    else:
        raise SessionError(f"unknown decision {decision!r}")
    session.pending = None
    session.log.append(
        {
            "event": decision,
            "concept": concept,
            "items": sorted(it.id for it in items),
            "to_explore": list(session.frontier),
            "failures_to_explain": sorted(session.failures_to_explain),
        }
    )
    return session


def run_scripted(
    fl: FailureLattice,
    failing_traces: Iterable[Iterable[Item]],
    oracle: Mapping[Item, bool] | Iterable[Item] | Callable[[Item], bool],
    strategy: str = STRATEGY_QUEUE,
) -> tuple[ExplorationSession, int]:
    """Drive a whole session with a scripted oracle.

    The oracle marks items as faulty; a presented concept whose label contains
    a faulty item yields a ``fault_located`` decision on those items, anything
    else ``no_fault``. Returns the finished session and the number of distinct
    items shown to the oracle.
    """
    if callable(oracle):
        is_fault = oracle
    elif isinstance(oracle, Mapping):
        is_fault = lambda it: bool(oracle.get(it))
    else:
        faulty = frozenset(oracle)
        is_fault = lambda it: it in faulty

    session = start_session(fl, failing_traces, strategy)
    while session.failures_to_explain and session.frontier:
        presented = next_concept(session, fl)
        found = tuple(it for it in presented.label if is_fault(it))
        if found:
            apply_decision(session, fl, presented.concept, "fault_located", found)
        else:
            apply_decision(session, fl, presented.concept, "no_fault")
    return session, len(session.fault_context)


# -- serialization -----------------------------------------------------------


def failure_lattice_to_json(
    fl: FailureLattice, failing_traces: Iterable[Iterable[Item]] | None = None
) -> dict:
    """Everything the explorer needs: concepts, covers, annotations, clusters."""
    lattice = fl.lattice
    fc = failure_concepts(fl, failing_traces) if failing_traces is not None else frozenset()
    concepts = []
    for idx in range(len(lattice.concepts)):
        ann = fl.annotations.get(idx)
        cid = fl.cluster_of.get(idx)
        concepts.append(
            {
                "extent": sorted(lattice.concepts[idx].extent),
                "intent": sorted(it.id for it in lattice.concepts[idx].intent),
                "attr_labels": sorted(it.id for it in fl.label_items(idx)),
                "obj_labels": sorted(lattice.obj_labels.get(idx, frozenset())),
                "support": ann.support if ann else None,
                "lift": str(ann.lift) if ann else None,
                "is_failure_concept": idx in fc,
                "cluster_id": cid,
                "is_head": cid is not None and fl.clusters[cid].head == idx,
            }
        )
    edges = sorted(
        [child, parent]
        for parent in range(len(lattice.concepts))
        for child in lattice.children[parent]
    )
    items = sorted({it for rule in fl.rules for it in rule.premise})
    return {
        "objects": [str(o) for o in lattice.context.objects],
        "items": [{"id": it.id, "kind": it.kind, "display": it.display} for it in items],
        "concepts": concepts,
        "edges": edges,
        "top": lattice.top,
        "bottom": lattice.bottom,
        "failure_concepts": sorted(fc),
    }
