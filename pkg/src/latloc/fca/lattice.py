"""Concept lattice construction, Hasse diagram and standard-representation labels.

Concepts are enumerated as the closed attribute sets of the context (every
distinct closed extent appears exactly once), stored sorted by
(|intent|, lexicographic intent indices) so the top concept is index 0 and the
bottom concept is the last index. All derived structure (covering edges,
labels, exports) iterates in that order, making outputs run-to-run stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

from latloc.errors import ContextError, LatticeTooLargeError
from latloc.fca import _kernel
from latloc.fca.context import Context

DEFAULT_MAX_CONCEPTS = 100_000


@dataclass(frozen=True)
class FormalConcept:
    """A mutually-fixed (extent, intent) pair.

    ``extent`` holds object indices into the context's object tuple; ``intent``
    holds attribute values.
    """

    extent: frozenset[int]
    intent: frozenset


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def _as_context(ctx) -> Context:
    # Trace contexts (and anything context-like) are accepted everywhere a
    # plain formal context is.
    if not isinstance(ctx, Context) and hasattr(ctx, "to_context"):
        return ctx.to_context()
    return ctx


def extent(ctx, attrs: Iterable[Hashable]) -> frozenset:
    """Objects of the context possessing every attribute of ``attrs``."""
    return _as_context(ctx).extent(attrs)


def intent(ctx, objs: Iterable[Hashable]) -> frozenset:
    """Attributes shared by every object of ``objs``."""
    return _as_context(ctx).intent(objs)


def concept_of(
    ctx,
    attrs: Iterable[Hashable] | None = None,
    objects: Iterable[Hashable] | None = None,
) -> FormalConcept:
    """Closure of an attribute seed or an object seed into a formal concept."""
    ctx = _as_context(ctx)
    if (attrs is None) == (objects is None):
        raise ValueError("provide exactly one of attrs= or objects=")
    if attrs is not None:
        intent_mask = ctx.closure_mask(ctx.attr_mask(attrs))
    else:
        intent_mask = ctx.intent_mask(ctx.obj_mask(objects))
    extent_mask = ctx.extent_mask(intent_mask)
    return FormalConcept(
        extent=frozenset(_bits(extent_mask)),
        intent=ctx.attrs_of_mask(intent_mask),
    )


class ConceptLattice:
    """All formal concepts of a context with covering edges and labels."""

    def __init__(
        self,
        context: Context,
        intent_masks: list[int],
        extent_masks: list[int],
        parents: list[tuple[int, ...]],
        children: list[tuple[int, ...]],
    ):
        self.context = context
        self.intent_masks = intent_masks
        self.extent_masks = extent_masks
        self.parents = parents
        self.children = children
        self.top = 0
        self.bottom = len(intent_masks) - 1
        self.concepts: tuple[FormalConcept, ...] = tuple(
            FormalConcept(
                extent=frozenset(_bits(extent_masks[i])),
                intent=context.attrs_of_mask(intent_masks[i]),
            )
            for i in range(len(intent_masks))
        )
        self._intent_to_index = {m: i for i, m in enumerate(intent_masks)}
        self.attr_labels: dict[int, frozenset] = {}
        self.obj_labels: dict[int, frozenset[int]] = {}
        self._compute_labels()

    def __len__(self):
        return len(self.concepts)

    def _compute_labels(self):
        ctx = self.context
        attr_label_sets: dict[int, set] = {}
        for j, attr in enumerate(ctx.attributes):
            idx = self._intent_to_index[ctx.closure_mask(1 << j)]
            attr_label_sets.setdefault(idx, set()).add(attr)
        obj_label_sets: dict[int, set[int]] = {}
        for i in range(len(ctx.objects)):
            # An object labels the lowest concept holding it: the one whose
            # intent is exactly the object's row (always closed).
            idx = self._intent_to_index[ctx.rows[i]]
            obj_label_sets.setdefault(idx, set()).add(i)
        self.attr_labels = {i: frozenset(s) for i, s in attr_label_sets.items()}
        self.obj_labels = {i: frozenset(s) for i, s in obj_label_sets.items()}

    # -- order ---------------------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        """True when concept ``a`` is below-or-equal ``b`` (extent inclusion)."""
        ea, eb = self.extent_masks[a], self.extent_masks[b]
        return ea & eb == ea

    def upper_neighbours(self, idx: int) -> tuple[int, ...]:
        return self.parents[idx]

    def lower_neighbours(self, idx: int) -> tuple[int, ...]:
        return self.children[idx]

    def subconcepts(self, idx: int) -> frozenset[int]:
        """All concepts <= idx, including idx itself."""
        return frozenset(i for i in range(len(self.concepts)) if self.leq(i, idx))

    def index_of_intent(self, attrs: Iterable[Hashable]) -> int | None:
        mask = self.context.attr_mask(attrs)
        return self._intent_to_index.get(mask)

    def concept_index_of(self, attrs=None, objects=None) -> int:
        c = concept_of(self.context, attrs=attrs, objects=objects)
        return self._intent_to_index[self.context.attr_mask(c.intent)]

    # -- exports ---------------------------------------------------------------

    def export_json(self) -> dict:
        """Schema: concepts + [child, parent] cover edges, label annotations."""
        ctx = self.context

        def jsonable(value):
            if isinstance(value, (str, int)):
                return value
            if hasattr(value, "id"):
                return value.id
            return str(value)

        concepts = []
        for i, c in enumerate(self.concepts):
            concepts.append(
                {
                    "extent": sorted(c.extent),
                    "intent": sorted(jsonable(a) for a in c.intent),
                    "attr_labels": sorted(
                        jsonable(a) for a in self.attr_labels.get(i, frozenset())
                    ),
                    "obj_labels": sorted(self.obj_labels.get(i, frozenset())),
                }
            )
        edges = sorted(
            [child, parent]
            for parent in range(len(self.concepts))
            for child in self.children[parent]
        )
        return {
            "objects": [str(o) for o in ctx.objects],
            "attributes": [str(a) for a in ctx.attributes],
            "concepts": concepts,
            "edges": edges,
            "top": self.top,
            "bottom": self.bottom,
        }

    def export_dot(self) -> str:
        """Hasse diagram in DOT: one node per concept, one edge per cover."""
        ctx = self.context

        def display(value):
            return getattr(value, "display", str(value))

        lines = ["digraph lattice {", "  rankdir=TB;", '  node [shape=ellipse fontsize=10];']
        for i in range(len(self.concepts)):
            attrs = ", ".join(sorted(display(a) for a in self.attr_labels.get(i, frozenset())))
            objs = ", ".join(
                sorted(str(ctx.objects[o]) for o in self.obj_labels.get(i, frozenset()))
            )
            label = f"c{i}"
            if attrs:
                label += f"\\n[{attrs}]"
            if objs:
                label += f"\\n({objs})"
            lines.append(f'  c{i} [label="{label}"];')
        for parent in range(len(self.concepts)):
            for child in sorted(self.children[parent]):
                lines.append(f"  c{parent} -> c{child};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_lattice(ctx, max_concepts: int = DEFAULT_MAX_CONCEPTS) -> ConceptLattice:
    """Concept lattice of a non-degenerate context.

    Raises :class:`LatticeTooLargeError` once the enumeration exceeds
    ``max_concepts`` (worst case is exponential in the context size).
    """
    ctx = _as_context(ctx)
    if not ctx.objects or not ctx.attributes:
        raise ContextError("context must have at least one object and one attribute")
    try:
        masks = _kernel.closed_intents(list(ctx.rows), len(ctx.attributes), max_concepts)
    except _kernel.CapExceeded as exc:
        raise LatticeTooLargeError(str(exc)) from exc

    masks.sort(key=lambda m: (bin(m).count("1"), _bits(m)))
    extents = [ctx.extent_mask(m) for m in masks]

    n = len(masks)
    parents: list[tuple[int, ...]] = [()] * n
    children: list[list[int]] = [[] for _ in range(n)]
    # Candidates sorted by extent size: the smallest strict superset extents
    # not dominated by an already-chosen parent are the covers.
    by_size = sorted(range(n), key=lambda i: (bin(extents[i]).count("1"), i))
    for i in range(n):
        ei = extents[i]
        chosen: list[int] = []
        for j in by_size:
            ej = extents[j]
            if ej == ei or ei & ej != ei:
                continue
            if any(extents[p] & ej == extents[p] for p in chosen):
                continue
            chosen.append(j)
        parents[i] = tuple(sorted(chosen))
        for p in chosen:
            children[p].append(i)

    return ConceptLattice(
        ctx, masks, extents, parents, [tuple(sorted(c)) for c in children]
    )
