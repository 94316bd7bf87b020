"""Generic formal context: objects x attributes with Galois derivations.

Objects and attributes are opaque hashables (test ids, planet names, trace
items...). Rows are stored as attribute bitmasks so the closure kernel and
the lattice builder can work on plain integers.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from latloc.errors import ContextError
from latloc.fca._closure_py import close_mask


class Context:
    """Immutable formal context.

    ``rows[i]`` is the attribute bitmask of object ``objects[i]``; bit ``j``
    stands for ``attributes[j]``. Attribute order fixes the lectic order of
    the concept enumeration, so it is part of the context's identity.
    """

    def __init__(
        self,
        objects: Sequence[Hashable],
        attributes: Sequence[Hashable],
        rows: Sequence[int],
    ):
        if len(objects) != len(rows):
            raise ContextError("one row per object required")
        if len(set(objects)) != len(objects):
            raise ContextError("object labels must be unique")
        if len(set(attributes)) != len(attributes):
            raise ContextError("attribute labels must be unique")
        self.objects: tuple = tuple(objects)
        self.attributes: tuple = tuple(attributes)
        self.rows: tuple[int, ...] = tuple(rows)
        self.full_mask = (1 << len(self.attributes)) - 1
        for r in self.rows:
            if r < 0 or r > self.full_mask:
                raise ContextError("row mask out of range")
        self._obj_index = {o: i for i, o in enumerate(self.objects)}
        self._attr_index = {a: j for j, a in enumerate(self.attributes)}
        # Column masks (bit i = object i) for fast extent computation.
        cols = [0] * len(self.attributes)
        for i, r in enumerate(self.rows):
            m = r
            while m:
                j = (m & -m).bit_length() - 1
                cols[j] |= 1 << i
                m &= m - 1
        self.columns: tuple[int, ...] = tuple(cols)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_table(
        cls,
        table: Mapping[Hashable, Iterable[Hashable]],
        attributes: Sequence[Hashable] | None = None,
    ) -> "Context":
        """Build from a mapping object -> iterable of attributes."""
        if attributes is None:
            seen = set()
            for attrs in table.values():
                seen.update(attrs)
            attributes = sorted(seen)
        ctx_attrs = tuple(attributes)
        index = {a: j for j, a in enumerate(ctx_attrs)}
        rows = []
        for obj, attrs in table.items():
            mask = 0
            for a in attrs:
                if a not in index:
                    raise ContextError(f"unknown attribute {a!r}")
                mask |= 1 << index[a]
            rows.append(mask)
        return cls(tuple(table.keys()), ctx_attrs, rows)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Hashable, Hashable]]) -> "Context":
        table: dict[Hashable, set] = {}
        for obj, attr in pairs:
            table.setdefault(obj, set()).add(attr)
        return cls.from_table(table)

    # -- mask plumbing --------------------------------------------------------

    def attr_mask(self, attrs: Iterable[Hashable]) -> int:
        mask = 0
        for a in attrs:
            j = self._attr_index.get(a)
            if j is None:
                raise ContextError(f"unknown attribute {a!r}")
            mask |= 1 << j
        return mask

    def obj_mask(self, objs: Iterable[Hashable]) -> int:
        mask = 0
        for o in objs:
            i = self._obj_index.get(o)
            if i is None:
                raise ContextError(f"unknown object {o!r}")
            mask |= 1 << i
        return mask

    def attrs_of_mask(self, mask: int) -> frozenset:
        return frozenset(
            self.attributes[j] for j in range(len(self.attributes)) if mask >> j & 1
        )

    def objs_of_mask(self, mask: int) -> frozenset:
        return frozenset(
            self.objects[i] for i in range(len(self.objects)) if mask >> i & 1
        )

    def extent_mask(self, attr_mask: int) -> int:
        mask = (1 << len(self.objects)) - 1
        m = attr_mask
        while m:
            j = (m & -m).bit_length() - 1
            mask &= self.columns[j]
            m &= m - 1
        return mask

    def intent_mask(self, obj_mask: int) -> int:
        mask = self.full_mask
        m = obj_mask
        while m:
            i = (m & -m).bit_length() - 1
            mask &= self.rows[i]
            m &= m - 1
        return mask

    def closure_mask(self, attr_mask: int) -> int:
        return close_mask(list(self.rows), attr_mask, self.full_mask)

    # -- Galois derivations ----------------------------------------------------

    def extent(self, attrs: Iterable[Hashable]) -> frozenset:
        """Objects possessing every attribute of ``attrs``; all objects for {}."""
        return self.objs_of_mask(self.extent_mask(self.attr_mask(attrs)))

    def intent(self, objs: Iterable[Hashable]) -> frozenset:
        """Attributes shared by every object of ``objs``; all attributes for {}."""
        return self.attrs_of_mask(self.intent_mask(self.obj_mask(objs)))

    def __repr__(self):
        return f"Context({len(self.objects)} objects, {len(self.attributes)} attributes)"
