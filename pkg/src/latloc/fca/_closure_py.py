"""Pure-Python closure kernel.

Closed attribute sets are enumerated in lectic order with Ganter's
next-closure step, working on integer bitmasks (bit i = attribute i, bit 0
most significant in the lectic comparison). Handles contexts of any width;
the compiled kernel mirrors this exactly for widths up to 64.
"""

from __future__ import annotations


class CapExceeded(Exception):
    """More closed sets than the caller allowed."""


def close_mask(rows: list[int], mask: int, full: int) -> int:
    """Intersection of all rows containing ``mask`` (``full`` if none do)."""
    out = full
    hit = False
    for r in rows:
        if r & mask == mask:
            out &= r
            hit = True
    return out if hit else full


def closed_intents(rows: list[int], n_attrs: int, cap: int) -> list[int]:
    """All closed intent masks of the context, in lectic order.

    Raises :class:`CapExceeded` once more than ``cap`` closed sets exist.
    """
    full = (1 << n_attrs) - 1
    current = close_mask(rows, 0, full)
    result = [current]
    while current != full:
        nxt = -1
        for i in range(n_attrs - 1, -1, -1):
            bit = 1 << i
            if current & bit:
                continue
            low = bit - 1
            closed = close_mask(rows, (current & low) | bit, full)
            if closed & low == current & low:
                nxt = closed
                break
        if nxt < 0:
            break
        current = nxt
        result.append(current)
        if len(result) > cap:
            raise CapExceeded(f"more than {cap} concepts")
    return result
