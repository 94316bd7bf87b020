"""Closure-kernel dispatch: compiled extension when available, else Python.

Set LATLOC_PURE_PYTHON=1 to force the fallback (used by the benchmark and by
tests that compare both backends). Enumeration order is identical either way.
"""

from __future__ import annotations

import os

from latloc.fca import _closure_py
from latloc.fca._closure_py import CapExceeded

_cy = None
if not os.environ.get("LATLOC_PURE_PYTHON"):
    try:
        from latloc.fca import _closure_cy as _cy  # type: ignore[no-redef]
    except ImportError:
        _cy = None

BACKEND = "cython" if _cy is not None else "python"


def closed_intents(rows: list[int], n_attrs: int, cap: int) -> list[int]:
    if _cy is not None and n_attrs <= 64:
        return _cy.closed_intents(rows, n_attrs, cap)
    return _closure_py.closed_intents(rows, n_attrs, cap)


__all__ = ["closed_intents", "CapExceeded", "BACKEND"]
