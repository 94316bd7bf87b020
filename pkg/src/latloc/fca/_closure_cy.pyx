# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled closure kernel: uint64 bitset next-closure (contexts <= 64 attrs).

Mirrors _closure_py.closed_intents bit for bit; the dispatcher falls back to
the Python kernel for wider contexts.
"""

from libc.stdlib cimport free, malloc

from latloc.fca._closure_py import CapExceeded


cdef unsigned long long _close(unsigned long long* rows, Py_ssize_t n_rows,
                               unsigned long long mask,
                               unsigned long long full) noexcept nogil:
    cdef unsigned long long out = full
    cdef bint hit = False
    cdef Py_ssize_t k
    for k in range(n_rows):
        if rows[k] & mask == mask:
            out &= rows[k]
            hit = True
    if hit:
        return out
    return full


def closed_intents(object py_rows, int n_attrs, Py_ssize_t cap):
    """All closed intent masks in lectic order (see the Python kernel)."""
    if n_attrs > 64:
        raise ValueError("compiled kernel handles at most 64 attributes")
    cdef Py_ssize_t n_rows = len(py_rows)
    cdef unsigned long long* rows = <unsigned long long*> malloc(
        n_rows * sizeof(unsigned long long))
    if rows == NULL and n_rows > 0:
        raise MemoryError()
    cdef Py_ssize_t k
    for k in range(n_rows):
        rows[k] = <unsigned long long> py_rows[k]

    cdef unsigned long long full
    if n_attrs == 64:
        full = <unsigned long long> 0xFFFFFFFFFFFFFFFFULL
    else:
        full = (<unsigned long long> 1 << n_attrs) - 1

    cdef unsigned long long current, closed, bit, low
    cdef int i
    cdef bint advanced
    result = []
    try:
        current = _close(rows, n_rows, 0, full)
        result.append(current)
        while current != full:
            advanced = False
            for i in range(n_attrs - 1, -1, -1):
                bit = <unsigned long long> 1 << i
                if current & bit:
                    continue
                low = bit - 1
                closed = _close(rows, n_rows, (current & low) | bit, full)
                if closed & low == current & low:
                    current = closed
                    advanced = True
                    break
            if not advanced:
                break
            result.append(current)
            if len(result) > cap:
                raise CapExceeded(f"more than {cap} concepts")
    finally:
        free(rows)
    return result
