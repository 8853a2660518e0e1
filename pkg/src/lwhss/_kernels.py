"""Kernel backend selection.

The compiled extension is used when it imported cleanly; set LWHSS_PURE=1
in the environment to force the pure-Python fallback.  Both backends
share the same table-driven contracts (see _pykernels).
"""
from __future__ import annotations

import os
from array import array

from . import _pykernels

try:
    from . import _fastkernels  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build environment
    _fastkernels = None

_COMPILED = _fastkernels is not None and not os.environ.get("LWHSS_PURE")


def backend_name() -> str:
    return "compiled" if _COMPILED else "pure"


def have_compiled() -> bool:
    return _fastkernels is not None


class ArithTables:
    """Flat arithmetic tables for one field, in list and buffer form."""

    __slots__ = ("order", "add", "mul", "inv", "neg", "_arrays")

    def __init__(self, order, add, mul, inv, neg):
        self.order = order
        self.add = add
        self.mul = mul
        self.inv = inv
        self.neg = neg
        self._arrays = None

    def as_arrays(self):
        if self._arrays is None:
            self._arrays = (
                array("q", self.add),
                array("q", self.mul),
                array("q", self.inv),
                array("q", self.neg),
            )
        return self._arrays


def row_reduce(data, rows, cols, limit_cols, tables, *, force_pure=False):
    """Reduce `data` (flat row-major list, mutated in place); see _pykernels."""
    if _COMPILED and not force_pure:
        buf = array("q", data)
        add_a, mul_a, inv_a, neg_a = tables.as_arrays()
        pivots, det = _fastkernels.row_reduce(
            buf, rows, cols, limit_cols, add_a, mul_a, inv_a, neg_a, tables.order
        )
        data[:] = buf
        return pivots, det
    return _pykernels.row_reduce(
        data, rows, cols, limit_cols, tables.add, tables.mul, tables.inv, tables.neg, tables.order
    )


def min_labelweight(gen, ell, n, labels0, s, tables, step_diff, total, *, force_pure=False):
    """Minimum labelweight of a generator's nonzero codewords; see _pykernels."""
    if _COMPILED and not force_pure and s <= 63:
        add_a, mul_a, _inv_a, _neg_a = tables.as_arrays()
        return _fastkernels.min_labelweight(
            array("q", gen),
            ell,
            n,
            array("q", labels0),
            s,
            tables.order,
            add_a,
            mul_a,
            array("q", step_diff),
            total,
        )
    return _pykernels.min_labelweight(
        gen, ell, n, labels0, s, tables.order, tables.add, tables.mul, step_diff, total
    )
