"""Pure-Python fallbacks for the hot kernels.

Same contracts as the compiled twins in _fastkernels.pyx; _kernels picks
a backend at import time.  All field arithmetic is table-driven: add/mul
tables are flat lists indexed a*q + b.
"""
from __future__ import annotations


def row_reduce(data, rows, cols, limit_cols, add_t, mul_t, inv_t, neg_t, q):
    """Gauss-Jordan reduction in place on a flat row-major int list.

    Pivots are searched column by column, scanning rows top-down.  Only
    columns < limit_cols are eligible as pivots (the rest are carried
    along, which is how augmented systems are solved).  Returns
    (pivot_columns, det_accumulator); the accumulator is the determinant
    of the leading square part only when the caller knows the matrix is
    square with full rank, and is otherwise just a by-product.
    """
    pivots = []
    det = 1
    pr = 0
    for c in range(limit_cols):
        if pr == rows:
            break
        sel = -1
        for r in range(pr, rows):
            if data[r * cols + c]:
                sel = r
                break
        if sel < 0:
            continue
        base = pr * cols
        if sel != pr:
            sb = sel * cols
            data[base : base + cols], data[sb : sb + cols] = (
                data[sb : sb + cols],
                data[base : base + cols],
            )
            det = neg_t[det]
        v = data[base + c]
        det = mul_t[det * q + v]
        if v != 1:
            iv = inv_t[v]
            for k in range(c, cols):
                ent = data[base + k]
                if ent:
                    data[base + k] = mul_t[ent * q + iv]
        for r in range(rows):
            if r == pr:
                continue
            f = data[r * cols + c]
            if f == 0:
                continue
            nf = neg_t[f]
            rb = r * cols
            for k in range(c, cols):
                pv = data[base + k]
                if pv:
                    data[rb + k] = add_t[data[rb + k] * q + mul_t[nf * q + pv]]
        pivots.append(c)
        pr += 1
    return pivots, det


def min_labelweight(gen, ell, n, labels0, s, q, add_t, mul_t, step_diff, total):
    """Minimum labelweight over the nonzero codewords of a generator.

    Messages are walked in odometer order; each digit change updates the
    running codeword by one scaled generator row.  step_diff[v] is the
    field encoding of elem(v+1 mod q) - elem(v), so carries are just one
    more row update.  labels0 holds 0-based coordinate labels.
    """
    digits = [0] * ell
    cw = [0] * n
    best = s + 1
    for _ in range(total - 1):
        i = 0
        while True:
            v = digits[i]
            d = step_diff[v]
            gi = i * n
            for k in range(n):
                gv = gen[gi + k]
                if gv:
                    cw[k] = add_t[cw[k] * q + mul_t[d * q + gv]]
            if v == q - 1:
                digits[i] = 0
                i += 1
            else:
                digits[i] = v + 1
                break
        touched = set()
        for k in range(n):
            if cw[k]:
                touched.add(labels0[k])
        w = len(touched)
        if w < best:
            best = w
            if best <= 1:
                break
    return best
