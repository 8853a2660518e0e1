# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: table-driven row reduction and labelweight
enumeration.  Contracts mirror _pykernels exactly."""

from libc.stdlib cimport calloc, free


def row_reduce(long long[::1] data, Py_ssize_t rows, Py_ssize_t cols,
               Py_ssize_t limit_cols,
               long long[::1] add_t, long long[::1] mul_t,
               long long[::1] inv_t, long long[::1] neg_t, long long q):
    cdef Py_ssize_t pr = 0, c, r, k, sel, base, sb, rb
    cdef long long det = 1, v, iv, f, nf, pv, tmp
    pivots = []
    for c in range(limit_cols):
        if pr == rows:
            break
        sel = -1
        for r in range(pr, rows):
            if data[r * cols + c] != 0:
                sel = r
                break
        if sel < 0:
            continue
        base = pr * cols
        if sel != pr:
            sb = sel * cols
            for k in range(cols):
                tmp = data[base + k]
                data[base + k] = data[sb + k]
                data[sb + k] = tmp
            det = neg_t[det]
        v = data[base + c]
        det = mul_t[det * q + v]
        if v != 1:
            iv = inv_t[v]
            for k in range(c, cols):
                if data[base + k] != 0:
                    data[base + k] = mul_t[data[base + k] * q + iv]
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
                if pv != 0:
                    data[rb + k] = add_t[data[rb + k] * q + mul_t[nf * q + pv]]
        pivots.append(c)
        pr += 1
    return pivots, det


def min_labelweight(long long[::1] gen, Py_ssize_t ell, Py_ssize_t n,
                    long long[::1] labels0, Py_ssize_t s, long long q,
                    long long[::1] add_t, long long[::1] mul_t,
                    long long[::1] step_diff, long long total):
    cdef long long *cw = <long long *> calloc(n, sizeof(long long))
    cdef long long *digits = <long long *> calloc(ell, sizeof(long long))
    if cw == NULL or digits == NULL:
        if cw != NULL:
            free(cw)
        if digits != NULL:
            free(digits)
        raise MemoryError()
    cdef Py_ssize_t i, k, gi
    cdef long long step, v, d, gv, best = s + 1
    cdef unsigned long long mask
    cdef long long w
    try:
        for step in range(total - 1):
            i = 0
            while True:
                v = digits[i]
                d = step_diff[v]
                gi = i * n
                for k in range(n):
                    gv = gen[gi + k]
                    if gv != 0:
                        cw[k] = add_t[cw[k] * q + mul_t[d * q + gv]]
                if v == q - 1:
                    digits[i] = 0
                    i += 1
                else:
                    digits[i] = v + 1
                    break
            mask = 0
            for k in range(n):
                if cw[k] != 0:
                    mask |= (<unsigned long long> 1) << labels0[k]
            w = 0
            while mask:
                mask &= mask - 1
                w += 1
            if w < best:
                best = w
                if best <= 1:
                    break
    finally:
        free(cw)
        free(digits)
    return best
