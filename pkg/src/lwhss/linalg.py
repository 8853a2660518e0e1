"""Dense exact linear algebra over a FieldSpec.

Matrices store a flat row-major list of element encodings plus the field
they live over.  Row reduction is deterministic Gauss-Jordan: pivots are
found by scanning columns left-to-right and rows top-down, and solve()
returns the canonical particular solution with all free variables set
to zero.  The heavy lifting runs in the kernel backend (compiled when
available) whenever the field has lookup tables; larger fields use a
generic scalar path.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

from . import _kernels
from .errors import LengthMismatch, NotSquare


class Matrix:
    """An exact rows x cols matrix over one field."""

    __slots__ = ("spec", "rows", "cols", "data")

    def __init__(self, spec, rows: int, cols: int, data: Iterable[int]):
        data = [int(v) for v in data]
        if len(data) != rows * cols:
            raise LengthMismatch(f"need {rows * cols} entries, got {len(data)}")
        order = spec.order
        for v in data:
            if not 0 <= v < order:
                raise ValueError(f"entry {v} is not an element encoding of {spec!r}")
        self.spec = spec
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, spec, rows: Iterable[Iterable]) -> Matrix:
        rows = [[int(v) for v in row] for row in rows]
        r = len(rows)
        c = len(rows[0]) if rows else 0
        if any(len(row) != c for row in rows):
            raise LengthMismatch("ragged rows")
        return cls(spec, r, c, [v for row in rows for v in row])

    @classmethod
    def identity(cls, spec, n: int) -> Matrix:
        data = [0] * (n * n)
        for i in range(n):
            data[i * n + i] = 1
        return cls(spec, n, n, data)

    @classmethod
    def zeros(cls, spec, rows: int, cols: int) -> Matrix:
        return cls(spec, rows, cols, [0] * (rows * cols))

    def copy(self) -> Matrix:
        return Matrix(self.spec, self.rows, self.cols, list(self.data))

    # -- access ---------------------------------------------------------------

    def at(self, i: int, j: int):
        """Entry (i, j) as a FieldElem (0-based indices)."""
        return self.spec.element(self.data[i * self.cols + j])

    def entry(self, i: int, j: int) -> int:
        return self.data[i * self.cols + j]

    def row_ints(self, i: int) -> list[int]:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def col_ints(self, j: int) -> list[int]:
        return [self.data[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[int]]:
        return [self.row_ints(i) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.spec == other.spec
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.spec, self.rows, self.cols, tuple(self.data)))

    def __repr__(self):
        if self.rows * self.cols <= 64:
            body = "; ".join(" ".join(str(v) for v in row) for row in self.to_rows())
            return f"Matrix({self.spec!r}, [{body}])"
        return f"Matrix({self.spec!r}, {self.rows}x{self.cols})"

    # -- shape operations -------------------------------------------------------

    def transpose(self) -> Matrix:
        data = [self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return Matrix(self.spec, self.cols, self.rows, data)

    def augment(self, other: Matrix) -> Matrix:
        if other.rows != self.rows or other.spec != self.spec:
            raise LengthMismatch("augment needs matching row counts and field")
        data = []
        for i in range(self.rows):
            data.extend(self.row_ints(i))
            data.extend(other.row_ints(i))
        return Matrix(self.spec, self.rows, self.cols + other.cols, data)

    def stack(self, other: Matrix) -> Matrix:
        if other.cols != self.cols or other.spec != self.spec:
            raise LengthMismatch("stack needs matching column counts and field")
        return Matrix(self.spec, self.rows + other.rows, self.cols, self.data + other.data)

    def take_columns(self, idxs: Iterable[int]) -> Matrix:
        idxs = list(idxs)
        data = [self.data[i * self.cols + j] for i in range(self.rows) for j in idxs]
        return Matrix(self.spec, self.rows, len(idxs), data)

    def take_rows(self, idxs: Iterable[int]) -> Matrix:
        idxs = list(idxs)
        data = [self.data[i * self.cols + j] for i in idxs for j in range(self.cols)]
        return Matrix(self.spec, len(idxs), self.cols, data)

    def submatrix(self, row_idxs: Iterable[int], col_idxs: Iterable[int]) -> Matrix:
        row_idxs = list(row_idxs)
        col_idxs = list(col_idxs)
        data = [self.data[i * self.cols + j] for i in row_idxs for j in col_idxs]
        return Matrix(self.spec, len(row_idxs), len(col_idxs), data)

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other: Matrix) -> Matrix:
        if (other.rows, other.cols) != (self.rows, self.cols) or other.spec != self.spec:
            raise LengthMismatch("matrix addition needs identical shapes and field")
        add = self.spec.add_int
        return Matrix(self.spec, self.rows, self.cols, [add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other: Matrix) -> Matrix:
        if (other.rows, other.cols) != (self.rows, self.cols) or other.spec != self.spec:
            raise LengthMismatch("matrix subtraction needs identical shapes and field")
        sub = self.spec.sub_int
        return Matrix(self.spec, self.rows, self.cols, [sub(a, b) for a, b in zip(self.data, other.data)])

    def __matmul__(self, other: Matrix) -> Matrix:
        if other.rows != self.cols or other.spec != self.spec:
            raise LengthMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        spec = self.spec
        add = spec.add_int
        mul = spec.mul_int
        out = [0] * (self.rows * other.cols)
        for i in range(self.rows):
            ibase = i * self.cols
            obase = i * other.cols
            for k in range(self.cols):
                a = self.data[ibase + k]
                if not a:
                    continue
                kbase = k * other.cols
                for j in range(other.cols):
                    b = other.data[kbase + j]
                    if b:
                        out[obase + j] = add(out[obase + j], mul(a, b))
        return Matrix(spec, self.rows, other.cols, out)

    def mul_vec(self, vec: list[int]) -> list[int]:
        if len(vec) != self.cols:
            raise LengthMismatch(f"vector length {len(vec)} != {self.cols}")
        spec = self.spec
        add = spec.add_int
        mul = spec.mul_int
        out = []
        for i in range(self.rows):
            base = i * self.cols
            acc = 0
            for j, v in enumerate(vec):
                if v:
                    a = self.data[base + j]
                    if a:
                        acc = add(acc, mul(a, v))
            out.append(acc)
        return out

    # -- serialization ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.to_rows()}

    @classmethod
    def from_json(cls, spec, obj: dict) -> Matrix:
        m = cls.from_rows(spec, obj["entries"]) if obj["entries"] else cls(spec, 0, int(obj["cols"]), [])
        if (m.rows, m.cols) != (int(obj["rows"]), int(obj["cols"])):
            raise LengthMismatch("matrix entries do not match declared shape")
        return m


class RREF(NamedTuple):
    matrix: Matrix
    pivots: tuple[int, ...]
    rank: int


def _generic_row_reduce(data, rows, cols, limit_cols, spec):
    """Scalar-op twin of the kernel row_reduce, for fields without tables."""
    add, mul, inv, neg = spec.add_int, spec.mul_int, spec.inv_int, spec.neg_int
    pivots = []
    det = 1
    pr = 0
    for c in range(limit_cols):
        if pr == rows:
            break
        sel = next((r for r in range(pr, rows) if data[r * cols + c]), None)
        if sel is None:
            continue
        base = pr * cols
        if sel != pr:
            sb = sel * cols
            data[base : base + cols], data[sb : sb + cols] = (
                data[sb : sb + cols],
                data[base : base + cols],
            )
            det = neg(det)
        v = data[base + c]
        det = mul(det, v)
        if v != 1:
            iv = inv(v)
            for k in range(c, cols):
                if data[base + k]:
                    data[base + k] = mul(data[base + k], iv)
        for r in range(rows):
            if r == pr:
                continue
            f = data[r * cols + c]
            if not f:
                continue
            nf = neg(f)
            rb = r * cols
            for k in range(c, cols):
                pv = data[base + k]
                if pv:
                    data[rb + k] = add(data[rb + k], mul(nf, pv))
        pivots.append(c)
        pr += 1
    return pivots, det


def _reduce(data, rows, cols, spec, limit_cols=None):
    limit = cols if limit_cols is None else limit_cols
    tables = spec.tables()
    if tables is not None:
        return _kernels.row_reduce(data, rows, cols, limit, tables)
    return _generic_row_reduce(data, rows, cols, limit, spec)


def rref(m: Matrix) -> RREF:
    """Reduced row echelon form, pivot columns, and rank."""
    data = list(m.data)
    pivots, _ = _reduce(data, m.rows, m.cols, m.spec)
    return RREF(Matrix(m.spec, m.rows, m.cols, data), tuple(pivots), len(pivots))


def rank(m: Matrix) -> int:
    data = list(m.data)
    pivots, _ = _reduce(data, m.rows, m.cols, m.spec)
    return len(pivots)


def det(m: Matrix):
    """Determinant as a FieldElem; raises NotSquare for non-square input."""
    if m.rows != m.cols:
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return m.spec.one
    data = list(m.data)
    pivots, acc = _reduce(data, m.rows, m.cols, m.spec)
    return m.spec.element(acc if len(pivots) == m.rows else 0)


def is_nonsingular(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def solve(m: Matrix, rhs: list[int]) -> list[int] | None:
    """Canonical solution of m @ x = rhs, or None when inconsistent.

    After reducing the augmented system, free variables are zero and
    each pivot variable reads off the reduced right-hand side, so the
    result is deterministic.
    """
    if len(rhs) != m.rows:
        raise LengthMismatch(f"rhs length {len(rhs)} != {m.rows} rows")
    cols = m.cols + 1
    data = []
    for i in range(m.rows):
        data.extend(m.data[i * m.cols : (i + 1) * m.cols])
        data.append(int(rhs[i]))
    pivots, _ = _reduce(data, m.rows, cols, m.spec, limit_cols=m.cols)
    for r in range(len(pivots), m.rows):
        if data[r * cols + m.cols]:
            return None
    x = [0] * m.cols
    for row, c in enumerate(pivots):
        x[c] = data[row * cols + m.cols]
    return x


def kernel(m: Matrix) -> list[list[int]]:
    """Basis of the right null space, one vector per free column."""
    red = rref(m)
    pivot_set = set(red.pivots)
    basis = []
    neg = m.spec.neg_int
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [0] * m.cols
        vec[free] = 1
        for row, c in enumerate(red.pivots):
            vec[c] = neg(red.matrix.entry(row, free))
        basis.append(vec)
    return basis
