"""Labelweight codes, MDS/totally-nonsingular matrices, and the block
construction pipeline connecting them.

A labeled code is a full-row-rank generator matrix together with a
surjective coordinate labeling onto s servers.  The labelweight of a
codeword is the number of distinct labels among its nonzero
coordinates; the labelweight of a code is the minimum over nonzero
codewords.  Codes of rate (s - dt)/s with labelweight >= dt + 1 are
exactly what the secret-sharing layer needs, and they are equivalent to
block totally nonsingular arrays over the base field, which in turn
come from MDS generator matrices over an extension field.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from . import _kernels, linalg
from .errors import (
    EnumerationTooLarge,
    InfeasibleParams,
    LabelweightTooSmall,
    LengthMismatch,
    NotBlockTn,
    NotMds,
    NotTn,
    ParamsExceedMdsBound,
)
from .field import GF, FieldSpec, embed_matrix, factor_prime_power
from .linalg import Matrix

LABELWEIGHT_BUDGET = 1 << 24
MINOR_BUDGET = 10**6


# ---------------------------------------------------------------------------
# Labelings and labeled codes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Labeling:
    """A surjective assignment of n coordinates to servers 1..s."""

    n: int
    s: int
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != self.n:
            raise LengthMismatch(f"labeling needs {self.n} entries, got {len(self.labels)}")
        seen = set(self.labels)
        if seen != set(range(1, self.s + 1)):
            raise ValueError(f"labeling must be onto 1..{self.s}, got labels {sorted(seen)}")

    def preimage(self, server: int) -> list[int]:
        """0-based coordinate indices mapped to `server`."""
        return [i for i, lam in enumerate(self.labels) if lam == server]

    def to_json(self) -> list[int]:
        return list(self.labels)


def canonical_labeling(j: int, s: int) -> Labeling:
    """Coordinate i (1-based) gets label ceil(i / j); n = j * s."""
    labels = tuple((i // j) + 1 for i in range(j * s))
    return Labeling(j * s, s, labels)


def is_balanced(labeling: Labeling) -> tuple[bool, int | None]:
    """Whether every label has the same number of coordinates (and it)."""
    sizes = {lam: 0 for lam in range(1, labeling.s + 1)}
    for lam in labeling.labels:
        sizes[lam] += 1
    values = set(sizes.values())
    if len(values) == 1:
        return True, values.pop()
    return False, None


@dataclass(frozen=True)
class LabeledCode:
    """A full-row-rank generator matrix with a coordinate labeling."""

    generator: Matrix
    labeling: Labeling

    def __post_init__(self):
        if self.labeling.n != self.generator.cols:
            raise LengthMismatch(
                f"labeling covers {self.labeling.n} coordinates, generator has {self.generator.cols}"
            )
        if linalg.rank(self.generator) != self.generator.rows:
            raise ValueError("generator must have full row rank")

    @property
    def spec(self) -> FieldSpec:
        return self.generator.spec

    @property
    def dimension(self) -> int:
        return self.generator.rows

    @property
    def length(self) -> int:
        return self.generator.cols

    @property
    def servers(self) -> int:
        return self.labeling.s

    @property
    def block_size(self) -> int | None:
        balanced, j = is_balanced(self.labeling)
        return j if balanced else None

    def rate(self) -> Fraction:
        return Fraction(self.dimension, self.length)

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "G": self.generator.to_json(),
            "labels": self.labeling.to_json(),
            "s": self.servers,
            "j": self.block_size,
        }

    @classmethod
    def from_json(cls, obj: dict) -> LabeledCode:
        spec = FieldSpec.from_json(obj["field"])
        gen = Matrix.from_json(spec, obj["G"])
        labeling = Labeling(gen.cols, int(obj["s"]), tuple(int(v) for v in obj["labels"]))
        return cls(gen, labeling)


def labelweight_vector(vec, labeling: Labeling) -> int:
    """Number of distinct labels among the nonzero coordinates of vec."""
    if len(vec) != labeling.n:
        raise LengthMismatch(f"vector length {len(vec)} != {labeling.n}")
    return len({labeling.labels[i] for i, v in enumerate(vec) if v})


def labelweight_code(code: LabeledCode, budget: int = LABELWEIGHT_BUDGET) -> int:
    """Minimum labelweight over all nonzero codewords, by enumeration."""
    spec = code.spec
    q = spec.order
    ell = code.dimension
    total = q**ell
    if total > budget:
        raise EnumerationTooLarge(f"{total} codewords exceed the budget of {budget}")
    labels0 = [lam - 1 for lam in code.labeling.labels]
    tables = spec.tables()
    if tables is not None:
        step_diff = [spec.sub_int((v + 1) % q, v) for v in range(q)]
        return _kernels.min_labelweight(
            code.generator.data, ell, code.length, labels0, code.servers, tables, step_diff, total
        )
    # large-field path: q > 512 forces ell <= 2 under the budget
    best = code.servers + 1
    gen = code.generator
    from itertools import product

    for msg in product(range(q), repeat=ell):
        if not any(msg):
            continue
        cw = gen.transpose().mul_vec(list(msg))
        w = len({labels0[i] for i, v in enumerate(cw) if v})
        if w < best:
            best = w
    return best


def column_block(code: LabeledCode, labels: set[int] | frozenset[int] | list[int]) -> Matrix:
    """Columns of the generator whose coordinate label lies in `labels`."""
    wanted = set(labels)
    idxs = [i for i, lam in enumerate(code.labeling.labels) if lam in wanted]
    return code.generator.take_columns(idxs)


# ---------------------------------------------------------------------------
# MDS generators and totally nonsingular matrices
# ---------------------------------------------------------------------------


def build_mds(spec: FieldSpec, r: int, u: int) -> Matrix:
    """An r x u generator all of whose r x r column minors are nonsingular.

    Columns are powers 0..r-1 of the field elements in canonical order;
    length q+1 appends the last unit column, and length q+2 (even field
    order, r = 3 only) appends (0,1,0) and (0,0,1) instead.
    """
    q = spec.order
    if r < 1:
        raise ParamsExceedMdsBound(f"need r >= 1, got {r}")
    if u < r:
        raise ParamsExceedMdsBound(f"need u >= r, got r={r}, u={u}")
    if r > q:
        raise ParamsExceedMdsBound(f"r={r} exceeds the field order {q}")
    cols: list[list[int]] = []
    if u <= q + 1:
        for v in range(min(u, q)):
            cols.append([spec.pow_int(v, k) for k in range(r)])
        if u == q + 1:
            cols.append([0] * (r - 1) + [1])
    elif u == q + 2:
        if q % 2:
            raise ParamsExceedMdsBound(f"length q+2 requires even field order, got q={q}")
        if r not in (3, q - 1):
            raise ParamsExceedMdsBound(f"length q+2 requires r in {{3, q-1}}, got r={r}")
        if r != 3:
            raise ParamsExceedMdsBound(
                f"length q+2 with r=q-1={r} is not implemented; use r=3 or length <= q+1"
            )
        for v in range(q):
            cols.append([1, v, spec.mul_int(v, v)])
        cols.append([0, 1, 0])
        cols.append([0, 0, 1])
    else:
        raise ParamsExceedMdsBound(f"u={u} exceeds q+2={q + 2}")
    data = [cols[c][k] for k in range(r) for c in range(u)]
    return Matrix(spec, r, u, data)


def is_mds(m: Matrix, budget: int = MINOR_BUDGET) -> bool:
    """Every r x r column submatrix nonsingular (r = rows <= cols)."""
    r, u = m.rows, m.cols
    if r > u:
        raise ValueError(f"MDS generator needs rows <= cols, got {r}x{u}")
    count = comb(u, r)
    if count > budget:
        raise EnumerationTooLarge(f"{count} minors exceed the budget of {budget}")
    all_rows = range(r)
    for col_set in combinations(range(u), r):
        if not linalg.is_nonsingular(m.submatrix(all_rows, col_set)):
            return False
    return True


def _square_subarray_count(r: int, u: int) -> int:
    return sum(comb(r, k) * comb(u, k) for k in range(1, min(r, u) + 1))


def is_totally_nonsingular(m: Matrix, budget: int = MINOR_BUDGET) -> bool:
    """Every square submatrix (all sizes, any rows x any cols) nonsingular."""
    r, u = m.rows, m.cols
    count = _square_subarray_count(r, u)
    if count > budget:
        raise EnumerationTooLarge(f"{count} submatrices exceed the budget of {budget}")
    if any(v == 0 for v in m.data):
        return False
    for k in range(2, min(r, u) + 1):
        for row_set in combinations(range(r), k):
            for col_set in combinations(range(u), k):
                if not linalg.is_nonsingular(m.submatrix(row_set, col_set)):
                    return False
    return True


def mds_to_tn(m: Matrix, check: bool = True, budget: int = MINOR_BUDGET) -> Matrix:
    """Row-reduce an MDS generator to [I | A] and return A (which is TN)."""
    r = m.rows
    if check and comb(m.cols, r) <= budget:
        if not is_mds(m, budget):
            raise NotMds(f"{m.rows}x{m.cols} matrix has a singular column minor")
    red = linalg.rref(m)
    if red.pivots != tuple(range(r)):
        raise NotMds("leading r columns are singular, so the matrix is not MDS")
    return red.matrix.take_columns(range(r, m.cols))


def tn_to_mds(a: Matrix, check: bool = True, budget: int = MINOR_BUDGET) -> Matrix:
    """Return [I | A], an MDS generator whenever A is totally nonsingular."""
    if check and _square_subarray_count(a.rows, a.cols) <= budget:
        if not is_totally_nonsingular(a, budget):
            raise NotTn(f"{a.rows}x{a.cols} matrix has a singular square submatrix")
    return Matrix.identity(a.spec, a.rows).augment(a)


# ---------------------------------------------------------------------------
# Block totally nonsingular arrays
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockMatrix:
    """An r x u array of invertible j x j blocks over a common field."""

    spec: FieldSpec
    j: int
    blocks: tuple[tuple[Matrix, ...], ...]

    def __post_init__(self):
        for brow in self.blocks:
            for blk in brow:
                if blk.spec != self.spec or blk.rows != self.j or blk.cols != self.j:
                    raise LengthMismatch(f"blocks must be {self.j}x{self.j} over {self.spec!r}")
                if not linalg.is_nonsingular(blk):
                    raise NotBlockTn("every block must be invertible")

    @property
    def block_rows(self) -> int:
        return len(self.blocks)

    @property
    def block_cols(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    def flatten(self) -> Matrix:
        j = self.j
        rows = self.block_rows * j
        cols = self.block_cols * j
        data = [0] * (rows * cols)
        for bi, brow in enumerate(self.blocks):
            for bk, blk in enumerate(brow):
                for i in range(j):
                    base = (bi * j + i) * cols + bk * j
                    data[base : base + j] = blk.row_ints(i)
        return Matrix(self.spec, rows, cols, data)

    def subarray(self, row_set, col_set) -> Matrix:
        picked = BlockMatrix.__new__(BlockMatrix)
        object.__setattr__(picked, "spec", self.spec)
        object.__setattr__(picked, "j", self.j)
        object.__setattr__(
            picked, "blocks", tuple(tuple(self.blocks[i][k] for k in col_set) for i in row_set)
        )
        return picked.flatten()

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "j": self.j,
            "r": self.block_rows,
            "u": self.block_cols,
            "blocks": [[blk.to_json() for blk in brow] for brow in self.blocks],
        }

    @classmethod
    def from_json(cls, obj: dict) -> BlockMatrix:
        spec = FieldSpec.from_json(obj["field"])
        blocks = tuple(
            tuple(Matrix.from_json(spec, b) for b in brow) for brow in obj["blocks"]
        )
        return cls(spec, int(obj["j"]), blocks)


def is_block_tn(bm: BlockMatrix, budget: int = MINOR_BUDGET) -> bool:
    """Every square block sub-array assembles to a nonsingular matrix."""
    r, u = bm.block_rows, bm.block_cols
    count = _square_subarray_count(r, u)
    if count > budget:
        raise EnumerationTooLarge(f"{count} sub-arrays exceed the budget of {budget}")
    for k in range(1, min(r, u) + 1):
        for row_set in combinations(range(r), k):
            for col_set in combinations(range(u), k):
                if not linalg.is_nonsingular(bm.subarray(row_set, col_set)):
                    return False
    return True


def tn_to_block_tn(a: Matrix, base: FieldSpec, check: bool = True) -> BlockMatrix:
    """Embed a TN matrix over an extension field into blocks over `base`.

    Each entry becomes its multiplication matrix; differences of distinct
    entries stay invertible, which is what makes the result block TN.
    """
    if check and _square_subarray_count(a.rows, a.cols) <= MINOR_BUDGET:
        if not is_totally_nonsingular(a):
            raise NotTn(f"{a.rows}x{a.cols} matrix has a singular square submatrix")
    j = a.spec.e // base.e
    blocks = tuple(
        tuple(embed_matrix(a.at(i, k), base) for k in range(a.cols)) for i in range(a.rows)
    )
    return BlockMatrix(base, j, blocks)


def block_tn_to_code(bm: BlockMatrix, check: bool = True) -> LabeledCode:
    """[I | flattened blocks] with the canonical balanced labeling.

    For an (s-dt) x dt block-TN array this yields a rate-(s-dt)/s code
    with labelweight >= dt + 1 on s = r + u servers.
    """
    if check and _square_subarray_count(bm.block_rows, bm.block_cols) <= MINOR_BUDGET:
        if not is_block_tn(bm):
            raise NotBlockTn("array has a singular square block sub-array")
    flat = bm.flatten()
    gen = Matrix.identity(bm.spec, flat.rows).augment(flat)
    s = bm.block_rows + bm.block_cols
    return LabeledCode(gen, canonical_labeling(bm.j, s))


def code_to_block_tn(code: LabeledCode, dt: int, check: bool = True) -> BlockMatrix:
    """Recover the block-TN array behind an optimal-rate labelweight code.

    Columns are stably sorted by label, the generator is reduced to
    [I | A], and A is cut into j x j blocks.  Requires a balanced
    labeling, rate exactly (s-dt)/s, and labelweight >= dt+1.
    """
    s = code.servers
    balanced, j = is_balanced(code.labeling)
    if not balanced:
        raise LabelweightTooSmall("labeling is not balanced, so the code cannot be optimal")
    if code.rate() != Fraction(s - dt, s):
        raise InfeasibleParams(
            f"rate {code.rate()} differs from the optimal (s-dt)/s = {Fraction(s - dt, s)}"
        )
    if check:
        lw = labelweight_code(code)
        if lw < dt + 1:
            raise LabelweightTooSmall(f"labelweight {lw} < dt+1 = {dt + 1}")
    order = sorted(range(code.length), key=lambda i: code.labeling.labels[i])
    gen = code.generator.take_columns(order)
    red = linalg.rref(gen)
    ell = code.dimension
    if red.pivots != tuple(range(ell)):
        raise LabelweightTooSmall("leading column block is singular; labelweight too small")
    a = red.matrix.take_columns(range(ell, code.length))
    blocks = tuple(
        tuple(a.submatrix(range(bi * j, bi * j + j), range(bk * j, bk * j + j)) for bk in range(dt))
        for bi in range(ell // j)
    )
    return BlockMatrix(code.spec, j, blocks)


# ---------------------------------------------------------------------------
# Parameter selection and the end-to-end pipeline
# ---------------------------------------------------------------------------


def _validate_params(q: int, s: int, d: int, t: int) -> int:
    factor_prime_power(q)
    if d < 1 or t < 1:
        raise InfeasibleParams(f"need d >= 1 and t >= 1, got d={d}, t={t}")
    if s < 2:
        raise InfeasibleParams(f"need at least 2 servers, got s={s}")
    dt = d * t
    if s - dt <= 0:
        raise InfeasibleParams(f"need s - d*t > 0, got s={s}, d*t={dt}")
    return dt


def theorem_permits_j(q: int, s: int, d: int, t: int, j: int) -> bool:
    """Existence guarantee for amortization level j, as a case split.

    j is permitted when q^j >= s-1, relaxed to q^j >= s-2 when q^j is
    even and s - dt is 3 or q^j - 1.  This is the pure existence
    statement; `optimal_code` additionally needs s - dt <= q^j and only
    implements the relaxed case for s - dt = 3 (see _pipeline_feasible).
    """
    dt = _validate_params(q, s, d, t)
    big = q**j
    if big % 2 == 0 and (s - dt) in (3, big - 1):
        return s <= big + 2
    return s <= big + 1


def _pipeline_feasible(q: int, s: int, dt: int, j: int) -> bool:
    big = q**j
    r = s - dt
    if r > big:
        return False
    if s <= big + 1:
        return True
    return s == big + 2 and big % 2 == 0 and r == 3


def smallest_construction_j(q: int, s: int, d: int, t: int) -> int:
    """Smallest block size j the MDS pipeline can actually realize."""
    dt = _validate_params(q, s, d, t)
    j = 1
    while not _pipeline_feasible(q, s, dt, j):
        j += 1
    return j


def j_lower_bound(q: int, s: int, d: int, t: int) -> int:
    """Counting lower bound on the block size of any optimal-rate code.

    Equals ceil(max(log_q(s-dt+1), log_q(dt+1))) when both block
    dimensions exceed one, and 1 in the degenerate regimes s-dt = 1 or
    dt = 1 where the bound does not apply.
    """
    dt = _validate_params(q, s, d, t)
    if s - dt <= 1 or dt <= 1:
        return 1
    target = max(s - dt + 1, dt + 1)
    j = 1
    while q**j < target:
        j += 1
    return j


def optimal_code(q: int, s: int, d: int, t: int, j: int | None = None) -> tuple[LabeledCode, int]:
    """Rate-(s-dt)/s code with labelweight >= dt+1 at the smallest j.

    Built by reducing an MDS generator over GF(q^j) to [I | A], embedding
    A blockwise over GF(q), and appending an identity.  A caller-supplied
    j overrides upward; it must still be realizable.
    """
    dt = _validate_params(q, s, d, t)
    auto = smallest_construction_j(q, s, d, t)
    if j is None:
        j = auto
    elif not _pipeline_feasible(q, s, dt, j):
        raise InfeasibleParams(
            f"j={j} cannot realize s={s}, d*t={dt} over GF({q}) (smallest workable j is {auto})"
        )
    p, a = factor_prime_power(q)
    base = GF(q)
    ext = GF(q) if j == 1 else FieldSpec(p, a * j)
    mds = build_mds(ext, s - dt, s)
    tn = mds_to_tn(mds, check=False)
    bm = tn_to_block_tn(tn, base, check=False)
    code = block_tn_to_code(bm, check=False)
    return code, j
