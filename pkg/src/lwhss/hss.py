"""Linear homomorphic secret sharing with optimal download rate.

The pipeline is Share -> Eval -> Rec.  Share splits every secret with
replicated (CNF) additive sharing: x = sum of y_T over all size-t
subsets T of the s servers, with server j holding every y_T such that
j is not in T.  Eval is synthesized from a labelweight code: server
lambda outputs, for each of its code coordinates r, a linear
combination of degree-d products of its own share values.  Rec is the
linear map given by the code's generator matrix, so reconstruction
downloads n = js field elements to recover ell = j(s - dt) outputs —
rate (s - dt)/s, which is optimal for degree-d, t-private linear
schemes.

Monomials are tracked as ordered d-tuples of subsets, one per factor
slot, so an instance contributes exactly C(s,t)^d of them; the factor
slot k is part of each variable's identity.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product

from . import linalg
from .codes import LabeledCode, labelweight_code
from .errors import (
    DegreeTooHigh,
    EnumerationTooLarge,
    InfeasibleParams,
    LabelweightTooSmall,
    LengthMismatch,
    MissingShares,
    SchemeHashMismatch,
    SystemInfeasible,
    ThresholdOutOfRange,
    WrongServer,
)
from .field import FieldElem, FieldSpec
from .linalg import Matrix
from .rng import CounterRng

SUBSET_BUDGET = 10**4
MONOMIAL_BUDGET = 10**6


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Replicated (CNF) sharing
# ---------------------------------------------------------------------------


def cnf_subsets(s: int, t: int) -> list[tuple[int, ...]]:
    """All size-t subsets of servers 1..s in lexicographic order."""
    if not 1 <= t < s:
        raise ThresholdOutOfRange(f"need 1 <= t < s, got t={t}, s={s}")
    subsets = list(combinations(range(1, s + 1), t))
    if len(subsets) > SUBSET_BUDGET:
        raise EnumerationTooLarge(f"C({s},{t}) = {len(subsets)} exceeds {SUBSET_BUDGET}")
    return subsets


def cnf_table_from_rand(spec: FieldSpec, x: int, subsets, rand) -> dict[tuple[int, ...], int]:
    """Additive table summing to x: all subsets but the last take the
    given random values, the last absorbs the difference."""
    if len(rand) != len(subsets) - 1:
        raise LengthMismatch(f"need {len(subsets) - 1} random values, got {len(rand)}")
    table = {}
    acc = 0
    for T, value in zip(subsets, rand):
        table[T] = value
        acc = spec.add_int(acc, value)
    table[subsets[-1]] = spec.sub_int(x, acc)
    return table


def cnf_share(x: FieldElem, t: int, s: int, rng: CounterRng) -> list[dict[tuple[int, ...], FieldElem]]:
    """CNF-share one secret; entry j-1 of the result is server j's table.

    Server j receives exactly the y_T with j not in T, each tagged with
    its subset.  Uniform over all tables summing to x, given the rng.
    """
    spec = x.spec
    subsets = cnf_subsets(s, t)
    rand = [rng.next_below(spec.order) for _ in range(len(subsets) - 1)]
    table = cnf_table_from_rand(spec, x.value, subsets, rand)
    views = []
    for server in range(1, s + 1):
        views.append({T: spec.element(v) for T, v in table.items() if server not in T})
    return views


# ---------------------------------------------------------------------------
# Parameters, monomials, and the synthesized evaluation tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchemeParams:
    """Field plus (s, t, d, m, ell, j) with ell = j * (s - d*t)."""

    field: FieldSpec
    s: int
    t: int
    d: int
    m: int
    ell: int
    j: int

    def __post_init__(self):
        if not 1 <= self.t < self.s:
            raise ThresholdOutOfRange(f"need 1 <= t < s, got t={self.t}, s={self.s}")
        if self.d < 1:
            raise InfeasibleParams(f"need d >= 1, got {self.d}")
        if self.m < self.d:
            raise InfeasibleParams(f"need m >= d so the target monomial exists, got m={self.m}, d={self.d}")
        if self.s - self.d * self.t <= 0:
            raise InfeasibleParams(f"need s - d*t > 0, got s={self.s}, d*t={self.d * self.t}")
        if self.ell != self.j * (self.s - self.d * self.t):
            raise InfeasibleParams(
                f"ell must equal j*(s-d*t) = {self.j * (self.s - self.d * self.t)}, got {self.ell}"
            )

    @property
    def dt(self) -> int:
        return self.d * self.t

    @property
    def dummy_index(self) -> int:
        """Secret slot holding the constant 1 used for degree padding."""
        return self.m + 1

    def subsets(self) -> list[tuple[int, ...]]:
        return cnf_subsets(self.s, self.t)

    def optimal_rate(self) -> Fraction:
        return Fraction(self.s - self.dt, self.s)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "s": self.s,
            "t": self.t,
            "d": self.d,
            "m": self.m,
            "ell": self.ell,
            "j": self.j,
        }

    @classmethod
    def from_json(cls, obj: dict) -> SchemeParams:
        return cls(
            FieldSpec.from_json(obj["field"]),
            int(obj["s"]),
            int(obj["t"]),
            int(obj["d"]),
            int(obj["m"]),
            int(obj["ell"]),
            int(obj["j"]),
        )


@dataclass(frozen=True, order=True)
class Monomial:
    """A degree-d product of share variables for one instance.

    subsets[k] is the subset tag of the factor in slot k+1; the slot
    index is part of the variable's identity, so two monomials are equal
    exactly when their ordered subset tuples (and instance) coincide.
    """

    instance: int
    subsets: tuple[tuple[int, ...], ...]

    def servers_excluded(self) -> set[int]:
        out = set()
        for T in self.subsets:
            out.update(T)
        return out

    def to_json(self) -> dict:
        return {"instance": self.instance, "subsets": [list(T) for T in self.subsets]}

    @classmethod
    def from_json(cls, obj: dict) -> Monomial:
        return cls(int(obj["instance"]), tuple(tuple(int(v) for v in T) for T in obj["subsets"]))


@dataclass(frozen=True)
class MonomialSet:
    """Canonically ordered monomials plus, per server, the visible ones."""

    all: tuple[Monomial, ...]
    by_server: tuple[tuple[int, ...], ...]  # indices into `all`, servers 1..s
    index: dict[Monomial, int] = dc_field(compare=False, repr=False, default_factory=dict)

    def visible_to(self, server: int) -> tuple[int, ...]:
        return self.by_server[server - 1]


def enumerate_monomials(params: SchemeParams) -> MonomialSet:
    """All ell * C(s,t)^d monomials, instance-major then lex on subsets.

    A monomial is visible to server j when j avoids every factor's
    subset (so the server holds all d share values it multiplies).
    """
    subsets = params.subsets()
    total = params.ell * len(subsets) ** params.d
    if total > MONOMIAL_BUDGET:
        raise EnumerationTooLarge(f"{total} monomials exceed the budget of {MONOMIAL_BUDGET}")
    mons = []
    for instance in range(1, params.ell + 1):
        for combo in product(subsets, repeat=params.d):
            mons.append(Monomial(instance, combo))
    by_server = []
    for server in range(1, params.s + 1):
        by_server.append(
            tuple(i for i, mon in enumerate(mons) if server not in mon.servers_excluded())
        )
    index = {mon: i for i, mon in enumerate(mons)}
    return MonomialSet(tuple(mons), tuple(by_server), index)


@dataclass(frozen=True)
class EvalSystem:
    """The linear system whose solutions are correct evaluation tables.

    Rows are (instance, monomial) pairs; columns are (coordinate r,
    monomial visible to the server labeled with r).  The entry at
    ((i, m), (r, chi)) is G[i, r] when m == chi and 0 otherwise, and the
    right-hand side marks rows whose monomial belongs to instance i.
    """

    matrix: Matrix
    rhs: tuple[int, ...]
    row_index: tuple[tuple[int, int], ...]  # (instance, monomial idx)
    col_index: tuple[tuple[int, int], ...]  # (coordinate r, monomial idx)
    monomials: MonomialSet


def build_eval_system(code: LabeledCode, params: SchemeParams, monomials: MonomialSet | None = None) -> EvalSystem:
    if code.dimension != params.ell:
        raise LengthMismatch(f"code dimension {code.dimension} != ell = {params.ell}")
    mons = monomials if monomials is not None else enumerate_monomials(params)
    num_mons = len(mons.all)
    gen = code.generator
    labels = code.labeling.labels
    cols = []
    for r in range(1, code.length + 1):
        for mi in mons.visible_to(labels[r - 1]):
            cols.append((r, mi))
    num_rows = params.ell * num_mons
    num_cols = len(cols)
    data = [0] * (num_rows * num_cols)
    for ci, (r, mi) in enumerate(cols):
        for i in range(1, params.ell + 1):
            gv = gen.entry(i - 1, r - 1)
            if gv:
                data[((i - 1) * num_mons + mi) * num_cols + ci] = gv
    rhs = []
    rows = []
    for i in range(1, params.ell + 1):
        for mi, mon in enumerate(mons.all):
            rows.append((i, mi))
            rhs.append(1 if mon.instance == i else 0)
    return EvalSystem(
        Matrix(code.spec, num_rows, num_cols, data),
        tuple(rhs),
        tuple(rows),
        tuple(cols),
        mons,
    )


@dataclass(frozen=True)
class EvalTable:
    """Per code coordinate, the polynomial a server evaluates.

    entries[r] lists (monomial, coefficient) pairs with nonzero
    coefficients; coordinate r's output is the sum of coeff * monomial
    over its list, evaluated on the server's own share values.
    """

    entries: dict[int, tuple[tuple[Monomial, int], ...]]

    def coefficient(self, r: int, mon: Monomial) -> int:
        for m, c in self.entries.get(r, ()):
            if m == mon:
                return c
        return 0

    def to_json(self) -> list[dict]:
        out = []
        for r in sorted(self.entries):
            for mon, coeff in self.entries[r]:
                out.append({"r": r, "monomial": mon.to_json(), "coeff": coeff})
        return out

    @classmethod
    def from_json(cls, rows: list[dict]) -> EvalTable:
        entries: dict[int, list[tuple[Monomial, int]]] = {}
        for row in rows:
            entries.setdefault(int(row["r"]), []).append(
                (Monomial.from_json(row["monomial"]), int(row["coeff"]))
            )
        return cls({r: tuple(v) for r, v in entries.items()})


def synthesize_eval(code: LabeledCode, params: SchemeParams) -> EvalTable:
    """Solve the evaluation system for a correct linear Eval.

    The system always has a solution when the code is balanced with
    labelweight >= dt+1 at rate (s-dt)/s: grouping rows and columns by
    monomial makes it block-diagonal with an invertible-column block per
    monomial, so it has full row rank.
    """
    system = build_eval_system(code, params)
    solution = linalg.solve(system.matrix, list(system.rhs))
    if solution is None:
        raise SystemInfeasible(
            "no evaluation table exists; the code does not support this degree/threshold"
        )
    entries: dict[int, list[tuple[Monomial, int]]] = {}
    for ci, (r, mi) in enumerate(system.col_index):
        v = solution[ci]
        if v:
            entries.setdefault(r, []).append((system.monomials.all[mi], v))
    return EvalTable({r: tuple(v) for r, v in entries.items()})


def permuted_block_view(system: EvalSystem, code: LabeledCode):
    """Rows and columns regrouped by monomial, exposing the block diagonal.

    Returns (permuted matrix, blocks) where blocks[k] is (monomial,
    sorted server labels it is visible to, expected block); the expected
    block gathers the generator columns carrying those labels, which is
    exactly the diagonal block the permuted system shows for monomial k.
    """
    mons = system.monomials
    row_order = sorted(
        range(len(system.row_index)),
        key=lambda idx: (system.row_index[idx][1], system.row_index[idx][0]),
    )
    col_order = sorted(
        range(len(system.col_index)),
        key=lambda idx: (system.col_index[idx][1], system.col_index[idx][0]),
    )
    permuted = system.matrix.submatrix(row_order, col_order)
    labels = code.labeling.labels
    blocks = []
    for mi, mon in enumerate(mons.all):
        servers = sorted(
            lam for lam in range(1, len(mons.by_server) + 1) if mi in set(mons.by_server[lam - 1])
        )
        coords = [r0 for r0 in range(code.length) if labels[r0] in servers]
        blocks.append((mon, tuple(servers), code.generator.take_columns(coords)))
    return permuted, blocks


# ---------------------------------------------------------------------------
# Share bundles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShareBundle:
    """Dealer-side CNF tables for every (instance, secret) pair.

    tables[(i, k)][T] is the additive part y_T of secret k in instance
    i; k ranges over 1..m for the real secrets plus the dummy index
    m+1, which always shares the constant 1 so degree padding needs no
    special cases downstream.
    """

    params: SchemeParams
    tables: dict[tuple[int, int], dict[tuple[int, ...], int]]
    seed: int | None = None

    @classmethod
    def deal(cls, params: SchemeParams, secrets: list[list[int]], seed: int) -> ShareBundle:
        """CNF-share an ell x m secret array (plus the dummy constant)."""
        spec = params.field
        if len(secrets) != params.ell:
            raise LengthMismatch(f"need {params.ell} instances of secrets, got {len(secrets)}")
        for row in secrets:
            if len(row) != params.m:
                raise LengthMismatch(f"each instance needs {params.m} secrets, got {len(row)}")
            for v in row:
                if not 0 <= int(v) < spec.order:
                    raise ValueError(f"secret {v} is not an element encoding of {spec!r}")
        subsets = params.subsets()
        rng = CounterRng(seed)
        tables = {}
        for i in range(1, params.ell + 1):
            for k in range(1, params.m + 2):
                x = 1 if k == params.dummy_index else int(secrets[i - 1][k - 1])
                rand = [rng.next_below(spec.order) for _ in range(len(subsets) - 1)]
                tables[(i, k)] = cnf_table_from_rand(spec, x, subsets, rand)
        return cls(params, tables, seed)

    def secret(self, instance: int, k: int) -> int:
        """Reassemble one shared value (sum of its table)."""
        spec = self.params.field
        acc = 0
        for v in self.tables[(instance, k)].values():
            acc = spec.add_int(acc, v)
        return acc

    def server_view(self, server: int) -> dict[tuple[int, int, tuple[int, ...]], int]:
        if not 1 <= server <= self.params.s:
            raise WrongServer(f"server {server} out of range 1..{self.params.s}")
        out = {}
        for (i, k), table in self.tables.items():
            for T, v in table.items():
                if server not in T:
                    out[(i, k, T)] = v
        return out


@dataclass(frozen=True)
class ServerShares:
    """One server's share file: its visible y_T values plus provenance."""

    server: int
    values: dict[tuple[int, int, tuple[int, ...]], int]
    scheme_hash: str | None = None
    seed: int | None = None

    def to_json(self) -> dict:
        shares = [
            {"instance": i, "secret": k, "T": list(T), "value": v}
            for (i, k, T), v in sorted(self.values.items())
        ]
        obj = {"server": self.server, "scheme_hash": self.scheme_hash, "shares": shares}
        if self.seed is not None:
            obj["seed"] = self.seed
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> ServerShares:
        values = {}
        for row in obj["shares"]:
            key = (int(row["instance"]), int(row["secret"]), tuple(int(v) for v in row["T"]))
            values[key] = int(row["value"])
        return cls(
            int(obj["server"]),
            values,
            obj.get("scheme_hash"),
            int(obj["seed"]) if obj.get("seed") is not None else None,
        )


# ---------------------------------------------------------------------------
# Schemes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyTerm:
    """One monomial of an input polynomial: coeff * prod of x_variables.

    `variables` are 1-based secret indices, repeats allowed; the empty
    tuple is a constant term.
    """

    coeff: int
    variables: tuple[int, ...]


def parse_poly(terms, m: int, d: int, spec: FieldSpec) -> list[PolyTerm]:
    out = []
    for term in terms:
        coeff = int(term["coeff"]) if isinstance(term, dict) else int(term.coeff)
        variables = term["vars"] if isinstance(term, dict) else term.variables
        variables = tuple(int(v) for v in variables)
        if len(variables) > d:
            raise DegreeTooHigh(f"term degree {len(variables)} exceeds d = {d}")
        for v in variables:
            if not 1 <= v <= m:
                raise ValueError(f"variable index {v} out of range 1..{m}")
        if not 0 <= coeff < spec.order:
            raise ValueError(f"coefficient {coeff} is not an element encoding of {spec!r}")
        out.append(PolyTerm(coeff, variables))
    return out


@dataclass(frozen=True)
class HssScheme:
    """A constructed scheme: parameters, the code, and the Eval tables."""

    params: SchemeParams
    code: LabeledCode
    eval_table: EvalTable

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "code": self.code.to_json(),
            "eval": self.eval_table.to_json(),
            "seed_required": True,
        }

    def scheme_hash(self) -> str:
        return hashlib.sha256(canonical_json(self.to_json()).encode("ascii")).hexdigest()

    @classmethod
    def from_json(cls, obj: dict, verify: bool = True) -> HssScheme:
        params = SchemeParams.from_json(obj["params"])
        code = LabeledCode.from_json(obj["code"])
        table = EvalTable.from_json(obj["eval"])
        scheme = cls(params, code, table)
        if verify:
            check_eval_identity(scheme)
        return scheme

    def deal_shares(self, secrets: list[list[int]], seed: int) -> ShareBundle:
        return ShareBundle.deal(self.params, secrets, seed)

    def server_shares(self, bundle: ShareBundle, server: int) -> ServerShares:
        return ServerShares(server, bundle.server_view(server), self.scheme_hash(), bundle.seed)

    def canonical_targets(self) -> list[PolyTerm]:
        """The monomial Eval was synthesized for: x_1 * ... * x_d per instance."""
        return [PolyTerm(1, tuple(range(1, self.params.d + 1))) for _ in range(self.params.ell)]


def check_eval_identity(scheme: HssScheme) -> None:
    """Check the stored tables solve the evaluation system (S e = g)."""
    system = build_eval_system(scheme.code, scheme.params)
    labels = scheme.code.labeling.labels
    valid_cols = set(system.col_index)
    for r, rows in scheme.eval_table.entries.items():
        if not 1 <= r <= scheme.code.length:
            raise SystemInfeasible(f"stored table references coordinate {r} outside 1..{scheme.code.length}")
        for mon, coeff in rows:
            if not coeff:
                continue
            mi = system.monomials.index.get(mon)
            if mi is None:
                raise SystemInfeasible(f"stored table references unknown monomial {mon}")
            if (r, mi) not in valid_cols:
                raise SystemInfeasible(
                    f"coordinate {r} is held by server {labels[r - 1]}, which cannot see {mon}"
                )
    vec = [0] * len(system.col_index)
    for ci, (r, mi) in enumerate(system.col_index):
        vec[ci] = scheme.eval_table.coefficient(r, system.monomials.all[mi])
    got = system.matrix.mul_vec(vec)
    if got != list(system.rhs):
        raise SystemInfeasible("stored evaluation tables do not satisfy the correctness identity")


def construct_scheme(q: int, s: int, t: int, d: int, m: int, j: int | None = None) -> HssScheme:
    """Build the optimal-rate scheme for (q, s, t, d, m) at the smallest j."""
    from .codes import optimal_code  # local import to keep module layering flat

    code, j_used = optimal_code(q, s, d, t, j=j)
    params = SchemeParams(
        field=code.spec, s=s, t=t, d=d, m=m, ell=code.dimension, j=j_used
    )
    table = synthesize_eval(code, params)
    return HssScheme(params, code, table)


# ---------------------------------------------------------------------------
# Eval and Rec
# ---------------------------------------------------------------------------


def _slot_assignment(params: SchemeParams, targets: list[PolyTerm]):
    """Per instance: (scale, secret index per factor slot), dummies padded."""
    if len(targets) != params.ell:
        raise LengthMismatch(f"need {params.ell} targets, got {len(targets)}")
    assignment = []
    for term in targets:
        if len(term.variables) > params.d:
            raise DegreeTooHigh(f"term degree {len(term.variables)} exceeds d = {params.d}")
        slots = tuple(term.variables) + (params.dummy_index,) * (params.d - len(term.variables))
        assignment.append((int(term.coeff), slots))
    return assignment


def eval_shares(
    scheme: HssScheme,
    server: int,
    shares: ServerShares,
    targets: list[PolyTerm] | None = None,
) -> list[int]:
    """Server-side Eval: one output per code coordinate labeled `server`.

    With no explicit targets this evaluates the canonical product
    monomial the scheme was synthesized for.  A target list assigns each
    instance one monomial of degree <= d (secrets may repeat); lower
    degrees are padded with the dummy constant and the coefficient is
    folded into the first factor.
    """
    params = scheme.params
    spec = params.field
    if shares.server != server:
        raise WrongServer(f"shares are for server {shares.server}, not {server}")
    if shares.scheme_hash is not None and shares.scheme_hash != scheme.scheme_hash():
        raise SchemeHashMismatch("share file was produced for a different scheme")
    if targets is None:
        targets = scheme.canonical_targets()
    assignment = _slot_assignment(params, targets)
    mul = spec.mul_int
    add = spec.add_int
    values = shares.values
    out = []
    for r0 in scheme.code.labeling.preimage(server):
        acc = 0
        for mon, coeff in scheme.eval_table.entries.get(r0 + 1, ()):
            scale, slots = assignment[mon.instance - 1]
            prod = mul(coeff, scale)
            if not prod:
                continue
            for k, T in enumerate(mon.subsets):
                key = (mon.instance, slots[k], T)
                try:
                    y = values[key]
                except KeyError:
                    raise MissingShares(
                        f"server {server} lacks share (instance={key[0]}, secret={key[1]}, T={key[2]})"
                    ) from None
                prod = mul(prod, y)
                if not prod:
                    break
            acc = add(acc, prod)
        out.append(acc)
    return out


def eval_general(
    scheme: HssScheme,
    server: int,
    shares: ServerShares,
    polys: list[list[PolyTerm]] | list[list[dict]],
) -> list[int]:
    """Evaluate one polynomial of degree <= d per instance.

    Each polynomial is a term list; term slots are evaluated through the
    synthesized monomial Eval (instances with fewer terms contribute
    zero) and the per-slot output shares are summed, which is sound
    because Rec is linear.
    """
    params = scheme.params
    spec = params.field
    parsed = []
    for terms in polys:
        parsed.append(parse_poly(terms, params.m, params.d, spec))
    if len(parsed) != params.ell:
        raise LengthMismatch(f"need {params.ell} polynomials, got {len(parsed)}")
    width = max((len(p) for p in parsed), default=0)
    width = max(width, 1)
    add = spec.add_int
    out = None
    zero_term = PolyTerm(0, ())
    for slot in range(width):
        targets = [p[slot] if slot < len(p) else zero_term for p in parsed]
        z = eval_shares(scheme, server, shares, targets)
        out = z if out is None else [add(a, b) for a, b in zip(out, z)]
    return out


def assemble_output(scheme: HssScheme, by_server: dict[int, list[int]]) -> list[int]:
    """Concatenate per-server outputs into the full download vector z.

    Coordinates are placed back at their code positions, so the result
    is ordered r = 1..n regardless of labeling.
    """
    code = scheme.code
    missing = [lam for lam in range(1, code.servers + 1) if lam not in by_server]
    if missing:
        raise MissingShares(f"missing output shares from servers {missing}")
    z = [0] * code.length
    for lam in range(1, code.servers + 1):
        coords = code.labeling.preimage(lam)
        part = by_server[lam]
        if len(part) != len(coords):
            raise LengthMismatch(
                f"server {lam} sent {len(part)} values, expected {len(coords)}"
            )
        for r0, v in zip(coords, part):
            z[r0] = int(v)
    return z


def reconstruct(scheme: HssScheme, z: list[int]) -> list[int]:
    """Rec: multiply the download vector by the generator matrix."""
    if len(z) != scheme.code.length:
        raise LengthMismatch(f"z has length {len(z)}, expected {scheme.code.length}")
    return scheme.code.generator.mul_vec([int(v) for v in z])


def scheme_rate(scheme: HssScheme) -> Fraction:
    return Fraction(scheme.params.ell, scheme.code.length)


def scheme_labelweight(scheme: HssScheme) -> int:
    lw = labelweight_code(scheme.code)
    if scheme_rate(scheme) == scheme.params.optimal_rate() and lw < scheme.params.dt + 1:
        raise LabelweightTooSmall(
            f"labelweight {lw} < dt+1 = {scheme.params.dt + 1} at optimal rate"
        )
    return lw
