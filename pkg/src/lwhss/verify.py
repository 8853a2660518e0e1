"""Checks that a constructed scheme actually delivers what it claims.

Three kinds of verification live here:

* scheme checks — correctness (exhaustive over all share vectors when
  small enough, seeded random trials otherwise), privacy (exact view-
  distribution comparison per collusion set), download rate, minimum
  labelweight, and the linear-algebra identities behind Eval;
* parameter checks — for which amortization levels a rate-optimal
  scheme exists, is impossible, or is open;
* exhaustive searches — normalized enumeration of block matrices with
  all-invertible sub-arrays, and the largest set of invertible matrices
  with invertible pairwise differences, both small enough to certify
  their answers by exhaustion.

Every check is deterministic: random trials draw from a counter-mode
generator with an explicit seed.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from . import linalg
from .codes import (
    MINOR_BUDGET,
    BlockMatrix,
    column_block,
    is_block_tn,
    j_lower_bound,
    labelweight_code,
    theorem_permits_j,
)
from .errors import (
    EnumerationTooLarge,
    InfeasibleParams,
    SearchTooLarge,
    SystemInfeasible,
    TooLargeForExhaustive,
)
from .field import FieldSpec, factor_prime_power
from .hss import (
    EvalTable,
    HssScheme,
    PolyTerm,
    SchemeParams,
    ServerShares,
    ShareBundle,
    assemble_output,
    build_eval_system,
    check_eval_identity,
    cnf_table_from_rand,
    eval_general,
    eval_shares,
    reconstruct,
    scheme_rate,
)
from .linalg import Matrix
from .rng import CounterRng

EXHAUSTIVE_BUDGET = 2**20
AUTO_EXHAUSTIVE_BUDGET = 2**14
PRIVACY_BUDGET = 2**16
GL_BUDGET = 2**20
CLIQUE_BUDGET = 10**4
NODE_BUDGET = 5 * 10**6


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check: pass, fail, or skip (over budget)."""

    name: str
    status: str
    detail: str
    data: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def format_table(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = []
        for c in self.checks:
            lines.append(f"{c.status.upper():<4}  {c.name:<{width}}  {c.detail}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "status": c.status, "detail": c.detail, "data": c.data}
                for c in self.checks
            ],
        }


def _digits(idx: int, base: int, count: int) -> list[int]:
    out = []
    for _ in range(count):
        idx, d = divmod(idx, base)
        out.append(d)
    return out


# ---------------------------------------------------------------------------
# Correctness
# ---------------------------------------------------------------------------


def _run_pipeline(scheme: HssScheme, bundle: ShareBundle, targets=None, polys=None) -> list[int]:
    """Share tables -> per-server Eval -> assemble -> Rec."""
    outputs = {}
    for lam in range(1, scheme.params.s + 1):
        shares = ServerShares(lam, bundle.server_view(lam), None, None)
        if polys is not None:
            outputs[lam] = eval_general(scheme, lam, shares, polys)
        else:
            outputs[lam] = eval_shares(scheme, lam, shares, targets)
    return reconstruct(scheme, assemble_output(scheme, outputs))


def check_correctness(
    scheme: HssScheme,
    *,
    seed: int = 2024,
    trials: int = 24,
    budget: int = EXHAUSTIVE_BUDGET,
    mode: str = "auto",
) -> CheckResult:
    """Does Share -> Eval -> Rec return the target polynomial's value?

    In exhaustive mode every joint assignment of the share variables
    behind the canonical product monomial is tried (q^(ell*d*C(s,t))
    cases), so a pass is a proof for this scheme.  In sampled mode,
    seeded random secrets are pushed through the full pipeline against
    both the canonical products and random lower-degree polynomials.
    Auto mode goes exhaustive only below a tighter threshold so routine
    verification stays fast; pass mode="exhaustive" to use the full
    budget.
    """
    params = scheme.params
    spec = params.field
    subsets = params.subsets()
    nsub = len(subsets)
    nvars = params.ell * params.d * nsub
    total = spec.order**nvars
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exhaustive" and total > budget:
        raise TooLargeForExhaustive(
            f"q^(ell*d*C(s,t)) = {total} share assignments exceed the budget of {budget}"
        )
    exhaustive = mode == "exhaustive" or (
        mode == "auto" and total <= min(budget, AUTO_EXHAUSTIVE_BUDGET)
    )
    if exhaustive:
        return _correctness_exhaustive(scheme, total)
    return _correctness_sampled(scheme, seed, trials)


def _correctness_exhaustive(scheme: HssScheme, total: int) -> CheckResult:
    params = scheme.params
    spec = params.field
    subsets = params.subsets()
    nsub = len(subsets)
    zero_table = {T: 0 for T in subsets}
    dummy_table = dict(zero_table)
    dummy_table[subsets[-1]] = 1
    base: dict[tuple[int, int], dict] = {}
    for i in range(1, params.ell + 1):
        for k in range(params.d + 1, params.m + 1):
            base[(i, k)] = zero_table
        base[(i, params.dummy_index)] = dummy_table
    mul = spec.mul_int
    for idx in range(total):
        digits = _digits(idx, spec.order, params.ell * params.d * nsub)
        tables = dict(base)
        pos = 0
        for i in range(1, params.ell + 1):
            for k in range(1, params.d + 1):
                tables[(i, k)] = dict(zip(subsets, digits[pos : pos + nsub]))
                pos += nsub
        bundle = ShareBundle(params, tables)
        want = []
        for i in range(1, params.ell + 1):
            acc = 1
            for k in range(1, params.d + 1):
                acc = mul(acc, bundle.secret(i, k))
            want.append(acc)
        got = _run_pipeline(scheme, bundle)
        if got != want:
            return CheckResult(
                "correctness",
                "fail",
                f"share assignment {idx} of {total} reconstructs {got}, expected {want}",
                {"assignment": digits, "got": got, "want": want, "total": total},
            )
    return CheckResult(
        "correctness",
        "pass",
        f"all {total} share assignments reconstruct the degree-{params.d} products",
        {"total": total, "mode": "exhaustive"},
    )


def _random_polys(params: SchemeParams, rng: CounterRng) -> list[list[PolyTerm]]:
    spec = params.field
    polys = []
    for _ in range(params.ell):
        terms = []
        for _ in range(1 + rng.next_below(3)):
            degree = rng.next_below(params.d + 1)
            variables = tuple(1 + rng.next_below(params.m) for _ in range(degree))
            terms.append(PolyTerm(rng.next_below(spec.order), variables))
        polys.append(terms)
    return polys


def _poly_value(spec: FieldSpec, terms: list[PolyTerm], row: list[int]) -> int:
    acc = 0
    for term in terms:
        prod = term.coeff
        for v in term.variables:
            prod = spec.mul_int(prod, row[v - 1])
        acc = spec.add_int(acc, prod)
    return acc


def _correctness_sampled(scheme: HssScheme, seed: int, trials: int) -> CheckResult:
    params = scheme.params
    spec = params.field
    rng = CounterRng(seed, domain=b"lwhss.verify")
    mul = spec.mul_int
    for trial in range(trials):
        secrets = [
            [rng.next_below(spec.order) for _ in range(params.m)] for _ in range(params.ell)
        ]
        bundle = ShareBundle.deal(params, secrets, rng.next_u64())
        want = []
        for row in secrets:
            acc = 1
            for k in range(params.d):
                acc = mul(acc, row[k])
            want.append(acc)
        got = _run_pipeline(scheme, bundle)
        if got != want:
            return CheckResult(
                "correctness",
                "fail",
                f"trial {trial}: canonical products reconstruct {got}, expected {want}",
                {"secrets": secrets, "got": got, "want": want},
            )
        polys = _random_polys(params, rng)
        want_g = [_poly_value(spec, p, row) for p, row in zip(polys, secrets)]
        got_g = _run_pipeline(scheme, bundle, polys=polys)
        if got_g != want_g:
            return CheckResult(
                "correctness",
                "fail",
                f"trial {trial}: random polynomials reconstruct {got_g}, expected {want_g}",
                {"secrets": secrets, "got": got_g, "want": want_g},
            )
    return CheckResult(
        "correctness",
        "pass",
        f"{trials} seeded trials: canonical products and random degree<={params.d} polynomials",
        {"trials": trials, "mode": "sampled"},
    )


# ---------------------------------------------------------------------------
# Privacy
# ---------------------------------------------------------------------------


def check_privacy(
    params: SchemeParams,
    *,
    budget: int = PRIVACY_BUDGET,
    share_table_fn=None,
) -> CheckResult:
    """Is every size-t collusion's view distribution independent of x?

    For each collusion set the multiset of joint views over all
    q^(C(s,t)-1) randomness vectors is compared across all secret
    values; collusions smaller than t see a subset of some size-t view,
    so checking the size-t sets is enough.  Exact but exhaustive, hence
    skipped above the budget.
    """
    spec = params.field
    q = spec.order
    subsets = params.subsets()
    nsub = len(subsets)
    total = q ** (nsub - 1)
    if total > budget:
        return CheckResult(
            "privacy",
            "skip",
            f"q^(C(s,t)-1) = {total} randomness vectors exceed the budget of {budget}",
        )
    fn = share_table_fn or cnf_table_from_rand
    for collusion in subsets:
        visible = [T for T in subsets if T != collusion]
        baseline: Counter | None = None
        for x in range(q):
            views: Counter = Counter()
            for idx in range(total):
                rand = _digits(idx, q, nsub - 1)
                table = fn(spec, x, subsets, rand)
                views[tuple(table[T] for T in visible)] += 1
            if baseline is None:
                baseline = views
            elif views != baseline:
                example = next(iter(views.keys() - baseline.keys()), None)
                return CheckResult(
                    "privacy",
                    "fail",
                    f"collusion {collusion} distinguishes x={x} from x=0",
                    {"collusion": list(collusion), "x": x, "witness_view": example},
                )
    return CheckResult(
        "privacy",
        "pass",
        f"all {nsub} size-{params.t} collusions: view distributions identical "
        f"across all {q} secret values ({total} randomness vectors each)",
        {"randomness_vectors": total},
    )


# ---------------------------------------------------------------------------
# Amortization admissibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmortizationVerdict:
    """Whether ell instances can be packed at optimal rate: admissible
    (a construction exists), inadmissible (provably impossible), or
    unknown (between the impossibility bound and the known construction)."""

    verdict: str
    reason: str
    j: int | None
    j_floor: int


def check_amortization(q: int, s: int, d: int, t: int, ell: int) -> AmortizationVerdict:
    factor_prime_power(q)
    dt = d * t
    r = s - dt
    if not 1 <= t < s or d < 1 or r <= 0:
        raise InfeasibleParams(f"need 1 <= t < s and d >= 1 and s > d*t, got {(q, s, d, t)}")
    floor = j_lower_bound(q, s, d, t)
    if ell <= 0:
        return AmortizationVerdict("inadmissible", "ell must be positive", None, floor)
    if ell % r:
        return AmortizationVerdict(
            "inadmissible",
            f"rate (s-dt)/s needs n = ell*s/(s-dt) integral, so ell must be a multiple of s-dt = {r}",
            None,
            floor,
        )
    j = ell // r
    if j < floor:
        return AmortizationVerdict(
            "inadmissible",
            f"amortization j = {j} is below the floor {floor}: codes this short cannot "
            f"have labelweight {dt + 1} at rate {r}/{s}",
            j,
            floor,
        )
    if theorem_permits_j(q, s, d, t, j):
        return AmortizationVerdict(
            "admissible", f"an optimal-rate scheme exists at amortization j = {j}", j, floor
        )
    return AmortizationVerdict(
        "unknown",
        f"j = {j} is at or above the floor {floor} but below the smallest known construction",
        j,
        floor,
    )


# ---------------------------------------------------------------------------
# Exhaustive searches with certificates
# ---------------------------------------------------------------------------


def general_linear_group(spec: FieldSpec, j: int, budget: int = GL_BUDGET) -> list[Matrix]:
    """All invertible j x j matrices over the field, in encoding order."""
    total = spec.order ** (j * j)
    if total > budget:
        raise SearchTooLarge(f"q^(j^2) = {total} matrices exceed the budget of {budget}")
    out = []
    for idx in range(total):
        m = Matrix(spec, j, j, _digits(idx, spec.order, j * j))
        if linalg.is_nonsingular(m):
            out.append(m)
    return out


def search_block_tn(
    base: FieldSpec, j: int, block_rows: int, block_cols: int, budget: int = 10**6
) -> tuple[BlockMatrix | None, int]:
    """Find a block matrix whose square block sub-arrays are all invertible.

    Any such matrix can be normalized (row operations inside block rows,
    invertible right factors on block columns) so its first block row
    and first block column are identities, so only the remaining
    (block_rows-1)*(block_cols-1) cells are enumerated, over the general
    linear group.  Returns (first hit, candidates checked); a (None,
    count) return certifies that no such matrix of this shape exists.
    """
    if block_rows < 1 or block_cols < 1:
        raise ValueError("need at least one block row and column")
    gl = general_linear_group(base, j)
    free = (block_rows - 1) * (block_cols - 1)
    total = len(gl) ** free
    if total > budget:
        raise SearchTooLarge(f"|GL|^free = {total} candidates exceed the budget of {budget}")
    ident = Matrix.identity(base, j)
    checked = 0
    for combo in product(range(len(gl)), repeat=free):
        it = iter(combo)
        blocks = tuple(
            tuple(
                ident if i == 0 or k == 0 else gl[next(it)] for k in range(block_cols)
            )
            for i in range(block_rows)
        )
        checked += 1
        bm = BlockMatrix(base, j, blocks)
        if is_block_tn(bm):
            return bm, checked
    return None, checked


def is_difference_invertible_set(mats: list[Matrix]) -> bool:
    """Are all matrices invertible with pairwise-invertible differences?"""
    for m in mats:
        if not linalg.is_nonsingular(m):
            return False
    for a, b in combinations(mats, 2):
        if not linalg.is_nonsingular(a - b):
            return False
    return True


def max_difference_invertible_set(
    spec: FieldSpec,
    j: int,
    *,
    budget: int = CLIQUE_BUDGET,
    node_budget: int = NODE_BUDGET,
) -> tuple[int, list[Matrix]]:
    """Largest difference-invertible subset of the general linear group.

    Exact branch-and-bound over the compatibility graph, deterministic
    (vertices in encoding order, first witness of maximum size kept).
    The size is capped by q^j - 1, met by embedding the multiplicative
    group of the degree-j extension field as j x j matrices.
    """
    gl = general_linear_group(spec, j)
    n = len(gl)
    if n > budget:
        raise SearchTooLarge(f"|GL({j}, q={spec.order})| = {n} exceeds the budget of {budget}")
    masks = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if linalg.is_nonsingular(gl[a] - gl[b]):
                masks[a] |= 1 << b
                masks[b] |= 1 << a
    best: list[int] = []
    nodes = 0

    def expand(current: list[int], cand: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise SearchTooLarge(f"clique search exceeded {node_budget} nodes")
        if len(current) > len(best):
            best = current[:]
        while cand:
            if len(current) + cand.bit_count() <= len(best):
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            current.append(v)
            expand(current, cand & masks[v])
            current.pop()

    expand([], (1 << n) - 1)
    return len(best), [gl[v] for v in best]


# ---------------------------------------------------------------------------
# Full scheme verification
# ---------------------------------------------------------------------------


def _leaky_share_table(spec: FieldSpec, x: int, subsets, rand) -> dict:
    """Deliberately broken sharing (ignores randomness); for self-tests."""
    table = {T: 0 for T in subsets}
    table[subsets[-1]] = x
    return table


def _mutate_eval_table(table: EvalTable, spec: FieldSpec) -> EvalTable:
    r = min(table.entries)
    rows = list(table.entries[r])
    mon, coeff = rows[0]
    rows[0] = (mon, spec.add_int(coeff, 1))
    entries = dict(table.entries)
    entries[r] = tuple(rows)
    return EvalTable(entries)


def verify_scheme(scheme: HssScheme, *, seed: int = 2024, trials: int = 16) -> VerificationReport:
    """Run the full check suite and report one row per check.

    Covers the claimed download rate, the code's minimum labelweight,
    nonsingularity of every aligned column block, solvability identities
    of the evaluation system, correctness, privacy, amortization
    admissibility, and two self-tests proving the correctness and
    privacy checkers can detect deliberately broken schemes.
    """
    checks: list[CheckResult] = []
    params = scheme.params
    spec = params.field
    code = scheme.code

    rate = scheme_rate(scheme)
    opt = params.optimal_rate()
    checks.append(
        CheckResult(
            "download-rate",
            "pass" if rate == opt else "fail",
            f"ell/n = {rate}, optimal (s-dt)/s = {opt}",
        )
    )

    need = params.dt + 1
    try:
        lw = labelweight_code(code)
        checks.append(
            CheckResult(
                "labelweight",
                "pass" if lw >= need else "fail",
                f"minimum labelweight {lw}, need >= dt+1 = {need}",
                {"labelweight": lw},
            )
        )
    except EnumerationTooLarge as exc:
        checks.append(CheckResult("labelweight", "skip", str(exc)))

    r = params.s - params.dt
    if comb(params.s, r) <= MINOR_BUDGET:
        bad = []
        for lam_set in combinations(range(1, params.s + 1), r):
            blk = column_block(code, set(lam_set))
            if blk.rows != blk.cols or not linalg.is_nonsingular(blk):
                bad.append(lam_set)
        checks.append(
            CheckResult(
                "column-blocks",
                "fail" if bad else "pass",
                (
                    f"singular column blocks at server sets {bad}"
                    if bad
                    else f"all {comb(params.s, r)} server sets of size {r} give invertible blocks"
                ),
            )
        )
    else:
        checks.append(
            CheckResult("column-blocks", "skip", f"C({params.s},{r}) sets exceed the budget")
        )

    system = build_eval_system(code, params)
    rk = linalg.rank(system.matrix)
    checks.append(
        CheckResult(
            "eval-system-rank",
            "pass" if rk == system.matrix.rows else "fail",
            f"rank {rk} of {system.matrix.rows} rows x {system.matrix.cols} cols",
        )
    )

    try:
        check_eval_identity(scheme)
        checks.append(
            CheckResult("eval-identity", "pass", "stored tables satisfy the correctness identity")
        )
    except SystemInfeasible as exc:
        checks.append(CheckResult("eval-identity", "fail", str(exc)))

    correctness = check_correctness(scheme, seed=seed, trials=trials)
    checks.append(correctness)

    privacy = check_privacy(params)
    checks.append(privacy)

    verdict = check_amortization(spec.order, params.s, params.d, params.t, params.ell)
    checks.append(
        CheckResult(
            "amortization",
            "fail" if verdict.verdict == "inadmissible" else "pass",
            f"{verdict.verdict}: {verdict.reason}",
        )
    )

    mutated = HssScheme(params, code, _mutate_eval_table(scheme.eval_table, spec))
    mutated_result = check_correctness(mutated, seed=seed, trials=max(trials, 8))
    checks.append(
        CheckResult(
            "detects-broken-eval",
            "pass" if mutated_result.status == "fail" else "fail",
            (
                "correctness check rejects a scheme with one evaluation coefficient altered"
                if mutated_result.status == "fail"
                else "correctness check FAILED to reject a mutated evaluation table"
            ),
        )
    )

    if privacy.status == "skip":
        checks.append(
            CheckResult("detects-leaky-sharing", "skip", "privacy check skipped (over budget)")
        )
    else:
        leaky = check_privacy(params, share_table_fn=_leaky_share_table)
        checks.append(
            CheckResult(
                "detects-leaky-sharing",
                "pass" if leaky.status == "fail" else "fail",
                (
                    "privacy check rejects a sharing function that ignores its randomness"
                    if leaky.status == "fail"
                    else "privacy check FAILED to reject a leaky sharing function"
                ),
            )
        )

    return VerificationReport(tuple(checks))
