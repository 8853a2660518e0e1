"""Checkers: correctness/privacy verdicts, searches with certificates, reports."""
from __future__ import annotations

import json

import pytest

from lwhss import GF
from lwhss.codes import is_block_tn, j_lower_bound
from lwhss.errors import SearchTooLarge, TooLargeForExhaustive
from lwhss.field import embed_matrix
from lwhss.hss import EvalTable, HssScheme, construct_scheme
from lwhss.linalg import Matrix
from lwhss.verify import (
    AmortizationVerdict,
    CheckResult,
    VerificationReport,
    check_amortization,
    check_correctness,
    check_privacy,
    general_linear_group,
    is_difference_invertible_set,
    max_difference_invertible_set,
    search_block_tn,
    verify_scheme,
    _leaky_share_table,
    _mutate_eval_table,
)


# ---------------------------------------------------------------------------
# Correctness checker
# ---------------------------------------------------------------------------


def test_correctness_exhaustive_counts_all_assignments(tiny_scheme):
    result = check_correctness(tiny_scheme, mode="exhaustive")
    assert result.status == "pass"
    assert result.data["total"] == 64  # 2^(2*1*3) joint share assignments


def test_correctness_sampled_passes(degree2_scheme):
    result = check_correctness(degree2_scheme, mode="sampled", trials=12)
    assert result.status == "pass"


def test_correctness_auto_defers_to_sampling(degree2_scheme):
    # 2^30 assignments: far beyond the auto threshold, must sample.
    result = check_correctness(degree2_scheme)
    assert result.status == "pass"
    assert result.data.get("mode") != "exhaustive"


def test_correctness_exhaustive_respects_budget(degree2_scheme):
    with pytest.raises(TooLargeForExhaustive):
        check_correctness(degree2_scheme, mode="exhaustive", budget=2**20)


def test_correctness_rejects_unknown_mode(tiny_scheme):
    with pytest.raises(ValueError):
        check_correctness(tiny_scheme, mode="fast")


def test_correctness_detects_mutated_table(tiny_scheme):
    broken = HssScheme(
        tiny_scheme.params,
        tiny_scheme.code,
        _mutate_eval_table(tiny_scheme.eval_table, tiny_scheme.params.field),
    )
    result = check_correctness(broken, mode="exhaustive")
    assert result.status == "fail"
    assert "expected" in result.detail


def test_mutate_eval_table_changes_one_coefficient(tiny_scheme):
    table = tiny_scheme.eval_table
    mutated = _mutate_eval_table(table, tiny_scheme.params.field)
    diffs = [
        (r, a, b)
        for r in table.entries
        for a, b in zip(table.entries[r], mutated.entries[r])
        if a != b
    ]
    assert len(diffs) == 1


# ---------------------------------------------------------------------------
# Privacy checker
# ---------------------------------------------------------------------------


def test_privacy_passes_tiny(tiny_scheme):
    result = check_privacy(tiny_scheme.params)
    assert result.status == "pass"
    assert result.data["randomness_vectors"] == 4  # 2^(C(3,1)-1)


def test_privacy_detects_leaky_sharing(tiny_scheme):
    result = check_privacy(tiny_scheme.params, share_table_fn=_leaky_share_table)
    assert result.status == "fail"
    assert "collusion" in result.detail


def test_privacy_skips_over_budget(degree2_scheme):
    result = check_privacy(degree2_scheme.params, budget=2)
    assert result.status == "skip"
    assert result.passed  # skip is not a failure


# ---------------------------------------------------------------------------
# Amortization verdicts
# ---------------------------------------------------------------------------


def test_amortization_rejects_fractional_rate():
    v = check_amortization(2, 5, 2, 1, ell=4)  # s-dt = 3 does not divide 4
    assert v.verdict == "inadmissible"
    assert v.j is None


def test_amortization_rejects_below_floor():
    v = check_amortization(2, 5, 2, 1, ell=3)  # j = 1 < floor 2
    assert v.verdict == "inadmissible"
    assert v.j == 1 and v.j_floor == 2


def test_amortization_admissible_at_floor():
    v = check_amortization(2, 5, 2, 1, ell=6)  # j = 2 = floor, constructible
    assert v.verdict == "admissible"
    assert v.j == 2 and v.j_floor == 2


def test_amortization_admissible_degree1():
    v = check_amortization(2, 3, 1, 1, ell=2)
    assert v == AmortizationVerdict(
        "admissible", "an optimal-rate scheme exists at amortization j = 1", 1, 1
    )


def test_amortization_unknown_gap():
    # GF(3), s=11, dt=8: floor is 2 (3^2 >= 9) but 11 > 3^2 + 1, so j=2
    # is above the floor yet below any known construction.
    v = check_amortization(3, 11, 2, 4, ell=6)
    assert v.verdict == "unknown"
    assert v.j == 2 and v.j_floor == 2


def test_amortization_rejects_nonpositive_ell():
    v = check_amortization(2, 3, 1, 1, ell=0)
    assert v.verdict == "inadmissible"


# ---------------------------------------------------------------------------
# Exhaustive searches
# ---------------------------------------------------------------------------


def test_general_linear_group_orders():
    assert len(general_linear_group(GF(2), 1)) == 1
    assert len(general_linear_group(GF(3), 1)) == 2
    assert len(general_linear_group(GF(2), 2)) == 6  # (4-1)(4-2)
    assert len(general_linear_group(GF(3), 2)) == 48  # (9-1)(9-3)


def test_general_linear_group_budget():
    with pytest.raises(SearchTooLarge):
        general_linear_group(GF(5), 4, budget=10**6)


def test_search_block_tn_finds_witness():
    bm, checked = search_block_tn(GF(2), 2, 3, 2)
    assert bm is not None
    assert is_block_tn(bm)
    assert checked <= 36  # |GL(2,2)|^2 candidates after normalization


def test_search_block_tn_exhausts_scalar_case():
    # Over GF(2) with 1x1 blocks the only invertible entry is 1, and any
    # 2x2 all-ones submatrix is singular: no witness can exist.
    for rows in (2, 3):
        for cols in (2, 3):
            bm, checked = search_block_tn(GF(2), 1, rows, cols)
            assert bm is None
            assert checked == 1  # the all-identity candidate


def test_search_block_tn_matches_floor():
    assert j_lower_bound(2, 5, 2, 1) == 2
    assert j_lower_bound(2, 4, 2, 1) == 2


def test_difference_invertible_set_oracles():
    gf2 = GF(2)
    one = Matrix(gf2, 1, 1, [1])
    assert is_difference_invertible_set([one])
    assert not is_difference_invertible_set([one, one])  # difference is zero
    a = Matrix(gf2, 2, 2, [1, 0, 0, 1])
    b = Matrix(gf2, 2, 2, [0, 1, 1, 1])
    c = Matrix(gf2, 2, 2, [1, 1, 1, 0])
    assert is_difference_invertible_set([a, b, c])


def test_max_difference_invertible_binary_2x2():
    size, witness = max_difference_invertible_set(GF(2), 2)
    assert size == 3  # q^j - 1
    assert is_difference_invertible_set(witness)
    assert len(witness) == 3


def test_max_difference_invertible_matches_field_embedding():
    # The multiplicative group of the 4-element field, embedded as 2x2
    # binary matrices, is itself a maximum difference-invertible set.
    gf4 = GF(4)
    embedded = [embed_matrix(gf4.element(v)) for v in range(1, 4)]
    assert is_difference_invertible_set(embedded)
    size, _ = max_difference_invertible_set(GF(2), 2)
    assert size == len(embedded)


def test_max_difference_invertible_gf3_scalar():
    size, witness = max_difference_invertible_set(GF(3), 1)
    assert size == 2
    assert [m.entry(0, 0) for m in witness] == [1, 2]


def test_max_difference_invertible_budget():
    with pytest.raises(SearchTooLarge):
        max_difference_invertible_set(GF(2), 2, budget=3)


# ---------------------------------------------------------------------------
# Full report
# ---------------------------------------------------------------------------


def test_verify_scheme_all_pass(tiny_scheme):
    report = verify_scheme(tiny_scheme)
    assert report.passed
    names = [c.name for c in report.checks]
    assert names == [
        "download-rate",
        "labelweight",
        "column-blocks",
        "eval-system-rank",
        "eval-identity",
        "correctness",
        "privacy",
        "amortization",
        "detects-broken-eval",
        "detects-leaky-sharing",
    ]
    assert all(c.status == "pass" for c in report.checks)


def test_verify_scheme_fails_on_broken_eval(tiny_scheme):
    broken = HssScheme(
        tiny_scheme.params,
        tiny_scheme.code,
        _mutate_eval_table(tiny_scheme.eval_table, tiny_scheme.params.field),
    )
    report = verify_scheme(broken)
    assert not report.passed
    failed = {c.name for c in report.checks if c.status == "fail"}
    assert "eval-identity" in failed
    assert "correctness" in failed


def test_report_formatting(tiny_scheme):
    report = verify_scheme(tiny_scheme)
    table = report.format_table()
    assert "download-rate" in table
    assert "PASS" in table
    payload = json.loads(json.dumps(report.to_json()))
    assert payload["passed"] is True
    assert len(payload["checks"]) == len(report.checks)


def test_check_result_skip_counts_as_passed():
    assert CheckResult("x", "skip", "over budget").passed
    assert not CheckResult("x", "fail", "broken").passed
    report = VerificationReport((CheckResult("x", "skip", "over budget"),))
    assert report.passed


def test_verify_nonbinary_scheme():
    report = verify_scheme(construct_scheme(3, 4, 1, 1, 1))
    assert report.passed
