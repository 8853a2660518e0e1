"""Rate-optimal linear homomorphic secret sharing from labelweight codes.

Share a batch of secrets among s servers so that any t of them learn
nothing, have each server compute locally on its shares, and recover
the values of degree-d polynomials while downloading only s/(s-dt)
field elements per instance — the optimal download rate for linear
schemes.  The construction pipeline turns MDS codes over an extension
field into block matrices with all-invertible sub-arrays, and those
into the labelweight-optimal codes that drive evaluation.

See :mod:`lwhss.cli` for the command-line entry points and
:mod:`lwhss.verify` for the checking machinery.
"""
from __future__ import annotations

from .codes import (
    BlockMatrix,
    LabeledCode,
    Labeling,
    block_tn_to_code,
    build_mds,
    canonical_labeling,
    code_to_block_tn,
    is_block_tn,
    is_mds,
    is_totally_nonsingular,
    j_lower_bound,
    labelweight_code,
    labelweight_vector,
    mds_to_tn,
    optimal_code,
    smallest_construction_j,
    theorem_permits_j,
    tn_to_block_tn,
    tn_to_mds,
)
from .errors import LwhssError
from .field import GF, FieldElem, FieldSpec, embed_matrix, enumerate_field, subfield_view
from .hss import (
    EvalTable,
    HssScheme,
    Monomial,
    PolyTerm,
    SchemeParams,
    ServerShares,
    ShareBundle,
    assemble_output,
    cnf_share,
    construct_scheme,
    eval_general,
    eval_shares,
    reconstruct,
    scheme_rate,
    synthesize_eval,
)
from .linalg import Matrix, det, is_nonsingular, kernel, rank, rref, solve
from .rng import CounterRng
from .verify import (
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
)

__version__ = "0.1.0"

__all__ = [
    "AmortizationVerdict",
    "BlockMatrix",
    "CheckResult",
    "CounterRng",
    "EvalTable",
    "FieldElem",
    "FieldSpec",
    "GF",
    "HssScheme",
    "LabeledCode",
    "Labeling",
    "LwhssError",
    "Matrix",
    "Monomial",
    "PolyTerm",
    "SchemeParams",
    "ServerShares",
    "ShareBundle",
    "VerificationReport",
    "assemble_output",
    "block_tn_to_code",
    "build_mds",
    "canonical_labeling",
    "check_amortization",
    "check_correctness",
    "check_privacy",
    "cnf_share",
    "code_to_block_tn",
    "construct_scheme",
    "det",
    "embed_matrix",
    "enumerate_field",
    "eval_general",
    "eval_shares",
    "general_linear_group",
    "is_block_tn",
    "is_difference_invertible_set",
    "is_mds",
    "is_nonsingular",
    "is_totally_nonsingular",
    "j_lower_bound",
    "kernel",
    "labelweight_code",
    "labelweight_vector",
    "max_difference_invertible_set",
    "mds_to_tn",
    "optimal_code",
    "rank",
    "reconstruct",
    "rref",
    "scheme_rate",
    "search_block_tn",
    "smallest_construction_j",
    "solve",
    "subfield_view",
    "synthesize_eval",
    "theorem_permits_j",
    "tn_to_block_tn",
    "tn_to_mds",
    "verify_scheme",
]
