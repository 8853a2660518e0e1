"""Finite field arithmetic: axioms, frozen oracles, subfield embeddings."""
from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from lwhss import GF
from lwhss.errors import DivisionByZero, FieldMismatch, FieldTooLarge
from lwhss.field import (
    FieldSpec,
    default_modulus,
    embed_matrix,
    enumerate_field,
    factor_prime_power,
    subfield_view,
)

FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]

field_specs = st.sampled_from([GF(q) for q in FIELD_ORDERS])


@st.composite
def field_pairs(draw):
    spec = draw(field_specs)
    a = draw(st.integers(min_value=0, max_value=spec.order - 1))
    b = draw(st.integers(min_value=0, max_value=spec.order - 1))
    return spec, a, b


@st.composite
def field_triples(draw):
    spec = draw(field_specs)
    vals = [draw(st.integers(min_value=0, max_value=spec.order - 1)) for _ in range(3)]
    return (spec, *vals)


# ---------------------------------------------------------------------------
# Construction and moduli
# ---------------------------------------------------------------------------


def test_factor_prime_power():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(27) == (3, 3)
    assert factor_prime_power(5) == (5, 1)
    with pytest.raises(ValueError):
        factor_prime_power(6)
    with pytest.raises(ValueError):
        factor_prime_power(1)


def test_default_moduli_are_the_expected_polynomials():
    # Lexicographically smallest irreducibles, constant term first.
    assert default_modulus(2, 2) == (1, 1, 1)  # x^2 + x + 1
    assert default_modulus(2, 3) == (1, 1, 0, 1)  # x^3 + x + 1
    assert default_modulus(3, 2) == (1, 0, 1)  # x^2 + 1
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)  # x^4 + x + 1


def test_field_of_non_prime_power_rejected():
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(FieldTooLarge):
        GF(2**17)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(2, 2, modulus=(0, 0, 1))  # x^2 = x * x


def test_spec_equality_and_repr(gf4):
    assert gf4 == FieldSpec(2, 2)
    assert gf4 != GF(2)
    assert repr(gf4) == "GF(2^2)"
    assert repr(GF(8)) == "GF(2^3)"
    assert repr(GF(5)) == "GF(5)"


# ---------------------------------------------------------------------------
# Frozen small-field oracles
# ---------------------------------------------------------------------------


def test_gf4_multiplication_oracle(gf4):
    # With modulus x^2 + x + 1 the generator w (encoding 2) squares to w+1.
    assert gf4.mul_int(2, 2) == 3
    assert gf4.mul_int(2, 3) == 1  # w * w^2 = w^3 = 1
    assert gf4.inv_int(2) == 3
    assert gf4.add_int(2, 3) == 1


def test_gf5_arithmetic_oracle(gf5):
    assert gf5.mul_int(2, 3) == 1
    assert gf5.inv_int(2) == 3
    assert gf5.add_int(4, 3) == 2
    assert gf5.neg_int(2) == 3


def test_gf8_generator_orbit():
    gf8 = GF(8)
    g = gf8.generator.value
    seen = set()
    x = 1
    for _ in range(7):
        x = gf8.mul_int(x, g)
        seen.add(x)
    assert seen == set(range(1, 8))


def test_gf9_squares():
    gf9 = GF(9)
    squares = {gf9.mul_int(a, a) for a in range(9)}
    # Exactly (q+1)/2 squares in odd characteristic.
    assert len(squares) == 5


# ---------------------------------------------------------------------------
# Field axioms (property-based)
# ---------------------------------------------------------------------------


@given(field_pairs())
def test_addition_commutes(sab):
    spec, a, b = sab
    assert spec.add_int(a, b) == spec.add_int(b, a)


@given(field_pairs())
def test_multiplication_commutes(sab):
    spec, a, b = sab
    assert spec.mul_int(a, b) == spec.mul_int(b, a)


@given(field_triples())
def test_distributivity(sabc):
    spec, a, b, c = sabc
    left = spec.mul_int(a, spec.add_int(b, c))
    right = spec.add_int(spec.mul_int(a, b), spec.mul_int(a, c))
    assert left == right


@given(field_triples())
def test_associativity(sabc):
    spec, a, b, c = sabc
    assert spec.mul_int(spec.mul_int(a, b), c) == spec.mul_int(a, spec.mul_int(b, c))
    assert spec.add_int(spec.add_int(a, b), c) == spec.add_int(a, spec.add_int(b, c))


@given(field_pairs())
def test_subtraction_inverts_addition(sab):
    spec, a, b = sab
    assert spec.sub_int(spec.add_int(a, b), b) == a


@given(field_specs, st.integers(min_value=1, max_value=2**15))
def test_inverse_is_two_sided(spec, raw):
    a = 1 + raw % (spec.order - 1) if spec.order > 2 else 1
    inv = spec.inv_int(a)
    assert spec.mul_int(a, inv) == 1
    assert spec.mul_int(inv, a) == 1


@given(field_specs)
def test_division_by_zero_raises(spec):
    with pytest.raises(DivisionByZero):
        spec.inv_int(0)
    with pytest.raises(DivisionByZero):
        spec.div_int(1, 0)


@given(field_pairs(), st.integers(min_value=0, max_value=12))
def test_pow_matches_repeated_multiplication(sab, k):
    spec, a, _ = sab
    acc = 1
    for _ in range(k):
        acc = spec.mul_int(acc, a)
    assert spec.pow_int(a, k) == acc


def test_encode_decode_roundtrip():
    for q in FIELD_ORDERS:
        spec = GF(q)
        for v in range(q):
            assert spec.encode(spec.decode(v)) == v


def test_enumerate_field_order(gf9):
    vals = [e.value for e in enumerate_field(gf9)]
    assert vals == list(range(9))


# ---------------------------------------------------------------------------
# Element wrapper
# ---------------------------------------------------------------------------


def test_elem_operators(gf5):
    a = gf5.element(2)
    b = gf5.element(4)
    assert (a + b).value == 1
    assert (a * b).value == 3
    assert (a - b).value == 3
    assert (b / a).value == 2
    assert (a**3).value == 3
    assert (-a).value == 3
    assert bool(a) and not bool(gf5.zero)


def test_elem_field_mismatch(gf4, gf5):
    with pytest.raises(FieldMismatch):
        _ = gf4.element(1) + gf5.element(1)


def test_elem_coeffs(gf4):
    assert gf4.element(3).coeffs == (1, 1)
    assert gf4.from_coeffs((1, 1)).value == 3


def test_spec_json_roundtrip(gf9):
    assert FieldSpec.from_json(gf9.to_json()) == gf9


# ---------------------------------------------------------------------------
# Subfields and matrix embeddings
# ---------------------------------------------------------------------------


def test_subfield_lift_coords_roundtrip():
    ext = GF(16)
    base = GF(4)
    view = subfield_view(ext, base)
    for v in range(4):
        assert view.coords(view.lift(v))[0] == v
    alpha = ext.element(ext.p)  # the class of x in the extension
    for v in range(16):
        coords = view.coords(v)
        acc = ext.zero
        for i, c in enumerate(coords):
            acc = acc + ext.element(view.lift(c)) * alpha**i
        assert acc.value == v


def test_subfield_lift_is_a_field_homomorphism():
    ext = GF(16)
    base = GF(4)
    view = subfield_view(ext, base)
    for a in range(4):
        for b in range(4):
            assert view.lift(base.add_int(a, b)) == ext.add_int(view.lift(a), view.lift(b))
            assert view.lift(base.mul_int(a, b)) == ext.mul_int(view.lift(a), view.lift(b))


def test_embed_matrix_gf4_generator_oracle(gf4):
    # Multiplication by w in the basis (1, w) is the companion-style
    # matrix [[0,1],[1,1]]: w*1 = w, w*w = 1 + w.
    m = embed_matrix(gf4.element(2))
    assert m.to_rows() == [[0, 1], [1, 1]]


@given(st.sampled_from([GF(4), GF(8), GF(9)]), st.data())
def test_embed_matrix_is_additive_and_multiplicative(ext, data):
    a = data.draw(st.integers(min_value=0, max_value=ext.order - 1))
    b = data.draw(st.integers(min_value=0, max_value=ext.order - 1))
    ea = embed_matrix(ext.element(a))
    eb = embed_matrix(ext.element(b))
    assert (ea + eb).data == embed_matrix(ext.element(ext.add_int(a, b))).data
    assert (ea @ eb).data == embed_matrix(ext.element(ext.mul_int(a, b))).data


def test_embed_matrix_identity(gf4):
    assert embed_matrix(gf4.one).to_rows() == [[1, 0], [0, 1]]
