import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcring.laurent import (
    ONE,
    QINV,
    QQ,
    ZERO,
    LaurentPoly,
    Q,
    laurent_det,
    q_pow,
    quantum_factorial,
    quantum_integer,
)

from oracles import poly_mul

polys = st.dictionaries(st.integers(-6, 6), st.integers(-20, 20), max_size=5).map(LaurentPoly)


def test_arith_examples():
    assert QQ * QQ == LaurentPoly({2: 1, 0: 2, -2: 1})
    p = LaurentPoly({3: 2, -1: 1})
    assert p + ZERO == p
    assert (Q - 1) * (Q + 1) == Q * Q - 1


def test_no_zero_coefficients_stored():
    p = LaurentPoly({1: 1, 2: 0}) + LaurentPoly({1: -1})
    assert p.is_zero()
    assert p.coeffs == {}


def test_big_coefficients_are_exact():
    big = LaurentPoly({0: 2**70})
    assert (big * big)[0] == 2**140


def test_bar_examples():
    assert (Q * Q + 1).bar() == QINV * QINV + 1
    assert QQ.bar() == QQ


@given(polys)
def test_bar_involution(p):
    assert p.bar().bar() == p


@given(polys, polys)
def test_bar_ring_hom(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(polys, polys)
def test_eval_at_one_is_ring_hom(a, b):
    assert (a * b)(1) == a(1) * b(1)
    assert (a + b)(1) == a(1) + b(1)


@given(polys, polys)
def test_mul_matches_naive(a, b):
    assert (a * b).coeffs == poly_mul(a.coeffs, b.coeffs)


def test_quantum_integers():
    assert quantum_integer(2) == Q + QINV
    assert quantum_integer(1) == ONE
    assert quantum_integer(0) == ZERO
    assert quantum_factorial(0) == ONE
    assert quantum_integer(-2) == -(Q + QINV)
    # [3]! multiplied out by hand: (q^2 + 1 + q^-2)(q + q^-1)
    assert quantum_factorial(3) == LaurentPoly({3: 1, 1: 2, -1: 2, -3: 1})


@pytest.mark.parametrize("j", range(13))
def test_quantum_integer_identity(j):
    assert quantum_integer(j) * (Q - QINV) == q_pow(j) - q_pow(-j)
    assert quantum_integer(j)(1) == j


def test_text_and_json_forms():
    p = LaurentPoly({2: 3, 0: 1, -1: -1})
    assert str(p) == "3*q^2 + 1 - q^-1"
    assert LaurentPoly.parse(str(p)) == p
    assert p.to_json() == {"2": 3, "0": 1, "-1": -1}
    assert LaurentPoly.from_json(json.dumps(p.to_json())) == p
    assert str(ZERO) == "0"
    assert str(-Q) == "-q"


@given(polys)
def test_parse_round_trip(p):
    assert LaurentPoly.parse(str(p)) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        LaurentPoly.parse("q^^2")


def test_exact_division():
    p = QQ * (Q * Q - 3)
    assert p.divmod_exact(QQ) == Q * Q - 3
    with pytest.raises(ArithmeticError):
        (Q + 2).divmod_exact(QQ)


def test_unit_powers():
    assert (-Q) ** -3 == LaurentPoly({-3: -1})
    assert Q ** -2 == q_pow(-2)
    with pytest.raises(ValueError):
        QQ ** -1


def test_determinant():
    m = [[QQ * QQ, QQ], [QQ, QQ * QQ]]
    assert laurent_det(m) == QQ**4 - QQ * QQ
    assert laurent_det([[ZERO, ONE], [ONE, ZERO]]) == -ONE
    assert laurent_det([]) == ONE


@settings(max_examples=30)
@given(st.lists(polys, min_size=9, max_size=9))
def test_determinant_matches_expansion(entries):
    a = [entries[0:3], entries[3:6], entries[6:9]]
    expand = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    assert laurent_det(a) == expand


def test_hash_and_int_equality():
    assert LaurentPoly.const(3) == 3
    assert len({LaurentPoly({1: 1}), Q}) == 1
