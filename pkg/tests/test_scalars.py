from fractions import Fraction

import pytest
from flint import fmpz_poly
from hypothesis import given, strategies as st

from qsmanin.scalars import (DEFAULT_PRIMES, EXACT, BadEvaluationPoint, ModField, QInverted,
                             QScalar, SpecialField, default_modular_fields)

coeff_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=4)


@st.composite
def qscalars(draw, nonzero=False):
    num = draw(coeff_lists)
    den = draw(coeff_lists.filter(lambda c: any(c)))
    if nonzero and not any(num):
        num = [1]
    return QScalar(fmpz_poly(num), fmpz_poly(den))


q = QScalar.q()
P = DEFAULT_PRIMES[0]


def test_normal_form_is_canonical():
    a = QScalar(fmpz_poly([-1, 0, 1]), fmpz_poly([-1, 1]))  # (q^2-1)/(q-1)
    assert a == q + 1
    assert a.num == (q + 1).num and a.den == (q + 1).den
    assert hash(a) == hash(q + 1)


def test_frozen_printing():
    assert str(q + 1 / q) == "(q^2 + 1)/q"
    assert str(QScalar.q_power(-2).invert_q()) == "q^2"
    assert str(QScalar(0)) == "0"


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        QScalar(1, 0)
    with pytest.raises(ZeroDivisionError):
        QScalar(0).inverse()


@given(qscalars(), qscalars(), qscalars())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == QScalar(0)


@given(qscalars(nonzero=True))
def test_inverse(a):
    assert a * a.inverse() == QScalar(1)
    assert a / a == QScalar(1)


@given(qscalars(), qscalars())
def test_invert_q_is_an_involutive_automorphism(a, b):
    assert a.invert_q().invert_q() == a
    assert (a * b).invert_q() == a.invert_q() * b.invert_q()
    assert (a + b).invert_q() == a.invert_q() + b.invert_q()


@given(st.integers(-6, 6))
def test_q_power(k):
    assert QScalar.q_power(k) == q ** k
    assert QScalar.q_power(k).invert_q() == QScalar.q_power(-k)


@given(qscalars(), qscalars(), st.integers(2, 10 ** 6))
def test_evaluation_mod_p_is_a_homomorphism(a, b, q0):
    F = ModField(P, q0)
    try:
        fa, fb, fab, fsum = F(a), F(b), F(a * b), F(a + b)
    except BadEvaluationPoint:
        return
    assert fab == fa * fb
    assert fsum == fa + fb


@given(qscalars(), qscalars(), st.fractions(min_value=2, max_value=9, max_denominator=7))
def test_evaluation_at_rational_is_a_homomorphism(a, b, c):
    F = SpecialField(Fraction(c))
    try:
        fa, fb, fab = F(a), F(b), F(a * b)
    except BadEvaluationPoint:
        return
    assert fab == fa * fb


def test_bad_evaluation_point():
    a = 1 / (q - 3)
    with pytest.raises(BadEvaluationPoint):
        ModField(P, 3)(a)
    with pytest.raises(BadEvaluationPoint):
        a.eval_at(Fraction(3))


def test_mod_field_rejects_degenerate_points():
    for bad in (0, 1, P - 1):
        with pytest.raises(ValueError):
            ModField(P, bad)


def test_mod_arithmetic():
    F = ModField(P, 5)
    x = F(7)
    assert x * x.inverse() == F.one
    assert F(Fraction(1, 2)) * 2 == F.one
    assert F.q_power(-1) * F.q == F.one
    with pytest.raises(ValueError):
        ModField(DEFAULT_PRIMES[1], 5)(x)


def test_default_modular_fields_are_seeded():
    a = default_modular_fields(7)
    assert a == default_modular_fields(7)
    assert [F.prime for F in a] == list(DEFAULT_PRIMES)
    assert a != default_modular_fields(8)
    assert all(2 <= F.q_point <= F.prime - 2 for F in a)


def test_special_field_is_q_equal_one():
    F = SpecialField()
    assert F.q == 1 and F.q_power(-3) == 1
    assert F(q + 1 / q) == 2


@pytest.mark.parametrize("base", [EXACT, ModField(P, 11), SpecialField(Fraction(3))])
def test_q_inverted_view(base):
    V = QInverted(base)
    assert V.q == base.q_power(-1)
    assert V.q_power(2) == base.q_power(-2)
    assert V.one == base.one and V.zero == base.zero
