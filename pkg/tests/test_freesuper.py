import pytest
from hypothesis import given, strategies as st

from qsmanin.freesuper import (M, IndexRangeError, NcPoly, NonHomogeneous, ParseError, bar,
                               format_expr, gen_M, gen_psi, gen_x, koszul_sort,
                               koszul_tensor_mul, parse_expr, tensor_of, word_parity)
from qsmanin.scalars import EXACT, ModField, QScalar

q = QScalar.q()


def test_parities():
    assert [bar(i, 2) for i in (1, 2, 3)] == [0, 0, 1]
    assert gen_M(1, 3, 2).parity == 1
    assert gen_M(3, 3, 2).parity == 0
    assert gen_x(3, 2).parity == 1 and gen_psi(3, 2).parity == 0
    assert word_parity((gen_M(1, 3, 2), gen_M(3, 1, 2))) == 0


# small random polynomials over (1|1) generators
gens = st.sampled_from([gen_M(i, j, 1) for i in (1, 2) for j in (1, 2)])
words = st.lists(gens, max_size=3).map(tuple)
coeffs = st.integers(-3, 3).map(lambda k: q ** 0 * k) | st.integers(-2, 2).map(lambda k: q ** k)
polys = st.dictionaries(words, coeffs, max_size=4).map(NcPoly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a + b == b + a
    assert (a - a).terms == {}


@given(polys)
def test_format_parse_roundtrip(p):
    assert parse_expr(format_expr(p), 1, 1) == p


def test_format_frozen():
    p = parse_expr("M[1,1]*M[2,2] - 1/q*M[2,1]*M[1,2]", 2, 0)
    assert format_expr(p) == "M[1,1]*M[2,2] - 1/q*M[2,1]*M[1,2]"
    assert format_expr(parse_expr("M[1,2]*M[1,2]*M[1,2]", 1, 1)) == "M[1,2]^3"
    assert format_expr(NcPoly.zero()) == "0"
    assert format_expr(parse_expr("(q+1)*x[1] - psi[2]/q^2", 1, 1)).startswith("(q + 1)*x[1]")


def test_parse_tensor_factor_suffix():
    p = parse_expr("M[1,2]@1*x[2]@1", 1, 1, max_factor=1)
    (w, c), = p.terms.items()
    assert [g.factor for g in w] == [1, 1]


def test_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_expr("M[1,1]*", 1, 1)
    assert "position" in str(exc.value)
    with pytest.raises(ParseError):
        parse_expr("M[1,1] M[1,2]", 1, 1)
    with pytest.raises(IndexRangeError):
        parse_expr("M[3,1]", 1, 1)


def test_parse_over_modular_field():
    F = ModField(101, 3)
    p = parse_expr("q*M[1,1]", 1, 1, F)
    assert list(p.terms.values()) == [F.q]


def test_koszul_sort_sign():
    a, b = gen_M(1, 2, 1, factor=1), gen_M(2, 1, 1, factor=0)  # both odd
    sign, w = koszul_sort((a, b))
    assert sign == -1 and w == (b, a)
    c = gen_M(1, 1, 1, factor=0)  # even
    assert koszul_sort((a, c)) == (1, (c, a))


def test_koszul_tensor_mul_sign_rule():
    # (1 (x) a2)(b1 (x) 1) = (-1)^{|a2||b1|} b1 (x) a2
    a2 = NcPoly.gen(gen_M(1, 2, 1, factor=1))
    b1 = NcPoly.gen(gen_M(2, 1, 1, factor=0))
    prod = koszul_tensor_mul(a2, b1)
    assert prod == NcPoly.word((b1.sorted_terms()[0][0][0], a2.sorted_terms()[0][0][0]), -1)


@given(polys, polys)
def test_tensor_of_is_multiplicative_in_each_slot(a, b):
    # (a (x) 1)(1 (x) b) = a (x) b: no sign since nothing crosses
    one = NcPoly.const(1)
    left = tensor_of(a, one)
    right = tensor_of(one, b)
    try:
        assert koszul_tensor_mul(left, right) == tensor_of(a, b)
    except NonHomogeneous:
        pass


def test_non_homogeneous_crossing_rejected():
    a = NcPoly.gen(gen_M(1, 1, 1, factor=1)) + NcPoly.gen(gen_M(1, 2, 1, factor=1))
    b = NcPoly.gen(gen_M(1, 2, 1, factor=0))
    with pytest.raises(NonHomogeneous):
        koszul_tensor_mul(a, b)


def test_substitute():
    p = parse_expr("M[1,2]*M[2,1]", 1, 1)
    img = p.substitute(lambda g: NcPoly.const(EXACT.q) if g.row == 1 else NcPoly.gen(g), 1)
    assert img == parse_expr("q*M[2,1]", 1, 1)
