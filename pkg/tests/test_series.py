import pytest
from hypothesis import given, strategies as st

from qsmanin.freesuper import NcPoly, gen_M
from qsmanin.quotient import RIGHT, AlgebraSpec, DegreeOverflow, get_context
from qsmanin.scalars import EXACT, QScalar, SpecialField, default_modular_fields
from qsmanin.series import (NotInvertible, QuasiDetUndefined, SeriesRing, TruncSeries,
                            generating_series, generic_manin_series, manin_residual,
                            matrix_series_inverse, newton_check, quasideterminant)

q = QScalar.q()
FREE = SeriesRing(EXACT, 3)
gens = [NcPoly.gen(gen_M(i, j, 1)) for i in (1, 2) for j in (1, 2)]


@st.composite
def series(draw, unit=False):
    coeffs = []
    for d in range(FREE.D + 1):
        picks = draw(st.lists(st.tuples(st.integers(0, 3), st.integers(-2, 2)), max_size=2))
        c = sum((gens[g].scale(EXACT(v)) for g, v in picks), NcPoly.zero())
        coeffs.append(c)
    if unit:
        coeffs[0] = NcPoly.const(EXACT(draw(st.sampled_from([1, -2, 3]))) * q)
    return TruncSeries(FREE, coeffs)


@given(series(unit=True))
def test_series_inverse(s):
    one = FREE.one()
    assert s * s.inverse() == one
    assert s.inverse() * s == one


@given(series(), series(), series())
def test_series_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(series(), series())
def test_derivative_leibniz(a, b):
    lhs = (a * b).derivative().truncate(FREE.D - 1)
    rhs = (a.derivative() * b + a * b.derivative()).truncate(FREE.D - 1)
    assert lhs == rhs


def test_non_unit_is_rejected():
    s = FREE.from_poly(gens[0], 1)
    with pytest.raises(NotInvertible):
        s.inverse()


@pytest.mark.parametrize("m,n", [(1, 0), (1, 1), (2, 1), (1, 2), (0, 2)])
def test_twisted_model_is_a_manin_matrix(m, n):
    ctx = get_context(AlgebraSpec(RIGHT, m, n))
    assert manin_residual(generic_manin_series(ctx, 2)) == []


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0), (0, 2)])
def test_naive_model_is_not_manin_at_generic_q(m, n):
    ctx = get_context(AlgebraSpec(RIGHT, m, n))
    assert manin_residual(generic_manin_series(ctx, 2, model="naive")) != []


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0)])
def test_naive_model_is_manin_at_q_one(m, n):
    ctx = get_context(AlgebraSpec(RIGHT, m, n), SpecialField())
    assert manin_residual(generic_manin_series(ctx, 2, model="naive")) == []


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_matrix_inverse(m, n):
    ctx = get_context(AlgebraSpec(RIGHT, m, n))
    M = generic_manin_series(ctx, 2)
    Minv = matrix_series_inverse(M)
    assert (M @ Minv).is_identity() and (Minv @ M).is_identity()


def test_quasideterminant_routes_agree():
    ctx = get_context(AlgebraSpec(RIGHT, 2, 1))
    M = generic_manin_series(ctx, 2)
    for i in (1, 2, 3):
        qd = quasideterminant(M, i, i)
        assert qd == matrix_series_inverse(M)[i, i].inverse()


def test_off_diagonal_quasideterminant_is_undefined_in_model():
    ctx = get_context(AlgebraSpec(RIGHT, 1, 1))
    M = generic_manin_series(ctx, 2)
    with pytest.raises(QuasiDetUndefined):
        quasideterminant(M, 1, 2)


def test_degree_overflow():
    ctx = get_context(AlgebraSpec(RIGHT, 2, 2))
    with pytest.raises(DegreeOverflow):
        generic_manin_series(ctx, ctx.degree_cap + 1)


def test_generating_series_frozen():
    ctx = get_context(AlgebraSpec(RIGHT, 1, 1))
    S, A, T = generating_series(ctx, 2)
    assert str(S.coeffs[1]) == "M[1,1] - M[2,2]"
    assert A.coeffs[1] == -S.coeffs[1]
    assert T.coeffs[0] == S.coeffs[1]


@pytest.mark.parametrize("m,n,D", [(1, 1, 4), (2, 1, 3), (1, 2, 3)])
def test_newton_identities(m, n, D):
    ctx = get_context(AlgebraSpec(RIGHT, m, n), default_modular_fields(0)[0])
    res = newton_check(ctx, D)
    for key in ("AS=1", "SA=1", "dA=-AT", "dS=TS"):
        assert res[key].is_zero(), key
    assert all(not r.terms for r in res["recursion"])


def test_newton_exact_small():
    res = newton_check(get_context(AlgebraSpec(RIGHT, 1, 1)), 3)
    assert res["AS=1"].is_zero() and res["dS=TS"].is_zero()
