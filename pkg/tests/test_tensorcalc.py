import itertools

import pytest
from hypothesis import given, strategies as st

from qsmanin.freesuper import NcPoly
from qsmanin.quotient import RIGHT, AlgebraSpec, get_context
from qsmanin.scalars import EXACT, QScalar, default_modular_fields
from qsmanin.tensorcalc import (EndTensor, build_swap, compression_check, embed_matrix,
                                eps, eps_weight, eps_weight_inversions,
                                explicit_trace_formula, local_swap, macmahon_sum,
                                omega_weight, omega_weight_inversions, p_act_check,
                                partial_supertrace, perm_compose, perm_inverse, perm_length,
                                perm_operator, perm_sign, reduced_word, supertrace,
                                symmetrizer_recursions_check, symmetrizers,
                                trace_of_symmetrized)

F = EXACT
q = QScalar.q()
SIZES = [(m, N - m) for N in range(1, 4) for m in range(N + 1)]


def test_eps():
    assert [eps(d) for d in (-2, 0, 3)] == [-1, 0, 1]


def test_swap_frozen_entries():
    P = build_swap(1, 1, F)
    # P(e1 (x) e2) = q e2 (x) e1, P(e2 (x) e2) = -e2 (x) e2
    assert P.get((2, 1), (1, 2)) == q
    assert P.get((1, 2), (2, 1)) == 1 / q
    assert P.get((2, 2), (2, 2)) == -1
    assert P.get((1, 1), (1, 1)) == 1


@pytest.mark.parametrize("m,n", SIZES + [(2, 2), (1, 3)])
def test_swap_squares_to_identity(m, n):
    P = local_swap(1, 2, m, n, F)
    assert P @ P == EndTensor.identity(2, m, n, F.one)


@pytest.mark.parametrize("m,n", SIZES)
def test_braid_relation(m, n):
    P1, P2 = local_swap(1, 3, m, n, F), local_swap(2, 3, m, n, F)
    assert P1 @ P2 @ P1 == P2 @ P1 @ P2


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (0, 2)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_symmetrizers_are_idempotent(m, n, k):
    A, H = symmetrizers(k, m, n, F)
    assert A @ A == A and H @ H == H
    if k >= 2:
        assert (A @ H).is_zero() and (H @ A).is_zero()


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_recursions(m, n):
    for k in (2, 3):
        for r in range(1, k):
            assert all(symmetrizer_recursions_check(k, r, m, n, F).values())


perms = st.integers(1, 5).flatmap(lambda k: st.permutations(list(range(1, k + 1)))).map(tuple)


@given(perms)
def test_reduced_word_has_minimal_length(s):
    w = reduced_word(s)
    assert len(w) == perm_length(s)
    ident = tuple(range(1, len(s) + 1))
    p = ident
    for i in w:
        t = list(ident)
        t[i - 1], t[i] = t[i], t[i - 1]
        p = perm_compose(p, tuple(t))
    assert p == s


@given(perms)
def test_perm_inverse_and_sign(s):
    ident = tuple(range(1, len(s) + 1))
    assert perm_compose(s, perm_inverse(s)) == ident
    assert perm_sign(s) == perm_sign(perm_inverse(s))


@given(st.permutations([1, 2, 3]), st.permutations([1, 2, 3]))
def test_perm_operator_is_a_representation(s, t):
    s, t = tuple(s), tuple(t)
    lhs = perm_operator(perm_compose(s, t), 3, 1, 1, F)
    assert lhs == perm_operator(s, 3, 1, 1, F) @ perm_operator(t, 3, 1, 1, F)


idx = st.lists(st.integers(1, 3), min_size=3, max_size=3).map(tuple)


@given(st.permutations([1, 2, 3]).map(tuple), idx, idx)
def test_permutation_action_weights(s, I, J):
    assert p_act_check(s, I, J, 2, 1, F) == (True, True)


def test_per_inversion_weight_product_is_wrong_at_k3():
    # a crossing's sign depends on the slot where it happens
    bad = 0
    for s in itertools.permutations((1, 2, 3)):
        for I in itertools.product((1, 2), repeat=3):
            for J in itertools.product((1, 2), repeat=3):
                if eps_weight(s, I, J, 1, F) != eps_weight_inversions(s, I, J, 1, F):
                    bad += 1
                if omega_weight(s, I, J, 1, F) != omega_weight_inversions(s, I, J, 1, F):
                    bad += 1
    assert bad > 0


def test_per_inversion_weight_product_agrees_at_k2():
    for s in itertools.permutations((1, 2)):
        for I in itertools.product((1, 2), repeat=2):
            for J in itertools.product((1, 2), repeat=2):
                assert eps_weight(s, I, J, 1, F) == eps_weight_inversions(s, I, J, 1, F)


@given(st.dictionaries(st.tuples(st.integers(1, 2), st.integers(1, 2)), st.integers(-3, 3)),
       st.dictionaries(st.tuples(st.integers(1, 2), st.integers(1, 2)), st.integers(-3, 3)))
def test_supertrace_is_cyclic_on_scalars(a, b):
    # scalar matrices of arbitrary parity, str(XY) = str(YX) for even products
    A = EndTensor(1, 1, 1, {((i,), (j,)): F(v) for (i, j), v in a.items() if v})
    B = EndTensor(1, 1, 1, {((i,), (j,)): F(v) for (i, j), v in b.items() if v})
    assert supertrace(A @ B) == supertrace(B @ A) or any(
        (i + j) % 2 for (i, j) in list(a) + list(b))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_partial_supertrace_of_swap_is_identity(m, n):
    P = build_swap(m, n, F)
    assert partial_supertrace(P, 1) == EndTensor.identity(1, m, n, F.one)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_partial_then_full_supertrace(m, n):
    P = build_swap(m, n, F)
    X = P @ embed_matrix({(1, 1): F(2), (m + n, m + n): F(3)}, 1, 2, m, n)
    assert supertrace(partial_supertrace(X, 1)) == supertrace(X)


@pytest.mark.parametrize("m,n,k", [(1, 1, 1), (1, 1, 2), (1, 1, 3), (2, 1, 2), (1, 2, 2)])
def test_compression(m, n, k):
    ctx = get_context(AlgebraSpec(RIGHT, m, n))
    res = compression_check(k, ctx)
    assert res["antisymmetric"].is_zero() and res["symmetric"].is_zero()


@pytest.mark.parametrize("m,n,k", [(1, 1, 2), (1, 1, 3), (2, 1, 2)])
@pytest.mark.parametrize("flavor", ["HA", "AH"])
def test_macmahon(m, n, k, flavor):
    ctx = get_context(AlgebraSpec(RIGHT, m, n))
    assert macmahon_sum(k, ctx, flavor) == NcPoly.zero()


def test_macmahon_modular():
    ctx = get_context(AlgebraSpec(RIGHT, 2, 1), default_modular_fields(1)[0])
    assert macmahon_sum(3, ctx, "HA") == NcPoly.zero()


@pytest.mark.parametrize("m,n,k", [(1, 1, 1), (1, 1, 2), (1, 1, 3), (2, 1, 2)])
@pytest.mark.parametrize("flavor", ["A", "H"])
def test_explicit_trace_formula(m, n, k, flavor):
    ctx = get_context(AlgebraSpec(RIGHT, m, n))
    assert explicit_trace_formula(k, ctx, flavor) == trace_of_symmetrized(k, ctx, flavor)


def test_trace_frozen_k1():
    ctx = get_context(AlgebraSpec(RIGHT, 1, 1))
    assert str(trace_of_symmetrized(1, ctx, "A")) == "M[1,1] - M[2,2]"


def test_signed_symmetrizer_trace_formula_fails():
    ctx = get_context(AlgebraSpec(RIGHT, 1, 1))
    got = explicit_trace_formula(2, ctx, "H", signed=True)
    assert got != trace_of_symmetrized(2, ctx, "H")


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
def test_trace_formula_is_insensitive_to_the_weight_discrepancy(m, n):
    # the per-inversion weights differ on single tensors, yet the trace sums agree
    ctx = get_context(AlgebraSpec(RIGHT, m, n))
    for fl in ("A", "H"):
        assert (explicit_trace_formula(3, ctx, fl, weights="inversions")
                == trace_of_symmetrized(3, ctx, fl))
