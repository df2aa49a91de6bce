"""Quantum Berezinians of q-super Manin matrices and their minor identities.

All identities are checked in the series model: the generic q-super Manin
matrix over the right quantum superalgebra, truncated at t^D (see
:mod:`qsmanin.series`).
Matrices carry their (m|n) split through the parity profile.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .freesuper import NcPoly, gen_M
from .linalg import span_equal
from .quotient import LEFT, RIGHT, AlgebraSpec, get_context, relation_basis
from .report import CheckResult, failed, from_residual, passed, skipped
from .scalars import EXACT, QInverted
from .series import (NotInvertible, QuasiDetUndefined, SeriesMatrix, SeriesRing,
                     TruncSeries, generic_manin_series, manin_residual,
                     matrix_series_inverse, quasideterminant)
from .tensorcalc import perm_length

__all__ = [
    "qdet", "ber", "ber_q", "ber_qinv_of_inverse", "ber_general_of_inverse",
    "supertranspose", "pi_transpose", "pi_st", "ber_pi_st", "ber_pi_st_explicit",
    "inv_weight", "with_split",
    "BlockSplit", "minor_ber", "permutation_sides", "decomposition_rhs",
    "pi_st_decomposition_rhs", "permuted_decomposition_rhs", "jacobi_sides",
    "schur_sides", "schur_corollary", "sylvester_sides", "psi_entries",
    "Factor", "MinorIdentity", "cayley", "muir", "jacobi_seed",
    "ber_permutation_check", "quasidet_decomposition_check",
    "permuted_decomposition_check", "jacobi_ratio_check",
    "schur_complement_check", "minor_identity_check", "sylvester_check",
    "left_quantum_morphism_check", "pi_st_relation_check", "ber_inverse_check",
    "cofactor_det", "HypothesisError",
]


class HypothesisError(ValueError):
    """An index set violates the hypothesis of the theorem being applied."""


def _field(A: SeriesMatrix):
    return A.ring.field


def _neg_q_power(F, k: int):
    """(-q)^k in the field F (k may be negative)."""
    c = F.q_power(k)
    return -c if k % 2 else c


def _product(ring: SeriesRing, factors) -> TruncSeries:
    out = None
    for f in factors:
        out = f if out is None else out * f
    return ring.one() if out is None else out


def with_split(A: SeriesMatrix, m: int, n: int) -> SeriesMatrix:
    par = SeriesMatrix.split_parities(m, n)
    if A.shape != (m + n, m + n):
        raise ValueError("matrix size does not match (m|n)")
    return SeriesMatrix(A.rows, par, par)


# -- determinants and Berezinians ----------------------------------------------------

def qdet(A: SeriesMatrix, mode: str = "q", field=None) -> TruncSeries:
    """sum_sigma (-q)^{-+l(sigma)} A_{sigma(1),1} ... A_{sigma(k),k} (column-ordered).

    ``mode`` "q" uses (-q)^{-l}, "qinv" uses (-q)^{l}.
    """
    if mode not in ("q", "qinv"):
        raise ValueError("mode must be 'q' or 'qinv'")
    k, c = A.shape
    if k != c:
        raise ValueError("qdet needs a square matrix")
    if k == 0:
        raise ValueError("empty matrix has no ring; use 1")
    F = field or _field(A)
    ring = A.ring
    sgn = -1 if mode == "q" else 1
    total = ring.zero()
    for s in itertools.permutations(range(1, k + 1)):
        term = _product(ring, (A[s[a], a + 1] for a in range(k)))
        total = total + term.scale(_neg_q_power(F, sgn * perm_length(s)))
    return total


def _odd_factor(Ainv: SeriesMatrix, a: int, b: int, F, rows=None) -> TruncSeries:
    """sum_rho (-q)^{-l(rho)} Ainv_{a+r_1, a+rho(1)} ... (rows default 1..b)."""
    ring = Ainv.ring
    rows = rows or tuple(range(1, b + 1))
    total = ring.zero()
    for r in itertools.permutations(range(1, b + 1)):
        term = _product(ring, (Ainv[a + rows[p], a + r[p]] for p in range(b)))
        total = total + term.scale(_neg_q_power(F, -perm_length(r)))
    return total


def _even_factor(A: SeriesMatrix, a: int, F, cols=None) -> TruncSeries:
    """sum_sigma (-q)^{-l(sigma)} A_{sigma(1), c_1} ... A_{sigma(a), c_a}."""
    ring = A.ring
    cols = cols or tuple(range(1, a + 1))
    total = ring.zero()
    for s in itertools.permutations(range(1, a + 1)):
        term = _product(ring, (A[s[p], cols[p]] for p in range(a)))
        total = total + term.scale(_neg_q_power(F, -perm_length(s)))
    return total


def ber(A: SeriesMatrix, field=None) -> TruncSeries:
    """Berezinian formula of A in its own (a|b) split with parameter q of ``field``.

    Pass ``QInverted(F)`` for Ber_{q^{-1}}.
    """
    a, b = A.split()
    F = field or _field(A)
    ring = A.ring
    even = _even_factor(A, a, F) if a else ring.one()
    if not b:
        return even
    Ainv = matrix_series_inverse(A)
    return even * _odd_factor(Ainv, a, b, F)


def ber_q(M: SeriesMatrix, m: int | None = None, n: int | None = None) -> TruncSeries:
    if m is not None:
        M = with_split(M, m, n)
    return ber(M)


def ber_qinv_of_inverse(M: SeriesMatrix) -> TruncSeries:
    """Ber_{q^{-1}}(M^{-1}): odd block of M first, then the even block of M^{-1}."""
    m, n = M.split()
    F = _field(M)
    ring = M.ring
    Minv = matrix_series_inverse(M)
    odd = ring.one()
    if n:
        total = ring.zero()
        for r in itertools.permutations(range(1, n + 1)):
            term = _product(ring, (M[m + p + 1, m + r[p]] for p in range(n)))
            total = total + term.scale(_neg_q_power(F, perm_length(r)))
        odd = total
    even = ring.one()
    if m:
        total = ring.zero()
        for s in itertools.permutations(range(1, m + 1)):
            term = _product(ring, (Minv[s[p], p + 1] for p in range(m)))
            total = total + term.scale(_neg_q_power(F, perm_length(s)))
        even = total
    return odd * even


def ber_general_of_inverse(M: SeriesMatrix) -> TruncSeries:
    """The plain formula with q^{-1} applied to M^{-1} in the (m|n) split."""
    return ber(matrix_series_inverse(M), QInverted(_field(M)))


# -- transposes ---------------------------------------------------------------------

def supertranspose(A: SeriesMatrix) -> SeriesMatrix:
    """(A^st)_{ij} = (-1)^{i(i+j)} A_{ji}, parities from the row profile."""
    p = A.row_par
    N = len(p)
    rows = []
    for i in range(N):
        row = []
        for j in range(N):
            e = A.rows[j][i]
            row.append(-e if p[i] * (p[i] + p[j]) % 2 else e)
        rows.append(row)
    return SeriesMatrix(rows, A.col_par, A.row_par)


def pi_transpose(A: SeriesMatrix) -> SeriesMatrix:
    """Swap the diagonal blocks and reverse indices inside each block; (m|n) -> (n|m)."""
    m, n = A.split()
    N = m + n
    # new index a (1-based) in the (n|m) split -> old index
    old = [m + n - a + 1 for a in range(1, n + 1)] + [m - a + 1 for a in range(1, m + 1)]
    rows = [[A.rows[old[a] - 1][old[b] - 1] for b in range(N)] for a in range(N)]
    par = SeriesMatrix.split_parities(n, m)
    return SeriesMatrix(rows, par, par)


def pi_st(A: SeriesMatrix) -> SeriesMatrix:
    return supertranspose(pi_transpose(A))


def ber_pi_st(M: SeriesMatrix, field=None) -> TruncSeries:
    """Ber_q(M^{Pi o st}) with the odd factor read from (M^{-1})^{Pi o st} entrywise.

    The coaction behind this Berezinian inverts M through the antipode, so the
    odd factor uses the transformed entries of M^{-1}, not the matrix inverse of
    M^{Pi o st} (the two differ once n > 0).
    """
    F = field or _field(M)
    A = pi_st(M)
    a, b = A.split()
    ring = M.ring
    even = _even_factor(A, a, F) if a else ring.one()
    if not b:
        return even
    return even * _odd_factor(pi_st(matrix_series_inverse(M)), a, b, F)


def ber_pi_st_explicit(M: SeriesMatrix) -> TruncSeries:
    """The same element written in entries of M and M^{-1} with reversed products."""
    m, n = M.split()
    F = _field(M)
    ring = M.ring
    odd = ring.one()
    if n:
        odd = ring.zero()
        for r in itertools.permutations(range(1, n + 1)):
            term = _product(ring, (M[m + p, m + r[p - 1]] for p in range(n, 0, -1)))
            odd = odd + term.scale(_neg_q_power(F, -perm_length(r)))
    even = ring.one()
    if m:
        Minv = matrix_series_inverse(M)
        even = ring.zero()
        for s in itertools.permutations(range(1, m + 1)):
            term = _product(ring, (Minv[s[p - 1], p] for p in range(m, 0, -1)))
            even = even + term.scale(_neg_q_power(F, -perm_length(s)))
    return odd * even


def inv_weight(I: Sequence[int], field=EXACT):
    """Product of (-q)^{-1} over inversions of I, or 0 when I has a repeat."""
    if len(set(I)) != len(I):
        return field.zero
    inv = sum(1 for a in range(len(I)) for b in range(a + 1, len(I)) if I[a] > I[b])
    return _neg_q_power(field, -inv)


# -- minors --------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockSplit:
    """Index set I = I1 (+) I2 with I1 in [m], I2 in [m+n] minus [m], both increasing."""

    m: int
    n: int
    I1: tuple = ()
    I2: tuple = ()

    def __post_init__(self):
        if list(self.I1) != sorted(set(self.I1)) or list(self.I2) != sorted(set(self.I2)):
            raise ValueError("index sets must be strictly increasing")
        if any(not 1 <= i <= self.m for i in self.I1):
            raise ValueError("I1 must lie in [m]")
        if any(not self.m < i <= self.m + self.n for i in self.I2):
            raise ValueError("I2 must lie in [m+n] minus [m]")

    @classmethod
    def of(cls, I, m: int, n: int) -> "BlockSplit":
        I = sorted(set(I))
        return cls(m, n, tuple(i for i in I if i <= m), tuple(i for i in I if i > m))

    @property
    def indices(self) -> tuple:
        return tuple(self.I1) + tuple(self.I2)

    def complement(self) -> "BlockSplit":
        return BlockSplit.of(set(range(1, self.m + self.n + 1)) - set(self.indices),
                             self.m, self.n)


def minor_ber(M: SeriesMatrix, split, field=None) -> TruncSeries:
    """Ber_q(M_I) in the induced grading; the empty minor is 1."""
    if not isinstance(split, BlockSplit):
        m, n = M.split()
        split = BlockSplit.of(split, m, n)
    idx = split.indices
    if not idx:
        return M.ring.one()
    sub = M.sub(idx, idx)
    return ber(with_split(sub, len(split.I1), len(split.I2)), field)


# -- identity sides -------------------------------------------------------------------

def permutation_sides(M: SeriesMatrix, I, J):
    """(Inv(I)Inv(J) Ber_q(M), row/column permuted formula)."""
    m, n = M.split()
    if len(I) != m or len(J) != n:
        raise ValueError("I must have length m and J length n")
    if any(not 1 <= i <= m for i in I) or any(not 1 <= j <= n for j in J):
        raise ValueError("I must lie in [m] and J in [n]")
    F = _field(M)
    ring = M.ring
    lhs = ber(M).scale(inv_weight(I, F) * inv_weight(J, F))
    even = _even_factor(M, m, F, cols=tuple(I)) if m else ring.one()
    odd = _odd_factor(matrix_series_inverse(M), m, n, F, rows=tuple(J)) if n else ring.one()
    return lhs, even * odd


def _qd(A: SeriesMatrix, i: int, j: int, where: str) -> TruncSeries:
    try:
        return quasideterminant(A, i, j)
    except QuasiDetUndefined as exc:
        raise QuasiDetUndefined(f"{where}: {exc}") from None


def decomposition_rhs(M: SeriesMatrix) -> TruncSeries:
    """|M^(1)|_11 ... |M^(m)|_mm |M^(m+1)|^{-1} ... |M^(m+n)|^{-1}."""
    m, n = M.split()
    factors = []
    for k in range(1, m + n + 1):
        lead = tuple(range(1, k + 1))
        q = _qd(M.sub(lead, lead), k, k, f"|M^({k})|_{k}{k}")
        factors.append(q if k <= m else q.inverse())
    return _product(M.ring, factors)


def pi_st_decomposition_rhs(M: SeriesMatrix) -> TruncSeries:
    """|M_(n)|_{m+1,m+1} ... |M_(1)|_{m+n,m+n} |M_(m+n)|^{-1}_11 ... |M_(n+1)|^{-1}_mm."""
    m, n = M.split()
    N = m + n
    factors = []
    for i in list(range(m + 1, N + 1)) + list(range(1, m + 1)):
        trail = tuple(range(i, N + 1))
        q = _qd(M.sub(trail, trail), 1, 1, f"|M_({N - i + 1})|_{i}{i}")
        factors.append(q if i > m else q.inverse())
    return _product(M.ring, factors)


def permuted_decomposition_rhs(M: SeriesMatrix, I1, J1, I2, J2) -> TruncSeries:
    """Inv-weighted chain of quasideterminants over nested permuted submatrices."""
    m, n = M.split()
    N = m + n
    if sorted(I1) != list(range(1, m + 1)) or sorted(J1) != list(range(1, m + 1)):
        raise ValueError("I1, J1 must be rearrangements of [m]")
    if sorted(I2) != list(range(m + 1, N + 1)) or sorted(J2) != list(range(m + 1, N + 1)):
        raise ValueError("I2, J2 must be rearrangements of [m+n] minus [m]")
    F = _field(M)
    I, J = tuple(I1) + tuple(I2), tuple(J1) + tuple(J2)
    factors = []
    for k in range(1, N + 1):
        sub = M.sub(I[:k], J[:k])
        q = _qd(sub, k, k, f"quasideterminant at step {k}")
        factors.append(q if k <= m else q.inverse())
    # Inv(I2), Inv(J2) are taken on the odd labels shifted to 1..n
    num = inv_weight(J1, F) * inv_weight(J2, F)
    den = inv_weight(I1, F) * inv_weight(I2, F)
    return _product(M.ring, factors).scale(num / den)


def _jacobi_admissible(I, m: int) -> bool:
    s = set(I)
    return s <= set(range(1, m + 1)) or set(range(1, m + 1)) <= s


def co_factor(M: SeriesMatrix, X, ambient=None) -> TruncSeries:
    """Ber_{q^{-1}}((((M_A)^{-1})_X)^{Pi o st}) with A the ambient index set (default all)."""
    m, n = M.split()
    A = tuple(sorted(ambient)) if ambient is not None else tuple(range(1, m + n + 1))
    X = tuple(sorted(X))
    if not set(X) <= set(A):
        raise ValueError("X must lie in the ambient index set")
    if not X:
        return M.ring.one()
    MA = with_split(M.sub(A, A), sum(1 for a in A if a <= m), sum(1 for a in A if a > m))
    Ainv = matrix_series_inverse(MA)
    pos = [A.index(x) + 1 for x in X]
    a = sum(1 for x in X if x <= m)
    sub = with_split(Ainv.sub(pos, pos), a, len(X) - a)
    return ber(pi_st(sub), QInverted(_field(M)))


def jacobi_sides(M: SeriesMatrix, I):
    """(Ber_q(M), Ber_q(M_I) Ber_{q^{-1}}(((M^{-1})_{I^c})^{Pi o st}))."""
    m, n = M.split()
    if not _jacobi_admissible(I, m):
        raise HypothesisError(f"hypothesis not met: {sorted(I)} neither inside nor containing [m]")
    Ic = sorted(set(range(1, m + n + 1)) - set(I))
    return ber(M), minor_ber(M, I) * co_factor(M, Ic)


def _block_split_at(k: int, m: int, n: int):
    a = min(k, m)
    b = max(0, k - m)
    return (a, b), (m - a, n - b)


def schur_complement(M: SeriesMatrix, k: int) -> SeriesMatrix:
    """M22 - M21 M11^{-1} M12 with M11 the leading k x k block (M itself when k = 0)."""
    N = M.shape[0]
    if k == 0:
        return M
    head, tail = tuple(range(1, k + 1)), tuple(range(k + 1, N + 1))
    M11 = M.sub(head, head)
    return M.sub(tail, tail) - M.sub(tail, head) @ matrix_series_inverse(M11) @ M.sub(head, tail)


def schur_sides(M: SeriesMatrix, k: int):
    """(Ber_q(M), Ber_q(M11) Ber_q(M22 - M21 M11^{-1} M12)) with M11 of size k."""
    m, n = M.split()
    N = m + n
    if not 0 <= k <= N:
        raise ValueError("k must lie in 0..m+n")
    (a, b), (c, d) = _block_split_at(k, m, n)
    ring = M.ring
    left = ber(M)
    if k == 0:
        return left, ber(M)
    if k == N:
        return left, ber(M)
    head = tuple(range(1, k + 1))
    b11 = ber(with_split(M.sub(head, head), a, b))
    S = with_split(schur_complement(M, k), c, d)
    return left, b11 * ber(S)


def schur_corollary(M: SeriesMatrix) -> TruncSeries:
    """det_q(M11) det_{q^{-1}}(M22 - M21 M11^{-1} M12)^{-1} at k = m.

    det_q(M11) is column-ordered; det_{q^{-1}} of the odd Schur complement is
    row-ordered (see ``_row_qdet_qinv``).
    """
    m, n = M.split()
    ring = M.ring
    head = tuple(range(1, m + 1))
    d11 = qdet(M.sub(head, head)) if m else ring.one()
    if not n:
        return d11
    S = schur_complement(M, m) if m else M
    return d11 * _row_qdet_qinv(S).inverse()


def _row_qdet_qinv(S: SeriesMatrix) -> TruncSeries:
    """sum_sigma (-q)^{l(sigma)} S_{1,sigma(1)} ... S_{k,sigma(k)}.

    The odd Schur complement enters the k = m corollary row by row, matching
    the odd factor of the Berezinian; the column-ordered q^{-1}-determinant
    gives a different element once n >= 2.
    """
    k = S.shape[0]
    F = _field(S)
    ring = S.ring
    total = ring.zero()
    for s in itertools.permutations(range(1, k + 1)):
        term = _product(ring, (S[a + 1, s[a]] for a in range(k)))
        total = total + term.scale(_neg_q_power(F, perm_length(s)))
    return total


def psi_entries(N: SeriesMatrix, k: int) -> SeriesMatrix:
    """psi_k(M) as the Schur complement of the leading k x k block of N."""
    return schur_complement(N, k)


def sylvester_sides(k: int, m: int, n: int, D: int, field=EXACT):
    """Routes for psi_k(Ber_q(M)) and det_q(N^{1..k}_{1..k})^{-1} Ber_q(N).

    psi_k is an algebra map, so psi_k(Ber_q(M)) is the Berezinian formula on the
    image matrix psi_k(M).  The image is built twice: as the Schur complement of
    the leading k x k block of N, and as ((N^{-1})_{low})^{-1}.  Returns
    (via_schur, via_inverse, right_side).
    """
    amb = get_context(AlgebraSpec(RIGHT, k + m, n), field)
    N = generic_manin_series(amb, D)
    right = ber(N)
    if k:
        head = tuple(range(1, k + 1))
        right = qdet(N.sub(head, head)).inverse() * right
    S = with_split(psi_entries(N, k), m, n)
    tail = tuple(range(k + 1, k + m + n + 1))
    T = with_split(matrix_series_inverse(matrix_series_inverse(N).sub(tail, tail)), m, n)
    return ber(S), ber(T), right


# -- minor identity language ------------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    """Ber_q(M_I)^{exponent}, or with kind "co" the complement factor
    Ber_{q^{-1}}((((M_A)^{-1})_I)^{Pi o st}) for the ambient set A."""

    I: tuple
    exponent: int = 1
    kind: str = "ber"
    ambient: tuple | None = None

    def __post_init__(self):
        if self.exponent not in (1, -1):
            raise ValueError("exponent must be +1 or -1")
        if self.kind not in ("ber", "co"):
            raise ValueError("kind must be 'ber' or 'co'")

    def evaluate(self, M: SeriesMatrix) -> TruncSeries:
        if self.kind == "ber":
            v = minor_ber(M, self.I)
        else:
            v = co_factor(M, self.I, self.ambient)
        return v if self.exponent == 1 else v.inverse()


@dataclass(frozen=True)
class MinorIdentity:
    """sum_i b_i prod_j Factor_ij = 0, products taken left to right."""

    terms: tuple = ()

    def evaluate(self, M: SeriesMatrix) -> TruncSeries:
        ring = M.ring
        F = ring.field
        total = ring.zero()
        for coef, factors in self.terms:
            total = total + _product(ring, (f.evaluate(M) for f in factors)).scale(F(coef))
        return total

    def map_coeffs(self, fn) -> "MinorIdentity":
        return MinorIdentity(tuple((fn(c), fs) for c, fs in self.terms))


def _full(m: int, n: int) -> tuple:
    return tuple(range(1, m + n + 1))


def _power(factors: list, exponent: int) -> list:
    """(f_1 ... f_r)^{exponent} as a factor list."""
    if exponent == 1:
        return factors
    return [Factor(f.I, -f.exponent, f.kind, f.ambient) for f in reversed(factors)]


def _odd_condition(I, m: int, n: int) -> bool:
    odd = set(range(m + 1, m + n + 1))
    s = set(I)
    return s <= odd or odd <= s


def cayley(identity: MinorIdentity, m: int, n: int, stage: str = "final") -> MinorIdentity:
    """Cayley's complementary transform, b -> b(q^{-1}).

    The transform comes from substituting the q^{-1}-super Manin matrix
    (M^{-1})^{Pi o st} for M.  That substitution reverses products, sends
    Ber_q(M_J) to the complement factor of J ("dual" stage), and a complement
    factor co(X; A) to Ber_q(M_{A^c})^{-1} Ber_q(M_{X u A^c}).  The "final"
    stage then rewrites each complement factor of J by the Jacobi ratio as
    Ber_q(M_{J^c})^{-1} Ber_q(M).  Minor sets J must lie inside or contain
    [m+n] minus [m].
    """
    if stage not in ("final", "dual"):
        raise ValueError("stage must be 'final' or 'dual'")
    full = _full(m, n)
    terms = []
    for coef, factors in identity.terms:
        out = []
        for f in reversed(factors):
            if f.kind == "ber":
                if not _odd_condition(f.I, m, n):
                    raise HypothesisError(f"hypothesis not met: {sorted(f.I)}")
                Jc = tuple(sorted(set(full) - set(f.I)))
                image = ([Factor(Jc, -1), Factor(full)] if stage == "final"
                         else [Factor(tuple(f.I), 1, "co")])
            else:
                A = tuple(sorted(f.ambient)) if f.ambient is not None else full
                Ac = tuple(sorted(set(full) - set(A)))
                image = [Factor(Ac, -1), Factor(tuple(sorted(set(f.I) | set(Ac))))]
            out.extend(_power(image, f.exponent))
        terms.append((_invert_q(coef), tuple(out)))
    return MinorIdentity(tuple(terms))


def _invert_q(c):
    from .scalars import QScalar
    from fractions import Fraction

    if isinstance(c, (int, Fraction)):
        return c
    if isinstance(c, QScalar):
        return c.invert_q()
    raise TypeError("coefficients of minor identities must be exact scalars")


def muir(identity: MinorIdentity, I, m: int, n: int) -> MinorIdentity:
    """Ber_q(M_J) -> Ber_q(M_{J u I^c}) Ber_q(M_{I^c})^{-1} for J inside I (odd indices).

    A complement factor co(X; A) with A inside I becomes
    Ber_q(M_{I^c}) co(X; A u I^c) Ber_q(M_{I^c})^{-1}: the identity is read on
    the Schur complement of M_{I^c}, whose inverse blocks are blocks of the
    inverse of M_{A u I^c}.
    """
    I = tuple(sorted(I))
    if not set(I) <= set(range(m + 1, m + n + 1)):
        raise HypothesisError(f"hypothesis not met: {list(I)} is not inside [m+n] minus [m]")
    Ic = tuple(sorted(set(_full(m, n)) - set(I)))
    terms = []
    for coef, factors in identity.terms:
        out = []
        for f in factors:
            if f.kind == "ber":
                if not set(f.I) <= set(I):
                    raise HypothesisError(f"hypothesis not met: {sorted(f.I)} not inside {list(I)}")
                image = [Factor(tuple(sorted(set(f.I) | set(Ic)))), Factor(Ic, -1)]
                out.extend(_power(image, f.exponent))
            else:
                A = tuple(sorted(f.ambient)) if f.ambient is not None else _full(m, n)
                if not set(A) <= set(I):
                    raise HypothesisError(f"hypothesis not met: ambient {list(A)} not inside {list(I)}")
                amb = tuple(sorted(set(A) | set(Ic)))
                out.extend([Factor(Ic), Factor(tuple(f.I), f.exponent, "co", amb), Factor(Ic, -1)])
        terms.append((coef, tuple(out)))
    return MinorIdentity(tuple(terms))


def jacobi_seed(I, m: int, n: int, ambient=None, strict: bool = True) -> MinorIdentity:
    """Ber(M_A) - Ber(M_I) * co(A minus I) inside the ambient set A (default all).

    With ``strict`` the Jacobi hypothesis is enforced inside M_A: I contains,
    or lies inside, the even indices of A.
    """
    A = tuple(sorted(ambient)) if ambient is not None else _full(m, n)
    I = tuple(sorted(I))
    if not set(I) <= set(A):
        raise ValueError("I must lie in the ambient set")
    even = set(A) & set(range(1, m + 1))
    if strict and not (set(I) <= even or even <= set(I)):
        raise HypothesisError(f"hypothesis not met: {list(I)} against even part {sorted(even)}")
    rest = tuple(sorted(set(A) - set(I)))
    return MinorIdentity((
        (1, (Factor(A),)),
        (-1, (Factor(I), Factor(rest, 1, "co", A))),
    ))


# -- checks --------------------------------------------------------------------------------

def _series_ctx(m: int, n: int, D: int, field):
    ctx = get_context(AlgebraSpec(RIGHT, m, n), field)
    return generic_manin_series(ctx, D)


def _compare(name: str, a: TruncSeries, b: TruncSeries, **params) -> CheckResult:
    return from_residual(name, a - b, **params)


def ber_permutation_check(I, J, m: int, n: int, D: int, field=EXACT) -> CheckResult:
    M = _series_ctx(m, n, D, field)
    lhs, rhs = permutation_sides(M, I, J)
    return _compare("ber_permutation", lhs, rhs, m=m, n=n, D=D, I=list(I), J=list(J))


def pi_st_relation_check(m: int, n: int, D: int, field=EXACT) -> list[CheckResult]:
    """Ber_q(M^{Pi o st}) against Ber_{q^{-1}}(M^{-1}) and the trailing-minor decomposition."""
    M = _series_ctx(m, n, D, field)
    lhs = ber_pi_st(M)
    out = [_compare("pi_st_relation", lhs, ber_qinv_of_inverse(M), m=m, n=n, D=D),
           _compare("pi_st_explicit", lhs, ber_pi_st_explicit(M), m=m, n=n, D=D)]
    try:
        out.append(_compare("pi_st_decomposition", lhs, pi_st_decomposition_rhs(M), m=m, n=n, D=D))
    except QuasiDetUndefined as exc:
        out.append(skipped("pi_st_decomposition", f"undefined-in-model: {exc}", m=m, n=n, D=D))
    return out


def ber_inverse_check(m: int, n: int, D: int, field=EXACT) -> CheckResult:
    """Ber_q(M) = Ber_{q^{-1}}((M^{-1})^{Pi o st})."""
    M = _series_ctx(m, n, D, field)
    rhs = ber(pi_st(matrix_series_inverse(M)), QInverted(field))
    return _compare("ber_inverse", ber(M), rhs, m=m, n=n, D=D)


def quasidet_decomposition_check(m: int, n: int, D: int, field=EXACT) -> list[CheckResult]:
    """Explicit formula = quasideterminant decomposition = Schur corollary form."""
    M = _series_ctx(m, n, D, field)
    B = ber(M)
    params = dict(m=m, n=n, D=D)
    try:
        dec = _compare("quasidet_decomposition", B, decomposition_rhs(M), **params)
    except QuasiDetUndefined as exc:
        dec = skipped("quasidet_decomposition", f"undefined-in-model: {exc}", **params)
    return [dec, _compare("schur_corollary", B, schur_corollary(M), **params)]


def permuted_decomposition_check(I1, J1, I2, J2, m: int, n: int, D: int,
                                 field=EXACT) -> CheckResult:
    M = _series_ctx(m, n, D, field)
    params = dict(m=m, n=n, D=D, I1=list(I1), J1=list(J1), I2=list(I2), J2=list(J2))
    try:
        rhs = permuted_decomposition_rhs(M, I1, J1, I2, J2)
    except (QuasiDetUndefined, NotInvertible) as exc:
        return skipped("permuted_decomposition", f"undefined-in-model: {exc}", **params)
    return _compare("permuted_decomposition", ber(M), rhs, **params)


def jacobi_ratio_check(I, m: int, n: int, D: int, field=EXACT) -> CheckResult:
    M = _series_ctx(m, n, D, field)
    lhs, rhs = jacobi_sides(M, I)
    return _compare("jacobi_ratio", lhs, rhs, m=m, n=n, D=D, I=sorted(I))


def schur_complement_check(k: int, m: int, n: int, D: int, field=EXACT) -> CheckResult:
    M = _series_ctx(m, n, D, field)
    lhs, rhs = schur_sides(M, k)
    return _compare("schur_complement", lhs, rhs, m=m, n=n, D=D, k=k)


def minor_identity_check(identity: MinorIdentity, m: int, n: int, D: int, field=EXACT,
                         name: str = "minor_identity", **params) -> CheckResult:
    M = _series_ctx(m, n, D, field)
    return from_residual(name, identity.evaluate(M), m=m, n=n, D=D, **params)


def sylvester_check(k: int, m: int, n: int, D: int, field=EXACT) -> list[CheckResult]:
    params = dict(k=k, m=m, n=n, D=D)
    via_schur, via_inverse, right = sylvester_sides(k, m, n, D, field)
    out = [
        _compare("sylvester", via_schur, right, **params),
        _compare("sylvester_inverse_route", via_inverse, right, **params),
    ]
    # lemma: psi_k(M_ij) is the bordered quasideterminant, also ((N^{-1})_{low})^{-1}
    amb = get_context(AlgebraSpec(RIGHT, k + m, n), field)
    N = generic_manin_series(amb, D)
    S = psi_entries(N, k)
    Ninv = matrix_series_inverse(N)
    tail = tuple(range(k + 1, k + m + n + 1))
    inv_block = matrix_series_inverse(Ninv.sub(tail, tail))
    bad = []
    head = tuple(range(1, k + 1))
    for i in range(1, m + n + 1):
        for j in range(1, m + n + 1):
            border = N.sub(head + (k + i,), head + (k + j,))
            qd = quasideterminant(border, k + 1, k + 1)
            for other in (qd, inv_block[i, j]):
                r = S[i, j] - other
                if not r.is_zero():
                    bad.append(r)
    out.append(from_residual("sylvester_lemma", bad, **params))
    out.append(from_residual("sylvester_image_manin", manin_residual(with_split(S, m, n)),
                             **params))
    return out


def _rho_map(m: int, n: int, one):
    N = m + n

    def image(g):
        return NcPoly.gen(gen_M(N + 1 - g.row, N + 1 - g.col, n), one)
    return image


def left_quantum_morphism_check(m: int, n: int, field=EXACT, q_mode: str = "qinv") -> CheckResult:
    """rho: M_ij -> M°_{m+n-i+1, m+n-j+1} maps the right (m|n) relations onto the left (n|m) ones.

    Reversing the indices flips every eps(i - j), so the target left algebra
    carries q^{-1} in this package's P^q convention (``q_mode="qinv"``); the
    q-version is kept selectable as a negative control.
    """
    one = field.one
    right = relation_basis(AlgebraSpec(RIGHT, m, n), field)
    left = relation_basis(AlgebraSpec(LEFT, n, m, q_mode), field)
    img = [r.substitute(_rho_map(m, n, one), one).terms for r in right]
    equal, diff = span_equal(img, [r.terms for r in left], one)
    params = dict(m=m, n=n, q_mode=q_mode)
    if equal:
        return passed("left_quantum_morphism", **params)
    return failed("left_quantum_morphism", NcPoly(diff[0]), f"{len(diff)} discrepancy vectors",
                  **params)


# -- classical oracle ------------------------------------------------------------------------

def cofactor_det(A) -> object:
    """Laplace expansion along the first row (independent of any Berezinian code)."""
    k = len(A)
    if k == 0:
        return 1
    if k == 1:
        return A[0][0]
    total = 0
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
