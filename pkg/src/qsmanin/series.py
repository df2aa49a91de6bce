"""Truncated power series over a quotient algebra in a central even t.

The generic q-super Manin matrix of the series model is
M_ij = K_i(delta_ij + t Y_ij) over :class:`TwistedModel`; it is invertible,
so inverses, quasideterminants and Berezinians can be expanded order by
order.  The coefficient of t^d of every expression built from M has Y-degree
d, hence truncation at t^D needs a quotient degree cap of at least D.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .freesuper import K as KIND_K, Y as KIND_Y, NcPoly, format_expr, gen_K, gen_M
from .tensorcalc import star_power, supertrace, trace_of_symmetrized

__all__ = [
    "SeriesRing", "TruncSeries", "SeriesMatrix",
    "NotInvertible", "QuasiDetUndefined", "TwistedModel", "twisted_model",
    "manin_residual", "unit_inverse",
    "generic_manin_series", "matrix_series_inverse", "quasideterminant",
    "generating_series", "newton_check", "scalar_matrix", "default_trunc",
]


class NotInvertible(ArithmeticError):
    """Constant term is not an invertible scalar (matrix)."""


class QuasiDetUndefined(ArithmeticError):
    """Neither defining route of a quasideterminant exists in the model."""


def default_trunc(m: int, n: int) -> int:
    return {1: 6, 2: 4, 3: 3, 4: 2}.get(m + n, 1)


@dataclass(frozen=True)
class SeriesRing:
    """Truncation order D, coefficient field and (optional) quotient context.

    Without a context the coefficients live in the free algebra.
    """

    field: object
    D: int
    ctx: object = None

    def reduce(self, p: NcPoly) -> NcPoly:
        return self.ctx.normal_form(p) if self.ctx is not None and p.terms else p

    def zero(self) -> "TruncSeries":
        return TruncSeries(self, [NcPoly.zero()] * (self.D + 1), reduced=True)

    def one(self) -> "TruncSeries":
        return self.const(self.field.one)

    def const(self, c) -> "TruncSeries":
        return TruncSeries(self, [NcPoly.const(c)] + [NcPoly.zero()] * self.D, reduced=True)

    def from_poly(self, p: NcPoly, degree: int = 0) -> "TruncSeries":
        """p * t^degree."""
        coeffs = [NcPoly.zero()] * (self.D + 1)
        if degree <= self.D:
            coeffs[degree] = p
        return TruncSeries(self, coeffs)

    def truncated(self, D: int) -> "SeriesRing":
        return SeriesRing(self.field, D, self.ctx)


class TruncSeries:
    """sum_{d <= D} c_d t^d with c_d in normal form."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SeriesRing, coeffs: Sequence[NcPoly], reduced: bool = False):
        if len(coeffs) != ring.D + 1:
            raise ValueError("coefficient list does not match truncation order")
        self.ring = ring
        self.coeffs = list(coeffs) if reduced else [ring.reduce(c) for c in coeffs]

    @property
    def D(self) -> int:
        return self.ring.D

    def _wrap(self, other):
        if isinstance(other, TruncSeries):
            if other.ring != self.ring:
                raise ValueError("series from different rings")
            return other
        if isinstance(other, NcPoly):
            return self.ring.from_poly(other)
        return self.ring.const(other)

    def __add__(self, other):
        o = self._wrap(other)
        return TruncSeries(self.ring, [a + b for a, b in zip(self.coeffs, o.coeffs)], True)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.ring, [-a for a in self.coeffs], True)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def scale(self, s) -> "TruncSeries":
        return TruncSeries(self.ring, [a.scale(s) for a in self.coeffs], True)

    def __mul__(self, other):
        if not isinstance(other, (TruncSeries, NcPoly)):
            return self.scale(other)
        o = self._wrap(other)
        D = self.D
        out = []
        for d in range(D + 1):
            acc = NcPoly.zero()
            for i in range(d + 1):
                a, b = self.coeffs[i], o.coeffs[d - i]
                if a.terms and b.terms:
                    acc = acc + a * b
            out.append(acc)
        return TruncSeries(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, NcPoly):
            return self._wrap(other) * self
        return self.scale(other)

    def constant_scalar(self):
        """The t^0 coefficient if it is a scalar, else None."""
        c0 = self.coeffs[0]
        if any(w for w in c0.terms):
            return None
        return c0.terms.get((), self.ring.field.zero)

    def constant_unit_inverse(self):
        """Inverse of the t^0 coefficient when it is a unit monomial, else None."""
        return unit_inverse(self.coeffs[0], self.ring.field)

    def is_unit(self) -> bool:
        return self.constant_unit_inverse() is not None

    def inverse(self) -> "TruncSeries":
        inv0 = self.constant_unit_inverse()
        if inv0 is None:
            raise NotInvertible("not a unit in series model")
        ring = self.ring
        out = [inv0]
        for d in range(1, self.D + 1):
            acc = NcPoly.zero()
            for i in range(1, d + 1):
                a = self.coeffs[i]
                if a.terms and out[d - i].terms:
                    acc = acc + a * out[d - i]
            out.append(ring.reduce(-(inv0 * ring.reduce(acc))))
        return TruncSeries(ring, out, True)

    def derivative(self) -> "TruncSeries":
        """d/dt, dropping the unseen top order (result still has D+1 slots, last is 0)."""
        out = [self.coeffs[d + 1].scale(self.ring.field(d + 1)) for d in range(self.D)]
        return TruncSeries(self.ring, out + [NcPoly.zero()], True)

    def truncate(self, D: int) -> "TruncSeries":
        return TruncSeries(self.ring.truncated(D), self.coeffs[:D + 1], True)

    def is_zero(self, upto: int | None = None) -> bool:
        upto = self.D if upto is None else upto
        return not any(c.terms for c in self.coeffs[:upto + 1])

    def first_nonzero(self):
        for d, c in enumerate(self.coeffs):
            if c.terms:
                return d, format_expr(c)
        return None

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (TruncSeries, NcPoly, int)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return "TruncSeries(" + self.format() + ")"

    def format(self) -> str:
        parts = []
        for d, c in enumerate(self.coeffs):
            if c.terms:
                parts.append(f"t^{d}: {format_expr(c)}")
        return "; ".join(parts) if parts else "0"


class SeriesMatrix:
    """Square or rectangular matrix of TruncSeries with a parity profile."""

    def __init__(self, rows: list[list[TruncSeries]], row_par: Sequence[int],
                 col_par: Sequence[int] | None = None):
        self.rows = rows
        self.row_par = tuple(row_par)
        self.col_par = tuple(row_par if col_par is None else col_par)
        if len(rows) != len(self.row_par) or any(len(r) != len(self.col_par) for r in rows):
            raise ValueError("shape does not match parity profile")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_par), len(self.col_par)

    @property
    def ring(self) -> SeriesRing:
        return self.rows[0][0].ring

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    @classmethod
    def split_parities(cls, m: int, n: int) -> tuple:
        return (0,) * m + (1,) * n

    def split(self) -> tuple[int, int]:
        """(m, n) for a square matrix whose profile is even-then-odd."""
        p = self.row_par
        m = p.count(0)
        if p != (0,) * m + (1,) * (len(p) - m):
            raise ValueError("parity profile is not of the form (m|n)")
        return m, len(p) - m

    def sub(self, rows: Sequence[int], cols: Sequence[int]) -> "SeriesMatrix":
        """Submatrix on 1-based row and column labels (kept in the given order)."""
        return SeriesMatrix([[self.rows[i - 1][j - 1] for j in cols] for i in rows],
                            [self.row_par[i - 1] for i in rows],
                            [self.col_par[j - 1] for j in cols])

    def __matmul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        r, k = self.shape
        k2, c = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        ring = self.ring
        out = []
        for i in range(r):
            row = []
            for j in range(c):
                acc = ring.zero()
                for l in range(k):
                    a, b = self.rows[i][l], other.rows[l][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SeriesMatrix(out, self.row_par, other.col_par)

    def __add__(self, other):
        return SeriesMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
                            self.row_par, self.col_par)

    def __sub__(self, other):
        return SeriesMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
                            self.row_par, self.col_par)

    def __neg__(self):
        return SeriesMatrix([[-a for a in r] for r in self.rows], self.row_par, self.col_par)

    def is_identity(self) -> bool:
        r, c = self.shape
        one = self.ring.one()
        return r == c and all(self.rows[i][j] == (one if i == j else 0)
                              for i in range(r) for j in range(c))

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix) or self.shape != other.shape:
            return False
        return all(a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))

    __hash__ = None

    def constant_matrix(self) -> list[list[NcPoly]]:
        """Grid of t^0 coefficients."""
        return [[a.coeffs[0] for a in r] for r in self.rows]

    def inverse(self) -> "SeriesMatrix":
        return matrix_series_inverse(self)

    def map(self, f) -> "SeriesMatrix":
        return SeriesMatrix([[f(a) for a in r] for r in self.rows], self.row_par, self.col_par)

    def __repr__(self):
        return "SeriesMatrix(" + " | ".join(", ".join(a.format() for a in r) for r in self.rows) + ")"


def scalar_matrix(values, ring: SeriesRing, parities=None) -> SeriesMatrix:
    """Constant matrix (entries converted through ``ring.field``)."""
    F = ring.field
    rows = [[ring.const(F(v)) for v in r] for r in values]
    par = parities if parities is not None else (0,) * len(values)
    return SeriesMatrix(rows, par)


class TwistedModel:
    """Quotient algebra Y (relations of :func:`twisted_relations`) extended by a torus.

    The torus elements K_1..K_N and their inverses commute with each other
    and satisfy Y_ab K_x = q^{w(x;a,b)} K_x Y_ab (see ``torus_weight``).
    Normal form: a canonical torus monomial followed by a reduced Y word.
    """

    def __init__(self, m: int, n: int, field, degree_cap: int | None = None):
        from .quotient import TWISTED, AlgebraSpec, get_context

        self.ctx = get_context(AlgebraSpec(TWISTED, m, n), field, degree_cap)
        self.field = field
        self.m, self.n = m, n
        self.degree_cap = self.ctx.degree_cap

    @property
    def one(self):
        return self.field.one

    def __eq__(self, other):
        return isinstance(other, TwistedModel) and other.ctx is self.ctx

    def __hash__(self):
        return hash(("twisted", id(self.ctx)))

    def _split(self, w, c):
        from .quotient import torus_weight

        N = self.m + self.n
        kexp = [0] * N
        ys = []
        power = 0
        for g in w:
            if g.kind == KIND_K:
                power += g.col * sum(torus_weight(g.row, y.row, y.col) for y in ys)
                kexp[g.row - 1] += g.col
            else:
                ys.append(g)
        if power:
            c = c * self.field.q_power(power)
        return tuple(kexp), tuple(ys), c

    @staticmethod
    def torus_word(kexp) -> tuple:
        out = []
        for i, e in enumerate(kexp, 1):
            out.extend([gen_K(i, 1 if e > 0 else -1)] * abs(e))
        return tuple(out)

    def normal_form(self, p: NcPoly) -> NcPoly:
        if not p.terms:
            return p
        groups: dict = {}
        for w, c in p.terms.items():
            kexp, ys, c = self._split(w, c)
            g = groups.setdefault(kexp, {})
            v = g.get(ys)
            v = c if v is None else v + c
            if v:
                g[ys] = v
            else:
                g.pop(ys, None)
        out = {}
        for kexp, vec in groups.items():
            if not vec:
                continue
            red = self.ctx.normal_form(NcPoly._raw(vec))
            pre = self.torus_word(kexp)
            for w, c in red.terms.items():
                out[pre + w] = c
        return NcPoly._raw(out)


def generic_manin_series(ctx, D: int, ring: SeriesRing | None = None,
                         model: str = "twisted") -> SeriesMatrix:
    """Generic invertible q-super Manin matrix over the series ring.

    ``model`` "twisted" (default) gives M_ij = K_i(delta_ij + t Y_ij) over a
    :class:`TwistedModel`; "naive" gives 1 + tZ over ``ctx`` itself, which is
    a q-super Manin matrix only at q = 1.
    """
    if D < 1:
        raise ValueError("truncation order must be at least 1")
    if D > ctx.degree_cap:
        from .quotient import DegreeOverflow
        raise DegreeOverflow(D, ctx.degree_cap)
    m, n, one = ctx.m, ctx.n, ctx.one
    N = m + n
    if model == "naive":
        ring = ring or SeriesRing(ctx.field, D, ctx)
        gen = lambda i, j: NcPoly.gen(gen_M(i, j, m), one)
        left = lambda i: None
    elif model == "twisted":
        tm = twisted_model(m, n, ctx.field, ctx.degree_cap)
        ring = ring or SeriesRing(ctx.field, D, tm)
        gen = lambda i, j: NcPoly.gen(gen_M(i, j, m, kind=KIND_Y), one)
        left = lambda i: NcPoly.gen(gen_K(i), one)
    else:
        raise ValueError("model must be 'twisted' or 'naive'")
    rows = []
    for i in range(1, N + 1):
        row = []
        for j in range(1, N + 1):
            s = ring.from_poly(gen(i, j), 1)
            if i == j:
                s = s + ring.one()
            k = left(i)
            if k is not None:
                s = TruncSeries(ring, [k * c for c in s.coeffs])
            row.append(s)
        rows.append(row)
    return SeriesMatrix(rows, SeriesMatrix.split_parities(m, n))


_MODELS: dict = {}


def twisted_model(m: int, n: int, field, degree_cap: int | None = None) -> TwistedModel:
    key = (m, n, field, degree_cap)
    tm = _MODELS.get(key)
    if tm is None:
        tm = _MODELS[key] = TwistedModel(m, n, field, degree_cap)
    return tm


def manin_residual(M: SeriesMatrix) -> list[NcPoly]:
    """Nonzero reduced entries of (1-P)M_1M_2(1+P), all t-orders."""
    from .tensorcalc import EndTensor, build_swap, embed_matrix

    m, n = M.split()
    ring = M.ring
    F = ring.field
    N = m + n
    P = build_swap(m, n, F)
    Id = EndTensor.identity(2, m, n, F.one)
    coef = [{(i + 1, j + 1): M.rows[i][j].coeffs[d] for i in range(N) for j in range(N)
             if M.rows[i][j].coeffs[d].terms} for d in range(ring.D + 1)]
    out = []
    for d in range(ring.D + 1):
        X = None
        for e in range(d + 1):
            if not coef[e] or not coef[d - e]:
                continue
            term = embed_matrix(coef[e], 1, 2, m, n) @ embed_matrix(coef[d - e], 2, 2, m, n)
            X = term if X is None else X + term
        if X is None:
            continue
        T = (Id - P) @ X @ (Id + P)
        for v in T.entries.values():
            if isinstance(v, NcPoly):
                v = ring.reduce(v)
                if v.terms:
                    out.append(v)
            elif v:
                out.append(NcPoly.const(v))
    return out


def unit_inverse(p: NcPoly, field):
    """Inverse of c * (word of torus elements), or None if p is not such a unit.

    Torus elements commute with each other, so the inverse is the word of
    inverse factors (in any order) with coefficient 1/c.
    """
    if len(p.terms) != 1:
        return None
    (w, c), = p.terms.items()
    if not c or any(g.kind != KIND_K for g in w):
        return None
    return NcPoly({tuple(g._replace(col=-g.col) for g in reversed(w)): field.one / c})


def _constant_inverse(C, ring: SeriesRing):
    """Gauss-Jordan over the commutative ring of torus Laurent monomials.

    Pivots must be unit monomials; otherwise the matrix is reported as not
    invertible in the model.
    """
    k = len(C)
    red = ring.reduce
    zero = NcPoly.zero()
    one = NcPoly.const(ring.field.one)
    A = [list(r) + [one if i == j else zero for j in range(k)] for i, r in enumerate(C)]
    for col in range(k):
        piv = inv = None
        for r in range(col, k):
            inv = unit_inverse(A[r][col], ring.field)
            if inv is not None:
                piv = r
                break
        if piv is None:
            if any(A[r][col].terms for r in range(col, k)):
                raise NotInvertible("not invertible in series model: pivot is not a unit")
            raise NotInvertible("not invertible in series model: singular constant term")
        A[col], A[piv] = A[piv], A[col]
        A[col] = [red(inv * x) if x.terms else x for x in A[col]]
        for r in range(k):
            f = A[r][col]
            if r != col and f.terms:
                A[r] = [red(x - f * y) if (x.terms or y.terms) else x
                        for x, y in zip(A[r], A[col])]
    return [row[k:] for row in A]


def matrix_series_inverse(A: SeriesMatrix) -> SeriesMatrix:
    """Two-sided inverse mod t^{D+1}; the constant term must be invertible in the model."""
    r, c = A.shape
    if r != c:
        raise NotInvertible("not invertible in series model: matrix is not square")
    ring = A.ring
    red = ring.reduce
    Cinv = _constant_inverse(A.constant_matrix(), ring)
    k = r
    Ad = [[[A.rows[i][j].coeffs[d] for j in range(k)] for i in range(k)] for d in range(ring.D + 1)]
    B = [Cinv]
    for d in range(1, ring.D + 1):
        # A_0 B_d = -sum_{i>=1} A_i B_{d-i}
        S = [[NcPoly.zero() for _ in range(k)] for _ in range(k)]
        for i in range(1, d + 1):
            Ai, Bi = Ad[i], B[d - i]
            for a in range(k):
                for b in range(k):
                    acc = S[a][b]
                    for l in range(k):
                        x, y = Ai[a][l], Bi[l][b]
                        if x.terms and y.terms:
                            acc = acc + x * y
                    S[a][b] = acc
        S = [[red(v) for v in row] for row in S]
        Bd = []
        for a in range(k):
            row = []
            for b in range(k):
                acc = NcPoly.zero()
                for l in range(k):
                    if Cinv[a][l].terms and S[l][b].terms:
                        acc = acc - Cinv[a][l] * S[l][b]
                row.append(red(acc))
            Bd.append(row)
        B.append(Bd)
    rows = [[TruncSeries(ring, [B[d][i][j] for d in range(ring.D + 1)], True) for j in range(k)]
            for i in range(k)]
    return SeriesMatrix(rows, A.col_par, A.row_par)


def _minor_route(A: SeriesMatrix, i: int, j: int):
    r, _ = A.shape
    rows = [a for a in range(1, r + 1) if a != i]
    cols = [b for b in range(1, r + 1) if b != j]
    if not rows:
        return A[i, j]
    sub = A.sub(rows, cols)
    inv = matrix_series_inverse(sub)
    rvec = A.sub([i], cols)
    cvec = A.sub(rows, [j])
    return A[i, j] - (rvec @ inv @ cvec)[1, 1]


def _inverse_route(A: SeriesMatrix, i: int, j: int):
    inv = matrix_series_inverse(A)
    return inv[j, i].inverse()


def quasideterminant(A: SeriesMatrix, i: int, j: int, check: bool = True) -> TruncSeries:
    """|A|_{ij}, computed by the definition and by ((A^{-1})_{ji})^{-1}.

    When both routes exist their agreement is asserted.
    """
    r, c = A.shape
    if r != c or not (1 <= i <= r and 1 <= j <= r):
        raise ValueError("quasideterminant needs a square matrix and valid indices")
    first = second = None
    try:
        first = _minor_route(A, i, j)
    except NotInvertible:
        pass
    if check or first is None:
        try:
            second = _inverse_route(A, i, j)
        except NotInvertible:
            pass
    if first is None and second is None:
        raise QuasiDetUndefined(f"quasideterminant |A|_{i}{j} is undefined-in-model")
    if first is not None and second is not None and first != second:
        raise AssertionError(f"quasideterminant routes disagree at ({i},{j})")
    return first if first is not None else second


# -- generating series --------------------------------------------------------------

def generating_series(ctx, D: int) -> tuple[TruncSeries, TruncSeries, TruncSeries]:
    """(S, A, T) through t^D for the generator matrix of ``ctx``."""
    if D + 1 > ctx.degree_cap:
        from .quotient import DegreeOverflow
        raise DegreeOverflow(D + 1, ctx.degree_cap)
    ring = SeriesRing(ctx.field, D, ctx)
    Scoef, Acoef, Tcoef = [], [], []
    for k in range(D + 1):
        Scoef.append(trace_of_symmetrized(k, ctx, "H"))
        a = trace_of_symmetrized(k, ctx, "A")
        Acoef.append(-a if k % 2 else a)
    powers = star_powers(ctx, D + 1)
    for k in range(D + 1):
        Tcoef.append(powers_trace(powers[k + 1], ctx))
    return (TruncSeries(ring, Scoef, True), TruncSeries(ring, Acoef, True),
            TruncSeries(ring, Tcoef, True))


def star_powers(ctx, kmax: int) -> list[dict]:
    """[M^{[0]}, ..., M^{[kmax]}] with entries in normal form."""
    from .tensorcalc import generator_matrix, star_product

    m, n, F = ctx.m, ctx.n, ctx.field
    M = generator_matrix(m, n, F.one)
    out = [{(i, i): NcPoly.const(F.one) for i in range(1, m + n + 1)}, M]
    for _ in range(2, kmax + 1):
        nxt = star_product(out[-1], M, m, n, F)
        out.append({ij: ctx.normal_form(v) for ij, v in nxt.items() if v})
    return out[:kmax + 1]


def powers_trace(B: dict, ctx) -> NcPoly:
    m = ctx.m
    total = NcPoly.zero()
    for (i, j), v in B.items():
        if i == j:
            total = total + (-v if i > m else v)
    return ctx.normal_form(total)


def newton_check(ctx, D: int) -> dict:
    """Residuals of dA = -AT, dS = TS, AS = 1, SA = 1 and the trace recursion."""
    S, A, T = generating_series(ctx, D)
    one = S.ring.one()
    res = {
        "AS=1": A * S - one,
        "SA=1": S * A - one,
        # the derivative sees orders 0..D-1 only
        "dA=-AT": (A.derivative() + A * T).truncate(D - 1),
        "dS=TS": (S.derivative() - T * S).truncate(D - 1),
    }
    powers = star_powers(ctx, D)
    a = [trace_of_symmetrized(i, ctx, "A") for i in range(D + 1)]
    trM = [powers_trace(p, ctx) for p in powers]
    rec = []
    F = ctx.field
    for k in range(1, D + 1):
        rhs = NcPoly.zero()
        for i in range(k):
            term = ctx.normal_form(a[i] * trM[k - i])
            rhs = rhs + (term if (k + i + 1) % 2 == 0 else -term)
        rec.append(ctx.normal_form(a[k].scale(F(k)) - rhs))
    res["recursion"] = rec
    return res
