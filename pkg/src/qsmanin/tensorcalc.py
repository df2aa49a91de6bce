"""Operator calculus on the k-fold tensor power of the (m|n)-graded space.

Storage convention
------------------
An operator is stored as a matrix ``Z`` indexed by pairs of multi-indices
(U, V) in [m+n]^k.  For a scalar even operator this is just its matrix in
the basis e_U = e_{u_1} (x) ... (x) e_{u_k}, where tensor products of
operators act with the Koszul rule (A (x) B)(v (x) w) = (-1)^{|B||v|} Av (x) Bw.

An algebra-valued operator sum_{U,V} c_{UV} (x) e_{UV} (c_{UV} of parity
|U| + |V|, e_{UV} the matrix unit on the whole tensor power) is stored as
Z_{UV} = (-1)^{|U||V| + |V|} c_{UV}.  With this twist, products of such
operators are ordinary matrix products with the algebra entries multiplied
in order, and for k = 1 the generator matrix M = sum (-1)^{ij + j} M_ij (x) E_ij
is stored as the plain matrix (M_ij).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Iterable

from .freesuper import M as KIND_M, NcPoly, bar, gen_M

__all__ = [
    "EndTensor", "eps", "multi_parity", "kappa",
    "build_swap", "local_swap", "reduced_word", "perm_compose", "perm_inverse",
    "perm_sign", "perm_length", "perm_act_on_index", "perm_operator",
    "symmetrizers", "antisymmetrizer", "symmetrizer",
    "symmetrizer_recursions_check", "embed_generators", "embed_matrix",
    "partial_supertrace", "supertrace", "star_product", "star_power",
    "eps_weight", "omega_weight", "eps_weight_inversions",
    "omega_weight_inversions", "gamma", "generator_matrix", "abstract_unit",
    "p_act_check", "all_multi_indices",
    "generator_product", "reduce_operator", "compression_check", "macmahon_sum",
    "trace_of_symmetrized", "explicit_trace_formula",
]


def eps(d: int) -> int:
    return (d > 0) - (d < 0)


def multi_parity(U, m: int) -> int:
    return sum(bar(u, m) for u in U) % 2


def kappa(U, V, m: int) -> int:
    """Sign relating E_{u1 v1} (x) ... (x) E_{uk vk} to the matrix unit e_{UV}."""
    s = 0
    acc = 0
    for u, v in zip(U, V):
        s ^= ((bar(u, m) + bar(v, m)) * acc) & 1
        acc ^= bar(v, m)
    return -1 if s else 1


def all_multi_indices(k: int, N: int):
    return list(itertools.product(range(1, N + 1), repeat=k))


@dataclass
class EndTensor:
    """Sparse operator on (C^{m|n})^{(x) k} with scalar or NcPoly entries."""

    k: int
    m: int
    n: int
    entries: dict = dc_field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.m + self.n

    @classmethod
    def identity(cls, k: int, m: int, n: int, one) -> "EndTensor":
        return cls(k, m, n, {(U, U): one for U in all_multi_indices(k, m + n)})

    @classmethod
    def zero(cls, k: int, m: int, n: int) -> "EndTensor":
        return cls(k, m, n, {})

    def _same_shape(self, other: "EndTensor"):
        if (self.k, self.m, self.n) != (other.k, other.m, other.n):
            raise ValueError("operators live on different tensor powers")

    def __add__(self, other: "EndTensor") -> "EndTensor":
        self._same_shape(other)
        out = dict(self.entries)
        for key, v in other.entries.items():
            out[key] = out[key] + v if key in out else v
        return EndTensor(self.k, self.m, self.n, {a: b for a, b in out.items() if b})

    def __neg__(self):
        return EndTensor(self.k, self.m, self.n, {a: -b for a, b in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "EndTensor":
        out = {}
        for key, v in self.entries.items():
            w = v * s if not isinstance(v, NcPoly) else v.scale(s)
            if w:
                out[key] = w
        return EndTensor(self.k, self.m, self.n, out)

    def __matmul__(self, other: "EndTensor") -> "EndTensor":
        self._same_shape(other)
        by_row: dict = {}
        for (W, V), b in other.entries.items():
            by_row.setdefault(W, []).append((V, b))
        out: dict = {}
        for (U, W), a in self.entries.items():
            for V, b in by_row.get(W, ()):
                p = a * b
                if not p:
                    continue
                key = (U, V)
                out[key] = out[key] + p if key in out else p
        return EndTensor(self.k, self.m, self.n, {a: b for a, b in out.items() if b})

    def map(self, f: Callable) -> "EndTensor":
        out = {}
        for key, v in self.entries.items():
            w = f(v)
            if w:
                out[key] = w
        return EndTensor(self.k, self.m, self.n, out)

    def get(self, U, V, default=0):
        return self.entries.get((tuple(U), tuple(V)), default)

    def is_zero(self) -> bool:
        return not any(self.entries.values())

    def __eq__(self, other):
        if not isinstance(other, EndTensor):
            return NotImplemented
        if (self.k, self.m, self.n) != (other.k, other.m, other.n):
            return False
        return (self - other).is_zero()

    __hash__ = None

    def as_matrix(self) -> dict:
        """For k = 1: {(i, j): entry}."""
        if self.k != 1:
            raise ValueError("as_matrix needs k = 1")
        return {(U[0], V[0]): v for (U, V), v in self.entries.items()}


# -- the swap operator and permutations ----------------------------------------

def _swap_coeff(x: int, y: int, m: int, field):
    """P(e_x (x) e_y) = coeff * e_y (x) e_x."""
    c = field.q_power(eps(y - x))
    return -c if bar(x, m) & bar(y, m) else c


def build_swap(m: int, n: int, field) -> EndTensor:
    """The q-deformed super permutation operator on two tensor slots."""
    if m + n < 1:
        raise ValueError("need m + n >= 1")
    N = m + n
    return EndTensor(2, m, n, {
        ((y, x), (x, y)): _swap_coeff(x, y, m, field)
        for x in range(1, N + 1) for y in range(1, N + 1)
    })


def local_swap(a: int, k: int, m: int, n: int, field) -> EndTensor:
    """P_{a,a+1} acting on slots a, a+1 (1-based) of k slots."""
    if not 1 <= a < k:
        raise ValueError("slot out of range")
    out = {}
    for U in all_multi_indices(k, m + n):
        x, y = U[a - 1], U[a]
        V = U[:a - 1] + (y, x) + U[a + 1:]
        out[(V, U)] = _swap_coeff(x, y, m, field)
    return EndTensor(k, m, n, out)


def perm_compose(s, t):
    """(s t)(x) = s(t(x)); permutations are tuples of 1-based images."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


def perm_inverse(s):
    inv = [0] * len(s)
    for i, si in enumerate(s, 1):
        inv[si - 1] = i
    return tuple(inv)


def perm_length(s) -> int:
    return sum(1 for a in range(len(s)) for b in range(a + 1, len(s)) if s[a] > s[b])


def perm_sign(s) -> int:
    return -1 if perm_length(s) % 2 else 1


def reduced_word(s) -> list[int]:
    """Indices i_1..i_l with s = s_{i_1} ... s_{i_l}, l = length(s)."""
    s = tuple(s)
    word: list[int] = []
    while True:
        for i in range(len(s) - 1):
            if s[i] > s[i + 1]:
                # s = (s s_i) s_i with shorter s s_i
                s = s[:i] + (s[i + 1], s[i]) + s[i + 2:]
                word.append(i + 1)
                break
        else:
            return word[::-1]


def perm_act_on_index(s, I):
    """(s . I)_a = I_{s^{-1}(a)}."""
    inv = perm_inverse(s)
    return tuple(I[inv[a] - 1] for a in range(len(I)))


def _apply_word(word, U, m, field, one):
    """P_{i_1} ... P_{i_l} e_U as (coefficient, multi-index)."""
    c = one
    U = list(U)
    for i in reversed(word):
        x, y = U[i - 1], U[i]
        c = c * _swap_coeff(x, y, m, field)
        U[i - 1], U[i] = y, x
    return c, tuple(U)


def perm_operator(s, k: int, m: int, n: int, field, word=None) -> EndTensor:
    """P_sigma built from a reduced word (or the word supplied)."""
    if sorted(s) != list(range(1, k + 1)):
        raise ValueError("not a permutation of 1..k")
    word = reduced_word(s) if word is None else list(word)
    out = {}
    for U in all_multi_indices(k, m + n):
        c, V = _apply_word(word, U, m, field, field.one)
        out[(V, U)] = c
    return EndTensor(k, m, n, out)


def _sym_sum(k: int, m: int, n: int, field, signed: bool, slots=None) -> EndTensor:
    """(1/|S|) sum over permutations of ``slots`` of (sgn) P_sigma."""
    slots = list(range(1, k + 1)) if slots is None else list(slots)
    r = len(slots)
    if r == 0:
        return EndTensor.identity(k, m, n, field.one)
    if slots != list(range(slots[0], slots[0] + r)):
        raise ValueError("slots must be consecutive")
    off = slots[0] - 1
    inv_fact = field.one / field(math.factorial(r))
    out: dict = {}
    for p in itertools.permutations(range(1, r + 1)):
        word = [i + off for i in reduced_word(p)]
        sgn = perm_sign(p) if signed else 1
        for U in all_multi_indices(k, m + n):
            c, V = _apply_word(word, U, m, field, field.one)
            if sgn < 0:
                c = -c
            key = (V, U)
            out[key] = out[key] + c if key in out else c
    return EndTensor(k, m, n, {a: b * inv_fact for a, b in out.items() if b})


@lru_cache(maxsize=None)
def antisymmetrizer(k: int, m: int, n: int, field, slots: tuple | None = None) -> EndTensor:
    return _sym_sum(k, m, n, field, True, slots)


@lru_cache(maxsize=None)
def symmetrizer(k: int, m: int, n: int, field, slots: tuple | None = None) -> EndTensor:
    return _sym_sum(k, m, n, field, False, slots)


def symmetrizers(k: int, m: int, n: int, field) -> tuple[EndTensor, EndTensor]:
    """(A_k, H_k), the q-antisymmetrizer and q-symmetrizer."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return antisymmetrizer(k, m, n, field), symmetrizer(k, m, n, field)


def symmetrizer_recursions_check(k: int, r: int, m: int, n: int, field) -> dict:
    """The three recursions relating symmetrizers of consecutive sizes.

    * k A_k = A_{k-1} - (k-1) A_{k-1} P_{k-1,k} A_{k-1}
    * (r+1) H_{r+1} = H_r + r H_r P_{r,r+1} H_r        (inside k slots)
    * (k-r+1) A_{r..k} = A_{r+1..k} - (k-r) A_{r+1..k} P_{r,r+1} A_{r+1..k}
    """
    if not (2 <= k and 1 <= r < k):
        raise ValueError("need k >= 2 and 1 <= r < k")
    F = field
    A = lambda sl: antisymmetrizer(k, m, n, F, tuple(sl))
    H = lambda sl: symmetrizer(k, m, n, F, tuple(sl))
    res = {}
    Ak1 = A(range(1, k))
    P = local_swap(k - 1, k, m, n, F)
    res["antisym"] = A(range(1, k + 1)).scale(F(k)) == Ak1 - (Ak1 @ P @ Ak1).scale(F(k - 1))
    Hr = H(range(1, r + 1))
    P = local_swap(r, k, m, n, F)
    res["sym"] = H(range(1, r + 2)).scale(F(r + 1)) == Hr + (Hr @ P @ Hr).scale(F(r))
    Ar1 = A(range(r + 1, k + 1))
    res["antisym_tail"] = (A(range(r, k + 1)).scale(F(k - r + 1))
                           == Ar1 - (Ar1 @ P @ Ar1).scale(F(k - r)))
    return res


# -- algebra-valued operators ----------------------------------------------------

def embed_matrix(B: dict, a: int, k: int, m: int, n: int) -> EndTensor:
    """B_a = sum (-1)^{ij + j} B_ij (x) 1 .. E_ij (slot a) .. 1, stored form.

    ``B`` maps (i, j) to an entry of parity i + j (absent means zero).
    """
    if not 1 <= a <= k:
        raise ValueError("slot out of range")
    N = m + n
    out = {}
    for (i, j), b in B.items():
        if not b:
            continue
        bi, bj = bar(i, m), bar(j, m)
        base = (bi * bj + bj) & 1
        for pre in itertools.product(range(1, N + 1), repeat=a - 1):
            pp = multi_parity(pre, m)
            s1 = base ^ (((bi + bj) * pp) & 1)
            for post in itertools.product(range(1, N + 1), repeat=k - a):
                U = pre + (i,) + post
                V = pre + (j,) + post
                pu, pv = multi_parity(U, m), multi_parity(V, m)
                s = s1 ^ ((pu * pv + pv) & 1)
                out[(U, V)] = -b if s else b
    return EndTensor(k, m, n, out)


def generator_matrix(m: int, n: int, one, factor: int = 0, kind: int = KIND_M) -> dict:
    N = m + n
    return {(i, j): NcPoly.gen(gen_M(i, j, m, factor, kind), one)
            for i in range(1, N + 1) for j in range(1, N + 1)}


def embed_generators(a: int, k: int, m: int, n: int, one, factor: int = 0) -> EndTensor:
    """M_a for the generator matrix of the right quantum superalgebra."""
    return embed_matrix(generator_matrix(m, n, one, factor), a, k, m, n)


def partial_supertrace(T: EndTensor, a: int) -> EndTensor:
    """str_a: contract slot a with the sign (-1)^{c} on the diagonal index c."""
    if not 1 <= a <= T.k:
        raise ValueError("slot out of range")
    m = T.m
    out: dict = {}
    for (U, V), z in T.entries.items():
        c = U[a - 1]
        if V[a - 1] != c:
            continue
        U2 = U[:a - 1] + U[a:]
        V2 = V[:a - 1] + V[a:]
        pu, pv = multi_parity(U, m), multi_parity(V, m)
        pu2, pv2 = multi_parity(U2, m), multi_parity(V2, m)
        s = (pu * pv + pv + pu2 * pv2 + pv2 + bar(c, m)) & 1
        s ^= (kappa(U, V, m) < 0) ^ (kappa(U2, V2, m) < 0)
        val = -z if s else z
        key = (U2, V2)
        out[key] = out[key] + val if key in out else val
    return EndTensor(T.k - 1, T.m, T.n, {x: y for x, y in out.items() if y})


def supertrace(T: EndTensor):
    """Full supertrace over all k slots (returns an entry, not an operator)."""
    total = None
    for (U, V), z in T.entries.items():
        if U != V:
            continue
        val = -z if multi_parity(U, T.m) else z
        total = val if total is None else total + val
    return total if total is not None else 0


def star_product(B: dict, C: dict, m: int, n: int, field) -> dict:
    """B * C = str_1 P_12 B_1 C_2, as a matrix {(i, j): entry}."""
    P = build_swap(m, n, field)
    prod = P @ embed_matrix(B, 1, 2, m, n) @ embed_matrix(C, 2, 2, m, n)
    return partial_supertrace(prod, 1).as_matrix()


def star_power(B: dict, k: int, m: int, n: int, field) -> dict:
    """B^{[k]} with B^{[0]} the identity matrix."""
    N = m + n
    out = {(i, i): field.one for i in range(1, N + 1)}
    for step in range(k):
        out = dict(B) if step == 0 else star_product(out, B, m, n, field)
    return out


# -- multi-index combinatorics ---------------------------------------------------

def _inversion_q(s, K, m: int, field, rows: bool):
    """q-power and even-even sign collected over the inversion set of s."""
    c = field.one
    e = 0
    k = len(s)
    for a in range(k):
        for b in range(a + 1, k):
            if s[a] > s[b]:
                d = K[b] - K[a] if rows else K[a] - K[b]
                c = c * field.q_power(eps(d))
                e += bar(K[a], m) * bar(K[b], m)
    return c, e


def eps_weight(s, I, J, m: int, field):
    """The coefficient in P_sigma E_{I J} = eps(sigma, I, J) E_{sigma I, J}.

    Each adjacent crossing of rows x, y at slots (p, p+1) costs
    q^{eps(y-x)} (-1)^{xy + j_p (x+y)}; summing the j_p terms over a reduced
    word telescopes into prefix parities of I and sigma I.
    """
    c, e = _inversion_q(s, I, m, field, rows=True)
    sI = perm_act_on_index(s, I)
    acc = 0
    for p in range(len(s) - 1):
        acc += bar(I[p], m) + bar(sI[p], m)
        e += bar(J[p], m) * acc
    return -c if e & 1 else c


def omega_weight(s, I, J, m: int, field):
    """The coefficient in E_{I J} P_{sigma^{-1}} = omega(sigma, I, J) E_{I, sigma J}."""
    c, e = _inversion_q(s, J, m, field, rows=False)
    sJ = perm_act_on_index(s, J)
    acc = 0
    for p in range(len(s) - 1):
        acc += bar(J[p], m) + bar(sJ[p], m)
        e += bar(I[p + 1], m) * acc
    return -c if e & 1 else c


def eps_weight_inversions(s, I, J, m: int, field):
    """Per-inversion product prod q^{eps(i_t-i_k)} (-1)^{i_k i_t + j_k (i_k + i_t)}.

    Agrees with :func:`eps_weight` for k <= 2 and for many larger cases,
    but not in general (the sign of a crossing depends on the slot where it
    happens, not on the original position).
    """
    c = field.one
    k = len(s)
    for a in range(k):
        for b in range(a + 1, k):
            if s[a] > s[b]:
                ia, ib, ja = bar(I[a], m), bar(I[b], m), bar(J[a], m)
                c = c * field.q_power(eps(I[b] - I[a]))
                if (ia * ib + ja * (ia + ib)) & 1:
                    c = -c
    return c


def omega_weight_inversions(s, I, J, m: int, field):
    """Per-inversion product prod q^{eps(j_k-j_t)} (-1)^{j_k j_t + i_t (j_k + j_t)}."""
    c = field.one
    k = len(s)
    for a in range(k):
        for b in range(a + 1, k):
            if s[a] > s[b]:
                ja, jb, ib = bar(J[a], m), bar(J[b], m), bar(I[b], m)
                c = c * field.q_power(eps(J[a] - J[b]))
                if (ja * jb + ib * (ja + jb)) & 1:
                    c = -c
    return c


def gamma(I, J, m: int) -> int:
    g = sum(bar(i, m) * bar(j, m) for i, j in zip(I, J))
    p = [bar(i, m) + bar(j, m) for i, j in zip(I, J)]
    g += sum(p[a] * p[b] for a in range(len(p)) for b in range(a + 1, len(p)))
    return g % 2


def abstract_unit(I, J, m: int, n: int, one) -> EndTensor:
    """E_{i1 j1} (x) ... (x) E_{ik jk} as a plain scalar matrix on the tensor power."""
    return EndTensor(len(I), m, n, {(tuple(I), tuple(J)): one if kappa(I, J, m) > 0 else -one})


def p_act_check(s, I, J, m: int, n: int, field) -> tuple[bool, bool]:
    """Check both permutation-action formulas on one elementary tensor.

    Scalar matrices here are plain (unsigned) matrices, since the matrix
    units involved may be odd.
    """
    k = len(s)
    E = abstract_unit(I, J, m, n, field.one)
    sI = perm_act_on_index(s, I)
    sJ = perm_act_on_index(s, J)
    left = perm_operator(s, k, m, n, field) @ E
    right = abstract_unit(sI, J, m, n, field.one).scale(eps_weight(s, I, J, m, field))
    left2 = E @ perm_operator(perm_inverse(s), k, m, n, field)
    right2 = abstract_unit(I, sJ, m, n, field.one).scale(omega_weight(s, I, J, m, field))
    return left == right, left2 == right2


# -- theorems over a quotient algebra --------------------------------------------

_PRODUCT_CACHE: dict = {}


def generator_product(k: int, ctx) -> EndTensor:
    """M_1 M_2 ... M_k for the generator matrix of ``ctx`` (unreduced)."""
    key = (id(ctx), k)
    hit = _PRODUCT_CACHE.get(key)
    if hit is not None and hit[0] is ctx:
        return hit[1]
    m, n, one = ctx.m, ctx.n, ctx.one
    T = embed_generators(1, k, m, n, one)
    for a in range(2, k + 1):
        T = T @ embed_generators(a, k, m, n, one)
    _PRODUCT_CACHE[key] = (ctx, T)
    return T


def reduce_operator(T: EndTensor, ctx) -> EndTensor:
    return T.map(lambda v: ctx.normal_form(v) if isinstance(v, NcPoly) else v)


def compression_check(k: int, ctx) -> dict:
    """A M..M A - A M..M and H M..M H - M..M H, reduced; returns the residual operators."""
    if k < 1:
        raise ValueError("k must be at least 1")
    F = ctx.field
    A, H = symmetrizers(k, ctx.m, ctx.n, F)
    Mp = generator_product(k, ctx)
    AM = A @ Mp
    MH = Mp @ H
    return {
        "antisymmetric": reduce_operator(AM @ A - AM, ctx),
        "symmetric": reduce_operator(H @ MH - MH, ctx),
    }


def macmahon_sum(k: int, ctx, flavor: str = "HA") -> NcPoly:
    """sum_r (-1)^r str H_r A_{r+1..k} M_1..M_k (flavor HA) or with A, H swapped (AH)."""
    if flavor not in ("HA", "AH"):
        raise ValueError("flavor must be 'HA' or 'AH'")
    m, n, F = ctx.m, ctx.n, ctx.field
    Mp = generator_product(k, ctx)
    total = NcPoly.zero()
    for r in range(k + 1):
        head, tail = tuple(range(1, r + 1)), tuple(range(r + 1, k + 1))
        if flavor == "HA":
            S = symmetrizer(k, m, n, F, head) @ antisymmetrizer(k, m, n, F, tail)
        else:
            S = antisymmetrizer(k, m, n, F, head) @ symmetrizer(k, m, n, F, tail)
        term = supertrace(S @ Mp)
        if term:
            total = total + (term if r % 2 == 0 else -term)
    return ctx.normal_form(total)


def trace_of_symmetrized(k: int, ctx, flavor: str) -> NcPoly:
    """str A_k M_1..M_k (flavor "A") or str H_k M_1..M_k (flavor "H"), reduced."""
    m, n, F = ctx.m, ctx.n, ctx.field
    if k == 0:
        return NcPoly.const(F.one)
    S = antisymmetrizer(k, m, n, F) if flavor == "A" else symmetrizer(k, m, n, F)
    return ctx.normal_form(supertrace(S @ generator_product(k, ctx)))


def _multisets(k: int, m: int, n: int, strict_even: bool):
    """Increasing multi-indices: one parity class strictly, the other weakly."""
    N = m + n
    for I in itertools.combinations_with_replacement(range(1, N + 1), k):
        cnt = {}
        for i in I:
            cnt[i] = cnt.get(i, 0) + 1
        strict_cls = 0 if strict_even else 1
        if any(c > 1 and bar(i, m) == strict_cls for i, c in cnt.items()):
            continue
        yield I, cnt


def explicit_trace_formula(k: int, ctx, flavor: str = "A", *, weights: str = "validated",
                           signed: bool | None = None) -> NcPoly:
    """Combinatorial expansion of str A_k M..M (flavor "A") or str M..M H_k ("H").

    ``weights`` selects the permutation-action coefficients ("validated" or
    the per-inversion product "inversions"); ``signed`` includes the sgn(sigma)
    factor in the sum over permutations.  The default keeps it for the
    antisymmetrizer and drops it for the symmetrizer, the only combination
    that matches the tensor computation.
    """
    if signed is None:
        signed = flavor == "A"
    m, n, F = ctx.m, ctx.n, ctx.field
    one = F.one
    if flavor == "A":
        wfun = eps_weight if weights == "validated" else eps_weight_inversions
    else:
        wfun = omega_weight if weights == "validated" else omega_weight_inversions
    total = NcPoly.zero()
    perms = list(itertools.permutations(range(1, k + 1)))
    for I, cnt in _multisets(k, m, n, strict_even=(flavor == "A")):
        denom = 1
        for i, c in cnt.items():
            if (bar(i, m) == 1) == (flavor == "A"):
                denom *= math.factorial(c)
        pref = one / F(denom)
        for s in perms:
            sI = tuple(I[s[a] - 1] for a in range(k))
            if flavor == "A":
                c = wfun(s, sI, I, m, F)
                g = gamma(sI, I, m)
                pairs = zip(sI, I)
            else:
                c = wfun(s, I, sI, m, F)
                g = gamma(I, sI, m)
                pairs = zip(I, sI)
            if signed and perm_sign(s) < 0:
                c = -c
            if g:
                c = -c
            word = tuple(gen_M(i, j, m) for i, j in pairs)
            total = total + NcPoly.word(word, c * pref)
    return ctx.normal_form(total)
