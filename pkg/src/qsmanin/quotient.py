"""Quadratic quotient algebras decided by per-degree linear reduction.

Every defining relation is homogeneous in the multiset of row labels and in
the multiset of column labels of its generators (per tensor factor and
generator kind).  The degree-d ideal component therefore splits into small
blocks indexed by such multiset pairs; each block is spanned by the words
u r v with r a quadratic relation, and is reduced to a fully reduced
echelon basis on first use.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .freesuper import (M, PSI, X, Y, GenId, NcPoly, bar, format_expr, gen_M, gen_psi,
                        gen_x)
from .linalg import EchelonBasis, span_equal
from .report import CheckResult, failed, from_residual, passed
from .scalars import EXACT, ModField, QInverted
from .tensorcalc import (EndTensor, build_swap, embed_generators, embed_matrix, eps,
                         generator_matrix)

__all__ = [
    "RIGHT", "RIGHT_QINV", "LEFT", "SYM", "EXT", "TWISTED", "TENSOR_SQUARE", "MIXED",
    "AlgebraSpec", "QuotientContext", "DegreeOverflow",
    "default_degree_cap", "relation_basis", "entrywise_relations",
    "tensor_relations", "twisted_relations", "torus_weight", "sym_relations", "ext_relations",
    "relation_equivalence_check", "comodule_morphism_check",
    "coproduct_morphism_check", "get_context",
]

RIGHT = "RightQuantum"
RIGHT_QINV = "RightQuantumQinv"
LEFT = "LeftQuantum"
SYM = "SymSuper"
EXT = "ExtSuper"
TENSOR_SQUARE = "TensorSquare"
MIXED = "MixedComodule"
TWISTED = "TwistedRight"
_BASE = (RIGHT, RIGHT_QINV, LEFT, SYM, EXT, TWISTED)


class DegreeOverflow(ValueError):
    def __init__(self, degree: int, cap: int):
        super().__init__(f"degree overflow: degree {degree} exceeds cap {cap}")
        self.degree = degree
        self.cap = cap


@dataclass(frozen=True)
class AlgebraSpec:
    """A named quadratic algebra on the (m|n) grading.

    ``inner`` names the squared variant for TensorSquare; for MixedComodule
    ``side`` is "sym" (algebra (x) SymSuper) or "ext" (ExtSuper (x) algebra).
    ``q_mode`` = "qinv" swaps q and 1/q in the relations.
    """

    variant: str
    m: int
    n: int
    q_mode: str = "q"
    inner: str = RIGHT
    side: str = "sym"

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ValueError("need m, n >= 0 and m + n >= 1")
        if self.variant not in _BASE + (TENSOR_SQUARE, MIXED):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.q_mode not in ("q", "qinv"):
            raise ValueError("q_mode must be 'q' or 'qinv'")
        if self.side not in ("sym", "ext"):
            raise ValueError("side must be 'sym' or 'ext'")

    @property
    def N(self) -> int:
        return self.m + self.n

    def factors(self) -> list[str]:
        """Base variant living in each tensor factor."""
        if self.variant == TENSOR_SQUARE:
            return [self.inner, self.inner]
        if self.variant == MIXED:
            return [self.inner, SYM] if self.side == "sym" else [EXT, self.inner]
        return [self.variant]

    def generators(self) -> list[GenId]:
        out = []
        for f, var in enumerate(self.factors()):
            out.extend(_base_generators(var, self.m, self.n, f))
        return sorted(out)


def _base_generators(var: str, m: int, n: int, factor: int) -> list[GenId]:
    N = m + n
    if var == SYM:
        return [gen_x(i, m, factor) for i in range(1, N + 1)]
    if var == EXT:
        return [gen_psi(i, m, factor) for i in range(1, N + 1)]
    if var == TWISTED:
        return [gen_M(i, j, m, factor, Y) for i in range(1, N + 1) for j in range(1, N + 1)]
    return [gen_M(i, j, m, factor) for i in range(1, N + 1) for j in range(1, N + 1)]


def default_degree_cap(m: int, n: int, backend: str = "exact") -> int:
    table = {1: 8, 2: 6, 3: 4, 4: 3}
    cap = table.get(m + n, 2)
    return cap + 1 if backend == "modular" else cap


# -- relations ------------------------------------------------------------------

def _swap_field(field, qinv: bool):
    return QInverted(field) if qinv else field


def tensor_relations(m: int, n: int, field=EXACT, *, left: bool = False,
                     qinv: bool = False, factor: int = 0) -> list[NcPoly]:
    """Entries of (1-P)M_1M_2(1+P), or (1+P)M_1M_2(1-P) when ``left``."""
    F = _swap_field(field, qinv)
    one = field.one
    P = build_swap(m, n, F)
    Id = EndTensor.identity(2, m, n, one)
    M1 = embed_generators(1, 2, m, n, one, factor)
    M2 = embed_generators(2, 2, m, n, one, factor)
    if left:
        T = (Id + P) @ M1 @ M2 @ (Id - P)
    else:
        T = (Id - P) @ M1 @ M2 @ (Id + P)
    return [v for _, v in sorted(T.entries.items()) if v]


def torus_weight(x: int, a: int, b: int) -> int:
    """Exponent w with Y_ab K_x = q^w K_x Y_ab in the torus-twisted series model."""
    return eps(x - b) - eps(x - a)


def twisted_relations(m: int, n: int, field=EXACT, *, qinv: bool = False,
                      factor: int = 0) -> list[NcPoly]:
    """Relations on Y making K(1 + tY) a q-super Manin matrix.

    With M_ij = K_i(delta_ij + t Y_ij) the t^2 part of M_1 M_2 has entries
    q^{w(k; i, j)} K_i K_k Y_ij Y_kl; the K factor is common to each entry of
    (1-P)M_1M_2(1+P), so the Y relations are the entries of (1-P)W(1+P).
    """
    F = _swap_field(field, qinv)
    one = field.one
    P = build_swap(m, n, F)
    Id = EndTensor.identity(2, m, n, one)
    Ymat = generator_matrix(m, n, one, factor, Y)
    W = embed_matrix(Ymat, 1, 2, m, n) @ embed_matrix(Ymat, 2, 2, m, n)
    W = EndTensor(2, m, n, {
        (U, V): v.scale(F.q_power(torus_weight(U[1], U[0], V[0])))
        for (U, V), v in W.entries.items()})
    T = (Id - P) @ W @ (Id + P)
    return [v for _, v in sorted(T.entries.items()) if v]


def sym_relations(m: int, n: int, field=EXACT, *, qinv: bool = False,
                  factor: int = 0) -> list[NcPoly]:
    """Components of (1-P)(X (x) X) with X = (x_1, ..., x_{m+n})^t."""
    F = _swap_field(field, qinv)
    N = m + n
    one = field.one
    x = [None] + [NcPoly.gen(gen_x(i, m, factor), one) for i in range(1, N + 1)]
    # Koszul: (x_a (x) e_a)(x_b (x) e_b) = (-1)^{ab} x_a x_b (x) e_a (x) e_b
    v = {(a, b): (x[a] * x[b]).scale(-one if bar(a, m) & bar(b, m) else one)
         for a in range(1, N + 1) for b in range(1, N + 1)}
    P = build_swap(m, n, F)
    out = []
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            r = v[(a, b)] - v[(b, a)].scale(P.get((a, b), (b, a)))
            if r:
                out.append(r)
    return out


def ext_relations(m: int, n: int, field=EXACT, *, qinv: bool = False,
                  factor: int = 0) -> list[NcPoly]:
    """Components of (Psi (x) Psi)(1+P) with Psi = (psi_1, ..., psi_{m+n})."""
    F = _swap_field(field, qinv)
    N = m + n
    one = field.one
    psi = [None] + [NcPoly.gen(gen_psi(i, m, factor), one) for i in range(1, N + 1)]
    # Koszul: e*_k passes psi_l, parities k and 1 + l
    w = {(k, l): (psi[k] * psi[l]).scale(-one if bar(k, m) * (1 + bar(l, m)) & 1 else one)
         for k in range(1, N + 1) for l in range(1, N + 1)}
    P = build_swap(m, n, F)
    out = []
    for c in range(1, N + 1):
        for d in range(1, N + 1):
            r = w[(c, d)] + w[(d, c)].scale(P.get((d, c), (c, d)))
            if r:
                out.append(r)
    return out


def entrywise_relations(m: int, n: int, field=EXACT) -> list[NcPoly]:
    """The four explicit families of quadratic relations, instantiated."""
    N = m + n
    F = field
    one = F.one

    def g(i, j):
        return NcPoly.gen(gen_M(i, j, m), one)

    def sgn(e):
        return -one if e & 1 else one

    out = []
    rng = range(1, N + 1)
    for i in rng:
        for j in rng:
            if bar(i, m) == 1 and bar(j, m) == 0:
                out.append(g(i, j) * g(i, j))
    for i in rng:
        if bar(i, m) != 1:
            continue
        for k in rng:
            for l in rng:
                c = F.q_power(eps(l - k)) * sgn((bar(k, m) + 1) * (bar(l, m) + 1))
                out.append(g(i, k) * g(i, l) - (g(i, l) * g(i, k)).scale(c))
    for k in rng:
        if bar(k, m) != 0:
            continue
        for i in rng:
            for j in rng:
                c = F.q_power(eps(i - j)) * sgn(bar(i, m) * bar(j, m))
                out.append(g(i, k) * g(j, k) - (g(j, k) * g(i, k)).scale(c))
    for i, j, k, l in itertools.product(rng, repeat=4):
        bi, bj, bk, bl = (bar(t, m) for t in (i, j, k, l))
        c1 = F.q_power(eps(i - k) + eps(l - j)) * sgn((bi + bj) * (bk + bl))
        c2 = F.q_power(eps(i - k)) * sgn(bi * bk + bj * bk + bi * bj)
        c3 = F.q_power(eps(l - j)) * sgn(bj * bk + bj * bl + bk * bl)
        r = (g(i, j) * g(k, l) - (g(k, l) * g(i, j)).scale(c1)
             - (g(k, j) * g(i, l)).scale(c2) + (g(i, l) * g(k, j)).scale(c3))
        out.append(r)
    return [r for r in out if r]


def _base_relations(var: str, m: int, n: int, field, qinv: bool, factor: int):
    if var == RIGHT:
        return tensor_relations(m, n, field, qinv=qinv, factor=factor)
    if var == RIGHT_QINV:
        return tensor_relations(m, n, field, qinv=not qinv, factor=factor)
    if var == LEFT:
        return tensor_relations(m, n, field, left=True, qinv=qinv, factor=factor)
    if var == TWISTED:
        return twisted_relations(m, n, field, qinv=qinv, factor=factor)
    if var == SYM:
        return sym_relations(m, n, field, qinv=qinv, factor=factor)
    if var == EXT:
        return ext_relations(m, n, field, qinv=qinv, factor=factor)
    raise ValueError(var)


def relation_basis(spec: AlgebraSpec, field=EXACT) -> list[NcPoly]:
    """Spanning set of the degree-2 relation space of ``spec``."""
    qinv = spec.q_mode == "qinv"
    out: list[NcPoly] = []
    for f, var in enumerate(spec.factors()):
        out.extend(_base_relations(var, spec.m, spec.n, field, qinv, f))
    # generators of distinct factors super-commute
    gens = spec.generators()
    one = field.one
    for g in gens:
        for h in gens:
            if g.factor < h.factor:
                s = -one if g.parity & h.parity else one
                out.append(NcPoly.word((h, g), one) - NcPoly.word((g, h), s))
    return out


# -- block structure --------------------------------------------------------------

def _row_label(g: GenId):
    return (g.factor, g.kind, g.row)


def _col_label(g: GenId):
    return (g.factor, g.kind, g.col)


def block_key(w) -> tuple:
    return (len(w), tuple(sorted(_row_label(g) for g in w)),
            tuple(sorted(_col_label(g) for g in w)))


def _multiset_perms(items: list):
    """Distinct orderings of a multiset, in lexicographic order."""
    items = sorted(items)
    n = len(items)
    while True:
        yield tuple(items)
        i = n - 2
        while i >= 0 and items[i] >= items[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while items[j] <= items[i]:
            j -= 1
        items[i], items[j] = items[j], items[i]
        items[i + 1:] = reversed(items[i + 1:])


class QuotientContext:
    """An algebra spec over one coefficient field, with cached reductions.

    The cache maps a block key to an :class:`EchelonBasis`; entries are
    built once under a lock and never modified afterwards, so concurrent
    readers are safe.
    """

    def __init__(self, spec: AlgebraSpec, field=EXACT, degree_cap: int | None = None):
        self.spec = spec
        self.field = field
        backend = "modular" if isinstance(field, ModField) else "exact"
        if degree_cap is None:
            degree_cap = default_degree_cap(spec.m, spec.n, backend)
            if len(spec.factors()) > 1:
                degree_cap *= 2
        self.degree_cap = degree_cap
        self._lock = threading.RLock()
        self._blocks: dict[tuple, EchelonBasis] = {}
        self._gen_index = {(g.factor, g.kind, g.row, g.col): g for g in spec.generators()}
        self._init_quadratic()

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def one(self):
        return self.field.one

    def __repr__(self):
        return f"QuotientContext({self.spec}, {self.field.name}, cap={self.degree_cap})"

    def _init_quadratic(self):
        groups: dict[tuple, list[dict]] = {}
        for r in relation_basis(self.spec, self.field):
            for w, c in r.terms.items():
                if len(w) != 2:
                    raise ValueError("relation is not quadratic")
            parts: dict[tuple, dict] = {}
            for w, c in r.terms.items():
                parts.setdefault(block_key(w), {})[w] = c
            for key, vec in parts.items():
                groups.setdefault(key, []).append(vec)
        for key, vecs in groups.items():
            self._blocks[key] = EchelonBasis(self.one, vecs)
        # every 2-block with no relation is recorded as an empty basis lazily
        self._quadratic_keys = {k for k, b in self._blocks.items() if len(b)}

    # -- block construction ------------------------------------------------------
    def _words_in_block(self, key) -> list[tuple]:
        d, rows, cols = key
        cols_by_kind: dict = {}
        for fk_col in cols:
            cols_by_kind.setdefault(fk_col[:2], []).append(fk_col[2])
        words = []
        gi = self._gen_index
        for rperm in _multiset_perms(list(rows)):
            # assign columns per (factor, kind) class independently
            slots: dict = {}
            for p, (f, k, _) in enumerate(rperm):
                slots.setdefault((f, k), []).append(p)
            if set(slots) != set(cols_by_kind):
                continue
            classes = sorted(slots)
            choices = [list(_multiset_perms(cols_by_kind[c])) for c in classes]
            for combo in itertools.product(*choices):
                colseq = [None] * d
                for c, perm in zip(classes, combo):
                    for p, col in zip(slots[c], perm):
                        colseq[p] = col
                w = []
                for p in range(d):
                    f, k, r = rperm[p]
                    g = gi.get((f, k, r, colseq[p]))
                    if g is None:
                        break
                    w.append(g)
                else:
                    words.append(tuple(w))
        return words

    def _build_block(self, key) -> EchelonBasis:
        d = key[0]
        one = self.one
        basis = EchelonBasis(one)
        if d < 2:
            return basis
        seen = set()
        quad = self._blocks
        for w in self._words_in_block(key):
            for p in range(d - 1):
                k2 = block_key(w[p:p + 2])
                if k2 not in self._quadratic_keys:
                    continue
                tag = (w[:p], k2, w[p + 2:])
                if tag in seen:
                    continue
                seen.add(tag)
                pre, post = w[:p], w[p + 2:]
                for row in quad[k2].rows.values():
                    basis.insert({pre + u + post: c for u, c in row.items()})
        return basis

    def block(self, key) -> EchelonBasis:
        b = self._blocks.get(key)
        if b is not None:
            return b
        if key[0] > self.degree_cap:
            raise DegreeOverflow(key[0], self.degree_cap)
        with self._lock:
            b = self._blocks.get(key)
            if b is None:
                b = self._build_block(key)
                self._blocks[key] = b
        return b

    # -- queries -----------------------------------------------------------------
    def normal_form(self, p: NcPoly) -> NcPoly:
        if not p.terms:
            return p
        parts: dict[tuple, dict] = {}
        for w, c in p.terms.items():
            if len(w) > self.degree_cap:
                raise DegreeOverflow(len(w), self.degree_cap)
            if len(w) < 2:
                parts.setdefault(None, {})[w] = c
            else:
                parts.setdefault(block_key(w), {})[w] = c
        out: dict = {}
        for key, vec in parts.items():
            if key is None:
                out.update(vec)
            else:
                out.update(self.block(key).reduce(vec))
        return NcPoly._raw(out)

    def is_zero(self, p: NcPoly) -> bool:
        return not self.normal_form(p)

    def hilbert_dim(self, d: int) -> int:
        if d > self.degree_cap:
            raise DegreeOverflow(d, self.degree_cap)
        if d == 0:
            return 1
        gens = self.spec.generators()
        keys = Counter(block_key(w) for w in itertools.product(gens, repeat=d))
        return sum(size - len(self.block(key)) for key, size in keys.items())

    def to_field(self, p: NcPoly) -> NcPoly:
        """Convert coefficients (e.g. exact -> modular) into this context's field."""
        F = self.field
        return NcPoly({w: F(c) for w, c in p.terms.items()})


_CONTEXTS: dict = {}
_CONTEXTS_LOCK = threading.Lock()


def get_context(spec: AlgebraSpec, field=EXACT, degree_cap: int | None = None) -> QuotientContext:
    """Shared context per (spec, field, cap)."""
    key = (spec, field, degree_cap)
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        with _CONTEXTS_LOCK:
            ctx = _CONTEXTS.get(key)
            if ctx is None:
                ctx = _CONTEXTS[key] = QuotientContext(spec, field, degree_cap)
    return ctx


# -- structural checks -------------------------------------------------------------

def relation_equivalence_check(m: int, n: int, field=EXACT) -> CheckResult:
    """Tensor form of the relations versus the entrywise list (degree-2 spans)."""
    a = [r.terms for r in tensor_relations(m, n, field)]
    b = [r.terms for r in entrywise_relations(m, n, field)]
    equal, diff = span_equal(a, b, field.one)
    name = "relation_equivalence"
    if equal:
        return passed(name, m=m, n=n)
    return failed(name, NcPoly(diff[0]), f"{len(diff)} discrepancy vectors", m=m, n=n)


def comodule_morphism_check(m: int, n: int, side: str = "sym", field=EXACT) -> CheckResult:
    """Images of the SymSuper (ExtSuper) relations under the coaction vanish."""
    spec = AlgebraSpec(MIXED, m, n, side=side)
    ctx = get_context(spec, field)
    one = field.one
    N = m + n
    if side == "sym":
        def image(g):
            return sum((NcPoly.word((gen_M(g.row, j, m, 0), gen_x(j, m, 1)), one)
                        for j in range(1, N + 1)), NcPoly.zero())
        rels = sym_relations(m, n, field)
    else:
        def image(g):
            return sum((NcPoly.word((gen_psi(j, m, 0), gen_M(j, g.row, m, 1)), one)
                        for j in range(1, N + 1)), NcPoly.zero())
        rels = ext_relations(m, n, field)
    residuals = [ctx.normal_form(r.substitute(image, one)) for r in rels]
    return from_residual(f"comodule_{side}", residuals, m=m, n=n)


def coproduct_morphism_check(m: int, n: int, field=EXACT) -> list[CheckResult]:
    """Delta maps relations into the ideal of the tensor square; counit axioms."""
    spec = AlgebraSpec(TENSOR_SQUARE, m, n)
    ctx = get_context(spec, field)
    one = field.one
    N = m + n

    def delta(g):
        return sum((NcPoly.word((gen_M(g.row, k, m, 0), gen_M(k, g.col, m, 1)), one)
                    for k in range(1, N + 1)), NcPoly.zero())

    rels = relation_basis(AlgebraSpec(RIGHT, m, n), field)
    residuals = [ctx.normal_form(r.substitute(delta, one)) for r in rels]
    results = [from_residual("coproduct_relations", residuals, m=m, n=n)]

    # counit: (eps (x) id) Delta = id = (id (x) eps) Delta on generators
    def counit_on(factor):
        def f(g):
            if g.factor == factor:
                return NcPoly.const(one) if g.row == g.col else NcPoly.zero()
            return NcPoly.gen(g._replace(factor=0), one)
        return f

    bad = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            d = delta(gen_M(i, j, m))
            target = NcPoly.gen(gen_M(i, j, m), one)
            for fac in (0, 1):
                r = d.substitute(counit_on(fac), one) - target
                if r:
                    bad.append(r)
    results.append(from_residual("counit_axiom", bad, m=m, n=n))
    # counit is an algebra morphism: it kills every relation
    eps_rel = [r.substitute(lambda g: NcPoly.const(one) if g.row == g.col else NcPoly.zero(), one)
               for r in rels]
    results.append(from_residual("counit_relations", eps_rel, m=m, n=n))
    return results
