"""Free Z2-graded algebras: generators, words, noncommutative polynomials.

Free multiplication is plain concatenation.  Signs only enter through the
super tensor product (:func:`koszul_sort`, :func:`koszul_tensor_mul`) and
through the operator calculus in :mod:`qsmanin.tensorcalc`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple

__all__ = [
    "X", "PSI", "M", "MINV", "Y", "K", "KIND_NAMES",
    "GenId", "Word", "NcPoly",
    "bar", "gen_M", "gen_x", "gen_psi", "gen_K",
    "word_parity", "NonHomogeneous",
    "koszul_sort", "koszul_tensor_mul", "tensor_of",
    "ParseError", "IndexRangeError", "parse_expr", "format_expr", "format_scalar",
]

# generator kinds; the numeric order is the word order within one factor
X, PSI, M, MINV, Y, K = 0, 1, 2, 3, 4, 5
KIND_NAMES = {X: "x", PSI: "psi", M: "M", MINV: "Minv", Y: "Y", K: "K"}


def bar(i: int, m: int) -> int:
    """Parity of the index i in the (m|n) grading."""
    return 0 if i <= m else 1


class GenId(NamedTuple):
    factor: int
    kind: int
    row: int
    col: int
    parity: int

    def __str__(self):
        return _format_gen(self)


Word = tuple  # tuple[GenId, ...]


def gen_M(i: int, j: int, m: int, factor: int = 0, kind: int = M) -> GenId:
    return GenId(factor, kind, i, j, (bar(i, m) + bar(j, m)) % 2)


def gen_x(i: int, m: int, factor: int = 0) -> GenId:
    return GenId(factor, X, i, 0, bar(i, m))


def gen_psi(i: int, m: int, factor: int = 0) -> GenId:
    return GenId(factor, PSI, i, 0, 1 - bar(i, m))


def gen_K(i: int, sign: int = 1) -> GenId:
    """Torus element K_i (sign 1) or its inverse (sign -1); always even."""
    return GenId(0, K, i, sign, 0)


def word_parity(w: Word) -> int:
    return sum(g.parity for g in w) % 2


class NonHomogeneous(ValueError):
    """A graded operation received an element of mixed parity."""


class NcPoly:
    """Finite linear combination of words with nonzero coefficients.

    Coefficients are elements of one of the fields in :mod:`qsmanin.scalars`
    (plain ``int`` is accepted and promoted on contact).  Instances are
    treated as immutable values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "NcPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls._raw({})

    @classmethod
    def const(cls, c) -> "NcPoly":
        return cls._raw({(): c} if c else {})

    @classmethod
    def gen(cls, g: GenId, c=1) -> "NcPoly":
        return cls._raw({(g,): c} if c else {})

    @classmethod
    def word(cls, w: Iterable[GenId], c=1) -> "NcPoly":
        return cls._raw({tuple(w): c} if c else {})

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.const(other)
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return NcPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return NcPoly.const(other) + (-self)

    def scale(self, s) -> "NcPoly":
        if not s:
            return NcPoly._raw({})
        out = {}
        for w, c in self.terms.items():
            v = c * s
            if v:
                out[w] = v
        return NcPoly._raw(out)

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    v = out.get(w)
                    v = c1 * c2 if v is None else v + c1 * c2
                    out[w] = v
            return NcPoly._raw({w: c for w, c in out.items() if c})
        return self.scale(other)

    def __rmul__(self, other):
        # scalars commute with everything
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in a free algebra")
        result = None
        for _ in range(k):
            result = self if result is None else result * self
        if result is None:
            raise ValueError("zeroth power needs a field; use NcPoly.const(one)")
        return result

    # -- inspection ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            if self.terms.keys() != other.terms.keys():
                return False
            return all(c == other.terms[w] for w, c in self.terms.items())
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coeff(self, w: Word):
        return self.terms.get(tuple(w), 0)

    def constant_term(self):
        return self.terms.get((), 0)

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def homogeneous_components(self) -> dict[int, "NcPoly"]:
        out: dict[int, dict] = {}
        for w, c in self.terms.items():
            out.setdefault(len(w), {})[w] = c
        return {d: NcPoly._raw(t) for d, t in out.items()}

    def parity(self) -> int:
        """Parity of a homogeneous element (0 for the zero polynomial)."""
        ps = {word_parity(w) for w in self.terms}
        if len(ps) > 1:
            raise NonHomogeneous("non-homogeneous operand")
        return ps.pop() if ps else 0

    def map_coeffs(self, f: Callable) -> "NcPoly":
        return NcPoly({w: f(c) for w, c in self.terms.items()})

    def substitute(self, images: Callable[[GenId], "NcPoly"], one) -> "NcPoly":
        """Apply the free-algebra morphism determined by generator images."""
        total = NcPoly.zero()
        cache: dict = {}
        for w, c in self.terms.items():
            acc = NcPoly.const(one)
            for g in w:
                img = cache.get(g)
                if img is None:
                    img = cache[g] = images(g)
                acc = acc * img
                if not acc:
                    break
            total = total + acc.scale(c)
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __repr__(self):
        return f"NcPoly({format_expr(self)})"

    __str__ = lambda self: format_expr(self)


# -- super tensor products ---------------------------------------------------

def koszul_sort(w: Word) -> tuple[int, Word]:
    """Stable-sort generators by tensor factor; return (sign, sorted word).

    Each transposition of adjacent generators u, v from different factors
    contributes (-1)^{|u||v|}.
    """
    sign = 0
    gens = list(w)
    # insertion sort keeps track of exactly which pairs cross
    for i in range(1, len(gens)):
        j = i
        g = gens[i]
        while j > 0 and gens[j - 1].factor > g.factor:
            sign ^= gens[j - 1].parity & g.parity
            gens[j] = gens[j - 1]
            j -= 1
        gens[j] = g
    return (-1 if sign else 1), tuple(gens)


def _check_homogeneous(p: NcPoly) -> None:
    p.parity()


def koszul_tensor_mul(a: NcPoly, b: NcPoly) -> NcPoly:
    """Product in the super tensor product of algebras.

    Operands are combinations of factor-sorted words (an element of
    A_0 (x) A_1 (x) ...).  The concatenated product is brought back into
    factor-sorted form with the Koszul sign, so that
    (a1 (x) a2)(b1 (x) b2) = (-1)^{|a2||b1|} a1 b1 (x) a2 b2.
    """
    for p in (a, b):
        for fac in {g.factor for w in p.terms for g in w}:
            # only the pieces that actually cross need definite parity
            part = NcPoly._raw({tuple(g for g in w if g.factor == fac): 1 for w in p.terms})
            try:
                _check_homogeneous(part)
            except NonHomogeneous:
                raise NonHomogeneous("non-homogeneous operand") from None
    out: dict = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            s, w = koszul_sort(w1 + w2)
            v = c1 * c2 if s > 0 else -(c1 * c2)
            out[w] = out[w] + v if w in out else v
    return NcPoly({w: c for w, c in out.items() if c})


def tensor_of(*parts: NcPoly) -> NcPoly:
    """a_0 (x) a_1 (x) ... with part s moved into tensor factor s."""
    acc = {(): 1}
    for s, p in enumerate(parts):
        nxt: dict = {}
        for w0, c0 in acc.items():
            for w, c in p.terms.items():
                w1 = w0 + tuple(g._replace(factor=s) for g in w)
                nxt[w1] = nxt.get(w1, 0) + c0 * c
        acc = nxt
    return NcPoly({w: c for w, c in acc.items() if c})


# -- printing ----------------------------------------------------------------

def _format_gen(g: GenId) -> str:
    tag = f"@{g.factor}" if g.factor else ""
    if g.kind in (X, PSI):
        return f"{KIND_NAMES[g.kind]}[{g.row}]{tag}"
    if g.kind == K:
        return f"{'K' if g.col > 0 else 'Kinv'}[{g.row}]{tag}"
    return f"{KIND_NAMES[g.kind]}[{g.row},{g.col}]{tag}"


def _format_word(w: Word) -> str:
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j + 1 < len(w) and w[j + 1] == w[i]:
            j += 1
        s = _format_gen(w[i])
        parts.append(s if j == i else f"{s}^{j - i + 1}")
        i = j + 1
    return "*".join(parts)


def format_scalar(c) -> tuple[bool, str]:
    """Return (negative, body) for a coefficient; body omits the sign."""
    from .scalars import ModScalar, QScalar

    if isinstance(c, QScalar):
        lead = c.num.coeffs()[-1] if c.num.degree() >= 0 else 0
        neg = int(lead) < 0
        a = -c if neg else c
        return neg, _qscalar_body(a)
    if isinstance(c, ModScalar):
        return False, str(c.value)
    c = Fraction(c)
    neg = c < 0
    c = abs(c)
    return neg, (str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}")


def _poly_body(p) -> tuple[str, bool]:
    """Polynomial in q as text; flag says whether it is a single product."""
    from .scalars import QScalar

    s = QScalar._poly_str(p)
    nz = [c for c in p.coeffs() if c]
    return s, len(nz) == 1 and int(nz[0]) > 0


def _qscalar_body(a) -> str:
    num, num_atomic = _poly_body(a.num)
    if a.den.degree() == 0 and int(a.den.coeffs()[0]) == 1:
        return num if num_atomic else f"({num})"
    den, den_atomic = _poly_body(a.den)
    if not num_atomic:
        num = f"({num})"
    # the divisor is always bracketed so that left-to-right parsing is exact
    return f"{num}/({den})" if not den_atomic or "*" in den else f"{num}/{den}"


def format_expr(p: NcPoly) -> str:
    """Render in the expression grammar; the inverse of :func:`parse_expr`."""
    if not p.terms:
        return "0"
    out = []
    for w, c in p.sorted_terms():
        neg, body = format_scalar(c)
        if w:
            ws = _format_word(w)
            body = ws if body == "1" else f"{body}*{ws}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# -- parsing -----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} at position {position}")
        self.position = position


class IndexRangeError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<gen>Minv|M|Kinv|K|Y|x|psi)\[|(?P<num>\d+(?:/\d+)?)|(?P<q>q)|(?P<op>[-+*/^(),\]@]))"
)


class _Parser:
    def __init__(self, text: str, m: int, n: int, field, max_factor: int):
        self.text = text
        self.m, self.n = m, n
        self.field = field
        self.max_factor = max_factor
        self.pos = 0
        self.tok = None
        self.tok_pos = 0
        self.advance()

    def advance(self):
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1
        self.tok_pos = self.pos
        if self.pos >= len(t):
            self.tok = ("eof", None)
            return
        mt = _TOKEN.match(t, self.pos)
        if not mt or mt.end() == self.pos:
            raise ParseError(f"unexpected character {t[self.pos]!r}", self.pos)
        self.pos = mt.end()
        for kind in ("gen", "num", "q", "op"):
            val = mt.group(kind)
            if val is not None:
                self.tok = (kind, val)
                return

    def expect(self, op: str):
        if self.tok != ("op", op):
            raise ParseError(f"expected {op!r}", self.tok_pos)
        self.advance()

    def uint(self) -> int:
        kind, val = self.tok
        if kind != "num" or "/" in val:
            raise ParseError("expected an unsigned integer", self.tok_pos)
        self.advance()
        return int(val)

    def expr(self) -> NcPoly:
        neg = False
        if self.tok == ("op", "-"):
            neg = True
            self.advance()
        elif self.tok == ("op", "+"):
            self.advance()
        acc = self.term()
        if neg:
            acc = -acc
        while self.tok in (("op", "+"), ("op", "-")):
            op = self.tok[1]
            self.advance()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> NcPoly:
        acc = self.factor()
        while self.tok in (("op", "*"), ("op", "/")):
            op = self.tok[1]
            where = self.tok_pos
            self.advance()
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if any(w for w in f.terms) or not f.terms:
                    raise ParseError("divisor must be a nonzero scalar", where)
                acc = acc.scale(self.field.one / f.terms[()])
        return acc

    def factor(self) -> NcPoly:
        base = self.atom()
        if self.tok == ("op", "^"):
            self.advance()
            k = self.uint()
            if k == 0:
                return NcPoly.const(self.field.one)
            base = base ** k
        return base

    def index(self, limit: int) -> int:
        where = self.tok_pos
        i = self.uint()
        if not 1 <= i <= limit:
            raise IndexRangeError(f"index {i} out of range 1..{limit} at position {where}")
        return i

    def atom(self) -> NcPoly:
        kind, val = self.tok
        F = self.field
        if kind == "num":
            self.advance()
            return NcPoly.const(F(Fraction(val)))
        if kind == "q":
            self.advance()
            return NcPoly.const(F.q)
        if kind == "gen":
            self.advance()
            N = self.m + self.n
            i = self.index(N)
            if val in ("M", "Minv", "Y"):
                self.expect(",")
                j = self.index(N)
                self.expect("]")
                g = gen_M(i, j, self.m, kind={"M": M, "Minv": MINV, "Y": Y}[val])
            elif val in ("K", "Kinv"):
                self.expect("]")
                g = gen_K(i, 1 if val == "K" else -1)
            else:
                self.expect("]")
                g = gen_x(i, self.m) if val == "x" else gen_psi(i, self.m)
            if self.tok == ("op", "@"):
                self.advance()
                where = self.tok_pos
                f = self.uint()
                if f > self.max_factor:
                    raise IndexRangeError(f"tensor factor {f} out of range at position {where}")
                g = g._replace(factor=f)
            return NcPoly.gen(g, F.one)
        if (kind, val) == ("op", "("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError("unexpected token" if kind != "eof" else "unexpected end of input",
                         self.tok_pos)


def parse_expr(text: str, m: int, n: int, field=None, max_factor: int = 1) -> NcPoly:
    """Parse an expression over the (m|n) generators into an :class:`NcPoly`."""
    from .scalars import EXACT

    p = _Parser(text, m, n, field or EXACT, max_factor)
    result = p.expr()
    if p.tok[0] != "eof":
        raise ParseError("trailing input", p.tok_pos)
    return result
