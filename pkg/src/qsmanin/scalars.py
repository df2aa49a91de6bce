"""Coefficient fields: exact rational functions in q, and evaluation images.

Three interchangeable fields are provided.  Every algebraic routine in the
package is written against the small protocol they share (``zero``, ``one``,
``q``, ``__call__`` for conversion, ordinary arithmetic operators on the
elements, truthiness for the zero test):

* :class:`ExactField` -- elements are :class:`QScalar`, i.e. Q(q).
* :class:`ModField` -- elements are :class:`ModScalar`, the image of Q(q)
  under ``q -> q0`` modulo a word-sized prime.
* :class:`SpecialField` -- elements are :class:`fractions.Fraction`, the image
  of Q(q) under ``q -> c`` for a rational constant ``c`` (used for ``q = 1``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from flint import fmpz_poly

__all__ = [
    "QScalar",
    "ModScalar",
    "ExactField",
    "ModField",
    "SpecialField",
    "BadEvaluationPoint",
    "QInverted",
    "DEFAULT_PRIMES",
    "EXACT",
    "default_modular_fields",
]

# the three largest primes below 2**63
DEFAULT_PRIMES = (9223372036854775783, 9223372036854775643, 9223372036854775549)

_ONE = fmpz_poly([1])
_ZERO = fmpz_poly([])
_Q = fmpz_poly([0, 1])


class BadEvaluationPoint(ZeroDivisionError):
    """The denominator of a rational function vanishes at the chosen point."""


def _horner_mod(poly: fmpz_poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(poly.coeffs()):
        acc = (acc * x + int(c)) % p
    return acc


def _horner_frac(poly: fmpz_poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly.coeffs()):
        acc = acc * x + int(c)
    return acc


class QScalar:
    """Element of Q(q) stored as a reduced fraction of integer polynomials.

    The denominator is primitive up to sign with positive leading
    coefficient and shares no factor with the numerator, so two equal
    elements always have identical fields.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, _normalized=False):
        if isinstance(num, QScalar):
            if den is not None:
                raise TypeError("cannot combine a QScalar numerator with a denominator")
            self.num, self.den, self._hash = num.num, num.den, num._hash
            return
        if isinstance(num, Fraction):
            if den is not None:
                raise TypeError("cannot combine a Fraction numerator with a denominator")
            num, den = fmpz_poly([num.numerator]), fmpz_poly([num.denominator])
            _normalized = True
        if not isinstance(num, fmpz_poly):
            num = fmpz_poly(list(num) if isinstance(num, (list, tuple)) else [num])
        if den is None:
            den = _ONE
            _normalized = True
        elif not isinstance(den, fmpz_poly):
            den = fmpz_poly(list(den) if isinstance(den, (list, tuple)) else [den])
        if den == 0:
            raise ZeroDivisionError("QScalar with zero denominator")
        self._hash = None
        if _normalized:
            self.num, self.den = num, den
        else:
            self.num, self.den = self._reduce(num, den)

    @staticmethod
    def _reduce(num: fmpz_poly, den: fmpz_poly):
        if num == 0:
            return _ZERO, _ONE
        if den == _ONE:
            return num, den
        g = num.gcd(den)
        if g != _ONE:
            num = num // g
            den = den // g
        if den.coeffs()[-1] < 0:
            num, den = -num, -den
        return num, den

    # -- constructors -------------------------------------------------------
    @classmethod
    def q(cls) -> "QScalar":
        return cls(_Q, _ONE, _normalized=True)

    @classmethod
    def q_power(cls, k: int) -> "QScalar":
        if k >= 0:
            return cls(fmpz_poly([0] * k + [1]), _ONE, _normalized=True)
        return cls(_ONE, fmpz_poly([0] * (-k) + [1]), _normalized=True)

    @classmethod
    def coerce(cls, x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        if isinstance(x, int):
            return cls(fmpz_poly([x]), _ONE, _normalized=True)
        if isinstance(x, Fraction):
            return cls(x)
        raise TypeError(f"cannot convert {type(x).__name__} to QScalar")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QScalar):
            if isinstance(other, int):
                return QScalar(self.num + other * self.den, self.den, _normalized=True)
            other = QScalar.coerce(other)
        if self.den == other.den:
            return QScalar(self.num + other.num, self.den)
        return QScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QScalar(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-QScalar.coerce(other))

    def __rsub__(self, other):
        return QScalar.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, QScalar):
            if isinstance(other, int):
                if other == 0:
                    return QScalar(_ZERO, _ONE, _normalized=True)
                return QScalar(self.num * other, self.den)
            if isinstance(other, Fraction):
                other = QScalar.coerce(other)
            else:
                return NotImplemented
        if self.den == _ONE and other.den == _ONE:
            return QScalar(self.num * other.num, _ONE, _normalized=True)
        return QScalar(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "QScalar":
        if self.num == 0:
            raise ZeroDivisionError("division by zero in Q(q)")
        return QScalar(self.den, self.num)

    def __truediv__(self, other):
        return self * QScalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return QScalar(self.num ** k, self.den ** k, _normalized=True)

    # -- comparison ---------------------------------------------------------
    def __bool__(self):
        return self.num != 0

    def __eq__(self, other):
        if isinstance(other, QScalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == QScalar.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # -- maps ---------------------------------------------------------------
    def eval_mod(self, p: int, q0: int) -> "ModScalar":
        return ModField(p, q0).convert_qscalar(self)

    def eval_at(self, c: Fraction) -> Fraction:
        d = _horner_frac(self.den, Fraction(c))
        if d == 0:
            raise BadEvaluationPoint(f"denominator vanishes at q = {c}")
        return _horner_frac(self.num, Fraction(c)) / d

    def invert_q(self) -> "QScalar":
        """Image under the field automorphism q -> 1/q."""
        dn, dd = self.num.degree(), self.den.degree()
        top = max(dn, dd, 0)
        num = fmpz_poly(list(reversed(self.num.coeffs())) ) if dn >= 0 else _ZERO
        den = fmpz_poly(list(reversed(self.den.coeffs())))
        # p(1/q) = rev(p)(q) / q^deg(p)
        num = num * fmpz_poly([0] * (top - max(dn, 0)) + [1])
        den = den * fmpz_poly([0] * (top - dd) + [1])
        return QScalar(num, den)

    def degree_bound(self) -> int:
        return max(self.num.degree(), self.den.degree(), 0)

    def is_scalar_integer(self) -> bool:
        return self.den == _ONE and self.num.degree() <= 0

    # -- printing -----------------------------------------------------------
    @staticmethod
    def _poly_str(p: fmpz_poly) -> str:
        coeffs = [int(c) for c in p.coeffs()]
        if not coeffs:
            return "0"
        parts = []
        for e in range(len(coeffs) - 1, -1, -1):
            c = coeffs[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        n = self._poly_str(self.num)
        if self.den == _ONE:
            return n
        d = self._poly_str(self.den)
        if self.num.degree() > 0 and len([c for c in self.num.coeffs() if c]) > 1:
            n = f"({n})"
        if self.den.degree() > 0 and len([c for c in self.den.coeffs() if c]) > 1:
            d = f"({d})"
        elif self.den.degree() > 0 and int(self.den.coeffs()[-1]) != 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"QScalar({self})"


class ModScalar:
    """Residue of an element of Q(q) under q -> q_point (mod prime)."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: "ModField"):
        self.value = value % field.prime
        self.field = field

    @property
    def prime(self) -> int:
        return self.field.prime

    @property
    def q_point(self) -> int:
        return self.field.q_point

    def _v(self, other) -> int:
        if isinstance(other, ModScalar):
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, (Fraction, QScalar)):
            return self.field(other).value
        raise TypeError(f"cannot combine ModScalar with {type(other).__name__}")

    def __add__(self, other):
        return ModScalar(self.value + self._v(other), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return ModScalar(self.value - self._v(other), self.field)

    def __rsub__(self, other):
        return ModScalar(self._v(other) - self.value, self.field)

    def __neg__(self):
        return ModScalar(-self.value, self.field)

    def __mul__(self, other):
        if isinstance(other, ModScalar):
            return ModScalar(self.value * other.value, self.field)
        if isinstance(other, (int, Fraction, QScalar)):
            return ModScalar(self.value * self._v(other), self.field)
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "ModScalar":
        if self.value == 0:
            raise ZeroDivisionError("division by zero modulo prime")
        return ModScalar(pow(self.value, -1, self.field.prime), self.field)

    def __truediv__(self, other):
        o = self._v(other) % self.field.prime
        if o == 0:
            raise ZeroDivisionError("division by zero modulo prime")
        return ModScalar(self.value * pow(o, -1, self.field.prime), self.field)

    def __rtruediv__(self, other):
        return ModScalar(self._v(other), self.field) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModScalar(pow(self.value, k, self.field.prime), self.field)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, ModScalar):
            return self.value == other.value and self.field == other.field
        if isinstance(other, int):
            return self.value == other % self.field.prime
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.prime, self.field.q_point))

    def __repr__(self):
        return f"ModScalar({self.value} mod {self.field.prime}, q={self.field.q_point})"

    __str__ = __repr__


@dataclass(frozen=True)
class ExactField:
    """The field Q(q) itself."""

    name: str = "exact"

    @property
    def zero(self) -> QScalar:
        return QScalar(0)

    @property
    def one(self) -> QScalar:
        return QScalar(1)

    @property
    def q(self) -> QScalar:
        return QScalar.q()

    def q_power(self, k: int) -> QScalar:
        return QScalar.q_power(k)

    def __call__(self, x) -> QScalar:
        return QScalar.coerce(x)

    def describe(self) -> str:
        return "exact Q(q)"


@dataclass(frozen=True)
class ModField:
    """GF(prime) with q evaluated at ``q_point``."""

    prime: int
    q_point: int

    def __post_init__(self):
        if self.q_point % self.prime in (0, 1, self.prime - 1):
            raise ValueError("q_point must avoid 0 and +-1")

    @property
    def name(self) -> str:
        return f"mod({self.prime},{self.q_point})"

    @property
    def zero(self) -> ModScalar:
        return ModScalar(0, self)

    @property
    def one(self) -> ModScalar:
        return ModScalar(1, self)

    @property
    def q(self) -> ModScalar:
        return ModScalar(self.q_point, self)

    def q_power(self, k: int) -> ModScalar:
        return self.q ** k

    def convert_qscalar(self, a: QScalar) -> ModScalar:
        d = _horner_mod(a.den, self.q_point, self.prime)
        if d == 0:
            raise BadEvaluationPoint(
                f"denominator vanishes at q = {self.q_point} mod {self.prime}")
        n = _horner_mod(a.num, self.q_point, self.prime)
        return ModScalar(n * pow(d, -1, self.prime), self)

    def __call__(self, x) -> ModScalar:
        if isinstance(x, ModScalar):
            if x.field != self:
                raise ValueError("residue from a different modular field")
            return x
        if isinstance(x, int):
            return ModScalar(x, self)
        if isinstance(x, Fraction):
            return ModScalar(x.numerator * pow(x.denominator, -1, self.prime), self)
        if isinstance(x, QScalar):
            return self.convert_qscalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to ModScalar")

    def describe(self) -> str:
        return f"GF({self.prime}) at q={self.q_point}"


@dataclass(frozen=True)
class SpecialField:
    """Q with q specialised to a rational constant (q = 1 by default)."""

    q_value: Fraction = Fraction(1)

    @property
    def name(self) -> str:
        return f"special(q={self.q_value})"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    @property
    def q(self) -> Fraction:
        return Fraction(self.q_value)

    def q_power(self, k: int) -> Fraction:
        return Fraction(self.q_value) ** k

    def __call__(self, x) -> Fraction:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, QScalar):
            return x.eval_at(self.q_value)
        raise TypeError(f"cannot convert {type(x).__name__} to Fraction")

    def describe(self) -> str:
        return f"Q at q={self.q_value}"


EXACT = ExactField()


def default_modular_fields(seed: int = 0, primes=DEFAULT_PRIMES) -> list[ModField]:
    """One field per prime, q_point drawn uniformly outside {0, 1, p-1}."""
    rng = random.Random(seed)
    return [ModField(p, rng.randrange(2, p - 1)) for p in primes]


@dataclass(frozen=True)
class QInverted:
    """View of a field with the roles of q and 1/q exchanged.

    Elements are those of ``base``; only ``q`` and ``q_power`` change, which
    is all the operator constructors consult.
    """

    base: object

    @property
    def name(self) -> str:
        return f"{self.base.name}[q->1/q]"

    @property
    def zero(self):
        return self.base.zero

    @property
    def one(self):
        return self.base.one

    @property
    def q(self):
        return self.base.q_power(-1)

    def q_power(self, k: int):
        return self.base.q_power(-k)

    def __call__(self, x):
        return self.base(x)
