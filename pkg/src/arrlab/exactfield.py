"""Exact scalars: rationals and cyclotomic fields Q(zeta_n).

Rationals are ``gmpy2.mpq`` values used directly.  Elements of Q(zeta_n) are
:class:`CyclotomicElement` instances holding their coordinates in the power
basis ``1, w, ..., w^(phi(n)-1)`` fully reduced modulo the n-th cyclotomic
polynomial, so equality is coordinate-wise.

Every scalar belongs to a :class:`FieldDescriptor`.  The descriptor coerces
plain integers and rationals into the field, parses and formats the textual
scalar grammar and answers ``zero()``/``one()``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from gmpy2 import mpq

from .errors import FieldMismatchError, ParseError

Rational = type(mpq())

__all__ = [
    "Rational",
    "FieldDescriptor",
    "CyclotomicElement",
    "RATIONAL",
    "cyclotomic_polynomial",
    "euler_phi",
    "invert",
    "field_of",
]


# --------------------------------------------------------------------------
# univariate helpers (coefficient lists, lowest degree first)


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(num, den):
    """Exact long division of univariate polynomials over Q."""
    num = _trim(num)
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [], num
    quot = [mpq(0)] * (len(num) - len(den) + 1)
    rem = [mpq(c) for c in num]
    lead = mpq(den[-1])
    for shift in range(len(num) - len(den), -1, -1):
        c = rem[shift + len(den) - 1] / lead
        quot[shift] = c
        if c:
            for i, dc in enumerate(den):
                rem[shift + i] -= c * dc
    return _trim(quot), _trim(rem[: len(den) - 1])


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [mpq(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_sub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [mpq(0)] * (n - len(p))
    q = list(q) + [mpq(0)] * (n - len(q))
    return _trim([a - b for a, b in zip(p, q)])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Obtained by dividing ``t^n - 1`` by ``Phi_d`` for every proper divisor
    ``d`` of ``n``; each division is exact.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial requires n >= 1")
    num = [mpq(-1)] + [mpq(0)] * (n - 1) + [mpq(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, [mpq(c) for c in cyclotomic_polynomial(d)])
            if rem:
                raise ArithmeticError(f"inexact division by Phi_{d}")
    coeffs = []
    for c in num:
        if c.denominator != 1:
            raise ArithmeticError("non-integral cyclotomic coefficient")
        coeffs.append(int(c.numerator))
    return tuple(coeffs)


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# --------------------------------------------------------------------------
# scalar grammar

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_TERM_RE = re.compile(r"[+-]?[^+-]+")
_CYC_TERM_RE = re.compile(
    r"^(?P<sign>[+-]?)(?:(?P<coef>\d+(?:/\d+)?)(?P<star>\*)?)?(?P<w>w(?:\^(?P<exp>\d+))?)?$"
)


def _parse_rational(text: str) -> Rational:
    if not _RATIONAL_RE.match(text):
        raise ParseError(f"malformed rational scalar {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return mpq(text)


@dataclass(frozen=True)
class FieldDescriptor:
    """The exact field an arrangement lives in: Q, or Q(zeta_n)."""

    kind: str
    conductor: int = 1

    def __post_init__(self):
        if self.kind not in ("rational", "cyclotomic"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.conductor < 1:
            raise ValueError("conductor must be positive")
        if self.kind == "rational" and self.conductor != 1:
            raise ValueError("the rational field has conductor 1")

    @classmethod
    def cyclotomic(cls, n: int) -> "FieldDescriptor":
        return cls("cyclotomic", n)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def modulus(self) -> tuple[int, ...]:
        if self.is_rational:
            return (0, 1)
        return cyclotomic_polynomial(self.conductor)

    @property
    def degree(self) -> int:
        """Degree of the field over Q."""
        return 1 if self.is_rational else euler_phi(self.conductor)

    def __str__(self):
        return "rational" if self.is_rational else f"cyclotomic {self.conductor}"

    # -- construction ------------------------------------------------------

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        """zeta_n as a field element (1 for the rational field)."""
        if self.is_rational:
            return mpq(1)
        return CyclotomicElement._from_poly(self, [mpq(0), mpq(1)])

    def root_of_unity(self, k: int):
        """zeta_n^k."""
        if self.is_rational:
            return mpq(1)
        return self.gen() ** (k % self.conductor)

    def __call__(self, value):
        """Coerce an int, rational or element of this field into the field."""
        if isinstance(value, CyclotomicElement):
            if value.field != self:
                raise FieldMismatchError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Rational)) or hasattr(value, "denominator"):
            q = mpq(value)
            if self.is_rational:
                return q
            return CyclotomicElement(self, (q,) + (mpq(0),) * (self.degree - 1))
        raise FieldMismatchError(f"cannot coerce {value!r} into {self}")

    def contains(self, value) -> bool:
        if isinstance(value, CyclotomicElement):
            return value.field == self
        return isinstance(value, (int, Rational))

    # -- text --------------------------------------------------------------

    def parse(self, text: str):
        """Parse the textual scalar grammar (``-3``, ``5/7``, ``1+w^2``, ``-2/3*w``)."""
        text = text.strip()
        if not text or any(ch.isspace() for ch in text):
            raise ParseError(f"malformed scalar {text!r}")
        if self.is_rational:
            return _parse_rational(text)
        acc = self.zero()
        for term in _TERM_RE.findall(text):
            m = _CYC_TERM_RE.match(term)
            if not m or (m.group("coef") is None and m.group("w") is None):
                raise ParseError(f"malformed cyclotomic scalar {text!r}")
            if m.group("star") and not m.group("w"):
                raise ParseError(f"dangling '*' in {text!r}")
            coef = _parse_rational(m.group("coef") or "1")
            if m.group("sign") == "-":
                coef = -coef
            exp = 0
            if m.group("w"):
                exp = int(m.group("exp")) if m.group("exp") else 1
            acc = acc + self.root_of_unity(exp) * coef
        consumed = "".join(_TERM_RE.findall(text))
        if consumed != text:
            raise ParseError(f"malformed cyclotomic scalar {text!r}")
        return acc

    def format(self, value) -> str:
        return str(self(value))

    def to_rational(self, value):
        """Return ``value`` as an mpq if it lies in Q, else None."""
        value = self(value)
        if self.is_rational:
            return value
        if all(not c for c in value.coeffs[1:]):
            return value.coeffs[0]
        return None


RATIONAL = FieldDescriptor("rational")


def field_of(value) -> FieldDescriptor:
    if isinstance(value, CyclotomicElement):
        return value.field
    return RATIONAL


# --------------------------------------------------------------------------
# cyclotomic elements


class CyclotomicElement:
    """Immutable element of Q(zeta_n) in the power basis."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldDescriptor, coeffs):
        coeffs = tuple(mpq(c) for c in coeffs)
        if len(coeffs) != field.degree:
            raise ValueError(f"expected {field.degree} coordinates, got {len(coeffs)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicElement is immutable")

    @classmethod
    def _from_poly(cls, field: FieldDescriptor, poly):
        """Reduce an arbitrary coefficient list modulo Phi_n."""
        phi = field.degree
        poly = [mpq(c) for c in poly]
        if len(poly) > phi:
            mod = field.modulus
            for top in range(len(poly) - 1, phi - 1, -1):
                c = poly[top]
                if c:
                    poly[top] = mpq(0)
                    base = top - phi
                    for i in range(phi):
                        if mod[i]:
                            poly[base + i] -= c * mod[i]
            poly = poly[:phi]
        poly += [mpq(0)] * (phi - len(poly))
        return cls(field, poly)

    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Rational)) or hasattr(other, "denominator"):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.field, [-a for a in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return CyclotomicElement(self.field, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement._from_poly(self.field, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_n."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        # invariant: s * self == r  (mod Phi_n)
        r0, r1 = [mpq(c) for c in self.field.modulus], _trim(self.coeffs)
        s0, s1 = [], [mpq(1)]
        while len(r1) > 1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ArithmeticError("element shares a factor with the modulus")
        c = r1[0]
        return CyclotomicElement._from_poly(self.field, [a / c for a in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return CyclotomicElement(self.field, [a / other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            if not any(self.coeffs[1:]):
                h = hash(self.coeffs[0])
            else:
                h = hash((self.field, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mono = "w" if k == 1 else f"w^{k}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else ("+" if parts else "")
            parts.append(sign + body)
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"CyclotomicElement({self.field.conductor}, {str(self)!r})"


Scalar = Union[Rational, CyclotomicElement]


def invert(a):
    """Multiplicative inverse of a rational or cyclotomic scalar."""
    if isinstance(a, CyclotomicElement):
        return a.inverse()
    a = mpq(a)
    if not a:
        raise ZeroDivisionError("inverse of zero")
    return 1 / a
