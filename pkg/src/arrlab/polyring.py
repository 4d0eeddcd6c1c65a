"""Homogeneous polynomials in x, y, z over an exact field.

A :class:`HomogPoly` is a sparse map from exponent triples to nonzero field
scalars plus an explicit degree tag, so the zero polynomial of degree ``m``
is distinct from the zero polynomial of degree ``m + 1``.  Monomials are
indexed in graded-lexicographic order with ``x > y > z``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .errors import FieldMismatchError, ParameterError
from .exactfield import RATIONAL, FieldDescriptor, field_of

Monomial = tuple  # (e_x, e_y, e_z)

VARIABLES = ("x", "y", "z")
_VAR_INDEX = {"x": 0, "y": 1, "z": 2}


def _var_index(var) -> int:
    if isinstance(var, int) and 0 <= var < 3:
        return var
    try:
        return _VAR_INDEX[var]
    except (KeyError, TypeError):
        raise ParameterError(f"unknown variable {var!r}") from None


@lru_cache(maxsize=None)
def monomial_basis(m: int) -> tuple[Monomial, ...]:
    """All degree-``m`` monomials, graded-lex with x > y > z.

    >>> monomial_basis(1)
    ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    """
    if m < 0:
        return ()
    return tuple((ex, ey, m - ex - ey) for ex in range(m, -1, -1) for ey in range(m - ex, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(m: int) -> dict:
    return {mono: i for i, mono in enumerate(monomial_basis(m))}


def dim_S(m: int) -> int:
    """Dimension of the space of degree-m forms in three variables."""
    return (m + 1) * (m + 2) // 2 if m >= 0 else 0


class HomogPoly:
    """Immutable homogeneous polynomial in x, y, z."""

    __slots__ = ("field", "degree", "_terms", "_hash")

    def __init__(self, field: FieldDescriptor, degree: int, terms: Mapping | None = None):
        if degree < 0:
            raise ParameterError("degree must be non-negative")
        clean = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != 3 or sum(mono) != degree or min(mono) < 0:
                raise ParameterError(f"monomial {mono} is not of degree {degree}")
            coef = field(coef)
            if coef:
                clean[mono] = coef
        self.field = field
        self.degree = degree
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, degree, terms):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.field = field
        obj.degree = degree
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldDescriptor = RATIONAL, degree: int = 0) -> "HomogPoly":
        return cls._raw(field, degree, {})

    @classmethod
    def constant(cls, value, field: FieldDescriptor = RATIONAL) -> "HomogPoly":
        return cls(field, 0, {(0, 0, 0): value})

    @classmethod
    def var(cls, name, field: FieldDescriptor = RATIONAL) -> "HomogPoly":
        e = [0, 0, 0]
        e[_var_index(name)] = 1
        return cls._raw(field, 1, {tuple(e): field.one()})

    @classmethod
    def linear(cls, a, b, c, field: FieldDescriptor | None = None) -> "HomogPoly":
        """The form a*x + b*y + c*z."""
        if field is None:
            field = next((field_of(v) for v in (a, b, c) if not field_of(v).is_rational), RATIONAL)
        return cls(field, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    @classmethod
    def from_vector(cls, field, degree, vec) -> "HomogPoly":
        """Inverse of :meth:`to_vector` (dense list or sparse {index: coef})."""
        basis = monomial_basis(degree)
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        return cls._raw(field, degree, {basis[i]: c for i, c in items if c})

    # -- access -----------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, mono):
        return self._terms.get(tuple(mono), self.field.zero())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def to_vector(self) -> dict:
        """Sparse coordinate dict {monomial index: coef} in the graded-lex basis."""
        idx = monomial_index(self.degree)
        return {idx[m]: c for m, c in self._terms.items()}

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if not self._terms and not other._terms:
            return True  # the degree tag of 0 is bookkeeping, not part of its value
        return self.degree == other.degree and self.field == other.field and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._terms.items()))) if self._terms else 0
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "HomogPoly"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check(other)
        if other.degree != self.degree:
            if not other._terms:
                return self
            if not self._terms:
                return other
            raise ParameterError("cannot add forms of different degrees")
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return HomogPoly._raw(self.field, self.degree, out)

    def __neg__(self):
        return HomogPoly._raw(self.field, self.degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> "HomogPoly":
        k = self.field(k)
        if not k:
            return HomogPoly.zero(self.field, self.degree)
        return HomogPoly._raw(self.field, self.degree, {m: c * k for m, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, HomogPoly):
            try:
                return self.scale(other)
            except FieldMismatchError:
                return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        result = HomogPoly.constant(1, self.field)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, mono) -> "HomogPoly":
        """Multiply by a monomial (coefficient 1)."""
        a, b, c = mono
        return HomogPoly._raw(
            self.field,
            self.degree + a + b + c,
            {(m[0] + a, m[1] + b, m[2] + c): v for m, v in self._terms.items()},
        )

    def diff(self, var) -> "HomogPoly":
        return partial_derivative(self, var)

    def __call__(self, *point):
        if len(point) == 1:
            point = point[0]
        return evaluate(self, point)

    def __repr__(self):
        return f"HomogPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in monomial_basis(self.degree):
            c = self._terms.get(mono)
            if c is None:
                continue
            mono_s = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(VARIABLES, mono) if e
            )
            cs = str(c)
            compound = any(ch in cs[1:] for ch in "+-")
            if compound:
                cs = f"({cs})"
            if not mono_s:
                body = cs
            elif cs == "1":
                body = mono_s
            elif cs == "-1":
                body = "-" + mono_s
            else:
                body = f"{cs}*{mono_s}"
            if parts and not body.startswith("-"):
                body = "+" + body
            parts.append(body)
        return "".join(parts)


def multiply(p: HomogPoly, q: HomogPoly) -> HomogPoly:
    """Exact product; degrees add."""
    p._check(q)
    out: dict = {}
    for (a0, a1, a2), c in p._terms.items():
        for (b0, b1, b2), d in q._terms.items():
            key = (a0 + b0, a1 + b1, a2 + b2)
            v = out.get(key)
            v = c * d if v is None else v + c * d
            out[key] = v
    out = {m: c for m, c in out.items() if c}
    return HomogPoly._raw(p.field, p.degree + q.degree, out)


def product(polys: Iterable[HomogPoly], field: FieldDescriptor = RATIONAL) -> HomogPoly:
    result = None
    for p in polys:
        result = p if result is None else result * p
    return result if result is not None else HomogPoly.constant(1, field)


def partial_derivative(p: HomogPoly, var) -> HomogPoly:
    """Formal partial derivative; the degree drops by one (zero stays at degree 0)."""
    i = _var_index(var)
    if p.degree == 0:
        return HomogPoly.zero(p.field, 0)
    out = {}
    for mono, c in p._terms.items():
        e = mono[i]
        if e:
            m = list(mono)
            m[i] -= 1
            out[tuple(m)] = c * e
    return HomogPoly._raw(p.field, p.degree - 1, out)


def gradient(p: HomogPoly) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
    return tuple(partial_derivative(p, v) for v in range(3))


def evaluate(p: HomogPoly, point) -> object:
    """Evaluate at a representative of a projective point."""
    point = tuple(p.field(c) for c in point)
    if len(point) != 3:
        raise ParameterError("a projective point has three coordinates")
    if not any(point):
        raise ParameterError("(0,0,0) is not a projective point")
    total = p.field.zero()
    x, y, z = point
    for (a, b, c), coef in p._terms.items():
        total = total + coef * (x**a) * (y**b) * (z**c)
    return total


def g_range(i: int, j: int, u="x", v="y", field: FieldDescriptor = RATIONAL) -> HomogPoly:
    """The product (u - i v)(u - (i+1) v) ... (u - j v), of degree j - i + 1."""
    if i > j:
        raise ParameterError(f"g_range needs i <= j, got i={i}, j={j}")
    iu, iv = _var_index(u), _var_index(v)
    if iu == iv:
        raise ParameterError("u and v must be distinct variables")
    U = HomogPoly.var(iu, field)
    V = HomogPoly.var(iv, field)
    return product((U - V.scale(k) for k in range(i, j + 1)), field)


def divide_exact(num: HomogPoly, den: HomogPoly) -> HomogPoly | None:
    """Quotient ``num / den`` if ``den`` divides ``num`` exactly, else None.

    Multivariate division by a single polynomial under lex order; the
    remainder is zero exactly when the division is exact.
    """
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return HomogPoly.zero(num.field, max(num.degree - den.degree, 0))
    if num.degree < den.degree:
        return None
    lead = max(den._terms)
    lead_c = den._terms[lead]
    rem = dict(num._terms)
    quot = {}
    while rem:
        top = max(rem)
        if any(t < l for t, l in zip(top, lead)):
            return None
        q_mono = (top[0] - lead[0], top[1] - lead[1], top[2] - lead[2])
        q_c = rem[top] / lead_c
        quot[q_mono] = q_c
        for mono, c in den._terms.items():
            key = (mono[0] + q_mono[0], mono[1] + q_mono[1], mono[2] + q_mono[2])
            v = rem.get(key)
            v = -q_c * c if v is None else v - q_c * c
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return HomogPoly._raw(num.field, num.degree - den.degree, quot)


# --------------------------------------------------------------------------
# linear forms and projective points


def normalize_triple(triple, field: FieldDescriptor | None = None) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    if field is None:
        field = next((field_of(v) for v in triple if not field_of(v).is_rational), RATIONAL)
    vals = tuple(field(c) for c in triple)
    if len(vals) != 3:
        raise ParameterError("expected three coordinates")
    for c in vals:
        if c:
            if c == 1:
                return vals
            inv = 1 / c
            return tuple(v * inv for v in vals)
    raise ParameterError("(0,0,0) does not define a line or a point")


def cross(u, v) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


class LinearForm:
    """The line a*x + b*y + c*z = 0, normalized so the first nonzero coefficient is 1."""

    __slots__ = ("field", "coeffs")

    def __init__(self, a, b, c, field: FieldDescriptor | None = None):
        coeffs = normalize_triple((a, b, c), field)
        self.field = field if field is not None else field_of_triple(coeffs)
        self.coeffs = coeffs

    @property
    def a(self):
        return self.coeffs[0]

    @property
    def b(self):
        return self.coeffs[1]

    @property
    def c(self):
        return self.coeffs[2]

    def poly(self) -> HomogPoly:
        return HomogPoly.linear(*self.coeffs, field=self.field)

    def contains(self, point) -> bool:
        return not dot(self.coeffs, point)

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"LinearForm({self.poly()})"

    def __str__(self):
        return str(self.poly())


def field_of_triple(triple) -> FieldDescriptor:
    return next((field_of(v) for v in triple if not field_of(v).is_rational), RATIONAL)


def line_through(p, q, field: FieldDescriptor | None = None) -> LinearForm:
    """The line joining two distinct projective points."""
    return LinearForm(*cross(p, q), field=field)


def meet(l1, l2, field: FieldDescriptor | None = None) -> tuple:
    """Normalized intersection point of two distinct lines."""
    u = l1.coeffs if isinstance(l1, LinearForm) else l1
    v = l2.coeffs if isinstance(l2, LinearForm) else l2
    return normalize_triple(cross(u, v), field)
