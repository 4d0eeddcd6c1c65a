"""Jacobian syzygies of a line arrangement by exact linear algebra.

AR(f)_m is the kernel of (a, b, c) -> a f_x + b f_y + c f_z on S_m^3.  All
dimensions, the minimal degree mdr(f), minimal generators, the relation of
a nearly free arrangement and the Hilbert function of S/J_f come from ranks
and kernels of these maps over the monomial bases of :mod:`arrlab.polyring`.

When the lines live in Q(zeta_n) but f itself has rational coefficients (the
monomial families), the linear algebra runs over Q; ranks do not change
under field extension and rational syzygies are syzygies over Q(zeta_n).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .arrangement import Arrangement, ArrangementClass
from .errors import ConsistencyError, NotApplicableError, ParameterError, PencilError
from .exactfield import RATIONAL
from .exactlinalg import EchelonBasis, Matrix, kernel_basis, matrix_from_columns, rank
from .polyring import (
    HomogPoly,
    cross,
    dim_S,
    divide_exact,
    gradient,
    monomial_basis,
    monomial_index,
    normalize_triple,
)

__all__ = [
    "Syzygy",
    "FreenessClassification",
    "GeneratorRelation",
    "SaitoResult",
    "ar_dimension",
    "graded_dimensions",
    "mdr",
    "classify",
    "minimal_generators",
    "minimal_generator_degrees",
    "saito_check",
    "generator_relation",
    "jacobian_hilbert",
    "stabilized_tau",
    "deg_I_crosscheck",
    "default_cap",
]

CAP_ENV = "ARRLAB_CAP"


def default_cap(d: int) -> int:
    """mdr search cap: $ARRLAB_CAP if set, else d - 1."""
    env = os.environ.get(CAP_ENV)
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise ParameterError(f"{CAP_ENV}={env!r} is not an integer") from None
        if cap < 1:
            raise ParameterError(f"{CAP_ENV} must be positive")
        return cap
    return d - 1


def _descend(f: HomogPoly) -> HomogPoly:
    """f over Q when all its coefficients are rational, else f unchanged."""
    if f.field.is_rational:
        return f
    terms = {}
    for mono, c in f.items():
        q = f.field.to_rational(c)
        if q is None:
            return f
        terms[mono] = q
    return HomogPoly._raw(RATIONAL, f.degree, terms)


def _lift(p: HomogPoly, field) -> HomogPoly:
    if p.field == field:
        return p
    return HomogPoly(field, p.degree, p.terms)


@lru_cache(maxsize=64)
def _gradient_vectors(f: HomogPoly, m: int) -> list[dict]:
    """Sparse images mono * f_k in S_{m+d-1}, ordered by (k, mono)."""
    idx = monomial_index(m + f.degree - 1)
    out = []
    for g in gradient(f):
        terms = list(g.items())
        for a, b, c in monomial_basis(m):
            out.append({idx[(e0 + a, e1 + b, e2 + c)]: v for (e0, e1, e2), v in terms})
    return out


def _jacobian_rank(f: HomogPoly, m: int) -> int:
    """Rank of S_m^3 -> S_{m+d-1}."""
    if m < 0:
        return 0
    vecs = _gradient_vectors(f, m)
    M = Matrix._trusted(f.field, len(vecs), dim_S(m + f.degree - 1), [dict(v) for v in vecs])
    return rank(M)


@lru_cache(maxsize=256)
def _ar_dimension(f: HomogPoly, m: int) -> int:
    return 3 * dim_S(m) - _jacobian_rank(f, m)


def ar_dimension(f: HomogPoly, m: int) -> int:
    """dim AR(f)_m."""
    if m < 0:
        return 0
    return _ar_dimension(_descend(f), m)


def graded_dimensions(f: HomogPoly, cap: int) -> dict[int, int]:
    return {m: ar_dimension(f, m) for m in range(cap + 1)}


def mdr(f: HomogPoly, cap: int | None = None) -> int:
    """Minimal degree of a nonzero Jacobian syzygy (f not a pencil)."""
    if ar_dimension(f, 0) > 0:
        raise PencilError("the lines are concurrent, mdr(f) = 0")
    if cap is None:
        cap = default_cap(f.degree)
    for m in range(1, cap + 1):
        if ar_dimension(f, m) > 0:
            return m
    raise ParameterError(f"no syzygy of degree <= {cap}; raise the cap (d-1 always suffices)")


# --------------------------------------------------------------------------
# syzygies


class Syzygy:
    """A triple (a, b, c) of degree-m forms with a f_x + b f_y + c f_z = 0."""

    __slots__ = ("f", "degree", "a", "b", "c")

    def __init__(self, f: HomogPoly, a: HomogPoly, b: HomogPoly, c: HomogPoly):
        if not (a.degree == b.degree == c.degree):
            raise ParameterError("syzygy components must share a degree")
        fx, fy, fz = gradient(f)
        if not (a * fx + b * fy + c * fz).is_zero():
            raise ConsistencyError("a f_x + b f_y + c f_z != 0")
        self.f, self.degree, self.a, self.b, self.c = f, a.degree, a, b, c

    @classmethod
    def from_vector(cls, f: HomogPoly, m: int, vec, field=None) -> "Syzygy":
        field = field or f.field
        n = dim_S(m)
        parts = [{}, {}, {}]
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for j, v in items:
            if v:
                parts[j // n][j % n] = v
        comps = [_lift(HomogPoly.from_vector(f.field, m, p), field) for p in parts]
        return cls(_lift(f, field), *comps)

    def components(self):
        return (self.a, self.b, self.c)

    def to_vector(self) -> dict:
        n = dim_S(self.degree)
        out = {}
        for k, p in enumerate(self.components()):
            for j, v in p.to_vector().items():
                out[k * n + j] = v
        return out

    def shift(self, mono) -> "Syzygy":
        s = Syzygy.__new__(Syzygy)
        s.f = self.f
        s.a, s.b, s.c = (p.shift(mono) for p in self.components())
        s.degree = self.degree + sum(mono)
        return s

    def __repr__(self):
        return f"Syzygy(deg={self.degree}: {self.a}, {self.b}, {self.c})"


def _syzygy_space(f: HomogPoly, m: int) -> list[dict]:
    """Kernel basis of S_m^3 -> S_{m+d-1} as sparse vectors (deterministic order)."""
    vecs = _gradient_vectors(f, m)
    M = matrix_from_columns(f.field, dim_S(m + f.degree - 1), vecs)
    return [{j: v for j, v in enumerate(k) if v} for k in kernel_basis(M)]


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class FreenessClassification:
    mdr: int
    arrangement_class: ArrangementClass
    tau_used: int
    deg_I: int
    d: int

    @property
    def kind(self) -> str:
        return self.arrangement_class.kind

    @property
    def exponents(self):
        return self.arrangement_class.exponents


def classify(A: Arrangement, cap: int | None = None) -> FreenessClassification:
    """Free / nearly free test from mdr (linear algebra) and tau (lattice)."""
    f = A.defining_poly
    d = A.d
    r = mdr(f, cap)
    tau = A.lattice.tau
    bound = (d - 1) ** 2 - r * (d - 1 - r)
    deg_I = bound - tau
    if deg_I < 0:
        raise ConsistencyError(f"tau={tau} exceeds (d-1)^2 - r(d-1-r) = {bound}")
    if deg_I == 0:
        cls = ArrangementClass.free(r, d - 1 - r)
        if not r <= d - 1 - r:
            raise ConsistencyError("free arrangement with r > d-1-r")
        extra = 1
    elif deg_I == 1:
        cls = ArrangementClass.nearly_free(r, d - r)
        if not 2 * r <= d:
            raise ConsistencyError("nearly free arrangement with 2r > d")
        extra = 2
    else:
        cls = ArrangementClass("Other")
        extra = None
    if extra is not None:
        d1, d2 = cls.exponents
        expected = dim_S(d2 - d1) + extra
        got = ar_dimension(f, d2)
        if got != expected:
            raise ConsistencyError(f"dim AR(f)_{d2} = {got}, generator count predicts {expected}")
    return FreenessClassification(r, cls, tau, deg_I, d)


def minimal_generators(A: Arrangement, classification: FreenessClassification | None = None) -> list[Syzygy]:
    """A minimal generating set of AR(f) for a free or nearly free arrangement.

    Degree by degree, the span of monomial multiples of the generators found
    so far is extended greedily by the kernel basis in its fixed order.
    """
    cl = classification or classify(A)
    if cl.kind == "Free":
        expected = list(cl.exponents)
    elif cl.kind == "NearlyFree":
        expected = [cl.exponents[0], cl.exponents[1], cl.exponents[1]]
    else:
        raise NotApplicableError("generators are computed for free and nearly free arrangements only")
    f = _descend(A.defining_poly)
    gens: list[Syzygy] = []
    for m in range(cl.mdr, max(expected) + 1):
        E = EchelonBasis(f.field, 3 * dim_S(m))
        for g in gens:
            for mono in monomial_basis(m - g.degree):
                E.add(g.shift(mono).to_vector())
        for vec in _syzygy_space(f, m):
            if E.add(vec):
                gens.append(Syzygy.from_vector(f, m, vec))
    degrees = sorted(g.degree for g in gens)
    if degrees != sorted(expected):
        raise ConsistencyError(f"generator degrees {degrees} != expected {sorted(expected)}")
    return [_lift_syzygy(g, A) for g in gens]


def _lift_syzygy(g: Syzygy, A: Arrangement) -> Syzygy:
    if g.f.field == A.field:
        return g
    return Syzygy(A.defining_poly, *(_lift(p, A.field) for p in g.components()))


def minimal_generator_degrees(A: Arrangement) -> list[int]:
    return sorted(g.degree for g in minimal_generators(A))


# --------------------------------------------------------------------------
# Saito determinant


@dataclass(frozen=True)
class SaitoResult:
    determinant: HomogPoly
    quotient: HomogPoly
    scalar: object | None  # nonzero scalar c when deg rho1 + deg rho2 = d - 1

    @property
    def certifies_free(self) -> bool:
        return self.scalar is not None and bool(self.scalar)


def saito_check(A: Arrangement, rho1: Syzygy, rho2: Syzygy) -> SaitoResult:
    """det[(x, y, z); rho1; rho2] divided by f."""
    F = A.field
    x, y, z = (HomogPoly.var(v, F) for v in "xyz")
    a1, b1, c1 = (_lift(p, F) for p in rho1.components())
    a2, b2, c2 = (_lift(p, F) for p in rho2.components())
    det = x * (b1 * c2 - c1 * b2) - y * (a1 * c2 - c1 * a2) + z * (a1 * b2 - b1 * a2)
    q = divide_exact(det, A.defining_poly)
    if q is None:
        raise ConsistencyError("Saito determinant is not divisible by f")
    scalar = None
    if rho1.degree + rho2.degree == A.d - 1:
        scalar = q.coefficient((0, 0, 0))
    return SaitoResult(det, q, scalar)


# --------------------------------------------------------------------------
# relation of a nearly free arrangement


@dataclass(frozen=True)
class GeneratorRelation:
    generators: tuple
    h1: HomogPoly
    h2: HomogPoly
    h3: HomogPoly
    jumping_point: tuple
    unique: bool


def generator_relation(A: Arrangement, generators: list[Syzygy] | None = None) -> GeneratorRelation:
    """The relation h1 rho1 + h2 rho2 + h3 rho3 = 0 and the jumping point h2 = h3 = 0."""
    if generators is None:
        cl = classify(A)
        if cl.kind != "NearlyFree":
            raise NotApplicableError(f"relation needs a nearly free arrangement, got {cl.arrangement_class}")
        generators = minimal_generators(A, cl)
    rho1, rho2, rho3 = sorted(generators, key=lambda g: g.degree)
    d1, d2 = rho1.degree, rho2.degree
    if rho3.degree != d2:
        raise NotApplicableError("expected generator degrees (d1, d2, d2)")
    F = A.field
    e = d2 - d1 + 1
    top = d2 + 1
    cols = []
    for mono in monomial_basis(e):
        cols.append(rho1.shift(mono).to_vector())
    for g in (rho2, rho3):
        for mono in monomial_basis(1):
            cols.append(g.shift(mono).to_vector())
    M = matrix_from_columns(F, 3 * dim_S(top), cols)
    K = kernel_basis(M)
    if len(K) != 1:
        raise ConsistencyError(f"relation space has dimension {len(K)}, expected 1")
    v = K[0]
    ne = dim_S(e)
    h1 = HomogPoly.from_vector(F, e, v[:ne])
    h2 = HomogPoly.from_vector(F, 1, v[ne : ne + 3])
    h3 = HomogPoly.from_vector(F, 1, v[ne + 3 : ne + 6])
    l2 = tuple(v[ne : ne + 3])
    l3 = tuple(v[ne + 3 : ne + 6])
    p = cross(l2, l3)
    if not any(p):
        raise ConsistencyError("h2 and h3 are linearly dependent")
    P = normalize_triple(p, F)
    return GeneratorRelation((rho1, rho2, rho3), h1, h2, h3, P, 2 * d1 < A.d)


# --------------------------------------------------------------------------
# Jacobian algebra


@lru_cache(maxsize=256)
def _jacobian_hilbert(f: HomogPoly, k: int) -> int:
    return dim_S(k) - _jacobian_rank(f, k - f.degree + 1)


def jacobian_hilbert(f: HomogPoly, k: int) -> int:
    """dim (S/J_f)_k."""
    if k < 0:
        return 0
    return _jacobian_hilbert(_descend(f), k)


def stabilized_tau(f: HomogPoly) -> int:
    """dim M(f)_s at s = 3d, after checking it agrees with s = 3d + 1."""
    d = f.degree
    a, b = jacobian_hilbert(f, 3 * d), jacobian_hilbert(f, 3 * d + 1)
    if a != b:
        raise ConsistencyError(f"Jacobian Hilbert function not stable: {a} at 3d, {b} at 3d+1")
    return a


def deg_I_crosscheck(A: Arrangement, classification: FreenessClassification | None = None) -> bool:
    """deg I from tau equals (d-1)^2 - r(d-1-r) - dim M(f)_s for s = 3d, 3d+1."""
    cl = classification or classify(A)
    d, r = A.d, cl.mdr
    bound = (d - 1) ** 2 - r * (d - 1 - r)
    values = [bound - jacobian_hilbert(A.defining_poly, s) for s in (3 * d, 3 * d + 1)]
    if values[0] != values[1] or values[0] != cl.deg_I:
        raise ConsistencyError(f"deg I = {cl.deg_I} but Hilbert function gives {values}")
    return True
