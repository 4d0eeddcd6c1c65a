"""Constructors for the example families used as the regression corpus.

Each constructor checks the lattice shape it promises (multiplicities of
the named points, genericity of the rest) and raises instead of returning
a different arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement
from .errors import GenericityError, ParameterError
from .exactfield import RATIONAL, FieldDescriptor
from .polyring import normalize_triple

__all__ = [
    "FamilySpec",
    "full_monomial",
    "monomial",
    "L_family",
    "hat_L",
    "tilde_A",
    "example_B",
    "example_C",
    "build",
    "FAMILIES",
    "promised_invariants",
]


def _expect_point(A: Arrangement, coords, mult: int, what: str):
    p = normalize_triple(coords, A.field)
    for pt in A.lattice.points:
        if pt.coords == p:
            if pt.multiplicity != mult:
                raise GenericityError(f"{what}: point {coords} has multiplicity {pt.multiplicity}, expected {mult}")
            return
    raise GenericityError(f"{what}: {coords} is not an intersection point")


def _nk(A: Arrangement) -> dict:
    return A.lattice.multiplicity_counts


def full_monomial(m: int) -> Arrangement:
    """xyz(x^m - y^m)(x^m - z^m)(y^m - z^m): 3m + 3 lines."""
    if m < 1:
        raise ParameterError("full_monomial needs m >= 1")
    F = RATIONAL if m <= 2 else FieldDescriptor.cyclotomic(m)
    zeta = F.root_of_unity
    lines = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for k in range(m):
        e = zeta(k) if m > 2 else F((-1) ** k)
        lines += [(1, -e, 0), (1, 0, -e), (0, 1, -e)]
    A = Arrangement(lines, F)
    for pt in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        _expect_point(A, pt, m + 2, f"full_monomial({m})")
    if m >= 2 and _nk(A).get(3) != m * m:
        raise GenericityError(f"full_monomial({m}): expected {m * m} triple points")
    return A


def monomial(m: int) -> Arrangement:
    """(x^m - y^m)(x^m - z^m)(y^m - z^m): 3m lines."""
    if m < 2:
        raise ParameterError("monomial needs m >= 2")
    F = RATIONAL if m == 2 else FieldDescriptor.cyclotomic(m)
    lines = []
    for k in range(m):
        e = F((-1) ** k) if m == 2 else F.root_of_unity(k)
        lines += [(1, -e, 0), (1, 0, -e), (0, 1, -e)]
    A = Arrangement(lines, F)
    expected = {3: m * m, m: 3} if m != 3 else {3: m * m + 3}
    if _nk(A) != expected:
        raise GenericityError(f"monomial({m}): multiplicity counts {_nk(A)} != {expected}")
    return A


def L_family(d: int, m: int) -> Arrangement:
    """One point of multiplicity m, all other intersection points double.

    m concurrent lines y - kx through (0:0:1) and d - m lines
    z - jx - j^2 y with moment-curve coefficients.
    """
    if d < 4 or not 3 <= m <= d - 1:
        raise ParameterError(f"L({d},{m}) needs d >= 4 and 3 <= m <= d-1")
    lines = [(-k, 1, 0) for k in range(1, m + 1)]
    lines += [(-j, -j * j, 1) for j in range(1, d - m + 1)]
    A = Arrangement(lines)
    _expect_point(A, (0, 0, 1), m, f"L({d},{m})")
    for pt in A.lattice.points:
        if pt.multiplicity > 2 and pt.coords != normalize_triple((0, 0, 1)):
            raise GenericityError(f"L({d},{m}): unexpected point {pt.coords} of multiplicity {pt.multiplicity}")
    return A


def hat_L(m1: int, m2: int) -> Arrangement:
    """x g_{1,m1-1}(x,y) g_{1,m2-1}(x,z): modular points of multiplicity m1 and m2."""
    if not 2 <= m1 <= m2:
        raise ParameterError(f"hat_L({m1},{m2}) needs 2 <= m1 <= m2")
    lines = [(1, 0, 0)]
    lines += [(1, -k, 0) for k in range(1, m1)]
    lines += [(1, 0, -k) for k in range(1, m2)]
    A = Arrangement(lines)
    _expect_point(A, (0, 0, 1), m1, f"hat_L({m1},{m2})")
    _expect_point(A, (0, 1, 0), m2, f"hat_L({m1},{m2})")
    return A


def tilde_A(m1: int, m2: int) -> Arrangement:
    """Two pencils in general position: y - kx through (0:0:1), z - kx through (0:1:0)."""
    if not 2 <= m1 <= m2:
        raise ParameterError(f"tilde_A({m1},{m2}) needs 2 <= m1 <= m2")
    lines = [(-k, 1, 0) for k in range(1, m1 + 1)]
    lines += [(-k, 0, 1) for k in range(1, m2 + 1)]
    A = Arrangement(lines)
    _expect_point(A, (0, 0, 1), m1, f"tilde_A({m1},{m2})")
    _expect_point(A, (0, 1, 0), m2, f"tilde_A({m1},{m2})")
    if _nk(A).get(2, 0) != m1 * m2 + (m1 == 2) + (m2 == 2) or len(A.lattice.points) != m1 * m2 + 2:
        raise GenericityError(f"tilde_A({m1},{m2}): cross intersections are not {m1 * m2} distinct nodes")
    return A


def example_B(d1: int, d2: int) -> Arrangement:
    """x (y - z) g_{1,d1-1}(x,y) g_{2,d2}(x,z), with d = d1 + d2."""
    if not 2 <= d1 <= d2:
        raise ParameterError(f"example_B({d1},{d2}) needs 2 <= d1 <= d2")
    lines = [(1, 0, 0), (0, 1, -1)]
    lines += [(1, -k, 0) for k in range(1, d1)]
    lines += [(1, 0, -k) for k in range(2, d2 + 1)]
    A = Arrangement(lines)
    _expect_point(A, (0, 0, 1), d1, f"example_B({d1},{d2})")
    _expect_point(A, (0, 1, 0), d2, f"example_B({d1},{d2})")
    _expect_point(A, (1, 1, 1), 2, f"example_B({d1},{d2})")
    return A


def example_C(d1: int) -> Arrangement:
    """x (y - z)(y + x - z) g_{1,d1-1}(y,x) g_{2,d1}(z,x), with d = 2 d1 + 1."""
    if d1 < 2:
        raise ParameterError(f"example_C({d1}) needs d1 >= 2")
    lines = [(1, 0, 0), (0, 1, -1), (1, 1, -1)]
    lines += [(-k, 1, 0) for k in range(1, d1)]
    lines += [(-k, 0, 1) for k in range(2, d1 + 1)]
    A = Arrangement(lines)
    _expect_point(A, (0, 1, 0), d1, f"example_C({d1})")
    _expect_point(A, (0, 0, 1), d1, f"example_C({d1})")
    _expect_point(A, (1, 1, 1), 2, f"example_C({d1})")
    _expect_point(A, (1, d1, d1), 2, f"example_C({d1})")
    return A


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple

    def build(self) -> Arrangement:
        return build(self.name, *self.params)

    def __str__(self):
        return f"{self.name}({','.join(map(str, self.params))})"


FAMILIES = {
    "full_monomial": (full_monomial, 1),
    "monomial": (monomial, 1),
    "L": (L_family, 2),
    "hat_L": (hat_L, 2),
    "tilde_A": (tilde_A, 2),
    "exB": (example_B, 2),
    "exC": (example_C, 1),
}


def build(name: str, *params: int) -> Arrangement:
    try:
        ctor, arity = FAMILIES[name]
    except KeyError:
        raise ParameterError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None
    if len(params) != arity:
        raise ParameterError(f"family {name} takes {arity} integer parameter(s), got {len(params)}")
    return ctor(*params)


def promised_invariants(name: str, *params: int) -> dict:
    """Invariants the family is known to have, from closed formulas only.

    Nothing here is computed from the arrangement; the test suite and the
    ``family`` command compare these against the computed values.
    """
    if name not in FAMILIES:
        raise ParameterError(f"unknown family {name!r}")
    p = params
    out: dict = {}
    if name == "full_monomial":
        (m,) = p
        out = {"d": 3 * m + 3, "solvability": "Supersolvable", "class": f"Free({m + 1},{2 * m + 1})", "mdr": m + 1}
    elif name == "monomial":
        (m,) = p
        e1, e2 = sorted((m + 1, 2 * m - 2))
        out = {"d": 3 * m, "class": f"Free({e1},{e2})"}
        if m >= 3:
            out["modular_points"] = 0
    elif name == "L":
        d, m = p
        out = {"d": d, "point_multiplicity": m}
        if m == d - 1:
            out.update({"class": f"Free(1,{d - 2})", "mdr": 1})
        elif m == d - 2:
            out.update({"class": f"NearlyFree(2,{d - 2})", "mdr": 2})
    elif name == "hat_L":
        m1, m2 = p
        out = {"d": m1 + m2 - 1, "solvability": "Supersolvable", "class": f"Free({m1 - 1},{m2 - 1})", "mdr": m1 - 1}
    elif name == "tilde_A":
        m1, m2 = p
        d = m1 + m2
        out = {"d": d, "tau": (d - 1) ** 2 - m1 * (d - m1 - 1) - (m1 - 1)}
        if m1 == 2:
            out.update({"class": f"NearlyFree(2,{d - 2})", "mdr": 2})
        else:
            out.update({"class": "Other", "mdr": m1})
    elif name == "exB":
        d1, d2 = p
        out = {"d": d1 + d2, "class": f"NearlyFree({d1},{d2})", "nearly_modular_point": "(0:1:0)", "node": "(1:1:1)"}
    elif name == "exC":
        (d1,) = p
        out = {"d": 2 * d1 + 1, "class": f"Free({d1},{d1})"}
    return out
