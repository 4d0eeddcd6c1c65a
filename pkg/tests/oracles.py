"""Independent brute-force oracles over Fraction, sharing no code with arrlab."""

from collections import Counter
from fractions import Fraction
from itertools import combinations


def _norm(v, canon=Fraction):
    v = [canon(e) for e in v]
    for c in v:
        if c != 0:
            return tuple(canon(e / c) for e in v)
    raise ValueError("zero vector")


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def lattice(lines, canon=Fraction):
    """{point: set of line indices} from all pairwise meets.

    ``canon`` must map field elements to a canonical form, so that equal
    points get equal keys.
    """
    lines = [tuple(canon(c) for c in l) for l in lines]
    pts = {}
    for i, j in combinations(range(len(lines)), 2):
        p = _norm(_cross(lines[i], lines[j]), canon)
        pts.setdefault(p, set()).update((i, j))
    return pts


def nk(lines, canon=Fraction):
    return dict(Counter(len(s) for s in lattice(lines, canon).values()))


def tau(lines, canon=Fraction):
    return sum(n * (k - 1) ** 2 for k, n in nk(lines, canon).items())


def sympy_canon(c):
    import sympy

    return sympy.expand(sympy.radsimp(sympy.expand_complex(sympy.sympify(c))))


def monomial_lines_sympy(m):
    """Lines of (x^m - y^m)(x^m - z^m)(y^m - z^m) with zeta written in radicals."""
    import sympy

    zeta = sympy.exp(2 * sympy.pi * sympy.I / m)
    out = []
    for k in range(m):
        e = sympy_canon(zeta**k)
        out += [(1, -e, 0), (1, 0, -e), (0, 1, -e)]
    return out


def modular(lines):
    """Points p such that the line through p and any other point q lies in the arrangement."""
    normed = {_norm(tuple(Fraction(c) for c in l)) for l in lines}
    pts = list(lattice(lines))
    out = []
    for p in pts:
        if all(_norm(_cross(p, q)) in normed for q in pts if q != p):
            out.append(p)
    return out
