"""Slopes of rational point configurations and their dual arrangements.

A configuration of n affine points determines w directions (slopes, with
infinity for vertical lines).  Dualizing sends the point (a, b) to the line
a x + b y + z = 0, the direction of slope s to x + s y = 0 (vertical: y = 0)
and the line at infinity to the point P_L = (0:0:1).  When some direction is
realized by a single line through exactly two of the points, deleting that
direction's dual line leaves an arrangement with P_L nearly modular, which
forces w >= n.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from gmpy2 import mpq

from .arrangement import Arrangement, Solvability
from .errors import CollinearError, ParameterError, ParseError
from .exactfield import RATIONAL, _parse_rational
from .polyring import LinearForm

__all__ = [
    "INFINITY",
    "PointConfig",
    "SlopeReport",
    "slope_classes",
    "dualize",
    "verify_slope_theorem",
    "deleted_dual",
    "P_L",
]

INFINITY = "inf"
P_L = (mpq(0), mpq(0), mpq(1))


def _slope_key(s):
    # rationals first, in increasing order; infinity last
    return (1, 0) if s == INFINITY else (0, s)


class PointConfig:
    """n >= 3 distinct affine points with rational coordinates."""

    def __init__(self, points):
        pts = [(mpq(x), mpq(y)) for x, y in points]
        if len(pts) < 3:
            raise ParameterError("a configuration needs at least 3 points")
        if len(set(pts)) != len(pts):
            raise ParameterError("configuration points must be distinct")
        self.points = tuple(pts)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def collinear(self) -> bool:
        (x0, y0), (x1, y1) = self.points[:2]
        return all((x1 - x0) * (y - y0) == (y1 - y0) * (x - x0) for x, y in self.points[2:])

    def __repr__(self):
        return f"PointConfig(n={self.n})"

    @classmethod
    def from_text(cls, text: str) -> "PointConfig":
        pts = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if not body:
                continue
            toks = body.split()
            if len(toks) != 2:
                raise ParseError(f"expected 'x y', got {len(toks)} tokens", lineno)
            try:
                pts.append(tuple(_parse_rational(t) for t in toks))
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
        try:
            return cls(pts)
        except ParameterError as exc:
            raise ParseError(str(exc)) from None

    @classmethod
    def load(cls, path) -> "PointConfig":
        return cls.from_text(Path(path).read_text())

    def to_text(self) -> str:
        return "".join(f"{x} {y}\n" for x, y in self.points)


@dataclass(frozen=True)
class SlopeReport:
    n: int
    classes: dict  # slope -> list of (i, j) pairs
    lines_by_slope: dict  # slope -> list of point-index tuples, one per connecting line
    unique_pairs: tuple  # slopes realized by a single two-point line
    certified: str  # "w >= n" | "not applicable" | "violated"
    pl_nearly_modular: bool | None = None
    deleted_dual_solvability: Solvability | None = None
    half_bound_ok: bool | None = None  # 2 m_{P_L} >= |B| - 1 in the deleted dual B

    @property
    def w(self) -> int:
        return len(self.classes)

    @property
    def hypothesis_holds(self) -> bool:
        return bool(self.unique_pairs)

    @property
    def slopes(self) -> list:
        return list(self.classes)

    @property
    def meets_classical_bound(self) -> bool:
        """w >= n - 1, observed only (not certified)."""
        return self.w >= self.n - 1


def _slope(p, q):
    dx = q[0] - p[0]
    if not dx:
        return INFINITY
    return (q[1] - p[1]) / dx


def slope_classes(cfg: PointConfig) -> SlopeReport:
    """Group the C(n,2) connecting pairs by direction and find unique-pair directions."""
    if cfg.collinear:
        raise CollinearError("all points are collinear")
    pts = cfg.points
    classes: dict = {}
    lines: dict = {}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            s = _slope(pts[i], pts[j])
            classes.setdefault(s, []).append((i, j))
            line = LinearForm(*_affine_line(pts[i], pts[j]), field=RATIONAL)
            lines.setdefault(s, {}).setdefault(line, set()).update((i, j))
    order = sorted(classes, key=_slope_key)
    classes = {s: classes[s] for s in order}
    by_slope = {s: sorted(tuple(sorted(v)) for v in lines[s].values()) for s in order}
    unique = tuple(s for s in order if len(by_slope[s]) == 1 and len(by_slope[s][0]) == 2)
    return SlopeReport(cfg.n, classes, by_slope, unique, "not applicable")


def _affine_line(p, q):
    """Coefficients (a, b, c) of the line a x + b y + c = 0 through p and q."""
    a = q[1] - p[1]
    b = p[0] - q[0]
    return (a, b, -(a * p[0] + b * p[1]))


def _direction_dual(s) -> tuple:
    if s == INFINITY:
        return (0, 1, 0)
    return (1, s, 0)


def dualize(cfg: PointConfig, report: SlopeReport | None = None):
    """Dual arrangement {l_1..l_n, delta_1..delta_w} and the point P_L."""
    report = report or slope_classes(cfg)
    lines = [(x, y, 1) for x, y in cfg.points]
    lines += [_direction_dual(s) for s in report.classes]
    return Arrangement(lines, RATIONAL), P_L


def deleted_dual(cfg: PointConfig, slope, report: SlopeReport | None = None) -> Arrangement:
    A, _ = dualize(cfg, report)
    return A.without_line(_direction_dual(slope))


def verify_slope_theorem(cfg: PointConfig) -> SlopeReport:
    """Certify w >= n when some direction comes from a unique two-point line.

    Also records the structure behind the bound: removing that direction's
    dual line leaves an arrangement B in which P_L is nearly modular, with
    2 m_{P_L} >= |B| - 1.  B itself is usually nearly supersolvable, but
    can be supersolvable (three points, or n - 1 of them collinear).
    """
    rep = slope_classes(cfg)
    if not rep.unique_pairs:
        return rep
    B = deleted_dual(cfg, rep.unique_pairs[0], rep)
    lat = B.lattice
    pl = lat.point_index(P_L)
    pl_nm = any(nm.p == pl for nm in lat.nearly_modular)
    half = 2 * lat.multiplicity(pl) >= B.d - 1
    certified = "w >= n" if rep.w >= cfg.n else "violated"
    return SlopeReport(
        rep.n, rep.classes, rep.lines_by_slope, rep.unique_pairs, certified, pl_nm, lat.solvability, half
    )
