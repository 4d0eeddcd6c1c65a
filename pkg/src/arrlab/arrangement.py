"""Line arrangements and their intersection-lattice combinatorics.

Everything here is computed from incidences only: multiplicities, the
Tjurina number, modular and nearly modular points, the solvability class,
combinatorial predictions of mdr and exponents, splitting types, Euler
characteristic cross-checks and a refinement signature of the lattice.
"""

from __future__ import annotations

import enum
import hashlib
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    ConsistencyError,
    FieldMismatchError,
    NotApplicableError,
    ParameterError,
    ParseError,
)
from .exactfield import RATIONAL, FieldDescriptor
from .polyring import HomogPoly, LinearForm, dot, line_through, meet, normalize_triple, product

__all__ = [
    "Arrangement",
    "IntersectionPoint",
    "NearlyModular",
    "LatticeReport",
    "Solvability",
    "ArrangementClass",
    "PredictionReport",
    "SplittingReport",
    "EulerCheck",
    "intersection_lattice",
    "tjurina",
    "modular_points",
    "nearly_modular_points",
    "classify_solvability",
    "lattice_report",
    "predict_invariants",
    "complete",
    "splitting_report",
    "euler_check",
    "combinatorial_signature",
    "format_point",
]


class Arrangement:
    """A finite set of distinct lines over one field, in a fixed order."""

    def __init__(self, lines: Iterable, field: FieldDescriptor | None = None):
        raw = [ln.coeffs if isinstance(ln, LinearForm) else tuple(ln) for ln in lines]
        if field is None:
            field = _infer_field(c for t in raw for c in t)
        forms = []
        seen = {}
        for i, coeffs in enumerate(raw):
            try:
                form = LinearForm(*coeffs, field=field)
            except FieldMismatchError:
                raise FieldMismatchError(f"line {i} does not live in {field}") from None
            if form in seen:
                raise ParameterError(f"line {i} duplicates line {seen[form]} ({form})")
            seen[form] = i
            forms.append(form)
        if len(forms) < 3:
            raise ParameterError("an arrangement needs at least 3 lines")
        self.field = field
        self.lines: tuple[LinearForm, ...] = tuple(forms)
        self._index = seen

    @property
    def d(self) -> int:
        return len(self.lines)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __contains__(self, line) -> bool:
        if not isinstance(line, LinearForm):
            line = LinearForm(*line, field=self.field)
        return line in self._index

    def index(self, line) -> int:
        return self._index[line]

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.field == other.field and self.lines == other.lines

    def __hash__(self):
        return hash(self.lines)

    def __repr__(self):
        return f"Arrangement(d={self.d}, field={self.field})"

    @cached_property
    def defining_poly(self) -> HomogPoly:
        f = product((ln.poly() for ln in self.lines), self.field)
        return f

    @cached_property
    def lattice(self) -> "LatticeReport":
        return lattice_report(self)

    # -- derived arrangements ----------------------------------------------

    def with_line(self, line) -> "Arrangement":
        return Arrangement(list(self.lines) + [line], self.field)

    def without_line(self, line) -> "Arrangement":
        if not isinstance(line, LinearForm):
            line = LinearForm(*line, field=self.field)
        return Arrangement([ln for ln in self.lines if ln != line], self.field)

    def permuted(self, order: Sequence[int]) -> "Arrangement":
        return Arrangement([self.lines[i] for i in order], self.field)

    def transformed(self, matrix) -> "Arrangement":
        """Image under the projective change of coordinates p -> matrix p.

        A line with coefficient row vector a maps to a * matrix^{-1}; we take
        the adjugate, which differs by a scalar.
        """
        adj = _adjugate(matrix)
        lines = []
        for ln in self.lines:
            a = ln.coeffs
            lines.append(tuple(sum(a[i] * adj[i][j] for i in range(3)) for j in range(3)))
        return Arrangement(lines, self.field)

    # -- text format ---------------------------------------------------------

    def to_text(self, comments: Sequence[str] = ()) -> str:
        out = [f"field {self.field}"]
        out += [f"# {c}" for c in comments]
        for ln in self.lines:
            out.append(" ".join(self.field.format(c) for c in ln.coeffs))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Arrangement":
        field = None
        lines = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if not body:
                continue
            if field is None:
                field = _parse_field_header(body, lineno)
                continue
            toks = body.split()
            if len(toks) != 3:
                raise ParseError(f"expected three scalars 'a b c', got {len(toks)} tokens", lineno)
            try:
                coeffs = tuple(field.parse(t) for t in toks)
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
            if not any(coeffs):
                raise ParseError("0 0 0 does not define a line", lineno)
            form = LinearForm(*coeffs, field=field)
            for prev, prev_no in lines:
                if prev == form:
                    raise ParseError(f"duplicate line (same as line {prev_no})", lineno)
            lines.append((form, lineno))
        if field is None:
            raise ParseError("missing 'field ...' header")
        if len(lines) < 3:
            raise ParseError(f"an arrangement needs at least 3 lines, found {len(lines)}")
        return cls([f for f, _ in lines], field)

    @classmethod
    def load(cls, path) -> "Arrangement":
        return cls.from_text(Path(path).read_text())

    def save(self, path, comments: Sequence[str] = ()) -> None:
        Path(path).write_text(self.to_text(comments))


def _parse_field_header(body: str, lineno: int) -> FieldDescriptor:
    toks = body.split()
    if toks[:1] != ["field"]:
        raise ParseError("first line must be 'field rational' or 'field cyclotomic <n>'", lineno)
    if toks == ["field", "rational"]:
        return RATIONAL
    if len(toks) == 3 and toks[1] == "cyclotomic" and toks[2].isdigit() and int(toks[2]) >= 1:
        return FieldDescriptor.cyclotomic(int(toks[2]))
    raise ParseError(f"bad field header {body!r}", lineno)


def _infer_field(values) -> FieldDescriptor:
    fields = set()
    for v in values:
        fv = getattr(v, "field", None)
        if fv is not None:
            fields.add(fv)
    if len(fields) > 1:
        raise FieldMismatchError("lines with coefficients in different fields")
    return fields.pop() if fields else RATIONAL


def _adjugate(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]


def format_point(point, field: FieldDescriptor) -> list[str]:
    return [field.format(c) for c in point]


# --------------------------------------------------------------------------
# lattice


@dataclass(frozen=True)
class IntersectionPoint:
    coords: tuple
    incident: frozenset

    @property
    def multiplicity(self) -> int:
        return len(self.incident)


@dataclass(frozen=True)
class NearlyModular:
    """A nearly modular point p, its exceptional node p' and the line L = pp'."""

    p: int
    p_prime: int
    line: LinearForm


class Solvability(str, enum.Enum):
    SUPERSOLVABLE = "Supersolvable"
    NEARLY_SUPERSOLVABLE = "NearlySupersolvable"
    NEITHER = "Neither"
    PENCIL = "Pencil"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class LatticeReport:
    points: tuple
    multiplicity_counts: dict
    tau: int
    max_multiplicity: int
    modular_points: tuple = ()
    nearly_modular: tuple = ()
    solvability: Solvability | None = None

    def point_index(self, coords) -> int:
        for i, pt in enumerate(self.points):
            if pt.coords == tuple(coords):
                return i
        raise KeyError(coords)

    def multiplicity(self, i: int) -> int:
        return self.points[i].multiplicity


def intersection_lattice(A: Arrangement) -> LatticeReport:
    """All intersection points with their incident lines, and the counts n_k."""
    incid: dict[tuple, set] = {}
    lines = A.lines
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = meet(lines[i], lines[j], A.field)
            s = incid.get(p)
            if s is None:
                incid[p] = {i, j}
            else:
                s.add(i)
                s.add(j)
    points = tuple(IntersectionPoint(p, frozenset(s)) for p, s in incid.items())
    counts = Counter(pt.multiplicity for pt in points)
    pairs = sum(n * comb(k, 2) for k, n in counts.items())
    if pairs != comb(A.d, 2):
        raise ConsistencyError(f"pair count {pairs} != C({A.d},2)")
    tau = sum(n * (k - 1) ** 2 for k, n in counts.items())
    return LatticeReport(
        points=points,
        multiplicity_counts=dict(sorted(counts.items())),
        tau=tau,
        max_multiplicity=max(counts),
    )


def tjurina(A: Arrangement) -> int:
    """Global Tjurina number: sum over intersection points of (m_p - 1)^2."""
    return A.lattice.tau


def _unconnected(points, i) -> list[int]:
    """Indices q != i such that no line of the arrangement contains both points."""
    inc = points[i].incident
    return [q for q, pt in enumerate(points) if q != i and not (pt.incident & inc)]


def _modular(points) -> tuple:
    return tuple(i for i in range(len(points)) if not _unconnected(points, i))


def _nearly_modular(A: Arrangement, points) -> tuple:
    found = []
    for i, pt in enumerate(points):
        bad = _unconnected(points, i)
        if len(bad) != 1:
            continue
        q = bad[0]
        if points[q].multiplicity != 2:
            continue
        L = line_through(pt.coords, points[q].coords, A.field)
        if L in A:
            continue
        on_L = [k for k, r in enumerate(points) if k not in (i, q) and L.contains(r.coords)]
        if on_L:
            continue
        found.append(NearlyModular(i, q, L))
    return tuple(found)


def _solvability(points, modular, nearly) -> Solvability:
    if len(points) == 1:
        return Solvability.PENCIL
    if modular:
        return Solvability.SUPERSOLVABLE
    if nearly:
        return Solvability.NEARLY_SUPERSOLVABLE
    return Solvability.NEITHER


def lattice_report(A: Arrangement) -> LatticeReport:
    base = intersection_lattice(A)
    pts = base.points
    modular = _modular(pts) if len(pts) > 1 else ()
    nearly = _nearly_modular(A, pts) if len(pts) > 1 else ()
    return LatticeReport(
        points=pts,
        multiplicity_counts=base.multiplicity_counts,
        tau=base.tau,
        max_multiplicity=base.max_multiplicity,
        modular_points=modular,
        nearly_modular=nearly,
        solvability=_solvability(pts, modular, nearly),
    )


def modular_points(A: Arrangement) -> list[IntersectionPoint]:
    lat = A.lattice
    return [lat.points[i] for i in lat.modular_points]


def nearly_modular_points(A: Arrangement) -> list[tuple]:
    """Triples (p, p', L) of coordinates and the joining line."""
    lat = A.lattice
    return [(lat.points[n.p].coords, lat.points[n.p_prime].coords, n.line) for n in lat.nearly_modular]


def classify_solvability(A: Arrangement) -> Solvability:
    return A.lattice.solvability


# --------------------------------------------------------------------------
# predictions from combinatorics


@dataclass(frozen=True)
class ArrangementClass:
    """Free(d1,d2), NearlyFree(d1,d2), Other or Unknown."""

    kind: str
    exponents: tuple | None = None

    def __str__(self):
        if self.exponents is None:
            return self.kind
        return f"{self.kind}({self.exponents[0]},{self.exponents[1]})"

    @classmethod
    def free(cls, d1, d2):
        return cls("Free", (d1, d2))

    @classmethod
    def nearly_free(cls, d1, d2):
        return cls("NearlyFree", (d1, d2))


UNKNOWN = ArrangementClass("Unknown")


@dataclass(frozen=True)
class PredictionReport:
    predicted_mdr: int | None
    predicted_class: ArrangementClass
    basis: str  # "modular-point" | "nearly-modular-point" | "none"
    point: tuple | None = None
    point_multiplicity: int | None = None
    half_bound_ok: bool | None = None  # 2 m_p >= d - 1 at the nearly modular point


def predict_invariants(A: Arrangement, point=None) -> PredictionReport:
    """mdr and exponents forced by a modular or nearly modular point.

    By default a modular point is used when one exists.  Passing ``point``
    selects a specific modular or nearly modular point instead.
    """
    lat = A.lattice
    if point is not None:
        point = normalize_triple(point, A.field)
        idx = lat.point_index(point)
        if idx in lat.modular_points:
            return _predict_modular(A, idx)
        for nm in lat.nearly_modular:
            if nm.p == idx:
                return _predict_nearly_modular(A, nm)
        raise NotApplicableError(f"{point} is neither modular nor nearly modular")
    if lat.solvability is Solvability.SUPERSOLVABLE:
        return _predict_modular(A, lat.modular_points[0])
    if lat.solvability is Solvability.NEARLY_SUPERSOLVABLE:
        return _predict_nearly_modular(A, lat.nearly_modular[0])
    raise NotApplicableError(f"no prediction for a {lat.solvability.value} arrangement")


def _predict_modular(A: Arrangement, p: int) -> PredictionReport:
    lat, d = A.lattice, A.d
    mp = lat.multiplicity(p)
    r = min(mp - 1, d - mp)
    return PredictionReport(r, ArrangementClass.free(r, d - 1 - r), "modular-point", lat.points[p].coords, mp)


def _predict_nearly_modular(A: Arrangement, nm: NearlyModular) -> PredictionReport:
    lat, d = A.lattice, A.d
    mp = lat.multiplicity(nm.p)
    ok = 2 * mp >= d - 1
    if 2 * mp >= d:
        cls, r = ArrangementClass.nearly_free(d - mp, mp), d - mp
    elif 2 * mp == d - 1:
        cls, r = ArrangementClass.free(mp, mp), mp
    else:
        cls, r = UNKNOWN, None
    return PredictionReport(r, cls, "nearly-modular-point", lat.points[nm.p].coords, mp, ok)


def complete(A: Arrangement, p) -> Arrangement:
    """Add the line joining a nearly modular point p to its exceptional node."""
    lat = A.lattice
    p = normalize_triple(p, A.field)
    for nm in lat.nearly_modular:
        if lat.points[nm.p].coords == p:
            return A.with_line(nm.line)
    raise NotApplicableError(f"{p} is not a nearly modular point")


# --------------------------------------------------------------------------
# splitting types


@dataclass(frozen=True)
class SplittingReport:
    generic_splitting: tuple
    jumping_point: tuple | None = None
    jumping_splitting: tuple | None = None
    case: str = ""

    @property
    def has_jumping_lines(self) -> bool:
        return self.jumping_point is not None

    def splitting_along(self, line) -> tuple:
        """Predicted unordered splitting type along a given line."""
        coeffs = line.coeffs if isinstance(line, LinearForm) else tuple(line)
        if self.jumping_point is not None and not dot(coeffs, self.jumping_point):
            return self.jumping_splitting
        return self.generic_splitting


def _pair(a, b):
    return tuple(sorted((a, b)))


def splitting_report(A: Arrangement, jumping_point=None) -> SplittingReport:
    """Generic splitting type and jumping lines as determined by the lattice."""
    lat = A.lattice
    d = A.d
    if lat.solvability is Solvability.SUPERSOLVABLE:
        m = lat.max_multiplicity
        return SplittingReport(_pair(m - 1, d - m), case="supersolvable")
    if lat.solvability is not Solvability.NEARLY_SUPERSOLVABLE:
        raise NotApplicableError(f"no splitting prediction for a {lat.solvability.value} arrangement")
    mp = lat.multiplicity(lat.nearly_modular[0].p)
    if 2 * mp < d:
        return SplittingReport((mp, mp), case="free")
    if 2 * mp == d:
        return SplittingReport((mp - 1, mp), case="nearly-free-balanced")
    if jumping_point is None:
        raise NotApplicableError("a jumping point is required when 2 m_p > d")
    d1, d2 = d - mp, mp
    P = normalize_triple(jumping_point, A.field)
    return SplittingReport(_pair(d1, d2 - 1), P, _pair(d1 - 1, d2), case="nearly-free-jumping")


# --------------------------------------------------------------------------
# Euler characteristics


@dataclass(frozen=True)
class EulerCheck:
    chi_complement: int
    predicted: int | None
    match: bool | None


def euler_check(A: Arrangement) -> EulerCheck:
    """Compare chi of the complement from tau with the fibration count."""
    lat = A.lattice
    d = A.d
    chi_curve = 2 - (d - 1) * (d - 2) + lat.tau
    chi_m = 3 - chi_curve
    if lat.solvability is Solvability.SUPERSOLVABLE:
        preds = {(lat.multiplicity(p) - 2) * (d - 1 - lat.multiplicity(p)) for p in lat.modular_points}
        pred = preds.pop() if len(preds) == 1 else None
        return EulerCheck(chi_m, pred, pred == chi_m)
    if lat.solvability is Solvability.NEARLY_SUPERSOLVABLE:
        preds = {
            (lat.multiplicity(n.p) - 2) * (d - 1 - lat.multiplicity(n.p)) + 1 for n in lat.nearly_modular
        }
        pred = preds.pop() if len(preds) == 1 else None
        return EulerCheck(chi_m, pred, pred == chi_m)
    return EulerCheck(chi_m, None, None)


# --------------------------------------------------------------------------
# refinement signature


def _digest(s: str) -> str:
    return hashlib.sha256(s.encode()).hexdigest()[:16]


def combinatorial_signature(A: Arrangement) -> str:
    """Colour-refinement signature of the line/point incidence graph.

    Equal lattices give equal signatures; the converse can fail, so this is
    a necessary test for isomorphism only.
    """
    lat = A.lattice
    pts = lat.points
    line_pts = [[] for _ in range(A.d)]
    for k, pt in enumerate(pts):
        for i in pt.incident:
            line_pts[i].append(k)
    lcol = ["L"] * A.d
    pcol = [f"P{pt.multiplicity}" for pt in pts]
    n_classes = 0
    for _ in range(A.d + len(pts) + 1):
        new_l = [_digest(lcol[i] + "|" + ",".join(sorted(pcol[k] for k in line_pts[i]))) for i in range(A.d)]
        new_p = [_digest(pcol[k] + "|" + ",".join(sorted(lcol[i] for i in pt.incident))) for k, pt in enumerate(pts)]
        classes = len(set(new_l)) + len(set(new_p))
        lcol, pcol = new_l, new_p
        if classes == n_classes:
            break
        n_classes = classes
    nk = ",".join(f"{k}:{n}" for k, n in lat.multiplicity_counts.items())
    body = "|".join(sorted(lcol)) + "#" + "|".join(sorted(pcol))
    return f"d={A.d};nk={nk};h={_digest(body)}"
