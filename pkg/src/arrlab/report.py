"""The full analysis pipeline and its JSON form.

An :class:`AnalysisReport` carries only plain values (ints, strings, lists)
so that a report read back from JSON compares equal to the original and
re-serializes to the same bytes.  The rich objects the pipeline produced
are kept on the side in ``details`` and never serialized.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, fields
from dataclasses import field as dc_field

from .arrangement import (
    Arrangement,
    Solvability,
    euler_check,
    format_point,
    predict_invariants,
    splitting_report,
)
from .errors import ConsistencyError, NotApplicableError
from .syzygy import classify, generator_relation, minimal_generators, stabilized_tau

__all__ = ["AnalysisReport", "analyze", "require_consistent", "to_json", "from_json"]

# serialized in this order of importance; sort_keys makes the byte form canonical
SCHEMA_KEYS = (
    "d",
    "nk",
    "tau",
    "solvability",
    "mdr",
    "class",
    "exponents",
    "jumping_point",
    "generic_splitting",
    "jumping_lines",
    "euler_ok",
    "tau_consistency_ok",
)


@dataclass(frozen=True)
class AnalysisReport:
    d: int
    field: str
    nk: dict  # str(k) -> n_k
    tau: int
    solvability: str
    modular_points: list
    nearly_modular_points: list  # [p, p', L] with L given by its coefficients
    mdr: int | None = None
    arrangement_class: str | None = None
    exponents: list | None = None
    deg_I: int | None = None
    predicted_mdr: int | None = None
    predicted_class: str | None = None
    prediction_ok: bool | None = None
    jumping_point: list | None = None
    unique_relation: bool | None = None
    generic_splitting: list | None = None
    jumping_lines: dict | None = None  # {"through": P, "splitting": [a, b]}
    euler_chi: int | None = None
    euler_ok: bool | None = None
    tau_consistency_ok: bool | None = None
    stabilized_tau: int | None = None
    elapsed: float | None = dc_field(default=None, compare=False)
    details: dict = dc_field(default_factory=dict, compare=False, repr=False)

    @property
    def consistent(self) -> bool:
        """False iff some cross-check ran and disagreed."""
        return not any(v is False for v in (self.prediction_ok, self.euler_ok, self.tau_consistency_ok))

    def to_dict(self, timing: bool = False) -> dict:
        out = {}
        for f in fields(self):
            if f.name == "details" or (f.name == "elapsed" and not timing):
                continue
            key = "class" if f.name == "arrangement_class" else f.name
            out[key] = getattr(self, f.name)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        missing = [k for k in SCHEMA_KEYS if k not in data]
        if missing:
            raise ValueError(f"report is missing keys: {', '.join(missing)}")
        kw = dict(data)
        kw["arrangement_class"] = kw.pop("class")
        known = {f.name for f in fields(cls)}
        unknown = set(kw) - known
        if unknown:
            raise ValueError(f"unknown report keys: {', '.join(sorted(unknown))}")
        return cls(**kw)


def to_json(report: AnalysisReport, timing: bool = False) -> str:
    return json.dumps(report.to_dict(timing), sort_keys=True, indent=2)


def from_json(text: str) -> AnalysisReport:
    return AnalysisReport.from_dict(json.loads(text))


def _pt(p, F):
    return None if p is None else format_point(p, F)


def analyze(A: Arrangement, cap: int | None = None, skip_syzygy: bool = False) -> AnalysisReport:
    """Run the lattice, prediction, syzygy and cross-check stages on A.

    ConsistencyError from any stage propagates; the caller decides how
    to report it.
    """
    t0 = time.perf_counter()
    F = A.field
    lat = A.lattice
    details: dict = {"lattice": lat}
    kw: dict = dict(
        d=A.d,
        field=str(F),
        nk={str(k): v for k, v in sorted(lat.multiplicity_counts.items())},
        tau=lat.tau,
        solvability=lat.solvability.value,
        modular_points=[_pt(lat.points[i].coords, F) for i in lat.modular_points],
        nearly_modular_points=[
            [_pt(lat.points[nm.p].coords, F), _pt(lat.points[nm.p_prime].coords, F), _pt(nm.line.coeffs, F)]
            for nm in lat.nearly_modular
        ],
    )
    if lat.solvability is Solvability.PENCIL:
        # f depends on two variables only; AR(f) has a degree 0 element
        kw["elapsed"] = round(time.perf_counter() - t0, 3)
        return AnalysisReport(**kw, details=details)

    try:
        pred = predict_invariants(A)
        details["prediction"] = pred
        kw["predicted_mdr"] = pred.predicted_mdr
        kw["predicted_class"] = str(pred.predicted_class)
    except NotApplicableError:
        pred = None

    rel = None
    if not skip_syzygy:
        cl = classify(A, cap)
        details["classification"] = cl
        kw.update(mdr=cl.mdr, arrangement_class=str(cl.arrangement_class), deg_I=cl.deg_I)
        kw["exponents"] = list(cl.exponents) if cl.exponents else None
        if pred is not None and pred.predicted_mdr is not None:
            kw["prediction_ok"] = pred.predicted_mdr == cl.mdr and pred.predicted_class == cl.arrangement_class
        if cl.kind == "NearlyFree":
            rel = generator_relation(A, minimal_generators(A, cl))
            details["relation"] = rel
            kw["jumping_point"] = _pt(rel.jumping_point, F)
            kw["unique_relation"] = rel.unique
        st = stabilized_tau(A.defining_poly)
        kw["stabilized_tau"] = st
        kw["tau_consistency_ok"] = st == lat.tau

    try:
        sp = splitting_report(A, rel.jumping_point if rel is not None and rel.unique else None)
        details["splitting"] = sp
        kw["generic_splitting"] = list(sp.generic_splitting)
        if sp.has_jumping_lines:
            kw["jumping_lines"] = {"through": _pt(sp.jumping_point, F), "splitting": list(sp.jumping_splitting)}
    except NotApplicableError:
        pass

    ec = euler_check(A)
    details["euler"] = ec
    kw["euler_chi"] = ec.chi_complement
    kw["euler_ok"] = ec.match
    kw["elapsed"] = round(time.perf_counter() - t0, 3)
    return AnalysisReport(**kw, details=details)


def require_consistent(report: AnalysisReport) -> AnalysisReport:
    if not report.consistent:
        bad = [k for k in ("prediction_ok", "euler_ok", "tau_consistency_ok") if getattr(report, k) is False]
        raise ConsistencyError(f"cross-checks failed: {', '.join(bad)}")
    return report

