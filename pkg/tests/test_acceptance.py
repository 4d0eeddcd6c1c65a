"""Acceptance suite: one test per criterion, each reported as a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``; the summary
section at the end lists every criterion with its status.
"""

import random
import subprocess
import sys
import time
from functools import lru_cache
from pathlib import Path

import pytest
from gmpy2 import mpq

from arrlab.arrangement import Solvability, complete, euler_check, predict_invariants, splitting_report
from arrlab.families import L_family, example_B, example_C, full_monomial, hat_L, monomial, tilde_A
from arrlab.polyring import LinearForm, evaluate
from arrlab.report import analyze
from arrlab.slopes import PointConfig, slope_classes, verify_slope_theorem
from arrlab.syzygy import classify, deg_I_crosscheck, generator_relation, mdr, minimal_generators, saito_check

import oracles
from corpus import CORPUS

HERE = Path(__file__).parent


def P(*c):
    return tuple(mpq(v) for v in c)


@lru_cache(maxsize=None)
def corpus_item(spec):
    A = spec.build()
    return A, analyze(A)


def corpus():
    return [(spec, *corpus_item(spec)) for spec in CORPUS]


@pytest.mark.acceptance("1", "full monomial arrangements have mdr = m+1 (m = 1, 2, 3), each under 60 s")
def test_criterion_01_full_monomial_mdr():
    for m in (1, 2, 3):
        A = full_monomial(m)
        assert A.d == 3 * m + 3
        t = time.perf_counter()
        r = mdr(A.defining_poly)
        assert time.perf_counter() - t < 60
        assert r == m + 1


@pytest.mark.acceptance("2", "A(3,3,3) is Free(4,4) with tau = 48 and solvability Neither")
def test_criterion_02_monomial_333():
    A = monomial(3)
    cl = classify(A)
    assert str(cl.arrangement_class) == "Free(4,4)"
    ref = oracles.nk(oracles.monomial_lines_sympy(3), oracles.sympy_canon)
    assert ref == {3: 12}
    assert A.lattice.tau == oracles.tau(oracles.monomial_lines_sympy(3), oracles.sympy_canon) == 48
    assert A.lattice.solvability is Solvability.NEITHER


@pytest.mark.acceptance("3", "hat_L(2,3), hat_L(3,4), hat_L(3,6): Free(m1-1, m2-1), modular points m1 and m2, mdr from the formula")
def test_criterion_03_hat_L():
    for m1, m2 in [(2, 3), (3, 4), (3, 6)]:
        A = hat_L(m1, m2)
        cl = classify(A)
        assert str(cl.arrangement_class) == f"Free({m1 - 1},{m2 - 1})"
        lat = A.lattice
        mods = {lat.points[i].coords: lat.multiplicity(i) for i in lat.modular_points}
        assert mods[P(0, 0, 1)] == m1 and mods[P(0, 1, 0)] == m2
        d = A.d
        for p in (P(0, 0, 1), P(0, 1, 0)):
            mp = mods[p]
            assert cl.mdr == min(mp - 1, d - mp) == min(m1 - 1, m2 - 1)
            assert predict_invariants(A, point=p).predicted_mdr == cl.mdr


@pytest.mark.acceptance("4", "example_B(2,2): NearlyFree(2,2), tau = 6, relation with independent h2, h3, not unique")
def test_criterion_04_exB22():
    A = example_B(2, 2)
    cl = classify(A)
    assert str(cl.arrangement_class) == "NearlyFree(2,2)"
    assert A.lattice.tau == oracles.tau([l.coeffs for l in A.lines]) == 6
    rel = generator_relation(A)
    assert rel.unique is False
    l2 = [rel.h2.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    l3 = [rel.h3.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    cross = (l2[1] * l3[2] - l2[2] * l3[1], l2[2] * l3[0] - l2[0] * l3[2], l2[0] * l3[1] - l2[1] * l3[0])
    assert any(cross)


@pytest.mark.acceptance("5", "example_B(2,3): NearlyFree(2,3), tau = 11, jumping point (1:1:1), generic (2,2), jumping (1,3)")
def test_criterion_05_exB23():
    A = example_B(2, 3)
    cl = classify(A)
    assert str(cl.arrangement_class) == "NearlyFree(2,3)"
    assert A.lattice.tau == oracles.tau([l.coeffs for l in A.lines]) == 11
    rel = generator_relation(A)
    assert rel.jumping_point == P(1, 1, 1) and rel.unique is True
    sp = splitting_report(A, rel.jumping_point)
    assert sp.generic_splitting == (2, 2)
    assert sp.jumping_point == P(1, 1, 1) and sp.jumping_splitting == (1, 3)
    assert sp.splitting_along(LinearForm(1, -1, 0)) == (1, 3)
    assert sp.splitting_along(LinearForm(0, 1, -1)) == (1, 3)
    assert sp.splitting_along(LinearForm(1, 0, 0)) == (2, 2)


@pytest.mark.acceptance("6", "example_C(2), example_C(3) are Free(d1,d1); nearly modular points of example_C(2)")
def test_criterion_06_exC():
    for d1 in (2, 3):
        assert str(classify(example_C(d1)).arrangement_class) == f"Free({d1},{d1})"
    lat = example_C(2).lattice
    pairs = {(lat.points[nm.p].coords, lat.points[nm.p_prime].coords) for nm in lat.nearly_modular}
    assert (P(0, 1, 0), P(1, 1, 1)) in pairs
    assert (P(0, 0, 1), P(1, 2, 2)) in pairs


@pytest.mark.acceptance("7", "L(4,3) is Free(1,2) with mdr 1; L(5,3), L(6,4) are NearlyFree with mdr 2")
def test_criterion_07_L():
    cl = classify(L_family(4, 3))
    assert (str(cl.arrangement_class), cl.mdr) == ("Free(1,2)", 1)
    for d, m in [(5, 3), (6, 4)]:
        cl = classify(L_family(d, m))
        assert cl.kind == "NearlyFree" and cl.mdr == 2


@pytest.mark.acceptance("8", "tilde_A(2,3) NearlyFree(2,3) with tau 11; tilde_A(3,4) Other, mdr 3, deg I = 2 confirmed at s = 3d, 3d+1")
def test_criterion_08_tilde_A():
    A = tilde_A(2, 3)
    assert str(classify(A).arrangement_class) == "NearlyFree(2,3)" and A.lattice.tau == 11
    B = tilde_A(3, 4)
    cl = classify(B)
    assert (cl.kind, cl.mdr, cl.deg_I) == ("Other", 3, 2)
    assert B.lattice.tau == oracles.tau([l.coeffs for l in B.lines]) == 25
    assert deg_I_crosscheck(B, cl)


@pytest.mark.acceptance("9", "combinatorial predictions equal linear-algebra classification on the corpus")
def test_criterion_09_prediction_equivalence():
    checked = {"modular": 0, "nearly": 0}
    for spec, A, r in corpus():
        lat = A.lattice
        cl = r.details.get("classification")
        for i in lat.modular_points:
            pred = predict_invariants(A, point=lat.points[i].coords)
            assert (pred.predicted_mdr, pred.predicted_class) == (cl.mdr, cl.arrangement_class), str(spec)
            checked["modular"] += 1
        for nm in lat.nearly_modular:
            pred = predict_invariants(A, point=lat.points[nm.p].coords)
            assert (pred.predicted_mdr, pred.predicted_class) == (cl.mdr, cl.arrangement_class), str(spec)
            checked["nearly"] += 1
    assert checked["modular"] > 0 and checked["nearly"] > 0


@pytest.mark.acceptance("10", "2 m_p >= d-1 at nearly modular points; modular and nearly modular points dominate multiplicities")
def test_criterion_10_multiplicity_bounds():
    for spec, A, _ in corpus():
        lat = A.lattice
        mults = [pt.multiplicity for pt in lat.points]
        for nm in lat.nearly_modular:
            assert 2 * lat.multiplicity(nm.p) >= A.d - 1, str(spec)
            if lat.solvability is Solvability.NEARLY_SUPERSOLVABLE:
                assert lat.multiplicity(nm.p) == max(mults), str(spec)
        if lat.solvability is Solvability.SUPERSOLVABLE:
            mod = set(lat.modular_points)
            for p in mod:
                for q in range(len(lat.points)):
                    if q not in mod:
                        assert lat.multiplicity(p) > lat.multiplicity(q), str(spec)


@pytest.mark.acceptance("11", "Euler characteristic identities for supersolvable and nearly supersolvable corpus members")
def test_criterion_11_euler():
    n = 0
    for spec, A, r in corpus():
        lat = A.lattice
        if lat.solvability not in (Solvability.SUPERSOLVABLE, Solvability.NEARLY_SUPERSOLVABLE):
            continue
        e = euler_check(A)
        assert e.match, str(spec)
        # same value when tau comes from the Jacobian algebra instead of the lattice
        d = A.d
        assert 1 + (d - 1) * (d - 2) - r.stabilized_tau == e.predicted, str(spec)
        n += 1
    assert n >= 10


@pytest.mark.acceptance("12", "Saito determinant: scalar multiple of f for Free, divisible by f for NearlyFree")
def test_criterion_12_saito():
    for spec, A, r in corpus():
        cl = r.details["classification"]
        if cl.kind == "Free":
            g1, g2 = minimal_generators(A, cl)
            s = saito_check(A, g1, g2)
            assert s.scalar is not None and s.scalar != 0, str(spec)
        elif cl.kind == "NearlyFree":
            g = sorted(minimal_generators(A, cl), key=lambda s: s.degree)
            s = saito_check(A, g[0], g[1])
            assert not s.quotient.is_zero(), str(spec)


@pytest.mark.acceptance("13", "complete(example_B(2,3), (0:1:0)) is supersolvable and Free(2,3)")
def test_criterion_13_completion():
    B = complete(example_B(2, 3), (0, 1, 0))
    assert B.d == 6
    assert B.lattice.solvability is Solvability.SUPERSOLVABLE
    assert str(classify(B).arrangement_class) == "Free(2,3)"


def random_hypothesis_configs(count=24, seed=20240601):
    """Random integer configurations (3 <= n <= 8) that satisfy the unique-slope-pair hypothesis."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, 8)
        pts = set()
        while len(pts) < n:
            pts.add((rng.randint(-4, 4), rng.randint(-4, 4)))
        cfg = PointConfig(sorted(pts))
        if cfg.collinear:
            continue
        if slope_classes(cfg).hypothesis_holds:
            out.append(cfg)
    return out


@pytest.mark.acceptance("14a", "slopes: unit square w = 4 >= 4; random configurations certify w >= n with P_L nearly modular")
def test_criterion_14a_slope_certificates():
    sq = verify_slope_theorem(PointConfig([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert sq.w == 4 and sq.certified == "w >= n" and sq.pl_nearly_modular
    cfgs = random_hypothesis_configs()
    assert len(cfgs) >= 20 and max(c.n for c in cfgs) <= 8
    for cfg in cfgs:
        rep = verify_slope_theorem(cfg)
        assert rep.certified == "w >= n" and rep.w >= cfg.n
        assert rep.pl_nearly_modular and rep.half_bound_ok


@pytest.mark.acceptance("14b", "slopes: every deleted dual classifies NearlySupersolvable (as literally stated)")
def test_criterion_14b_deleted_dual_class():
    # Kept exactly as stated.  It fails: for n = 3, or n-1 collinear points,
    # the deleted dual also has a modular point and is Supersolvable.
    bad = []
    for cfg in random_hypothesis_configs():
        rep = verify_slope_theorem(cfg)
        if rep.deleted_dual_solvability is not Solvability.NEARLY_SUPERSOLVABLE:
            bad.append((cfg.points, rep.deleted_dual_solvability.value))
    assert not bad, f"{len(bad)} deleted duals are not NearlySupersolvable, e.g. {bad[0]}"


PROPERTY_TESTS = [
    "test_exactfield.py::test_field_axioms",
    "test_exactfield.py::test_canonical_form",
    "test_exactlinalg.py::test_rank_nullity_and_permutation",
    "test_exactlinalg.py::test_rank_of_transpose",
    "test_polyring.py::test_leibniz",
    "test_polyring.py::test_euler_identity",
    "test_arrangement.py::test_pair_count_identity",
]


@pytest.mark.acceptance("15", "property suites run standalone: field axioms, kernel/rank, Leibniz/Euler, pair counts")
def test_criterion_15_property_suites():
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *PROPERTY_TESTS],
        cwd=HERE,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stdout[-2000:]
    assert f"{len(PROPERTY_TESTS)} passed" in proc.stdout


def test_corpus_jumping_points_lie_on_h2_h3():
    for spec, A, r in corpus():
        rel = r.details.get("relation")
        if rel is not None:
            assert evaluate(rel.h2, rel.jumping_point) == 0 and evaluate(rel.h3, rel.jumping_point) == 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
