"""Acceptance suite: one test per criterion, each printing PASS/FAIL.

Every criterion is checked at its stated tolerance and within its
stated runtime budget.  Run with ``pytest -s`` to see the status lines.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from jordan2.classify import (CanonicalClass, canonical_law, classify,
                              is_isomorphic, verify_witness)
from jordan2.contract import (check_dimension_inequality, contract,
                              degeneration_graph, emit_dot,
                              known_contractions)
from jordan2.core import (SJ_POLYS, JordanLaw, LinearMap, act, is_jordan,
                          is_simple, j2_residuals, sj_residuals)
from jordan2.deform import (direction, example1_constraint_check,
                            rigidity_probe, sample_perturbations, sj_jacobian)
from jordan2.geometry import (cocycle_endo, delta_bilinear, g_space,
                              orbit_dim, triple_compose)
from jordan2.scalars import COMPLEX_MODE, RATIONAL_MODE

from conftest import random_bilinear, random_invertible

ALL_CLASSES = list(CanonicalClass)
NONABELIAN = [c for c in ALL_CLASSES if c is not CanonicalClass.ABELIAN]


def _report(number, name, passed, elapsed=None):
    status = "PASS" if passed else "FAIL"
    timing = "" if elapsed is None else " (%.2fs)" % elapsed
    print("criterion %2d [%s]: %s%s" % (number, status, name, timing))
    assert passed, "criterion %d failed: %s" % (number, name)


def test_criterion_01_canonical_membership():
    t0 = time.monotonic()
    ok = True
    for cls in ALL_CLASSES:
        law = canonical_law(cls)
        ok = ok and is_jordan(law)
        ok = ok and all(r == 0 for r in sj_residuals(law))
        ok = ok and all(r == 0 for r in j2_residuals(law))
    elapsed = time.monotonic() - t0
    _report(1, "canonical membership, exact residuals", ok and elapsed < 1.0,
            elapsed)


def test_criterion_02_classification_soundness():
    t0 = time.monotonic()
    rng = random.Random(2024)
    ok = all(classify(canonical_law(c)).cls is c for c in ALL_CLASSES)
    for cls in ALL_CLASSES:
        law = canonical_law(cls)
        for _ in range(1000):
            f = random_invertible(rng)
            if classify(act(law, f)).cls is not cls:
                ok = False
                break
        if not ok:
            break
    elapsed = time.monotonic() - t0
    _report(2, "classification invariant under 1000 basis changes/class",
            ok and elapsed < 30.0, elapsed)


def test_criterion_03_orbit_dimensions():
    t0 = time.monotonic()
    expected = {CanonicalClass.PSI0: 4, CanonicalClass.PSI1: 3,
                CanonicalClass.PSI2: 3, CanonicalClass.PSI3: 2,
                CanonicalClass.PSI4: 2, CanonicalClass.PSI5: 4}
    ok = all(orbit_dim(canonical_law(c)) == d for c, d in expected.items())
    elapsed = time.monotonic() - t0
    _report(3, "orbit dimensions (4,3,3,2,2,4) by exact rank",
            ok and elapsed < 1.0, elapsed)


def test_criterion_04_cocycle_formulas():
    rng = random.Random(4)
    endos = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    endos += [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                    for _ in range(4)) for _ in range(10)]
    ok = True
    for a, b, c, d in endos:
        f = LinearMap(((a, c), (b, d)), RATIONAL_MODE)
        t0m = cocycle_endo(canonical_law(CanonicalClass.PSI0), f).to_matrix2()
        t5m = cocycle_endo(canonical_law(CanonicalClass.PSI5), f).to_matrix2()
        ok = ok and t0m == ((a, b), (2 * d - a, 2 * c - b), (b, a))
        ok = ok and t5m == ((a, b), (-2 * d + a, 2 * c + b), (-b, a))
    _report(4, "cocycle matrices for psi0/psi5 on 4 unit + 10 random endos",
            ok)


def test_criterion_05_g_space():
    from jordan2 import ratlinalg
    gdim4, basis4 = g_space(canonical_law(CanonicalClass.PSI4))
    gdim0, _ = g_space(canonical_law(CanonicalClass.ABELIAN))

    def in_span(matrix):
        from jordan2.core import BilinearSym
        target = BilinearSym.from_matrix2(matrix, RATIONAL_MODE)
        cols = [list(b.coords6()) for b in basis4]
        rows = [[Fraction(cols[m][c]) for m in range(len(cols))]
                for c in range(6)]
        status, _ = ratlinalg.solve(rows,
                                    [Fraction(v) for v in target.coords6()])
        return status != ratlinalg.NO_SOLUTION

    ok = (gdim4 == 2 and gdim0 == 6
          and in_span(((1, 0), (0, 0), (0, Fraction(1, 2))))
          and in_span(((0, 0), (0, 1), (Fraction(1, 2), 0))))
    _report(5, "g_space(psi4) dim 2 with both displayed matrices; "
               "g_space(0) dim 6", ok)


def test_criterion_06_rigidity_probes():
    t0 = time.monotonic()
    eps = 1e-3
    ok = True
    for cls in (CanonicalClass.PSI0, CanonicalClass.PSI4,
                CanonicalClass.PSI5):
        report = rigidity_probe(cls, eps, 500, seed=60)
        ok = ok and report.class_histogram == {cls: 500}
    for cls in (CanonicalClass.PSI1, CanonicalClass.PSI2,
                CanonicalClass.PSI3):
        report = rigidity_probe(cls, eps, 500, seed=60)
        others = sum(n for c, n in report.class_histogram.items()
                     if c is not cls)
        ok = ok and others >= 1
    e = Fraction(1, 1000)
    witnesses = [
        (((1, 0), (e, 0), (0, 1)), CanonicalClass.PSI1),
        (((e, 0), (0, 1), (0, 0)), CanonicalClass.PSI2),
        (((e, 1), (0, 0), (0, 0)), CanonicalClass.PSI3),
    ]
    for matrix, base in witnesses:
        law = JordanLaw.from_matrix2(matrix, RATIONAL_MODE)
        ok = ok and is_jordan(law)
        ok = ok and classify(law).cls is not base
    elapsed = time.monotonic() - t0
    _report(6, "rigidity census at eps=1e-3 (500 samples/class) "
               "+ exact witnesses", ok and elapsed < 120.0, elapsed)


def test_criterion_07_example1_constraint():
    points = sample_perturbations(CanonicalClass.PSI0, 1e-3, 100, seed=70)
    ok = all(p is not None and example1_constraint_check(p, tol=1e-9)
             for p in points)
    _report(7, "Example 1 constraint |e5 - e2(1+e3)| <= 1e-9 "
               "on 100 psi0 samples", ok)


def test_criterion_08_no_forbidden_psi5():
    t0 = time.monotonic()
    ok = True
    for eps in (1e-3, 1e-2):
        points = sample_perturbations(CanonicalClass.PSI2, eps, 1000,
                                      seed=80)
        for p in points:
            if p is None:
                continue
            if classify(p.law()).cls is CanonicalClass.PSI5:
                ok = False
    elapsed = time.monotonic() - t0
    _report(8, "zero psi5 among 1000 psi2 perturbations at each eps",
            ok and elapsed < 60.0, elapsed)


def test_criterion_09_contractions_and_graph():
    t0 = time.monotonic()
    ok = True
    for source, family, target in known_contractions():
        result = contract(canonical_law(source), family)
        ok = ok and result.is_limit
        ok = ok and classify(result.law).cls is target
    g = degeneration_graph()
    ok = ok and len(g.edges) == 13
    targets = {t for _, t in g.edges}
    ok = ok and not targets & {CanonicalClass.PSI0, CanonicalClass.PSI4,
                               CanonicalClass.PSI5}
    ok = ok and (CanonicalClass.PSI5, CanonicalClass.PSI2) not in set(g.edges)
    ok = ok and all(check_dimension_inequality(s, t) for s, t in g.edges)
    ok = ok and emit_dot(g) == emit_dot(degeneration_graph())
    elapsed = time.monotonic() - t0
    _report(9, "catalogued contractions, 13-edge graph, dimension drops, "
               "stable DOT", ok and elapsed < 5.0, elapsed)


def test_criterion_10_complex_witness():
    p5 = canonical_law(CanonicalClass.PSI5)
    p0 = canonical_law(CanonicalClass.PSI0)
    f = LinearMap(((1, 0), (0, 1j)), COMPLEX_MODE)
    ok = verify_witness(p5.with_mode(COMPLEX_MODE),
                        p0.with_mode(COMPLEX_MODE), f)
    ok = ok and not is_isomorphic(p5, p0)
    ok = ok and is_simple(p5)
    _report(10, "diag(1,i) maps psi5 to psi0 over C; not isomorphic over R; "
                "psi5 simple", ok)


def test_criterion_11_oracle_equivalences():
    rng = random.Random(11)
    grid = [((x0, x1), (y0, y1))
            for x0 in range(4) for x1 in range(4)
            for y0 in range(2) for y1 in range(2)]

    def grid_triple(pi, pj, pk, x, y):
        from jordan2.core import mul
        first = mul(pi, mul(pj, x, x), mul(pk, x, y))
        second = mul(pi, x, mul(pj, mul(pk, x, x), y))
        return tuple(aa - bb for aa, bb in zip(first, second))

    ok = True
    for _ in range(100):
        p, q = random_bilinear(rng), random_bilinear(rng)
        dsym = delta_bilinear(p, q)
        tsym = triple_compose(p, q, p)
        for x, y in grid:
            expected = tuple(
                sum(vals) for vals in zip(grid_triple(p, p, q, x, y),
                                          grid_triple(p, q, p, x, y),
                                          grid_triple(q, p, p, x, y)))
            if dsym.evaluate(x, y) != expected:
                ok = False
            if tsym.evaluate(x, y) != grid_triple(p, q, p, x, y):
                ok = False

    h = 1e-6
    for k in range(100):
        x = [v * 2.0 for v in direction(110, k)]
        jac = sj_jacobian(x)
        for col in range(6):
            xp, xm = list(x), list(x)
            xp[col] += h
            xm[col] -= h
            for row in range(12):
                fd = (SJ_POLYS[row].evaluate(xp)
                      - SJ_POLYS[row].evaluate(xm)) / (2 * h)
                if abs(jac[row][col] - fd) > 1e-6 * max(
                        1.0, abs(fd)):
                    ok = False
    _report(11, "symbolic-vs-grid and jacobian-vs-finite-difference oracles",
            ok)
