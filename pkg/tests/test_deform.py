"""Numeric projection onto the variety and rigidity probing."""

import csv
import math
import random
from fractions import Fraction

import pytest

from jordan2._kernels import CompiledKernel, PythonKernel, get_kernel
from jordan2.classify import CanonicalClass, canonical_law, classify
from jordan2.core import SJ_POLYS, JordanLaw
from jordan2.deform import (NonConvergenceError, VarietyPoint, direction,
                            example1_constraint_check,
                            forbidden_degeneration_check, newton_project,
                            rigidity_probe, sample_perturbations, sj_jacobian,
                            write_samples_csv)
from jordan2.scalars import RATIONAL_MODE

# A start point on which damped Gauss-Newton stalls without reaching
# the variety (verified for both kernels).
STALL_POINT = [0.024384894380399924, 4.4066553297589905, 87.12599119610147,
               844.6244124809492, 0.32723499255439736, 2.7429318619209497]


# --- jacobian -------------------------------------------------------------

def test_jacobian_matches_finite_differences():
    rng = random.Random(31)
    h = 1e-6
    for _ in range(20):
        x = [rng.uniform(-2, 2) for _ in range(6)]
        jac = sj_jacobian(x)
        for col in range(6):
            xp = list(x)
            xm = list(x)
            xp[col] += h
            xm[col] -= h
            rp = [p.evaluate(xp) for p in SJ_POLYS]
            rm = [p.evaluate(xm) for p in SJ_POLYS]
            for row in range(12):
                fd = (rp[row] - rm[row]) / (2 * h)
                assert jac[row][col] == pytest.approx(fd, abs=1e-4, rel=1e-4)


def test_jacobian_exact_mode():
    x = [Fraction(1, 3), 0, Fraction(-2, 7), 1, Fraction(5, 2), 0]
    jac = sj_jacobian(x)
    assert all(isinstance(v, Fraction) for row in jac for v in row)
    fjac = sj_jacobian([float(v) for v in x])
    for er, fr in zip(jac, fjac):
        for ev, fv in zip(er, fr):
            assert float(ev) == pytest.approx(fv, abs=1e-12)


def test_jacobian_zero_point():
    jac = sj_jacobian([0] * 6)
    assert all(v == 0 for row in jac for v in row)


# --- newton_project -------------------------------------------------------

def test_project_point_already_on_variety():
    start = [float(v) for v in canonical_law(CanonicalClass.PSI0).coords6()]
    point = newton_project(start)
    assert point.on_variety
    assert list(point.coords) == start
    assert point.residual_norm == 0.0


def test_project_is_idempotent():
    start = [b + 1e-3 * d for b, d in
             zip(canonical_law(CanonicalClass.PSI0).coords6(),
                 direction(7, 0))]
    first = newton_project(start)
    second = newton_project(list(first.coords))
    assert max(abs(a - b) for a, b in
               zip(first.coords, second.coords)) <= 1e-12


def test_project_lands_on_variety():
    rng = random.Random(32)
    for _ in range(25):
        start = [rng.uniform(-1, 1) for _ in range(6)]
        point = newton_project(start)
        res = [p.evaluate(point.coords) for p in SJ_POLYS]
        scale = max(1.0, math.sqrt(sum(v * v for v in point.coords)))
        assert math.sqrt(sum(v * v for v in res)) <= 1e-12 * scale
        assert point.on_variety


def test_project_nonconvergence():
    with pytest.raises(NonConvergenceError) as exc:
        newton_project(list(STALL_POINT))
    assert exc.value.residual_norm > 1e-12
    assert len(exc.value.coords) == 6


def test_project_rejects_bad_tol():
    with pytest.raises(ValueError):
        newton_project([0.0] * 6, tol=0.0)


def test_python_and_compiled_kernels_agree():
    compiled = get_kernel("compiled")
    if not isinstance(compiled, CompiledKernel):
        pytest.skip("compiled kernel unavailable")
    python = get_kernel("python")
    assert isinstance(python, PythonKernel)
    rng = random.Random(33)
    for _ in range(20):
        start = [rng.uniform(-1, 1) for _ in range(6)]
        pc = newton_project(start, kernel=compiled)
        pp = newton_project(start, kernel=python)
        assert max(abs(a - b) for a, b in zip(pc.coords, pp.coords)) <= 1e-9


# --- sampling directions --------------------------------------------------

def test_direction_unit_norm_and_deterministic():
    d1 = direction(42, 5)
    d2 = direction(42, 5)
    assert d1 == d2
    assert math.sqrt(sum(v * v for v in d1)) == pytest.approx(1.0, abs=1e-12)


def test_direction_depends_only_on_seed_and_index():
    forward = [direction(9, k) for k in range(8)]
    backward = [direction(9, k) for k in reversed(range(8))]
    assert forward == list(reversed(backward))
    assert direction(9, 0) != direction(10, 0)
    assert direction(9, 0) != direction(9, 1)


def test_sample_perturbations_validation():
    with pytest.raises(ValueError):
        sample_perturbations(CanonicalClass.PSI0, -1.0, 4, 1)
    with pytest.raises(ValueError):
        sample_perturbations(CanonicalClass.PSI0, 1e-3, 0, 1)
    with pytest.raises(ValueError):
        sample_perturbations(CanonicalClass.PSI0, 1e-3, 4, 1, mode="weird")


def test_sample_perturbations_tangent_mode():
    points = sample_perturbations(CanonicalClass.PSI4, 1e-3, 8, 3,
                                  mode="tangent")
    base = [float(v) for v in canonical_law(CanonicalClass.PSI4).coords6()]
    for point in points:
        assert point is not None and point.on_variety
        dist = max(abs(a - b) for a, b in zip(point.coords, base))
        assert dist <= 1e-2


# --- rigidity probes ------------------------------------------------------

@pytest.mark.parametrize("cls", [CanonicalClass.PSI0, CanonicalClass.PSI5])
def test_rigid_classes_small_probe(cls):
    report = rigidity_probe(cls, 1e-3, 60, seed=101)
    assert report.empirically_rigid
    assert report.class_histogram == {cls: 60}


@pytest.mark.parametrize("cls,expected_leak", [
    (CanonicalClass.PSI1, CanonicalClass.PSI0),
    (CanonicalClass.PSI2, CanonicalClass.PSI0),
    (CanonicalClass.PSI3, CanonicalClass.PSI0),
])
def test_non_rigid_classes_leak(cls, expected_leak):
    report = rigidity_probe(cls, 1e-3, 60, seed=101)
    assert not report.empirically_rigid
    assert report.class_histogram.get(expected_leak, 0) > 0


def test_rigidity_report_document():
    report = rigidity_probe(CanonicalClass.PSI4, 1e-3, 10, seed=7)
    doc = report.to_document()
    assert doc["base_class"] == "psi4"
    assert doc["samples"] == 10
    assert doc["seed"] == 7
    assert (sum(doc["class_histogram"].values())
            + doc["indeterminate_count"] == 10)
    assert isinstance(doc["empirically_rigid"], bool)


def test_rigidity_probe_deterministic():
    r1 = rigidity_probe(CanonicalClass.PSI1, 1e-3, 30, seed=5)
    r2 = rigidity_probe(CanonicalClass.PSI1, 1e-3, 30, seed=5)
    assert r1.to_document() == r2.to_document()


def test_semicontinuity_of_leaks():
    """Classes reached by projection never have smaller orbits than the base."""
    from jordan2.geometry import orbit_dim
    for cls in (CanonicalClass.PSI1, CanonicalClass.PSI2,
                CanonicalClass.PSI3):
        base_dim = orbit_dim(canonical_law(cls))
        report = rigidity_probe(cls, 1e-3, 40, seed=11)
        for reached in report.class_histogram:
            if reached is CanonicalClass.ABELIAN:
                continue
            assert orbit_dim(canonical_law(reached)) >= base_dim


def test_exact_on_variety_witnesses_near_non_rigid_classes():
    """Hand-built Jordan laws at distance 1/1000 from the canonical
    representatives, landing in a different class."""
    eps = Fraction(1, 1000)
    cases = [
        (((1, 0), (eps, 0), (0, 1)), CanonicalClass.PSI0),   # near psi1
        (((eps, 0), (0, 1), (0, 0)), CanonicalClass.PSI0),   # near psi2
        (((eps, 1), (0, 0), (0, 0)), CanonicalClass.PSI2),   # near psi3
    ]
    for matrix, expected in cases:
        law = JordanLaw.from_matrix2(matrix, RATIONAL_MODE)
        assert classify(law).cls is expected


# --- Example 1 constraint -------------------------------------------------

def test_example1_constraint_on_projected_psi0_samples():
    points = sample_perturbations(CanonicalClass.PSI0, 1e-3, 20, seed=13)
    for point in points:
        assert point is not None
        assert example1_constraint_check(point)


def test_example1_constraint_rejects_off_variety():
    coords = [float(v) for v in canonical_law(CanonicalClass.PSI0).coords6()]
    coords[4] += 0.5  # push c1 off the variety
    fake = VarietyPoint(tuple(coords), 0.0)
    assert not example1_constraint_check(fake)


def test_example1_constraint_requires_psi0():
    zero = VarietyPoint((0.0,) * 6, 0.0)
    with pytest.raises(ValueError):
        example1_constraint_check(zero)


# --- forbidden degeneration ------------------------------------------------

def test_forbidden_degeneration_small():
    report = forbidden_degeneration_check(1e-3, 40, seed=17)
    assert report.passed
    assert report.psi5_count == 0
    assert report.ideal_failures == 0
    assert report.ideal_checked > 0
    doc = report.to_document()
    assert doc["passed"] is True
    assert doc["seed"] == 17


# --- CSV export -----------------------------------------------------------

def test_write_samples_csv(tmp_path):
    points = sample_perturbations(CanonicalClass.PSI1, 1e-3, 6, seed=19)
    path = tmp_path / "samples.csv"
    write_samples_csv(path, points)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["index", "a1", "a2", "b1", "b2", "c1", "c2",
                       "residual", "class"]
    assert len(rows) == 7
    for k, row in enumerate(rows[1:]):
        assert row[0] == str(k)
        if row[8] != "nonconvergent":
            got = [float(v) for v in row[1:7]]
            assert max(abs(a - b) for a, b in
                       zip(got, points[k].coords)) <= 1e-15
