"""Numeric perturbation theory on the variety of Jordan laws.

Perturbations of a base law are projected back onto the variety (damped
Gauss-Newton on the twelve defining polynomials) and then classified.
Sampling directions are derived per index with a counter-based SHA-256
generator, so results are deterministic, order-independent, and safe to
evaluate concurrently.

Direction generator (fixed): for sample index ``k`` under seed ``s``,
the bytes ``SHA-256(b"jordan2:<s>:<k>:<c>")`` for counters c = 0, 1 are
concatenated; consecutive 8-byte big-endian words u are mapped to
``2*u/2**64 - 1`` (uniform in [-1, 1)) to fill the coordinates, and the
vector is normalized to unit Euclidean length.
"""

from __future__ import annotations

import csv
import hashlib
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import _kernels
from .classify import CanonicalClass, IndeterminateError, canonical_law, classify
from .core import JordanLaw, find_ideals_1d, sj_residuals
from .geometry import g_space
from .scalars import REAL_MODE

ON_VARIETY_TOL = 1e-12
_CONSTRAINT_TOL = 1e-9


class NonConvergenceError(RuntimeError):
    """Gauss-Newton failed to reach the variety within max_iter."""

    def __init__(self, coords, residual_norm, iterations):
        super().__init__(
            "projection did not converge after %d iterations "
            "(residual %.3e)" % (iterations, residual_norm))
        self.coords = tuple(coords)
        self.residual_norm = residual_norm
        self.iterations = iterations


@dataclass(frozen=True)
class VarietyPoint:
    """A point of R^6 with its distance to the variety."""

    coords: Tuple[float, ...]
    residual_norm: float

    @property
    def on_variety(self) -> bool:
        scale = max(1.0, math.sqrt(sum(v * v for v in self.coords)))
        return self.residual_norm <= ON_VARIETY_TOL * scale

    def law(self) -> JordanLaw:
        return JordanLaw.from_coords6(self.coords, REAL_MODE)


@dataclass(frozen=True)
class RigidityReport:
    base_class: CanonicalClass
    epsilon: float
    samples: int
    class_histogram: Dict[CanonicalClass, int]
    indeterminate_count: int
    seed: int

    @property
    def empirically_rigid(self) -> bool:
        """All classified samples fall in the base class (at this radius)."""
        return all(cls == self.base_class
                   for cls, n in self.class_histogram.items() if n)

    def to_document(self) -> dict:
        return {
            "base_class": str(self.base_class),
            "epsilon": self.epsilon,
            "samples": self.samples,
            "class_histogram": {str(c): n
                                for c, n in sorted(self.class_histogram.items(),
                                                   key=lambda cn: cn[0].value)},
            "indeterminate_count": self.indeterminate_count,
            "seed": self.seed,
            "empirically_rigid": self.empirically_rigid,
        }


@dataclass(frozen=True)
class ForbiddenReport:
    """Outcome of the forbidden-degeneration probe around psi2."""

    epsilon: float
    samples: int
    class_histogram: Dict[CanonicalClass, int]
    indeterminate_count: int
    psi5_count: int
    ideal_checked: int
    ideal_failures: int
    seed: int

    @property
    def passed(self) -> bool:
        return self.psi5_count == 0 and self.ideal_failures == 0

    def to_document(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "samples": self.samples,
            "class_histogram": {str(c): n
                                for c, n in sorted(self.class_histogram.items(),
                                                   key=lambda cn: cn[0].value)},
            "indeterminate_count": self.indeterminate_count,
            "psi5_count": self.psi5_count,
            "ideal_checked": self.ideal_checked,
            "ideal_failures": self.ideal_failures,
            "seed": self.seed,
            "passed": self.passed,
        }


def sj_jacobian(coords):
    """12x6 matrix of exact partial derivatives of the defining polynomials.

    Exact Fractions in when all coordinates are exact rationals, floats
    otherwise.
    """
    from .core import SJ_JACOBIAN_POLYS
    from fractions import Fraction
    exact = all(isinstance(v, (int, Fraction)) for v in coords)
    if exact:
        x = [Fraction(v) for v in coords]
        return [[p.evaluate(x) for p in row] for row in SJ_JACOBIAN_POLYS]
    x = [float(v) for v in coords]
    return [[float(p.evaluate(x)) for p in row] for row in SJ_JACOBIAN_POLYS]


def newton_project(start, tol: float = ON_VARIETY_TOL, max_iter: int = 50,
                   kernel=None) -> VarietyPoint:
    """Project a 6-vector onto the variety by damped Gauss-Newton."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    kernel = kernel or _kernels.ACTIVE
    coords, rnorm, iters, converged = kernel.project(
        [float(v) for v in start], float(tol), max_iter)
    if not converged:
        raise NonConvergenceError(coords, rnorm, iters)
    return VarietyPoint(tuple(coords), rnorm)


def direction(seed: int, index: int, dim: int = 6) -> Tuple[float, ...]:
    """Unit direction for one sample, derived only from (seed, index)."""
    words: List[float] = []
    counter = 0
    while len(words) < dim:
        digest = hashlib.sha256(
            b"jordan2:%d:%d:%d" % (seed, index, counter)).digest()
        for off in range(0, 32, 8):
            u = int.from_bytes(digest[off:off + 8], "big")
            words.append(2.0 * (u / 2.0 ** 64) - 1.0)
        counter += 1
    vec = words[:dim]
    norm = math.sqrt(sum(v * v for v in vec))
    if norm == 0.0:  # pragma: no cover - probability ~0
        vec, norm = [1.0] + [0.0] * (dim - 1), 1.0
    return tuple(v / norm for v in vec)


def _tangent_frame(base_class: CanonicalClass):
    """g_space basis of the base law, as rows of 6 floats."""
    _, basis = g_space(canonical_law(base_class))
    return [[float(v) for v in b.coords6()] for b in basis]


def sample_perturbations(base: CanonicalClass, eps: float, count: int,
                         seed: int, mode: str = "ambient",
                         tol: float = ON_VARIETY_TOL
                         ) -> List[Optional[VarietyPoint]]:
    """Project ``count`` perturbed copies of the base law onto the variety.

    Entry ``k`` is the projected point for sample index ``k``, or ``None``
    when Gauss-Newton failed to converge for that sample.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if count < 1:
        raise ValueError("count must be at least 1")
    if mode not in ("ambient", "tangent"):
        raise ValueError(f"unknown sampling mode {mode!r}")
    base_coords = [float(v) for v in canonical_law(base).coords6()]
    frame = _tangent_frame(base) if mode == "tangent" else None
    out: List[Optional[VarietyPoint]] = []
    for k in range(count):
        if frame:
            weights = direction(seed, k, dim=len(frame))
            offset = [sum(w * row[j] for w, row in zip(weights, frame))
                      for j in range(6)]
        elif frame is not None:  # tangent mode with trivial g_space
            offset = [0.0] * 6
        else:
            offset = list(direction(seed, k))
        start = [b + eps * o for b, o in zip(base_coords, offset)]
        try:
            out.append(newton_project(start, tol=tol))
        except NonConvergenceError:
            out.append(None)
    return out


def _classify_point(point: VarietyPoint) -> Optional[CanonicalClass]:
    try:
        return classify(point.law()).cls
    except IndeterminateError:
        return None


def rigidity_probe(base: CanonicalClass, eps: float, count: int,
                   seed: int) -> RigidityReport:
    """Sample ambient perturbations of the base law and tabulate classes."""
    points = sample_perturbations(base, eps, count, seed, mode="ambient")
    histogram: Dict[CanonicalClass, int] = {}
    indeterminate = 0
    for point in points:
        cls = _classify_point(point) if point is not None else None
        if cls is None:
            indeterminate += 1
        else:
            histogram[cls] = histogram.get(cls, 0) + 1
    return RigidityReport(base, eps, count, histogram, indeterminate, seed)


def example1_constraint_check(point: VarietyPoint,
                              tol: float = _CONSTRAINT_TOL) -> bool:
    """Check the on-variety relation eps5 = eps2*(1 + eps3) near psi0.

    The basis is first rescaled (e1' = e1/c2) so that the c2 entry is
    exactly 1; the remaining entries are then read as offsets from the
    canonical psi0 coordinates.
    """
    coords = [float(v) for v in point.coords]
    residual = math.sqrt(float(sum(
        r * r for r in (float(v) for v in
                        sj_residuals(point.law())))))
    if residual > ON_VARIETY_TOL * max(1.0, math.sqrt(sum(
            v * v for v in coords))):
        return False  # the relation only holds on the variety
    if _classify_point(point) is not CanonicalClass.PSI0:
        raise ValueError("point does not classify as Psi0")
    a1, a2, b1, b2, c1, c2 = (float(v) for v in point.coords)
    if c2 == 0.0:
        raise ValueError("c2 entry vanishes; cannot normalize")
    # e1' = e1/c2 maps (a1,a2,b1,b2,c1,c2) to
    # (a1/c2, a2/c2**2, b1*c2, b2, c1, 1):
    eps2 = a2 / (c2 * c2)
    eps3 = b1 * c2 - 1.0
    eps5 = c1
    return abs(eps5 - eps2 * (1.0 + eps3)) <= tol


def forbidden_degeneration_check(eps: float, count: int,
                                 seed: int) -> ForbiddenReport:
    """Probe perturbations of psi2 for the forbidden jump to psi5.

    Alongside the class census, samples whose b1 and c1 entries vanish
    (to tolerance) must possess a 1-dimensional ideal; a constrained
    batch with those coordinates zeroed before projection keeps this
    branch exercised.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if count < 0:
        raise ValueError("count must be nonnegative")
    histogram: Dict[CanonicalClass, int] = {}
    indeterminate = 0
    checked: List[VarietyPoint] = []
    if count:
        for point in sample_perturbations(CanonicalClass.PSI2, eps, count,
                                          seed, mode="ambient"):
            cls = _classify_point(point) if point is not None else None
            if cls is None:
                indeterminate += 1
            else:
                histogram[cls] = histogram.get(cls, 0) + 1
            if point is not None:
                checked.append(point)
        base = [float(v) for v in canonical_law(CanonicalClass.PSI2).coords6()]
        for k in range(min(count, 32)):
            offset = list(direction(seed, k))
            offset[2] = offset[4] = 0.0  # pin the b1 and c1 coordinates
            start = [b + eps * o for b, o in zip(base, offset)]
            try:
                checked.append(newton_project(start))
            except NonConvergenceError:
                pass  # the constrained batch is advisory only
    ideal_checked = ideal_failures = 0
    for point in checked:
        _, _, b1, _, c1, _ = point.coords
        if abs(b1) <= _CONSTRAINT_TOL and abs(c1) <= _CONSTRAINT_TOL:
            ideal_checked += 1
            if not find_ideals_1d(point.law()):
                ideal_failures += 1
    psi5 = histogram.get(CanonicalClass.PSI5, 0)
    return ForbiddenReport(eps, count, histogram, indeterminate, psi5,
                           ideal_checked, ideal_failures, seed)


def write_samples_csv(path, points) -> None:
    """One row per sample: index, projected coords, residual, class."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "a1", "a2", "b1", "b2", "c1", "c2",
                         "residual", "class"])
        for k, point in enumerate(points):
            if point is None:
                writer.writerow([k] + [""] * 7 + ["nonconvergent"])
                continue
            cls = _classify_point(point)
            writer.writerow(
                [k] + ["%.17g" % v for v in point.coords]
                + ["%.17g" % point.residual_norm,
                   str(cls) if cls is not None else "indeterminate"])
