"""Complete classification of dimension-2 Jordan laws.

Seven isomorphism classes exist: six canonical nonzero laws psi0..psi5
plus the zero (abelian) law.  The decision tree uses only
basis-invariant quantities:

  * zero tensor                         -> abelian
  * unit exists, D = b^2 + 4a in a unit basis:
        D > 0 -> psi0,  D < 0 -> psi5,  D = 0 (isotropy) -> psi1
  * no unit, image rank 2               -> psi4
  * no unit, image rank 1, generator w:
        phi(w, w) != 0 -> psi2,  phi(w, w) = 0 -> psi3

With a unit present, isotropy exists iff D = 0, so the discriminant and
the isotropy test agree; the report carries both.  In approximate modes
a sign decision whose magnitude falls below tolerance * law-norm aborts
with :class:`IndeterminateError` instead of guessing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import core, ratlinalg
from .core import (ALL_DIRECTIONS, BilinearSym, JordanLaw, LinearMap,
                   ProjectiveDirection)
from .scalars import RATIONAL_MODE, REAL_MODE, ScalarMode


class NotJordanError(ValueError):
    """The classified tensor does not satisfy the Jordan identity."""


class IndeterminateError(RuntimeError):
    """A decision quantity is within tolerance of zero (approx modes)."""


class CanonicalClass(enum.Enum):
    PSI0 = "psi0"
    PSI1 = "psi1"
    PSI2 = "psi2"
    PSI3 = "psi3"
    PSI4 = "psi4"
    PSI5 = "psi5"
    ABELIAN = "abelian"

    def __str__(self):
        return self.value


_CANONICAL_MATRICES = {
    CanonicalClass.PSI0: ((1, 0), (1, 0), (0, 1)),
    CanonicalClass.PSI1: ((1, 0), (0, 0), (0, 1)),
    CanonicalClass.PSI2: ((0, 0), (0, 1), (0, 0)),
    CanonicalClass.PSI3: ((0, 1), (0, 0), (0, 0)),
    CanonicalClass.PSI4: ((1, 0), (0, 0), (0, Fraction(1, 2))),
    CanonicalClass.PSI5: ((1, 0), (-1, 0), (0, 1)),
    CanonicalClass.ABELIAN: ((0, 0), (0, 0), (0, 0)),
}


def canonical_law(cls: CanonicalClass) -> JordanLaw:
    """The exact-rational canonical law of a class."""
    return JordanLaw.from_matrix2(_CANONICAL_MATRICES[cls], RATIONAL_MODE)


@dataclass(frozen=True)
class ClassificationReport:
    cls: CanonicalClass
    unit: Optional[tuple]
    isotropy: object  # tuple of ProjectiveDirection or ALL_DIRECTIONS
    discriminant_sign: Optional[str]  # "+" or "-"
    image_rank: int
    witness: Optional[LinearMap] = None


def _sign_decision(value, mode: ScalarMode, scale: float, what: str) -> int:
    """Strict sign of a quantity that cannot legitimately vanish."""
    if mode.exact:
        if value > 0:
            return 1
        if value < 0:
            return -1
        raise IndeterminateError("%s is exactly zero" % what)
    if mode.is_zero(value, scale=scale):
        raise IndeterminateError("%s within tolerance of zero" % what)
    return 1 if value > 0 else -1


def _image_vectors(law: BilinearSym):
    n = law.dim
    basis = [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    return [core.mul(law, basis[i], basis[j])
            for i in range(n) for j in range(i, n)]


def image_rank(law: BilinearSym) -> int:
    """Dimension of span{phi(e_i, e_j)}."""
    vectors = _image_vectors(law)
    if law.mode.exact:
        return ratlinalg.rank([list(v) for v in vectors])
    import numpy as np

    a = np.array([[float(x) for x in v] for v in vectors])
    sv = np.linalg.svd(a, compute_uv=False)
    thresh = law.mode.tolerance * max(1.0, law.norm())
    return int((sv > thresh).sum())


def discriminant_in_unit_basis(law: BilinearSym, unit):
    """b^2 + 4a for the law expressed in a basis {unit, v}.

    v is the first standard basis vector not parallel to the unit; the
    sign of the result is basis-independent (it transforms by gamma^2).
    """
    n = law.dim
    if n != 2:
        raise core.DimensionError("unit-basis discriminant is dim-2 only")
    mode = law.mode
    # phi(u,u) is quadratic in the unit, so the acceptable residual
    # grows with |u|^2 (units of near-degenerate laws are huge).
    scale = max(1.0, law.norm()) * max(1.0, max(abs(u) for u in unit)) ** 2
    uu = core.mul(law, unit, unit)
    if not all(mode.close(a, b, scale=scale) for a, b in zip(uu, unit)):
        raise ValueError("supplied vector is not a unit for the law")
    v = _complete_basis(unit, mode)
    # phi(v, v) = a * unit + b * v
    vv = core.mul(law, v, v)
    a, b = _solve_2x2_columns(unit, v, vv, mode)
    return b * b + 4 * a


def _complete_basis(unit, mode: ScalarMode):
    """Standard basis vector least parallel to the unit.

    Taking the largest cross product (rather than the first nonzero
    one) keeps the basis well conditioned; a nearly parallel choice
    would shrink the discriminant quadratically and defeat the zero
    threshold.
    """
    scale = max(abs(u) for u in unit)
    best, best_cross = None, None
    for idx in range(len(unit)):
        v = tuple(mode.one() if i == idx else mode.zero()
                  for i in range(len(unit)))
        cross = abs(unit[0] * v[1] - unit[1] * v[0])
        if best is None or cross > best_cross:
            best, best_cross = v, cross
    if mode.is_zero(best_cross, scale=max(1.0, float(scale))):
        raise ValueError("unit vector is zero")
    return best


def _solve_2x2_columns(col1, col2, rhs, mode: ScalarMode):
    det = col1[0] * col2[1] - col1[1] * col2[0]
    a = (rhs[0] * col2[1] - rhs[1] * col2[0]) / det
    b = (col1[0] * rhs[1] - col1[1] * rhs[0]) / det
    return a, b


def classify(law: BilinearSym, with_witness: bool = False) -> ClassificationReport:
    """Classify a dim-2 Jordan law into the seven canonical classes."""
    if law.dim != 2:
        raise core.DimensionError("classification is dim-2 only")
    if not core.is_jordan(law):
        raise NotJordanError("tensor does not satisfy the Jordan identity")
    mode = law.mode
    norm = law.norm()
    rank = image_rank(law)
    if law.is_zero():
        report = ClassificationReport(CanonicalClass.ABELIAN, None, (),
                                      None, rank)
        return _attach_witness(law, report, with_witness)

    unit = core.find_unit(law)
    iso = core.isotropic_directions(law)
    if unit is not None:
        disc = discriminant_in_unit_basis(law, unit)
        if _is_zero_quantity(disc, mode, max(1.0, norm) ** 2):
            cls = CanonicalClass.PSI1
            sign = None
        else:
            s = _sign_decision(disc, mode, max(1.0, norm) ** 2,
                               "unit-basis discriminant")
            cls = CanonicalClass.PSI0 if s > 0 else CanonicalClass.PSI5
            sign = "+" if s > 0 else "-"
        report = ClassificationReport(cls, unit, iso, sign, rank)
        return _attach_witness(law, report, with_witness)

    if rank == 2:
        cls = CanonicalClass.PSI4
    elif rank == 1:
        w = _image_generator(law)
        ww = core.mul(law, w, w)
        wscale = max(1.0, norm) * max(1.0, max(abs(x) for x in w)) ** 2
        if all(mode.is_zero(x, scale=wscale) for x in ww):
            cls = CanonicalClass.PSI3
        else:
            cls = CanonicalClass.PSI2
    else:
        # nonzero tensor with image rank 0 cannot happen
        raise IndeterminateError("nonzero law with numerically zero image")
    report = ClassificationReport(cls, None, iso, None, rank)
    return _attach_witness(law, report, with_witness)


def _is_zero_quantity(value, mode: ScalarMode, scale) -> bool:
    if mode.exact:
        return value == 0
    return mode.is_zero(value, scale=scale)


def _image_generator(law: BilinearSym):
    vectors = _image_vectors(law)
    return max(vectors, key=lambda v: max(abs(x) for x in v))


def _attach_witness(law, report, with_witness):
    if not with_witness:
        return report
    witness = iso_witness(law, _report=report)
    return ClassificationReport(report.cls, report.unit, report.isotropy,
                                report.discriminant_sign, report.image_rank,
                                witness)


def is_isomorphic(a: BilinearSym, b: BilinearSym) -> bool:
    """Orbit membership: equality of canonical classes."""
    return classify(a).cls == classify(b).cls


def verify_witness(a: BilinearSym, b: BilinearSym, f: LinearMap) -> bool:
    """True iff act(a, f) equals b within the mode tolerance."""
    mode = f.mode
    a = a if a.mode == mode else a.with_mode(mode)
    b = b if b.mode == mode else b.with_mode(mode)
    return core.act(a, f).equals(b)


def iso_witness(law: BilinearSym, _report=None) -> LinearMap:
    """A basis change f with act(law, f) equal to the canonical law.

    Built from the constructive basis changes of the classification:
    move the unit (or an isotropic vector) into the basis, then apply
    the square-root normalization (psi0/psi5), the swap-and-scale
    (psi2) or the scalings (psi3/psi4).  Square roots force approximate
    real output even for rational input; the exact identity is returned
    when the law already is canonical.
    """
    report = _report if _report is not None else classify(law)
    cls = report.cls
    target = canonical_law(cls)
    if law.mode.exact and law == target:
        return LinearMap.identity(law.dim, RATIONAL_MODE)

    mode = REAL_MODE
    rlaw = law.with_mode(mode) if law.mode.exact else law
    if cls is CanonicalClass.ABELIAN:
        f = LinearMap.identity(law.dim, mode)
        return _checked_witness(rlaw, target, f)

    if cls in (CanonicalClass.PSI0, CanonicalClass.PSI5, CanonicalClass.PSI1):
        unit = tuple(float(u) for u in report.unit)
        if cls is CanonicalClass.PSI1:
            iso = report.isotropy
            w = tuple(float(x) for x in iso[0].coords)
            f = LinearMap.from_columns([unit, w], mode)
            return _checked_witness(rlaw, target, f)
        v = _complete_basis(unit, mode)
        f1 = LinearMap.from_columns([unit, v], mode)
        m1 = core.act(rlaw, f1)
        (_, _), (a, b), (_, _) = m1.to_matrix2()
        sq = a + b * b / 4.0
        s = math.sqrt(sq if cls is CanonicalClass.PSI0 else -sq)
        g = LinearMap([[1.0, b / 2.0], [0.0, s]], mode)
        f = f1.compose(g.inverse())
        return _checked_witness(rlaw, target, f)

    # no unit: move an isotropic vector into the second slot
    iso = report.isotropy
    if iso is ALL_DIRECTIONS or not iso:
        raise IndeterminateError("expected an isotropic direction")
    w = tuple(float(x) for x in iso[0].coords)
    u = _complete_basis(w, mode)
    f1 = LinearMap.from_columns([u, w], mode)
    m1 = core.act(rlaw, f1)
    (a1, a2), (_, _), (_, c2) = m1.to_matrix2()
    if cls is CanonicalClass.PSI4:
        f2 = LinearMap.diag([1.0 / a1, 1.0], mode)
    elif cls is CanonicalClass.PSI2:
        f2 = LinearMap.from_columns([(0.0, 1.0),
                                     (1.0 / a1, a2 / (a1 * a1))], mode)
    elif cls is CanonicalClass.PSI3:
        f2 = LinearMap([[1.0 / math.sqrt(abs(a2)), 0.0],
                        [0.0, math.copysign(1.0, a2)]], mode)
    else:  # pragma: no cover - the tree above is exhaustive
        raise AssertionError(cls)
    f = f1.compose(f2)
    return _checked_witness(rlaw, target, f)


def _checked_witness(law, target, f: LinearMap) -> LinearMap:
    if not verify_witness(law, target, f):
        raise IndeterminateError(
            "constructed basis change failed verification")
    return f


def report_to_document(report: ClassificationReport) -> dict:
    """JSON-ready encoding of a classification report."""
    from .scalars import format_rational

    def enc(v):
        if isinstance(v, Fraction):
            return format_rational(v)
        return float(v)

    doc = {"class": report.cls.value}
    doc["unit"] = None if report.unit is None else [enc(v) for v in report.unit]
    if report.isotropy is ALL_DIRECTIONS:
        doc["isotropy"] = "all"
    else:
        doc["isotropy"] = [[enc(c) for c in d.coords] for d in report.isotropy]
    doc["discriminant_sign"] = report.discriminant_sign
    doc["image_rank"] = report.image_rank
    doc["witness"] = (None if report.witness is None
                      else [[enc(v) for v in row] for row in report.witness.rows])
    return doc
