"""Linear geometry of the variety of Jordan laws at a point.

Two different first-order objects live here and never share a code
path:

* ``cocycle_endo(law, f)``: the bilinear map
  (x, y) -> phi(f x, y) + phi(x, f y) - f(phi(x, y)) attached to an
  endomorphism f.  The image of f -> cocycle_endo(law, f) is the
  tangent space of the basis-change orbit at the law; its rank is the
  orbit dimension.

* ``delta_bilinear(p, q)``: the six-term quartic pairing of two
  symmetric bilinear maps, linear in q for fixed p.  Its kernel (for
  fixed law p) is the space of admissible leading directions of curves
  inside the variety; first-order curve checks and the plane criterion
  are built on it.

All ranks and kernels are computed exactly over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from . import core, polyxy, ratlinalg
from .core import BilinearSym, DimensionError, JordanLaw, LinearMap
from .scalars import RATIONAL_MODE


class PolyMapCoeffs:
    """Coefficients of a vector-valued polynomial map, bidegree <= (3, 1).

    Monomials are ordered graded-lexicographically (see
    :mod:`jordan2.polyxy`); ``coefficient_vector`` flattens output
    coordinates in order, each followed by its full monomial list, so
    serialized vectors are comparable across runs.
    """

    __slots__ = ("dim", "polys")

    def __init__(self, polys, dim: int):
        self.polys = tuple(polys)
        self.dim = dim

    def is_zero(self) -> bool:
        return polyxy.vec_is_zero(self.polys)

    def coefficient_vector(self):
        return polyxy.vec_coefficients(self.polys, n=self.dim)

    def evaluate(self, xs, ys):
        return tuple(polyxy.poly_eval(p, xs, ys) for p in self.polys)

    def add(self, other: "PolyMapCoeffs") -> "PolyMapCoeffs":
        return PolyMapCoeffs(polyxy.vec_add(self.polys, other.polys), self.dim)

    def scale(self, c) -> "PolyMapCoeffs":
        return PolyMapCoeffs(polyxy.vec_scale(self.polys, c), self.dim)

    def __eq__(self, other):
        if not isinstance(other, PolyMapCoeffs):
            return NotImplemented
        return self.dim == other.dim and self.polys == other.polys

    def __repr__(self):
        return "PolyMapCoeffs(dim=%d, %d terms)" % (
            self.dim, sum(len(p) for p in self.polys))


@dataclass(frozen=True)
class TangentReport:
    orbit_dim: int
    tangent_basis: Tuple[BilinearSym, ...]
    g_dim: int
    g_basis: Tuple[BilinearSym, ...]


def cocycle_endo(law: BilinearSym, f: LinearMap) -> BilinearSym:
    """(x, y) -> phi(f x, y) + phi(x, f y) - f(phi(x, y)) as a tensor."""
    if law.dim != f.dim:
        raise DimensionError("dimension mismatch")
    n = law.dim
    c = law.tensor
    m = f.rows
    out = []
    for k in range(n):
        slab = []
        for i in range(n):
            row = []
            for j in range(n):
                v = sum(c[k][r][j] * m[r][i] + c[k][i][r] * m[r][j]
                        for r in range(n))
                v -= sum(m[k][r] * c[r][i][j] for r in range(n))
                row.append(v)
            slab.append(row)
        out.append(slab)
    return BilinearSym(out, law.mode)


def _sym_tensor_basis(n: int):
    """Elementary symmetric bilinear maps E[k, (i<=j)], n^2(n+1)/2 of them."""
    basis = []
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                tensor = [[[Fraction(0)] * n for _ in range(n)]
                          for _ in range(n)]
                tensor[k][i][j] = Fraction(1)
                tensor[k][j][i] = Fraction(1)
                basis.append(BilinearSym(tensor, RATIONAL_MODE))
    return basis


def _endo_basis(n: int):
    return [LinearMap([[1 if (i, j) == (r, s) else 0 for j in range(n)]
                       for i in range(n)], RATIONAL_MODE)
            for r in range(n) for s in range(n)]


def _sym_coords(b: BilinearSym):
    """Coordinates of a symmetric map in the E[k, (i<=j)] basis order."""
    n = b.dim
    return [b.tensor[k][i][j]
            for k in range(n) for i in range(n) for j in range(i, n)]


def orbit_tangent(law: BilinearSym):
    """(orbit dimension, tangent basis) via the exact cocycle rank."""
    if not law.mode.exact:
        return _orbit_tangent_float(law)
    n = law.dim
    images = [cocycle_endo(law, f) for f in _endo_basis(n)]
    rows = [_sym_coords(img) for img in images]
    red, pivots = ratlinalg.rref([list(map(Fraction, r)) for r in rows])
    # rows of the rref restricted to pivot rows give an independent basis
    basis = []
    for r in range(len(pivots)):
        coords = red[r]
        basis.append(_sym_from_coords(coords, n))
    return len(pivots), tuple(basis)


def _sym_from_coords(coords, n: int):
    tensor = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    idx = 0
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                tensor[k][i][j] = Fraction(coords[idx])
                tensor[k][j][i] = Fraction(coords[idx])
                idx += 1
    return BilinearSym(tensor, RATIONAL_MODE)


def _orbit_tangent_float(law: BilinearSym):
    import numpy as np

    n = law.dim
    images = [cocycle_endo(law, LinearMap(f.rows, law.mode))
              for f in _endo_basis(n)]
    a = np.array([[float(v) for v in _sym_coords(img)] for img in images])
    sv = np.linalg.svd(a, compute_uv=False)
    thresh = law.mode.tolerance * max(1.0, law.norm())
    dim = int((sv > thresh).sum())
    return dim, ()


def orbit_dim(law: BilinearSym) -> int:
    return orbit_tangent(law)[0]


def triple_compose(pi: BilinearSym, pj: BilinearSym, pk: BilinearSym) -> PolyMapCoeffs:
    """Symbolic expansion of the ordered quartic composition of three maps."""
    if not (pi.dim == pj.dim == pk.dim):
        raise DimensionError("dimension mismatch")
    n = pi.dim
    vec = polyxy.composition_poly(pi.tensor, pj.tensor, pk.tensor, n)
    return PolyMapCoeffs(vec, n)


def sym_triple(pi: BilinearSym, pj: BilinearSym, pk: BilinearSym) -> PolyMapCoeffs:
    """Sum of the ordered composition over all six argument orders."""
    import itertools

    total = None
    for a, b, c in itertools.permutations((pi, pj, pk)):
        term = triple_compose(a, b, c)
        total = term if total is None else total.add(term)
    return total


def delta_bilinear(pi: BilinearSym, pj: BilinearSym) -> PolyMapCoeffs:
    """The six-term pairing; equals the sum of the three compositions
    placing pj once in each slot, and is linear in pj for fixed pi."""
    out = triple_compose(pi, pi, pj)
    out = out.add(triple_compose(pi, pj, pi))
    out = out.add(triple_compose(pj, pi, pi))
    return out


def g_space(law: BilinearSym):
    """(dimension, rational basis) of the kernel of q -> delta_bilinear(law, q)."""
    if not law.mode.exact:
        raise ValueError("kernel computation requires an exact-rational law")
    n = law.dim
    basis = _sym_tensor_basis(n)
    rows = []
    for b in basis:
        rows.append([Fraction(v) for v in
                     delta_bilinear(law, b).coefficient_vector()])
    # a combination sum_m t_m basis_m maps to sum_m t_m rows[m]; its
    # kernel is the nullspace of the transposed coefficient matrix
    mat = [[rows[m][c] for m in range(len(rows))]
           for c in range(len(rows[0]))]
    kernel = ratlinalg.nullspace(mat, ncols=len(rows))
    out = []
    for coeffs in kernel:
        elem = BilinearSym.zero(n, RATIONAL_MODE)
        for t, b in zip(coeffs, basis):
            if t != 0:
                elem = elem.add(b.scale(t))
        out.append(elem)
    return len(out), tuple(out)


def tangent_report(law: BilinearSym) -> TangentReport:
    odim, tbasis = orbit_tangent(law)
    gdim, gbasis = g_space(law)
    return TangentReport(odim, tbasis, gdim, gbasis)


def plane_in_variety(p1: BilinearSym, p2: BilinearSym) -> bool:
    """Whether the plane spanned by {0, p1, p2} lies inside the variety.

    Both maps must satisfy the Jordan identity themselves (checked); the
    criterion is the vanishing of the pairing in both orders.
    """
    if not core.is_jordan(p1) or not core.is_jordan(p2):
        raise ValueError("plane criterion requires both maps on the variety")
    return (delta_bilinear(p1, p2).is_zero()
            and delta_bilinear(p2, p1).is_zero())


def first_order_check(base: JordanLaw, curve) -> bool:
    """Leading-direction admissibility of a polynomial curve of laws.

    ``curve`` is a sequence of coefficient tensors [A0, A1, A2, ...]
    meaning curve(t) = A0 + t A1 + t^2 A2 + ...; A0 must equal the base.
    Returns whether the lowest-order nonzero coefficient lies in the
    kernel of q -> delta_bilinear(base, q).  Vacuously true for a
    constant curve.
    """
    coeffs = [a if isinstance(a, BilinearSym) else BilinearSym(a, base.mode)
              for a in curve]
    if not coeffs or not coeffs[0].equals(base):
        raise ValueError("curve(0) must equal the base law")
    leading = None
    for a in coeffs[1:]:
        if not a.is_zero():
            leading = a
            break
    if leading is None:
        return True
    return delta_bilinear(base, leading).is_zero()


def tangent_report_to_document(report: TangentReport) -> dict:
    from . import core as _core

    return {
        "orbit_dim": report.orbit_dim,
        "tangent_basis": [_core.law_to_document(b) for b in report.tangent_basis],
        "g_dim": report.g_dim,
        "g_basis": [_core.law_to_document(b) for b in report.g_basis],
    }
