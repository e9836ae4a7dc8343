"""Laws of two-sided symmetric bilinear products and their identities.

A law is stored as a structure-constant tensor c[k][i][j]: the
coefficient of e_k in e_i * e_j.  For dimension 2 a law round-trips
with the 3x2 coefficient matrix

    (a1 a2)     e1*e1 = a1 e1 + a2 e2
    (b1 b2)     e2*e2 = b1 e1 + b2 e2
    (c1 c2)     e1*e2 = c1 e1 + c2 e2

This module provides the product, the quartic identity residual, the
exact membership decision for the variety of Jordan laws, the twelve
dimension-2 defining polynomials, the coefficient-system residuals, the
GL basis-change action, units, isotropic directions, one-dimensional
ideals and simplicity.

Membership decision: the identity residual has per-variable degree <= 3
in the x coordinates and <= 1 in the y coordinates, so it vanishes
identically iff it vanishes on the finite grid x in {0,1,2,3}^n,
y in {0,1}^n.  That grid is evaluated in the law's own arithmetic and
is the ground-truth decision procedure.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from . import polyxy, ratlinalg
from .scalars import (COMPLEX, RATIONAL, RATIONAL_MODE, REAL, REAL_MODE,
                      ScalarMode, format_rational, format_real,
                      parse_rational)


class DimensionError(ValueError):
    pass


class SingularMapError(ZeroDivisionError):
    pass


class MultipleUnitsError(RuntimeError):
    """Guard for an underdetermined-but-consistent unit system.

    Unreachable for symmetric tensors: if phi(w, .) = 0 identically and a
    unit u exists then w = phi(u, w) = 0, so the solution is unique
    whenever it exists.  Kept as an explicit error state regardless.
    """


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vec_scale(a, c):
    return tuple(c * x for x in a)


def _vec_norm(a) -> float:
    return math.sqrt(sum(abs(x) ** 2 for x in a))


class BilinearSym:
    """A symmetric bilinear map R^n x R^n -> R^n as a tensor c[k][i][j]."""

    __slots__ = ("dim", "tensor", "mode")

    def __init__(self, tensor, mode: ScalarMode = RATIONAL_MODE):
        n = len(tensor)
        coerced = []
        for k in range(n):
            if len(tensor[k]) != n or any(len(row) != n for row in tensor[k]):
                raise DimensionError("tensor is not n x n x n")
            slab = tuple(tuple(mode.coerce(tensor[k][i][j]) for j in range(n))
                         for i in range(n))
            coerced.append(slab)
        for k in range(n):
            for i in range(n):
                for j in range(i + 1, n):
                    if coerced[k][i][j] != coerced[k][j][i]:
                        raise ValueError(
                            "tensor not symmetric at c[%d][%d][%d]" % (k, i, j))
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "tensor", tuple(coerced))
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("immutable value")

    # -- construction -------------------------------------------------

    @classmethod
    def from_matrix2(cls, matrix, mode: ScalarMode = RATIONAL_MODE):
        """Build a dim-2 map from the 3x2 coefficient matrix."""
        if len(matrix) != 3 or any(len(r) != 2 for r in matrix):
            raise DimensionError("expected a 3x2 coefficient matrix")
        (a1, a2), (b1, b2), (c1, c2) = matrix
        tensor = [
            [[a1, c1], [c1, b1]],
            [[a2, c2], [c2, b2]],
        ]
        return cls(tensor, mode)

    @classmethod
    def zero(cls, dim: int, mode: ScalarMode = RATIONAL_MODE):
        z = mode.zero()
        tensor = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        return cls(tensor, mode)

    def to_matrix2(self):
        if self.dim != 2:
            raise DimensionError("coefficient matrix exists only for dim 2")
        c = self.tensor
        return ((c[0][0][0], c[1][0][0]),
                (c[0][1][1], c[1][1][1]),
                (c[0][0][1], c[1][0][1]))

    def coords6(self):
        """(a1, a2, b1, b2, c1, c2) for dim 2."""
        (a1, a2), (b1, b2), (c1, c2) = self.to_matrix2()
        return (a1, a2, b1, b2, c1, c2)

    @classmethod
    def from_coords6(cls, coords, mode: ScalarMode = RATIONAL_MODE):
        a1, a2, b1, b2, c1, c2 = coords
        return cls.from_matrix2(((a1, a2), (b1, b2), (c1, c2)), mode)

    def with_mode(self, mode: ScalarMode):
        return type(self)(self.tensor, mode)

    # -- queries ------------------------------------------------------

    def is_zero(self, scale=None) -> bool:
        s = self.norm() if scale is None else scale
        return all(self.mode.is_zero(v, scale=s)
                   for slab in self.tensor for row in slab for v in row)

    def norm(self) -> float:
        return max((abs(v) for slab in self.tensor
                    for row in slab for v in row), default=0.0)

    def entries(self):
        for slab in self.tensor:
            for row in slab:
                yield from row

    def __eq__(self, other):
        if not isinstance(other, BilinearSym):
            return NotImplemented
        return self.dim == other.dim and self.tensor == other.tensor

    def __hash__(self):
        return hash((self.dim, self.tensor))

    def equals(self, other, scale=None) -> bool:
        """Mode-tolerant equality of tensors."""
        if self.dim != other.dim:
            return False
        s = scale if scale is not None else max(self.norm(), other.norm())
        return all(self.mode.close(a, b, scale=s)
                   for a, b in zip(self.entries(), other.entries()))

    def add(self, other):
        tensor = [[[a + b for a, b in zip(r1, r2)]
                   for r1, r2 in zip(s1, s2)]
                  for s1, s2 in zip(self.tensor, other.tensor)]
        return type(self)(tensor, self.mode)

    def scale(self, c):
        c = self.mode.coerce(c)
        tensor = [[[c * v for v in row] for row in slab] for slab in self.tensor]
        return type(self)(tensor, self.mode)

    def __repr__(self):
        if self.dim == 2:
            return "%s(matrix=%r)" % (type(self).__name__, self.to_matrix2())
        return "%s(dim=%d)" % (type(self).__name__, self.dim)


class JordanLaw(BilinearSym):
    """A symmetric bilinear law intended to satisfy the Jordan identity.

    Construction does not enforce the identity; use :func:`is_jordan`.
    """


class LinearMap:
    """An n x n matrix acting by f(e_j) = sum_i m[i][j] e_i."""

    __slots__ = ("dim", "rows", "mode")

    def __init__(self, rows, mode: ScalarMode = RATIONAL_MODE):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix is not square")
        coerced = tuple(tuple(mode.coerce(v) for v in row) for row in rows)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "rows", coerced)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("immutable value")

    @classmethod
    def identity(cls, dim: int, mode: ScalarMode = RATIONAL_MODE):
        return cls([[1 if i == j else 0 for j in range(dim)]
                    for i in range(dim)], mode)

    @classmethod
    def diag(cls, values, mode: ScalarMode = RATIONAL_MODE):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)]
                    for i in range(n)], mode)

    @classmethod
    def from_columns(cls, cols, mode: ScalarMode = RATIONAL_MODE):
        n = len(cols)
        return cls([[cols[j][i] for j in range(n)] for i in range(n)], mode)

    def det(self):
        if self.mode.exact:
            return ratlinalg.det([list(r) for r in self.rows])
        return _float_det(self.rows)

    def is_invertible(self) -> bool:
        d = self.det()
        if self.mode.exact:
            return d != 0
        scale = max((abs(v) for r in self.rows for v in r), default=0.0)
        return not self.mode.is_zero(d, scale=max(1.0, scale) ** self.dim)

    def inverse(self) -> "LinearMap":
        if not self.is_invertible():
            raise SingularMapError("map is singular")
        if self.mode.exact:
            inv = ratlinalg.inverse([list(r) for r in self.rows])
        else:
            inv = _float_inverse(self.rows)
        return LinearMap(inv, self.mode)

    def apply(self, vec):
        return tuple(sum(self.rows[i][j] * vec[j] for j in range(self.dim))
                     for i in range(self.dim))

    def compose(self, other: "LinearMap") -> "LinearMap":
        """Matrix product self @ other (apply ``other`` first)."""
        n = self.dim
        rows = [[sum(self.rows[i][k] * other.rows[k][j] for k in range(n))
                 for j in range(n)] for i in range(n)]
        return LinearMap(rows, self.mode)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim, self.rows))

    def __repr__(self):
        return "LinearMap(%r)" % (self.rows,)


def _float_det(rows):
    n = len(rows)
    m = [list(r) for r in rows]
    result = 1.0 + 0 * m[0][0]
    for c in range(n):
        piv = max(range(c, n), key=lambda i: abs(m[i][c]))
        if m[piv][c] == 0:
            return 0 * result
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def _float_inverse(rows):
    n = len(rows)
    aug = [list(rows[i]) + [1.0 if j == i else 0.0 for j in range(n)]
           for i in range(n)]
    for c in range(n):
        piv = max(range(c, n), key=lambda i: abs(aug[i][c]))
        if aug[piv][c] == 0:
            raise SingularMapError("map is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


class AllDirections:
    """Marker: every direction qualifies (identically-zero conditions)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALL_DIRECTIONS"


ALL_DIRECTIONS = AllDirections()


class ProjectiveDirection:
    """A point [v1 : v2] of the real projective line.

    Normalized so the first coordinate that is nonzero (within the
    mode's tolerance, relative to the vector norm) equals 1.
    """

    __slots__ = ("coords", "mode")

    def __init__(self, v1, v2, mode: ScalarMode = RATIONAL_MODE):
        v1 = mode.coerce(v1)
        v2 = mode.coerce(v2)
        scale = max(abs(v1), abs(v2))
        if mode.is_zero(scale):
            raise ValueError("zero vector has no direction")
        if not mode.is_zero(v1, scale=scale):
            v1, v2 = mode.one(), v2 / v1
        else:
            v1, v2 = mode.zero(), mode.one()
        object.__setattr__(self, "coords", (v1, v2))
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("immutable value")

    def same_as(self, other: "ProjectiveDirection") -> bool:
        a, b = self.coords, other.coords
        scale = max(abs(v) for v in (*a, *b))
        return (self.mode.close(a[0], b[0], scale=scale)
                and self.mode.close(a[1], b[1], scale=scale))

    def __eq__(self, other):
        if not isinstance(other, ProjectiveDirection):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash(self.coords if self.mode.exact else None)

    def __repr__(self):
        return "[%r : %r]" % self.coords


# ----------------------------------------------------------------------
# Products and identity residuals


def mul(law: BilinearSym, x, y):
    """The product phi(x, y) = sum_ij x_i y_j c[.][i][j]."""
    n = law.dim
    if len(x) != n or len(y) != n:
        raise DimensionError("vector length does not match law dimension")
    c = law.tensor
    return tuple(sum(c[k][i][j] * x[i] * y[j]
                     for i in range(n) for j in range(n))
                 for k in range(n))


def jordan_residual(law: BilinearSym, x, y):
    """phi(phi(x,x), phi(x,y)) - phi(x, phi(phi(x,x), y))."""
    xx = mul(law, x, x)
    first = mul(law, xx, mul(law, x, y))
    second = mul(law, x, mul(law, xx, y))
    return _vec_sub(first, second)


def _grid_points(n: int):
    for x in itertools.product((0, 1, 2, 3), repeat=n):
        for y in itertools.product((0, 1), repeat=n):
            yield x, y


# Worst-case factor by which a grid evaluation amplifies the coefficient
# residuals: monomials x_i x_j x_k y_m are at most 27 on the grid and the
# expansion has at most 27 of them per output coordinate in dim 2.
_GRID_AMPLIFICATION = 27.0


def _is_jordan2_int(tensor) -> bool:
    """Integer-arithmetic grid decision, specialized to dimension 2."""
    a1, a2 = tensor[0][0][0], tensor[1][0][0]
    b1, b2 = tensor[0][1][1], tensor[1][1][1]
    c1, c2 = tensor[0][0][1], tensor[1][0][1]

    def phi(u0, u1, v0, v1):
        s00, s11, sx = u0 * v0, u1 * v1, u0 * v1 + u1 * v0
        return a1 * s00 + c1 * sx + b1 * s11, a2 * s00 + c2 * sx + b2 * s11

    for x0, x1, y0, y1 in itertools.product(
            (0, 1, 2, 3), (0, 1, 2, 3), (0, 1), (0, 1)):
        w0, w1 = phi(x0, x1, x0, x1)
        p0, p1 = phi(x0, x1, y0, y1)
        f0, f1 = phi(w0, w1, p0, p1)
        q0, q1 = phi(w0, w1, y0, y1)
        s0, s1 = phi(x0, x1, q0, q1)
        if f0 != s0 or f1 != s1:
            return False
    return True


def is_jordan(law: BilinearSym) -> bool:
    """Exact decision via the degree-bound grid {0..3}^n x {0,1}^n."""
    mode = law.mode
    if mode.exact:
        # The residual is quadratic in the structure constants, so
        # clearing denominators changes it by a nonzero square factor;
        # the grid then runs in plain integer arithmetic.
        denom = math.lcm(*(Fraction(v).denominator for v in law.entries()))
        tensor = [[[int(Fraction(v) * denom) for v in row] for row in slab]
                  for slab in law.tensor]
        if law.dim == 2:
            return _is_jordan2_int(tensor)
        scaled = BilinearSym(tensor, RATIONAL_MODE)
        for x, y in _grid_points(law.dim):
            if any(v != 0 for v in jordan_residual(scaled, x, y)):
                return False
        return True
    scale = _GRID_AMPLIFICATION * max(1.0, law.norm()) ** 3
    for x, y in _grid_points(law.dim):
        res = jordan_residual(law, x, y)
        if not mode.is_zero(_vec_norm(res), scale=scale):
            return False
    return True


# ----------------------------------------------------------------------
# The twelve dimension-2 polynomials, kept as sparse monomial data in the
# variables (a1, a2, b1, b2, c1, c2) so that residuals, analytic partial
# derivatives and the compiled projection kernel all share one source.


class _Poly6:
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms  # dict exponent-6-tuple -> Fraction

    @classmethod
    def variable(cls, i):
        return cls({tuple(1 if j == i else 0 for j in range(6)): Fraction(1)})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, Fraction(0)) + c
            if nc == 0:
                out.pop(e, None)
            else:
                out[e] = nc
        return _Poly6(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, int):
            return _Poly6({e: c * other for e, c in self.terms.items()})
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                nc = out.get(e, Fraction(0)) + ca * cb
                if nc == 0:
                    out.pop(e, None)
                else:
                    out[e] = nc
        return _Poly6(out)

    __rmul__ = __mul__

    def diff(self, var):
        out = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                continue
            ne = tuple(v - 1 if i == var else v for i, v in enumerate(e))
            out[ne] = c * e[var]
        return _Poly6(out)

    def evaluate(self, coords):
        total = None
        for e, c in sorted(self.terms.items()):
            v = c if isinstance(coords[0], Fraction) else float(c)
            for base, exp in zip(coords, e):
                for _ in range(exp):
                    v = v * base
            total = v if total is None else total + v
        if total is None:
            return 0 * coords[0]
        return total


def _build_sj_polys():
    a1, a2, b1, b2, c1, c2 = (_Poly6.variable(i) for i in range(6))
    return [
        a2 * c1 * c2 - a2 * a2 * b1,
        b1 * c1 * c2 - b1 * a2 * b1,
        a2 * (a1 * b1 + b2 * c1) - a2 * (b1 * c2 + c1 * c1),
        b1 * (a1 * b1 + b2 * c1) - b1 * (b1 * c2 + c1 * c1),
        a2 * (a2 * c1 + c2 * c2) - a2 * (a1 * c2 + a2 * b2),
        b1 * (a2 * c1 + c2 * c2) - b1 * (a1 * c2 + a2 * b2),
        a1 * c1 * c2 + 2 * a2 * b1 * c2 - 2 * c1 * c2 * c2 - a1 * a2 * b1,
        (a1 * a2 * c1 + 3 * a1 * c2 * c2 + 2 * a2 * b2 * c2
         - 2 * a2 * c1 * c2 - 2 * c2 * c2 * c2 - a1 * a1 * c2 - a1 * a2 * b2),
        (2 * c1 * c1 * c2 + 2 * b1 * c2 * c2 + a1 * a1 * b1 + a1 * b2 * c1
         - 3 * a1 * b1 * c2 - 2 * b2 * c1 * c2 - a1 * c1 * c1),
        (2 * c1 * c2 * c2 + 2 * a2 * c1 * c1 + a1 * b2 * c2 + a2 * b2 * b2
         - b2 * c2 * c2 - 2 * a1 * c1 * c2 - 3 * a2 * b2 * c1),
        (2 * a1 * b1 * c1 + 3 * b2 * c1 * c1 + b1 * b2 * c2
         - a1 * b1 * b2 - b2 * b2 * c1 - 2 * c1 * c1 * c1 - 2 * b1 * c1 * c2),
        2 * a2 * b1 * c1 + b2 * c1 * c2 - a2 * b1 * b2 - 2 * c1 * c1 * c2,
    ]


SJ_POLYS = _build_sj_polys()
SJ_JACOBIAN_POLYS = [[p.diff(v) for v in range(6)] for p in SJ_POLYS]


def sj_residuals(law: BilinearSym):
    """The twelve defining polynomials, in printed order."""
    if law.dim != 2:
        raise DimensionError("the twelve-polynomial system is dim-2 only")
    coords = law.coords6()
    return tuple(p.evaluate(coords) for p in SJ_POLYS)


def j2_residuals(law: BilinearSym):
    """Coefficient-system residuals of the identity.

    The identity residual is expanded symbolically in generic (x, y) and
    the coefficient of every monomial is returned, in the fixed graded
    lexicographic order of :mod:`jordan2.polyxy`.  A law satisfies the
    identity iff all values vanish; this is the coefficient form of the
    grid decision, derived from the identity itself rather than from any
    printed index scheme.
    """
    res = polyxy.composition_poly(law.tensor, law.tensor, law.tensor, law.dim)
    return tuple(polyxy.vec_coefficients(res, n=law.dim, zero=law.mode.zero()))


# ----------------------------------------------------------------------
# GL action


def act(law: BilinearSym, f: LinearMap):
    """Basis change: (phi, f) = f^-1 o phi o (f, f)."""
    if law.dim != f.dim:
        raise DimensionError("dimension mismatch")
    finv = f.inverse()  # raises SingularMapError for singular f
    n = law.dim
    c = law.tensor
    m = f.rows
    mi = finv.rows
    # Fill the upper triangle in (i, j) and mirror it, so that float
    # summation order cannot break exact symmetry of the result.
    tmp = [[[None] * n for _ in range(n)] for _ in range(n)]
    for r in range(n):
        for i in range(n):
            for j in range(i, n):
                v = sum(c[r][p][q] * m[p][i] * m[q][j]
                        for p in range(n) for q in range(n))
                tmp[r][i][j] = tmp[r][j][i] = v
    new = [[[sum(mi[k][r] * tmp[r][i][j] for r in range(n))
             for j in range(n)] for i in range(n)] for k in range(n)]
    return type(law)(new, law.mode)


# ----------------------------------------------------------------------
# Units


def find_unit(law: BilinearSym):
    """Solve phi(u, e_j) = e_j for all j; None when no unit exists."""
    n = law.dim
    c = law.tensor
    if law.mode.exact:
        rows = []
        rhs = []
        for j in range(n):
            for k in range(n):
                rows.append([c[k][i][j] for i in range(n)])
                rhs.append(Fraction(1 if k == j else 0))
        status, x = ratlinalg.solve(rows, rhs)
        if status == ratlinalg.NO_SOLUTION:
            return None
        if status == ratlinalg.MULTIPLE:
            raise MultipleUnitsError("unit system is underdetermined")
        return tuple(x)
    import numpy as np

    a = np.array([[complex(c[k][i][j]) if law.mode.kind == COMPLEX
                   else float(c[k][i][j]) for i in range(n)]
                  for j in range(n) for k in range(n)])
    b = np.array([1.0 if k == j else 0.0 for j in range(n) for k in range(n)])
    sol, _, rnk, _ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.linalg.norm(a @ sol - b))
    # The residual of phi(u, e_j) - e_j scales with both the law and the
    # candidate itself; near-degenerate laws have units with very large
    # coordinates, which must not be rejected.
    scale = max(1.0, law.norm()) * max(1.0, float(np.abs(sol).max()))
    if not law.mode.is_zero(residual, scale=scale):
        return None
    if rnk < n:
        raise MultipleUnitsError("unit system is underdetermined")
    return tuple(sol.tolist())


# ----------------------------------------------------------------------
# Binary quadratics, isotropy, ideals, simplicity


def _quad_real_roots(coeffs, mode: ScalarMode):
    """Real roots of A t^2 + B t + C.

    Returns ALL_DIRECTIONS-style 'everything' as None sentinel is not
    needed here; identically-zero polynomials are the caller's case.
    Exact mode uses discriminant sign tests; irrational roots are
    returned as floats.
    """
    a, b, c = coeffs
    if mode.exact:
        if a == 0:
            if b == 0:
                return []  # nonzero constant (caller excludes zero poly)
            return [-Fraction(c) / Fraction(b)]
        disc = Fraction(b) * b - 4 * Fraction(a) * c
        if disc < 0:
            return []
        if disc == 0:
            return [-Fraction(b) / (2 * Fraction(a))]
        root = _fraction_sqrt(disc)
        if root is not None:
            return [(-b - root) / (2 * Fraction(a)), (-b + root) / (2 * Fraction(a))]
        s = math.sqrt(float(disc))
        return [(-float(b) - s) / (2 * float(a)), (-float(b) + s) / (2 * float(a))]
    a, b, c = float(a), float(b), float(c)
    scale = max(1.0, abs(a), abs(b), abs(c))
    if mode.is_zero(a, scale=scale):
        if mode.is_zero(b, scale=scale):
            return []
        return [-c / b]
    disc = b * b - 4 * a * c
    # compare the discriminant against its own constituents, not the
    # coefficient scale: for quadratics with small coefficients the two
    # roots are distinguishable whenever b^2 and 4ac differ relatively
    disc_scale = max(b * b, abs(4.0 * a * c))
    if abs(disc) <= mode.tolerance * disc_scale:
        return [-b / (2 * a)]
    if disc < 0:
        return []
    s = math.sqrt(disc)
    return [(-b - s) / (2 * a), (-b + s) / (2 * a)]


def _fraction_sqrt(value: Fraction):
    """Exact square root of a nonnegative Fraction, or None."""
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def common_real_projective_roots(q1, q2, mode: ScalarMode = RATIONAL_MODE):
    """Common real projective roots of two binary quadratics.

    Each quadratic is a coefficient triple (A, B, C) for
    A x1^2 + B x1 x2 + C x2^2.  Returns ALL_DIRECTIONS when both vanish
    identically, otherwise a tuple of ProjectiveDirection.
    """
    scale1 = max((abs(v) for v in q1), default=0)
    scale2 = max((abs(v) for v in q2), default=0)
    z1 = all(mode.is_zero(v, scale=max(1.0, float(max(scale1, scale2))))
             for v in q1)
    z2 = all(mode.is_zero(v, scale=max(1.0, float(max(scale1, scale2))))
             for v in q2)
    if z1 and z2:
        return ALL_DIRECTIONS
    if z1 or z2:
        q = q2 if z1 else q1
        roots = []
        sc = max(1.0, float(max(scale1, scale2)))
        if mode.is_zero(q[0], scale=sc):  # [1:0] is a root iff A = 0
            roots.append(ProjectiveDirection(1, 0, _root_mode(mode, [0])))
        for t in _quad_real_roots(q, mode):
            roots.append(_affine_direction(t, mode))
        return tuple(roots)

    out = []
    sc = max(1.0, float(max(scale1, scale2)))
    if mode.is_zero(q1[0], scale=sc) and mode.is_zero(q2[0], scale=sc):
        out.append(ProjectiveDirection(1, 0, _root_mode(mode, [0])))
    r1 = _quad_real_roots(q1, mode)
    r2 = _quad_real_roots(q2, mode)
    for t in r1:
        for u in r2:
            if _roots_match(t, u, mode):
                out.append(_affine_direction(t, mode))
                break
    return tuple(out)


def _root_mode(mode: ScalarMode, roots):
    if mode.exact and any(not isinstance(r, Fraction) for r in roots):
        return REAL_MODE
    return mode


def _affine_direction(t, mode: ScalarMode):
    m = mode if (mode.exact and isinstance(t, Fraction)) else (
        mode if not mode.exact else REAL_MODE)
    return ProjectiveDirection(t, 1, m)


def _roots_match(t, u, mode: ScalarMode) -> bool:
    if mode.exact and isinstance(t, Fraction) and isinstance(u, Fraction):
        return t == u
    tol = mode.tolerance if not mode.exact else 1e-12
    # Root locations are only half-precision stable near double roots;
    # match with the square root of the coefficient tolerance.
    eps = math.sqrt(tol) * max(1.0, abs(float(t)), abs(float(u)))
    return abs(float(t) - float(u)) <= eps


def _quadratics_of_squares(law: BilinearSym):
    """Coefficient triples of phi(x,x) in each output coordinate (dim 2)."""
    (a1, a2), (b1, b2), (c1, c2) = law.to_matrix2()
    return (a1, 2 * c1, b1), (a2, 2 * c2, b2)


def isotropic_directions(law: BilinearSym):
    """All real directions [x1:x2] with phi(x, x) = 0."""
    if law.dim != 2:
        raise DimensionError("isotropy enumeration is dim-2 only")
    q1, q2 = _quadratics_of_squares(law)
    return common_real_projective_roots(q1, q2, law.mode)


def _parallelism_quadratic(law: BilinearSym, j: int):
    """det(phi(v, e_j), v) as a binary quadratic in (v1, v2)."""
    c = law.tensor
    # w = phi(v, e_j); w1 v2 - w2 v1 = 0
    a = -c[1][0][j]
    b = c[0][0][j] - c[1][1][j]
    d = c[0][1][j]
    return (a, b, d)


def find_ideals_1d(law: BilinearSym):
    """Directions spanning 1-dimensional ideals (dim 2)."""
    if law.dim != 2:
        raise DimensionError("ideal enumeration is dim-2 only")
    q1 = _parallelism_quadratic(law, 0)
    q2 = _parallelism_quadratic(law, 1)
    return common_real_projective_roots(q1, q2, law.mode)


def is_simple(law: BilinearSym) -> bool:
    """No isotropic directions and no 1-dimensional ideals (dim 2)."""
    if law.dim != 2:
        raise DimensionError("simplicity decision is dim-2 only")
    iso = isotropic_directions(law)
    if iso is ALL_DIRECTIONS or len(iso) > 0:
        return False
    ideals = find_ideals_1d(law)
    if ideals is ALL_DIRECTIONS or len(ideals) > 0:
        return False
    return True


# ----------------------------------------------------------------------
# Law file format


def law_to_document(law: BilinearSym) -> dict:
    if law.mode.kind == COMPLEX:
        raise ValueError("complex laws have no file encoding")
    doc = {"dim": law.dim, "mode": law.mode.kind}
    if law.mode.exact:
        enc = format_rational
    else:
        enc = float
    if law.dim == 2:
        doc["matrix"] = [[enc(v) for v in row] for row in law.to_matrix2()]
    else:
        doc["tensor"] = [[[enc(v) for v in row] for row in slab]
                         for slab in law.tensor]
    return doc


def law_from_document(doc: dict) -> JordanLaw:
    if not isinstance(doc, dict):
        raise ValueError("law document must be a JSON object")
    try:
        dim = int(doc["dim"])
        kind = doc["mode"]
    except KeyError as exc:
        raise ValueError("law document missing field %s" % exc) from exc
    if kind == RATIONAL:
        mode = RATIONAL_MODE

        def dec(v):
            if not isinstance(v, str):
                raise ValueError("rational entries must be strings, got %r" % (v,))
            return parse_rational(v, strict=True)
    elif kind == REAL:
        mode = REAL_MODE

        def dec(v):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ValueError("real entries must be numbers, got %r" % (v,))
            return float(v)
    else:
        raise ValueError("unknown law mode %r" % (kind,))
    if dim == 2 and "matrix" in doc:
        matrix = doc["matrix"]
        if len(matrix) != 3 or any(len(r) != 2 for r in matrix):
            raise ValueError("matrix must be 3x2")
        return JordanLaw.from_matrix2(
            [[dec(v) for v in row] for row in matrix], mode)
    if "tensor" not in doc:
        raise ValueError("law document needs 'matrix' (dim 2) or 'tensor'")
    tensor = [[[dec(v) for v in row] for row in slab] for slab in doc["tensor"]]
    return JordanLaw(tensor, mode)  # symmetry validated by the constructor


def load_law(path) -> JordanLaw:
    with open(path, "r", encoding="utf-8") as fh:
        return law_from_document(json.load(fh))
