"""Vector-valued polynomials in (x_1..x_n, y_1..y_n).

Used to expand bilinear-map compositions symbolically.  A polynomial is
a dict mapping a monomial key ((x exponents), (y exponents)) to its
coefficient; a polynomial map is a tuple with one polynomial per output
coordinate.  Everything here works for exact Fractions and for floats
alike, since only ring operations are used.

Monomial ordering (used whenever coefficients are flattened to a
vector): graded lexicographic, total degree first, then lexicographic
with x_1 > x_2 > ... > x_n > y_1 > ... > y_n.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def poly_zero():
    return {}


def poly_const(c):
    return {} if c == 0 else {((), ()): c}


def var_x(i: int, n: int):
    xe = tuple(1 if j == i else 0 for j in range(n))
    return {(xe, (0,) * n): 1}


def var_y(i: int, n: int):
    ye = tuple(1 if j == i else 0 for j in range(n))
    return {((0,) * n, ye): 1}


def poly_add(p, q):
    out = dict(p)
    for mono, c in q.items():
        nc = out.get(mono, 0) + c
        if nc == 0:
            out.pop(mono, None)
        else:
            out[mono] = nc
    return out


def poly_sub(p, q):
    return poly_add(p, poly_scale(q, -1))


def poly_scale(p, c):
    if c == 0:
        return {}
    return {mono: c * v for mono, v in p.items()}


def poly_mul(p, q):
    out = {}
    for (xa, ya), ca in p.items():
        for (xb, yb), cb in q.items():
            mono = (tuple(a + b for a, b in zip(xa, xb)),
                    tuple(a + b for a, b in zip(ya, yb)))
            nc = out.get(mono, 0) + ca * cb
            if nc == 0:
                out.pop(mono, None)
            else:
                out[mono] = nc
    return out


def poly_eval(p, xs, ys):
    total = 0
    for (xe, ye), c in p.items():
        v = c
        for base, e in zip(xs, xe):
            for _ in range(e):
                v = v * base
        for base, e in zip(ys, ye):
            for _ in range(e):
                v = v * base
        total = total + v
    return total


def vec_x(n: int):
    return tuple(var_x(i, n) for i in range(n))


def vec_y(n: int):
    return tuple(var_y(i, n) for i in range(n))


def vec_add(p_vec, q_vec):
    return tuple(poly_add(p, q) for p, q in zip(p_vec, q_vec))


def vec_sub(p_vec, q_vec):
    return tuple(poly_sub(p, q) for p, q in zip(p_vec, q_vec))


def vec_scale(p_vec, c):
    return tuple(poly_scale(p, c) for p in p_vec)


def vec_is_zero(p_vec) -> bool:
    return all(not p for p in p_vec)


def apply_bilinear(tensor, p_vec, q_vec):
    """Apply a structure-constant tensor c[k][i][j] to polynomial vectors."""
    n = len(p_vec)
    out = []
    for k in range(n):
        acc = {}
        for i in range(n):
            if not p_vec[i]:
                continue
            for j in range(n):
                c = tensor[k][i][j]
                if c == 0 or not q_vec[j]:
                    continue
                acc = poly_add(acc, poly_scale(poly_mul(p_vec[i], q_vec[j]), c))
        out.append(acc)
    return tuple(out)


def composition_poly(ti, tj, tk, n):
    """Expand phi_i(phi_j(X,X), phi_k(X,Y)) - phi_i(X, phi_j(phi_k(X,X), Y))."""
    X = vec_x(n)
    Y = vec_y(n)
    xx_j = apply_bilinear(tj, X, X)
    xy_k = apply_bilinear(tk, X, Y)
    first = apply_bilinear(ti, xx_j, xy_k)
    xx_k = apply_bilinear(tk, X, X)
    inner = apply_bilinear(tj, xx_k, Y)
    second = apply_bilinear(ti, X, inner)
    return vec_sub(first, second)


def _mono_sort_key(mono):
    xe, ye = mono
    deg = sum(xe) + sum(ye)
    return (deg, tuple(-e for e in xe), tuple(-e for e in ye))


def ordered_monomials(n: int, max_xdeg: int = 3, max_ydeg: int = 1):
    """All monomials of x-degree <= max_xdeg, y-degree <= max_ydeg."""
    xms = [xe for xe in itertools.product(range(max_xdeg + 1), repeat=n)
           if sum(xe) <= max_xdeg]
    yms = [ye for ye in itertools.product(range(max_ydeg + 1), repeat=n)
           if sum(ye) <= max_ydeg]
    monos = [(xe, ye) for xe in xms for ye in yms]
    monos.sort(key=_mono_sort_key)
    return monos


def vec_coefficients(p_vec, monomials=None, n=None, zero=Fraction(0)):
    """Flatten a polynomial map to one coefficient list per output coord."""
    if monomials is None:
        if n is None:
            n = len(p_vec)
        monomials = ordered_monomials(n)
    flat = []
    for p in p_vec:
        flat.extend(p.get(mono, zero) for mono in monomials)
    return flat
