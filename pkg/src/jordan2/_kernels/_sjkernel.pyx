# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled projection kernel.

Damped Gauss-Newton on the twelve residual polynomials; identical
algorithm and term data as the pure-Python fallback.
"""

from libc.math cimport fabs, sqrt


cdef double _eval_polys(const int[::1] idx, const double[::1] coef,
                        const signed char[:, ::1] exps,
                        const double* x, double* out, int npolys) nogil:
    cdef Py_ssize_t t, v, e
    cdef double val
    for t in range(npolys):
        out[t] = 0.0
    for t in range(idx.shape[0]):
        val = coef[t]
        for v in range(6):
            for e in range(exps[t, v]):
                val *= x[v]
        out[idx[t]] += val
    return 0.0


cdef double _norm(const double* v, int n) nogil:
    cdef double s = 0.0
    cdef int i
    for i in range(n):
        s += v[i] * v[i]
    return sqrt(s)


cdef int _solve6(double a[6][6], double* b, double* out) nogil:
    # Gaussian elimination with partial pivoting on the 6x6 normal matrix.
    cdef int i, j, k, piv
    cdef double best, f, tmp
    for k in range(6):
        piv = k
        best = fabs(a[k][k])
        for i in range(k + 1, 6):
            if fabs(a[i][k]) > best:
                best = fabs(a[i][k])
                piv = i
        if best == 0.0:
            return -1
        if piv != k:
            for j in range(6):
                tmp = a[k][j]; a[k][j] = a[piv][j]; a[piv][j] = tmp
            tmp = b[k]; b[k] = b[piv]; b[piv] = tmp
        for i in range(k + 1, 6):
            f = a[i][k] / a[k][k]
            if f != 0.0:
                for j in range(k, 6):
                    a[i][j] -= f * a[k][j]
                b[i] -= f * b[k]
    for i in range(5, -1, -1):
        tmp = b[i]
        for j in range(i + 1, 6):
            tmp -= a[i][j] * out[j]
        out[i] = tmp / a[i][i]
    return 0


def project(start,
            const int[::1] ridx, const double[::1] rcoef,
            const signed char[:, ::1] rexp,
            const int[::1] jidx, const double[::1] jcoef,
            const signed char[:, ::1] jexp,
            double tol, int max_iter, int max_halvings):
    """Returns (coords list, residual_norm, iterations, converged)."""
    cdef double x[6]
    cdef double xn[6]
    cdef double r[12]
    cdef double rtmp[12]
    cdef double jac[72]
    cdef double normal[6][6]
    cdef double grad[6]
    cdef double step[6]
    cdef double rn, rn_new, alpha, mu, diagmax, xnorm
    cdef int it, i, j, k, h, accepted, iters

    if len(start) != 6:
        raise ValueError("start must have 6 coordinates")
    for i in range(6):
        x[i] = start[i]

    _eval_polys(ridx, rcoef, rexp, x, r, 12)
    rn = _norm(r, 12)
    iters = 0
    for it in range(max_iter):
        xnorm = _norm(x, 6)
        if rn <= tol * (1.0 if xnorm < 1.0 else xnorm):
            return [x[i] for i in range(6)], rn, iters, True
        _eval_polys(jidx, jcoef, jexp, x, jac, 72)
        diagmax = 0.0
        for i in range(6):
            grad[i] = 0.0
            for j in range(6):
                normal[i][j] = 0.0
                for k in range(12):
                    normal[i][j] += jac[k * 6 + i] * jac[k * 6 + j]
            for k in range(12):
                grad[i] += jac[k * 6 + i] * r[k]
            if normal[i][i] > diagmax:
                diagmax = normal[i][i]
        mu = 1e-14 * (diagmax if diagmax > 1.0 else 1.0)
        for i in range(6):
            normal[i][i] += mu
            grad[i] = -grad[i]
        if _solve6(normal, grad, step) != 0:
            break
        alpha = 1.0
        accepted = 0
        for h in range(max_halvings + 1):
            for i in range(6):
                xn[i] = x[i] + alpha * step[i]
            _eval_polys(ridx, rcoef, rexp, xn, rtmp, 12)
            rn_new = _norm(rtmp, 12)
            if rn_new < rn:
                for i in range(6):
                    x[i] = xn[i]
                rn = rn_new
                accepted = 1
                break
            alpha *= 0.5
        iters += 1
        if not accepted:
            break
        _eval_polys(ridx, rcoef, rexp, x, r, 12)
        rn = _norm(r, 12)
    xnorm = _norm(x, 6)
    converged = rn <= tol * (1.0 if xnorm < 1.0 else xnorm)
    return [x[i] for i in range(6)], rn, iters, bool(converged)
