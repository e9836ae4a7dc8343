"""Pure-Python (numpy) projection kernel.

Same algorithm and term data as the compiled kernel: damped
Gauss-Newton on the twelve residual polynomials, normal equations with
a tiny Tikhonov floor so rank-deficient points (the variety is not a
graph) still yield a minimum-norm-ish step.
"""

from __future__ import annotations

import numpy as np

from . import data

_REG_FLOOR = 1e-14


class PythonKernel:
    name = "python"

    def residuals(self, x):
        x = np.asarray(x, dtype=np.float64)
        mono = np.prod(x[None, :] ** data.RES_EXP, axis=1)
        return np.bincount(data.RES_IDX, weights=data.RES_COEF * mono,
                           minlength=data.N_RESIDUALS)

    def jacobian(self, x):
        x = np.asarray(x, dtype=np.float64)
        mono = np.prod(x[None, :] ** data.JAC_EXP, axis=1)
        flat = np.bincount(data.JAC_IDX, weights=data.JAC_COEF * mono,
                           minlength=data.N_JACOBIAN)
        return flat.reshape(data.N_RESIDUALS, data.N_VARS)

    def project(self, start, tol, max_iter=50, max_halvings=20):
        """Returns (coords list, residual_norm, iterations, converged)."""
        x = np.array(start, dtype=np.float64)
        if x.shape != (6,):
            raise ValueError("start must have 6 coordinates")
        r = self.residuals(x)
        rn = float(np.linalg.norm(r))
        iters = 0
        for _ in range(max_iter):
            if rn <= tol * max(1.0, float(np.linalg.norm(x))):
                return x.tolist(), rn, iters, True
            jac = self.jacobian(x)
            normal = jac.T @ jac
            grad = jac.T @ r
            mu = _REG_FLOOR * max(float(normal.diagonal().max()), 1.0)
            step = np.linalg.solve(normal + mu * np.eye(6), -grad)
            alpha = 1.0
            accepted = False
            for _ in range(max_halvings + 1):
                xn = x + alpha * step
                rn_new = float(np.linalg.norm(self.residuals(xn)))
                if rn_new < rn:
                    x, rn = xn, rn_new
                    accepted = True
                    break
                alpha *= 0.5
            iters += 1
            if not accepted:
                break
            r = self.residuals(x)
            rn = float(np.linalg.norm(r))
        converged = rn <= tol * max(1.0, float(np.linalg.norm(x)))
        return x.tolist(), rn, iters, converged
