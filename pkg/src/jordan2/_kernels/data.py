"""Flat term arrays for the projection kernels.

Both the compiled and the pure-Python kernel evaluate the same sparse
monomial data, packed here once from the exact polynomial definitions,
so the two implementations cannot drift apart.
"""

from __future__ import annotations

import numpy as np

from ..core import SJ_JACOBIAN_POLYS, SJ_POLYS

N_VARS = 6
N_RESIDUALS = len(SJ_POLYS)
N_JACOBIAN = N_RESIDUALS * N_VARS


def _pack(polys):
    idx, coef, exps = [], [], []
    for p_i, p in enumerate(polys):
        for e, c in sorted(p.terms.items()):
            idx.append(p_i)
            coef.append(float(c))
            exps.append(e)
    return (np.asarray(idx, dtype=np.int32),
            np.asarray(coef, dtype=np.float64),
            np.asarray(exps, dtype=np.int8).reshape(len(idx), N_VARS))


RES_IDX, RES_COEF, RES_EXP = _pack(SJ_POLYS)
JAC_IDX, JAC_COEF, JAC_EXP = _pack(
    [SJ_JACOBIAN_POLYS[p][v] for p in range(N_RESIDUALS) for v in range(N_VARS)])
