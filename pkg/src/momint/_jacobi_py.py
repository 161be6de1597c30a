"""Cyclic Jacobi rotation kernel, pure-Python fallback.

Same contract as the compiled extension ``momint._jacobi``: rotate the
symmetric matrix ``a`` in place until the off-diagonal Frobenius norm is at
most ``tol_off``, accumulating rotations into the columns of ``v``. Returns
the number of full sweeps performed.
"""

from __future__ import annotations

import math

import numpy as np


def jacobi_cyclic(a: np.ndarray, v: np.ndarray, tol_off: float, max_sweeps: int) -> int:
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off2 = 0.0
        for p in range(n - 1):
            row = a[p, p + 1 :]
            off2 += float(row @ row)
        if math.sqrt(2.0 * off2) <= tol_off:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                new_p = c * col_p - s * col_q
                new_q = s * col_p + c * col_q
                a[:, p] = new_p
                a[p, :] = new_p
                a[:, q] = new_q
                a[q, :] = new_q
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return max_sweeps
