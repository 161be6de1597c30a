# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cyclic Jacobi rotation kernel, compiled.

Contract shared with momint._jacobi_py.jacobi_cyclic: rotate the symmetric
matrix ``a`` in place until the off-diagonal Frobenius norm is at most
``tol_off``, accumulating the rotations into the columns of ``v``. Returns
the number of full sweeps performed. The caller owns validation, sorting,
and convergence checking.
"""

from libc.math cimport fabs, sqrt


def jacobi_cyclic(double[:, ::1] a, double[:, ::1] v, double tol_off, int max_sweeps):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, i, sweep
    cdef double app, aqq, apq, tau, t, c, s, aip, aiq, vip, viq, off

    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        off = sqrt(2.0 * off)
        if off <= tol_off:
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
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = c * aip - s * aiq
                        a[p, i] = a[i, p]
                        a[i, q] = s * aip + c * aiq
                        a[q, i] = a[i, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * viq
                    v[i, q] = s * vip + c * viq
    return max_sweeps
