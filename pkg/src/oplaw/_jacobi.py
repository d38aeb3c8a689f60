"""Cyclic complex Jacobi eigensolver kernel for Hermitian matrices.

Compiled with numba when it is importable; otherwise the same code runs as
plain Python (slow, but correct).
"""

import math

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


@njit(cache=True)
def _offdiag_norm(h):
    n = h.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                z = h[i, j]
                s += z.real * z.real + z.imag * z.imag
    return math.sqrt(s)


@njit(cache=True)
def jacobi_sweeps(h, v, rtol, max_sweeps):
    """Diagonalize ``h`` in place, accumulating rotations into ``v``.

    Returns ``(sweeps, offdiag)``. ``sweeps == -1`` means the cap was hit.
    """
    n = h.shape[0]
    fro = 0.0
    for i in range(n):
        for j in range(n):
            z = h[i, j]
            fro += z.real * z.real + z.imag * z.imag
    fro = math.sqrt(fro)
    target = rtol * max(1.0, fro)

    off = _offdiag_norm(h)
    if off <= target:
        return 0, off
    for sweep in range(1, max_sweeps + 1):
        for p in range(n - 1):
            for q in range(p + 1, n):
                hpq = h[p, q]
                mod = abs(hpq)
                if mod < 1e-300:
                    continue
                # phase e^{i phi} = hpq / |hpq|; rotate the real problem
                ph = hpq / mod
                hpp = h[p, p].real
                hqq = h[q, q].real
                theta = (hqq - hpp) / (2.0 * mod)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # G = diag(1, conj(ph)) @ [[c, s], [-s, c]]
                gpp = complex(c, 0.0)
                gpq = complex(s, 0.0)
                gqp = -s * ph.conjugate()
                gqq = c * ph.conjugate()
                # H <- H G (columns p, q)
                for k in range(n):
                    a = h[k, p]
                    b = h[k, q]
                    h[k, p] = a * gpp + b * gqp
                    h[k, q] = a * gpq + b * gqq
                # H <- G^* H (rows p, q)
                for k in range(n):
                    a = h[p, k]
                    b = h[q, k]
                    h[p, k] = gpp.conjugate() * a + gqp.conjugate() * b
                    h[q, k] = gpq.conjugate() * a + gqq.conjugate() * b
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = h[p, p].real
                h[q, q] = h[q, q].real
                for k in range(n):
                    a = v[k, p]
                    b = v[k, q]
                    v[k, p] = a * gpp + b * gqp
                    v[k, q] = a * gpq + b * gqq
        off = _offdiag_norm(h)
        if off <= target:
            return sweep, off
    return -1, off


def warmup():
    """Trigger compilation on a tiny input."""
    h = np.array([[2.0, 1.0j], [-1.0j, 2.0]], dtype=np.complex128)
    v = np.eye(2, dtype=np.complex128)
    jacobi_sweeps(h, v, 1e-14, 40)


@njit(cache=True)
def eigh(h, herm_rtol, rtol, max_sweeps):
    """Full solve on a copy of ``h``.

    Returns ``(status, eigenvalues, vectors, sweeps, residual)`` with
    eigenvalues sorted descending. ``status`` is 0 on success, 1 when ``h``
    is not Hermitian (``residual`` is then the defect), 2 when the sweep cap
    was hit (``residual`` is the off-diagonal norm).
    """
    n = h.shape[0]
    defect = 0.0
    fro = 0.0
    for i in range(n):
        for j in range(n):
            d = h[i, j] - h[j, i].conjugate()
            defect += d.real * d.real + d.imag * d.imag
            z = h[i, j]
            fro += z.real * z.real + z.imag * z.imag
    defect = math.sqrt(defect)
    lam = np.zeros(n)
    v = np.eye(n, dtype=np.complex128)
    if defect > herm_rtol * max(1.0, math.sqrt(fro)):
        return 1, lam, v, 0, defect
    work = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            work[i, j] = 0.5 * (h[i, j] + h[j, i].conjugate())
    sweeps, off = jacobi_sweeps(work, v, rtol, max_sweeps)
    if sweeps < 0:
        return 2, lam, v, max_sweeps, off
    for i in range(n):
        lam[i] = work[i, i].real
    order = np.argsort(-lam, kind="mergesort")
    out = np.empty((n, n), dtype=np.complex128)
    for k in range(n):
        for i in range(n):
            out[i, k] = v[i, order[k]]
    return 0, lam[order], out, sweeps, off
