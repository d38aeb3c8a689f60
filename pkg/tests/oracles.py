"""Independent reference evaluations used by the test-suite.

Nothing here calls into ``oplaw`` beyond reading instance fields: matrix
sides are built with explicit loops and ``numpy`` products, scalar sides
with plain Python ``complex`` arithmetic.
"""

import cmath
import math

import numpy as np


def adj(x):
    return np.conj(np.asarray(x)).T


def sq(x):
    x = np.asarray(x)
    return adj(x) @ x


def weights_of(r):
    return [float(v) for v in np.asarray(getattr(r, "values", r))]


# -- matrix oracles -----------------------------------------------------------------

def field_law(A, B, w, alpha):
    """Both sides of the continuous-field law by a naive double loop."""
    m = len(A)
    d = A[0].shape[0]
    lhs = np.zeros((d, d), complex)
    cross = np.zeros((d, d), complex)
    for k in range(m):
        for l in range(m):
            akl, alk = alpha[k][l], alpha[l][k]
            ww = w[k] * w[l]
            lhs += ww * (sq(akl * A[k] - alk * A[l]) + sq(akl * B[k] - alk * B[l]))
            cross += ww * sq(akl * A[k] - alk * B[l])
    total = np.zeros((d, d), complex)
    for k in range(m):
        total += w[k] * (A[k] - B[k])
    return lhs, 2 * cross - 2 * sq(total)


def oit_law(A, B, r):
    """Weighted law obtained from the field oracle: counting measure,
    alpha = sqrt(r_i / r_j), then both sides halved."""
    n = len(A)
    alpha = [[math.sqrt(r[i] / r[j]) for j in range(n)] for i in range(n)]
    lhs, rhs = field_law(A, B, [1.0] * n, alpha)
    return lhs / 2, rhs / 2


def zf_law(A, r):
    Z = [np.zeros_like(a) for a in A]
    return oit_law(A, Z, r)


def two_term(A1, A2, t):
    """Direct expansion of both sides into products of A1, A2 and adjoints."""
    p11, p22 = adj(A1) @ A1, adj(A2) @ A2
    p12, p21 = adj(A1) @ A2, adj(A2) @ A1
    lhs = (p11 + p12 + p21 + p22) + (t * t * p11 - t * p12 - t * p21 + p22) / t
    rhs = (1 + t) * p11 + (1 + 1 / t) * p22
    return lhs, rhs


def polarization(A, B):
    pab, pba = adj(A) @ B, adj(B) @ A
    paa, pbb = adj(A) @ A, adj(B) @ B
    lhs = (paa + pab + pba + pbb) - (paa - pab - pba + pbb)
    return lhs, 2 * (pab + adj(pab))


def hs_inner(X, Y):
    """<X, Y> = tr(Y* X)."""
    return complex(np.trace(adj(Y) @ X))


def hs_law(A, B):
    n = len(A)
    s = lambda X, Y: hs_inner(X, X).real + hs_inner(Y, Y).real - 2 * hs_inner(X, Y).real
    lhs = sum(s(A[i], A[j]) + s(B[i], B[j]) for i in range(n) for j in range(n))
    rhs = 2 * sum(s(A[i], B[j]) for i in range(n) for j in range(n))
    return lhs, rhs


def inner(x, y):
    return complex(np.vdot(y, x))


def dist2(x, y):
    return (inner(x, x) + inner(y, y) - 2 * inner(x, y).real).real


def vec_law(x, y):
    n = len(x)
    lhs = sum(dist2(x[i], x[j]) + dist2(y[i], y[j]) for i in range(n) for j in range(n))
    s = sum(x[i] - y[i] for i in range(n))
    rhs = 2 * sum(dist2(x[i], y[j]) for i in range(n) for j in range(n)) - 2 * inner(s, s).real
    return lhs, rhs


def vec_weighted_law(x, y, r):
    n = len(x)
    c = lambda i, j: math.sqrt(r[i] / r[j])
    half = lambda v: sum(
        dist2(c(i, j) * v[i], c(j, i) * v[j]) for i in range(n) for j in range(i + 1, n)
    )
    lhs = half(x) + half(y)
    s = sum(x[i] - y[i] for i in range(n))
    rhs = sum(dist2(c(i, j) * x[i], c(j, i) * y[j]) for i in range(n) for j in range(n))
    return lhs, rhs - inner(s, s).real


# -- scalar (1x1) oracles ----------------------------------------------------------

def z(m):
    return complex(np.asarray(m).reshape(-1)[0])


def a2(v):
    return v.real * v.real + v.imag * v.imag


def scalar_sides(suite, inst):
    """Both sides of a suite's comparison on a 1x1 instance, as
    ``{check-name: (lhs, rhs)}`` with real or complex scalars."""
    if suite == "lemma-a":
        a, b = z(inst["A"]), z(inst["B"])
        return {"identity": (a2(a + b) + a2(a - b), 2 * a2(a) + 2 * a2(b))}
    if suite == "lemma-b":
        a, b = z(inst["A"]), z(inst["B"])
        return {"identity": (a2(a + b) - a2(a - b), 4 * (a.conjugate() * b).real)}
    if suite in ("thm22", "bohr-field"):
        A = [z(m) for m in inst["A"]]
        B = [z(m) for m in inst["B"]]
        w = weights_of(inst["mu"].weights)
        al = np.asarray(inst["alpha"].values)
        m = len(A)
        self_ab = cross = 0.0
        for k in range(m):
            for l in range(m):
                akl, alk = complex(al[k, l]), complex(al[l, k])
                self_ab += w[k] * w[l] * (a2(akl * A[k] - alk * A[l]) + a2(akl * B[k] - alk * B[l]))
                cross += w[k] * w[l] * a2(akl * A[k] - alk * B[l])
        mean = a2(sum(w[k] * (A[k] - B[k]) for k in range(m)))
        if suite == "thm22":
            return {"identity": (self_ab, 2 * cross - 2 * mean)}
        return {"gap": (2 * (cross - mean), self_ab)}
    if suite in ("cor-oit", "cor-zf", "bohr"):
        A = [z(m) for m in inst["As"]]
        B = [z(m) for m in inst["Bs"]] if "Bs" in inst else [0j] * len(A)
        r = weights_of(inst["r"])
        n = len(A)
        c = lambda i, j: math.sqrt(r[i] / r[j])
        half = lambda v: sum(a2(c(i, j) * v[i] - c(j, i) * v[j])
                             for i in range(n) for j in range(i + 1, n))
        if suite == "cor-oit":
            rhs = sum(a2(c(i, j) * A[i] - c(j, i) * B[j]) for i in range(n) for j in range(n))
            return {"identity": (half(A) + half(B), rhs - a2(sum(A) - sum(B)))}
        zf_rhs = sum(r[i] * a2(A[i]) for i in range(n)) - a2(sum(A))
        if suite == "cor-zf":
            return {"identity": (half(A), zf_rhs)}
        return {"gap": (zf_rhs, half(A))}
    if suite == "remark-n2":
        a, b, t = z(inst["A1"]), z(inst["A2"]), inst["t"]
        return {"identity": (a2(a + b) + a2(t * a - b) / t, (1 + t) * a2(a) + (1 + 1 / t) * a2(b))}
    if suite == "eq4":
        A = [z(m) for m in inst["As"]]
        B = [z(m) for m in inst["Bs"]]
        n = len(A)
        lhs = sum(a2(A[i] - A[j]) + a2(B[i] - B[j]) for i in range(n) for j in range(n))
        return {"identity": (lhs, 2 * sum(a2(A[i] - B[j]) for i in range(n) for j in range(n)))}
    if suite in ("cor26", "eq00"):
        x = [z(v) for v in inst["xs"]]
        y = [z(v) for v in inst["ys"]]
        n = len(x)
        if suite == "eq00":
            lhs = sum(a2(x[i] - x[j]) + a2(y[i] - y[j]) for i in range(n) for j in range(n))
            rhs = 2 * sum(a2(x[i] - y[j]) for i in range(n) for j in range(n))
            return {"identity": (lhs, rhs - 2 * a2(sum(x) - sum(y)))}
        r = weights_of(inst["r"])
        c = lambda i, j: math.sqrt(r[i] / r[j])
        half = lambda v: sum(a2(c(i, j) * v[i] - c(j, i) * v[j])
                             for i in range(n) for j in range(i + 1, n))
        rhs = sum(a2(c(i, j) * x[i] - c(j, i) * y[j]) for i in range(n) for j in range(n))
        return {"identity": (half(x) + half(y), rhs - a2(sum(x) - sum(y)))}
    return _scalar_margins(suite, inst)


def _scalar_margins(suite, inst):
    """All norms agree with |.| on 1x1 matrices; one entry per norm label."""
    if suite == "cor33":
        A = [z(m) for m in inst["As"]]
        r = weights_of(inst["r"])
        p = inst["p"]
        n = len(A)
        c = lambda i, j: math.sqrt(r[i] / r[j])
        lhs = sum(r[i] ** (p - 1) * abs(A[i]) ** p for i in range(n))
        rhs = sum(abs(c(i, j) * A[i] - c(j, i) * A[j]) ** p
                  for i in range(n) for j in range(i + 1, n)) + abs(sum(A)) ** p
        return {f"schatten:{p:g}": (lhs, rhs)}
    g = inst["g"]
    gs = lambda t: float(g([t])[0])
    if suite == "ineq-41":
        a = [z(m).real for m in inst["As"]]
        w = [float(v) for v in inst["alphas"]]
        lhs = abs(sum(wj * gs(aj) for wj, aj in zip(w, a)))
        rhs = abs(gs(sum(wj * aj for wj, aj in zip(w, a))))
    elif suite == "ineq-42":
        a = [z(m).real for m in inst["As"]]
        lhs, rhs = abs(gs(sum(a))), abs(sum(gs(aj) for aj in a))
    else:  # thm31-*
        A = [z(m) for m in inst["As"]]
        r = weights_of(inst["r"])
        n = len(A)
        c = lambda i, j: math.sqrt(r[i] / r[j])
        lhs = abs(sum(gs(a2(r[i] * A[i])) / r[i] for i in range(n)))
        rhs = abs(sum(gs(a2(c(i, j) * A[i] - c(j, i) * A[j]))
                      for i in range(n) for j in range(i + 1, n)) + gs(a2(sum(A))))
    labels = ["schatten:1", "schatten:1.5", "schatten:2", "schatten:3", "operator", "kyfan:1"]
    return {lab: (lhs, rhs) for lab in labels}


def quadratic_eigs(h):
    """Eigenvalues of a 2x2 Hermitian matrix by the quadratic formula, descending."""
    a, d = h[0][0].real, h[1][1].real
    b = h[0][1]
    tr, det = a + d, a * d - a2(complex(b))
    disc = math.sqrt(max((a - d) ** 2 + 4 * a2(complex(b)), 0.0))
    return (tr + disc) / 2, (tr - disc) / 2


def splitmix64(key, i):
    """Word ``i`` of a counter-mode SplitMix64 stream, in pure Python ints."""
    mask = (1 << 64) - 1
    zz = (key + (i + 1) * 0x9E3779B97F4A7C15) & mask
    zz = ((zz ^ (zz >> 30)) * 0xBF58476D1CE4E5B9) & mask
    zz = ((zz ^ (zz >> 27)) * 0x94D049BB133111EB) & mask
    return zz ^ (zz >> 31)
