"""Exact operator and vector identities of parallelogram type.

Every evaluator returns an :class:`IdentityResult` holding both sides and a
scale-free residual ``|L - R| / (1 + |L| + |R|)`` (Frobenius norm for
matrices, absolute value for reals).

Continuous fields are realized on a finite weighted node set, so the
double integrals become exact double sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .linalg import InvalidInput, as_cmatrix, as_cvector, gram, is_psd, rank_one

DEFAULT_TOL = 1e-10
ALPHA_TOL = 1e-12
CONSTRAINT_TOL = 1e-12

Side = Union[np.ndarray, float]


def residual(lhs: Side, rhs: Side) -> float:
    if isinstance(lhs, np.ndarray):
        diff = np.linalg.norm(lhs - rhs)
        return float(diff / (1.0 + np.linalg.norm(lhs) + np.linalg.norm(rhs)))
    return abs(lhs - rhs) / (1.0 + abs(lhs) + abs(rhs))


@dataclass(frozen=True)
class IdentityResult:
    lhs: Side
    rhs: Side
    residual: float
    tol: float = DEFAULT_TOL
    # auxiliary residuals (second routes, side conditions), judged at tol
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol and all(v <= self.tol for v in self.extras.values())


def _result(lhs: Side, rhs: Side, tol: float, **extras) -> IdentityResult:
    return IdentityResult(lhs, rhs, residual(lhs, rhs), tol, extras)


# -- domain types ---------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureMeasure:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise InvalidInput("measure needs at least one node")
        if not np.all(w > 0) or not np.all(np.isfinite(w)):
            raise InvalidInput("measure weights must be positive and finite")
        object.__setattr__(self, "weights", w)

    @property
    def size(self) -> int:
        return self.weights.size

    @classmethod
    def counting(cls, m: int) -> "QuadratureMeasure":
        return cls(np.ones(m))


@dataclass(frozen=True)
class AlphaField:
    """Complex table with ``conj(alpha[k, l]) * alpha[l, k] == 1``."""

    values: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.values, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidInput(f"alpha table must be square, got shape {a.shape}")
        if not np.all(np.isfinite(a)) or np.any(a == 0):
            raise InvalidInput("alpha values must be finite and nonzero")
        defect = np.max(np.abs(np.conj(a) * a.T - 1.0))
        if defect > ALPHA_TOL:
            raise InvalidInput(f"alpha violates conj(a(t,s)) a(s,t) = 1 (defect {defect:.3e})")
        object.__setattr__(self, "values", a)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_weights(cls, r: "WeightVector") -> "AlphaField":
        """``alpha(i, j) = sqrt(r_i / r_j)``."""
        root = np.sqrt(r.values)
        return cls(np.outer(root, 1.0 / root).astype(np.complex128))


@dataclass(frozen=True)
class WeightVector:
    values: np.ndarray
    sum_reciprocal_one: bool = False

    def __post_init__(self):
        r = np.asarray(self.values, dtype=float)
        if r.ndim != 1 or r.size < 1:
            raise InvalidInput("weight vector must be non-empty")
        if not np.all(r > 0) or not np.all(np.isfinite(r)):
            raise InvalidInput("weights must be positive and finite")
        if self.sum_reciprocal_one:
            defect = abs(float(np.sum(1.0 / r)) - 1.0)
            if defect > CONSTRAINT_TOL:
                raise InvalidInput(f"sum of reciprocal weights differs from 1 by {defect:.3e}")
        object.__setattr__(self, "values", r)

    @property
    def size(self) -> int:
        return self.values.size

    def ratios(self) -> np.ndarray:
        """``c[i, j] = sqrt(r_i / r_j)``."""
        root = np.sqrt(self.values)
        return np.outer(root, 1.0 / root)


def _stack(mats: Sequence[np.ndarray], what: str = "matrices") -> np.ndarray:
    if len(mats) < 1:
        raise InvalidInput(f"need at least one of {what}")
    arrs = [as_cmatrix(m) for m in mats]
    if len({a.shape for a in arrs}) != 1:
        raise InvalidInput(f"{what} must share one dimension")
    return np.stack(arrs)


def _stack_vectors(vecs: Sequence[np.ndarray]) -> np.ndarray:
    if len(vecs) < 1:
        raise InvalidInput("need at least one vector")
    arrs = [as_cvector(v) for v in vecs]
    if len({a.shape for a in arrs}) != 1:
        raise InvalidInput("vectors must share one dimension")
    return np.stack(arrs)


def _pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise InvalidInput(f"shape mismatch: {a.shape} vs {b.shape}")


def _grams(x: np.ndarray) -> np.ndarray:
    """Batched ``X* X`` over leading axes."""
    return np.conj(np.swapaxes(x, -1, -2)) @ x


def _upper(n: int):
    return np.triu_indices(n, k=1)


# -- lemma ----------------------------------------------------------------------

def lemma_parallelogram(a, b, tol: float = DEFAULT_TOL) -> IdentityResult:
    """``|A+B|^2 + |A-B|^2 = 2|A|^2 + 2|B|^2``."""
    a, b = as_cmatrix(a), as_cmatrix(b)
    _pair(a, b)
    lhs = gram(a + b) + gram(a - b)
    rhs = 2 * gram(a) + 2 * gram(b)
    return _result(lhs, rhs, tol)


def lemma_polarization(a, b, tol: float = DEFAULT_TOL) -> IdentityResult:
    """``|A+B|^2 - |A-B|^2 = 4 Re(A* B)``."""
    a, b = as_cmatrix(a), as_cmatrix(b)
    _pair(a, b)
    lhs = gram(a + b) - gram(a - b)
    x = np.conj(a).T @ b
    rhs = 2 * (x + np.conj(x).T)
    return _result(lhs, rhs, tol)


# -- continuous-field law ---------------------------------------------------------

def _check_field(afield, bfield, mu: QuadratureMeasure, alpha: AlphaField):
    a = _stack(afield, "A field")
    b = _stack(bfield, "B field")
    if a.shape != b.shape:
        raise InvalidInput("A and B fields must have the same nodes and dimension")
    if not (a.shape[0] == mu.size == alpha.size):
        raise InvalidInput(
            f"node counts disagree: fields {a.shape[0]}, measure {mu.size}, alpha {alpha.size}"
        )
    return a, b


def _field_terms(a, b, w, al):
    """Double sums of the continuous-field law on a weighted node set."""
    ww = np.outer(w, w)
    fwd = al[:, :, None, None]
    bwd = al.T[:, :, None, None]
    xa = fwd * a[:, None] - bwd * a[None, :]
    xb = fwd * b[:, None] - bwd * b[None, :]
    xab = fwd * a[:, None] - bwd * b[None, :]
    self_a = np.einsum("kl,klij->ij", ww, _grams(xa))
    self_b = np.einsum("kl,klij->ij", ww, _grams(xb))
    cross = np.einsum("kl,klij->ij", ww, _grams(xab))
    mean = gram(np.einsum("k,kij->ij", w, a - b))
    return self_a, self_b, cross, mean


def field_parallelogram(afield, bfield, mu: QuadratureMeasure, alpha: AlphaField,
                        tol: float = DEFAULT_TOL) -> IdentityResult:
    """Continuous-field parallelogram law on a finite weighted node set.

    ``sum_kl w_k w_l (|a_kl A_k - a_lk A_l|^2 + |a_kl B_k - a_lk B_l|^2)``
    equals ``2 sum_kl w_k w_l |a_kl A_k - a_lk B_l|^2 - 2 |sum_k w_k (A_k - B_k)|^2``.
    """
    a, b = _check_field(afield, bfield, mu, alpha)
    self_a, self_b, cross, mean = _field_terms(a, b, mu.weights, alpha.values)
    return _result(self_a + self_b, 2 * cross - 2 * mean, tol)


def field_bohr_gap(afield, bfield, mu: QuadratureMeasure, alpha: AlphaField,
                   tol: float = DEFAULT_TOL):
    """Gap of the field Bohr inequality and its Loewner test.

    Returns ``(gap, psd, lambda_min)`` where
    ``gap = sum_kl w_k w_l |a_kl A_k - a_lk B_l|^2 - |sum_k w_k (A_k - B_k)|^2``.
    """
    a, b = _check_field(afield, bfield, mu, alpha)
    _, _, cross, mean = _field_terms(a, b, mu.weights, alpha.values)
    gap = cross - mean
    psd, lam_min = is_psd(gap, tol)
    return gap, psd, lam_min


# -- weighted discrete laws -------------------------------------------------------

def _weighted_self_sum(x: np.ndarray, c: np.ndarray) -> np.ndarray:
    """``sum_{i<j} |c_ij X_i - c_ji X_j|^2``."""
    n = x.shape[0]
    if n < 2:
        return np.zeros(x.shape[1:], dtype=np.complex128)
    i, j = _upper(n)
    d = c[i, j][:, None, None] * x[i] - c[j, i][:, None, None] * x[j]
    return _grams(d).sum(axis=0)


def generalized_parallelogram(As, Bs, r: WeightVector, tol: float = DEFAULT_TOL) -> IdentityResult:
    """Weighted parallelogram law with half sums on the left, full sum on the right."""
    a = _stack(As, "A matrices")
    b = _stack(Bs, "B matrices")
    if a.shape != b.shape or a.shape[0] != r.size:
        raise InvalidInput("A list, B list and weights must have equal length and dimension")
    c = r.ratios()
    lhs = _weighted_self_sum(a, c) + _weighted_self_sum(b, c)
    cross = c[:, :, None, None] * a[:, None] - c.T[:, :, None, None] * b[None, :]
    rhs = _grams(cross).sum(axis=(0, 1)) - gram((a - b).sum(axis=0))
    return _result(lhs, rhs, tol)


def _constrained(r: WeightVector) -> None:
    if not r.sum_reciprocal_one:
        defect = abs(float(np.sum(1.0 / r.values)) - 1.0)
        if defect > CONSTRAINT_TOL:
            raise InvalidInput(f"weights must satisfy sum 1/r_i = 1 (defect {defect:.3e})")


def _zf_sides(a: np.ndarray, r: WeightVector):
    lhs = _weighted_self_sum(a, r.ratios())
    rhs = np.einsum("i,ijk->jk", r.values, _grams(a)) - gram(a.sum(axis=0))
    return lhs, rhs


def zhang_fu_identity(As, r: WeightVector, tol: float = DEFAULT_TOL) -> IdentityResult:
    """``sum_{i<j} |c_ij A_i - c_ji A_j|^2 = sum r_i |A_i|^2 - |sum A_i|^2``
    under ``sum 1/r_i = 1``. The extra ``lhs_psd`` records how far the
    left side is below zero in the Loewner order (0 when PSD)."""
    _constrained(r)
    a = _stack(As, "A matrices")
    if a.shape[0] != r.size:
        raise InvalidInput("matrix list and weights must have equal length")
    lhs, rhs = _zf_sides(a, r)
    _, lam_min = is_psd(lhs, tol)
    scale = max(1.0, float(np.linalg.norm(lhs, 2)))
    return _result(lhs, rhs, tol, lhs_psd=max(0.0, -lam_min / scale))


def two_term_identity(a1, a2, t: float, tol: float = DEFAULT_TOL) -> IdentityResult:
    """``|A1+A2|^2 + |t A1 - A2|^2 / t = (1+t)|A1|^2 + (1+1/t)|A2|^2``."""
    if not t > 0:
        raise InvalidInput(f"t must be positive, got {t}")
    a1, a2 = as_cmatrix(a1), as_cmatrix(a2)
    _pair(a1, a2)
    lhs = gram(a1 + a2) + gram(t * a1 - a2) / t
    rhs = (1 + t) * gram(a1) + (1 + 1 / t) * gram(a2)
    return _result(lhs, rhs, tol)


def bohr_gap(As, r: WeightVector, tol: float = DEFAULT_TOL):
    """``sum r_i |A_i|^2 - |sum A_i|^2`` with its Loewner test.

    Returns ``(gap, psd, lambda_min)``.
    """
    _constrained(r)
    a = _stack(As, "A matrices")
    if a.shape[0] != r.size:
        raise InvalidInput("matrix list and weights must have equal length")
    gap = np.einsum("i,ijk->jk", r.values, _grams(a)) - gram(a.sum(axis=0))
    psd, lam_min = is_psd(gap, tol)
    return gap, psd, lam_min


# -- Hilbert-Schmidt and vector forms ---------------------------------------------

def _pairwise_sq(x: np.ndarray, y: np.ndarray) -> float:
    """``sum_ij ||x_i - y_j||^2`` for stacked arrays (any trailing shape)."""
    d = x[:, None] - y[None, :]
    return float(np.sum(np.abs(d) ** 2))


def hilbert_schmidt_identity(As, Bs, tol: float = DEFAULT_TOL) -> IdentityResult:
    """Full-sum law in the Hilbert-Schmidt norm; needs ``sum (A_i - B_i) = 0``."""
    a = _stack(As, "A matrices")
    b = _stack(Bs, "B matrices")
    if a.shape != b.shape:
        raise InvalidInput("A and B lists must have equal length and dimension")
    total = np.linalg.norm((a - b).sum(axis=0))
    size = max(1.0, float(np.max(np.linalg.norm(a, axis=(1, 2)))),
               float(np.max(np.linalg.norm(b, axis=(1, 2)))))
    if total > CONSTRAINT_TOL * size:
        raise InvalidInput(f"sum of A_i - B_i must vanish (norm {total:.3e})")
    lhs = _pairwise_sq(a, a) + _pairwise_sq(b, b)
    rhs = 2 * _pairwise_sq(a, b)
    return _result(lhs, rhs, tol)


def _check_vectors(xs, ys):
    x = _stack_vectors(xs)
    y = _stack_vectors(ys)
    if x.shape != y.shape:
        raise InvalidInput("x and y lists must have equal length and dimension")
    return x, y


def _vector_half_sum(x: np.ndarray, c: np.ndarray) -> float:
    n = x.shape[0]
    if n < 2:
        return 0.0
    i, j = _upper(n)
    d = c[i, j][:, None] * x[i] - c[j, i][:, None] * x[j]
    return float(np.sum(np.abs(d) ** 2))


def vector_weighted_identity(xs, ys, r: WeightVector, e=None,
                             tol: float = DEFAULT_TOL) -> IdentityResult:
    """Weighted vector law, also checked through rank-one lifting.

    The extra ``rank_one_route`` compares the scalar sides with the
    operator law applied to ``x_i (x) e`` for a unit vector ``e``.
    """
    x, y = _check_vectors(xs, ys)
    if x.shape[0] != r.size:
        raise InvalidInput("vector lists and weights must have equal length")
    c = r.ratios()
    lhs = _vector_half_sum(x, c) + _vector_half_sum(y, c)
    cross = c[:, :, None] * x[:, None] - c.T[:, :, None] * y[None, :]
    rhs = float(np.sum(np.abs(cross) ** 2)) - float(np.sum(np.abs((x - y).sum(axis=0)) ** 2))

    if e is None:
        e = np.zeros(x.shape[1], dtype=np.complex128)
        e[0] = 1.0
    e = as_cvector(e)
    e = e / np.linalg.norm(e)
    lifted = generalized_parallelogram(
        [rank_one(v, e) for v in x], [rank_one(v, e) for v in y], r, tol
    )
    proj = rank_one(e, e)
    route = max(residual(lifted.lhs, lhs * proj), residual(lifted.rhs, rhs * proj))
    return _result(lhs, rhs, tol, rank_one_route=route)


def vector_identity(xs, ys, tol: float = DEFAULT_TOL) -> IdentityResult:
    """Full-sum vector law in an inner product space."""
    x, y = _check_vectors(xs, ys)
    lhs = _pairwise_sq(x, x) + _pairwise_sq(y, y)
    rhs = 2 * _pairwise_sq(x, y) - 2 * float(np.sum(np.abs((x - y).sum(axis=0)) ** 2))
    return _result(lhs, rhs, tol)
