"""Norm inequalities driven by convexity, reported as signed margins.

A margin is ``lhs - rhs``. Its required sign follows the convexity of the
scalar function: nonnegative for convex, nonpositive for concave, zero when
the function is both (linear). A margin passes when it has the required sign
up to ``tol * (1 + |lhs| + |rhs|)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .functions import ScalarFn
from .identities import DEFAULT_TOL, WeightVector, _constrained, _stack
from .linalg import InvalidInput, apply_scalar_fn, gram
from .norms import NormSpec, norm_from_singular_values, singular_values

NONNEGATIVE = "nonnegative"
NONPOSITIVE = "nonpositive"
ZERO = "zero"

Specs = Union[NormSpec, Sequence[NormSpec]]


@dataclass(frozen=True)
class Margin:
    lhs: float
    rhs: float
    required_sign: str
    tol: float = DEFAULT_TOL
    spec: str = ""

    @property
    def value(self) -> float:
        return self.lhs - self.rhs

    @property
    def scale(self) -> float:
        return 1.0 + abs(self.lhs) + abs(self.rhs)

    @property
    def violation(self) -> float:
        """Normalized amount by which the sign requirement fails (<= 0 is fine)."""
        v = self.value / self.scale
        if self.required_sign == NONNEGATIVE:
            return -v
        if self.required_sign == NONPOSITIVE:
            return v
        return abs(v)

    @property
    def passed(self) -> bool:
        return self.violation <= self.tol


def required_sign(g: ScalarFn) -> str:
    if g.is_convex and g.is_concave:
        return ZERO
    return NONNEGATIVE if g.is_convex else NONPOSITIVE


def _margins(left: np.ndarray, right: np.ndarray, specs: Specs, sign: str, tol: float):
    single = isinstance(specs, NormSpec)
    family = [specs] if single else list(specs)
    sl, sr = singular_values(left), singular_values(right)
    out = [
        Margin(norm_from_singular_values(sl, s), norm_from_singular_values(sr, s), sign, tol, str(s))
        for s in family
    ]
    return out[0] if single else out


def _needs_zero_at_origin(g: ScalarFn) -> None:
    if abs(g.value_at_zero) > 0:
        raise InvalidInput(f"{g.label} must vanish at 0")


def convex_combination_ineq(As, alphas, g: ScalarFn, specs: Specs, tol: float = DEFAULT_TOL):
    """``|||sum a_j g(A_j)|||`` against ``|||g(sum a_j A_j)|||`` for PSD ``A_j``.

    Accepts one :class:`NormSpec` (returns one :class:`Margin`) or a list of
    them (returns a list).
    """
    a = _stack(As, "PSD matrices")
    w = np.asarray(alphas, dtype=float)
    if w.shape != (a.shape[0],) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise InvalidInput("weights must be nonnegative, one per matrix, and sum to 1")
    left = sum(wj * apply_scalar_fn(aj, g) for wj, aj in zip(w, a))
    right = apply_scalar_fn(np.einsum("j,jkl->kl", w, a), g)
    return _margins(left, right, specs, required_sign(g), tol)


def superadditivity_ineq(As, g: ScalarFn, specs: Specs, tol: float = DEFAULT_TOL):
    """``|||g(sum A_j)|||`` against ``|||sum g(A_j)|||`` for PSD ``A_j``, ``g(0) = 0``."""
    _needs_zero_at_origin(g)
    a = _stack(As, "PSD matrices")
    left = apply_scalar_fn(a.sum(axis=0), g)
    right = sum(apply_scalar_fn(aj, g) for aj in a)
    return _margins(left, right, specs, required_sign(g), tol)


def theorem_main_sides(As, r: WeightVector, g: ScalarFn):
    """The two matrices compared by the main theorem, with ``f(t) = g(t^2)``.

    Left: ``sum (1/r_i) f(|r_i A_i|)``. Right:
    ``sum_{i<j} f(|c_ij A_i - c_ji A_j|) + f(|sum A_i|)`` where
    ``c_ij = sqrt(r_i / r_j)``. ``f(|X|)`` is evaluated as ``g(X* X)``.
    """
    _constrained(r)
    _needs_zero_at_origin(g)
    a = _stack(As, "A matrices")
    if a.shape[0] != r.size:
        raise InvalidInput("matrix list and weights must have equal length")
    rv = r.values
    left = sum(apply_scalar_fn(gram(ri * ai), g) / ri for ri, ai in zip(rv, a))
    c = r.ratios()
    right = apply_scalar_fn(gram(a.sum(axis=0)), g)
    n = a.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            right = right + apply_scalar_fn(gram(c[i, j] * a[i] - c[j, i] * a[j]), g)
    return left, right


def theorem_main_margin(As, r: WeightVector, g: ScalarFn, specs: Specs,
                        tol: float = DEFAULT_TOL):
    """Margin of the weighted convexity inequality; reversed for concave ``g``."""
    left, right = theorem_main_sides(As, r, g)
    return _margins(left, right, specs, required_sign(g), tol)


def schatten_weighted_ineq(As, r: WeightVector, p: float, tol: float = DEFAULT_TOL) -> Margin:
    """``sum r_i^(p-1) ||A_i||_p^p`` against
    ``sum_{i<j} ||c_ij A_i - c_ji A_j||_p^p + ||sum A_i||_p^p``.

    Required sign: nonnegative for ``p > 2``, nonpositive for ``p < 2``,
    zero at ``p = 2``. For ``p < 1`` the quasi-norm formula is used as is.
    """
    if not p > 0:
        raise InvalidInput(f"p must be > 0, got {p}")
    _constrained(r)
    a = _stack(As, "A matrices")
    if a.shape[0] != r.size:
        raise InvalidInput("matrix list and weights must have equal length")

    def pp(x):
        return float(np.sum(singular_values(x) ** p))

    rv = r.values
    lhs = sum(ri ** (p - 1) * pp(ai) for ri, ai in zip(rv, a))
    c = r.ratios()
    rhs = pp(a.sum(axis=0))
    n = a.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            rhs += pp(c[i, j] * a[i] - c[j, i] * a[j])
    sign = ZERO if p == 2 else (NONNEGATIVE if p > 2 else NONPOSITIVE)
    return Margin(lhs, rhs, sign, tol, f"schatten:{p:g}")
