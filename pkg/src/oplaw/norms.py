"""Unitarily invariant norms: Schatten p, Ky Fan k, operator and trace."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import InvalidInput, abs_op, apply_scalar_fn, gram, hermitian_eig


@dataclass(frozen=True)
class NormSpec:
    kind: str  # "schatten" | "kyfan" | "operator" | "trace"
    p: float = 0.0
    k: int = 0

    def __post_init__(self):
        if self.kind == "schatten":
            if not (self.p > 0 and math.isfinite(self.p)):
                raise InvalidInput(f"Schatten exponent must be a finite p > 0, got {self.p}")
        elif self.kind == "kyfan":
            if self.k < 1:
                raise InvalidInput(f"Ky Fan index must be >= 1, got {self.k}")
        elif self.kind not in ("operator", "trace"):
            raise InvalidInput(f"unknown norm kind {self.kind!r}")

    @classmethod
    def schatten(cls, p: float) -> "NormSpec":
        return cls("schatten", p=float(p))

    @classmethod
    def kyfan(cls, k: int) -> "NormSpec":
        return cls("kyfan", k=int(k))

    @property
    def quasi_norm(self) -> bool:
        return self.kind == "schatten" and self.p < 1

    def __str__(self) -> str:
        if self.kind == "schatten":
            return f"schatten:{self.p:g}"
        if self.kind == "kyfan":
            return f"kyfan:{self.k}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        kind, _, arg = text.partition(":")
        try:
            if kind == "schatten":
                return cls.schatten(float(arg))
            if kind == "kyfan":
                return cls.kyfan(int(arg))
        except ValueError as exc:
            raise InvalidInput(f"bad norm spec {text!r}") from exc
        if arg:
            raise InvalidInput(f"bad norm spec {text!r}")
        return cls(kind)


def singular_values(a: np.ndarray) -> np.ndarray:
    """Descending singular values, as square roots of the eigenvalues of A*A."""
    lam = hermitian_eig(gram(a)).eigenvalues
    return np.sqrt(np.clip(lam, 0.0, None))


def norm_from_singular_values(s: np.ndarray, spec: NormSpec) -> float:
    if spec.kind == "schatten":
        return float(np.sum(s ** spec.p) ** (1.0 / spec.p))
    if spec.kind == "kyfan":
        if spec.k > s.size:
            raise InvalidInput(f"Ky Fan index {spec.k} exceeds dimension {s.size}")
        return float(np.sum(s[: spec.k]))
    if spec.kind == "operator":
        return float(s[0])
    return float(np.sum(s))


def norm(a: np.ndarray, spec: NormSpec) -> float:
    return norm_from_singular_values(singular_values(a), spec)


def norm_family(dim: int) -> list[NormSpec]:
    """Test family standing in for "every unitarily invariant norm"."""
    fam = [NormSpec.schatten(p) for p in (1.0, 1.5, 2.0, 3.0)]
    fam.append(NormSpec("operator"))
    fam.extend(NormSpec.kyfan(k) for k in range(1, dim + 1))
    return fam


def norms(a: np.ndarray, specs: list[NormSpec]) -> list[float]:
    s = singular_values(a)
    return [norm_from_singular_values(s, spec) for spec in specs]


def trace_identity_check(a: np.ndarray, p: float) -> tuple[float, float, float]:
    """Compare ``|| |A|^p ||_1`` with ``||A||_p^p``.

    Returns ``(lhs, rhs, residual)`` with the residual scaled by
    ``1 + ||A||_p^p``.
    """
    if not p > 0:
        raise InvalidInput(f"p must be > 0, got {p}")
    lhs = norm(apply_scalar_fn(abs_op(a), lambda t: t ** p), NormSpec("trace"))
    rhs = norm(a, NormSpec.schatten(p)) ** p
    return lhs, rhs, abs(lhs - rhs) / (1.0 + rhs)
