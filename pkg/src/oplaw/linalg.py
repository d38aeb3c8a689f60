"""Dense complex matrix arithmetic and Hermitian spectral operations.

Matrices are plain ``numpy`` ``complex128`` arrays of shape ``(n, n)``;
vectors are ``complex128`` arrays of shape ``(n,)``. Every public function
returns a fresh read-only array so results can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _jacobi

JACOBI_RTOL = 1e-14
JACOBI_MAX_SWEEPS = 40
HERMITIAN_RTOL = 1e-12
CLAMP_RTOL = 1e-10


class InvalidInput(ValueError):
    """Raised when an argument violates an operation's preconditions."""


class ConvergenceError(ArithmeticError):
    """Raised when the Jacobi eigensolver exceeds its sweep cap."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_cmatrix(a) -> np.ndarray:
    """Validate and convert ``a`` into a read-only square complex matrix."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise InvalidInput(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInput("matrix has non-finite entries")
    return _frozen(m)


def as_cvector(x) -> np.ndarray:
    v = np.array(x, dtype=np.complex128)
    if v.ndim != 1 or v.shape[0] < 1:
        raise InvalidInput(f"expected a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidInput("vector has non-finite entries")
    return _frozen(v)


def _same_dim(*mats: np.ndarray) -> int:
    dims = {m.shape for m in mats}
    if len(dims) != 1:
        raise InvalidInput(f"dimension mismatch: {sorted(dims)}")
    return mats[0].shape[0]


# -- arithmetic ---------------------------------------------------------------

def identity(n: int) -> np.ndarray:
    return _frozen(np.eye(n, dtype=np.complex128))


def zero(n: int) -> np.ndarray:
    return _frozen(np.zeros((n, n), dtype=np.complex128))


def adjoint(a: np.ndarray) -> np.ndarray:
    return _frozen(np.conj(a).T.copy())


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_dim(a, b)
    return _frozen(a + b)


def sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_dim(a, b)
    return _frozen(a - b)


def scale(c: complex, a: np.ndarray) -> np.ndarray:
    return _frozen(complex(c) * a)


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_dim(a, b)
    return _frozen(a @ b)


def trace(a: np.ndarray) -> complex:
    return complex(np.trace(a))


def gram(a: np.ndarray) -> np.ndarray:
    """``|A|^2 = A* A``, computed without any square root."""
    return _frozen(np.conj(a).T @ a)


def real_part(x: np.ndarray) -> np.ndarray:
    """Hermitian part ``(X + X*) / 2``."""
    return _frozen((x + np.conj(x).T) / 2)


def rank_one(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """The operator ``z -> <z, y> x``, i.e. entries ``x_i conj(y_j)``."""
    if x.shape != y.shape:
        raise InvalidInput(f"dimension mismatch: {x.shape} vs {y.shape}")
    return _frozen(np.outer(x, np.conj(y)))


def fro(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def hermitian_defect(h: np.ndarray) -> float:
    return fro(h - np.conj(h).T)


def check_hermitian(h: np.ndarray, rtol: float = HERMITIAN_RTOL) -> None:
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {h.shape}")
    d = hermitian_defect(h)
    if d > rtol * max(1.0, fro(h)):
        raise InvalidInput(f"matrix is not Hermitian (defect {d:.3e})")


# -- spectral -----------------------------------------------------------------

@dataclass(frozen=True)
class HermitianEigen:
    eigenvalues: np.ndarray  # real, descending
    vectors: np.ndarray  # columns are eigenvectors
    sweeps: int

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.eigenvalues) @ np.conj(v).T


def hermitian_eig(h: np.ndarray) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Raises :class:`InvalidInput` for non-Hermitian input and
    :class:`ConvergenceError` if the off-diagonal mass is still above
    ``1e-14 * max(1, ||H||_F)`` after 40 sweeps.
    """
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] < 1:
        raise InvalidInput(f"expected a non-empty square matrix, got shape {h.shape}")
    status, lam, v, sweeps, res = _jacobi.eigh(
        h, HERMITIAN_RTOL, JACOBI_RTOL, JACOBI_MAX_SWEEPS
    )
    if status == 1:
        raise InvalidInput(f"matrix is not Hermitian (defect {res:.3e})")
    if status == 2:
        raise ConvergenceError(
            f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps "
            f"(off-diagonal residual {res:.3e})",
            residual=float(res),
        )
    return HermitianEigen(_frozen(lam), _frozen(v), int(sweeps))


def _clamped_spectrum(h: np.ndarray) -> HermitianEigen:
    eig = hermitian_eig(h)
    lam = eig.eigenvalues
    bound = CLAMP_RTOL * max(1.0, abs(lam[0]), abs(lam[-1]))
    if lam[-1] < -bound:
        raise InvalidInput(
            f"matrix is not positive semidefinite (min eigenvalue {lam[-1]:.3e})"
        )
    return HermitianEigen(np.maximum(lam, 0.0), eig.vectors, eig.sweeps)


def apply_scalar_fn(h: np.ndarray, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Spectral mapping ``V diag(f(lambda)) V*`` for a PSD matrix ``h``.

    Eigenvalues in ``[-1e-10 max(1, ||H||_2), 0)`` are clamped to zero
    before ``f`` is applied.
    """
    eig = _clamped_spectrum(h)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.asarray(f(eig.eigenvalues), dtype=float)
    if vals.shape != eig.eigenvalues.shape or not np.isfinite(vals).all():
        raise InvalidInput("scalar function is undefined on the spectrum")
    v = eig.vectors
    out = (v * vals) @ v.conj().T
    return _frozen((out + out.conj().T) / 2)


def abs_op(a: np.ndarray) -> np.ndarray:
    """``|A| = (A* A)^{1/2}``."""
    return apply_scalar_fn(gram(a), np.sqrt)


def psd_sqrt(h: np.ndarray) -> np.ndarray:
    return apply_scalar_fn(h, np.sqrt)


def is_psd(h: np.ndarray, tol: float = 1e-10) -> tuple[bool, float]:
    """Loewner test ``H >= 0``; returns ``(flag, lambda_min)``."""
    lam = hermitian_eig(h).eigenvalues
    lam_min = float(lam[-1])
    spectral = max(abs(lam[0]), abs(lam_min))
    return bool(lam_min >= -tol * max(1.0, spectral)), lam_min


# -- I/O ----------------------------------------------------------------------

def matrix_to_literal(a: np.ndarray) -> dict:
    """``{"dim": n, "entries": [[re, im], ...]}`` in row-major order."""
    a = np.asarray(a, dtype=np.complex128)
    return {
        "dim": int(a.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_literal(obj: dict) -> np.ndarray:
    try:
        n = int(obj["dim"])
        entries = obj["entries"]
        if n < 1 or len(entries) != n * n:
            raise InvalidInput(f"matrix literal needs {n * n} entries, got {len(entries)}")
        flat = [complex(float(re), float(im)) for re, im in entries]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed matrix literal: {exc}") from exc
    return as_cmatrix(np.array(flat).reshape(n, n))


def vector_to_literal(x: np.ndarray) -> dict:
    return {
        "dim": int(x.shape[0]),
        "vector": [[float(z.real), float(z.imag)] for z in x],
    }


def vector_from_literal(obj: dict) -> np.ndarray:
    try:
        n = int(obj["dim"])
        entries = obj["vector"]
        if len(entries) != n:
            raise InvalidInput(f"vector literal needs {n} entries, got {len(entries)}")
        return as_cvector([complex(float(re), float(im)) for re, im in entries])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed vector literal: {exc}") from exc
