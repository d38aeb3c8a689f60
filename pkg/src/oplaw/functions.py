"""Scalar functions on [0, inf) with a declared convexity.

The declaration is checked once, at construction, by a midpoint probe on a
50-point grid over [0, 100]. The probe catches mislabeled functions; it is
not a proof of convexity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .linalg import InvalidInput

CONVEX = "convex"
CONCAVE = "concave"
BOTH = "both"

_PROBE_GRID = np.linspace(0.0, 100.0, 50)


def _midpoint_gaps(fn) -> np.ndarray:
    s, t = np.meshgrid(_PROBE_GRID, _PROBE_GRID)
    mid = fn((s + t) / 2)
    avg = (fn(s) + fn(t)) / 2
    # positive where midpoint convexity is violated
    return (mid - avg) / (1.0 + np.abs(mid) + np.abs(avg))


@dataclass(frozen=True)
class ScalarFn:
    """``power(p)``, ``hinge(c)`` or ``linear``.

    >>> ScalarFn.parse("power:1.5").convexity
    'convex'
    """

    kind: str
    param: float = 0.0
    convexity: str = field(init=False)

    def __post_init__(self):
        if self.kind == "power":
            if not self.param > 0:
                raise InvalidInput(f"power exponent must be > 0, got {self.param}")
            conv = BOTH if self.param == 1 else (CONVEX if self.param > 1 else CONCAVE)
        elif self.kind == "hinge":
            if not self.param >= 0:
                raise InvalidInput(f"hinge offset must be >= 0, got {self.param}")
            conv = CONVEX
        elif self.kind == "linear":
            conv = BOTH
        else:
            raise InvalidInput(f"unknown scalar function kind {self.kind!r}")
        object.__setattr__(self, "convexity", conv)
        self.validate()

    @classmethod
    def power(cls, p: float) -> "ScalarFn":
        return cls("power", float(p))

    @classmethod
    def hinge(cls, c: float) -> "ScalarFn":
        return cls("hinge", float(c))

    @classmethod
    def linear(cls) -> "ScalarFn":
        return cls("linear")

    @classmethod
    def parse(cls, text: str) -> "ScalarFn":
        return _parse(cls, text)

    @property
    def label(self) -> str:
        if self.kind == "linear":
            return "linear"
        return f"{self.kind}:{self.param:g}"

    @property
    def is_convex(self) -> bool:
        return self.convexity in (CONVEX, BOTH)

    @property
    def is_concave(self) -> bool:
        return self.convexity in (CONCAVE, BOTH)

    @property
    def value_at_zero(self) -> float:
        return float(self(np.zeros(1))[0])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "power":
            return np.power(t, self.param)
        if self.kind == "hinge":
            return np.maximum(t - self.param, 0.0)
        return t.copy()

    def squared(self):
        """``t -> g(t^2)``, the f of the main theorem."""
        return lambda t: self(np.asarray(t, dtype=float) ** 2)

    def validate(self) -> None:
        gaps = _midpoint_gaps(self)
        slack = 1e-12
        if self.is_convex and gaps.max() > slack:
            raise InvalidInput(f"{self.label} declared convex but fails midpoint probe")
        if self.is_concave and (-gaps).max() > slack:
            raise InvalidInput(f"{self.label} declared concave but fails midpoint probe")


@lru_cache(maxsize=None)
def _parse(cls, text: str) -> ScalarFn:
    kind, _, arg = text.partition(":")
    try:
        return cls(kind, float(arg)) if arg else cls(kind)
    except ValueError as exc:
        raise InvalidInput(f"bad scalar function {text!r}") from exc
