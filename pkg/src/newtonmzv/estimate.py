"""Truncated-sum results with an attached error estimate."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SumEstimate:
    """A truncated series value and a non-negative absolute error estimate."""

    value: complex
    err: float

    def __post_init__(self):
        value = complex(self.value)
        err = float(self.err)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ValueError(f"non-finite value {value}")
        if not (err >= 0.0 and math.isfinite(err)):
            raise ValueError(f"error estimate must be finite and >= 0, got {err}")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "err", err)

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag

    def __add__(self, other: "SumEstimate") -> "SumEstimate":
        return SumEstimate(self.value + other.value, self.err + other.err)

    def __sub__(self, other: "SumEstimate") -> "SumEstimate":
        return SumEstimate(self.value - other.value, self.err + other.err)

    def scale(self, c) -> "SumEstimate":
        c = complex(c)
        return SumEstimate(c * self.value, abs(c) * self.err)

    def to_dict(self) -> dict:
        return {"re": self.value.real, "im": self.value.imag, "err": self.err}


ZERO = SumEstimate(0.0, 0.0)


def combine(terms) -> SumEstimate:
    """Sum ``(coefficient, SumEstimate)`` pairs; errors add in absolute value."""
    vals, errs = [], []
    for c, est in terms:
        c = complex(c)
        vals.append(c * est.value)
        errs.append(abs(c) * est.err)
    re = math.fsum(v.real for v in vals)
    im = math.fsum(v.imag for v in vals)
    return SumEstimate(complex(re, im), math.fsum(errs))
