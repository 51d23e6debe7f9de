"""Fisher-Rao geometry of categorical distributions.

Distributions are full probability vectors of length d.  The square-root
map p -> 2 sqrt(p) sends the open simplex isometrically onto the positive
orthant of the sphere of radius 2, so Rao distances are great-circle
distances there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bregman import Generator
from .errors import DimensionError, DomainError

__all__ = [
    "SimplexPoint",
    "PositiveMeasurePoint",
    "categorical_fim",
    "sphere_embedding",
    "bhattacharyya_coeff",
    "rao_distance",
    "hellinger_distance",
    "extended_rao_distance",
    "categorical_mixture_generator",
]


@dataclass(frozen=True, eq=False)
class PositiveMeasurePoint:
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        if w.size == 0 or not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise DomainError("positive measure entries must be finite and > 0")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True, eq=False)
class SimplexPoint:
    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float).reshape(-1)
        if p.size < 2 or not np.all(np.isfinite(p)) or np.any(p <= 0):
            raise DomainError("simplex entries must be finite and > 0 (d >= 2)")
        if abs(p.sum() - 1.0) > 1e-12:
            raise DomainError(f"simplex entries must sum to 1 (sum={p.sum()!r})")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)


def _probs(p) -> np.ndarray:
    return p.probs if isinstance(p, SimplexPoint) else SimplexPoint(p).probs


def _weights(p) -> np.ndarray:
    if isinstance(p, SimplexPoint):
        return p.probs
    if isinstance(p, PositiveMeasurePoint):
        return p.weights
    return PositiveMeasurePoint(p).weights


def _same_dim(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.size} vs {b.size}")


def categorical_fim(p) -> np.ndarray:
    return np.diag(1.0 / _probs(p))


def sphere_embedding(p) -> np.ndarray:
    return 2.0 * np.sqrt(_probs(p))


def bhattacharyya_coeff(p, q) -> float:
    a, b = _probs(p), _probs(q)
    _same_dim(a, b)
    return float(np.sum(np.sqrt(a * b)))


def rao_distance(p, q) -> float:
    """2 arccos of the Bhattacharyya coefficient (clamped against round-off)."""
    bc = bhattacharyya_coeff(p, q)
    return 2.0 * math.acos(min(1.0, max(-1.0, bc)))


def hellinger_distance(p, q) -> float:
    a, b = _weights(p), _weights(q)
    _same_dim(a, b)
    diff = np.sqrt(a) - np.sqrt(b)
    return float(math.sqrt(float(diff @ diff)))


def extended_rao_distance(p, q) -> float:
    """Rao distance of the positive orthant R_{++}^d, twice the Hellinger distance."""
    return 2.0 * hellinger_distance(p, q)


def categorical_mixture_generator(d: int) -> Generator:
    """Negentropy sum_i theta_i log theta_i in the d - 1 free coordinates.

    The first probability is implicit: theta_0 = 1 - sum(theta).  Its
    Bregman divergence is the KL divergence between categorical
    distributions, and the inverse gradient is the softmax with a pinned
    zeroth logit.
    """
    if d < 2:
        raise DimensionError("categorical distributions need d >= 2")
    dim = d - 1

    def value(t):
        t0 = 1.0 - t.sum()
        return float(np.sum(t * np.log(t)) + t0 * math.log(t0))

    def gradient(t):
        return np.log(t) - math.log(1.0 - t.sum())

    def hessian(t):
        return np.diag(1.0 / t) + 1.0 / (1.0 - t.sum())

    def inverse_gradient(e):
        e = np.asarray(e, dtype=float)
        m = max(0.0, float(e.max()))
        w = np.exp(e - m)
        return w / (math.exp(-m) + w.sum())

    return Generator(
        dim=dim,
        lower=(0.0,) * dim,
        upper=(1.0,) * dim,
        value=value,
        gradient=gradient,
        hessian=hessian,
        inverse_gradient=inverse_gradient,
        constraint=lambda t: t.sum() < 1.0,
        name=f"categorical-negentropy[{d}]",
    )
