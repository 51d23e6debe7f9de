"""Cauchy densities and closed-form divergences against two-component mixtures."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParamError

__all__ = [
    "CauchyParam",
    "pdf",
    "entropy",
    "kl_cauchy_to_mixture",
    "js_skewed_cauchy",
    "js_half_cauchy",
]

# round-off tolerance below zero accepted under square roots
SQRT_CLAMP = 1e-14


@dataclass(frozen=True)
class CauchyParam:
    """Location ``l`` and scale ``s > 0`` of a Cauchy density."""

    l: float
    s: float

    def __post_init__(self):
        if not (math.isfinite(self.l) and math.isfinite(self.s)):
            raise ParamError(f"non-finite Cauchy parameters ({self.l}, {self.s})")
        if not self.s > 0:
            raise ParamError(f"Cauchy scale must be positive, got {self.s}")


def _param(p) -> CauchyParam:
    return p if isinstance(p, CauchyParam) else CauchyParam(*p)


def pdf(p: CauchyParam, x):
    """s / (pi (s^2 + (x - l)^2)); vectorised over ``x``."""
    p = _param(p)
    x = np.asarray(x, dtype=float)
    out = p.s / (math.pi * (p.s * p.s + (x - p.l) ** 2))
    return float(out) if out.ndim == 0 else out


def entropy(p: CauchyParam) -> float:
    """Differential entropy log(4 pi s), in nats."""
    return math.log(4.0 * math.pi * _param(p).s)


def _safe_sqrt(v):
    v = np.asarray(v, dtype=float)
    if np.any(v < -SQRT_CLAMP):
        raise DomainError(f"negative square-root argument {v.min()!r}")
    return np.sqrt(np.maximum(v, 0.0))


def _kl_closed(l0, s0, l1, s1, theta):
    """Closed-form KL(p0 : (1-theta) p0 + theta p1); vectorised over theta, no validation."""
    d2 = (l0 - l1) ** 2
    num = d2 + (s0 + s1) ** 2
    root = _safe_sqrt(s0 * s0 * s1 * s1 + s0 * s1 * ((s0 - s1) ** 2 + d2) * theta * (1.0 - theta))
    den = (1.0 - theta) * (s0 * s0 + s1 * s1 + d2) + 2.0 * theta * s0 * s1 + 2.0 * root
    return np.log(num / den)


def _check_unit(theta, closed: bool):
    t = np.asarray(theta, dtype=float)
    ok = (t >= 0) & (t <= 1) if closed else (t > 0) & (t < 1)
    if not np.all(ok):
        interval = "[0, 1]" if closed else "(0, 1)"
        raise DomainError(f"theta={theta!r} outside {interval}")
    return t


def _scalar(v):
    v = np.asarray(v)
    return float(v) if v.ndim == 0 else v


def kl_cauchy_to_mixture(p0: CauchyParam, p1: CauchyParam, theta):
    """KL divergence from ``p0`` to the mixture ``(1 - theta) p0 + theta p1``.

    Exact for ``theta`` in the closed interval [0, 1]; zero at ``theta = 0``.
    """
    p0, p1 = _param(p0), _param(p1)
    t = _check_unit(theta, closed=True)
    return _scalar(_kl_closed(p0.l, p0.s, p1.l, p1.s, t))


def js_skewed_cauchy(p0: CauchyParam, p1: CauchyParam, theta):
    """Skewed Jensen-Shannon divergence of weight ``theta`` in (0, 1).

    KL(p1 : m_theta) is obtained by swapping the components, since the
    mixture with weights (1 - theta, theta) on (p0, p1) is the mixture with
    weights (theta, 1 - theta) on (p1, p0).
    """
    p0, p1 = _param(p0), _param(p1)
    t = _check_unit(theta, closed=False)
    out = (1.0 - t) * _kl_closed(p0.l, p0.s, p1.l, p1.s, t) + t * _kl_closed(p1.l, p1.s, p0.l, p0.s, 1.0 - t)
    return _scalar(out)


def js_half_cauchy(p0: CauchyParam, p1: CauchyParam) -> float:
    """Jensen-Shannon divergence between two Cauchy densities (equal weights)."""
    p0, p1 = _param(p0), _param(p1)
    r = math.sqrt((p0.l - p1.l) ** 2 + (p0.s + p1.s) ** 2)
    return math.log(2.0 * r / (r + 2.0 * math.sqrt(p0.s * p1.s)))
