"""Bregman manifolds built from Legendre-type generators.

A :class:`Generator` bundles a strictly convex smooth function with its
gradient and Hessian on an open box of R^D.  Everything else in this module
is a pure function of a generator and points of its domain: Bregman and
Fenchel-Young divergences, dual coordinates and their inversion, Jensen
divergences and diversities, and the separable Riemannian Bregman distance.

Points may be given as Python floats (for D = 1) or as array-likes of
length D.  Operations returning points mirror the input: a scalar in, a
scalar out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, OutOfRangeError, WeightError

__all__ = [
    "Generator",
    "DualPair",
    "quadratic_generator",
    "bregman_divergence",
    "dual_coord",
    "primal_coord",
    "dual_pair",
    "legendre_dual_value",
    "fenchel_young",
    "jensen_divergence",
    "jensen_diversity",
    "separable_riemannian_distance",
    "eguchi_metric_fd",
    "fd_gradient",
    "fd_hessian",
    "fd_derivative",
]

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 100
FD_BASE_STEP = 1e-5


@dataclass(frozen=True)
class Generator:
    """A Legendre-type convex function on an open box.

    ``value``, ``gradient`` and ``hessian`` receive a float array of shape
    ``(dim,)`` already known to lie in the domain.  ``inverse_gradient`` is
    only set when a closed form exists.  ``gradient_image`` optionally pins
    the open interval ``(lo, hi)`` reached by the gradient of a 1-D
    generator, which lets :func:`primal_coord` reject unattainable duals
    up front.  ``constraint`` is an extra open-set predicate (e.g. the
    simplex condition ``sum(theta) < 1``) applied after the box test.
    """

    dim: int
    lower: tuple
    upper: tuple
    value: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    hessian: Callable[[np.ndarray], np.ndarray]
    inverse_gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    gradient_image: Optional[tuple] = None
    constraint: Optional[Callable[[np.ndarray], bool]] = None
    name: str = "generator"

    def contains(self, theta) -> bool:
        x = np.asarray(theta, dtype=float).reshape(-1)
        if x.shape != (self.dim,) or not np.all(np.isfinite(x)):
            return False
        if not (np.all(x > np.asarray(self.lower)) and np.all(x < np.asarray(self.upper))):
            return False
        return self.constraint is None or bool(self.constraint(x))

    def check(self, theta) -> np.ndarray:
        """Return ``theta`` as a ``(dim,)`` array, or raise DomainError."""
        x = np.asarray(theta, dtype=float).reshape(-1)
        if not self.contains(x):
            raise DomainError(f"{self.name}: point {x.tolist()} outside the open domain")
        return x

    def midpoint(self) -> np.ndarray:
        out = np.empty(self.dim)
        for i, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if math.isfinite(lo) and math.isfinite(hi):
                out[i] = 0.5 * (lo + hi)
            elif math.isfinite(lo):
                out[i] = lo + 1.0
            elif math.isfinite(hi):
                out[i] = hi - 1.0
            else:
                out[i] = 0.0
        return out


@dataclass(frozen=True)
class DualPair:
    """A primal point together with its dual coordinate ``eta = grad F(theta)``."""

    theta: np.ndarray
    eta: np.ndarray


def _like(x, template):
    """Return ``x`` as a float if ``template`` was a scalar, else as an array."""
    if np.ndim(template) == 0:
        return float(np.asarray(x).reshape(-1)[0])
    return np.asarray(x, dtype=float)


def quadratic_generator(dim: int = 1) -> Generator:
    """F(theta) = |theta|^2 / 2 on R^dim; its Bregman divergence is half the squared distance."""
    inf = (math.inf,) * dim
    return Generator(
        dim=dim,
        lower=tuple(-v for v in inf),
        upper=inf,
        value=lambda t: 0.5 * float(t @ t),
        gradient=lambda t: t.copy(),
        hessian=lambda t: np.eye(dim),
        inverse_gradient=lambda e: np.asarray(e, dtype=float).copy(),
        name=f"quadratic[{dim}]",
    )


def bregman_divergence(gen: Generator, theta1, theta2) -> float:
    """B_F(theta1 : theta2) = F(theta1) - F(theta2) - <theta1 - theta2, grad F(theta2)>."""
    t1 = gen.check(theta1)
    t2 = gen.check(theta2)
    return float(gen.value(t1) - gen.value(t2) - (t1 - t2) @ gen.gradient(t2))


def dual_coord(gen: Generator, theta):
    return _like(gen.gradient(gen.check(theta)), theta)


def dual_pair(gen: Generator, theta) -> DualPair:
    t = gen.check(theta)
    return DualPair(theta=t, eta=np.asarray(gen.gradient(t), dtype=float))


def _at_bound(theta: float, bound: float) -> bool:
    if math.isfinite(bound):
        return abs(theta - bound) <= 1e-12 * max(1.0, abs(bound))
    return not abs(theta) < 1e100


def _newton_bisect_1d(gen: Generator, eta: float, tol: float, max_iter: int) -> float:
    lower, upper = float(gen.lower[0]), float(gen.upper[0])
    lo, hi = lower, upper
    theta = float(gen.midpoint()[0])
    for _ in range(max_iter):
        t = np.array([theta])
        g = float(gen.gradient(t)[0]) - eta
        if abs(g) <= tol:
            return theta
        # the gradient is increasing, so g > 0 puts the root left of theta
        if g > 0:
            hi = theta
        else:
            lo = theta
        slope = float(gen.hessian(t)[0, 0])
        cand = theta - g / slope if slope > 0 else math.nan
        if not lo < cand < hi:
            if math.isfinite(lo) and math.isfinite(hi):
                cand = 0.5 * (lo + hi)
            else:
                cand = theta - max(1.0, abs(theta)) if g > 0 else theta + max(1.0, abs(theta))
        if not lo < cand < hi:
            break
        theta = cand
    if (lo == lower and _at_bound(theta, lower)) or (hi == upper and _at_bound(theta, upper)):
        raise OutOfRangeError(f"{gen.name}: eta={eta} not attained on the domain")
    if hi - lo <= 4.0 * math.ulp(max(abs(lo), abs(hi))):
        # bracket at floating-point resolution; nothing better exists
        return theta
    raise ConvergenceError(
        f"{gen.name}: Legendre inversion did not converge in {max_iter} iterations (eta={eta})"
    )


def primal_coord(gen: Generator, eta, tol: float = NEWTON_TOL, max_iter: int = NEWTON_MAX_ITER):
    """Invert the gradient map: return theta with grad F(theta) = eta.

    Uses the generator's closed-form inverse when it has one; otherwise a
    Newton iteration seeded at the domain midpoint that falls back to
    bisection whenever a step leaves the current bracket (1-D only).
    """
    e = np.asarray(eta, dtype=float).reshape(-1)
    if e.shape != (gen.dim,) or not np.all(np.isfinite(e)):
        raise OutOfRangeError(f"{gen.name}: dual point {e.tolist()} has the wrong shape")
    if gen.gradient_image is not None:
        lo, hi = gen.gradient_image
        if not (lo < e[0] < hi):
            raise OutOfRangeError(
                f"{gen.name}: eta={e[0]} outside the gradient image ({lo}, {hi})"
            )
    if gen.inverse_gradient is not None:
        theta = np.asarray(gen.inverse_gradient(e), dtype=float).reshape(-1)
        if not gen.contains(theta):
            raise OutOfRangeError(f"{gen.name}: eta={e.tolist()} not attained on the domain")
        return _like(theta, eta)
    if gen.dim != 1:
        raise NotImplementedError("numeric Legendre inversion is 1-D only")
    return _like(_newton_bisect_1d(gen, float(e[0]), tol, max_iter), eta)


def legendre_dual_value(gen: Generator, eta) -> float:
    """F*(eta) = <theta(eta), eta> - F(theta(eta))."""
    theta = np.asarray(primal_coord(gen, eta), dtype=float).reshape(-1)
    e = np.asarray(eta, dtype=float).reshape(-1)
    return float(theta @ e - gen.value(theta))


def fenchel_young(gen: Generator, theta1, eta2) -> float:
    """Y_F(theta1 : eta2) = F(theta1) + F*(eta2) - <theta1, eta2>."""
    t1 = gen.check(theta1)
    e2 = np.asarray(eta2, dtype=float).reshape(-1)
    return float(gen.value(t1) + legendre_dual_value(gen, e2) - t1 @ e2)


def jensen_divergence(gen: Generator, theta1, theta2, alpha: float) -> float:
    """Skewed Jensen (Burbea-Rao) divergence at weight ``alpha`` in (0, 1)."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha={alpha} must lie in (0, 1)")
    t1 = gen.check(theta1)
    t2 = gen.check(theta2)
    mid = gen.check((1.0 - alpha) * t1 + alpha * t2)
    return float((1.0 - alpha) * gen.value(t1) + alpha * gen.value(t2) - gen.value(mid))


def jensen_diversity(gen: Generator, points: Sequence, weights: Sequence[float]) -> float:
    """sum_i w_i F(theta_i) - F(sum_i w_i theta_i) for positive weights summing to one."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(w) != len(points) or len(w) == 0:
        raise WeightError("need one weight per point")
    if np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-12:
        raise WeightError(f"weights must be positive and sum to 1 (sum={w.sum()!r})")
    pts = [gen.check(p) for p in points]
    centroid = gen.check(sum(wi * p for wi, p in zip(w, pts)))
    return float(sum(wi * gen.value(p) for wi, p in zip(w, pts)) - gen.value(centroid))


def separable_riemannian_distance(antiderivatives: Sequence[Callable[[float], float]], theta1, theta2) -> float:
    """Riemannian distance of a separable Hessian metric.

    ``antiderivatives[i]`` is an antiderivative of sqrt(F_i'') for the i-th
    coordinate generator; the metric is then flat in the coordinates
    h_i(theta^i), so the distance is Euclidean there.
    """
    t1 = np.asarray(theta1, dtype=float).reshape(-1)
    t2 = np.asarray(theta2, dtype=float).reshape(-1)
    if not (len(antiderivatives) == len(t1) == len(t2)):
        raise DomainError("one antiderivative per coordinate is required")
    with np.errstate(all="ignore"):
        diffs = np.array([h(a) - h(b) for h, a, b in zip(antiderivatives, t1, t2)], dtype=float)
    if not np.all(np.isfinite(diffs)):
        raise DomainError("points outside the domain of the antiderivatives")
    return float(math.sqrt(float(diffs @ diffs)))


def eguchi_metric_fd(gen: Generator, theta, step: float = 1e-4) -> np.ndarray:
    """Metric recovered from the Bregman divergence by a mixed finite difference.

    Estimates g_ij = -d/dtheta1_i d/dtheta2_j B_F(theta1 : theta2) at the
    diagonal with a four-point stencil; error is O(step^2).
    """
    t = gen.check(theta)
    n = gen.dim
    eye = np.eye(n) * step
    g = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            pp = bregman_divergence(gen, t + eye[i], t + eye[j])
            pm = bregman_divergence(gen, t + eye[i], t - eye[j])
            mp = bregman_divergence(gen, t - eye[i], t + eye[j])
            mm = bregman_divergence(gen, t - eye[i], t - eye[j])
            g[i, j] = -(pp - pm - mp + mm) / (4.0 * step * step)
    return 0.5 * (g + g.T)


def fd_derivative(f: Callable[[float], float], x: float, step: Optional[float] = None) -> float:
    """Central difference with one Richardson extrapolation step.

    The base step is ``1e-5 * max(1, |x|)`` unless given.
    """
    h = FD_BASE_STEP * max(1.0, abs(x)) if step is None else step
    d1 = (f(x + h) - f(x - h)) / (2.0 * h)
    h2 = 0.5 * h
    d2 = (f(x + h2) - f(x - h2)) / (2.0 * h2)
    return (4.0 * d2 - d1) / 3.0


def fd_gradient(gen: Generator, theta, step: Optional[float] = None) -> np.ndarray:
    """Richardson finite-difference gradient of ``gen.value``."""
    t = gen.check(theta)
    out = np.empty(gen.dim)
    for i in range(gen.dim):
        def f(u, i=i):
            x = t.copy()
            x[i] = u
            return float(gen.value(gen.check(x)))
        out[i] = fd_derivative(f, t[i], step)
    return out


def fd_hessian(gen: Generator, theta, step: Optional[float] = None) -> np.ndarray:
    """Richardson finite-difference Jacobian of ``gen.gradient`` (symmetrised)."""
    t = gen.check(theta)
    n = gen.dim
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            def f(u, i=i, j=j):
                x = t.copy()
                x[j] = u
                return float(gen.gradient(gen.check(x))[i])
            out[i, j] = fd_derivative(f, t[j], step)
    return 0.5 * (out + out.T)
