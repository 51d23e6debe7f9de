"""Bregman generators of regular cones: the positive orthant and the SPD cone.

Both cones are homogeneous, and their characteristic-function generators
satisfy F(x) = 1/2 log det Hess F(x) up to an additive constant; the
``halfdet_identity_gap`` function measures the departure from that.

SPD matrices are parameterised by their upper triangle read row by row
(``vech`` coordinates), so a symmetric d x d matrix is a point of
R^{d(d+1)/2} and the generic Bregman machinery applies unchanged.
"""

from __future__ import annotations

import math

import numpy as np

from .bregman import Generator
from .errors import DimensionError, NotPositiveDefiniteError

__all__ = [
    "orthant_generator",
    "spd_generator_value",
    "spd_generator_gradient",
    "spd_generator",
    "vech",
    "unvech",
    "halfdet_identity_gap",
]

SYMMETRY_TOL = 1e-12


def orthant_generator(d: int) -> Generator:
    """F(x) = -sum log x_i on the open positive orthant of R^d."""
    if d < 1:
        raise DimensionError("d must be >= 1")
    return Generator(
        dim=d,
        lower=(0.0,) * d,
        upper=(math.inf,) * d,
        value=lambda x: float(-np.sum(np.log(x))),
        gradient=lambda x: -1.0 / x,
        hessian=lambda x: np.diag(1.0 / (x * x)),
        inverse_gradient=lambda e: -1.0 / np.asarray(e, dtype=float),
        name=f"orthant[{d}]",
    )


def _cholesky(P) -> np.ndarray:
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {P.shape}")
    if np.max(np.abs(P - P.T), initial=0.0) > SYMMETRY_TOL * max(1.0, np.max(np.abs(P))):
        raise NotPositiveDefiniteError("matrix is not symmetric")
    try:
        return np.linalg.cholesky(P)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError("matrix is not positive-definite") from exc


def _logdet(P) -> float:
    L = _cholesky(P)
    return 2.0 * float(np.sum(np.log(np.diag(L))))


def spd_generator_value(P, d: int | None = None) -> float:
    """-(d + 1)/2 log det P, with the determinant taken from a Cholesky factor."""
    P = np.asarray(P, dtype=float)
    d = P.shape[0] if d is None else d
    if P.shape != (d, d):
        raise DimensionError(f"expected a {d}x{d} matrix, got shape {P.shape}")
    return -0.5 * (d + 1) * _logdet(P)


def spd_generator_gradient(P, d: int | None = None) -> np.ndarray:
    """Matrix gradient -(d + 1)/2 P^{-1} with respect to the Frobenius inner product."""
    P = np.asarray(P, dtype=float)
    d = P.shape[0] if d is None else d
    if P.shape != (d, d):
        raise DimensionError(f"expected a {d}x{d} matrix, got shape {P.shape}")
    L = _cholesky(P)
    inv_l = np.linalg.solve(L, np.eye(d))
    G = -0.5 * (d + 1) * (inv_l.T @ inv_l)
    return 0.5 * (G + G.T)


def vech(P) -> np.ndarray:
    P = np.asarray(P, dtype=float)
    return P[np.triu_indices(P.shape[0])]


def unvech(v, d: int) -> np.ndarray:
    P = np.zeros((d, d))
    P[np.triu_indices(d)] = v
    return P + np.triu(P, 1).T


def _is_pd(v, d) -> bool:
    try:
        np.linalg.cholesky(unvech(v, d))
    except np.linalg.LinAlgError:
        return False
    return True


def spd_generator(d: int) -> Generator:
    """The SPD log-det generator in ``vech`` coordinates.

    An off-diagonal coordinate moves two matrix entries at once, so its
    partial derivative is twice the corresponding entry of the matrix
    gradient.
    """
    if d < 1:
        raise DimensionError("d must be >= 1")
    iu = np.triu_indices(d)
    mult = np.where(iu[0] == iu[1], 1.0, 2.0)
    c = 0.5 * (d + 1)
    n = len(mult)
    basis = [unvech(np.eye(n)[k], d) for k in range(n)]

    def gradient(v):
        return mult * spd_generator_gradient(unvech(v, d), d)[iu]

    def hessian(v):
        Pinv = np.linalg.inv(unvech(v, d))
        H = np.empty((n, n))
        for a in range(n):
            left = Pinv @ basis[a] @ Pinv
            for b in range(a, n):
                H[a, b] = H[b, a] = c * float(np.sum(left * basis[b]))
        return H

    return Generator(
        dim=n,
        lower=(-math.inf,) * n,
        upper=(math.inf,) * n,
        value=lambda v: spd_generator_value(unvech(v, d), d),
        gradient=gradient,
        hessian=hessian,
        constraint=lambda v: _is_pd(v, d),
        name=f"spd-logdet[{d}]",
    )


def halfdet_identity_gap(gen: Generator, x1, x2) -> float:
    """[F(x1) - 1/2 log det H(x1)] - [F(x2) - 1/2 log det H(x2)].

    Zero for generators of homogeneous cones, whose potential equals half
    the log-determinant of its Hessian up to an additive constant.
    """
    a = gen.check(x1)
    b = gen.check(x2)

    def residual(x):
        sign, logdet = np.linalg.slogdet(np.atleast_2d(gen.hessian(x)))
        if sign <= 0:
            raise NotPositiveDefiniteError(f"{gen.name}: Hessian not positive-definite")
        return gen.value(x) - 0.5 * logdet

    return float(residual(a) - residual(b))
