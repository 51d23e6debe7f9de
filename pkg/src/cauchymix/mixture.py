"""Dually flat geometry of the mixture family of two distinct Cauchy densities.

The family is ``m_theta = (1 - theta) p0 + theta p1`` for ``theta`` in the
open unit interval.  Its Shannon negentropy ``F(theta) = -h[m_theta]`` is a
strictly convex Bregman generator whose value, first and second
derivatives are all available in closed form.  The Bregman divergence of
``F`` is the Kullback-Leibler divergence between mixtures, and the convex
conjugate evaluated at ``eta(theta)`` is the cross-entropy of ``p0`` against
``m_theta``.

Most functions here are vectorised over ``theta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bregman
from .cauchy import CauchyParam, _kl_closed, _param, _safe_sqrt, pdf
from .errors import DomainError, OutOfRangeError, ParamError

__all__ = [
    "CauchyMixtureFamily",
    "CANONICAL",
    "BOUNDARY_EPS",
    "mixture_pdf",
    "mixture_entropy",
    "negentropy",
    "negentropy_grad",
    "negentropy_hess",
    "generator",
    "boundary_values",
    "canonical_generator_value",
    "canonical_grad",
    "canonical_inverse_grad",
    "canonical_dual_value",
    "canonical_metric",
    "canonical_bregman",
    "cross_entropy_p0_to_mixture",
    "cross_entropy_p1_to_mixture",
    "dual_value_in_theta",
    "kl_between_mixtures",
    "jeffreys_between_mixtures",
    "js_between_mixtures",
    "metric",
]

# explicit epsilon used wherever a limit at theta = 0 or 1 is wanted
BOUNDARY_EPS = 1e-9
COINCIDENCE_TOL = 1e-12

LOG_4_5 = math.log(4.0 / 5.0)
LOG_5_4 = math.log(5.0 / 4.0)


@dataclass(frozen=True)
class CauchyMixtureFamily:
    """Two distinct prescribed Cauchy components ``comp0`` and ``comp1``."""

    comp0: CauchyParam
    comp1: CauchyParam

    def __post_init__(self):
        object.__setattr__(self, "comp0", _param(self.comp0))
        object.__setattr__(self, "comp1", _param(self.comp1))
        gap = math.hypot(self.comp0.l - self.comp1.l, self.comp0.s - self.comp1.s)
        if gap < COINCIDENCE_TOL:
            raise ParamError("mixture components must be distinct")

    @classmethod
    def from_tuple(cls, params) -> "CauchyMixtureFamily":
        l0, s0, l1, s1 = (float(v) for v in params)
        return cls(CauchyParam(l0, s0), CauchyParam(l1, s1))

    def as_tuple(self) -> tuple:
        return (self.comp0.l, self.comp0.s, self.comp1.l, self.comp1.s)

    @property
    def is_canonical(self) -> bool:
        return self.as_tuple() == (0.0, 1.0, 1.0, 1.0)

    def __str__(self):
        return "({:g},{:g},{:g},{:g})".format(*self.as_tuple())


CANONICAL = CauchyMixtureFamily(CauchyParam(0.0, 1.0), CauchyParam(1.0, 1.0))


def _open_theta(theta):
    t = np.asarray(theta, dtype=float)
    if not np.all((t > 0) & (t < 1)):
        raise DomainError(f"theta={theta!r} outside (0, 1)")
    return t


def _out(v):
    v = np.asarray(v, dtype=float)
    return float(v) if v.ndim == 0 else v


def mixture_pdf(fam: CauchyMixtureFamily, theta, x):
    t = float(_open_theta(theta))
    return (1.0 - t) * pdf(fam.comp0, x) + t * pdf(fam.comp1, x)


class _Terms:
    """Pieces of the closed-form mixture entropy and their theta-derivatives.

    With d = l1 - l0, the entropy is
        theta log(N / D1) + (1 - theta) log(N / D0) + theta log(s1/s0) + log(4 pi s0)
    where N = (s0 + s1)^2 + d^2, R = sqrt(s0^2 s1^2 + B theta (1 - theta)),
    B = s0 s1 ((s1 - s0)^2 + d^2), A = s0^2 + s1^2 + d^2 and
        D1 = 2R + A theta + 2 s0 s1 (1 - theta),
        D0 = 2R + 2 s0 s1 theta + A (1 - theta).
    """

    def __init__(self, fam: CauchyMixtureFamily, theta):
        l0, s0, l1, s1 = fam.as_tuple()
        t = np.asarray(theta, dtype=float)
        d2 = (l1 - l0) ** 2
        self.t = t
        self.s0, self.s1 = s0, s1
        self.N = (s1 + s0) ** 2 + d2
        self.A = s1 * s1 + s0 * s0 + d2
        self.K = (s1 - s0) ** 2 + d2  # A - 2 s0 s1
        self.B = s0 * s1 * self.K
        self.R = _safe_sqrt(s0 * s0 * s1 * s1 + self.B * t * (1.0 - t))
        self.D1 = 2.0 * self.R + self.A * t + 2.0 * s0 * s1 * (1.0 - t)
        self.D0 = 2.0 * self.R + 2.0 * s0 * s1 * t + self.A * (1.0 - t)

    def entropy(self):
        t = self.t
        return (
            t * np.log(self.N / self.D1)
            + (1.0 - t) * np.log(self.N / self.D0)
            + t * math.log(self.s1 / self.s0)
            + math.log(4.0 * math.pi * self.s0)
        )

    def _derivs(self):
        dR = self.B * (1.0 - 2.0 * self.t) / (2.0 * self.R)
        d2R = -self.B / self.R - dR * dR / self.R
        dD1 = 2.0 * dR + self.K
        dD0 = 2.0 * dR - self.K
        return dR, d2R, dD1, dD0

    def dentropy(self):
        t = self.t
        _, _, dD1, dD0 = self._derivs()
        return (
            np.log(self.N / self.D1)
            - np.log(self.N / self.D0)
            - t * dD1 / self.D1
            - (1.0 - t) * dD0 / self.D0
            + math.log(self.s1 / self.s0)
        )

    def d2entropy(self):
        t = self.t
        _, d2R, dD1, dD0 = self._derivs()
        r1, r0 = dD1 / self.D1, dD0 / self.D0
        dd = 2.0 * d2R
        return (
            -2.0 * r1
            + 2.0 * r0
            - t * (dd / self.D1 - r1 * r1)
            - (1.0 - t) * (dd / self.D0 - r0 * r0)
        )


def mixture_entropy(fam: CauchyMixtureFamily, theta):
    """Closed-form differential entropy h[m_theta] for theta in (0, 1)."""
    return _out(_Terms(fam, _open_theta(theta)).entropy())


def negentropy(fam, theta):
    """F(theta) = -h[m_theta] evaluated without domain checks (valid on [0, 1])."""
    return _out(-_Terms(fam, theta).entropy())


def negentropy_grad(fam, theta):
    """F'(theta) without domain checks (valid on [0, 1])."""
    return _out(-_Terms(fam, theta).dentropy())


def negentropy_hess(fam, theta):
    """F''(theta) without domain checks (valid on [0, 1])."""
    return _out(-_Terms(fam, theta).d2entropy())


def boundary_values(fam: CauchyMixtureFamily, eps: float = BOUNDARY_EPS) -> tuple:
    """(F(eps), F(1 - eps)): stand-ins for the limits F(0+) and F(1-), error O(eps)."""
    return negentropy(fam, eps), negentropy(fam, 1.0 - eps)


def generator(fam: CauchyMixtureFamily) -> bregman.Generator:
    """The negentropy generator of the family on the open interval (0, 1).

    Only the canonical family ((0,1), (1,1)) gets a closed-form inverse
    gradient; other families are inverted numerically by
    :func:`cauchymix.bregman.primal_coord`.
    """
    image = (negentropy_grad(fam, 0.0), negentropy_grad(fam, 1.0))
    inverse = None
    if fam.is_canonical:
        inverse = lambda e: np.array([canonical_inverse_grad(float(e[0]))])
    return bregman.Generator(
        dim=1,
        lower=(0.0,),
        upper=(1.0,),
        value=lambda t: negentropy(fam, t[0]),
        gradient=lambda t: np.array([negentropy_grad(fam, t[0])]),
        hessian=lambda t: np.array([[negentropy_hess(fam, t[0])]]),
        inverse_gradient=inverse,
        gradient_image=image,
        name=f"cauchy-mixture{fam}",
    )


# --- the canonical family (l0, s0, l1, s1) = (0, 1, 1, 1) -------------------

def _canonical_parts(t):
    r = 2.0 * np.sqrt(1.0 + t - t * t)
    return r + t + 2.0, r - t + 3.0


def canonical_generator_value(theta):
    t = _open_theta(theta)
    up, down = _canonical_parts(t)
    return _out(t * np.log(up / down) + np.log(down / (20.0 * math.pi)))


def canonical_grad(theta):
    t = _open_theta(theta)
    up, down = _canonical_parts(t)
    return _out(np.log(up / down))


def canonical_inverse_grad(eta):
    """Closed-form inverse of :func:`canonical_grad` on (log 4/5, log 5/4).

    The square root sqrt(e^{3 eta} - 2 e^{2 eta} + e^eta) is taken with the
    sign of eta, i.e. as e^{eta/2} (e^eta - 1); the principal root only
    inverts the gradient on eta >= 0.
    """
    e = np.asarray(eta, dtype=float)
    if not np.all((e > LOG_4_5) & (e < LOG_5_4)):
        raise OutOfRangeError(f"eta={eta!r} outside (log(4/5), log(5/4))")
    E = np.exp(e)
    num = 5.0 * E * E + 2.0 * math.sqrt(5.0) * np.exp(0.5 * e) * np.expm1(e) - 3.0 * E
    den = 5.0 * E * E - 6.0 * E + 5.0
    return _out(num / den)


def canonical_dual_value(theta):
    """F*(eta(theta)) = log(20 pi / (2 sqrt(1 + theta - theta^2) - theta + 3))."""
    t = _open_theta(theta)
    _, down = _canonical_parts(t)
    return _out(np.log(20.0 * math.pi / down))


def canonical_metric(theta):
    """F''(theta) for the canonical family, as the expanded rational expression in theta and sqrt(1 + theta - theta^2)."""
    t = _open_theta(theta)
    q = np.sqrt(-t * t + t + 1.0)
    num = (
        -t**8 + 4 * t**7
        + q * (7 * t**6 - 21 * t**5 - 35 * t**4 + 105 * t**3 + 56 * t**2 - 112 * t - 64)
        + 19 * t**6 - 71 * t**5 - 30 * t**4 + 183 * t**3 + 40 * t**2 - 144 * t - 64
    )
    den = (
        -t**10 + 5 * t**9
        + q * (8 * t**8 - 32 * t**7 - 40 * t**6 + 232 * t**5 + 16 * t**4 - 456 * t**3
               - 48 * t**2 + 320 * t + 128)
        + 23 * t**8 - 122 * t**7 + t**6 + 445 * t**5 - 127 * t**4 - 640 * t**3
        + 32 * t**2 + 384 * t + 128
    )
    return _out(-num / den)


def canonical_bregman(theta1, theta2):
    """Expanded closed form of KL(m_theta1 : m_theta2) for the canonical family."""
    t1, t2 = _open_theta(theta1), _open_theta(theta2)
    up1, down1 = _canonical_parts(t1)
    up2, down2 = _canonical_parts(t2)
    return _out(t1 * np.log(up1 * down2 / (down1 * up2)) + np.log(down1 / down2))


# --- divergences between members of the family ------------------------------

def cross_entropy_p0_to_mixture(fam: CauchyMixtureFamily, theta):
    """h^x[p0 : m_theta] = KL(p0 : m_theta) + log(4 pi s0)."""
    t = _open_theta(theta)
    c0, c1 = fam.comp0, fam.comp1
    return _out(_kl_closed(c0.l, c0.s, c1.l, c1.s, t) + math.log(4.0 * math.pi * c0.s))


def cross_entropy_p1_to_mixture(fam: CauchyMixtureFamily, theta):
    """h^x[p1 : m_theta], via the mixture with the components swapped."""
    t = _open_theta(theta)
    c0, c1 = fam.comp0, fam.comp1
    return _out(_kl_closed(c1.l, c1.s, c0.l, c0.s, 1.0 - t) + math.log(4.0 * math.pi * c1.s))


def dual_value_in_theta(fam: CauchyMixtureFamily, theta):
    """Convex conjugate F*(eta(theta)), which is the cross-entropy of p0 against m_theta."""
    return cross_entropy_p0_to_mixture(fam, theta)


def kl_between_mixtures(fam: CauchyMixtureFamily, theta1, theta2):
    """KL(m_theta1 : m_theta2) from the closed-form cross-entropies and entropy."""
    t1 = _open_theta(theta1)
    t2 = _open_theta(theta2)
    return _out(
        (1.0 - t1) * cross_entropy_p0_to_mixture(fam, t2)
        + t1 * cross_entropy_p1_to_mixture(fam, t2)
        - mixture_entropy(fam, t1)
    )


def jeffreys_between_mixtures(fam: CauchyMixtureFamily, theta1, theta2):
    t1 = _open_theta(theta1)
    t2 = _open_theta(theta2)
    return _out((t2 - t1) * (negentropy_grad(fam, t2) - negentropy_grad(fam, t1)))


def js_between_mixtures(fam: CauchyMixtureFamily, theta1, theta2):
    t1 = _open_theta(theta1)
    t2 = _open_theta(theta2)
    return _out(
        mixture_entropy(fam, 0.5 * (t1 + t2))
        - 0.5 * (mixture_entropy(fam, t1) + mixture_entropy(fam, t2))
    )


def metric(fam: CauchyMixtureFamily, theta):
    """Fisher information of the family at theta, i.e. F''(theta)."""
    return negentropy_hess(fam, _open_theta(theta))
