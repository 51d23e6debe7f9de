"""Battery of numerical checks comparing the closed forms with independent routes.

Each check measures a worst-case error over a small grid and compares it
with a fixed tolerance.  A check that raises is recorded as failed with the
exception message; it never aborts the battery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional

import numpy as np

from . import bregman, mixture, oracle
from .cauchy import js_skewed_cauchy
from .mixture import CauchyMixtureFamily

__all__ = ["Check", "verify_family", "TEST_FAMILIES", "THETA_GRID", "PAIR_GRID"]

TEST_FAMILIES = (
    CauchyMixtureFamily.from_tuple((0, 1, 1, 1)),
    CauchyMixtureFamily.from_tuple((-1, 1, 1, 2)),
    CauchyMixtureFamily.from_tuple((0, 1, 5, 0.5)),
)
THETA_GRID = tuple(round(0.1 * k, 1) for k in range(1, 10))
PAIR_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)
FD_GRID = tuple(np.linspace(0.05, 0.95, 19))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    error: float
    tol: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        msg = f"{status} {self.name}: err={self.error:.3e} tol={self.tol:.1e}"
        return f"{msg} ({self.detail})" if self.detail else msg


def _run(name: str, tol: float, measure: Callable[[], float]) -> Check:
    try:
        err = float(measure())
    except Exception as exc:  # a failing check must not abort the battery
        return Check(name, False, math.nan, tol, f"{type(exc).__name__}: {exc}")
    return Check(name, bool(err <= tol), err, tol)


def _max(values: Iterable[float]) -> float:
    return max(abs(v) for v in values)


def verify_family(
    fam: CauchyMixtureFamily,
    oracle_tol: float = 1e-7,
    mc_samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> List[Check]:
    """Run every consistency check for one family; Monte Carlo only when ``seed`` is given."""
    gen = mixture.generator(fam)
    spec = oracle.spec_for(fam.comp0, fam.comp1)
    dens = lambda t: oracle.mixture_density(fam.comp0, fam.comp1, t)
    pairs = [(a, b) for a in PAIR_GRID for b in PAIR_GRID]
    tag = str(fam)
    checks = []

    def add(name, tol, measure):
        checks.append(_run(f"{tag} {name}", tol, measure))

    add("entropy closed form vs quadrature", oracle_tol, lambda: _max(
        mixture.mixture_entropy(fam, t) - oracle.numeric_entropy(dens(t), spec) for t in THETA_GRID))
    add("cross-entropy p0 vs quadrature", oracle_tol, lambda: _max(
        mixture.cross_entropy_p0_to_mixture(fam, t)
        - oracle.numeric_cross_entropy(dens(0.0), dens(t), spec) for t in THETA_GRID))
    add("KL closed form vs quadrature", oracle_tol, lambda: _max(
        mixture.kl_between_mixtures(fam, a, b) - oracle.numeric_kl(dens(a), dens(b), spec)
        for a, b in pairs))
    add("KL closed form vs Bregman divergence", 1e-10, lambda: _max(
        mixture.kl_between_mixtures(fam, a, b) - bregman.bregman_divergence(gen, a, b)
        for a, b in pairs))
    sym_tol = 1e-10 if fam.is_canonical else 1e-9
    add("KL symmetry at (0.2, 0.8)", sym_tol, lambda: abs(
        mixture.kl_between_mixtures(fam, 0.2, 0.8) - mixture.kl_between_mixtures(fam, 0.8, 0.2)))
    add("KL symmetry at complementary pairs", 1e-9, lambda: _max(
        mixture.kl_between_mixtures(fam, t, 1 - t) - mixture.kl_between_mixtures(fam, 1 - t, t)
        for t in THETA_GRID))
    rt_tol = 1e-12 if fam.is_canonical else 1e-10
    add("Legendre round trip theta(eta(theta))", rt_tol, lambda: _max(
        bregman.primal_coord(gen, bregman.dual_coord(gen, t)) - t for t in THETA_GRID))
    add("Legendre identity F + F* - theta eta", 1e-10, lambda: _max(
        mixture.negentropy(fam, t) + mixture.dual_value_in_theta(fam, t)
        - t * mixture.negentropy_grad(fam, t) for t in THETA_GRID))
    add("Legendre identity with numeric conjugate", 1e-10, lambda: _max(
        bregman.legendre_dual_value(gen, bregman.dual_coord(gen, t))
        - mixture.dual_value_in_theta(fam, t) for t in THETA_GRID))
    add("Jeffreys identity", 1e-9, lambda: _max(
        mixture.jeffreys_between_mixtures(fam, a, b)
        - mixture.kl_between_mixtures(fam, a, b) - mixture.kl_between_mixtures(fam, b, a)
        for a, b in pairs))
    add("JS vs Jensen divergence", 1e-10, lambda: _max(
        mixture.js_between_mixtures(fam, a, b) - bregman.jensen_divergence(gen, a, b, 0.5)
        for a, b in pairs if a != b))
    f0, f1 = mixture.boundary_values(fam)
    add("skewed JS vs Jensen gap of boundary limits", 1e-7, lambda: _max(
        js_skewed_cauchy(fam.comp0, fam.comp1, t)
        - ((1 - t) * f0 + t * f1 - mixture.negentropy(fam, t)) for t in THETA_GRID))
    add("gradient vs finite differences (relative)", 1e-6, lambda: max(
        abs(bregman.fd_gradient(gen, t)[0] - bregman.dual_coord(gen, t))
        / max(1.0, abs(bregman.dual_coord(gen, t))) for t in FD_GRID))
    add("Hessian vs finite differences (relative)", 1e-5, lambda: max(
        abs(bregman.fd_hessian(gen, t)[0, 0] - mixture.metric(fam, t)) / mixture.metric(fam, t)
        for t in FD_GRID))
    add("Crouzeix identity F'' (F*)'' = 1", 1e-6, lambda: _max(
        mixture.metric(fam, t) * bregman.fd_derivative(
            lambda e: bregman.primal_coord(gen, e), bregman.dual_coord(gen, t)) - 1.0
        for t in THETA_GRID))
    add("Eguchi metric reconstruction", 2e-4, lambda: _max(
        bregman.eguchi_metric_fd(gen, t, 1e-4)[0, 0] - mixture.metric(fam, t)
        for t in (0.25, 0.5, 0.75)))
    if fam.is_canonical:
        add("canonical generator vs general entropy formula", 1e-10, lambda: _max(
            mixture.canonical_generator_value(t) - mixture.negentropy(fam, t) for t in THETA_GRID))
        add("canonical gradient vs general derivative", 1e-10, lambda: _max(
            mixture.canonical_grad(t) - mixture.negentropy_grad(fam, t) for t in THETA_GRID))
        add("canonical dual potential vs cross-entropy", 1e-10, lambda: _max(
            mixture.canonical_dual_value(t) - mixture.dual_value_in_theta(fam, t) for t in THETA_GRID))
        add("canonical expanded metric vs analytic F''", 1e-9, lambda: _max(
            mixture.canonical_metric(t) - mixture.metric(fam, t) for t in THETA_GRID))
        add("canonical expanded Bregman divergence vs KL", 1e-10, lambda: _max(
            mixture.canonical_bregman(a, b) - mixture.kl_between_mixtures(fam, a, b) for a, b in pairs))
    if seed is not None:
        n = mc_samples or 1_000_000
        mc_pairs = ((0.2, 0.8), (0.5, 0.1))

        def mc_z():
            worst = 0.0
            for a, b in mc_pairs:
                est = oracle.mc_kl(fam, a, dens(b), oracle.McSpec(n, seed))
                worst = max(worst, abs(est.value - mixture.kl_between_mixtures(fam, a, b)) / est.stderr)
            return worst

        add(f"Monte Carlo KL within 4 standard errors (n={n})", 4.0, mc_z)
    return checks
