"""Strictly alpha-stable distributions: density, CDF, sampling, partial means.

Parameterization: characteristic function

    E exp(i th Z) = exp(-sigma^alpha |th|^alpha (1 - i beta sign(th) tan(pi alpha / 2)))

with index alpha in (1, 2], skewness beta in [-1, 1] and scale sigma > 0.
beta = -1 gives the spectrally negative law (no positive jumps, light right
tail), beta = +1 the spectrally positive mirror image.  At alpha = 2 the law
is Gaussian with variance 2 sigma^2 no matter what beta says.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import erfc

from . import _stable_core as core
from .errors import DomainError
from .quadrature import (DEFAULT_TOL, integrate_adaptive,
                         integrate_power_endpoint, integrate_upper_tail)

__all__ = ["StableParams", "std_density", "std_cdf", "positivity", "sample",
           "mean_positive_part"]


@dataclass(frozen=True)
class StableParams:
    """Index, skewness and scale of one stable law."""

    alpha: float
    beta: float
    sigma: float = 1.0

    def __post_init__(self):
        if not (1.0 < self.alpha <= 2.0):
            raise DomainError(f"alpha must lie in (1, 2], got {self.alpha}")
        if not (-1.0 <= self.beta <= 1.0):
            raise DomainError(f"beta must lie in [-1, 1], got {self.beta}")
        if not (self.sigma > 0.0):
            raise DomainError(f"sigma must be positive, got {self.sigma}")

    def negated(self):
        """Parameters of -Z; flips the skewness."""
        return StableParams(self.alpha, -self.beta, self.sigma)


def std_density(x, p):
    """Density of Z at x.  Scale enters only through x/sigma."""
    return core.density_std(x / p.sigma, p.alpha, p.beta) / p.sigma


def std_cdf(x, p):
    """P(Z <= x).  Scale enters only through x/sigma."""
    return core.cdf_std(x / p.sigma, p.alpha, p.beta)


def survival(x, p):
    """P(Z > x) with full absolute accuracy in the right tail."""
    return core.survival_std(x / p.sigma, p.alpha, p.beta)


def positivity(p):
    """P(Z > 0), exact: 1/alpha for beta=-1, 1 - 1/alpha for beta=+1."""
    return core.positivity_exact(p.alpha, p.beta)


def _two_uniforms(rand_source):
    if hasattr(rand_source, "random"):
        u = np.asarray(rand_source.random(2), dtype=float)
    else:
        u = np.asarray(rand_source(2), dtype=float)
    if u.shape != (2,):
        raise DomainError("rand_source must yield two uniforms per draw")
    return u


def sample(p, rand_source):
    """One variate with law p, by the Chambers-Mallows-Stuck transform.

    rand_source is anything with a .random(n) method returning i.i.d.
    uniforms on [0, 1) (e.g. numpy.random.Generator), or a callable n -> n
    uniforms.  Exactly two uniforms are consumed per call, so the output is
    a pure function of the source state.
    """
    u = _two_uniforms(rand_source)
    # nudge off the boundary: the transform needs u1 in (0,1), u2 in (0,1]
    eps = 2.0 ** -53
    u1 = min(max(float(u[0]), eps), 1.0 - eps)
    u2 = 1.0 - float(u[1])
    x = core.cms_transform(u1, max(u2, eps), p.alpha, p.beta)
    return p.sigma * float(x)


@lru_cache(maxsize=256)
def _mean_pos_std(alpha, beta, tol):
    """E max(Z, 0) for the unit-scale law, as an integral of the survival."""
    if alpha == 2.0:
        def surv(u):
            return 0.5 * erfc(np.asarray(u, dtype=float) / 2.0)

        def bound(u):
            return np.exp(-np.asarray(u, dtype=float) ** 2 / 4.0)

        return integrate_upper_tail(surv, 0.0, bound, tol=tol).value

    def surv_vec(u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        return np.fromiter(
            (core.survival_std(v, alpha, beta) for v in u), float, len(u))

    if beta == -1.0:
        cs = core._consts(alpha, beta)
        abar, v0 = cs[5], cs[7]

        def bound(u):
            # survival <= (1/alpha) exp(-u^abar V0): the integrand of the
            # angular representation is maximized at its flat endpoint
            u = np.asarray(u, dtype=float)
            return np.exp(-np.minimum(u ** abar * v0, 760.0)) / alpha

        return integrate_upper_tail(surv_vec, 0.0, bound, tol=tol).value

    # polynomial right tail: finite head plus a compactified tail piece whose
    # u = c/y substitution turns the decay into a power endpoint at y = 0
    c = 8.0
    head = integrate_adaptive(surv_vec, 0.0, c, tol=tol / 2.0)

    def tail_y(y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        return surv_vec(c / y) * c / (y * y)

    tail = integrate_power_endpoint(tail_y, 0.0, 1.0, endpoint="lower",
                                    exponent=alpha - 2.0, tol=tol / 2.0)
    return head.value + tail.value


def mean_positive_part(p, tol=None):
    """E max(Z, 0) via quadrature of the survival function.

    The negative-part mean is mean_positive_part of p.negated(); the two
    agree when beta = 0 and, because the mean is zero, E Z+ = E Z- always.
    """
    if tol is None:
        tol = DEFAULT_TOL
    return p.sigma * _mean_pos_std(p.alpha, p.beta, float(tol))
