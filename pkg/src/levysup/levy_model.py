"""Marginal laws of the driving processes at a fixed time.

A MarginalLaw bundles what the supremum formulas consume: the density and CDF
of X(s), the probabilities of either sign, and the means of the positive and
negative parts.  Three kinds exist: spectrally positive stable (only upward
jumps), spectrally negative stable (only downward jumps), and Brownian
motion.  Stable marginals scale self-similarly, sigma_s = s^{1/alpha}; the
Brownian kind is deliberately its own closed-form code path rather than the
alpha = 2 stable special case, so the two can be played against each other.

The Brownian normalization matches the stable one: X(s) ~ N(0, 2 vol^2 s).
"""

import math
from dataclasses import dataclass

from . import stable_dist
from .errors import DomainError
from .stable_dist import StableParams

__all__ = ["MarginalLaw", "spectrally_positive_stable",
           "spectrally_negative_stable", "brownian", "marginal_density",
           "marginal_cdf", "marginal_survival", "partial_means",
           "sign_probabilities", "negated"]

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class MarginalLaw:
    """One process family, closed under the time-s marginal operation."""

    kind: str
    alpha: float
    spectral_sign: int
    volatility: float = 1.0


def spectrally_positive_stable(alpha):
    """Stable process with upward jumps only (skewness +1)."""
    StableParams(alpha, 1.0)  # validates the index range
    return MarginalLaw("spectrally_positive_stable", float(alpha), 1)


def spectrally_negative_stable(alpha):
    """Stable process with downward jumps only (skewness -1)."""
    StableParams(alpha, -1.0)
    return MarginalLaw("spectrally_negative_stable", float(alpha), -1)


def brownian(volatility=1.0):
    if not volatility > 0.0:
        raise DomainError(f"volatility must be positive, got {volatility}")
    return MarginalLaw("brownian", 2.0, 0, float(volatility))


def negated(m):
    """The law of -X; swaps the spectral orientation."""
    if m.kind == "brownian":
        return m
    if m.spectral_sign > 0:
        return spectrally_negative_stable(m.alpha)
    return spectrally_positive_stable(m.alpha)


def _check_time(s):
    if not s > 0.0:
        raise DomainError(f"time must be positive, got {s}")


def _stable_params(m, s):
    beta = 1.0 if m.spectral_sign > 0 else -1.0
    return StableParams(m.alpha, beta, s ** (1.0 / m.alpha))


def marginal_density(m, u, s):
    """Density of X(s) at u."""
    _check_time(s)
    if m.kind == "brownian":
        var = 2.0 * m.volatility ** 2 * s
        return math.exp(-u * u / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)
    return stable_dist.std_density(u, _stable_params(m, s))


def marginal_cdf(m, u, s):
    """P(X(s) <= u)."""
    _check_time(s)
    if m.kind == "brownian":
        sd = m.volatility * math.sqrt(2.0 * s)
        return 0.5 * math.erfc(-u / (sd * math.sqrt(2.0)))
    return stable_dist.std_cdf(u, _stable_params(m, s))


def marginal_survival(m, u, s):
    """P(X(s) > u), accurate deep into the right tail."""
    _check_time(s)
    if m.kind == "brownian":
        sd = m.volatility * math.sqrt(2.0 * s)
        return 0.5 * math.erfc(u / (sd * math.sqrt(2.0)))
    return stable_dist.survival(u, _stable_params(m, s))


def partial_means(m, s, tol=None):
    """(E X(s)+, E X(s)-); equal to each other because the mean is zero.

    mean_neg is evaluated as the positive-part mean of the negated law, which
    keeps both components on the well-conditioned right-tail quadrature.
    """
    _check_time(s)
    if m.kind == "brownian":
        v = m.volatility * math.sqrt(s) / _SQRT_PI
        return v, v
    scale = s ** (1.0 / m.alpha)
    beta = 1.0 if m.spectral_sign > 0 else -1.0
    mp = scale * stable_dist.mean_positive_part(
        StableParams(m.alpha, beta), tol=tol)
    mn = scale * stable_dist.mean_positive_part(
        StableParams(m.alpha, -beta), tol=tol)
    return mp, mn


def sign_probabilities(m, s):
    """(P(X(s) > 0), P(X(s) < 0)); time-free for every kind here."""
    _check_time(s)
    if m.kind == "brownian":
        return 0.5, 0.5
    p = stable_dist.positivity(StableParams(m.alpha,
                                            1.0 if m.spectral_sign > 0
                                            else -1.0))
    return p, 1.0 - p
