"""Monte Carlo verification engine for path suprema.

Simulates the process on a uniform grid by exact-in-law i.i.d. stable
increments (scale (t/n)^{1/alpha} per step) and estimates supremum tails
and expected suprema with confidence intervals.  The grid supremum is
biased low against the continuous-time supremum; every estimate therefore
carries a companion computed from the half-resolution subgrid of the same
paths, so the discretization trend is visible in the report itself.

Determinism: estimates are functions of (config, model) only.  Each path
owns a counter-based stream keyed by (seed, path_index), and aggregation
is a fixed-order pairwise sum, so worker scheduling cannot change results.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError

Z99 = 2.576  # two-sided 99% normal quantile, as reported in the CIs


@dataclass(frozen=True)
class McConfig:
    n_paths: int
    n_steps: int
    seed: int
    horizon: float = 1.0

    def __post_init__(self):
        if self.n_paths < 100:
            raise DomainError(f"n_paths must be >= 100, got {self.n_paths}")
        if self.n_steps < 100:
            raise DomainError(f"n_steps must be >= 100, got {self.n_steps}")
        if self.n_steps % 2:
            raise DomainError(
                f"n_steps must be even (the half-grid companion estimate "
                f"needs it), got {self.n_steps}")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed must fit in 64 bits, got {self.seed}")
        if not self.horizon > 0.0:
            raise DomainError(f"horizon must be positive, got {self.horizon}")


@dataclass(frozen=True)
class McEstimate:
    """Point estimate with its 99% interval and the half-grid companion."""

    estimate: float
    std_error: float
    ci99: tuple
    n_paths: int
    n_steps: int
    seed: int
    coarse_estimate: float
    coarse_std_error: float


def _law_triple(m, cfg):
    # (alpha, skew, per-step scale); the transform at alpha 2 ignores skew
    dt = cfg.horizon / cfg.n_steps
    if m.kind == "brownian":
        return 2.0, -1.0, m.volatility * math.sqrt(dt)
    return m.alpha, (1.0 if m.spectral_sign > 0 else -1.0), \
        dt ** (1.0 / m.alpha)


def _suprema(m, cfg, start_path=0, n_paths=None):
    alpha, beta, scale = _law_triple(m, cfg)
    n = cfg.n_paths if n_paths is None else n_paths
    return _backend.grid_suprema(alpha, beta, scale, cfg.n_steps, n,
                                 cfg.seed, start_path)


def _estimate(cfg, value, se, coarse, coarse_se):
    return McEstimate(value, se, (value - Z99 * se, value + Z99 * se),
                      cfg.n_paths, cfg.n_steps, cfg.seed, coarse, coarse_se)


def simulate_grid_supremum(m, cfg, path_index):
    """Grid supremum of one path; deterministic in (seed, path_index)."""
    full, _ = _suprema(m, cfg, start_path=path_index, n_paths=1)
    return float(full[0])


def estimate_sup_tail_levels(m, cfg, levels):
    """Tail estimates at several levels from one path ensemble.

    Simulating is the expensive part; the indicator counts per level are
    free, so a sweep over levels shares the paths.  Estimates are the same
    as calling estimate_sup_tail per level (identical seed, identical
    ensemble), just cheaper.  Levels equal to 0 are certain and never
    require simulation.
    """
    for u in levels:
        if u < 0.0:
            raise DomainError(f"level must be >= 0, got {u}")
    n = cfg.n_paths
    full = half = None
    if any(u > 0.0 for u in levels):
        full, half = _suprema(m, cfg)

    def binom(sups, u):
        p = float(np.count_nonzero(sups >= u)) / n
        return p, math.sqrt(p * (1.0 - p) / n)

    out = []
    for u in levels:
        if u == 0.0:
            out.append(_estimate(cfg, 1.0, 0.0, 1.0, 0.0))
        else:
            est, se = binom(full, u)
            coarse, coarse_se = binom(half, u)
            out.append(_estimate(cfg, est, se, coarse, coarse_se))
    return out


def estimate_sup_tail(m, cfg, u):
    """Fraction of paths whose grid supremum reaches u, with binomial SE.

    The grid supremum never exceeds the true one, so this estimates the
    continuous-time tail from below; compare estimate vs coarse_estimate
    for the trend.  u = 0 is certain (paths start at 0) and is returned
    without simulating.
    """
    return estimate_sup_tail_levels(m, cfg, [u])[0]


def estimate_esup(m, cfg):
    """Sample mean of the grid suprema with its standard error."""
    full, half = _suprema(m, cfg)
    n = cfg.n_paths

    def mean_se(sups):
        mu = float(np.sum(sups)) / n
        sd = float(np.std(sups, ddof=1))
        return mu, sd / math.sqrt(n)

    est, se = mean_se(full)
    coarse, coarse_se = mean_se(half)
    return _estimate(cfg, est, se, coarse, coarse_se)
