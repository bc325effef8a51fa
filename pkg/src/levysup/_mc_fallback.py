"""Pure-numpy path-supremum backend.

Reference implementation of the backend contract: one counter-based RNG
stream per path keyed by (seed, path_index), so results never depend on
how work is scheduled.  The compiled backend reproduces the raw bit stream
of this one exactly; increment arithmetic may differ by float ulps.

The per-path layout is frozen: a block of 2*n_steps raw 64-bit words, even
indices feeding the angle uniform, odd indices the exponential uniform,
each mapped to (0,1) as ((raw >> 11) + 0.5) * 2^-53.
"""

import numpy as np

from ._stable_core import cms_transform

_INV53 = 2.0 ** -53
_SHIFT = np.uint64(11)


def raw_stream(seed, path_index, n):
    """First n raw words of the (seed, path_index) stream."""
    key = np.array([seed, path_index], dtype=np.uint64)
    return np.random.Philox(key=key).random_raw(n)


def _path_positions(alpha, beta, step_scale, n_steps, seed, path_index):
    raw = raw_stream(seed, path_index, 2 * n_steps)
    u = ((raw >> _SHIFT).astype(np.float64) + 0.5) * _INV53
    x = cms_transform(u[0::2], u[1::2], alpha, beta)
    return np.cumsum(x * step_scale)


def grid_suprema(alpha, beta, step_scale, n_steps, n_paths, seed,
                 start_path=0):
    """Per-path grid suprema on the full grid and on its half-resolution
    subgrid (every second node), both including the start point at 0.

    Returns (sup_full, sup_half) as float64 arrays of length n_paths.
    """
    sup_full = np.empty(n_paths)
    sup_half = np.empty(n_paths)
    for i in range(n_paths):
        pos = _path_positions(alpha, beta, step_scale, n_steps, seed,
                              start_path + i)
        sup_full[i] = max(0.0, float(pos.max()))
        sup_half[i] = max(0.0, float(pos[1::2].max()))
    return sup_full, sup_half
