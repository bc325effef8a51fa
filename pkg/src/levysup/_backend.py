"""Selects the path-simulation backend at import time.

Prefers the compiled kernel; falls back to the pure-numpy implementation
when the extension is absent (not built, or skipped via LEVYSUP_NO_EXT).
Both backends expose grid_suprema and raw_stream with identical contracts
and bit-identical raw streams.
"""

try:
    from . import _mc_kernel as _impl
    BACKEND_NAME = "compiled"
except ImportError:  # extension not built
    from . import _mc_fallback as _impl
    BACKEND_NAME = "python"

grid_suprema = _impl.grid_suprema
raw_stream = _impl.raw_stream


def backend_name():
    """Which implementation is live: "compiled" or "python"."""
    return BACKEND_NAME
