"""Pick the compiled kernels when available, else the NumPy fallback.

Set ``MATING_FORGE_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("MATING_FORGE_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

green_batch = _impl.green_batch
boettcher_batch = _impl.boettcher_batch
render_labels = _impl.render_labels


def worker_count() -> int:
    """Thread bound from ``MATING_FORGE_THREADS`` (default: CPU count)."""
    raw = os.environ.get("MATING_FORGE_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1
