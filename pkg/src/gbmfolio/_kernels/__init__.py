"""Kernel backend selection: compiled extension if available, NumPy otherwise.

Set GBMFOLIO_PURE_PYTHON=1 to force the NumPy fallback (read once at
import time). The active backend name is exposed as BACKEND.
"""

import os

if os.environ.get("GBMFOLIO_PURE_PYTHON"):
    from . import _py as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _py as _impl

        BACKEND = "python"

gbm_paths = _impl.gbm_paths
trial_stats = _impl.trial_stats

__all__ = ["BACKEND", "gbm_paths", "trial_stats"]
