"""Select the compiled kernel when it is importable, else the Python one.

Set AFFINE_BICLOSED_PURE=1 to force the fallback.
"""
from __future__ import annotations

import os

if os.environ.get("AFFINE_BICLOSED_PURE"):
    from ._kernels_py import window_closure
    BACKEND = "python"
else:
    try:
        from ._kernels import window_closure
        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import window_closure
        BACKEND = "python"

__all__ = ["window_closure", "BACKEND"]
