"""Select the compiled SINR kernels when available, numpy otherwise.

Set HETNETCOV_BACKEND=python to force the fallback (used by the kernel
benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("HETNETCOV_BACKEND", "").lower() == "python":
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

BACKEND_NAME: str = kernels.BACKEND
