"""Kernel selection: compiled extension when built, pure Python otherwise.

Set DEPFORGE_PURE_PYTHON=1 to force the fallback even when the extension
is available (used by the benchmark and the equivalence tests).
"""

import os

if os.environ.get("DEPFORGE_PURE_PYTHON", "0") not in ("", "0"):
    from . import pykernels as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import pykernels as kernels

USING_COMPILED: bool = kernels.COMPILED

__all__ = ["USING_COMPILED", "kernels"]
