"""Kernel selection.

The compiled extension is preferred; set ``QVARIETY_PURE=1`` to force the
pure-Python fallback.
"""
from __future__ import annotations

import os

if os.environ.get("QVARIETY_PURE"):
    from qvariety import _kernels_py as _impl
else:
    try:
        from qvariety import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from qvariety import _kernels_py as _impl

mul_terms = _impl.mul_terms
bareiss_rank = _impl.bareiss_rank
IMPLEMENTATION: str = _impl.IMPLEMENTATION

__all__ = ["mul_terms", "bareiss_rank", "IMPLEMENTATION"]
