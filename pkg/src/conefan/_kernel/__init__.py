"""Kernel backend selection.

Imports the compiled fast kernel when it was built, otherwise the pure
Python reference.  Set CONEFAN_PURE_PYTHON=1 to force the fallback even
when the extension exists (used by the cross-backend tests and benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("CONEFAN_PURE_PYTHON"):
    from . import pykernel as _impl
else:
    try:
        from . import fastkernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pykernel as _impl

rref_frac = _impl.rref_frac
simplex_core = _impl.simplex_core
dd_step = _impl.dd_step
BACKEND = _impl.BACKEND_NAME
