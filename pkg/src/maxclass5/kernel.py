"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy fallback is
always available.  MAXCLASS5_BACKEND=python|c forces a choice (useful for
benchmarks and cross-checking).
"""

from __future__ import annotations

import os

from . import _kernel_py

_FORCED = os.environ.get("MAXCLASS5_BACKEND", "").strip().lower()

if _FORCED == "python":
    _impl = _kernel_py
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[no-redef]
    except ImportError:
        if _FORCED == "c":
            raise ImportError(
                "MAXCLASS5_BACKEND=c requested but the compiled kernel is "
                "not available; reinstall with a C toolchain present")
        _impl = _kernel_py

BACKEND = _impl.BACKEND
make_kernel = _impl.make_kernel


def available_backends():
    out = {"python": _kernel_py}
    try:
        from . import _kernel_c
        out["c"] = _kernel_c
    except ImportError:
        pass
    return out
