"""Selects the compiled kernel extension, falling back to pure Python.

Set ``EXCLUSIVITY_PURE_PYTHON=1`` to force the fallback (used by the test
suite and the benchmark to exercise both paths).
"""
import os

from . import _fallback

try:
    from . import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

fallback = _fallback

if compiled is not None and os.environ.get("EXCLUSIVITY_PURE_PYTHON", "") in ("", "0"):
    kernels = compiled
    NAME = "compiled"
else:
    kernels = _fallback
    NAME = "python"
