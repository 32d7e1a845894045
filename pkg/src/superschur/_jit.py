"""Optional numba acceleration.

Set ``SUPERSCHUR_JIT=0`` to force the pure numpy code paths.  When numba is
not importable the fallback is selected automatically.
"""

import os

_FLAG = os.environ.get("SUPERSCHUR_JIT", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

JIT_ENABLED = numba is not None and _FLAG not in {"0", "false", "no", "off"}


def njit(fn):
    """Compile ``fn`` with numba when enabled, otherwise return it untouched."""
    if JIT_ENABLED:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn
