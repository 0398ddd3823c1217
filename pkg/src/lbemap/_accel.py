"""Optional numba acceleration.

Set ``LBEMAP_DISABLE_NUMBA=1`` to run every kernel through its pure
Python / numpy fallback. The flag is read once, at import time.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("LBEMAP_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    import numba as _numba
except ImportError:  # pragma: no cover - exercised only where numba is absent
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(func):
    """Compile ``func`` in nopython mode, or return it unchanged without numba.

    fastmath stays off: fast-math flags allow FMA contraction and
    reassociation, which would change the rounding of the map forms.
    """
    if _numba is None:
        return func
    return _numba.njit(fastmath=False, cache=False, nogil=True)(func)
