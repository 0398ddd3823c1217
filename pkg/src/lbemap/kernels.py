"""Inner iteration loops for the two extension forms.

Each kernel has a pure-Python/numpy implementation (``*_py``) and, when
numba is importable, a compiled twin (``*_jit``). The public names bind to
the compiled twin unless ``LBEMAP_DISABLE_NUMBA`` is set. Both paths must
produce bit-identical orbits; every intermediate below is a separate,
correctly rounded binary64 operation.
"""

from __future__ import annotations

import numpy as np

from . import _accel

FORM_A = 0
FORM_B = 1


def _step_py(form, r, x):
    if form == 0:
        rx = r * x
        xx = x * x
        rxx = r * xx
        return rx - rxx
    rx = r * x
    omx = 1.0 - x
    return rx * omx


def _iterate_py(form, r, out, lo, hi):
    """Fill ``out[1:]`` from ``out[0]``; return first out-of-range index or -1."""
    x = float(out[0])
    values = [x]
    fault = -1
    for n in range(1, out.shape[0]):
        if form == 0:
            rx = r * x
            xx = x * x
            rxx = r * xx
            x = rx - rxx
        else:
            rx = r * x
            omx = 1.0 - x
            x = rx * omx
        values.append(x)
        if not (lo <= x <= hi):
            fault = n
            break
    out[: len(values)] = values
    return fault


def _iterate_batch_py(form, r, x0, n, lo, hi):
    """Iterate many (r, x0) pairs at once; vectorised over the batch axis.

    Returns ``(orbits, faults)`` with ``orbits`` shaped ``(n + 1, k)`` and
    ``faults[j]`` the first out-of-range index of column ``j`` (or -1).
    Columns that fault keep iterating; their later values are meaningless.
    """
    k = r.shape[0]
    out = np.empty((n + 1, k), dtype=np.float64)
    faults = np.full(k, -1, dtype=np.int64)
    x = x0.astype(np.float64, copy=True)
    out[0] = x
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(1, n + 1):
            if form == 0:
                rx = r * x
                xx = x * x
                rxx = r * xx
                x = rx - rxx
            else:
                rx = r * x
                omx = 1.0 - x
                x = rx * omx
            out[i] = x
            bad = ~((x >= lo) & (x <= hi)) & (faults < 0)
            if bad.any():
                faults[bad] = i
    return out, faults


def _iterate_batch_loop(form, r, x0, n, lo, hi):
    k = r.shape[0]
    out = np.empty((n + 1, k), dtype=np.float64)
    faults = np.full(k, -1, dtype=np.int64)
    x = x0.copy()
    out[0, :] = x
    # time-major so each row of ``out`` is written contiguously
    for i in range(1, n + 1):
        for j in range(k):
            xj = x[j]
            if form == 0:
                rx = r[j] * xj
                xx = xj * xj
                rxx = r[j] * xx
                xj = rx - rxx
            else:
                rx = r[j] * xj
                omx = 1.0 - xj
                xj = rx * omx
            x[j] = xj
            out[i, j] = xj
            if faults[j] < 0 and not (lo <= xj <= hi):
                faults[j] = i
    return out, faults


def _iterate_loop(form, r, out, lo, hi):
    x = out[0]
    for n in range(1, out.shape[0]):
        if form == 0:
            rx = r * x
            xx = x * x
            rxx = r * xx
            x = rx - rxx
        else:
            rx = r * x
            omx = 1.0 - x
            x = rx * omx
        out[n] = x
        if not (lo <= x <= hi):
            return n
    return -1


if _accel.HAVE_NUMBA:
    _step_jit = _accel.njit(_step_py)
    _iterate_jit = _accel.njit(_iterate_loop)
    _iterate_batch_jit = _accel.njit(_iterate_batch_loop)
else:  # pragma: no cover
    _step_jit = _iterate_jit = _iterate_batch_jit = None

if _accel.USE_NUMBA:
    iterate_into = _iterate_jit
    iterate_batch = _iterate_batch_jit
else:
    iterate_into = _iterate_py
    iterate_batch = _iterate_batch_py
