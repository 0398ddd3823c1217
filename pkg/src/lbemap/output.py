"""CSV, SVG and summary-table writers.

All writers are deterministic (no timestamps, fixed float formatting) and
write through a temporary file in the target directory, so a failed run
never leaves a truncated file behind.
"""

from __future__ import annotations

import csv
import io
import math
import os
import re
import tempfile
from pathlib import Path
from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import MismatchError
from .intermittency import IntermittencyReport, Phase, PhaseSegment, segments_to_mask
from .lbe import DivergenceSeries
from .mapcore import PseudoOrbit

CSV_HEADER = ("n", "x_a", "x_b", "delta", "digits", "phase_a", "phase_b", "within_n_max")
LOG_FLOOR = -18.0  # log10(delta) sentinel for delta == 0 or below


def fmt_float(x: float) -> str:
    """17 significant digits: round-trips any binary64."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def slug(label: str) -> str:
    s = re.sub(r"[^0-9A-Za-z.]+", "_", label).strip("_")
    return "x0_" + (s or "unnamed")


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def csv_text(
    orbit_a: PseudoOrbit,
    orbit_b: PseudoOrbit,
    series: DivergenceSeries,
    segments_a: Sequence[PhaseSegment],
    segments_b: Sequence[PhaseSegment],
    report: IntermittencyReport,
) -> str:
    n_rows = len(series)
    mask_a = segments_to_mask(segments_a)
    mask_b = segments_to_mask(segments_b)
    if not (len(orbit_a) == len(orbit_b) == mask_a.size == mask_b.size == n_rows):
        raise MismatchError("orbit, series and segmentation lengths differ")
    n_max = report.n_max
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    xa, xb = orbit_a.values, orbit_b.values
    for n in range(n_rows):
        w.writerow(
            (
                n,
                fmt_float(xa[n]),
                fmt_float(xb[n]),
                fmt_float(series.delta[n]),
                fmt_float(series.digits[n]),
                Phase.LAMINAR.value if mask_a[n] else Phase.CHAOTIC.value,
                Phase.LAMINAR.value if mask_b[n] else Phase.CHAOTIC.value,
                "true" if n_max is None or n < n_max else "false",
            )
        )
    return buf.getvalue()


def emit_csv(path, orbit_a, orbit_b, series, segments_a, segments_b, report) -> Path:
    path = Path(path)
    atomic_write(path, csv_text(orbit_a, orbit_b, series, segments_a, segments_b, report))
    return path


def read_csv(path) -> dict[str, list[str]]:
    """Column-wise read-back of an emitted CSV (strings, unconverted)."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return {name: [row[i] for row in body] for i, name in enumerate(header)}


# --- SVG -----------------------------------------------------------------

_W, _H = 820, 300
_ML, _MR, _MT, _MB = 60, 20, 30, 40
_COLOR_A, _COLOR_B = "#1f77b4", "#d62728"


def _c(v: float) -> str:
    return f"{v:.2f}"


class _Panel:
    def __init__(self, top: float, x_max: float, y_lo: float, y_hi: float):
        self.top = top
        self.x_max = max(x_max, 1.0)
        self.y_lo, self.y_hi = y_lo, y_hi
        self.pw = _W - _ML - _MR
        self.ph = _H - _MT - _MB

    def x(self, n: float) -> float:
        return _ML + self.pw * n / self.x_max

    def y(self, v: float) -> float:
        frac = (v - self.y_lo) / (self.y_hi - self.y_lo)
        return self.top + _MT + self.ph * (1.0 - frac)

    def frame(self, title: str, y_label: str, y_ticks: Iterable[float], x_ticks: Iterable[int]) -> list[str]:
        x0, y0 = _ML, self.top + _MT
        out = [
            f'<rect x="{x0}" y="{_c(y0)}" width="{self.pw}" height="{self.ph}" fill="none" stroke="#000" stroke-width="1"/>',
            f'<text x="{_W / 2:.0f}" y="{_c(self.top + 18)}" text-anchor="middle" font-size="14">{escape(title)}</text>',
            f'<text x="14" y="{_c(y0 + self.ph / 2)}" font-size="12" text-anchor="middle" '
            f'transform="rotate(-90 14 {_c(y0 + self.ph / 2)})">{escape(y_label)}</text>',
            f'<text x="{_c(_ML + self.pw / 2)}" y="{_c(y0 + self.ph + 32)}" font-size="12" text-anchor="middle">n</text>',
        ]
        for t in y_ticks:
            yy = self.y(t)
            out.append(f'<line x1="{_ML - 4}" y1="{_c(yy)}" x2="{_ML}" y2="{_c(yy)}" stroke="#000"/>')
            out.append(f'<text x="{_ML - 6}" y="{_c(yy + 4)}" font-size="10" text-anchor="end">{t:g}</text>')
        for t in x_ticks:
            xx = self.x(t)
            yb = y0 + self.ph
            out.append(f'<line x1="{_c(xx)}" y1="{_c(yb)}" x2="{_c(xx)}" y2="{_c(yb + 4)}" stroke="#000"/>')
            out.append(f'<text x="{_c(xx)}" y="{_c(yb + 16)}" font-size="10" text-anchor="middle">{t}</text>')
        return out

    def trace(self, ys: np.ndarray, color: str, dash: str = "") -> list[str]:
        if ys.size == 1:
            return [f'<circle cx="{_c(self.x(0))}" cy="{_c(self.y(float(ys[0])))}" r="3" fill="{color}"/>']
        pts = " ".join(f"{_c(self.x(i))},{_c(self.y(float(v)))}" for i, v in enumerate(ys))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        return [f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="0.8"{extra}/>']


def _x_ticks(n_last: int) -> list[int]:
    if n_last <= 0:
        return [0]
    step = 10 ** int(math.floor(math.log10(n_last)))
    if n_last / step < 3:
        step = max(step // 2, 1)
    return list(range(0, n_last + 1, step))


def svg_text(
    series: DivergenceSeries,
    segments_a: Sequence[PhaseSegment],
    segments_b: Sequence[PhaseSegment],
    x_star: float,
    orbit_a: Optional[np.ndarray] = None,
    orbit_b: Optional[np.ndarray] = None,
    title: str = "",
) -> str:
    """Two stacked charts: orbit overlay and log10(delta) against n."""
    n_pts = len(series)
    if n_pts == 0:
        raise ValueError("cannot plot an empty series")
    n_last = n_pts - 1
    ticks = _x_ticks(n_last)
    body: list[str] = []

    top = _Panel(0, n_last, 0.0, 1.0)
    band_h = top.ph / 2
    for segs, row, color in ((segments_a, 0, _COLOR_A), (segments_b, 1, _COLOR_B)):
        for seg in segs:
            if seg.kind is not Phase.LAMINAR:
                continue
            x1, x2 = top.x(seg.start - 0.5 if n_last else 0), top.x(seg.end + 0.5 if n_last else 1)
            x1, x2 = max(x1, _ML), min(x2, _ML + top.pw)
            body.append(
                f'<rect x="{_c(x1)}" y="{_c(_MT + row * band_h)}" width="{_c(x2 - x1)}" '
                f'height="{_c(band_h)}" fill="{color}" fill-opacity="0.12"/>'
            )
    body += top.frame(f"{title} orbits (A solid, B dashed; shaded: laminar A top, B bottom)", "x_n",
                      [0, 0.25, 0.5, 0.75, 1.0], ticks)
    ys = top.y(x_star)
    body.append(f'<line x1="{_ML}" y1="{_c(ys)}" x2="{_ML + top.pw}" y2="{_c(ys)}" stroke="#2ca02c" stroke-dasharray="4 3"/>')
    body.append(f'<text x="{_ML + top.pw - 2}" y="{_c(ys - 3)}" font-size="10" text-anchor="end" fill="#2ca02c">x* = {x_star:.6f}</text>')
    if orbit_a is not None:
        body += top.trace(np.asarray(orbit_a), _COLOR_A)
    if orbit_b is not None:
        body += top.trace(np.asarray(orbit_b), _COLOR_B, "3 2")

    bottom = _Panel(_H, n_last, LOG_FLOOR, 0.0)
    body += bottom.frame(f"{title} lower bound error", "log10(delta)", [-18, -15, -12, -9, -6, -3, 0], ticks)
    delta = np.asarray(series.delta)
    with np.errstate(divide="ignore"):
        logd = np.where(delta > 0, np.log10(np.where(delta > 0, delta, 1.0)), LOG_FLOOR)
    logd = np.clip(logd, LOG_FLOOR, 0.0)
    body += bottom.trace(logd, "#000")
    if not (delta > 0).any():
        body.append(f'<text x="{_c(_ML + bottom.pw / 2)}" y="{_c(_H + _MT + bottom.ph / 2)}" font-size="14" '
                    f'text-anchor="middle" fill="#555">no divergence</text>')
    if series.n_max is not None:
        xm = bottom.x(series.n_max)
        body.append(f'<line x1="{_c(xm)}" y1="{_c(_H + _MT)}" x2="{_c(xm)}" y2="{_c(_H + _MT + bottom.ph)}" stroke="#ff7f0e" stroke-width="1.5"/>')
        body.append(f'<text x="{_c(xm + 4)}" y="{_c(_H + _MT + bottom.ph - 6)}" font-size="11" fill="#ff7f0e">n_max = {series.n_max}</text>')
    else:
        body.append(f'<text x="{_ML + 6}" y="{_c(_H + _MT + bottom.ph - 6)}" font-size="11" fill="#ff7f0e">n_max: none</text>')

    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{2 * _H}" '
            f'viewBox="0 0 {_W} {2 * _H}" font-family="sans-serif">')
    return "\n".join([head, f'<rect width="{_W}" height="{2 * _H}" fill="#fff"/>', *body, "</svg>"]) + "\n"


def emit_svg(path, series, segments_a, segments_b, x_star, orbit_a=None, orbit_b=None, title="") -> Path:
    path = Path(path)
    atomic_write(path, svg_text(series, segments_a, segments_b, x_star, orbit_a, orbit_b, title))
    return path


# --- summary -------------------------------------------------------------

SUMMARY_COLUMNS = ("x0", "n_max", "verdict", "first_disagreement", "oracle")


def summary_text(rows: Sequence[Sequence[str]], preamble: Sequence[str] = ()) -> str:
    table = [SUMMARY_COLUMNS, *[tuple(str(c) for c in row) for row in rows]]
    widths = [max(len(r[i]) for r in table) for i in range(len(SUMMARY_COLUMNS))]
    lines = [*preamble]
    for k, row in enumerate(table):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
