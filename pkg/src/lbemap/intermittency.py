"""Laminar/chaotic segmentation of orbits and the intermittency verdict.

An iterate is *near-regular* when it nearly recurs at lag ``period``,
looking either back or ahead: ``|x[n] - x[n - period]| < eps`` or
``|x[n + period] - x[n]| < eps``. A run of at least ``min_len`` near-regular iterates is a
laminar phase; everything else is chaotic.

The default period is 3. Just below the period-3 window of the logistic
map (r ~ 3.8284) the laminar episodes shadow the ghost 3-cycle, and a
period-3 test also catches an orbit resting on a fixed point. ``period=0``
selects the plain fixed-point band ``|x[n] - x_star| < eps`` instead.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import MismatchError
from .lbe import DivergenceSeries

DEFAULT_EPS = 0.05
DEFAULT_MIN_LEN = 10
DEFAULT_PERIOD = 3


class Phase(enum.Enum):
    LAMINAR = "laminar"
    CHAOTIC = "chaotic"


class Verdict(enum.Enum):
    TRUSTWORTHY_INTERMITTENCY = "TrustworthyIntermittency"
    ARTIFACT_SUSPECT = "ArtifactSuspect"
    NO_INTERMITTENCY = "NoIntermittency"


@dataclass(frozen=True)
class PhaseSegment:
    kind: Phase
    start: int
    end: int  # inclusive

    def __len__(self) -> int:
        return self.end - self.start + 1


Segmentation = tuple  # tuple[PhaseSegment, ...]


def near_regular(values, x_star: float, eps: float, period: int = DEFAULT_PERIOD) -> np.ndarray:
    """Pointwise near-regularity test, before the run-length filter."""
    v = np.asarray(values, dtype=np.float64)
    if period == 0:
        return np.abs(v - x_star) < eps
    if period < 0:
        raise ValueError("period must be >= 0")
    near = np.zeros(v.shape, dtype=bool)
    if v.size <= period:
        return near
    close = np.abs(v[period:] - v[:-period]) < eps
    near[period:] |= close
    near[:-period] |= close
    return near


def runs_at_least(near: np.ndarray, min_len: int) -> np.ndarray:
    """Keep only the True runs of ``near`` that are ``min_len`` or longer."""
    near = np.asarray(near, dtype=bool)
    mask = np.zeros_like(near)
    if not near.any():
        return mask
    edges = np.diff(near.astype(np.int8), prepend=0, append=0)
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1)  # exclusive
    for s, e in zip(starts, stops):
        if e - s >= min_len:
            mask[s:e] = True
    return mask


def laminar_mask(
    values,
    x_star: float,
    eps: float = DEFAULT_EPS,
    min_len: int = DEFAULT_MIN_LEN,
    period: int = DEFAULT_PERIOD,
) -> np.ndarray:
    """Boolean array, True where the iterate belongs to a laminar run."""
    if not eps > 0:
        raise ValueError("eps must be > 0")
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    return runs_at_least(near_regular(values, x_star, eps, period), min_len)


def segments_from_mask(mask: np.ndarray) -> Segmentation:
    mask = np.asarray(mask, dtype=bool)
    if mask.size == 0:
        return ()
    cuts = np.flatnonzero(mask[1:] != mask[:-1]) + 1
    bounds = np.concatenate(([0], cuts, [mask.size]))
    return tuple(
        PhaseSegment(Phase.LAMINAR if mask[s] else Phase.CHAOTIC, int(s), int(e) - 1)
        for s, e in zip(bounds[:-1], bounds[1:])
    )


def segments_to_mask(segments: Sequence[PhaseSegment]) -> np.ndarray:
    """Inverse of :func:`segments_from_mask`."""
    if not segments:
        return np.zeros(0, dtype=bool)
    mask = np.zeros(segments[-1].end + 1, dtype=bool)
    for seg in segments:
        if seg.kind is Phase.LAMINAR:
            mask[seg.start : seg.end + 1] = True
    return mask


def classify_phases(
    orbit,
    x_star: float,
    eps: float = DEFAULT_EPS,
    min_len: int = DEFAULT_MIN_LEN,
    period: int = DEFAULT_PERIOD,
) -> Segmentation:
    """Split an orbit (``PseudoOrbit`` or array of values) into phases."""
    values = getattr(orbit, "values", orbit)
    return segments_from_mask(laminar_mask(values, x_star, eps, min_len, period))


@dataclass(frozen=True, eq=False)
class IntermittencyReport:
    segments_a: Segmentation
    segments_b: Segmentation
    n_max: Optional[int]
    verdict: Verdict
    disagreement_indices: np.ndarray

    @property
    def first_disagreement(self) -> Optional[int]:
        return int(self.disagreement_indices[0]) if self.disagreement_indices.size else None


def _alternates_before(segments: Segmentation, limit: int) -> bool:
    kinds = {seg.kind for seg in segments if seg.end < limit}
    return kinds == {Phase.LAMINAR, Phase.CHAOTIC}


def _alternates(segments: Segmentation) -> bool:
    return {seg.kind for seg in segments} == {Phase.LAMINAR, Phase.CHAOTIC}


def build_report(seg_a: Segmentation, seg_b: Segmentation, series: DivergenceSeries) -> IntermittencyReport:
    """Compare two segmentations and judge the observed intermittency.

    - any index where one orbit is laminar and the other chaotic makes the
      run ArtifactSuspect;
    - otherwise, alternation of both orbits entirely before ``n_max`` (the
      whole run when ``n_max`` is None) is TrustworthyIntermittency;
    - alternation that only completes at or after ``n_max`` cannot be
      certified and is also ArtifactSuspect;
    - no alternation at all is NoIntermittency.
    """
    mask_a = segments_to_mask(seg_a)
    mask_b = segments_to_mask(seg_b)
    if mask_a.size != len(series) or mask_b.size != len(series):
        raise MismatchError(
            f"segmentations cover {mask_a.size}/{mask_b.size} indices, series has {len(series)}"
        )
    disagree = np.flatnonzero(mask_a != mask_b)
    limit = series.n_max if series.n_max is not None else len(series)
    if disagree.size:
        verdict = Verdict.ARTIFACT_SUSPECT
    elif _alternates_before(seg_a, limit) and _alternates_before(seg_b, limit):
        verdict = Verdict.TRUSTWORTHY_INTERMITTENCY
    elif _alternates(seg_a) or _alternates(seg_b):
        verdict = Verdict.ARTIFACT_SUSPECT
    else:
        verdict = Verdict.NO_INTERMITTENCY
    return IntermittencyReport(
        segments_a=tuple(seg_a),
        segments_b=tuple(seg_b),
        n_max=series.n_max,
        verdict=verdict,
        disagreement_indices=disagree,
    )
