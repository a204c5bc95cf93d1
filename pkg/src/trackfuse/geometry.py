"""Overlap geometry: box IoU, per-frame IoU profiles and spatio-temporal IoU."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .model import BoundingBox, Trajectory


@dataclass(frozen=True)
class IoUProfile:
    """Frame-level spatial IoU of two trajectories over their common frames."""

    entries: Tuple[Tuple[int, float], ...]

    def __post_init__(self) -> None:
        prev = None
        for frame, iou in self.entries:
            if prev is not None and frame <= prev:
                raise ValueError("profile frames must be strictly increasing")
            if not 0.0 <= iou <= 1.0:
                raise ValueError(f"iou outside [0, 1]: {iou}")
            prev = frame

    def __len__(self) -> int:
        return len(self.entries)

    def count_above(self, threshold: float) -> int:
        """Number of frames whose IoU strictly exceeds the threshold."""
        return sum(1 for _, iou in self.entries if iou > threshold)


def box_iou(a: BoundingBox, b: BoundingBox) -> float:
    """Intersection over union of two boxes; 0 when they do not overlap."""
    if a == b:
        return 1.0
    ix = min(a.right, b.right) - max(a.x, b.x)
    if ix <= 0:
        return 0.0
    iy = min(a.bottom, b.bottom) - max(a.y, b.y)
    if iy <= 0:
        return 0.0
    inter = ix * iy
    # rounding in right/bottom can push the ratio a hair past 1
    return min(inter / (a.area + b.area - inter), 1.0)


def spatial_iou_profile(ti: Trajectory, tj: Trajectory) -> IoUProfile:
    """Per-frame IoU at every frame where both trajectories have a box."""
    common = sorted(ti.detections.keys() & tj.detections.keys())
    entries = tuple(
        (f, box_iou(ti.detections[f].box, tj.detections[f].box)) for f in common
    )
    return IoUProfile(entries)


def st_iou(ti: Trajectory, tj: Trajectory, thr_s: float) -> float:
    """Spatio-temporal IoU of two trajectories.

    Counts the common frames whose box IoU strictly exceeds ``thr_s`` and
    divides by the length of the shorter trajectory (inclusive frame span),
    so a short track fully covered by a long one still scores 1. Returns 0
    when the trajectories never share a frame.
    """
    if ti.stop < tj.start or tj.stop < ti.start:
        return 0.0
    profile = spatial_iou_profile(ti, tj)
    if not profile.entries:
        return 0.0
    inter = profile.count_above(thr_s)
    return inter / min(ti.length, tj.length)
