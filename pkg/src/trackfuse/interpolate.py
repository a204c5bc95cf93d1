"""Gap filling inside trajectories by linear interpolation."""

from __future__ import annotations

from .model import BoundingBox, Detection, Trajectory


def linear_interpolate(track: Trajectory, max_gap: int) -> Trajectory:
    """Fill internal gaps of up to ``max_gap`` missing frames.

    For consecutive detected frames f0 < f1 with g = f1 - f0 - 1 missing
    frames in between, 1 <= g <= max_gap, boxes at f0+1..f1-1 are produced
    by coordinate-wise linear interpolation of the endpoint boxes (the
    confidence is interpolated the same way). Larger gaps are left alone and
    nothing is extrapolated beyond the first or last detection. Original
    detections are never changed, so applying this twice equals applying it
    once.
    """
    if max_gap < 1:
        raise ValueError(f"max_gap must be >= 1, got {max_gap}")
    frames = track.frames()
    dets = dict(track.detections)
    for f0, f1 in zip(frames, frames[1:]):
        gap = f1 - f0 - 1
        if gap == 0 or gap > max_gap:
            continue
        d0, d1 = track.detections[f0], track.detections[f1]
        b0, b1 = d0.box, d1.box
        for f in range(f0 + 1, f1):
            a = (f - f0) / (f1 - f0)
            box = BoundingBox(
                b0.x + a * (b1.x - b0.x),
                b0.y + a * (b1.y - b0.y),
                b0.w + a * (b1.w - b0.w),
                b0.h + a * (b1.h - b0.h),
            )
            conf = d0.confidence + a * (d1.confidence - d0.confidence)
            dets[f] = Detection(f, box, conf, d0.source)
    return Trajectory(track.id, dets)
