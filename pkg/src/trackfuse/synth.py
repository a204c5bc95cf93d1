"""Synthetic tracking scenarios: ground truth plus degraded tracker outputs.

Ground-truth objects move on piecewise-linear, bounded-velocity paths, one
object per horizontal band of the arena (bands keep distinct objects from
colliding, which keeps fused results easy to reason about). Tracker outputs
are the ground truth pushed through a per-tracker degradation: Gaussian
position jitter, independent per-frame drops, one contiguous dropped
segment, and identity relabeling at random switch events.

Everything is a pure function of the spec. Randomness comes from the
SplitMix64 streams in :mod:`trackfuse.rng`; the draw order is fixed (see
``_degrade``) so a seed pins the scenario byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .model import BoundingBox, Detection, TrackSet, Trajectory
from .rng import SplitMix64, stream

WAYPOINT_SPACING = 50  # frames between direction changes
MAX_SPEED = 2.5  # pixels per frame, per axis
BOX_MIN = 24.0  # box side range, pixels
BOX_MAX = 48.0


@dataclass(frozen=True)
class TrackerDegradation:
    """Error model applied to ground truth to fake one tracker's output."""

    idswitch_rate: float = 0.0  # per-frame probability of starting a new id
    drop_rate: float = 0.0  # per-frame probability of losing the box
    jitter: float = 0.0  # std-dev of Gaussian position noise, pixels
    segment_drop: int = 0  # expected length of one dropped segment, frames

    def __post_init__(self) -> None:
        for name in ("idswitch_rate", "drop_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if self.jitter < 0:
            raise ValueError(f"jitter must be >= 0, got {self.jitter}")
        if self.segment_drop < 0:
            raise ValueError(f"segment_drop must be >= 0, got {self.segment_drop}")


DEFAULT_DEGRADATION = TrackerDegradation(
    idswitch_rate=0.01, drop_rate=0.05, jitter=1.5, segment_drop=10
)


@dataclass(frozen=True)
class ScenarioSpec:
    """Size, arena, seed and per-tracker degradations of one scenario."""

    num_objects: int = 4
    num_frames: int = 200
    arena_w: int = 800
    arena_h: int = 600
    seed: int = 0
    trackers: Tuple[TrackerDegradation, ...] = ()

    def __post_init__(self) -> None:
        if self.num_objects < 1:
            raise ValueError(f"num_objects must be >= 1, got {self.num_objects}")
        if self.num_frames < 1:
            raise ValueError(f"num_frames must be >= 1, got {self.num_frames}")
        if self.arena_w < 96:
            raise ValueError(f"arena width must be >= 96, got {self.arena_w}")
        if self.arena_h < 16 * self.num_objects:
            raise ValueError(
                f"arena height {self.arena_h} too small for {self.num_objects} objects"
            )


def _clamp(v: float, lo: float, hi: float) -> float:
    return lo if v < lo else hi if v > hi else v


def _generate_gt(spec: ScenarioSpec) -> TrackSet:
    """Ground truth: one trajectory per object, ids 1..num_objects.

    Draw order per object: box width, box height, start x, start y, then
    per waypoint an x step and a y step.
    """
    rng = stream(spec.seed, 0)
    band_h = spec.arena_h / spec.num_objects
    trajectories = []
    for i in range(spec.num_objects):
        w = rng.uniform(BOX_MIN, BOX_MAX)
        h = min(rng.uniform(BOX_MIN, BOX_MAX), 0.75 * band_h)
        band_lo = i * band_h
        x_hi = spec.arena_w - w
        y_lo, y_hi = band_lo, band_lo + band_h - h

        waypoint_frames = list(range(1, spec.num_frames + 1, WAYPOINT_SPACING))
        if waypoint_frames[-1] != spec.num_frames:
            waypoint_frames.append(spec.num_frames)
        x = rng.uniform(0.0, x_hi)
        y = rng.uniform(y_lo, y_hi)
        points = [(x, y)]
        for prev_f, next_f in zip(waypoint_frames, waypoint_frames[1:]):
            step = MAX_SPEED * (next_f - prev_f)
            x = _clamp(x + rng.uniform(-step, step), 0.0, x_hi)
            y = _clamp(y + rng.uniform(-step, step), y_lo, y_hi)
            points.append((x, y))

        dets: Dict[int, Detection] = {}
        for (f0, (x0, y0)), (f1, (x1, y1)) in zip(
            zip(waypoint_frames, points), zip(waypoint_frames[1:], points[1:])
        ):
            for f in range(f0, f1):
                a = (f - f0) / (f1 - f0)
                dets[f] = Detection(
                    f, BoundingBox(x0 + a * (x1 - x0), y0 + a * (y1 - y0), w, h)
                )
        last = waypoint_frames[-1]
        dets[last] = Detection(last, BoundingBox(points[-1][0], points[-1][1], w, h))
        trajectories.append(Trajectory(i + 1, dets))
    return TrackSet("synthetic", trajectories)


def _degrade(gt: TrackSet, deg: TrackerDegradation, rng: SplitMix64, sequence: str) -> TrackSet:
    """Apply one tracker's error model to the ground truth.

    Objects are processed in ascending gt id. Per object the draws are:
    the dropped-segment length (uniform in [1, 2*segment_drop - 1]) and its
    start frame, when segment_drop > 0 and the window fits the interior of
    the track; then, for each detected frame outside that window, exactly
    four draws in order: drop decision, x jitter, y jitter, switch decision.
    The switch decision is ignored on an object's first surviving frame.
    Output ids are 1..K in (object, id segment) order.
    """
    trajectories: List[Trajectory] = []
    next_id = 1
    for traj in sorted(gt.trajectories, key=lambda t: t.id):
        window: set[int] = set()
        if deg.segment_drop > 0:
            length = rng.randint(1, max(1, 2 * deg.segment_drop - 1))
            lo, hi = traj.start + 1, traj.stop - length
            if lo <= hi:
                s = rng.randint(lo, hi)
                window = set(range(s, s + length))

        segments: List[List[Detection]] = []
        current: List[Detection] = []
        for f, det in traj.detections.items():
            if f in window:
                continue
            dropped = rng.bernoulli(deg.drop_rate)
            dx = rng.normal(0.0, deg.jitter)
            dy = rng.normal(0.0, deg.jitter)
            switched = rng.bernoulli(deg.idswitch_rate)
            if dropped:
                continue
            if switched and current:
                segments.append(current)
                current = []
            box = BoundingBox(det.box.x + dx, det.box.y + dy, det.box.w, det.box.h)
            current.append(Detection(f, box, det.confidence))
        if current:
            segments.append(current)

        for segment in segments:
            trajectories.append(Trajectory.from_detections(next_id, segment))
            next_id += 1
    return TrackSet(sequence, trajectories)


def generate_scenario(spec: ScenarioSpec) -> Tuple[TrackSet, List[TrackSet]]:
    """Ground truth plus one degraded output per entry in ``spec.trackers``.

    The ground truth uses the substream (seed, 0) and tracker k the
    substream (seed, k + 1), so adding a tracker never changes the others.
    """
    gt = _generate_gt(spec)
    trackers = [
        _degrade(gt, deg, stream(spec.seed, k + 1), f"tracker_{k + 1}")
        for k, deg in enumerate(spec.trackers)
    ]
    return gt, trackers


def _half_degraded(
    gt: TrackSet, degrade_parity: int, rng: SplitMix64, sequence: str
) -> TrackSet:
    """Copy the gt, degrading only objects whose 0-based index has the parity.

    A degraded object gets one identity switch at its midpoint frame plus
    one dropped window (length drawn from [8, 16]) in each half; the other
    objects are copied verbatim. Ids are 1..K in (object, fragment) order.
    """
    trajectories: List[Trajectory] = []
    next_id = 1
    for idx, traj in enumerate(sorted(gt.trajectories, key=lambda t: t.id)):
        if idx % 2 != degrade_parity:
            trajectories.append(traj.with_id(next_id))
            next_id += 1
            continue
        mid = (traj.start + traj.stop + 1) // 2
        window: set[int] = set()
        for lo, hi in ((traj.start, mid - 1), (mid, traj.stop)):
            length = rng.randint(8, 16)
            s_lo, s_hi = lo + 1, hi - length
            if s_lo <= s_hi:
                s = rng.randint(s_lo, s_hi)
                window.update(range(s, s + length))
        for lo, hi in ((traj.start, mid - 1), (mid, traj.stop)):
            dets = [
                det
                for f, det in traj.detections.items()
                if lo <= f <= hi and f not in window
            ]
            if dets:
                trajectories.append(Trajectory.from_detections(next_id, dets))
                next_id += 1
    return TrackSet(sequence, trajectories)


def complementary_pair(spec: ScenarioSpec) -> Tuple[TrackSet, TrackSet, TrackSet]:
    """Two trackers with complementary failures on the same ground truth.

    Tracker A is perfect on even-indexed objects (0-based) and fragments the
    odd ones; tracker B is the mirror image. Fusing the two can recover the
    complete, switch-free tracking of every object.
    """
    if spec.num_objects < 2:
        raise ValueError("complementary_pair needs at least 2 objects")
    gt = _generate_gt(spec)
    tracker_a = _half_degraded(gt, 1, stream(spec.seed, 101), "tracker_1")
    tracker_b = _half_degraded(gt, 0, stream(spec.seed, 102), "tracker_2")
    return gt, tracker_a, tracker_b


_DEGRADATION_KEYS = {
    "idswitch": "idswitch_rate",
    "drop": "drop_rate",
    "jitter": "jitter",
    "segment": "segment_drop",
}


def _parse_degradation(text: str, line_no: int) -> TrackerDegradation:
    kwargs: Dict[str, float | int] = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if not sep or key not in _DEGRADATION_KEYS:
            raise ValueError(
                f"config line {line_no}: expected tracker entries like "
                f"idswitch=0.01 drop=0.05 jitter=1.5 segment=10, got {token!r}"
            )
        field = _DEGRADATION_KEYS[key]
        try:
            kwargs[field] = int(value) if field == "segment_drop" else float(value)
        except ValueError:
            raise ValueError(f"config line {line_no}: malformed number {value!r}") from None
    return TrackerDegradation(**kwargs)


def parse_scenario_config(text: str) -> ScenarioSpec:
    """Parse a plain-text key=value scenario description.

    Recognized keys: ``objects``, ``frames``, ``seed``, ``arena`` (``WxH``)
    and one ``tracker`` line per tracker, whose value holds space-separated
    ``idswitch= drop= jitter= segment=`` entries (missing entries are 0).
    ``#`` starts a comment; blank lines are ignored.
    """
    fields: Dict[str, int] = {}
    trackers: List[TrackerDegradation] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"config line {line_no}: expected key=value")
        key, value = key.strip().lower(), value.strip()
        try:
            if key == "objects":
                fields["num_objects"] = int(value)
            elif key == "frames":
                fields["num_frames"] = int(value)
            elif key == "seed":
                fields["seed"] = int(value)
            elif key == "arena":
                w, sep2, h = value.lower().partition("x")
                if not sep2:
                    raise ValueError("expected WxH")
                fields["arena_w"] = int(w)
                fields["arena_h"] = int(h)
            elif key == "tracker":
                trackers.append(_parse_degradation(value, line_no))
            else:
                raise ValueError(f"config line {line_no}: unknown key {key!r}")
        except ValueError as exc:
            if str(exc).startswith("config line"):
                raise
            raise ValueError(f"config line {line_no}: {exc}") from None
    return ScenarioSpec(trackers=tuple(trackers), **fields)
