"""Command line: fuse tracking result files, score them, generate scenarios."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import List, Optional

from .ensemble import EnsembleConfig, MergeMode, ensemble_pipeline
from .interpolate import linear_interpolate
from .io import ParseError, load_trackset, save_trackset
from .metrics import EvalReport, evaluate
from .model import TrackSet
from .synth import (
    DEFAULT_DEGRADATION,
    ScenarioSpec,
    complementary_pair,
    generate_scenario,
    parse_scenario_config,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2


class _InputError(Exception):
    """Unreadable or unparseable input file."""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with code 1 on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str, is_ground_truth: bool = False) -> TrackSet:
    try:
        return load_trackset(path, is_ground_truth)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except ParseError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def cmd_merge(args: argparse.Namespace) -> int:
    try:
        cfg = EnsembleConfig(
            thr_s=args.thr_s,
            thr_t=args.thr_t,
            thr_nms=args.thr_nms,
            thr_len=args.thr_len,
            merge_mode=MergeMode(args.mode),
        )
        if args.interpolate is not None and args.interpolate < 1:
            raise ValueError(f"--interpolate must be >= 1, got {args.interpolate}")
    except ValueError as exc:
        print(f"trackfuse merge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        tracksets = [_load(path) for path in args.input]
    except _InputError as exc:
        print(f"trackfuse merge: error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    fused = ensemble_pipeline(tracksets, cfg)
    if args.interpolate is not None:
        fused = TrackSet(
            fused.sequence,
            [linear_interpolate(t, args.interpolate) for t in fused.trajectories],
        )
    try:
        save_trackset(args.output, fused)
    except OSError as exc:
        print(f"trackfuse merge: error: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def _report_rows(report: EvalReport) -> List[tuple[str, object]]:
    return [
        ("num_gt", report.num_gt),
        ("FP", report.fp),
        ("FN", report.fn),
        ("IDSW", report.idsw),
        ("MOTA", report.mota),
        ("IDTP", report.idtp),
        ("IDFP", report.idfp),
        ("IDFN", report.idfn),
        ("IDF1", report.idf1),
    ]


def _fmt(value: object) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def cmd_eval(args: argparse.Namespace) -> int:
    if not 0.0 < args.iou <= 1.0:
        print(f"trackfuse eval: error: --iou must be in (0, 1], got {args.iou}", file=sys.stderr)
        return EXIT_USAGE
    try:
        gt = _load(args.gt, is_ground_truth=True)
        pred = _load(args.pred)
    except _InputError as exc:
        print(f"trackfuse eval: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if gt.num_detections == 0:
        print(f"trackfuse eval: error: ground truth {args.gt} contains no boxes", file=sys.stderr)
        return EXIT_INPUT

    report = evaluate(gt, pred, args.iou)
    rows = _report_rows(report)
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {_fmt(value)}")
    print()
    for name, value in rows:
        print(f"#metric {name.lower()}={_fmt(value)}")
    return EXIT_OK


def _build_spec(args: argparse.Namespace) -> ScenarioSpec:
    if args.config is not None:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise _InputError(f"cannot read {args.config}: {exc.strerror or exc}") from exc
        try:
            spec = parse_scenario_config(text)
        except ValueError as exc:
            raise _InputError(f"{args.config}: {exc}") from exc
    else:
        spec = ScenarioSpec()

    overrides = {}
    if args.objects is not None:
        overrides["num_objects"] = args.objects
    if args.frames is not None:
        overrides["num_frames"] = args.frames
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.arena is not None:
        w, sep, h = args.arena.lower().partition("x")
        try:
            if not sep:
                raise ValueError
            overrides["arena_w"] = int(w)
            overrides["arena_h"] = int(h)
        except ValueError:
            raise ValueError(f"--arena expects WxH, got {args.arena!r}") from None
    if args.trackers is not None:
        if args.trackers < 0:
            raise ValueError(f"--trackers must be >= 0, got {args.trackers}")
        overrides["trackers"] = (DEFAULT_DEGRADATION,) * args.trackers
    elif not spec.trackers and not args.complementary:
        overrides["trackers"] = (DEFAULT_DEGRADATION,) * 2
    return dataclasses.replace(spec, **overrides)


def cmd_synth(args: argparse.Namespace) -> int:
    try:
        spec = _build_spec(args)
    except _InputError as exc:
        print(f"trackfuse synth: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"trackfuse synth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.complementary:
            gt, tracker_a, tracker_b = complementary_pair(spec)
            outputs = [("gt.txt", gt), ("tracker_1.txt", tracker_a), ("tracker_2.txt", tracker_b)]
        else:
            gt, tracker_sets = generate_scenario(spec)
            outputs = [("gt.txt", gt)]
            outputs += [(f"tracker_{k + 1}.txt", ts) for k, ts in enumerate(tracker_sets)]
    except ValueError as exc:
        print(f"trackfuse synth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    outdir = Path(args.output)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        for name, ts in outputs:
            save_trackset(outdir / name, ts)
            print(f"wrote {outdir / name}")
    except OSError as exc:
        print(f"trackfuse synth: error: cannot write to {outdir}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="trackfuse",
        description="Fuse multi-object tracking result files, score them against "
        "ground truth, and generate synthetic benchmark scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("merge", help="fuse one or more tracking result files")
    p.add_argument("-i", "--input", action="append", required=True, metavar="FILE",
                   help="input result file in MOTChallenge format (repeatable)")
    p.add_argument("-o", "--output", required=True, metavar="FILE", help="fused output file")
    p.add_argument("--thr-s", type=float, default=0.5,
                   help="per-frame spatial IoU threshold (default 0.5)")
    p.add_argument("--thr-t", type=float, default=0.5,
                   help="trajectory overlap-ratio threshold for merging (default 0.5)")
    p.add_argument("--thr-nms", type=float, default=0.7,
                   help="per-frame NMS IoU threshold (default 0.7)")
    p.add_argument("--thr-len", type=int, default=20,
                   help="minimum trajectory span in frames (default 20)")
    p.add_argument("--mode", choices=["drop", "average"], default="drop",
                   help="overlapping-box integration: keep the longer track's box, "
                   "or average all boxes (default drop)")
    p.add_argument("--interpolate", type=int, metavar="MAX_GAP",
                   help="afterwards, fill trajectory gaps of up to MAX_GAP frames")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("eval", help="score a result file against ground truth")
    p.add_argument("--gt", required=True, metavar="FILE", help="ground-truth file")
    p.add_argument("--pred", required=True, metavar="FILE", help="prediction file")
    p.add_argument("--iou", type=float, default=0.5,
                   help="matching IoU threshold (default 0.5)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="generate a synthetic tracking scenario")
    p.add_argument("-o", "--output", required=True, metavar="DIR", help="output directory")
    p.add_argument("--seed", type=int, help="scenario seed (default 0)")
    p.add_argument("--objects", type=int, help="number of objects (default 4)")
    p.add_argument("--frames", type=int, help="number of frames (default 200)")
    p.add_argument("--trackers", type=int,
                   help="number of default-degraded tracker outputs (default 2)")
    p.add_argument("--arena", metavar="WxH", help="arena size in pixels (default 800x600)")
    p.add_argument("--config", metavar="FILE",
                   help="key=value scenario file; explicit flags override it")
    p.add_argument("--complementary", action="store_true",
                   help="write a complementary tracker pair instead (--trackers is ignored)")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
