"""Command-line frontend: batch transforms, image stats, tensor-mode FDM.

Exit codes are a stable scripting contract: 0 success, 1 fatal error,
2 partial failure (some items were skipped), 64 usage error.  Every
transform run prints one summary line carrying the seed, generator name
and method, so any output is reproducible from the log alone.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .backend import BACKEND, channel_histograms
from .errors import StatmatchError
from .fdm import fdm_tensor
from .fmt1 import read_tensor, write_tensor
from .imgio import load_image
from .pipeline import (
    CONCRETE_METHODS,
    METHOD_VARIANTS,
    DatasetRef,
    Method,
    build_plan,
    dump_plan,
    execute_plan,
    plan_from_manifest,
    read_manifest,
)
from .stats_core import EPSILON_DEFAULT, compute_covariance, compute_mean, eig_sym

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_PARTIAL = 2
EXIT_USAGE = 64

_MAX_SEED = (1 << 64) - 1


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the documented contract is 64
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fatal(message: str) -> int:
    print(f"statmatch: error: {message}", file=sys.stderr)
    return EXIT_FATAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="statmatch",
        description="Match image or feature statistics to a target domain.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    tr = sub.add_parser(
        "transform",
        help="batch-transform source images toward target-domain statistics",
        description="Pair each source image with a target image, apply the "
                    "chosen method, write PNGs named after the source items.",
    )
    tr.add_argument("--method", required=True, choices=METHOD_VARIANTS,
                    help="transform to apply (fdm-or-hm resolves per item)")
    tr.add_argument("--source", help="source image file or directory")
    tr.add_argument("--target", help="target image file or directory")
    tr.add_argument("--manifest",
                    help="file of source_path,target_path lines; replaces the "
                         "seeded target draw")
    tr.add_argument("--out", required=True, help="output directory")
    tr.add_argument("--seed", type=int, default=0,
                    help="unsigned 64-bit pairing seed (default 0)")
    tr.add_argument("--p", type=float, default=0.5,
                    help="probability of fdm under fdm-or-hm (default 0.5)")
    tr.add_argument("--epsilon", type=float, default=EPSILON_DEFAULT,
                    help="eigenvalue floor for whitening (default 1e-6)")
    tr.add_argument("--clamp", action=argparse.BooleanOptionalAction, default=True,
                    help="clamp FDM output to [0, 255] before rounding")
    tr.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                    help="worker processes (default: logical CPU count)")
    tr.add_argument("--dump-plan", dest="dump_plan", metavar="FILE",
                    help="also write the resolved pairing plan to FILE")
    tr.set_defaults(func=cmd_transform)

    st = sub.add_parser(
        "stats",
        help="print mean, covariance, eigenvalues and histograms of an image",
        description="Emit per-channel statistics of one image as JSON with "
                    "stable keys: path, height, width, channels, mean, "
                    "covariance, eigenvalues, histograms.",
    )
    st.add_argument("image", help="image file to analyze")
    st.set_defaults(func=cmd_stats)

    ft = sub.add_parser(
        "fdm-tensor",
        help="apply feature-space FDM to FMT1 tensor files",
        description="Read source and target FMT1 tensors, match the source "
                    "statistics to the target, write the result as FMT1.",
    )
    ft.add_argument("--source", required=True, help="source FMT1 tensor")
    ft.add_argument("--target", required=True, help="target FMT1 tensor")
    ft.add_argument("--out", required=True, help="output FMT1 tensor")
    ft.add_argument("--epsilon", type=float, default=EPSILON_DEFAULT,
                    help="eigenvalue floor for whitening (default 1e-6)")
    ft.set_defaults(func=cmd_fdm_tensor)

    return parser


def _validate_transform(parser: argparse.ArgumentParser, args) -> None:
    if not 0 <= args.seed <= _MAX_SEED:
        parser.error(f"--seed must be an unsigned 64-bit integer, got {args.seed}")
    if not 0.0 <= args.p <= 1.0:
        parser.error(f"--p must lie in [0, 1], got {args.p}")
    if args.epsilon < 0:
        parser.error(f"--epsilon must be non-negative, got {args.epsilon}")
    if args.jobs < 1:
        parser.error(f"--jobs must be at least 1, got {args.jobs}")
    if args.manifest is None and (args.source is None or args.target is None):
        parser.error("either --manifest or both --source and --target are required")


def cmd_transform(args) -> int:
    method = Method(variant=args.method, p=args.p)
    try:
        if args.manifest is not None:
            plan = plan_from_manifest(read_manifest(args.manifest), method, args.seed)
        else:
            plan = build_plan(DatasetRef.from_path(args.source),
                              DatasetRef.from_path(args.target),
                              method, args.seed)
        if args.dump_plan:
            dump_plan(plan, args.dump_plan)
        report = execute_plan(plan, epsilon=args.epsilon, clamp=args.clamp,
                              jobs=args.jobs, out_dir=args.out)
    except (StatmatchError, OSError, ValueError) as exc:
        return _fatal(str(exc))
    for item in report.items:
        if not item.ok:
            print(f"statmatch: skipped {item.source}: {item.error}", file=sys.stderr)
    counts = " ".join(f"{m}={report.method_counts[m]}" for m in CONCRETE_METHODS)
    print(
        f"transform: seed={plan.seed} generator={plan.generator} "
        f"method={args.method} p={plan.p} backend={BACKEND} "
        f"items={len(report.items)} ok={report.success_count} "
        f"failed={report.failure_count} {counts} "
        f"wall={report.wall_time_s:.2f}s out={report.out_dir}"
    )
    return EXIT_OK if report.failure_count == 0 else EXIT_PARTIAL


def cmd_stats(args) -> int:
    try:
        img = load_image(args.image)
        h, w, c = img.shape
        flat = np.ascontiguousarray(img.reshape(h * w, c))
        f = flat.astype(np.float64)
        mean = compute_mean(f)
        cov = compute_covariance(f)
        # raw spectrum, no epsilon floor: zeros stay zeros for constant channels
        eigenvalues, _ = eig_sym(cov)
        histograms = channel_histograms(flat)
    except (StatmatchError, ValueError) as exc:
        return _fatal(f"{args.image}: {exc}")
    payload = {
        "path": str(args.image),
        "height": h,
        "width": w,
        "channels": c,
        "mean": mean.tolist(),
        "covariance": cov.tolist(),
        "eigenvalues": eigenvalues.tolist(),
        "histograms": histograms.tolist(),
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_fdm_tensor(args) -> int:
    if args.epsilon < 0:
        return _fatal(f"--epsilon must be non-negative, got {args.epsilon}")
    try:
        t_s = read_tensor(args.source)
        t_t = read_tensor(args.target)
        out = fdm_tensor(t_s, t_t, args.epsilon)
        write_tensor(args.out, out)
    except (StatmatchError, OSError, ValueError) as exc:
        return _fatal(str(exc))
    print(f"fdm-tensor: wrote {args.out} shape={'x'.join(map(str, out.shape))}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.func is cmd_transform:
        _validate_transform(parser, args)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
