"""Command-line interface for running and comparing filling strategies."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .distances import SizeGuardError
from .grid import Metric
from .harness import (
    GeneratorKind,
    VerificationError,
    generate_image,
    run_experiment,
    write_report_csv,
    write_trace_csv,
)
from .pgm import read_pgm
from .strategies import DEFAULT_REPULSION, StrategyKind

_ALL = [k.value for k in StrategyKind]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="geopairs",
        description="Fill the all-pairs geodesic distance array of a grayscale "
                    "image and compare source-selection strategies.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--image", metavar="PATH.pgm", help="input image (PGM P2/P5)")
    src.add_argument("--generate", choices=[k.value for k in GeneratorKind],
                     help="generate a seeded test image instead of reading one")
    p.add_argument("--size", default="25x25", metavar="WxH",
                   help="generated image size (default 25x25)")
    p.add_argument("--image-seed", type=int, default=0, metavar="K",
                   help="seed for the image generator (default 0)")
    p.add_argument("--metric", choices=[m.value for m in Metric],
                   default=Metric.SUM.value,
                   help="edge pseudo-metric (default sum)")
    p.add_argument("--strategy", choices=_ALL + ["all"], default="all",
                   help="strategy to run, or all of them (default all)")
    p.add_argument("--repulsion", type=int, default=DEFAULT_REPULSION, metavar="H",
                   help=f"spiral repulsion distance (default {DEFAULT_REPULSION})")
    p.add_argument("--seeds", default="0", metavar="A..B",
                   help="run-seed range, inclusive (e.g. 0..19), or one seed")
    p.add_argument("--naive-with-tree", action="store_true",
                   help="let the naive baseline exploit geodesic-tree filling too")
    p.add_argument("--remap-zero", action="store_true",
                   help="lift grey level 0 in input images to 1")
    p.add_argument("--verify", action="store_true",
                   help="check every completed array against the brute-force oracle")
    p.add_argument("--force-size", action="store_true",
                   help="override the dense-storage pixel guard")
    p.add_argument("--out-traces", metavar="FILE.csv",
                   help="write per-propagation filling traces")
    p.add_argument("--out-report", metavar="FILE.csv",
                   help="write per-strategy aggregate counts and reductions")
    p.add_argument("--out-matrix", metavar="FILE.apgd",
                   help="write the completed distance matrix (binary dump)")
    p.add_argument("--out-plot", metavar="FILE.png",
                   help="render filling-rate curves next to the CSV outputs")
    return p


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise ValueError(f"--size wants WxH, got {text!r}") from None


def _parse_seeds(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..")
            seeds = list(range(int(a), int(b) + 1))
        else:
            seeds = [int(text)]
    except ValueError:
        raise ValueError(f"--seeds wants A..B or a single seed, got {text!r}") from None
    if not seeds:
        raise ValueError(f"empty seed range {text!r}")
    return seeds


def _load_image(args) -> tuple[str, "Image"]:
    if args.image is not None:
        data = Path(args.image).read_bytes()
        return Path(args.image).name, read_pgm(data, remap_zero=args.remap_zero)
    kind = GeneratorKind(args.generate)
    width, height = _parse_size(args.size)
    label = f"{kind.value}-{width}x{height}-s{args.image_seed}"
    return label, generate_image(kind, (width, height), args.image_seed)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        label, image = _load_image(args)
        strategies = ([StrategyKind(args.strategy)] if args.strategy != "all"
                      else list(StrategyKind))
        seeds = _parse_seeds(args.seeds)
        report = run_experiment(
            [(label, image)], [Metric(args.metric)], strategies, seeds,
            repulsion=args.repulsion, naive_with_tree=args.naive_with_tree,
            verify=args.verify, force=args.force_size,
        )
    except (OSError, ValueError, SizeGuardError) as exc:
        print(f"geopairs: error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"geopairs: verification failed: {exc}", file=sys.stderr)
        return 1

    if args.out_traces:
        Path(args.out_traces).write_bytes(write_trace_csv(report.records))
    if args.out_report:
        Path(args.out_report).write_bytes(write_report_csv(report))
    if args.out_matrix:
        store = report.completed[(label, args.metric)]
        Path(args.out_matrix).write_bytes(store.to_bytes())
    if args.out_plot:
        from .plotting import render_filling_curves

        render_filling_curves(report.records, args.out_plot)

    _print_summary(report, image.size)
    return 0


def _print_summary(report, n_pixels: int) -> None:
    print(f"image pixels: {n_pixels}  (naive baseline: {n_pixels - 1} propagations)")
    header = (f"{'strategy':<18} {'seeds':>5} {'raw mean':>9} {'raw range':>12} "
              f"{'adj mean':>9} {'dr(naive)%':>10} {'dr(spiral)%':>11}")
    print(header)
    for s in report.summaries:
        dn = "" if s.delta_r_naive_raw is None else f"{s.delta_r_naive_raw:.1f}"
        ds = "" if s.delta_r_spiral_raw is None else f"{s.delta_r_spiral_raw:.1f}"
        print(f"{s.strategy:<18} {s.n_seeds:>5} {s.raw_mean:>9.1f} "
              f"{f'{s.raw_min}..{s.raw_max}':>12} {s.adjusted_mean:>9.1f} "
              f"{dn:>10} {ds:>11}")


if __name__ == "__main__":
    sys.exit(main())
