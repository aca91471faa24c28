"""Batch command line: ``mta {run,baseline,compare,analyze,synth}``.

Exit codes: 0 success, 2 usage error, 3 data error, 4 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import analysis, baseline, engine, oracle, serialize
from .errors import DataError, InvariantViolation, TooFewOccurrences, UsageError
from .preprocess import prepare

log = logging.getLogger("mta")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 2, 3, 4


def _add_input(p):
    p.add_argument("input", help="CSV file (comma or whitespace separated)")
    p.add_argument("--column", type=int, default=0, help="zero-based column; negative counts from the end")
    p.add_argument("--every", type=int, default=1, metavar="K", help="keep rows 0, K, 2K, ...")
    p.add_argument("--slice", type=serialize.parse_slice, default=None, metavar="A:B",
                   help="keep points [A, B) after decimation")
    p.add_argument("--skip-rows", type=int, default=0, help="leading data rows to ignore (headers)")


def _add_mta(p):
    p.add_argument("--symbol-size", type=int, default=10)
    p.add_argument("--alphabet", type=int, default=6)
    p.add_argument("--threshold", type=float, default=0.15)
    p.add_argument("--threshold-mode", choices=[m.value for m in engine.ThresholdMode], default="per-point")
    p.add_argument("--tme", action=argparse.BooleanOptionalAction, default=False,
                   help="trivial match elimination (default: off)")
    p.add_argument("--max-generations", type=int, default=None)


def _add_baseline(p, with_shared: bool):
    p.add_argument("--motif-length", type=int, nargs="+", default=None,
                   help="one or more motif lengths; the detector runs once per length")
    p.add_argument("--num-symbols", type=int, default=None,
                   help="symbols per motif (default: motif length / symbol size)")
    p.add_argument("--mask-size", type=int, default=4)
    p.add_argument("--iterations", type=int, default=20)
    p.add_argument("--cutoff", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    if with_shared:
        p.add_argument("--symbol-size", type=int, default=10)
        p.add_argument("--alphabet", type=int, default=6)
        p.add_argument("--threshold", type=float, default=0.15)
        p.add_argument("--threshold-mode", choices=[m.value for m in engine.ThresholdMode], default="per-point")
        p.add_argument("--tme", action=argparse.BooleanOptionalAction, default=False)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _mta_config(args) -> engine.MtaConfig:
    return engine.MtaConfig(
        symbol_size_s=args.symbol_size,
        alphabet_a=args.alphabet,
        threshold_r=args.threshold,
        tme_policy=engine.TmePolicy.TME if args.tme else engine.TmePolicy.NTME,
        threshold_mode=args.threshold_mode,
        max_generations=args.max_generations,
    )


def _load(args):
    return serialize.load_csv(args.input, args.column, args.every, args.slice, args.skip_rows)


def _check_pool(ts, pool, cfg):
    """Re-derive every recorded distance from the data."""
    prep = prepare(ts)
    for m in pool:
        if len(m.occurrences) < 2:
            raise InvariantViolation(f"motif {m.word!r} has fewer than 2 occurrences")
        for (i, j), d in zip(m.pairs, m.distances):
            again, ok = engine.euclidean_match(
                prep.values[i:i + m.length_points], prep.values[j:j + m.length_points], cfg)
            if again != d or not ok:
                raise InvariantViolation(f"motif {m.word!r} pair ({i}, {j}) does not reproduce")


def cmd_run(args) -> int:
    ts = _load(args)
    cfg = _mta_config(args)
    pool, stats = engine.run_mta(ts, cfg)
    _check_pool(ts, pool, cfg)
    out = _out_dir(args)
    serialize.write_pool(out / "motifs.json", ts.name, len(ts), cfg, pool)
    serialize.write_stats(out / "stats.json", stats)
    serialize.write_plot(out, ts, pool)
    print(f"{len(pool)} motifs, {stats.generations} generations, "
          f"{stats.data_accesses} data accesses, {stats.wall_time_ms} ms -> {out}")
    return EXIT_OK


def _baseline_base(args) -> dict:
    return dict(
        alphabet_a=args.alphabet,
        mask_size=args.mask_size,
        projection_iterations=args.iterations,
        cutoff=args.cutoff,
        threshold_r=args.threshold,
        rng_seed=args.seed,
        threshold_mode=args.threshold_mode,
        tme=args.tme,
    )


def _run_baseline(ts, args):
    lengths = args.motif_length
    if not lengths:
        raise UsageError("--motif-length is required")
    base = _baseline_base(args)
    if args.num_symbols is not None:
        pool = []
        for L in lengths:
            p = baseline.BaselineParams(motif_length=L, num_symbols=args.num_symbols, **base)
            pool.extend(baseline.random_projection_detect(ts, p))
        pool.sort(key=lambda m: (-m.length_points, m.occurrences))
    else:
        pool = baseline.detect_lengths(ts, lengths, args.symbol_size, base)
    config = {"kind": "baseline", "motif_lengths": list(lengths), "num_symbols": args.num_symbols,
              "symbol_size": args.symbol_size, **base}
    return pool, config


def cmd_baseline(args) -> int:
    ts = _load(args)
    pool, config = _run_baseline(ts, args)
    out = _out_dir(args)
    serialize.write_pool(out / "motifs.json", ts.name, len(ts), config, pool)
    for L in args.motif_length:
        print(f"length {L}: {sum(m.length_points == L for m in pool)} motifs")
    return EXIT_OK


def cmd_compare(args) -> int:
    out = _out_dir(args)
    if args.pools:
        _, reference = serialize.read_pool(args.pools[0])
        _, candidate = serialize.read_pool(args.pools[1])
    else:
        if args.input is None:
            raise UsageError("compare needs an input series or --pools REF CAND")
        ts = _load(args)
        cfg = _mta_config(args)
        candidate, stats = engine.run_mta(ts, cfg)
        reference, bconfig = _run_baseline(ts, args)
        serialize.write_pool(out / "motifs.json", ts.name, len(ts), cfg, candidate)
        serialize.write_stats(out / "stats.json", stats)
        serialize.write_pool(out / "baseline_motifs.json", ts.name, len(ts), bconfig, reference)
    report = analysis.compare_pools(reference, candidate)
    (out / "comparison.json").write_text(serialize.dumps(serialize.comparison_document(report)))
    table = analysis.format_comparison(report)
    (out / "comparison.txt").write_text(table + "\n")
    print(table)
    return EXIT_OK


def cmd_analyze(args) -> int:
    _, pool = serialize.read_pool(args.motifs)
    entries = []
    for idx, m in enumerate(pool):
        try:
            rep = analysis.periodicity_scan(m, args.tolerance)
        except TooFewOccurrences:
            log.warning("motif %d (%s) has %d occurrences; skipped", idx + 1, m.word, len(m.occurrences))
            continue
        entries.append((idx, m, rep))
        print(serialize.format_periodicity(idx, m, rep, args.points_per_day))
    out = Path(args.out) if args.out else Path(args.motifs).parent
    out.mkdir(parents=True, exist_ok=True)
    doc = serialize.analysis_document(entries, args.points_per_day)
    (out / "analysis.json").write_text(serialize.dumps(doc))
    return EXIT_OK


def cmd_synth(args) -> int:
    rng = np.random.default_rng(args.seed)
    templates = []
    for _ in range(args.templates):
        shape = np.cumsum(rng.normal(0.0, 1.0, args.motif_length)) * args.amplitude
        templates.append(oracle.MotifTemplate(tuple(shape.tolist()), args.copies, args.noise))
    spec = oracle.PlantSpec(args.length, tuple(templates), args.background, args.seed)
    ts, truth = oracle.generate_planted(spec)
    out = _out_dir(args)
    np.savetxt(out / "series.csv", ts.values, fmt="%.17g")
    (out / "ground_truth.json").write_text(serialize.dumps({
        "series_length": args.length,
        "seed": args.seed,
        "coordinates": "raw index; prepared index i covers raw points i and i+1",
        "motifs": truth,
    }))
    print(f"wrote {args.length} points with {len(truth)} planted motifs -> {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mta", description="Motif tracking for univariate time series")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="track motifs in a series")
    _add_input(p)
    _add_mta(p)
    p.add_argument("--out", default="mta_out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("baseline", help="random projection detector at fixed motif lengths")
    _add_input(p)
    _add_baseline(p, with_shared=True)
    p.add_argument("--out", default="baseline_out")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("compare", help="score tracked motifs against the baseline (reference)")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--column", type=int, default=0)
    p.add_argument("--every", type=int, default=1, metavar="K")
    p.add_argument("--slice", type=serialize.parse_slice, default=None, metavar="A:B")
    p.add_argument("--skip-rows", type=int, default=0)
    _add_mta(p)
    _add_baseline(p, with_shared=False)
    p.add_argument("--pools", nargs=2, metavar=("REFERENCE", "CANDIDATE"),
                   help="compare two existing motifs.json files instead of running detectors")
    p.add_argument("--out", default="compare_out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("analyze", help="periodicity anomalies of each motif in a motifs.json")
    p.add_argument("motifs")
    p.add_argument("--tolerance", type=float, default=analysis.DEFAULT_TOLERANCE)
    p.add_argument("--points-per-day", type=float, default=None)
    p.add_argument("--out", default=None, help="directory for analysis.json (default: next to input)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synth", help="generate a planted-motif series")
    p.add_argument("--length", type=int, default=1000)
    p.add_argument("--motif-length", type=int, default=50)
    p.add_argument("--templates", type=int, default=1)
    p.add_argument("--copies", type=int, default=3)
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--background", type=float, default=1.0)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="synth_out")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mta {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError, json.JSONDecodeError) as exc:
        print(f"mta {args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InvariantViolation as exc:
        print(f"mta {args.command}: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"mta {args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"mta {args.command}: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
