#!/usr/bin/env python3
"""Track motifs in the Steamgen steam-flow series and score them against the
random projection detector run at fixed lengths 80, 70, 60, 50 and 40.

    python3 scripts/steamgen_experiment.py path/to/steamgen.dat [--column -1]
"""
import argparse

from mta import engine
from mta.analysis import compare_pools, format_comparison
from mta.baseline import detect_lengths
from mta.serialize import load_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path")
    ap.add_argument("--column", type=int, default=-1, help="steam flow column (default: last)")
    ap.add_argument("--every", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ts = load_csv(args.path, column=args.column, decimation_k=args.every)
    print(f"{len(ts)} points")
    pools = {}
    for policy in engine.TmePolicy:
        cfg = engine.MtaConfig(10, 6, 0.15, policy)
        pool, stats = engine.run_mta(ts, cfg)
        pools[policy] = pool
        print(f"\n[{policy.value}] {len(pool)} motifs, {stats.generations} generations, "
              f"{stats.data_accesses} data accesses, {stats.wall_time_ms} ms")
        for m in pool:
            print(f"  len {m.length_points:4d}  {m.word:<12s} {list(m.occurrences)}")

    reference = detect_lengths(ts, [80, 70, 60, 50, 40], 10, {"rng_seed": args.seed})
    print(f"\nbaseline: {len(reference)} motifs after condensation")
    for m in reference:
        print(f"  len {m.length_points:4d}  {m.word:<8s} {list(m.occurrences)}")
    for policy, pool in pools.items():
        print(f"\nbaseline (reference) vs MTA [{policy.value}]")
        print(format_comparison(compare_pools(reference, pool)))


if __name__ == "__main__":
    main()
