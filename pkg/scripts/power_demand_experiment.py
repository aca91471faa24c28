#!/usr/bin/env python3
"""Long motifs and periodicity anomalies in a 5,000-point window of the
power demand series (15-minute readings, 96 per day).

    python3 scripts/power_demand_experiment.py path/to/power_data.txt
"""
import argparse

from mta import engine
from mta.analysis import periodicity_scan
from mta.errors import TooFewOccurrences
from mta.serialize import format_periodicity, load_csv, parse_slice

POINTS_PER_DAY = 96


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path")
    ap.add_argument("--slice", type=parse_slice, default=(5000, 10000))
    ap.add_argument("--min-length", type=int, default=500)
    ap.add_argument("--tolerance", type=float, default=0.1)
    args = ap.parse_args()

    ts = load_csv(args.path, slice_=args.slice)
    runs = {}
    for policy in engine.TmePolicy:
        runs[policy] = engine.run_mta(ts, engine.MtaConfig(250, 6, 0.04, policy))
    pool, _ = runs[engine.TmePolicy.NTME]
    long = [m for m in pool if m.length_points >= args.min_length]
    print(f"{len(pool)} motifs, {len(long)} of length >= {args.min_length}\n")
    for idx, m in enumerate(long):
        try:
            rep = periodicity_scan(m, args.tolerance)
        except TooFewOccurrences:
            print(f"motif {idx + 1} [{m.word}] length {m.length_points}, occurrences {list(m.occurrences)}")
            continue
        print(format_periodicity(idx, m, rep, POINTS_PER_DAY))

    print("\npolicy  motifs  generations  data_accesses  wall_ms")
    for policy, (p, st) in runs.items():
        print(f"{policy.value:<7s} {len(p):6d}  {st.generations:11d}  {st.data_accesses:13d}  {st.wall_time_ms:7.0f}")


if __name__ == "__main__":
    main()
