"""Pool comparison and periodicity anomaly reports."""
from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .engine import MotifRecord
from .errors import TooFewOccurrences

DEFAULT_TOLERANCE = 0.1


@dataclass(frozen=True)
class ComparisonRow:
    reference_index: int
    found: bool
    frequency_error: int
    length_error: int
    length_error_pct: float
    location_error: int
    location_error_pct: float
    candidate_index: Optional[int] = None


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple
    totals: dict

    @property
    def found_count(self) -> int:
        return sum(r.found for r in self.rows)


def _overlap(a0, a1, b0, b1) -> int:
    return max(0, min(a1, b1) - max(a0, b0))


def _best_match(ref: MotifRecord, cand: MotifRecord):
    """Per reference occurrence: (overlap, nearest best-overlapping candidate start)."""
    out = []
    for r in ref.occurrences:
        def key(c):
            return (_overlap(r, r + ref.length_points, c, c + cand.length_points), -abs(c - r), -c)
        c = max(cand.occurrences, key=key)
        out.append((key(c)[0], c))
    return out


def _canonical(m: MotifRecord):
    return (-m.length_points, m.occurrences, m.word)


def compare_pools(reference: Sequence[MotifRecord], candidate: Sequence[MotifRecord]) -> ComparisonReport:
    """Score each reference motif against its best-overlapping candidate.

    The candidate with the largest total occurrence overlap is chosen (ties go
    to the smaller length difference, then canonical pool order, so input
    order does not matter). A reference motif counts as found when that
    candidate overlaps every one of its occurrences.
    """
    cands = sorted(candidate, key=_canonical)
    rows = []
    for idx, ref in enumerate(reference):
        best = None
        for ci, c in enumerate(cands):
            matches = _best_match(ref, c)
            total = sum(ov for ov, _ in matches)
            key = (total, -abs(c.length_points - ref.length_points), -ci)
            if best is None or key > best[0]:
                best = (key, ci, c, matches)
        L = ref.length_points
        if best is not None and all(ov > 0 for ov, _ in best[3]):
            _, ci, c, matches = best
            loc = max(abs(start - r) for (_, start), r in zip(matches, ref.occurrences))
            len_err = c.length_points - L
            rows.append(ComparisonRow(
                idx, True, len(c.occurrences) - len(ref.occurrences), len_err,
                100.0 * len_err / L, loc, 100.0 * loc / L, ci,
            ))
        else:
            rows.append(ComparisonRow(idx, False, -len(ref.occurrences), -L, -100.0, 0, 0.0))
    total_len = sum(m.length_points for m in reference)
    totals = {
        "found": sum(r.found for r in rows),
        "motifs": len(rows),
        "frequency_error": sum(r.frequency_error for r in rows),
        "length_error": sum(r.length_error for r in rows),
        "length_error_pct": 100.0 * sum(r.length_error for r in rows) / total_len if total_len else 0.0,
        "location_error": sum(r.location_error for r in rows),
    }
    return ComparisonReport(tuple(rows), totals)


def format_comparison(report: ComparisonReport) -> str:
    head = f"{'Motif':>5}  {'Found':>5}  {'Freq':>5}  {'Length':>7}  {'Len%':>7}  {'Loc':>5}  {'Loc%':>6}"
    lines = [head]
    for r in report.rows:
        lines.append(
            f"{r.reference_index + 1:>5}  {'Yes' if r.found else 'No':>5}  {r.frequency_error:>5}  "
            f"{r.length_error:>7}  {r.length_error_pct:>6.1f}%  {r.location_error:>5}  {r.location_error_pct:>5.1f}%"
        )
    t = report.totals
    lines.append(
        f"{'total':>5}  {t['found']:>5}  {t['frequency_error']:>5}  {t['length_error']:>7}  "
        f"{t['length_error_pct']:>6.1f}%  {t['location_error']:>5}"
    )
    return "\n".join(lines)


@dataclass(frozen=True)
class Anomaly:
    expected_start: int
    actual_start: Optional[int]
    gap_window: tuple


@dataclass(frozen=True)
class PeriodicityReport:
    intervals: tuple
    expected_interval: int
    anomalies: tuple = field(default_factory=tuple)


def periodicity_scan(motif: MotifRecord, tolerance_frac: float = DEFAULT_TOLERANCE) -> PeriodicityReport:
    """Flag gaps between consecutive occurrences that break the usual period.

    The expected period is the lower median of the gaps, which stays an
    actual observed gap and ignores one long outlier. A gap deviating by more
    than ``tolerance_frac`` of it is reported, with the window where the next
    occurrence should have been.
    """
    if not 0 < tolerance_frac < 1:
        raise ValueError(f"tolerance_frac must be in (0, 1), got {tolerance_frac}")
    starts = sorted(motif.occurrences)
    if len(starts) < 3:
        raise TooFewOccurrences(f"periodicity needs >= 3 occurrences, got {len(starts)}")
    gaps = [b - a for a, b in zip(starts, starts[1:])]
    expected = int(statistics.median_low(gaps))
    anomalies = []
    for prev, nxt, gap in zip(starts, starts[1:], gaps):
        if abs(gap - expected) > tolerance_frac * expected:
            lo = prev + expected
            anomalies.append(Anomaly(lo, nxt, (lo, lo + motif.length_points)))
    return PeriodicityReport(tuple(gaps), expected, tuple(anomalies))
