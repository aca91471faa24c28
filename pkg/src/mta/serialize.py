"""CSV ingestion and the JSON / plot-script artifacts written by the CLI."""
from __future__ import annotations

import dataclasses
import enum
import json
import math
import re
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .analysis import ComparisonReport, PeriodicityReport
from .engine import MotifRecord, RunStats
from .errors import DataError, EmptyAfterSlice, ParseError
from .preprocess import TimeSeries

_SPLIT = re.compile(r"[,\s]+")


def load_csv(path, column: int = 0, decimation_k: int = 1,
             slice_: Optional[tuple] = None, skip_rows: int = 0) -> TimeSeries:
    """Read one numeric column, keep every ``decimation_k``-th row, then slice.

    Fields may be separated by commas or whitespace. Blank lines and lines
    starting with ``#`` are ignored; any other unparseable row is an error.
    ``column`` may be negative to count from the last field.
    """
    path = Path(path)
    if decimation_k < 1:
        raise DataError(f"decimation factor must be >= 1, got {decimation_k}")
    if not path.is_file():
        raise FileNotFoundError(f"input file not found: {path}")
    values = []
    with path.open() as fh:
        row = -1
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            row += 1
            if row < skip_rows:
                continue
            fields = [f for f in _SPLIT.split(text) if f]
            try:
                raw = fields[column]
            except IndexError:
                raise ParseError(path, lineno, column, text) from None
            try:
                v = float(raw)
            except ValueError:
                raise ParseError(path, lineno, column, raw) from None
            if not math.isfinite(v):
                raise ParseError(path, lineno, column, raw)
            values.append(v)
    x = np.asarray(values[::decimation_k], dtype=float)
    if slice_ is not None:
        lo, hi = slice_
        lo = 0 if lo is None else lo
        hi = x.size if hi is None else hi
        if not 0 <= lo < hi <= x.size:
            raise EmptyAfterSlice(f"slice [{lo}, {hi}) is empty or outside the {x.size}-point series")
        x = x[lo:hi]
    if x.size == 0:
        raise EmptyAfterSlice(f"no values read from {path}")
    return TimeSeries(x, name=path.stem, source=str(path))


def parse_slice(text: str) -> tuple:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"slice must look like START:END, got {text!r}")
    return (int(lo) if lo else None, int(hi) if hi else None)


def fmt_float(x: float) -> float:
    """Round to 6 significant digits; stable under repeated application."""
    return float(f"{x:.6g}")


def _plain(obj):
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def motif_to_dict(m: MotifRecord) -> dict:
    return {
        "word": m.word,
        "length_points": m.length_points,
        "occurrences": list(m.occurrences),
        "distances": [fmt_float(d) for d in m.distances],
        "pairs": [list(p) for p in m.pairs],
    }


def motif_from_dict(d: dict) -> MotifRecord:
    return MotifRecord(
        word=d["word"],
        length_points=int(d["length_points"]),
        occurrences=d["occurrences"],
        distances=d.get("distances", ()),
        pairs=[tuple(p) for p in d.get("pairs", ())],
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def pool_document(series_name: str, series_length: int, config, motifs: Sequence[MotifRecord]) -> dict:
    return {
        "series": {"name": series_name, "length": int(series_length)},
        "config": _plain(config),
        "motifs": [motif_to_dict(m) for m in motifs],
    }


def write_pool(path, series_name, series_length, config, motifs) -> None:
    Path(path).write_text(dumps(pool_document(series_name, series_length, config, motifs)))


def read_pool(path) -> tuple:
    """Return ``(document, motifs)`` from a motifs.json file."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"motif file not found: {path}")
    try:
        doc = json.loads(path.read_text())
        motifs = [motif_from_dict(m) for m in doc["motifs"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise DataError(f"{path}: not a motif pool document ({exc})") from None
    return doc, motifs


def write_stats(path, stats: RunStats) -> None:
    Path(path).write_text(dumps(_plain(stats)))


def comparison_document(report: ComparisonReport) -> dict:
    return {"rows": _plain(list(report.rows)), "totals": _plain(report.totals)}


def analysis_document(entries: Sequence[tuple], points_per_day: Optional[float]) -> dict:
    """``entries`` holds ``(motif_index, MotifRecord, PeriodicityReport)`` triples."""
    out = []
    for idx, m, rep in entries:
        item = {
            "motif_index": idx,
            "word": m.word,
            "length_points": m.length_points,
            "occurrences": list(m.occurrences),
            "intervals": list(rep.intervals),
            "expected_interval": rep.expected_interval,
            "anomalies": [
                {"expected_start": a.expected_start, "actual_start": a.actual_start,
                 "gap_window": list(a.gap_window)}
                for a in rep.anomalies
            ],
        }
        if points_per_day:
            item["intervals_days"] = [fmt_float(g / points_per_day) for g in rep.intervals]
            item["expected_interval_days"] = fmt_float(rep.expected_interval / points_per_day)
            for a, src in zip(item["anomalies"], rep.anomalies):
                a["gap_window_days"] = [fmt_float(v / points_per_day) for v in src.gap_window]
        out.append(item)
    return {"points_per_day": points_per_day, "motifs": out}


_COLORS = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999"]


def write_plot(out_dir, ts: TimeSeries, motifs: Sequence[MotifRecord], max_motifs: int = 8) -> None:
    """Write ``series.csv`` and a gnuplot script shading motif occurrence spans."""
    out_dir = Path(out_dir)
    with (out_dir / "series.csv").open("w") as fh:
        for i, v in enumerate(ts.values):
            fh.write(f"{i},{v!r}\n")
    lines = [
        "# gnuplot script; run: gnuplot -p plot.gp",
        'set datafile separator ","',
        f'set title "{ts.name}: motif occurrences"',
        'set xlabel "index"',
        "set key off",
    ]
    obj = 1
    for k, m in enumerate(motifs[:max_motifs]):
        color = _COLORS[k % len(_COLORS)]
        lines.append(f"# motif {k + 1}: word={m.word} length={m.length_points} occurrences={list(m.occurrences)}")
        for o in m.occurrences:
            lines.append(
                f"set object {obj} rect from {o},graph 0 to {o + m.length_points},graph 1 "
                f'behind fc rgb "{color}" fs transparent solid 0.15 noborder'
            )
            obj += 1
    lines.append('plot "series.csv" using 1:2 with lines lc rgb "black"')
    (out_dir / "plot.gp").write_text("\n".join(lines) + "\n")


def format_periodicity(idx: int, m: MotifRecord, rep: PeriodicityReport,
                       points_per_day: Optional[float]) -> str:
    unit = (lambda v: f"{v} ({v / points_per_day:.1f} d)") if points_per_day else str
    lines = [f"motif {idx + 1} [{m.word}] length {m.length_points}, {len(m.occurrences)} occurrences,"
             f" expected interval {unit(rep.expected_interval)}"]
    for a in rep.anomalies:
        lo, hi = a.gap_window
        lines.append(f"  anomaly: expected start {a.expected_start}, next seen at {a.actual_start};"
                     f" window [{unit(lo)}, {unit(hi)}]")
    if not rep.anomalies:
        lines.append("  no anomalies")
    return "\n".join(lines)
