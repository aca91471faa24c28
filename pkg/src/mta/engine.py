"""The motif tracking loop.

Trackers are symbol strings that grow by one symbol per generation. Each
generation presents a candidate matrix of stride-``s`` words to the tracker
population, prunes trackers whose word does not repeat, confirms the
repeats against the prepared series with a Euclidean distance test, stores
confirmed motifs in a memory pool, and extends the surviving trackers with
every symbol of the mutation template.
"""
from __future__ import annotations

import enum
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    EmptyTemplate,
    GenerationMismatch,
    GenerationTooLong,
    InvalidConfig,
    LengthMismatch,
)
from .preprocess import (
    Alphabet,
    PreparedSeries,
    SymbolMatrix,
    TimeSeries,
    make_alphabet,
    prepare,
    symbolize,
)

# Upper bound on floats materialized per distance batch.
_BATCH_FLOATS = 1 << 22


class TmePolicy(str, enum.Enum):
    NTME = "ntme"
    TME = "tme"


class ThresholdMode(str, enum.Enum):
    PER_POINT = "per-point"
    PER_SQRT = "per-sqrt"
    ABSOLUTE = "absolute"


@dataclass(frozen=True)
class MtaConfig:
    symbol_size_s: int = 10
    alphabet_a: int = 6
    threshold_r: float = 0.15
    tme_policy: TmePolicy = TmePolicy.NTME
    threshold_mode: ThresholdMode = ThresholdMode.PER_POINT
    max_generations: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "tme_policy", TmePolicy(self.tme_policy))
        object.__setattr__(self, "threshold_mode", ThresholdMode(self.threshold_mode))
        if self.symbol_size_s < 1:
            raise InvalidConfig(f"symbol size must be >= 1, got {self.symbol_size_s}")
        if not (self.threshold_r > 0 and math.isfinite(self.threshold_r)):
            raise InvalidConfig(f"threshold must be a positive finite number, got {self.threshold_r}")
        if self.max_generations is not None and self.max_generations < 1:
            raise InvalidConfig(f"max_generations must be >= 1, got {self.max_generations}")


@dataclass
class Tracker:
    word: str
    match_count: int = 0


TrackerPool = list  # list[Tracker], words unique


@dataclass(frozen=True)
class CandidateWord:
    symbols: str
    start: int
    span: int


@dataclass(frozen=True)
class CandidateMatrix:
    """Generation-``g`` words; row ``k`` of ``codes`` is the word starting at ``starts[k]``."""

    generation_g: int
    starts: np.ndarray
    codes: np.ndarray
    symbol_size_s: int
    tme_policy: TmePolicy

    @property
    def span(self) -> int:
        return self.generation_g * self.symbol_size_s

    def word_strings(self) -> list[str]:
        return _rows_to_words(self.codes)

    @property
    def words(self) -> list[CandidateWord]:
        return [
            CandidateWord(w, int(i), self.span)
            for w, i in zip(self.word_strings(), self.starts)
        ]

    def groups(self) -> dict[str, np.ndarray]:
        """Map each distinct word to the sorted starts carrying it."""
        out: dict[str, list[int]] = {}
        for w, i in zip(self.word_strings(), self.starts.tolist()):
            out.setdefault(w, []).append(i)
        return {w: np.asarray(v, dtype=np.int64) for w, v in out.items()}

    def __len__(self):
        return self.starts.size


@dataclass(frozen=True)
class MotifRecord:
    word: str
    length_points: int
    occurrences: tuple
    distances: tuple = ()
    pairs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "occurrences", tuple(sorted({int(o) for o in self.occurrences})))
        object.__setattr__(self, "distances", tuple(float(d) for d in self.distances))
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in self.pairs))

    def intervals(self):
        return [(o, o + self.length_points) for o in self.occurrences]


MotifPool = list  # list[MotifRecord], streamlined and sorted


@dataclass
class RunStats:
    generations: int = 0
    data_accesses: int = 0
    trackers_peak: int = 0
    wall_time_ms: int = 0


def _rows_to_words(codes: np.ndarray) -> list[str]:
    n, g = codes.shape
    if n == 0:
        return []
    raw = np.ascontiguousarray(codes.astype(np.uint8) + ord("a"))
    return [b.decode("ascii") for b in raw.view(f"S{g}").ravel().tolist()]


# --- distance -----------------------------------------------------------------


def match_threshold(n: int, cfg: MtaConfig) -> float:
    if cfg.threshold_mode is ThresholdMode.PER_POINT:
        return cfg.threshold_r * n
    if cfg.threshold_mode is ThresholdMode.PER_SQRT:
        return cfg.threshold_r * math.sqrt(n)
    return cfg.threshold_r


def _row_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = a - b
    return np.sqrt(np.einsum("ij,ij->i", d, d))


def euclidean_match(x, y, cfg: MtaConfig, stats: Optional[RunStats] = None):
    """Return ``(distance, matched)`` for two equal-length subsequences.

    Counts as one data access on ``stats`` when given.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size == 0:
        raise LengthMismatch(f"subsequence shapes differ or are empty: {x.shape} vs {y.shape}")
    if stats is not None:
        stats.data_accesses += 1
    dist = float(_row_distances(x[None, :], y[None, :])[0])
    return dist, dist <= match_threshold(x.size, cfg)


def pair_distances(prep: PreparedSeries, first, second, n: int) -> np.ndarray:
    """Distances between ``prep[first[k]:first[k]+n]`` and ``prep[second[k]:...]``.

    Bitwise identical to calling :func:`euclidean_match` pair by pair.
    """
    first = np.asarray(first, dtype=np.int64)
    second = np.asarray(second, dtype=np.int64)
    windows = np.lib.stride_tricks.sliding_window_view(prep.values, n)
    out = np.empty(first.size)
    step = max(1, _BATCH_FLOATS // n)
    for lo in range(0, first.size, step):
        hi = lo + step
        out[lo:hi] = _row_distances(windows[first[lo:hi]], windows[second[lo:hi]])
    return out


# --- generation steps -----------------------------------------------------------


def init_trackers(alpha: Alphabet) -> TrackerPool:
    return [Tracker(c) for c in alpha.symbols]


def build_candidates(S: SymbolMatrix, g: int, policy: TmePolicy = TmePolicy.NTME) -> CandidateMatrix:
    """Assemble generation-``g`` words from symbols ``S[i], S[i+s], ..., S[i+(g-1)s]``.

    Under TME a word is dropped when it equals the last emitted word, but
    never more than ``s`` times in a row.
    """
    policy = TmePolicy(policy)
    s = S.symbol_size_s
    if g < 1:
        raise GenerationMismatch(f"generation must be >= 1, got {g}")
    n_valid = len(S) - (g - 1) * s
    if n_valid < 1:
        raise GenerationTooLong(f"no start position fits a {g}-symbol word in {len(S)} symbols")
    starts = np.arange(n_valid, dtype=np.int64)
    codes = S.codes[starts[:, None] + s * np.arange(g, dtype=np.int64)[None, :]]
    if policy is TmePolicy.TME:
        keep = tme_mask(_rows_to_words(codes), s)
        starts, codes = starts[keep], codes[keep]
    return CandidateMatrix(g, starts, codes, s, policy)


def tme_mask(words: Sequence, cap: int) -> np.ndarray:
    keep = np.zeros(len(words), dtype=bool)
    last = None
    suppressed = 0
    for k, w in enumerate(words):
        if k == 0 or w != last or suppressed >= cap:
            keep[k] = True
            last = w
            suppressed = 0
        else:
            suppressed += 1
    return keep


def match_trackers(pool: TrackerPool, M: CandidateMatrix) -> TrackerPool:
    counts = Counter(M.word_strings())
    out = []
    for t in pool:
        if len(t.word) != M.generation_g:
            raise GenerationMismatch(
                f"tracker {t.word!r} has length {len(t.word)}, candidates are generation {M.generation_g}"
            )
        out.append(Tracker(t.word, counts.get(t.word, 0)))
    return out


def prune_unmatched(pool: TrackerPool) -> TrackerPool:
    return [Tracker(t.word, 0) for t in pool if t.match_count >= 2]


def confirm_motifs(pool: TrackerPool, M: CandidateMatrix, prep: PreparedSeries,
                   cfg: MtaConfig, stats: Optional[RunStats] = None):
    """Check every pair of candidates sharing a tracker's word against the data.

    Returns the new motif records and the pool with each tracker's
    ``match_count`` set to its number of confirmed pairs.
    """
    n = M.span
    limit = match_threshold(n, cfg)
    groups = M.groups()
    motifs = []
    out = []
    for t in pool:
        starts = groups.get(t.word)
        if starts is None or starts.size < 2:
            out.append(Tracker(t.word, 0))
            continue
        ia, ib = np.triu_indices(starts.size, k=1)
        a, b = starts[ia], starts[ib]
        dist = pair_distances(prep, a, b, n)
        if stats is not None:
            stats.data_accesses += int(dist.size)
        hit = dist <= limit
        n_hit = int(hit.sum())
        out.append(Tracker(t.word, n_hit))
        if n_hit:
            a, b, d = a[hit], b[hit], dist[hit]
            motifs.append(MotifRecord(
                word=t.word,
                length_points=n,
                occurrences=np.union1d(a, b).tolist(),
                distances=d.tolist(),
                pairs=list(zip(a.tolist(), b.tolist())),
            ))
    return motifs, out


def eliminate_unstimulated(pool: TrackerPool) -> TrackerPool:
    return [t for t in pool if t.match_count > 0]


def proliferate_mutate(pool: TrackerPool, template: Iterable[str]) -> TrackerPool:
    template = list(dict.fromkeys(template))
    if not template:
        raise EmptyTemplate("mutation template is empty")
    seen = set()
    out = []
    for t in pool:
        for c in template:
            w = t.word + c
            if w not in seen:
                seen.add(w)
                out.append(Tracker(w))
    return out


# --- memory -------------------------------------------------------------------


def _pool_order(m: MotifRecord):
    return (-m.length_points, -len(m.occurrences), m.occurrences, m.word)


def _encapsulates(big: MotifRecord, small: MotifRecord) -> bool:
    if big.length_points < small.length_points:
        return False
    L = small.length_points
    big_starts = np.asarray(big.occurrences)
    for o in small.occurrences:
        # big intervals share one length, so the latest start <= o reaches furthest
        k = np.searchsorted(big_starts, o, side="right") - 1
        if k < 0 or big_starts[k] + big.length_points < o + L:
            return False
    return True


def streamline(motifs: Iterable[MotifRecord], s: Optional[int] = None) -> MotifPool:
    """Drop duplicate motifs and motifs encapsulated by an equal or longer one.

    Records are visited longest first (then most occurrences), so when two
    records cover exactly the same intervals the earlier one is kept. The
    result is ordered by length descending, then first occurrence. ``s`` is
    accepted for interface symmetry and not needed.
    """
    unique = {}
    for m in motifs:
        unique.setdefault((m.word, m.length_points, m.occurrences), m)
    kept: list[MotifRecord] = []
    for m in sorted(unique.values(), key=_pool_order):
        if not any(_encapsulates(k, m) for k in kept):
            kept.append(m)
    return sorted(kept, key=lambda m: (-m.length_points, m.occurrences[0], m.occurrences, m.word))


# --- driver -------------------------------------------------------------------


@dataclass
class GenerationLog:
    generation: int
    trackers: int
    candidates: int
    survivors: int
    confirmed: int


@dataclass
class TrackResult:
    memory: list = field(default_factory=list)
    stats: RunStats = field(default_factory=RunStats)
    log: list = field(default_factory=list)
    symbols: Optional[SymbolMatrix] = None


def track_motifs(prep: PreparedSeries, cfg: MtaConfig) -> TrackResult:
    """Run every generation and return the unstreamlined memory pool."""
    t0 = time.perf_counter()
    alpha = make_alphabet(cfg.alphabet_a)
    S = symbolize(prep, cfg.symbol_size_s, alpha)
    res = TrackResult(symbols=S)
    stats = res.stats
    pool = init_trackers(alpha)
    template = None
    g = 1
    while pool:
        if cfg.max_generations is not None and g > cfg.max_generations:
            break
        try:
            M = build_candidates(S, g, cfg.tme_policy)
        except GenerationTooLong:
            break
        stats.generations = g
        stats.trackers_peak = max(stats.trackers_peak, len(pool))
        n_trackers = len(pool)
        pool = prune_unmatched(match_trackers(pool, M))
        n_survivors = len(pool)
        found, pool = confirm_motifs(pool, M, prep, cfg, stats)
        pool = eliminate_unstimulated(pool)
        res.memory.extend(found)
        res.log.append(GenerationLog(g, n_trackers, len(M), n_survivors, len(found)))
        if g == 1:
            template = [t.word for t in pool]
        if not pool:
            break
        pool = proliferate_mutate(pool, template)
        g += 1
    stats.wall_time_ms = int(round((time.perf_counter() - t0) * 1000))
    return res


def run_mta(ts: TimeSeries, cfg: MtaConfig):
    """Prepare ``ts``, track motifs and return ``(streamlined pool, stats)``."""
    res = track_motifs(prepare(ts), cfg)
    return streamline(res.memory, cfg.symbol_size_s), res.stats
