"""Probabilistic (random projection) motif detection used as a reference.

Every length-``motif_length`` subsequence of the prepared series is
normalized on its own, reduced to ``num_symbols`` frame means and
symbolized. Each projection round hashes the words on a random subset of
symbol positions; subsequence pairs that land in the same bucket in at
least ``cutoff`` rounds are confirmed with the engine's distance test.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .engine import (
    MotifRecord,
    MtaConfig,
    RunStats,
    ThresholdMode,
    match_threshold,
    pair_distances,
)
from .errors import IndivisibleLength, InvalidConfig, SeriesTooShort
from .preprocess import Alphabet, TimeSeries, codes_to_word, make_alphabet, prepare

_DEGENERATE_STD = 1e-12


@dataclass(frozen=True)
class BaselineParams:
    motif_length: int
    num_symbols: int
    alphabet_a: int = 6
    mask_size: int = 4
    projection_iterations: int = 20
    cutoff: int = 20
    threshold_r: float = 0.15
    rng_seed: int = 0
    threshold_mode: ThresholdMode = ThresholdMode.PER_POINT
    tme: bool = False

    def __post_init__(self):
        object.__setattr__(self, "threshold_mode", ThresholdMode(self.threshold_mode))
        if self.num_symbols < 1 or self.motif_length < 1:
            raise InvalidConfig("motif_length and num_symbols must be positive")
        if self.motif_length % self.num_symbols:
            raise IndivisibleLength(
                f"motif length {self.motif_length} is not divisible by {self.num_symbols} symbols"
            )
        # mask_size == num_symbols is allowed: length-40 runs use 4 symbols with a mask of 4
        if not 1 <= self.mask_size <= self.num_symbols:
            raise InvalidConfig(f"mask size must be in [1, {self.num_symbols}], got {self.mask_size}")
        if not 1 <= self.cutoff <= self.projection_iterations:
            raise InvalidConfig("cutoff must be in [1, projection_iterations]")

    @property
    def distance_config(self) -> MtaConfig:
        return MtaConfig(threshold_r=self.threshold_r, threshold_mode=self.threshold_mode)


def local_sax_codes(windows: np.ndarray, num_symbols: int, alpha: Alphabet) -> np.ndarray:
    """Symbol codes for each row of ``windows``, each row normalized on its own."""
    windows = np.atleast_2d(np.asarray(windows, dtype=float))
    n, L = windows.shape
    if L % num_symbols:
        raise IndivisibleLength(f"subsequence length {L} is not divisible by {num_symbols}")
    mu = windows.mean(axis=1, keepdims=True)
    sd = windows.std(axis=1, keepdims=True)
    flat = sd < _DEGENERATE_STD
    z = np.where(flat, 0.0, (windows - mu) / np.where(flat, 1.0, sd))
    frames = z.reshape(n, num_symbols, L // num_symbols).mean(axis=2)
    return np.searchsorted(alpha.breakpoints, frames, side="right")


def local_sax(subseq, num_symbols: int, alpha: Alphabet) -> str:
    return codes_to_word(local_sax_codes(np.asarray(subseq, dtype=float)[None, :], num_symbols, alpha)[0])


def eliminate_consecutive(words: Sequence) -> np.ndarray:
    """Keep only the first word of every run of identical words (no cap)."""
    keep = np.ones(len(words), dtype=bool)
    for k in range(1, len(words)):
        if words[k] == words[k - 1]:
            keep[k] = False
    return keep


def collision_counts(codes: np.ndarray, starts: np.ndarray, p: BaselineParams) -> dict:
    """Map ``(i, j)`` start pairs (``i < j``, non-overlapping) to collision counts."""
    rng = np.random.default_rng(p.rng_seed)
    L = p.motif_length
    collected = []
    for _ in range(p.projection_iterations):
        mask = np.sort(rng.choice(p.num_symbols, size=p.mask_size, replace=False))
        _, bucket_of = np.unique(codes[:, mask], axis=0, return_inverse=True)
        bucket_of = bucket_of.ravel()
        order = np.argsort(bucket_of, kind="stable")
        bounds = np.flatnonzero(np.diff(bucket_of[order])) + 1
        for bucket in np.split(order, bounds):
            if bucket.size < 2:
                continue
            members = np.sort(starts[bucket])
            ia, ib = np.triu_indices(members.size, k=1)
            a, b = members[ia], members[ib]
            keep = b - a >= L
            collected.append(a[keep] * (1 << 32) + b[keep])
    if not collected:
        return {}
    keys, counts = np.unique(np.concatenate(collected), return_counts=True)
    return {(int(k >> 32), int(k & 0xFFFFFFFF)): int(c) for k, c in zip(keys, counts)}


def candidate_pairs(counts: dict, cutoff: int) -> list:
    return sorted(pair for pair, c in counts.items() if c >= cutoff)


def condense_offsets(records: Sequence[MotifRecord], max_shift: int) -> list:
    """Collapse pair motifs that are the same motif shifted by up to ``max_shift``.

    Pairs ``(i, j)`` and ``(i+k, j+k)`` with ``1 <= k <= max_shift`` are linked,
    and each linked cluster keeps its lowest-distance member (earliest start
    on ties).
    """
    by_pair = {r.pairs[0]: r for r in records}
    parent = {pair: pair for pair in by_pair}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j) in by_pair:
        for k in range(1, max_shift + 1):
            other = (i + k, j + k)
            if other in by_pair:
                ra, rb = find((i, j)), find(other)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    best = {}
    for pair, rec in by_pair.items():
        root = find(pair)
        cur = best.get(root)
        if cur is None or (rec.distances[0], rec.pairs[0]) < (cur.distances[0], cur.pairs[0]):
            best[root] = rec
    return sorted(best.values(), key=lambda r: r.pairs[0])


@dataclass
class BaselineResult:
    motifs: list
    candidates: list
    counts: dict
    stats: RunStats


def random_projection_run(ts: TimeSeries, p: BaselineParams, condense: bool = True) -> BaselineResult:
    prep = prepare(ts)
    L = p.motif_length
    if len(prep) <= L:
        raise SeriesTooShort(f"prepared series of length {len(prep)} is not longer than motif length {L}")
    alpha = make_alphabet(p.alphabet_a)
    windows = np.lib.stride_tricks.sliding_window_view(prep.values, L)
    codes = local_sax_codes(windows, p.num_symbols, alpha)
    starts = np.arange(codes.shape[0], dtype=np.int64)
    if p.tme:
        words = [codes_to_word(row) for row in codes]
        keep = eliminate_consecutive(words)
        codes, starts = codes[keep], starts[keep]
    counts = collision_counts(codes, starts, p)
    cands = candidate_pairs(counts, p.cutoff)
    stats = RunStats(generations=1)
    records = []
    if cands:
        a = np.array([c[0] for c in cands], dtype=np.int64)
        b = np.array([c[1] for c in cands], dtype=np.int64)
        dist = pair_distances(prep, a, b, L)
        stats.data_accesses = len(cands)
        limit = match_threshold(L, p.distance_config)
        code_of = dict(zip(starts.tolist(), codes))
        for i, j, d in zip(a.tolist(), b.tolist(), dist.tolist()):
            if d <= limit:
                records.append(MotifRecord(codes_to_word(code_of[i]), L, (i, j), (d,), ((i, j),)))
    if condense:
        records = condense_offsets(records, p.num_symbols)
    return BaselineResult(records, cands, counts, stats)


def random_projection_detect(ts: TimeSeries, p: BaselineParams, condense: bool = True) -> list:
    return random_projection_run(ts, p, condense).motifs


def detect_lengths(ts: TimeSeries, lengths: Sequence[int], symbol_size: int,
                   base: Optional[dict] = None, condense: bool = True) -> list:
    """Run the detector once per motif length with ``length // symbol_size`` symbols."""
    base = dict(base or {})
    pool = []
    for L in lengths:
        n_sym = max(1, L // symbol_size)
        opts = dict(base)
        opts["mask_size"] = min(opts.get("mask_size", 4), n_sym)
        p = BaselineParams(motif_length=L, num_symbols=n_sym, **opts)
        pool.extend(random_projection_detect(ts, p, condense))
    return sorted(pool, key=lambda m: (-m.length_points, m.occurrences))
