"""Brute-force motif finder and planted-motif generator.

The brute-force finder is deliberately naive: it recomputes window means
one window at a time, enumerates start pairs explicitly and calls the
scalar distance test pair by pair. It exists to check the tracking engine
on small series, not to be fast.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .engine import MotifRecord, MtaConfig, euclidean_match, streamline
from .errors import PlacementFailed, SeriesTooLong, WindowTooLarge
from .preprocess import PreparedSeries, TimeSeries, make_alphabet

DEFAULT_MAX_LEN = 5000


def generation_lengths(prep_len: int, s: int) -> list[int]:
    """Word lengths ``g*s`` for every generation that has at least one start."""
    n_symbols = prep_len - s + 1
    if n_symbols < 1:
        return []
    return [g * s for g in range(1, (n_symbols - 1) // s + 2)]


def _naive_symbols(values: np.ndarray, s: int, breakpoints: Sequence[float]) -> list[int]:
    bps = list(breakpoints)
    return [bisect_right(bps, float(np.mean(values[i:i + s]))) for i in range(len(values) - s + 1)]


def brute_force_pairs(prep: PreparedSeries, length: int, cfg: MtaConfig,
                      require_symbol_equality: bool, symbols: Optional[list] = None) -> dict:
    """All matching start pairs ``(i, j)``, ``i < j``, for one subsequence length."""
    n = len(prep)
    if length > n or length < 1:
        raise WindowTooLarge(f"length {length} does not fit a prepared series of {n} points")
    values = prep.values
    s = cfg.symbol_size_s
    starts = range(n - length + 1)
    if require_symbol_equality:
        if length % s:
            raise WindowTooLarge(f"length {length} is not a multiple of symbol size {s}")
        if symbols is None:
            symbols = _naive_symbols(values, s, make_alphabet(cfg.alphabet_a).breakpoints)
        buckets: dict[tuple, list[int]] = {}
        for i in starts:
            buckets.setdefault(tuple(symbols[i:i + length:s]), []).append(i)
        pair_iter = (p for group in buckets.values() for p in combinations(group, 2))
    else:
        pair_iter = combinations(starts, 2)
    found = {}
    for i, j in pair_iter:
        d, ok = euclidean_match(values[i:i + length], values[j:j + length], cfg)
        if ok:
            found[(i, j)] = d
    return found


def _components(pairs) -> list[list[tuple]]:
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list] = {}
    for pair in pairs:
        groups.setdefault(find(pair[0]), []).append(pair)
    return list(groups.values())


def brute_force_records(prep: PreparedSeries, lengths: Sequence[int], cfg: MtaConfig,
                        require_symbol_equality: bool = True,
                        max_len: int = DEFAULT_MAX_LEN) -> list:
    """Unstreamlined motif records, one per word (or per connected pair set)."""
    if len(prep) > max_len:
        raise SeriesTooLong(f"brute force is capped at {max_len} points, got {len(prep)}")
    s = cfg.symbol_size_s
    symbols = None
    if require_symbol_equality:
        symbols = _naive_symbols(prep.values, s, make_alphabet(cfg.alphabet_a).breakpoints)
    records = []
    for L in lengths:
        found = brute_force_pairs(prep, L, cfg, require_symbol_equality, symbols)
        if not found:
            continue
        if require_symbol_equality:
            by_word: dict[str, list] = {}
            for (i, j) in found:
                word = "".join(chr(ord("a") + c) for c in symbols[i:i + L:s])
                by_word.setdefault(word, []).append((i, j))
            groups = list(by_word.items())
        else:
            groups = [("", comp) for comp in _components(sorted(found))]
        for word, pairs in groups:
            pairs = sorted(pairs)
            records.append(MotifRecord(
                word=word,
                length_points=L,
                occurrences=[x for p in pairs for x in p],
                distances=[found[p] for p in pairs],
                pairs=pairs,
            ))
    return records


def brute_force_motifs(prep: PreparedSeries, lengths: Optional[Sequence[int]], cfg: MtaConfig,
                       require_symbol_equality: bool = True,
                       max_len: int = DEFAULT_MAX_LEN) -> list:
    if lengths is None:
        lengths = generation_lengths(len(prep), cfg.symbol_size_s)
    return streamline(brute_force_records(prep, lengths, cfg, require_symbol_equality, max_len))


@dataclass(frozen=True)
class MotifTemplate:
    shape: tuple
    copies: int = 2
    noise_std: float = 0.0


@dataclass(frozen=True)
class PlantSpec:
    series_length: int
    motif_templates: tuple = field(default_factory=tuple)
    background_std: float = 1.0
    rng_seed: int = 0
    max_attempts: int = 1000


def generate_planted(spec: PlantSpec):
    """Gaussian background with non-overlapping noisy copies of each template.

    Returns the series and ground truth ``[{"starts": [...], "length": L}, ...]``
    in raw index coordinates, one entry per template.
    """
    rng = np.random.default_rng(spec.rng_seed)
    x = rng.normal(0.0, spec.background_std, spec.series_length)
    taken: list[tuple[int, int]] = []
    truth = []
    for tpl in spec.motif_templates:
        shape = np.asarray(tpl.shape, dtype=float)
        L = shape.size
        if L > spec.series_length:
            raise PlacementFailed(f"template of length {L} exceeds series length {spec.series_length}")
        starts = []
        for _ in range(tpl.copies):
            for _attempt in range(spec.max_attempts):
                p = int(rng.integers(0, spec.series_length - L + 1))
                if all(p + L <= a or b <= p for a, b in taken):
                    break
            else:
                raise PlacementFailed(f"could not place a copy of a length-{L} template")
            taken.append((p, p + L))
            x[p:p + L] = shape + rng.normal(0.0, tpl.noise_std, L) if tpl.noise_std > 0 else shape
            starts.append(p)
        truth.append({"starts": sorted(starts), "length": L})
    return TimeSeries(x, name="planted", source="synthetic"), truth
