"""Series preparation: first differences, global z-normalization and
sliding-window symbolization against equiprobable Gaussian breakpoints."""
from __future__ import annotations

import string
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np

from .errors import InvalidAlphabetSize, SeriesTooShort, WindowTooLarge

MAX_ALPHABET = 20
_DEGENERATE_STD = 1e-12


@dataclass(frozen=True)
class TimeSeries:
    values: np.ndarray
    name: str = "series"
    source: str = "synthetic"

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise SeriesTooShort("a time series needs at least one value")
        if not np.all(np.isfinite(values)):
            raise ValueError("time series values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class PreparedSeries:
    """Z-scored first differences. Index ``i`` covers raw interval ``[i, i+1]``."""

    values: np.ndarray
    mean_removed: float
    std_divisor: float
    degenerate: bool = False
    offset_shift: int = 1

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class Alphabet:
    size_a: int
    breakpoints: np.ndarray
    symbols: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "symbols", string.ascii_lowercase[: self.size_a])

    def symbol_of(self, value: float) -> str:
        return self.symbols[int(np.searchsorted(self.breakpoints, value, side="right"))]


@dataclass(frozen=True)
class SymbolMatrix:
    """One symbol per sliding-window start; ``codes[i]`` is the symbol index."""

    codes: np.ndarray
    symbol_size_s: int
    prepared_len: int
    alphabet: Alphabet

    @property
    def symbols(self) -> str:
        return codes_to_word(self.codes)

    def __len__(self):
        return self.codes.size


def codes_to_word(codes) -> str:
    return (np.asarray(codes, dtype=np.uint8) + ord("a")).tobytes().decode("ascii")


def word_to_codes(word: str) -> np.ndarray:
    return np.frombuffer(word.encode("ascii"), dtype=np.uint8).astype(np.int64) - ord("a")


def difference(ts: TimeSeries) -> np.ndarray:
    if len(ts) < 2:
        raise SeriesTooShort(f"differencing needs at least 2 values, got {len(ts)}")
    return np.diff(ts.values)


def z_normalize(diffs) -> PreparedSeries:
    x = np.asarray(diffs, dtype=float)
    if x.size == 0:
        raise SeriesTooShort("cannot normalize an empty series")
    mean = float(x.mean())
    std = float(x.std())
    if std < _DEGENERATE_STD:
        values = np.zeros_like(x)
        values.setflags(write=False)
        return PreparedSeries(values, mean, 1.0, degenerate=True)
    values = (x - mean) / std
    values.setflags(write=False)
    return PreparedSeries(values, mean, std)


def prepare(ts: TimeSeries) -> PreparedSeries:
    return z_normalize(difference(ts))


def make_alphabet(a: int) -> Alphabet:
    if not 2 <= a <= MAX_ALPHABET:
        raise InvalidAlphabetSize(f"alphabet size must be in [2, {MAX_ALPHABET}], got {a}")
    nd = NormalDist()
    bps = np.array([nd.inv_cdf(k / a) for k in range(1, a)])
    # exact symmetry; inv_cdf is accurate but not bitwise antisymmetric
    bps = (bps - bps[::-1]) / 2.0
    if a % 2 == 0:
        bps[a // 2 - 1] = 0.0
    return Alphabet(a, bps)


def window_means(values: np.ndarray, s: int) -> np.ndarray:
    return np.lib.stride_tricks.sliding_window_view(values, s).mean(axis=1)


def symbolize(prep: PreparedSeries, s: int, alpha: Alphabet) -> SymbolMatrix:
    """Average each length-``s`` sliding window and map it to a symbol.

    Intervals are half open, ``[b_{k-1}, b_k)``, so a mean that lands exactly on
    a breakpoint takes the higher symbol.
    """
    if s < 1:
        raise WindowTooLarge(f"symbol size must be >= 1, got {s}")
    if s > len(prep):
        raise WindowTooLarge(f"symbol size {s} exceeds prepared length {len(prep)}")
    means = window_means(prep.values, s)
    codes = np.searchsorted(alpha.breakpoints, means, side="right").astype(np.int64)
    codes.setflags(write=False)
    return SymbolMatrix(codes, s, len(prep), alpha)

