import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from scipy import stats

from mta.errors import InvalidAlphabetSize, SeriesTooShort, WindowTooLarge
from mta.preprocess import (
    PreparedSeries,
    TimeSeries,
    difference,
    make_alphabet,
    prepare,
    symbolize,
    z_normalize,
)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def prepared(values):
    return PreparedSeries(np.asarray(values, dtype=float), 0.0, 1.0)


class TestDifference:
    def test_small(self):
        assert difference(TimeSeries([1, 3, 2, 2])).tolist() == [2, -1, 0]

    def test_constant(self):
        assert difference(TimeSeries([5, 5, 5, 5])).tolist() == [0, 0, 0]

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            difference(TimeSeries([1.0]))

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            TimeSeries([1.0, float("nan")])


class TestZNormalize:
    def test_constant_is_degenerate(self):
        p = z_normalize([0, 0, 0])
        assert p.values.tolist() == [0, 0, 0]
        assert p.degenerate and p.std_divisor == 1.0

    def test_already_standard(self):
        assert z_normalize([-1, 1]).values.tolist() == [-1, 1]

    def test_hand_computed(self):
        # mean 1/3, population variance 14/9 -> [5, -4, -1] / sqrt(14)
        p = z_normalize([2, -1, 0])
        expected = np.array([5, -4, -1]) / math.sqrt(14)
        np.testing.assert_allclose(p.values, expected, atol=1e-12)
        assert not p.degenerate

    @given(arrays(float, st.integers(3, 200), elements=finite))
    def test_moments(self, x):
        p = z_normalize(x)
        if p.degenerate:
            assert np.all(p.values == 0)
        else:
            assert abs(p.values.mean()) < 1e-9
            assert abs(p.values.std() - 1) < 1e-9

    def test_prepared_length(self):
        assert len(prepare(TimeSeries(np.arange(960.0) ** 2))) == 959


class TestAlphabet:
    def test_two(self):
        assert make_alphabet(2).breakpoints.tolist() == [0.0]

    def test_four(self):
        np.testing.assert_allclose(make_alphabet(4).breakpoints, [-0.6745, 0, 0.6745], atol=1e-3)

    def test_six_central(self):
        b = make_alphabet(6).breakpoints
        assert abs(b[2] - 0.0) < 1e-12
        assert abs(b[3] - 0.43) < 5e-3 and abs(b[1] + 0.43) < 5e-3

    @pytest.mark.parametrize("a", range(2, 21))
    def test_quantiles_and_symmetry(self, a):
        alpha = make_alphabet(a)
        b = alpha.breakpoints
        assert len(b) == a - 1 and np.all(np.diff(b) > 0)
        np.testing.assert_allclose(b, -b[::-1], atol=1e-9)
        np.testing.assert_allclose(stats.norm.cdf(b), np.arange(1, a) / a, atol=1e-6)
        assert alpha.symbols == "abcdefghijklmnopqrst"[:a]

    @pytest.mark.parametrize("a", [0, 1, 21])
    def test_bad_size(self, a):
        with pytest.raises(InvalidAlphabetSize):
            make_alphabet(a)


class TestSymbolize:
    def test_zero_series_ties_upward(self):
        S = symbolize(prepared(np.zeros(50)), 10, make_alphabet(6))
        assert S.symbols == "d" * 41

    def test_breakpoint_straddle(self):
        alpha = make_alphabet(6)
        S1 = symbolize(prepared([0.433622] * 10), 10, alpha)
        S2 = symbolize(prepared([0.410164] * 10), 10, alpha)
        assert (S1.symbols, S2.symbols) == ("e", "d")

    def test_exact_breakpoint_takes_higher_symbol(self):
        alpha = make_alphabet(4)
        assert alpha.symbol_of(alpha.breakpoints[0]) == "b"
        assert alpha.symbol_of(np.nextafter(alpha.breakpoints[0], -1)) == "a"

    def test_length(self):
        rng = np.random.default_rng(1)
        S = symbolize(prepared(rng.normal(size=200)), 10, make_alphabet(6))
        assert len(S) == 191

    def test_window_too_large(self):
        with pytest.raises(WindowTooLarge):
            symbolize(prepared(np.zeros(5)), 6, make_alphabet(3))

    def test_matches_naive_means(self):
        rng = np.random.default_rng(7)
        x = rng.normal(size=300)
        alpha = make_alphabet(5)
        S = symbolize(prepared(x), 7, alpha)
        naive = "".join(alpha.symbol_of(np.mean(x[i:i + 7])) for i in range(len(x) - 6))
        assert S.symbols == naive

    def test_uniform_symbol_distribution(self):
        rng = np.random.default_rng(2024)
        alpha = make_alphabet(6)
        S = symbolize(prepared(rng.normal(size=10_000)), 1, alpha)
        counts = np.bincount(S.codes, minlength=6)
        assert stats.chisquare(counts).pvalue > 0.001

    @settings(max_examples=50, deadline=None)
    @given(
        arrays(float, st.integers(20, 120), elements=st.floats(-100, 100)),
        st.floats(-1e4, 1e4),
        st.integers(1, 8),
        st.integers(2, 10),
    )
    def test_shift_invariance_and_length_law(self, raw, shift, s, a):
        alpha = make_alphabet(a)
        S1 = symbolize(prepare(TimeSeries(raw)), s, alpha)
        S2 = symbolize(prepare(TimeSeries(raw + shift)), s, alpha)
        assert len(S1) == (len(raw) - 1) - s + 1
        assert set(S1.symbols) <= set(alpha.symbols)
        # the shift is exact only when differencing cancels it exactly; compare
        # symbols wherever the window mean is not within float noise of a breakpoint
        p1 = prepare(TimeSeries(raw)).values
        means = np.lib.stride_tricks.sliding_window_view(p1, s).mean(axis=1)
        near = np.min(np.abs(means[:, None] - alpha.breakpoints[None, :]), axis=1) < 1e-6
        a1, a2 = np.array(list(S1.symbols)), np.array(list(S2.symbols))
        assert np.all(a1[~near] == a2[~near])


@given(st.lists(st.integers(-1000, 1000), min_size=15, max_size=100), st.integers(-10**6, 10**6))
def test_shift_invariance_exact_for_integers(raw, shift):
    raw = np.array(raw, dtype=float)
    alpha = make_alphabet(6)
    S1 = symbolize(prepare(TimeSeries(raw)), 5, alpha)
    S2 = symbolize(prepare(TimeSeries(raw + shift)), 5, alpha)
    assert S1.symbols == S2.symbols
