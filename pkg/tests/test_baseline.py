import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mta.baseline import (
    BaselineParams,
    candidate_pairs,
    collision_counts,
    condense_offsets,
    detect_lengths,
    eliminate_consecutive,
    local_sax,
    local_sax_codes,
    random_projection_detect,
    random_projection_run,
)
from mta.engine import MotifRecord, MtaConfig, euclidean_match
from mta.errors import IndivisibleLength, InvalidConfig
from mta.preprocess import TimeSeries, make_alphabet, prepare


def walk(seed, n=600):
    return TimeSeries(np.cumsum(np.random.default_rng(seed).normal(size=n)))


class TestParams:
    def test_paper_length_40_setup_is_valid(self):
        p = BaselineParams(motif_length=40, num_symbols=4, mask_size=4)
        assert (p.projection_iterations, p.cutoff, p.threshold_r) == (20, 20, 0.15)

    @pytest.mark.parametrize("kw, err", [
        (dict(motif_length=45, num_symbols=4), IndivisibleLength),
        (dict(motif_length=40, num_symbols=4, mask_size=5), InvalidConfig),
        (dict(motif_length=40, num_symbols=4, cutoff=21), InvalidConfig),
    ])
    def test_invalid(self, kw, err):
        with pytest.raises(err):
            BaselineParams(**kw)


class TestLocalSax:
    def test_constant_is_middle_symbol(self):
        assert local_sax(np.full(40, 3.0), 4, make_alphabet(6)) == "dddd"
        assert local_sax(np.full(30, -1.0), 3, make_alphabet(5)) == "ccc"

    def test_scale_and_shift_invariant(self):
        x = np.random.default_rng(0).normal(size=40)
        alpha = make_alphabet(6)
        assert local_sax(x, 4, alpha) == local_sax(3 * x + 7, 4, alpha)

    def test_frame_means(self):
        x = np.r_[np.full(10, -2.0), np.full(10, 2.0)]
        # z-scores are -1 and +1; a=4 breakpoints at +-0.674
        assert local_sax(x, 2, make_alphabet(4)) == "ad"

    def test_indivisible(self):
        with pytest.raises(IndivisibleLength):
            local_sax(np.zeros(41), 4, make_alphabet(6))

    def test_batch_matches_single(self):
        rng = np.random.default_rng(1)
        W = rng.normal(size=(20, 40))
        alpha = make_alphabet(6)
        codes = local_sax_codes(W, 4, alpha)
        assert ["".join("abcdef"[c] for c in row) for row in codes] == [local_sax(w, 4, alpha) for w in W]


class TestCollisions:
    def test_identical_words_collide_every_round(self):
        codes = np.array([[1, 2, 3, 4], [0, 0, 0, 0], [1, 2, 3, 4]])
        starts = np.array([0, 50, 100])
        p = BaselineParams(40, 4, mask_size=2, projection_iterations=13, cutoff=13, rng_seed=9)
        counts = collision_counts(codes, starts, p)
        assert counts[(0, 100)] == 13
        assert all(c <= 13 for c in counts.values())

    def test_overlapping_pairs_excluded(self):
        codes = np.zeros((5, 4), dtype=int)
        starts = np.array([0, 10, 39, 40, 80])
        counts = collision_counts(codes, starts, BaselineParams(40, 4))
        assert set(counts) == {(0, 40), (0, 80), (10, 80), (39, 80), (40, 80)}

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 1000), st.integers(1, 20))
    def test_lower_cutoff_keeps_candidates(self, seed, cutoff):
        rng = np.random.default_rng(seed)
        codes = rng.integers(0, 3, size=(60, 4))
        p = BaselineParams(4, 4, mask_size=2, projection_iterations=20, rng_seed=seed)
        counts = collision_counts(codes, np.arange(0, 600, 10), p)
        hi = set(candidate_pairs(counts, cutoff))
        lo = set(candidate_pairs(counts, max(1, cutoff - 1)))
        assert hi <= lo


class TestDetect:
    def test_deterministic_given_seed(self):
        ts = walk(3)
        p = BaselineParams(40, 4, rng_seed=11, mask_size=3)
        assert random_projection_detect(ts, p) == random_projection_detect(ts, p)

    def test_confirmed_pairs_use_engine_distance(self):
        ts = walk(4)
        p = BaselineParams(40, 4)
        prep = prepare(ts)
        res = random_projection_run(ts, p, condense=False)
        assert res.stats.data_accesses == len(res.candidates)
        for m in res.motifs:
            (i, j), d = m.pairs[0], m.distances[0]
            assert euclidean_match(prep.values[i:i + 40], prep.values[j:j + 40], MtaConfig()) == (d, True)
            assert j - i >= 40

    def test_planted_copies_found(self):
        rng = np.random.default_rng(8)
        d = rng.normal(size=700)
        d[400:470] = d[100:170]
        ts = TimeSeries(np.r_[0.0, np.cumsum(d)])
        pool = random_projection_detect(ts, BaselineParams(70, 7, mask_size=4))
        assert any(m.occurrences == (100, 400) and m.distances[0] < 1e-9 for m in pool)

    def test_tme_never_adds_candidates(self):
        ts = walk(5)
        base = random_projection_run(ts, BaselineParams(40, 4, mask_size=3))
        tme = random_projection_run(ts, BaselineParams(40, 4, mask_size=3, tme=True))
        assert set(tme.candidates) <= set(base.candidates)

    def test_detect_lengths_clamps_mask(self):
        pool = detect_lengths(walk(6), [80, 30], 10)
        assert {m.length_points for m in pool} <= {80, 30}


def test_eliminate_consecutive():
    assert eliminate_consecutive(list("aaabba")).tolist() == [True, False, False, True, False, True]


def test_condense_offsets():
    recs = [MotifRecord("w", 40, (i, j), (d,), ((i, j),)) for i, j, d in
            [(79, 887, 0.92), (80, 888, 1.1), (81, 889, 0.95), (200, 500, 1.0), (210, 510, 0.5)]]
    out = condense_offsets(recs, 4)
    assert [m.pairs[0] for m in out] == [(79, 887), (200, 500), (210, 510)]
