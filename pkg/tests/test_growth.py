import math
import random

import numpy as np
import pytest

from kolchin import (FreeAutomorphism, GrowthConfig, Word,
                     abelianization_matrix, classify_growth, compose,
                     conjugacy_class, default_seeds, generator_words,
                     identity_automorphism, iterate_lengths, survey,
                     twist_automorphism)

from conftest import W
from randgog import random_marked_gog, random_twist

SIGMA = FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b A")))
TAU = FreeAutomorphism(2, (W("a b"), W("b")), (W("a B"), W("b")))


class TestIterateLengths:
    def test_linear_growth_is_exact(self):
        series = iterate_lengths(SIGMA, conjugacy_class(W("b")), 5)
        assert series.lengths == (1, 2, 3, 4, 5, 6)

    def test_accepts_plain_words(self):
        series = iterate_lengths(SIGMA, W("b"), 3)
        assert series.lengths == (1, 2, 3, 4)
        assert series.seed == conjugacy_class(W("b"))

    def test_identity_is_constant(self):
        series = iterate_lengths(identity_automorphism(2), W("a b"), 6)
        assert series.lengths == (2,) * 7

    def test_lengths_are_conjugacy_invariants(self):
        aut = compose(SIGMA, TAU)
        u = W("a B a a")
        plain = iterate_lengths(aut, W("b"), 8).lengths
        conjugated = iterate_lengths(aut, u * W("b") * u.inverse(), 8).lengths
        assert plain == conjugated

    def test_fibonacci_lengths(self):
        aut = compose(SIGMA, TAU)
        series = iterate_lengths(aut, W("a"), 11)
        assert series.lengths == (1, 3, 8, 21, 55, 144, 377, 987,
                                  2584, 6765, 17711, 46368)

    def test_ceiling_stops_early(self):
        aut = compose(SIGMA, TAU)
        series = iterate_lengths(aut, W("a"), 30, length_ceiling=100)
        assert series.lengths == (1, 3, 8, 21, 55, 144)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            iterate_lengths(SIGMA, W("b"), 0)
        with pytest.raises(ValueError):
            iterate_lengths(SIGMA, Word(), 5)


class TestClassify:
    def test_arithmetic_series_is_linear(self):
        cls = classify_growth(list(range(1, 10)))
        assert cls.kind == "polynomial" and cls.degree == 1

    def test_geometric_series_is_exponential(self):
        cls = classify_growth([2 ** n for n in range(9)])
        assert cls.kind == "exponential"
        assert cls.rate == pytest.approx(2.0, rel=1e-6)

    def test_quadratic_series(self):
        cls = classify_growth([(n + 1) ** 2 for n in range(16)])
        assert cls.kind == "polynomial" and cls.degree == 2

    def test_constant_series_is_degree_zero(self):
        cls = classify_growth([7] * 10)
        assert cls.kind == "polynomial" and cls.degree == 0

    def test_fibonacci_rate(self):
        cls = classify_growth([1, 3, 8, 21, 55, 144, 377, 987,
                               2584, 6765, 17711, 46368])
        assert cls.kind == "exponential"
        golden_sq = (3 + math.sqrt(5)) / 2
        assert cls.rate == pytest.approx(golden_sq, rel=0.01)

    def test_short_series_rejected(self):
        with pytest.raises(ValueError):
            classify_growth([1, 2, 3])

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            classify_growth([1, 0, 1, 2, 3])

    def test_noise_is_inconclusive(self):
        rng = random.Random(5)
        lengths = [rng.randint(1, 10_000) for _ in range(16)]
        cls = classify_growth(lengths)
        assert cls.kind == "inconclusive"

    def test_as_dict(self):
        assert classify_growth(list(range(1, 10))).as_dict() == \
            {"kind": "polynomial", "degree": 1}
        exp = classify_growth([2 ** n for n in range(9)]).as_dict()
        assert exp["kind"] == "exponential" and exp["rate"] > 1.9


class TestGrowthInvariance:
    def test_inner_conjugation_preserves_the_series(self):
        # psi = conj_u o phi differs from phi by an inner automorphism,
        # so on conjugacy classes the two iterations agree exactly
        phi = compose(SIGMA, TAU)
        u = W("b a a")
        conj_u = FreeAutomorphism(2, (u * W("a") * u.inverse(),
                                      u * W("b") * u.inverse()),
                                  (u.inverse() * W("a") * u,
                                   u.inverse() * W("b") * u))
        psi = compose(conj_u, phi)
        for seed in default_seeds(2):
            assert iterate_lengths(phi, seed, 8).lengths == \
                iterate_lengths(psi, seed, 8).lengths

    def test_single_twist_grows_at_most_quadratically(self):
        rng = random.Random(23)
        for _ in range(5):
            gog, marking = random_marked_gog(rng, rank=2, moves=3)
            aut = twist_automorphism(random_twist(rng, gog, marking))
            for seed in default_seeds(2):
                series = iterate_lengths(aut, seed, 14)
                cls = classify_growth(series)
                assert cls.kind == "polynomial" and cls.degree <= 2

    def test_spectral_radius_forces_a_witness(self, hnn_pair):
        # one-sided check: a strictly expanding abelianization means some
        # seed class must grow exponentially
        aut = compose(twist_automorphism(hnn_pair[0]),
                      twist_automorphism(hnn_pair[1]))
        radius = max(abs(np.linalg.eigvals(abelianization_matrix(aut))))
        assert radius > 1.1
        kinds = {classify_growth(iterate_lengths(aut, seed, 15)).kind
                 for seed in default_seeds(2)}
        assert "exponential" in kinds


class TestSeedsAndWords:
    def test_default_seeds_rank_two(self):
        seeds = default_seeds(2)
        assert len(seeds) == 2 + 8
        assert {len(s) for s in seeds} == {1, 2}
        assert conjugacy_class(W("a")) in seeds
        assert conjugacy_class(W("a b")) in seeds
        # rotations collapse: a b and b a are the same class
        as_sets = [s.canonical_letters for s in seeds]
        assert len(set(as_sets)) == len(seeds)

    def test_generator_words_counts(self):
        assert generator_words(0) == (Word(),)
        words = generator_words(2)
        assert len(words) == 1 + 4 + 12
        assert all(w == w.__class__(w.letters) for w in words)  # all reduced
        assert len(set(words)) == len(words)


class TestSurvey:
    def test_hnn_pair_finds_witnesses(self, hnn_pair):
        out = survey(*hnn_pair, max_word_length=2, iterations=15)
        assert out["verdict"]["verdict"] == "NotKolchin"
        assert out["consistency"] == "consistent with NotKolchin"
        assert not out["disagreement"]
        assert len(out["exponential_witnesses"]) >= 1
        rates = [w["rate"] for w in out["exponential_witnesses"]]
        golden_sq = (3 + math.sqrt(5)) / 2
        assert any(abs(r - golden_sq) / golden_sq < 0.05 for r in rates)

    def test_kolchin_pair_finds_none(self, same_splitting_pair):
        out = survey(*same_splitting_pair, max_word_length=3, iterations=15)
        assert out["verdict"]["verdict"] == "Kolchin"
        assert out["exponential_witnesses"] == []
        assert out["consistency"] == "consistent with Kolchin"
        assert not out["disagreement"]

    def test_word_length_zero_sees_identity_only(self, hnn_pair):
        out = survey(*hnn_pair, max_word_length=0, iterations=8)
        assert out["exponential_witnesses"] == []
        assert {e["classification"]["kind"] for e in out["entries"]} == \
            {"polynomial"}
        assert all(e["classification"]["degree"] == 0 for e in out["entries"])
        assert out["consistency"].startswith("unconfirmed")

    def test_custom_seed_restriction(self, hnn_pair):
        out = survey(*hnn_pair, max_word_length=1, iterations=12,
                     seeds=[conjugacy_class(W("a"))])
        assert out["seeds"] == ["a"]
        assert all(e["seed"] == "a" for e in out["entries"])

    def test_entry_shape(self, hnn_pair):
        out = survey(*hnn_pair, max_word_length=1, iterations=6,
                     seeds=[conjugacy_class(W("b"))])
        entry = out["entries"][0]
        assert set(entry) == {"word", "seed", "lengths", "classification"}
        assert entry["word"] == "eps"
        assert entry["lengths"] == [1] * 7
