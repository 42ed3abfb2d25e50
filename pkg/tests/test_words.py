import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kolchin import (CyclicWord, FreeAutomorphism, Word, abelianization_matrix,
                     automorphism_power, check_basis_names, compose,
                     conjugacy_class, cyclic_reduce, free_reduce,
                     generates_free_group, identity_automorphism,
                     nielsen_reduce, parse_word, power_exponent, word_str)
from kolchin.words import cyclic_coset_representative

from conftest import W

letters_f2 = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12)


def brute_reduce(letters):
    """Oracle: cancel any adjacent inverse pair, in every possible order."""
    letters = list(letters)
    while True:
        spots = [i for i in range(len(letters) - 1)
                 if letters[i] == -letters[i + 1]]
        if not spots:
            return tuple(letters)
        i = random.Random(0).choice(spots)
        del letters[i:i + 2]


class TestReduce:
    def test_inverse_pair(self):
        assert W("a A") == Word()

    def test_single_cancellation(self):
        assert W("b a A b") == W("b b")

    def test_nested_cancellation(self):
        assert W("a b B A a") == W("a")

    def test_rank_guard(self):
        with pytest.raises(ValueError, match="out of rank range"):
            free_reduce((1, 3), rank=2)
        assert free_reduce((1, -1), rank=2) == Word()

    def test_zero_letter_rejected(self):
        with pytest.raises(ValueError):
            Word((0,))

    @given(letters_f2)
    def test_matches_brute_force(self, letters):
        assert Word(letters).letters == brute_reduce(letters)

    @given(letters_f2)
    def test_idempotent(self, letters):
        w = Word(letters)
        assert Word(w.letters) == w

    @given(letters_f2)
    def test_inverse_cancels(self, letters):
        w = Word(letters)
        assert w * w.inverse() == Word()
        assert w.inverse() * w == Word()


class TestCyclicReduce:
    def test_one_peel(self):
        core, conj = cyclic_reduce(W("a b A"))
        assert (core, conj) == (W("b"), W("a"))

    def test_already_reduced(self):
        assert cyclic_reduce(W("b a")) == (W("b a"), Word())

    def test_two_peels(self):
        # w has length 6, so the core length must have the same parity;
        # peeling twice gives the length-4 core b a B A conjugated by a.
        w = W("a b a B A A")
        core, conj = cyclic_reduce(w)
        assert core == W("b a B A")
        assert conj == W("a")
        assert conj * core * conj.inverse() == w

    @given(letters_f2)
    def test_decomposition_identity(self, letters):
        w = Word(letters)
        core, conj = cyclic_reduce(w)
        assert conj * core * conj.inverse() == w
        if len(core) >= 2:
            assert core.letters[0] != -core.letters[-1]

    @given(letters_f2, letters_f2)
    def test_conjugation_invariance(self, u_letters, w_letters):
        u, w = Word(u_letters), Word(w_letters)
        assert conjugacy_class(u * w * u.inverse()) == conjugacy_class(w)


class TestCyclicWord:
    def test_rotation_equality(self):
        assert CyclicWord(W("a b")) == CyclicWord(W("b a"))
        assert hash(CyclicWord(W("a b"))) == hash(CyclicWord(W("b a")))

    def test_not_cyclically_reduced_rejected(self):
        with pytest.raises(ValueError):
            CyclicWord(W("a b A"))

    def test_canonical_letter_order(self):
        # a < A < b < B fixes the least rotation
        assert CyclicWord(W("b A")).canonical_letters == (-1, 2)

    def test_inverse_distinct(self):
        assert CyclicWord(W("a b")) != CyclicWord(W("B A"))


class TestPowerExponent:
    def test_visible_power(self):
        assert power_exponent(W("a b a b a b"), W("a b")) == 3

    def test_identity_is_zeroth_power(self):
        assert power_exponent(Word(), W("a")) == 0

    def test_non_member(self):
        assert power_exponent(W("a b A"), W("a")) is None

    def test_conjugated_base(self):
        w = W("a b A")
        assert power_exponent(w * w, w) == 2
        assert power_exponent(w.inverse(), w) == -1

    def test_trivial_base_rejected(self):
        with pytest.raises(ValueError):
            power_exponent(W("a"), Word())

    @given(letters_f2, st.integers(-4, 4))
    def test_against_enumeration(self, letters, k):
        w = Word(letters)
        if not w:
            return
        g = w ** k
        want = next(n for n in sorted(range(-5, 6), key=abs) if w ** n == g)
        assert power_exponent(g, w) == want

    @given(letters_f2, letters_f2)
    def test_random_pairs_match_enumeration(self, g_letters, w_letters):
        g, w = Word(g_letters), Word(w_letters)
        if not w:
            return
        bound = len(g) // max(1, len(cyclic_reduce(w)[0])) + 1
        brute = next((k for k in range(-bound, bound + 1) if w ** k == g), None)
        assert power_exponent(g, w) == brute


class TestCosetRepresentative:
    def test_strips_full_power(self):
        rep, k = cyclic_coset_representative(W("b a a"), W("a"))
        assert rep == W("b") and k == 2

    def test_identity_coset(self):
        assert cyclic_coset_representative(Word(), W("a b")) == (Word(), 0)

    @given(letters_f2, letters_f2)
    def test_decomposition_and_minimality(self, g_letters, w_letters):
        g, w = Word(g_letters), Word(w_letters)
        if not w:
            return
        rep, k = cyclic_coset_representative(g, w)
        assert rep * w ** k == g
        for m in range(-3, 4):
            assert len(rep) <= len(g * w ** m)


class TestTextGrammar:
    def test_parse_round_trip(self):
        w = W("a b B A b")
        assert parse_word(word_str(w, ("a", "b")), ("a", "b")) == w

    def test_eps(self):
        assert W("eps") == Word()
        assert word_str(Word(), ("a", "b")) == "eps"

    def test_unknown_letter(self):
        with pytest.raises(ValueError, match="unknown letter"):
            W("a q")

    def test_mixed_case_rejected(self):
        with pytest.raises(ValueError, match="mixed-case"):
            parse_word("aB", ("ab",))

    def test_multi_character_names(self):
        basis = ("x1", "x2")
        assert parse_word("x1 X2", basis).letters == (1, -2)
        assert word_str(Word((1, -2)), basis) == "x1 X2"

    @pytest.mark.parametrize("bad", [("A",), ("a", "a"), ("eps",),
                                     ("a b",), ("a.b",), ("",), ("1",)])
    def test_bad_basis_names(self, bad):
        with pytest.raises(ValueError):
            check_basis_names(bad)


class TestFreeAutomorphism:
    def test_apply(self):
        sigma = FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b A")))
        assert sigma(W("b")) == W("b a")
        assert sigma(W("B")) == W("A B")

    def test_identity(self):
        assert identity_automorphism(2)(W("a b")) == W("a b")

    def test_constructor_rejects_non_inverse(self):
        with pytest.raises(ValueError, match="invert"):
            FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b a")))

    def test_constructor_rejects_non_automorphism(self):
        with pytest.raises(ValueError):
            FreeAutomorphism(2, (W("a"), W("a")), (W("a"), W("a")))

    def test_compose_convention(self):
        sigma = FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b A")))
        tau = FreeAutomorphism(2, (W("a b"), W("b")), (W("a B"), W("b")))
        st_ = compose(sigma, tau)
        assert st_(W("a")) == W("a b a")
        assert st_(W("b")) == W("b a")

    def test_compose_with_inverse_is_identity(self):
        sigma = FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b A")))
        assert compose(sigma, sigma.inverse()) == identity_automorphism(2)

    def test_self_compose(self):
        sigma = FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b A")))
        assert compose(sigma, sigma).images == (W("a"), W("b a a"))

    def test_power(self):
        sigma = FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b A")))
        assert automorphism_power(sigma, 3)(W("b")) == W("b a a a")
        assert automorphism_power(sigma, -2)(W("b")) == W("b A A")
        assert automorphism_power(sigma, 0) == identity_automorphism(2)


class TestAbelianization:
    def test_twist_matrix(self):
        sigma = FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b A")))
        assert abelianization_matrix(sigma).tolist() == [[1, 1], [0, 1]]

    def test_identity_matrix(self):
        assert abelianization_matrix(identity_automorphism(3)).tolist() == \
            np.eye(3, dtype=int).tolist()

    def test_multiplicative(self):
        sigma = FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b A")))
        tau = FreeAutomorphism(2, (W("a b"), W("b")), (W("a B"), W("b")))
        prod = abelianization_matrix(sigma) @ abelianization_matrix(tau)
        assert abelianization_matrix(compose(sigma, tau)).tolist() == prod.tolist()
        assert prod.tolist() == [[2, 1], [1, 1]]

    def test_unimodular(self):
        sigma = FreeAutomorphism(2, (W("a"), W("b a")), (W("a"), W("b A")))
        for aut in (sigma, compose(sigma, sigma.inverse()), sigma.inverse()):
            det = round(float(np.linalg.det(abelianization_matrix(aut))))
            assert det in (1, -1)


class TestGeneration:
    def test_basis_with_product(self):
        assert generates_free_group([W("a b"), W("b")], 2)

    def test_too_few(self):
        assert not generates_free_group([W("a")], 2)

    def test_even_exponent_obstruction(self):
        # every generator has even a-exponent, so the subgroup misses a:
        # its image in F_2^ab lies in 2Z x Z.
        assert not generates_free_group([W("a a"), W("b"), W("a b a")], 2)

    def test_redundant_generators(self):
        assert generates_free_group([W("a a b"), W("a b"), W("b")], 2)

    def test_conjugate_of_one_letter_not_enough(self):
        assert not generates_free_group([W("a b A"), W("b")], 2)

    def test_index_two_subgroup(self):
        assert not generates_free_group([W("a a"), W("b"), W("a b A")], 2)

    def test_nielsen_reduce_finds_basis(self):
        assert nielsen_reduce([W("a b"), W("b")]) == (W("a"), W("b"))

    def test_nielsen_reduce_drops_trivial(self):
        assert nielsen_reduce([Word(), W("a")]) == (W("a"),)

    @given(st.lists(letters_f2, min_size=1, max_size=4))
    def test_nielsen_preserves_membership(self, raw):
        words = [Word(l) for l in raw]
        reduced = nielsen_reduce(words)
        # the reduced family still generates every original word's class:
        # verify through the fold-based membership test
        from kolchin.words import _StallingsGraph
        graph = _StallingsGraph(reduced)
        assert all(graph.contains(w) for w in words)

    @given(st.permutations([W("a"), W("b")]), letters_f2)
    def test_basis_conjugates(self, basis, conj_letters):
        u = Word(conj_letters)
        words = [u * w * u.inverse() for w in basis]
        assert generates_free_group(words + [u], 2)
