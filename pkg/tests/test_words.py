"""Words module: framed family, overlap checker, decoder, guarded codes."""

from __future__ import annotations

import random
from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers
from semilen import (
    InputError,
    Role,
    TWO_LETTER,
    build_guarded_code,
    check_overlap,
    code_from_json,
    code_to_json,
    factorize,
    framed_code,
    framed_words,
    is_framed_word,
    word_from_str,
    word_to_str,
)

B1, B2 = 0, 1


def w(s: str):
    return word_from_str(s, TWO_LETTER)


# frozen by exhaustive enumeration over all 2^L binary words
FRAMED_COUNTS = {8: 1, 9: 2, 10: 2, 11: 4, 12: 7, 13: 10, 14: 17}


class TestFramedMembership:
    def test_minimal_member(self):
        assert is_framed_word(w("b1b1b1b2b1b2b2b2"))

    def test_short_word_rejected(self):
        assert not is_framed_word(w("b1b2"))

    def test_triple_run_in_body_rejected(self):
        # the body here is b2b2b2b1, which contains b2^3
        assert not is_framed_word(w("b1b1b1b2b2b2b1b2b2b2"))

    def test_wrong_alphabet_size(self):
        alpha = build_guarded_code({3: 1}).alphabet
        with pytest.raises(InputError):
            is_framed_word((0, 1, 2), alphabet=alpha)

    @settings(max_examples=300)
    @given(st.lists(st.integers(0, 1), min_size=1, max_size=16).map(tuple))
    def test_matches_definition_direct_check(self, word):
        assert is_framed_word(word) == helpers.brute_is_framed(word)


class TestFramedEnumeration:
    def test_below_minimum_length_is_empty(self):
        assert framed_words(7) == []

    def test_exhaustive_against_brute_force(self):
        enumerated = set(framed_words(14))
        brute = {
            word
            for length in range(8, 15)
            for word in product((0, 1), repeat=length)
            if helpers.brute_is_framed(word)
        }
        assert enumerated == brute
        assert dict(Counter(len(x) for x in enumerated)) == FRAMED_COUNTS

    def test_shortlex_order(self):
        ws = framed_words(13)
        keys = [(len(x), x) for x in ws]
        assert keys == sorted(keys)

    def test_cumulative_bound_at_twelve(self):
        assert sum(1 for x in framed_words(12)) >= 8  # 2^((12-6)/2)


class TestCheckOverlap:
    def test_framed_pair_passes(self):
        rep = check_overlap([w("b1b1b1b2b1b2b2b2"), w("b1b1b1b2b2b1b2b2b2")])
        assert rep.ok

    def test_prefix_suffix_violation(self):
        rep = check_overlap([w("b1b2"), w("b2b1")])
        assert not rep.ok
        v = rep.violation
        assert v.kind == "e2"
        assert v.y == w("b1b2")
        assert v.z == w("b2b1")
        assert v.u == w("b1")

    def test_singleton_passes(self):
        assert check_overlap([w("b1")]).ok

    def test_proper_factor_violation(self):
        long = w("b1b1b1b2b1b2b2b2")
        rep = check_overlap([long, long[:4]])
        assert not rep.ok
        assert rep.violation.kind == "e1"
        assert rep.violation.y == long[:4]
        assert rep.violation.z == long
        assert rep.violation.position == 0

    def test_empty_input_rejected(self):
        with pytest.raises(InputError):
            check_overlap([])

    def test_accepts_code_set(self):
        assert check_overlap(framed_code(14)).ok

    @settings(max_examples=150, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(0, 1), min_size=1, max_size=7).map(tuple),
            min_size=1,
            max_size=8,
        )
    )
    def test_agrees_with_quadratic_definition(self, words):
        assert check_overlap(words).ok == helpers.brute_overlap_ok(words)


class TestFactorize:
    def test_two_codeword_concatenation(self):
        code = framed_code(14)
        a, b = w("b1b1b1b2b1b2b2b2"), w("b1b1b1b2b2b1b2b2b2")
        res = factorize(a + b, code)
        assert res.ok and res.factors == (a, b)

    def test_single_codeword(self):
        code = framed_code(14)
        a = w("b1b1b1b2b1b2b2b2")
        assert factorize(a, code).factors == (a,)

    def test_unfactorizable(self):
        res = factorize(w("b1b2"), framed_code(14))
        assert not res.ok
        assert res.failure_position == 0

    def test_failure_position_mid_word(self):
        code = framed_code(14)
        a = w("b1b1b1b2b1b2b2b2")
        res = factorize(a + (B2, B1), code)
        assert not res.ok
        assert res.failure_position == len(a)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_round_trip(self, data):
        code = framed_code(14)
        seq = data.draw(
            st.lists(st.sampled_from(code.words), min_size=1, max_size=8)
        )
        cat = tuple(x for word in seq for x in word)
        res = factorize(cat, code)
        assert res.ok and list(res.factors) == list(seq)

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_planted_run_alignment(self, data):
        """A codeword run planted between factorizable flanks is
        recovered as a contiguous block of the unique factorization."""
        code = framed_code(13)
        flank = st.lists(st.sampled_from(code.words), min_size=0, max_size=3)
        prefix = data.draw(flank)
        planted = data.draw(
            st.lists(st.sampled_from(code.words), min_size=1, max_size=3)
        )
        suffix = data.draw(flank)
        whole = tuple(x for word in prefix + planted + suffix for x in word)
        res = factorize(whole, code)
        assert res.ok
        assert list(res.factors) == prefix + planted + suffix


class TestGuardedCode:
    def test_two_long_words(self):
        code = build_guarded_code({8: 1, 9: 1})
        assert code.alphabet.size == 3
        rendered = [word_to_str(word, code.alphabet) for word in code.words]
        assert rendered == ["s1" + "i1" * 6 + "e1", "s1" + "i1" * 7 + "e1"]

    def test_two_singletons(self):
        code = build_guarded_code({1: 2})
        assert [word_to_str(word, code.alphabet) for word in code.words] == ["d1", "d2"]
        assert code.alphabet.roles == (Role.SINGLETON, Role.SINGLETON)

    def test_mixed_demand(self):
        code = build_guarded_code({1: 1, 2: 3})
        rendered = [word_to_str(word, code.alphabet) for word in code.words]
        assert rendered == ["d1", "s1e1", "s1e2", "s1e3"]

    def test_rejects_bad_demand(self):
        with pytest.raises(InputError):
            build_guarded_code({0: 1})
        with pytest.raises(InputError):
            build_guarded_code({2: 0})
        with pytest.raises(InputError):
            build_guarded_code({})

    @settings(max_examples=150, deadline=None)
    @given(
        st.dictionaries(
            st.integers(1, 9), st.integers(1, 12), min_size=1, max_size=4
        )
    )
    def test_meets_demand_and_passes_overlap(self, demand):
        code = build_guarded_code(demand)
        per_length = Counter(len(word) for word in code.words)
        assert dict(per_length) == demand
        assert check_overlap(code).ok


class TestSerialization:
    def test_code_json_round_trip(self):
        for code in (framed_code(12), build_guarded_code({1: 2, 4: 5})):
            doc = code_to_json(code)
            back = code_from_json(doc)
            assert back.words == code.words
            assert back.alphabet == code.alphabet

    def test_word_string_round_trip(self):
        code = build_guarded_code({1: 1, 3: 2})
        for word in code.words:
            assert word_from_str(word_to_str(word, code.alphabet), code.alphabet) == word

    def test_rejects_malformed_documents(self):
        with pytest.raises(InputError):
            code_from_json([])
        with pytest.raises(InputError):
            code_from_json({"alphabet": {"size": 2}})
        with pytest.raises(InputError):
            code_from_json({"alphabet": {"size": 0}, "words": []})
        with pytest.raises(InputError):
            code_from_json({"alphabet": {"size": 2}, "words": [[0, 5]]})

    def test_rejects_unknown_letters(self):
        with pytest.raises(InputError):
            word_from_str("b1zz", TWO_LETTER)
