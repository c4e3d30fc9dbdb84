from itertools import product

import pytest

from starfree.automata import Alphabet, parse_regex, regex_to_dfa
from starfree.sensitivity import (
    brute_block_sensitivity,
    brute_sensitivity,
    build_mask_automata,
    sensitivity_by_length,
)
from starfree.errors import BudgetExceededError, CapExceededError
from conftest import fixture_dfa
from oracle_tools import words_upto

A2 = Alphabet(("0", "1"))


def true_mask(dfa, word):
    """The sensitivity mask of one word, by direct definition."""
    bits = []
    member = dfa.accepts(word)
    for i in range(len(word)):
        sensitive = False
        for a in dfa.alphabet.symbols:
            if a == word[i]:
                continue
            flipped = word[:i] + (a,) + word[i + 1 :]
            if dfa.accepts(flipped) != member:
                sensitive = True
        bits.append("1" if sensitive else "0")
    return tuple(bits)


@pytest.fixture(scope="module")
def or_mask():
    return build_mask_automata(fixture_dfa("or"))


class TestMaskAutomata:
    def test_s_prime_matches_definition(self, or_mask):
        dfa = fixture_dfa("or")
        pair_alpha = or_mask.pair_alphabet
        for w in words_upto(dfa.alphabet, 5):
            mask = true_mask(dfa, w)
            for candidate in product("01", repeat=len(w)):
                word = tuple(f"{s}/{b}" for s, b in zip(w, candidate))
                want = candidate == mask
                assert or_mask.s_prime.accepts(word) == want, (w, candidate)

    def test_or_all_ones_masks(self, or_mask):
        # the all-zeros input is fully sensitive at every length
        for n in range(1, 7):
            assert or_mask.determinized.accepts(("1",) * n)

    def test_sigma_star_masks_all_zero(self):
        mask = build_mask_automata(fixture_dfa("sigma-star"))
        for n in range(6):
            assert mask.determinized.accepts(("0",) * n)
            if n:
                assert not mask.determinized.accepts(("1",) + ("0",) * (n - 1))

    def test_parity_masks_all_one(self):
        mask = build_mask_automata(fixture_dfa("parity"))
        for n in range(6):
            assert mask.determinized.accepts(("1",) * n)
            if n:
                assert not mask.determinized.accepts(("0",) + ("1",) * (n - 1))

    def test_cap(self):
        with pytest.raises(CapExceededError):
            build_mask_automata(fixture_dfa("infix"), cap=10)


class TestSensitivityByLength:
    def test_or_linear(self, or_mask):
        prof = sensitivity_by_length(or_mask, 32)
        assert prof.values[1:9] == list(range(1, 9))
        assert prof.verdict == "linear-lower"
        assert prof.slope_p == 1 and prof.offset_c == 0

    def test_trivial_constant_two(self):
        prof = sensitivity_by_length(build_mask_automata(fixture_dfa("trivial")), 32)
        assert prof.verdict == "constant" and prof.bound == 2
        assert max(prof.values) == 2

    def test_zero_length(self, or_mask):
        prof = sensitivity_by_length(or_mask, 4)
        assert prof.values[0] == 0

    def test_csv(self, or_mask):
        text = sensitivity_by_length(or_mask, 4).csv()
        assert text.startswith("n,sensitivity\n0,0\n")
        assert "verdict:" in text


class TestBruteForce:
    def test_or_examples(self):
        dfa = fixture_dfa("or")
        assert brute_sensitivity(dfa, 4) == 4

    def test_sigma_star(self):
        assert brute_sensitivity(fixture_dfa("sigma-star"), 4) == 0

    def test_infix_matches_automaton(self):
        dfa = fixture_dfa("infix")
        mask = build_mask_automata(dfa)
        prof = sensitivity_by_length(mask, 7)
        for n in range(8):
            assert brute_sensitivity(dfa, n) == prof.values[n]

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            brute_sensitivity(fixture_dfa("or"), 30)

    def test_block_sensitivity_examples(self):
        assert brute_block_sensitivity(fixture_dfa("or"), 4) == 4
        assert brute_block_sensitivity(fixture_dfa("parity"), 4) == 4
        assert brute_block_sensitivity(fixture_dfa("sigma-star"), 5) == 0

    def test_s_at_most_bs(self):
        for name in ("or", "parity", "trivial", "word-break"):
            dfa = fixture_dfa(name)
            for n in range(1, 7):
                assert brute_sensitivity(dfa, n) <= brute_block_sensitivity(dfa, n)
