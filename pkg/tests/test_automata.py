from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from starfree.automata import (
    Alphabet,
    Alt,
    And,
    Cat,
    Dfa,
    Empty,
    Epsilon,
    Lit,
    Not,
    Star,
    binarize,
    binarize_word,
    debinarize_word,
    dfa_sigma_star,
    enumerate_language,
    equivalent,
    format_dfa_file,
    minimize,
    parse_dfa_file,
    parse_regex,
    parse_regex_file,
    regex_to_dfa,
)
from starfree.errors import (
    AlphabetMismatchError,
    BudgetExceededError,
    FileFormatError,
    RegexSyntaxError,
    UnknownSymbolError,
)
from oracle_tools import interpret_regex, words_upto

A2 = Alphabet(("0", "1"))
A3 = Alphabet(("0", "1", "2"))
ABC = Alphabet(("a", "b", "c"))

INFIX_RX = "~%0 2 ~(~%0 (1|2) ~%0) 2 ~%0"


def hand_built_infix_dfa():
    # 0: nothing pending, 1: inside a "2 0*" run, 2: found
    delta = np.array([[0, 0, 1], [1, 0, 2], [2, 2, 2]], dtype=np.int32)
    return Dfa(A3, delta, 0, {2})


def appendix_c_dfa():
    delta = np.array([[1, 2, 0], [2, 0, 1], [2, 2, 2]], dtype=np.int32)
    return Dfa(ABC, delta, 0, {0})


class TestParse:
    def test_empty_literal(self):
        assert isinstance(parse_regex("%0", A2).node, Empty)

    def test_complement_of_empty(self):
        node = parse_regex("~%0", ABC).node
        assert isinstance(node, Not) and isinstance(node.child, Empty)

    def test_paper_star_free_infix_expression(self):
        # the star-free expression for the "2, only 0s, then 2" infix language
        ast = parse_regex(INFIX_RX, A3)
        got = regex_to_dfa(ast)
        assert equivalent(got, hand_built_infix_dfa())[0]

    def test_precedence(self):
        # ~ binds tighter than concatenation, * tighter than ~
        ast = parse_regex("~ 0 1", A2)
        assert isinstance(ast.node, Cat) and isinstance(ast.node.parts[0], Not)
        ast = parse_regex("~ 0 *", A2)
        assert isinstance(ast.node, Not) and isinstance(ast.node.child, Star)
        ast = parse_regex("0 1 | 1 0 & 0", A2)
        assert isinstance(ast.node, Alt)
        assert isinstance(ast.node.parts[1], And)

    def test_errors(self):
        with pytest.raises(RegexSyntaxError):
            parse_regex("(0", A2)
        with pytest.raises(RegexSyntaxError):
            parse_regex("0 |", A2)
        with pytest.raises(UnknownSymbolError):
            parse_regex("2", A2)

    def test_regex_file_header(self):
        ast = parse_regex_file("alphabet: a b\n a b*\n")
        assert ast.alphabet.symbols == ("a", "b")
        with pytest.raises(FileFormatError):
            parse_regex_file("a b*\n")


class TestRegexToDfa:
    def test_epsilon(self):
        d = regex_to_dfa(parse_regex("%e", A2))
        assert d.accepts(()) and not d.accepts(("0",))

    def test_c_star(self):
        d = regex_to_dfa(parse_regex("c*", ABC))
        assert d.accepts(()) and d.accepts(("c", "c")) and not d.accepts(("a",))

    def test_or_language_two_states(self):
        d = regex_to_dfa(parse_regex("~%0 1 ~%0", A2))
        assert d.n_states == 2
        for w in words_upto(A2, 6):
            assert d.accepts(w) == ("1" in w)

    def test_denotation_matches_interpretation(self):
        cases = [
            ("(0|1)* 1", A2),
            ("~(0*) & ~%0", A2),
            ("(0 1)* | 1*", A2),
            ("~(~%0 2 ~%0)", A3),
            ("(a|b) c* (a|b)", ABC),
        ]
        for text, alpha in cases:
            ast = parse_regex(text, alpha)
            dfa = regex_to_dfa(ast)
            got = set(enumerate_language(dfa, 6))
            want = interpret_regex(ast.node, alpha, 6)
            assert got == want, text


class TestMinimize:
    def test_idempotent_on_minimal(self):
        d = minimize(appendix_c_dfa())
        again = minimize(d)
        assert d.n_states == again.n_states
        assert np.array_equal(d.delta, again.delta)
        assert d.accept == again.accept

    def test_appendix_c_three_states(self):
        assert minimize(appendix_c_dfa()).n_states == 3

    def test_product_built_infix_minimal(self):
        d = regex_to_dfa(parse_regex(INFIX_RX, A3))
        m = minimize(d)
        assert equivalent(d, m)[0]
        assert np.array_equal(m.delta, minimize(m).delta)

    def test_language_preserved(self):
        # pad a DFA with redundant states, minimize, compare
        base = regex_to_dfa(parse_regex("(0 1)*", A2))
        delta = np.vstack([base.delta, base.delta[[0]]])
        padded = Dfa(A2, delta, base.start, base.accept)
        assert equivalent(minimize(padded), base)[0]


class TestEquivalent:
    def test_reflexive(self):
        d = appendix_c_dfa()
        assert equivalent(d, d) == (True, None)

    def test_sigma_star_vs_plus(self):
        star = regex_to_dfa(parse_regex("~%0", A2))
        plus = regex_to_dfa(parse_regex("~%e", A2))
        eq, ce = equivalent(star, plus)
        assert not eq and ce == ()

    def test_regex_vs_hand_built(self):
        d = regex_to_dfa(parse_regex(INFIX_RX, A3))
        h = hand_built_infix_dfa()
        assert equivalent(d, h)[0]
        # cross-check by enumeration to length 10 (budget-limited)
        got = set(enumerate_language(d, 10, budget=2_000_000))
        want = set(enumerate_language(h, 10, budget=2_000_000))
        assert got == want

    def test_counterexample_separates(self):
        a = regex_to_dfa(parse_regex("0*", A2))
        b = regex_to_dfa(parse_regex("0* 1 0*", A2))
        eq, ce = equivalent(a, b)
        assert not eq
        assert a.accepts(ce) != b.accepts(ce)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatchError):
            equivalent(regex_to_dfa(parse_regex("%e", A2)), appendix_c_dfa())


class TestEnumerate:
    def test_empty(self):
        assert enumerate_language(regex_to_dfa(parse_regex("%0", A2)), 3) == []

    def test_c_star(self):
        got = enumerate_language(regex_to_dfa(parse_regex("c*", ABC)), 2)
        assert got == [(), ("c",), ("c", "c")]

    def test_appendix_c_short_words(self):
        got = enumerate_language(appendix_c_dfa(), 2)
        assert got == [(), ("c",), ("a", "b"), ("c", "c")]

    def test_order_length_then_lex(self):
        got = enumerate_language(dfa_sigma_star(A2), 2)
        assert got == [(), ("0",), ("1",), ("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            enumerate_language(dfa_sigma_star(A2), 12, budget=100)


class TestBinarize:
    def test_binary_identity(self):
        d = regex_to_dfa(parse_regex("~%0 1 ~%0", A2))
        b = binarize(d)
        assert equivalent(d, b)[0]

    def test_ternary_rejects_odd_lengths(self):
        b = binarize(appendix_c_dfa())
        for w in enumerate_language(b, 7):
            assert len(w) % 2 == 0

    def test_roundtrip_and_membership(self):
        d = appendix_c_dfa()
        b = binarize(d)
        for w in words_upto(ABC, 6):
            enc = binarize_word(w, ABC)
            assert debinarize_word(enc, ABC) == w
            assert d.accepts(w) == b.accepts(enc)

    def test_surplus_codes_map_to_last_symbol(self):
        # 3-symbol alphabet over 2 bits: code 11 acts like the last symbol
        assert debinarize_word(("1", "1"), ABC) == ("c",)


class TestDfaFile:
    def test_roundtrip(self):
        d = appendix_c_dfa()
        d2 = parse_dfa_file(format_dfa_file(d))
        assert equivalent(d, d2)[0]

    def test_partial_rejected(self):
        text = "alphabet: 0 1\nstates: 1\nstart: 0\naccept: 0\ntrans: 0 0 0\n"
        with pytest.raises(FileFormatError):
            parse_dfa_file(text)

    def test_duplicate_rejected(self):
        text = (
            "alphabet: 0\nstates: 1\nstart: 0\naccept:\n"
            "trans: 0 0 0\ntrans: 0 0 0\n"
        )
        with pytest.raises(FileFormatError):
            parse_dfa_file(text)


@st.composite
def small_regex(draw, alphabet=A2, depth=3):
    if depth == 0:
        leaf = draw(st.sampled_from(["sym", "eps", "empty"]))
        if leaf == "sym":
            return Lit(draw(st.sampled_from(alphabet.symbols)))
        return Epsilon() if leaf == "eps" else Empty()
    kind = draw(st.sampled_from(["leaf", "cat", "alt", "and", "star", "not"]))
    if kind == "leaf":
        return draw(small_regex(alphabet=alphabet, depth=0))
    if kind in ("cat", "alt", "and"):
        parts = tuple(
            draw(small_regex(alphabet=alphabet, depth=depth - 1)) for _ in range(2)
        )
        return {"cat": Cat, "alt": Alt, "and": And}[kind](parts)
    child = draw(small_regex(alphabet=alphabet, depth=depth - 1))
    return Star(child) if kind == "star" else Not(child)


@given(small_regex())
@settings(max_examples=60, deadline=None)
def test_random_regex_minimal_and_correct(node):
    from starfree.automata import RegexAst

    ast = RegexAst(node, A2)
    dfa = regex_to_dfa(ast)
    assert np.array_equal(minimize(dfa).delta, dfa.delta)  # compile output minimal
    want = interpret_regex(node, A2, 4)
    got = {w for w in words_upto(A2, 4) if dfa.accepts(w)}
    assert got == want
