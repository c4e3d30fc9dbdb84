from itertools import product

import numpy as np
import pytest

from starfree.automata import Alphabet, Dfa, parse_regex, regex_to_dfa
from starfree.errors import CapExceededError
from starfree.monoid import (
    FiniteMonoid,
    distinguish,
    ideal_profile,
    is_aperiodic,
    is_degenerate_image,
    is_rectangular_band_image,
    multiplication_table,
    power_profile,
    syntactic_context,
)
from oracle_tools import brute_congruence_classes, words_upto

A2 = Alphabet(("0", "1"))
ABC = Alphabet(("a", "b", "c"))


def appendix_c_dfa():
    delta = np.array([[1, 2, 0], [2, 0, 1], [2, 2, 2]], dtype=np.int32)
    return Dfa(ABC, delta, 0, {0})


@pytest.fixture(scope="module")
def appc():
    return syntactic_context(appendix_c_dfa())


@pytest.fixture(scope="module")
def parity_ctx():
    return syntactic_context(regex_to_dfa(parse_regex("(0* 1 0* 1)* 0*", A2)))


def names(ctx):
    return {ctx.rep_str(m): m for m in range(ctx.monoid.size)}


class TestFiniteMonoid:
    def test_identity_law_checked(self):
        with pytest.raises(ValueError):
            FiniteMonoid([[0, 0], [0, 0]], 0)

    def test_associativity_checked(self):
        # a broken table: x*y = y except 1*1 = 0, which breaks associativity
        mul = np.array([[0, 1], [1, 0]])
        FiniteMonoid(mul, 0)  # Z2 is fine
        bad = np.array([[0, 1, 2], [1, 2, 1], [2, 1, 0]])
        with pytest.raises(ValueError):
            FiniteMonoid(bad, 0)

    def test_power_profile(self):
        z2 = FiniteMonoid(np.array([[0, 1], [1, 0]]), 0)
        assert power_profile(z2, 1) == (0, 2)
        idem = FiniteMonoid(np.array([[0, 1], [1, 1]]), 0)
        assert power_profile(idem, 1) == (1, 1)


class TestSyntacticContext:
    def test_sigma_star_one_element(self):
        ctx = syntactic_context(regex_to_dfa(parse_regex("~%0", A2)))
        assert ctx.monoid.size == 1
        assert ctx.accept_set == {0}

    def test_appendix_c_six_elements(self, appc):
        assert appc.monoid.size == 6
        assert sorted(names(appc)) == ["1", "a", "aa", "ab", "b", "ba"]
        # S holds the classes of the accepted words: epsilon and ab
        assert appc.accept_set == {names(appc)["1"], names(appc)["ab"]}

    def test_parity_two_element_group(self, parity_ctx):
        assert parity_ctx.monoid.size == 2
        g = 1 - parity_ctx.monoid.identity
        assert int(parity_ctx.monoid.mul[g, g]) == parity_ctx.monoid.identity
        # brute-force congruence classes on words to length 4
        classes = brute_congruence_classes(parity_ctx.source_dfa, 4, 3)
        assert len(classes) == 2

    def test_cap(self):
        with pytest.raises(CapExceededError):
            syntactic_context(appendix_c_dfa(), cap=3)

    def test_morphism_property(self, appc):
        for u in words_upto(ABC, 3):
            for v in words_upto(ABC, 2):
                lhs = appc.image(u + v)
                rhs = int(appc.monoid.mul[appc.image(u), appc.image(v)])
                assert lhs == rhs

    def test_language_is_preimage_of_s(self, appc):
        dfa = appc.source_dfa
        for w in words_upto(ABC, 6):
            assert dfa.accepts(w) == (appc.image(w) in appc.accept_set)


class TestMultiplicationTable:
    def test_paper_entries(self, appc):
        nm = names(appc)
        mul = appc.monoid.mul
        ab, a, b, zero = nm["ab"], nm["a"], nm["b"], nm["aa"]
        assert int(mul[ab, a]) == a  # ab . a = a
        assert int(mul[b, ab]) == b  # b . ab = b
        assert int(mul[a, a]) == zero  # a . a = 0
        # the printed table's "aba" entry: composition gives a
        ba = nm["ba"]
        assert int(mul[a, ba]) == a

    def test_identity_row_and_column(self, appc):
        mul = appc.monoid.mul
        e = appc.monoid.identity
        assert np.array_equal(mul[e], np.arange(6))
        assert np.array_equal(mul[:, e], np.arange(6))

    def test_render_is_stable(self, appc):
        text = multiplication_table(appc)
        assert text.splitlines()[0].split("|")[1].strip() == "1"
        assert multiplication_table(appc) == text


class TestIdeals:
    def test_paper_ideal_tables(self, appc):
        nm = names(appc)
        prof = appc.ideals
        everything = frozenset(range(6))
        nontrivial = frozenset({nm["a"], nm["b"], nm["ab"], nm["ba"], nm["aa"]})
        assert prof.two_sided[nm["1"]] == everything
        for x in ("a", "b", "ab", "ba"):
            assert prof.two_sided[nm[x]] == nontrivial
        assert prof.two_sided[nm["aa"]] == {nm["aa"]}
        assert prof.left[nm["a"]] == prof.left[nm["ba"]] == {nm["a"], nm["ba"], nm["aa"]}
        assert prof.left[nm["b"]] == prof.left[nm["ab"]] == {nm["b"], nm["ab"], nm["aa"]}
        assert prof.right[nm["a"]] == prof.right[nm["ab"]] == {nm["a"], nm["ab"], nm["aa"]}
        assert prof.right[nm["b"]] == prof.right[nm["ba"]] == {nm["b"], nm["ba"], nm["aa"]}

    def test_paper_ranks(self, appc):
        nm = names(appc)
        rank = appc.ideals.rank
        assert rank[appc.monoid.identity] == 0
        for x in ("a", "b", "ab", "ba"):
            assert rank[nm[x]] == 1
        assert rank[nm["aa"]] == 5

    def test_rank_monotone_under_products(self, appc, parity_ctx):
        for ctx in (appc, parity_ctx):
            rank = ctx.ideals.rank
            mul = ctx.monoid.mul
            for p in range(ctx.monoid.size):
                for q in range(ctx.monoid.size):
                    assert rank[p] <= rank[int(mul[p, q])]
                    assert rank[q] <= rank[int(mul[p, q])]

    def test_rank_zero_iff_identity_in_aperiodic(self, appc):
        rank = appc.ideals.rank
        for m in range(appc.monoid.size):
            assert (rank[m] == 0) == (m == appc.monoid.identity)


class TestPredicates:
    def test_aperiodic(self, appc, parity_ctx):
        one = syntactic_context(regex_to_dfa(parse_regex("~%0", A2)))
        assert is_aperiodic(one)
        assert is_aperiodic(appc)
        res = is_aperiodic(parity_ctx)
        assert not res and res.period == 2

    def test_band(self):
        ab = Alphabet(("a", "b"))
        trivial = syntactic_context(regex_to_dfa(parse_regex("a ~%0 b", ab)))
        assert is_rectangular_band_image(trivial)
        assert not is_rectangular_band_image(syntactic_context(appendix_c_dfa()))
        or_ctx = syntactic_context(regex_to_dfa(parse_regex("~%0 1 ~%0", A2)))
        assert not is_rectangular_band_image(or_ctx)

    def test_degenerate(self):
        plus = syntactic_context(regex_to_dfa(parse_regex("~%e", A2)))
        assert is_degenerate_image(plus)
        eps = syntactic_context(regex_to_dfa(parse_regex("%e", A2)))
        assert is_degenerate_image(eps)
        or_ctx = syntactic_context(regex_to_dfa(parse_regex("~%0 1 ~%0", A2)))
        assert not is_degenerate_image(or_ctx)


class TestDistinguish:
    def verified(self, ctx, m1, m2):
        u, v = distinguish(ctx, m1, m2)
        dfa = ctx.source_dfa
        w1 = u + ctx.representatives[m1] + v
        w2 = u + ctx.representatives[m2] + v
        assert dfa.accepts(w1) != dfa.accepts(w2)
        return u, v

    def test_all_pairs_appendix_c(self, appc):
        for m1 in range(6):
            for m2 in range(m1 + 1, 6):
                self.verified(appc, m1, m2)

    def test_parity(self, parity_ctx):
        u, v = self.verified(parity_ctx, 0, 1)
        assert u == () and v == ()

    def test_same_element_rejected(self, appc):
        with pytest.raises(ValueError):
            distinguish(appc, 1, 1)

    def test_congruent_words_not_separated(self, appc):
        # words with equal images admit no short separating context
        dfa = appc.source_dfa
        by_image = {}
        for w in words_upto(ABC, 3):
            by_image.setdefault(appc.image(w), []).append(w)
        contexts = list(words_upto(ABC, 3))
        for group in by_image.values():
            w0 = group[0]
            for w in group[1:]:
                for u in contexts:
                    for v in contexts:
                        assert dfa.accepts(u + w0 + v) == dfa.accepts(u + w + v)
