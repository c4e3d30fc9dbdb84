"""Curated fixture languages with expected classes and golden monoid data.

Fixtures cover the canonical examples: OR, parity, the 2 0* 2 infix pattern,
the dynamic AND-OR language, nested parentheses up to depth 4, a trivial
first/last-symbol language, the four degenerate languages, the three-state
worked example with its golden tables, the length-3 word-break dictionary
{0, 11, 101}, a mod-3 counter, and the binary addition checker.
"""

from dataclasses import dataclass, field
from importlib import resources
from itertools import product

import numpy as np

from .automata import Alphabet, Dfa, parse_dfa_file, parse_regex_file, regex_to_dfa
from .classifier import ComplexityClass
from .flattening import flatten
from .monoid import syntactic_context


def _data_text(name):
    return resources.files("starfree.data").joinpath(name).read_text()


@dataclass
class Fixture:
    name: str
    expected_class: ComplexityClass
    build: object  # () -> Dfa
    flat: bool = False  # conductor 1 (verified by the suite)
    tags: frozenset = frozenset()
    golden: dict = field(default_factory=dict)  # label -> golden file name

    def dfa(self):
        return self.build()


def _regex_fixture(filename):
    def build():
        return regex_to_dfa(parse_regex_file(_data_text(f"fixtures/{filename}")))

    return build


def _dfa_fixture(filename):
    def build():
        return parse_dfa_file(_data_text(f"fixtures/{filename}"))

    return build


def paren_dfa(k):
    """Depth-counter DFA for balanced parentheses nesting at most k deep.
    Built directly from the depth semantics; the cascade module builds the
    same language independently from toggle levels."""
    alpha = Alphabet(("(", ")"))
    n = k + 2
    err = k + 1
    delta = np.zeros((n, 2), dtype=np.int32)
    for d in range(k + 1):
        delta[d, 0] = d + 1 if d < k else err
        delta[d, 1] = d - 1 if d > 0 else err
    delta[err] = err
    return Dfa(alpha, delta, 0, {0})


def mod3_dfa():
    """Digit-sum mod 3 counter over {0,1,2}; flat (every residue class is hit
    by a single letter), with the 3-cycle that drives the MOD_3 witness."""
    alpha = Alphabet(("0", "1", "2"))
    delta = np.array([[(d + c) % 3 for c in range(3)] for d in range(3)], dtype=np.int32)
    return Dfa(alpha, delta, 0, {0})


def addition_dfa(base=2):
    """Checker for x + y = z over column-triple symbols, least significant
    column first.  Symbol "abc" carries digit a of x, b of y, c of z; the
    state is the incoming carry, with a reject sink for inconsistent columns."""
    digits = [str(d) for d in range(base)]
    symbols = tuple(a + b + c for a in digits for b in digits for c in digits)
    alpha = Alphabet(symbols)
    c0, c1, rej = 0, 1, 2
    delta = np.full((3, len(symbols)), rej, dtype=np.int32)
    for i, sym in enumerate(symbols):
        a, b, c = (int(ch) for ch in sym)
        for carry, state in ((0, c0), (1, c1)):
            total = a + b + carry
            if total % base == c:
                delta[state, i] = c1 if total >= base else c0
    return Dfa(alpha, delta, 0, {c0})


def word_break_dfa(dictionary, alphabet):
    """DFA for D* given a dictionary of words over the alphabet."""
    from .automata import Nfa, determinize, minimize

    states = 1  # 0 = word boundary
    trans = []
    for word in dictionary:
        prev = 0
        for i, sym in enumerate(word):
            nxt = 0 if i == len(word) - 1 else states
            if nxt != 0:
                states += 1
            trans.append((prev, sym, nxt))
            prev = nxt
    return minimize(determinize(Nfa(states, alphabet, trans, {0}, {0})))


def builtin_fixtures():
    C = ComplexityClass
    fixtures = [
        Fixture("or", C.SQRT_N, _regex_fixture("or.regex"), flat=True),
        Fixture("parity", C.LINEAR, _regex_fixture("parity.regex"), flat=True),
        Fixture("mod3", C.LINEAR, mod3_dfa, flat=True),
        Fixture("infix", C.SQRT_N, _regex_fixture("infix.regex")),
        Fixture("dynamic-and-or", C.SQRT_N, _regex_fixture("dynamic-and-or.regex")),
        Fixture("trivial", C.CONSTANT, _regex_fixture("trivial.regex")),
        Fixture("empty", C.ZERO_QUERY, _regex_fixture("empty.regex"), flat=True),
        Fixture("epsilon", C.ZERO_QUERY, _regex_fixture("epsilon.regex"), flat=True),
        Fixture("sigma-star", C.ZERO_QUERY, _regex_fixture("sigma-star.regex"), flat=True),
        Fixture("sigma-plus", C.ZERO_QUERY, _regex_fixture("sigma-plus.regex"), flat=True),
        Fixture(
            "appendix-c",
            C.SQRT_N,
            _dfa_fixture("appendix-c.dfa"),
            golden={
                "table": "appendix_c_table.txt",
                "ideals": "appendix_c_ideals.txt",
                "decomposition": "appendix_c_decomposition.txt",
            },
        ),
        Fixture("word-break", C.LINEAR, _regex_fixture("word-break.regex")),
        Fixture("addition", C.SQRT_N, addition_dfa),
    ]
    for k in (1, 2, 3, 4):
        fixtures.append(Fixture(f"paren-{k}", C.SQRT_N, lambda k=k: paren_dfa(k)))
    return fixtures


def fixture_by_name(name):
    for f in builtin_fixtures():
        if f.name == name:
            return f
    raise KeyError(f"no fixture named {name!r}")


def golden_text(filename):
    return _data_text(f"golden/{filename}")


@dataclass
class WordBreakReport:
    entries: list  # (dictionary tuple, conductor, components, violations)

    @property
    def violations(self):
        return [e for e in self.entries if e[3]]


def word_break_sweep():
    """All 64 dictionaries D over {0,1} with words of length <= 2: build D*,
    flatten, and check m^2 = m^3 for every flattened-component monoid
    element."""
    alphabet = Alphabet(("0", "1"))
    words = [("0",), ("1",), ("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]
    entries = []
    for bits in range(64):
        dictionary = [w for i, w in enumerate(words) if bits >> i & 1]
        dfa = word_break_dfa(dictionary, alphabet)
        ctx = syntactic_context(dfa)
        family = flatten(ctx)
        violations = []
        n_comp = 0
        for rem, comp in family.remainders.items():
            comp_ctx = syntactic_context(comp)
            n_comp += 1
            mul = comp_ctx.monoid.mul
            for m in range(comp_ctx.monoid.size):
                m2 = int(mul[m, m])
                m3 = int(mul[m2, m])
                if m2 != m3:
                    violations.append((rem, m))
        entries.append((tuple(dictionary), family.p, n_comp, violations))
    return WordBreakReport(entries)
