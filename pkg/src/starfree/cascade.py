"""Cascades of automata: evaluation, reset checks, product conversion, and
the nested-parentheses cascade.

Level i of a k-level cascade reads (state of level 1, ..., state of level
i-1, input symbol) as one composite letter; all levels step simultaneously
on each input symbol, each seeing the lower levels' states from before the
step.  Composite letters are spelled "s1.s2.....sym" so ordinary DFA
machinery applies unchanged.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .automata import Alphabet, Dfa, minimize
from .errors import CapExceededError, FileFormatError

DEFAULT_PRODUCT_CAP = 1_000_000


def composite_symbol(lower_states, sym):
    return ".".join([str(s) for s in lower_states] + [sym])


def level_alphabet(level_sizes, alphabet):
    """All composite letters for a level above the given lower levels."""
    lowers = list(product(*(range(n) for n in level_sizes)))
    return Alphabet(
        tuple(composite_symbol(ls, sym) for ls in lowers for sym in alphabet.symbols)
    )


@dataclass
class Cascade:
    alphabet: Alphabet  # input alphabet
    levels: list  # Dfa per level; level i over level_alphabet(sizes[:i], alphabet)
    accept: frozenset  # set of joint state tuples

    def __post_init__(self):
        sizes = []
        for i, lvl in enumerate(self.levels):
            expected = level_alphabet(sizes, self.alphabet)
            if lvl.alphabet != expected:
                raise ValueError(f"level {i} alphabet does not match the lower levels")
            sizes.append(lvl.n_states)
        self.accept = frozenset(tuple(int(q) for q in t) for t in self.accept)


def cascade_accepts(cascade, word):
    states = [lvl.start for lvl in cascade.levels]
    for sym in word:
        new_states = []
        for i, lvl in enumerate(cascade.levels):
            letter = composite_symbol(states[:i], sym)
            new_states.append(int(lvl.delta[states[i], lvl.alphabet.index(letter)]))
        states = new_states
    return tuple(states) in cascade.accept


def is_reset_automaton(dfa):
    """Each letter acts on states as the identity or as a constant map."""
    idx = np.arange(dfa.n_states)
    for s in range(len(dfa.alphabet)):
        col = dfa.delta[:, s]
        if not (np.array_equal(col, idx) or len(set(col.tolist())) <= 1):
            return False
    return True


def cascade_to_dfa(cascade, cap=DEFAULT_PRODUCT_CAP):
    """Product DFA over the input alphabet, language-equal to the cascade."""
    sizes = [lvl.n_states for lvl in cascade.levels]
    total = int(np.prod(sizes)) if sizes else 1
    if total > cap:
        raise CapExceededError("cascade product", total, cap)
    joints = list(product(*(range(n) for n in sizes)))
    index = {t: i for i, t in enumerate(joints)}
    delta = np.empty((total, len(cascade.alphabet)), dtype=np.int32)
    for t, i in index.items():
        for s, sym in enumerate(cascade.alphabet.symbols):
            nxt = tuple(
                int(lvl.delta[t[j], lvl.alphabet.index(composite_symbol(t[:j], sym))])
                for j, lvl in enumerate(cascade.levels)
            )
            delta[i, s] = index[nxt]
    start = index[tuple(lvl.start for lvl in cascade.levels)]
    accept = {index[t] for t in cascade.accept if t in index}
    return minimize(Dfa(cascade.alphabet, delta, start, accept))


def _toggle_level(level_sizes, alphabet, up_lower, up_sym, down_lower, down_sym):
    """Two-state level: 0->1 on (up_lower, up_sym), 1->0 on (down_lower,
    down_sym), self-loops elsewhere."""
    alpha = level_alphabet(level_sizes, alphabet)
    delta = np.tile(np.array([[0], [1]], dtype=np.int32), (1, len(alpha)))
    delta[0, alpha.index(composite_symbol(up_lower, up_sym))] = 1
    delta[1, alpha.index(composite_symbol(down_lower, down_sym))] = 0
    return Dfa(alpha, delta, 0, {0})


def paren_cascade(k):
    """The k-level toggle cascade plus error level for depth-<=k balanced
    parentheses; accept state is all-q0 x q_good.  Encoded exactly as drawn:
    level i toggles up when all lower levels sit at q1 and the symbol is '(',
    down when all lower levels sit at q0 and the symbol is ')'; the error
    level fires on '(' at all-q1 (overflow) or ')' at all-q0 (underflow)."""
    if k < 1:
        raise ValueError("k >= 1")
    alphabet = Alphabet(("(", ")"))
    levels = []
    sizes = []
    for i in range(k):
        levels.append(
            _toggle_level(sizes, alphabet, (1,) * i, "(", (0,) * i, ")")
        )
        sizes.append(2)
    # error level: good = 0, err = 1 (absorbing)
    err_alpha = level_alphabet(sizes, alphabet)
    delta = np.tile(np.array([[0], [1]], dtype=np.int32), (1, len(err_alpha)))
    delta[0, err_alpha.index(composite_symbol((1,) * k, "("))] = 1
    delta[0, err_alpha.index(composite_symbol((0,) * k, ")"))] = 1
    levels.append(Dfa(err_alpha, delta, 0, {0}))
    accept = {(0,) * k + (0,)}
    return Cascade(alphabet, levels, accept)


def infix_pattern_cascade():
    """The 2-level cascade for 'a 2, then only 0s, then another 2' patterns
    over {0,1,2}: level 1 remembers whether we are inside a 2 0* run, level 2
    latches when a second 2 arrives while level 1 says so."""
    alphabet = Alphabet(("0", "1", "2"))
    lvl1_delta = np.array([[0, 0, 1], [1, 0, 1]], dtype=np.int32)  # rows q0,q1
    lvl1 = Dfa(alphabet, lvl1_delta, 0, set())
    alpha2 = level_alphabet([2], alphabet)
    delta2 = np.tile(np.array([[0], [1]], dtype=np.int32), (1, len(alpha2)))
    delta2[0, alpha2.index(composite_symbol((1,), "2"))] = 1
    lvl2 = Dfa(alpha2, delta2, 0, {1})
    accept = {(0, 1), (1, 1)}
    return Cascade(alphabet, [lvl1, lvl2], accept)


# ---------------------------------------------------------------------------
# file format


def write_cascade(cascade, directory):
    from pathlib import Path
    from .automata import format_dfa_file

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    lines = [
        "alphabet: " + " ".join(cascade.alphabet.symbols),
        f"levels: {len(cascade.levels)}",
    ]
    for i, lvl in enumerate(cascade.levels):
        name = f"level{i}.dfa"
        (directory / name).write_text(format_dfa_file(lvl))
        lines.append(f"level: {name}")
    for t in sorted(cascade.accept):
        lines.append("accept: " + " ".join(str(q) for q in t))
    (directory / "cascade.txt").write_text("\n".join(lines) + "\n")


def read_cascade(directory):
    from pathlib import Path
    from .automata import parse_dfa_file

    directory = Path(directory)
    alphabet = None
    levels = []
    accept = set()
    for raw in (directory / "cascade.txt").read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        key, rest = line.split(":", 1)
        if key == "alphabet":
            alphabet = Alphabet(rest.split())
        elif key == "levels":
            continue
        elif key == "level":
            levels.append(parse_dfa_file((directory / rest.strip()).read_text()))
        elif key == "accept":
            accept.add(tuple(int(x) for x in rest.split()))
        else:
            raise FileFormatError(f"unknown cascade key {key!r}")
    if alphabet is None:
        raise FileFormatError("cascade missing alphabet")
    return Cascade(alphabet, levels, accept)
