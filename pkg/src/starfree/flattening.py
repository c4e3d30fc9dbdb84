"""Conductor computation and the flat family decomposition.

X_l = phi(Sigma^l) evolves by X_{l+1} = X_l . phi(Sigma) and is eventually
periodic; the conductor is the least K >= 1 for which all X_{nK} coincide.
Flattening blocks the input into K-tuples, one component language per
remainder word of length < K.
"""

from dataclasses import dataclass
from itertools import product
from math import gcd

import numpy as np

from .automata import Alphabet, Dfa, minimize
from .errors import CapExceededError

DEFAULT_BLOCK_CAP = 4096


@dataclass
class LengthProfile:
    """The sequence X_l = phi(Sigma^l) with detected preperiod/period.

    xs[i] is X_{i+1}; the sequence continues with period `period` after index
    `preperiod` (1-based length)."""

    xs: list
    preperiod: int
    period: int

    def at(self, length):
        if length < 1:
            raise ValueError("lengths start at 1")
        if length <= len(self.xs):
            return self.xs[length - 1]
        return self.xs[self.preperiod - 1 + (length - self.preperiod) % self.period]

    @property
    def horizon(self):
        return self.preperiod + self.period

    def lengths_of(self, element):
        """A_r for a non-identity element within one horizon window, as the
        set of lengths 1..horizon where it has a preimage."""
        return frozenset(
            l for l in range(1, self.horizon + 1) if element in self.at(l)
        )


def length_profile(ctx):
    mul = ctx.monoid.mul
    gens = sorted(set(int(g) for g in ctx.letter_image))
    xs = []
    seen = {}
    cur = frozenset(gens)
    while cur not in seen:
        seen[cur] = len(xs)
        xs.append(cur)
        cur = frozenset(int(mul[x, g]) for x in cur for g in gens)
    first = seen[cur]
    return LengthProfile(xs, preperiod=first + 1, period=len(xs) - first)


def conductor(ctx, profile=None):
    """Least K >= 1 with phi(Sigma_K) = phi(Sigma^{nK}) for all n >= 1."""
    prof = profile or length_profile(ctx)
    rho0, pi = prof.preperiod, prof.period
    for K in range(1, rho0 + pi + 1):
        horizon = rho0 + (pi * K) // gcd(pi, K)
        first = prof.at(K)
        if all(prof.at(n * K) == first for n in range(2, horizon // K + 2)):
            return K
    raise AssertionError("a conductor <= preperiod + period always exists")


def check_flat(ctx, profile=None):
    """Flatness: X_l constant for l >= 1, and every non-identity element with
    a preimage has preimages of every positive length up to the horizon."""
    prof = profile or length_profile(ctx)
    first = prof.at(1)
    if any(prof.at(l) != first for l in range(2, prof.horizon + 1)):
        return False
    reachable = set().union(*prof.xs) if prof.xs else set()
    all_lengths = frozenset(range(1, prof.horizon + 1))
    for r in reachable:
        if r == ctx.monoid.identity:
            continue
        if prof.lengths_of(r) != all_lengths:
            return False
    return True


@dataclass
class FlatFamily:
    """Block size p, the block alphabet, and one component DFA per remainder
    word (length < p).  Components are minimal DFAs over the block alphabet."""

    p: int
    block_alphabet: Alphabet
    block_words: list  # tuple of source symbols per block symbol, same order
    remainders: dict  # remainder word (tuple) -> Dfa
    source_alphabet: Alphabet

    def component(self, remainder):
        return self.remainders[tuple(remainder)]

    def split_word(self, word):
        """(blocked prefix as block symbols, remainder word)."""
        word = tuple(word)
        j = len(word) % self.p
        prefix, rem = (word[: len(word) - j], word[-j:] if j else ())
        blocks = tuple(
            ".".join(prefix[i : i + self.p]) for i in range(0, len(prefix), self.p)
        )
        return blocks, rem

    def member(self, word):
        blocks, rem = self.split_word(word)
        return self.remainders[rem].accepts(blocks)


def flatten(ctx, block_cap=DEFAULT_BLOCK_CAP, profile=None):
    """Flat family of Theorem-flattening: p = conductor, components
    L_r = { y in (Sigma^p)* : y r in L } built by p-step transition
    composition on the minimal DFA."""
    prof = profile or length_profile(ctx)
    p = conductor(ctx, prof)
    dfa = ctx.source_dfa
    n_sym = len(dfa.alphabet)
    if n_sym**p > block_cap:
        raise CapExceededError("block alphabet", n_sym**p, block_cap)

    block_words = list(product(dfa.alphabet.symbols, repeat=p))
    block_alphabet = Alphabet(tuple(".".join(bw) for bw in block_words))

    # p-step composition: delta_p[q, block] = delta*(q, block word)
    delta_p = np.empty((dfa.n_states, len(block_words)), dtype=np.int32)
    for b, bw in enumerate(block_words):
        qs = np.arange(dfa.n_states, dtype=np.int32)
        for sym in bw:
            qs = dfa.delta[qs, dfa.alphabet.index(sym)]
        delta_p[:, b] = qs

    remainders = {}
    for j in range(p):
        for rem in product(dfa.alphabet.symbols, repeat=j):
            qs = np.arange(dfa.n_states, dtype=np.int32)
            for sym in rem:
                qs = dfa.delta[qs, dfa.alphabet.index(sym)]
            accept = {q for q in range(dfa.n_states) if int(qs[q]) in dfa.accept}
            remainders[rem] = minimize(Dfa(block_alphabet, delta_p, dfa.start, accept))
    return FlatFamily(p, block_alphabet, block_words, remainders, dfa.alphabet)


def format_flat_manifest(family, filenames):
    lines = [f"p: {family.p}"]
    for rem, name in filenames.items():
        rem_text = ".".join(rem) if rem else "%e"
        lines.append(f"remainder: {rem_text} {name}")
    return "\n".join(lines) + "\n"


def write_flat_family(family, directory):
    """Serialize each component to the DFA file format plus a manifest."""
    from pathlib import Path
    from .automata import format_dfa_file

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    filenames = {}
    for rem, dfa in sorted(family.remainders.items(), key=lambda kv: (len(kv[0]), kv[0])):
        name = "component_" + ("-".join(rem) if rem else "eps") + ".dfa"
        (directory / name).write_text(format_dfa_file(dfa))
        filenames[rem] = name
    (directory / "manifest.txt").write_text(format_flat_manifest(family, filenames))
    return filenames
