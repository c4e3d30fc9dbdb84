"""Brute-force oracles, independent of the code paths they check.

Everything here evaluates languages by direct set semantics or raw
enumeration; nothing routes through the minimization / monoid / engine
pipelines under test.
"""

from itertools import product

import numpy as np


def interpret_regex(node, alphabet, max_len):
    """Set of words (tuples) of length <= max_len denoted by the AST, by
    recursive set semantics."""
    from starfree import automata as A

    syms = alphabet.symbols
    universe = set()
    for k in range(max_len + 1):
        universe.update(product(syms, repeat=k))

    def go(n):
        if isinstance(n, A.Empty):
            return set()
        if isinstance(n, A.Epsilon):
            return {()}
        if isinstance(n, A.Lit):
            return {(n.symbol,)}
        if isinstance(n, A.Alt):
            out = set()
            for part in n.parts:
                out |= go(part)
            return out
        if isinstance(n, A.And):
            out = go(n.parts[0])
            for part in n.parts[1:]:
                out &= go(part)
            return out
        if isinstance(n, A.Not):
            return universe - go(n.child)
        if isinstance(n, A.Cat):
            out = {()}
            for part in n.parts:
                right = go(part)
                out = {
                    u + v for u in out for v in right if len(u) + len(v) <= max_len
                }
            return out
        if isinstance(n, A.Star):
            base = go(n.child) - {()}
            out = {()}
            frontier = {()}
            while frontier:
                nxt = set()
                for u in frontier:
                    for v in base:
                        w = u + v
                        if len(w) <= max_len and w not in out:
                            out.add(w)
                            nxt.add(w)
                frontier = nxt
            return out
        raise TypeError(n)

    return {w for w in go(node) if len(w) <= max_len}


def words_upto(alphabet, max_len):
    for k in range(max_len + 1):
        yield from product(alphabet.symbols, repeat=k)


def brute_congruence_classes(dfa, word_len, context_len):
    """Partition words of length <= word_len by membership behaviour under
    all contexts of length <= context_len per side."""
    contexts = list(words_upto(dfa.alphabet, context_len))
    sig = {}
    for w in words_upto(dfa.alphabet, word_len):
        fingerprint = tuple(dfa.accepts(u + w + v) for u in contexts for v in contexts)
        sig.setdefault(fingerprint, []).append(w)
    return list(sig.values())


def enumerate_words_matrix(n_symbols, length, lo, hi):
    """Rows lo..hi of the lexicographic enumeration of all length-`length`
    words, as a (hi-lo, length) index matrix."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, length), dtype=np.int32)
    for j in range(length - 1, -1, -1):
        out[:, j] = idx % n_symbols
        idx //= n_symbols
    return out


def brute_image_set(ctx, length):
    """phi(Sigma^length) by direct product over all words."""
    out = set()
    for w in product(ctx.alphabet.symbols, repeat=length):
        out.add(ctx.image(w))
    return frozenset(out)
