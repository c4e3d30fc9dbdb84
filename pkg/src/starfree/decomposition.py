"""Schützenberger decomposition data and splittings.

For a non-identity element m of an aperiodic monoid,
phi^-1(m) = (U Sigma* ∩ Sigma* V) \\ (Sigma* C Sigma* ∪ Sigma* W Sigma*)
with U, V, C, W assembled from the sets E, F, G, C below.  The element
preimage DFAs here are built from the right-regular representation of the
monoid itself, not from the source automaton, so verifying the identity
cross-checks two independent pipelines.
"""

from dataclasses import dataclass

from .automata import (
    Dfa,
    determinize,
    dfa_empty,
    dfa_literal,
    dfa_sigma_star,
    dfa_to_nfa,
    equivalent,
    minimize,
    nfa_concat,
    nfa_union,
    product_dfa,
)
from .errors import StructuralError
from .monoid import is_aperiodic

import numpy as np


@dataclass
class DecompositionSets:
    m: int
    E: list  # (element r, symbol a)
    F: list  # (symbol a, element r)
    G: list  # (symbol a, element r, symbol b)
    C: list  # symbols


@dataclass
class Splitting:
    m: int
    parts: list  # (p, q) with p . q = m


def decompose(ctx, m):
    """E, F, G, C of the decomposition theorem, by exhaustive evaluation of
    the ideal predicates.  Requires an aperiodic context and m != identity."""
    if m == ctx.monoid.identity:
        raise StructuralError("identity element is the induction base case, not decomposed")
    if not is_aperiodic(ctx):
        raise StructuralError("decomposition requires an aperiodic monoid")
    mul = ctx.monoid.mul
    ideals = ctx.ideals
    right, left, two = ideals.right, ideals.left, ideals.two_sided
    rank = ideals.rank
    n = ctx.monoid.size
    symbols = ctx.alphabet.symbols
    img = ctx.letter_image

    E = [
        (r, a)
        for r in range(n)
        for s, a in enumerate(symbols)
        if right[int(mul[r, img[s]])] == right[m] and right[r] != right[m]
    ]
    F = [
        (a, r)
        for s, a in enumerate(symbols)
        for r in range(n)
        if left[int(mul[img[s], r])] == left[m] and left[r] != left[m]
    ]
    G = [
        (a, r, b)
        for sa, a in enumerate(symbols)
        for r in range(n)
        for sb, b in enumerate(symbols)
        if m in two[int(mul[img[sa], r])]
        and m in two[int(mul[r, img[sb]])]
        and m not in two[int(mul[int(mul[img[sa], r]), img[sb]])]
    ]
    C = [a for s, a in enumerate(symbols) if m not in two[int(img[s])]]

    for r in (
        [r for r, _ in E] + [r for _, r in F] + [r for _, r, _ in G]
    ):
        if rank[r] >= rank[m]:
            raise StructuralError(
                f"rank descent violated: rank({r}) = {rank[r]} >= rank({m}) = {rank[m]}"
            )
    return DecompositionSets(m, E, F, G, C)


def split(ctx, m):
    """All factorizations p . q = m, by table scan."""
    mul = ctx.monoid.mul
    p_idx, q_idx = np.nonzero(mul == m)
    return Splitting(m, list(zip(p_idx.tolist(), q_idx.tolist())))


def element_preimage_dfa(ctx, r):
    """phi^-1(r) via the right-regular representation: states are monoid
    elements, transitions multiply by letter images."""
    mul = ctx.monoid.mul
    n = ctx.monoid.size
    delta = np.empty((n, len(ctx.alphabet)), dtype=np.int32)
    for s in range(len(ctx.alphabet)):
        delta[:, s] = mul[:, ctx.letter_image[s]]
    return minimize(Dfa(ctx.alphabet, delta, ctx.monoid.identity, {r}))


def _union_all(alphabet, dfas):
    if not dfas:
        return dfa_empty(alphabet)
    acc = dfa_to_nfa(dfas[0])
    for d in dfas[1:]:
        acc = nfa_union(acc, dfa_to_nfa(d))
    return minimize(determinize(acc))


def _concat(a, b):
    return minimize(determinize(nfa_concat(dfa_to_nfa(a), dfa_to_nfa(b))))


def decomposition_dfas(ctx, m, sets=None):
    """DFAs for U Sigma*, Sigma* V, Sigma* C Sigma*, Sigma* W Sigma*."""
    sets = sets or decompose(ctx, m)
    alphabet = ctx.alphabet
    star = dfa_sigma_star(alphabet)

    u_parts = [
        _concat(element_preimage_dfa(ctx, r), dfa_literal(alphabet, a)) for r, a in sets.E
    ]
    u_sigma = _concat(_union_all(alphabet, u_parts), star)

    v_parts = [
        _concat(dfa_literal(alphabet, a), element_preimage_dfa(ctx, r)) for a, r in sets.F
    ]
    sigma_v = _concat(star, _union_all(alphabet, v_parts))

    c_parts = [dfa_literal(alphabet, a) for a in sets.C]
    sigma_c_sigma = _concat(_concat(star, _union_all(alphabet, c_parts)), star)

    w_parts = [
        _concat(_concat(dfa_literal(alphabet, a), element_preimage_dfa(ctx, r)),
                dfa_literal(alphabet, b))
        for a, r, b in sets.G
    ]
    sigma_w_sigma = _concat(_concat(star, _union_all(alphabet, w_parts)), star)
    return u_sigma, sigma_v, sigma_c_sigma, sigma_w_sigma


def verify_decomposition(ctx, m, sets=None):
    """Exact DFA equivalence of phi^-1(m) against the Boolean combination;
    (True, None) or (False, shortest counterexample)."""
    u_sigma, sigma_v, sigma_c_sigma, sigma_w_sigma = decomposition_dfas(ctx, m, sets)
    inner = product_dfa(u_sigma, sigma_v, np.logical_and)
    subtract = product_dfa(sigma_c_sigma, sigma_w_sigma, np.logical_or)
    combo = product_dfa(inner, subtract, lambda x, y: x & ~y)
    return equivalent(element_preimage_dfa(ctx, m), combo)


def render_decomposition(ctx, sets):
    name = ctx.rep_str
    lines = [f"element: {name(sets.m)}"]
    lines.append("E = {" + ", ".join(f"({name(r)}, {a})" for r, a in sets.E) + "}")
    lines.append("F = {" + ", ".join(f"({a}, {name(r)})" for a, r in sets.F) + "}")
    lines.append(
        "G = {" + ", ".join(f"({a}, {name(r)}, {b})" for a, r, b in sets.G) + "}"
    )
    lines.append("C = {" + ", ".join(sets.C) + "}")
    lines.append(
        "U S* = "
        + (" | ".join(f"inv({name(r)}) {a} S*" for r, a in sets.E) or "empty")
    )
    lines.append(
        "S* V = "
        + (" | ".join(f"S* {a} inv({name(r)})" for a, r in sets.F) or "empty")
    )
    lines.append(
        "S* W S* = "
        + (" | ".join(f"S* {a} inv({name(r)}) {b} S*" for a, r, b in sets.G) or "empty")
    )
    lines.append("S* C S* = " + (" | ".join(f"S* {a} S*" for a in sets.C) or "empty"))
    return "\n".join(lines) + "\n"
