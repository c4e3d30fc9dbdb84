"""Sensitivity-mask automata and the O(1)/Omega(n) dichotomy probe.

The violation NFA accepts pairs (x, y) where y fails to mark exactly the
sensitive positions of x: either some y_i = 0 position is sensitive (guess the
replacement, track both runs, accept on differing membership), or some
y_i = 1 position is not (track the full tuple of runs for every replacement,
accept when they all agree).  Complementing the determinized violation NFA
gives S'_L; projecting to the mask coordinate gives S_L.
"""

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import kernels
from .automata import Alphabet, Dfa, Nfa, determinize, minimize
from .errors import BudgetExceededError, CapExceededError

DEFAULT_MASK_CAP = 1_000_000


@dataclass
class MaskAutomaton:
    s_prime: Dfa  # over pair symbols "<sym>/<bit>"
    s_mask: Nfa  # over {0,1}
    determinized: Dfa  # over {0,1}
    pair_alphabet: Alphabet


@dataclass
class SensitivityProfile:
    values: list  # s(n) for n = 0..n_max
    verdict: str  # "constant" | "linear-lower" | "inconclusive"
    bound: int = None  # constant bound
    slope_p: int = None  # linear lower: s(n) >= n/p - c
    offset_c: int = None

    def csv(self):
        out = "n,sensitivity\n" + "".join(f"{n},{v}\n" for n, v in enumerate(self.values))
        if self.verdict == "constant":
            out += f"verdict: constant {self.bound}\n"
        elif self.verdict == "linear-lower":
            out += f"verdict: linear-lower s(n) >= n/{self.slope_p} - {self.offset_c}\n"
        else:
            out += "verdict: inconclusive\n"
        return out


def build_mask_automata(dfa, cap=DEFAULT_MASK_CAP):
    """MaskAutomaton for the language of the (minimized) DFA."""
    dfa = minimize(dfa)
    n_q = dfa.n_states
    n_sym = len(dfa.alphabet)
    if n_q ** (n_sym + 1) > cap:
        raise CapExceededError("mask automaton", n_q ** (n_sym + 1), cap)

    pair_alphabet = Alphabet(
        tuple(f"{s}/{b}" for s in dfa.alphabet.symbols for b in (0, 1))
    )

    def pair(s_idx, bit):
        return pair_alphabet.symbols[2 * s_idx + bit]

    # violation NFA states:
    #   ('scan', q)            before the guessed position
    #   ('flip0', qr, qf)      case y_i = 0: real and one flipped run
    #   ('flip1', qr, tuple)   case y_i = 1: real run and all replacement runs
    index = {}
    states = []

    def sid(st):
        if st not in index:
            index[st] = len(states)
            states.append(st)
            if len(states) > cap:
                raise CapExceededError("mask automaton", len(states), cap)
        return index[st]

    trans = []
    acc = dfa.accept
    for q in range(n_q):
        sq = sid(("scan", q))
    for q in range(n_q):
        sq = index[("scan", q)]
        for s in range(n_sym):
            q2 = int(dfa.delta[q, s])
            for b in (0, 1):
                trans.append((sq, pair(s, b), sid(("scan", q2))))
            # guess this position with y_i = 0 but it is sensitive
            for a in range(n_sym):
                if a == s:
                    continue
                qf = int(dfa.delta[q, a])
                trans.append((sq, pair(s, 0), sid(("flip0", q2, qf))))
            # guess this position with y_i = 1 but it is not sensitive
            tup = tuple(int(dfa.delta[q, a]) for a in range(n_sym))
            trans.append((sq, pair(s, 1), sid(("flip1", q2, tup))))

    frontier = [st for st in states if st[0] != "scan"]
    while frontier:
        st = frontier[:]
        frontier = []
        for cur in st:
            ci = index[cur]
            for s in range(n_sym):
                for b in (0, 1):
                    if cur[0] == "flip0":
                        _, qr, qf = cur
                        nxt = ("flip0", int(dfa.delta[qr, s]), int(dfa.delta[qf, s]))
                    else:
                        _, qr, tup = cur
                        nxt = (
                            "flip1",
                            int(dfa.delta[qr, s]),
                            tuple(int(dfa.delta[t, s]) for t in tup),
                        )
                    if nxt not in index:
                        frontier.append(nxt)
                    trans.append((ci, pair(s, b), sid(nxt)))

    accepts = set()
    for st in states:
        if st[0] == "flip0":
            _, qr, qf = st
            if (qr in acc) != (qf in acc):
                accepts.add(index[st])
        elif st[0] == "flip1":
            _, qr, tup = st
            if all((t in acc) == (qr in acc) for t in tup):
                accepts.add(index[st])

    violation = Nfa(len(states), pair_alphabet, trans, {index[("scan", dfa.start)]}, accepts)
    s_prime_full = determinize(violation)
    if s_prime_full.n_states > cap:
        raise CapExceededError("mask automaton", s_prime_full.n_states, cap)
    s_prime = minimize(
        Dfa(
            pair_alphabet,
            s_prime_full.delta,
            s_prime_full.start,
            set(range(s_prime_full.n_states)) - s_prime_full.accept,
        )
    )

    bit_alpha = Alphabet(("0", "1"))
    mask_trans = [
        (p, pair_alphabet.symbols[s].rsplit("/", 1)[1], int(s_prime.delta[p, s]))
        for p in range(s_prime.n_states)
        for s in range(2 * n_sym)
    ]
    s_mask = Nfa(s_prime.n_states, bit_alpha, mask_trans, {s_prime.start}, s_prime.accept)
    determinized = minimize(determinize(s_mask))
    if determinized.n_states > cap:
        raise CapExceededError("mask automaton", determinized.n_states, cap)
    return MaskAutomaton(s_prime, s_mask, determinized, pair_alphabet)


def sensitivity_by_length(mask, n_max):
    """s(n) for n = 0..n_max via the max-weight DP over the determinized mask
    DFA, plus the dichotomy verdict."""
    dfa = mask.determinized
    one = dfa.alphabet.index("1")
    bit_of = np.zeros(len(dfa.alphabet), dtype=np.int64)
    bit_of[one] = 1
    weights = np.full(dfa.n_states, -1, dtype=np.int64)
    weights[dfa.start] = 0
    acc = sorted(dfa.accept)
    values = []
    for n in range(n_max + 1):
        if n > 0:
            weights = kernels.maxweight_step(dfa.delta, weights, bit_of)
        best = int(weights[acc].max()) if acc else -1
        values.append(best)
    if any(v < 0 for v in values):
        raise AssertionError("every length has a sensitivity mask")

    top = values[n_max // 2 :]
    top_n = list(range(n_max // 2, n_max + 1))
    verdict = SensitivityProfile(values, "inconclusive")
    if len(set(top)) == 1:
        return SensitivityProfile(values, "constant", bound=top[0])
    pump = dfa.n_states
    for p in range(1, pump + 1):
        c = max(-(-n // p) - v for n, v in zip(top_n, top))  # ceil(n/p) - s(n)
        if c <= 2 * pump:
            return SensitivityProfile(values, "linear-lower", slope_p=p, offset_c=max(c, 0))
    return verdict


def brute_sensitivity(dfa, n, budget=10_000_000):
    """Max over all length-n inputs of the number of sensitive positions."""
    n_sym = len(dfa.alphabet)
    if n_sym**n > budget:
        raise BudgetExceededError(f"{n_sym}^{n} strings exceed the budget")
    if n == 0:
        return 0
    words = np.array(list(product(range(n_sym), repeat=n)), dtype=np.int32)
    member = dfa.accepts_batch(words)
    sensitive = np.zeros((len(words), n), dtype=bool)
    for i in range(n):
        for a in range(n_sym):
            flipped = words.copy()
            flipped[:, i] = a
            differs = dfa.accepts_batch(flipped) != member
            sensitive[:, i] |= differs & (words[:, i] != a)
    return int(sensitive.sum(axis=1).max())


def brute_block_sensitivity(dfa, n, budget=10_000_000):
    """Exact block sensitivity for binary alphabets: max number of disjoint
    blocks whose complementation flips membership, over all length-n inputs."""
    if len(dfa.alphabet) != 2:
        raise ValueError("block sensitivity brute force is binary-only")
    if 4**n > budget:
        raise BudgetExceededError(f"4^{n} block subsets exceed the budget")
    if n == 0:
        return 0
    words = np.array(list(product(range(2), repeat=n)), dtype=np.int32)
    member = dfa.accepts_batch(words)
    full = (1 << n) - 1
    best = 0
    # flippable[w, b]: complementing block b flips membership of word w
    blocks = np.arange(1, full + 1, dtype=np.int64)
    bits = ((words[:, ::-1] * (1 << np.arange(n))).sum(axis=1)).astype(np.int64)
    word_of_bits = {int(b): i for i, b in enumerate(bits)}
    flip_member = np.zeros((len(words), full + 1), dtype=bool)
    for b in range(1, full + 1):
        flipped_bits = bits ^ b
        flip_member[:, b] = member[[word_of_bits[int(fb)] for fb in flipped_bits]]
    for w in range(len(words)):
        flippable = np.zeros(full + 1, dtype=bool)
        flippable[1:] = flip_member[w, 1:] != member[w]
        # DP over position masks: best packing of disjoint flippable blocks
        f = np.zeros(full + 1, dtype=np.int64)
        for mask in range(1, full + 1):
            sub = mask
            best_here = f[mask & (mask - 1)]  # drop one bit: subset skip
            while sub:
                if flippable[sub]:
                    cand = 1 + f[mask ^ sub]
                    if cand > best_here:
                        best_here = cand
                sub = (sub - 1) & mask
            f[mask] = best_here
        best = max(best, int(f[full]))
    return best
