"""Syntactic monoids: construction, ideals, rank, and the class predicates.

The syntactic monoid is computed as the transition monoid of the minimal DFA
(elements are the distinct state transformations induced by words, with the
identity adjoined).  Representatives come out of the BFS in shortest-then-lex
order, which keeps every rendered table byte-stable.
"""

from dataclasses import dataclass
from collections import deque

import numpy as np

from .automata import minimize
from .errors import CapExceededError

DEFAULT_MONOID_CAP = 10_000


class FiniteMonoid:
    """Multiplication table with identity; associativity checked on build.

    With a generating set, Light's test ((x·g)·y = x·(g·y) for generators g)
    is exhaustive for the whole table; without one, all triples are checked.
    """

    __slots__ = ("size", "mul", "identity")

    def __init__(self, mul, identity, generators=None):
        mul = np.asarray(mul, dtype=np.int32)
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise ValueError("multiplication table must be square")
        if n and (mul.min() < 0 or mul.max() >= n):
            raise ValueError("table entry out of range")
        identity = int(identity)
        if not np.array_equal(mul[identity], np.arange(n)) or not np.array_equal(
            mul[:, identity], np.arange(n)
        ):
            raise ValueError("identity law fails")
        gens = range(n) if generators is None else sorted(set(int(g) for g in generators))
        if generators is None and n > 512:
            raise ValueError("full associativity check too large; pass generators")
        for g in gens:
            if not np.array_equal(mul[mul[:, g], :], mul[:, mul[g, :]]):
                raise ValueError(f"associativity fails through element {g}")
        self.size = n
        self.mul = mul
        self.identity = identity

    def product(self, elements):
        acc = self.identity
        for x in elements:
            acc = int(self.mul[acc, x])
        return acc

    def power(self, x, k):
        acc = self.identity
        for _ in range(k):
            acc = int(self.mul[acc, x])
        return acc


def power_profile(monoid, x):
    """(threshold t, period p) of the power sequence x^0, x^1, ...:
    x^i = x^(i+p) exactly for i >= t, with p minimal."""
    seen = {}
    seq = []
    cur = monoid.identity
    while cur not in seen:
        seen[cur] = len(seq)
        seq.append(cur)
        cur = int(monoid.mul[cur, x])
    t = seen[cur]
    return t, len(seq) - t


@dataclass
class AperiodicityResult:
    aperiodic: bool
    violator: int = None  # element index with period >= 2
    period: int = None

    def __bool__(self):
        return self.aperiodic


@dataclass
class IdealProfile:
    """Per-element two-sided/left/right ideals (frozensets) and ranks."""

    two_sided: list
    left: list
    right: list
    rank: np.ndarray


class SyntacticContext:
    """Monoid + morphism + accepting subset for one language.

    `letter_image[i]` is the element of the i-th alphabet symbol; `accept_set`
    is S with L = phi^-1(S); `representatives[m]` is the shortest witness word
    for element m.  Ideal data is computed lazily and cached.
    """

    def __init__(self, monoid, alphabet, letter_image, accept_set, representatives, source_dfa):
        self.monoid = monoid
        self.alphabet = alphabet
        self.letter_image = np.asarray(letter_image, dtype=np.int32)
        self.accept_set = frozenset(accept_set)
        self.representatives = list(representatives)
        self.source_dfa = source_dfa
        self._ideals = None
        self._image_semigroup = None

    def image(self, word):
        acc = self.monoid.identity
        for s in word:
            acc = int(self.monoid.mul[acc, self.letter_image[self.alphabet.index(s)]])
        return acc

    def member(self, word):
        return self.image(word) in self.accept_set

    def rep(self, m):
        return self.representatives[m]

    def rep_str(self, m):
        if m == self.monoid.identity and not self.representatives[m]:
            return "1"
        return self.alphabet.format_word(self.representatives[m]) or "1"

    @property
    def ideals(self):
        if self._ideals is None:
            self._ideals = ideal_profile(self)
        return self._ideals

    def image_semigroup(self):
        """phi(Sigma^+): the subsemigroup generated by the letter images."""
        if self._image_semigroup is None:
            mul = self.monoid.mul
            gens = sorted(set(int(g) for g in self.letter_image))
            seen = set(gens)
            queue = deque(gens)
            while queue:
                x = queue.popleft()
                for g in gens:
                    y = int(mul[x, g])
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            self._image_semigroup = frozenset(seen)
        return self._image_semigroup


def syntactic_context(dfa, cap=DEFAULT_MONOID_CAP):
    """Transition monoid of the minimal DFA, with shortest-lex representatives.

    Raises CapExceededError when more than `cap` distinct transformations
    appear."""
    dfa = minimize(dfa)
    n_states = dfa.n_states
    identity_t = tuple(range(n_states))
    letters = [tuple(int(q) for q in dfa.delta[:, s]) for s in range(len(dfa.alphabet))]

    index = {identity_t: 0}
    transforms = [identity_t]
    reps = [()]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        t = transforms[i]
        for s, lt in enumerate(letters):
            t2 = tuple(lt[q] for q in t)
            if t2 not in index:
                if len(transforms) >= cap:
                    raise CapExceededError("syntactic monoid", len(transforms) + 1, cap)
                index[t2] = len(transforms)
                transforms.append(t2)
                reps.append(reps[i] + (dfa.alphabet.symbols[s],))
                queue.append(index[t2])
    size = len(transforms)

    mul = np.empty((size, size), dtype=np.int32)
    tarr = np.array(transforms, dtype=np.int32)  # (size, n_states)
    for j in range(size):
        # (i . j)(q) = t_j(t_i(q)) : row-compose every i with j at once
        composed = tarr[j][tarr]  # (size, n_states)
        for i in range(size):
            mul[i, j] = index[tuple(int(v) for v in composed[i])]

    letter_image = np.array([index[lt] for lt in letters], dtype=np.int32)
    monoid = FiniteMonoid(mul, 0, generators=letter_image)
    accept = {i for i, t in enumerate(transforms) if t[dfa.start] in dfa.accept}
    return SyntacticContext(monoid, dfa.alphabet, letter_image, accept, reps, dfa)


def ideal_profile(ctx):
    """All two-sided/left/right ideals and ranks rho(m) = |M| - |MmM|."""
    mul = ctx.monoid.mul
    n = ctx.monoid.size
    rows = np.repeat(np.arange(n), n)
    right = np.zeros((n, n), dtype=bool)
    right[rows, mul.ravel()] = True  # right[m] ∋ m·x
    left = np.zeros((n, n), dtype=bool)
    left[rows, mul.T.ravel()] = True  # left[m] ∋ x·m
    # two_sided[m] = ∪_{z ∈ Mm} zM
    two = (left.astype(np.int16) @ right.astype(np.int16)) > 0
    rank = (n - two.sum(axis=1)).astype(np.int64)
    to_sets = lambda mat: [frozenset(np.nonzero(row)[0].tolist()) for row in mat]
    return IdealProfile(to_sets(two), to_sets(left), to_sets(right), rank)


def multiplication_table(ctx):
    """Text rendering of the full table, rows = left factor, in element order;
    the identity prints as 1, other elements as their representatives."""
    names = [ctx.rep_str(m) for m in range(ctx.monoid.size)]
    width = max(len(n) for n in names + ["."])
    header = ["." + " " * (width - 1)] + [n.ljust(width) for n in names]
    lines = [" | ".join(header).rstrip()]
    for i in range(ctx.monoid.size):
        row = [names[i].ljust(width)] + [
            names[int(ctx.monoid.mul[i, j])].ljust(width) for j in range(ctx.monoid.size)
        ]
        lines.append(" | ".join(row).rstrip())
    return "\n".join(lines) + "\n"


def render_ideals(ctx):
    prof = ctx.ideals
    names = [ctx.rep_str(m) for m in range(ctx.monoid.size)]
    fmt = lambda s: "{" + ", ".join(names[m] for m in sorted(s)) + "}"
    lines = ["two-sided ideals:"]
    for m in range(ctx.monoid.size):
        lines.append(f"  M.{names[m]}.M = {fmt(prof.two_sided[m])}")
    lines.append("left ideals:")
    for m in range(ctx.monoid.size):
        lines.append(f"  M.{names[m]} = {fmt(prof.left[m])}")
    lines.append("right ideals:")
    for m in range(ctx.monoid.size):
        lines.append(f"  {names[m]}.M = {fmt(prof.right[m])}")
    lines.append("ranks:")
    for m in range(ctx.monoid.size):
        lines.append(f"  rank({names[m]}) = {int(prof.rank[m])}")
    return "\n".join(lines) + "\n"


def is_aperiodic(ctx):
    """Every element reaches x^n = x^(n+1); on failure reports the violator
    with the smallest representative and its cycle length."""
    for x in range(ctx.monoid.size):
        _, period = power_profile(ctx.monoid, x)
        if period > 1:
            return AperiodicityResult(False, violator=x, period=period)
    return AperiodicityResult(True)


def is_rectangular_band_image(ctx):
    """phi(Sigma^+) is a rectangular band: r·r = r and r·s·t = r·t on it."""
    img = sorted(ctx.image_semigroup())
    mul = ctx.monoid.mul
    sub = mul[np.ix_(img, img)]
    idx = np.arange(len(img))
    if not np.array_equal(np.diagonal(sub), np.asarray(img)):
        return False
    # r s t == r t for all r, s, t in the image
    local = {m: i for i, m in enumerate(img)}
    rs = np.array([[local[sub[r, s]] for s in idx] for r in idx])
    rst = sub[rs, :]  # rst[r, s, t]
    rt = sub[:, None, :]
    return bool((rst == rt).all())


def is_degenerate_image(ctx):
    return len(ctx.image_semigroup()) == 1


def distinguish(ctx, m1, m2, max_context_len=None):
    """Context (u, v) with exactly one of u·rep(m1)·v, u·rep(m2)·v in L.

    Contexts are products of representatives, searched shortest-total-length
    first; existence is guaranteed by the syntactic congruence."""
    if m1 == m2:
        raise ValueError("elements must differ")
    mul = ctx.monoid.mul
    S = ctx.accept_set
    n = ctx.monoid.size
    order = sorted(range(n), key=lambda m: (len(ctx.representatives[m]), m))
    pairs = sorted(
        ((p, q) for p in order for q in order),
        key=lambda pq: (
            len(ctx.representatives[pq[0]]) + len(ctx.representatives[pq[1]]),
            pq,
        ),
    )
    for p, q in pairs:
        in1 = int(mul[int(mul[p, m1]), q]) in S
        in2 = int(mul[int(mul[p, m2]), q]) in S
        if in1 != in2:
            return ctx.representatives[p], ctx.representatives[q]
    raise AssertionError("syntactic congruence guarantees a distinguishing context")
