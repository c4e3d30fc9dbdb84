"""Core representations and algorithms for regular languages.

Machines are DFAs with a total transition function stored as a numpy array,
which keeps product constructions, minimization and the brute-force oracles
fast.  Regexes support complement (~) and intersection (&) so star-free
expressions can be written directly; the alphabet is always declared
explicitly because complement is alphabet-relative.
"""

from dataclasses import dataclass
from collections import deque

import numpy as np

from .errors import (
    AlphabetMismatchError,
    BudgetExceededError,
    FileFormatError,
    RegexSyntaxError,
    UnknownSymbolError,
)
from . import kernels

Word = tuple  # tuple of symbol strings


class Alphabet:
    """Ordered list of distinct symbol identifiers.

    Order is load-bearing: it fixes canonical DFA numbering, shortest-lex
    representatives and encodings, so fixtures stay byte-stable.
    """

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols}")
        self.symbols = symbols
        self._index = {s: i for i, s in enumerate(symbols)}

    def index(self, symbol):
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbolError(
                f"symbol {symbol!r} not in alphabet {self.symbols}"
            ) from None

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"

    def word(self, text):
        """Parse a word: single characters if every symbol is one character,
        otherwise '.'-or-whitespace separated symbol names."""
        if text == "":
            return ()
        if all(len(s) == 1 for s in self.symbols) and "." not in text and " " not in text:
            parts = list(text)
        else:
            parts = text.replace(".", " ").split()
        for p in parts:
            if p not in self._index:
                raise UnknownSymbolError(f"symbol {p!r} not in alphabet {self.symbols}")
        return tuple(parts)

    def format_word(self, word):
        if all(len(s) == 1 for s in self.symbols):
            return "".join(word)
        return ".".join(word)


# ---------------------------------------------------------------------------
# Regex AST


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Lit:
    symbol: str


@dataclass(frozen=True)
class Cat:
    parts: tuple


@dataclass(frozen=True)
class Alt:
    parts: tuple


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Star:
    child: object


@dataclass(frozen=True)
class Not:
    child: object


@dataclass(frozen=True)
class RegexAst:
    node: object
    alphabet: Alphabet


_PUNCT = "()*~&|"


def _tokenize(text):
    tokens = []
    cur = ""
    for ch in text:
        if ch.isspace() or ch in _PUNCT:
            if cur:
                tokens.append(cur)
                cur = ""
            if ch in _PUNCT:
                tokens.append(ch)
        else:
            cur += ch
    if cur:
        tokens.append(cur)
    return tokens


class _Parser:
    """Recursive descent over the token list.

    Precedence, tightest first: postfix '*', prefix '~', juxtaposition,
    infix '&', infix '|'.
    """

    def __init__(self, tokens, alphabet):
        self.tokens = tokens
        self.pos = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        node = self.alt()
        if self.peek() is not None:
            raise RegexSyntaxError(f"unexpected token {self.peek()!r}", self.pos)
        return node

    def alt(self):
        parts = [self.inter()]
        while self.peek() == "|":
            self.take()
            parts.append(self.inter())
        return parts[0] if len(parts) == 1 else Alt(tuple(parts))

    def inter(self):
        parts = [self.concat()]
        while self.peek() == "&":
            self.take()
            parts.append(self.concat())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def concat(self):
        parts = []
        while True:
            tok = self.peek()
            if tok is None or tok in ("|", "&", ")"):
                break
            parts.append(self.prefixed())
        if not parts:
            raise RegexSyntaxError("empty expression", self.pos)
        return parts[0] if len(parts) == 1 else Cat(tuple(parts))

    def prefixed(self):
        if self.peek() == "~":
            self.take()
            return Not(self.prefixed())
        return self.postfixed()

    def postfixed(self):
        node = self.atom()
        while self.peek() == "*":
            self.take()
            node = Star(node)
        return node

    def atom(self):
        tok = self.take()
        if tok is None:
            raise RegexSyntaxError("unexpected end of expression", self.pos)
        if tok == "(":
            node = self.alt()
            if self.take() != ")":
                raise RegexSyntaxError("missing closing parenthesis", self.pos)
            return node
        if tok in ("*", "~", "&", "|", ")"):
            raise RegexSyntaxError(f"unexpected operator {tok!r}", self.pos)
        if tok == "%e":
            return Epsilon()
        if tok == "%0":
            return Empty()
        if tok.startswith("%"):
            raise RegexSyntaxError(f"unknown escape {tok!r}", self.pos)
        if tok not in self.alphabet:
            raise UnknownSymbolError(
                f"symbol {tok!r} not in alphabet {self.alphabet.symbols}"
            )
        return Lit(tok)


def parse_regex(text, alphabet):
    """Parse an expression (no header line) over a declared alphabet."""
    return RegexAst(_Parser(_tokenize(text), alphabet).parse(), alphabet)


def parse_regex_file(text):
    """Parse the file form: first non-empty line `alphabet: s1 s2 ...`,
    remaining lines the expression."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].strip().startswith("alphabet:"):
        raise FileFormatError("regex file must start with an 'alphabet:' line")
    symbols = lines[0].split(":", 1)[1].split()
    return parse_regex(" ".join(lines[1:]), Alphabet(symbols))


# ---------------------------------------------------------------------------
# Machines


class Nfa:
    """Nondeterministic automaton; `None` in a transition means epsilon."""

    def __init__(self, n_states, alphabet, transitions, starts, accepts):
        self.n_states = n_states
        self.alphabet = alphabet
        self.transitions = list(transitions)
        self.starts = frozenset(starts)
        self.accepts = frozenset(accepts)
        for p, sym, q in self.transitions:
            if not (0 <= p < n_states and 0 <= q < n_states):
                raise ValueError(f"transition ({p},{sym},{q}) out of range")
            if sym is not None and sym not in alphabet:
                raise UnknownSymbolError(f"transition symbol {sym!r} not in alphabet")


class Dfa:
    """Complete DFA: `delta` is a (n_states, n_symbols) int array."""

    __slots__ = ("alphabet", "n_states", "delta", "start", "accept")

    def __init__(self, alphabet, delta, start, accept):
        delta = np.asarray(delta, dtype=np.int32)
        if delta.ndim != 2 or delta.shape[1] != len(alphabet):
            raise ValueError("delta must be (n_states, n_symbols)")
        n = delta.shape[0]
        if not (0 <= start < n):
            raise ValueError("start state out of range")
        accept = frozenset(int(q) for q in accept)
        if any(not 0 <= q < n for q in accept):
            raise ValueError("accept state out of range")
        if n and (delta.min() < 0 or delta.max() >= n):
            raise ValueError("delta entry out of range")
        self.alphabet = alphabet
        self.n_states = n
        self.delta = delta
        self.start = int(start)
        self.accept = accept

    def encode(self, word):
        return np.array([self.alphabet.index(s) for s in word], dtype=np.int32)

    def run(self, word):
        q = self.start
        for s in word:
            q = int(self.delta[q, self.alphabet.index(s)])
        return q

    def accepts(self, word):
        return self.run(word) in self.accept

    def accepts_encoded(self, indices):
        q = self.start
        for s in indices:
            q = int(self.delta[q, s])
        return q in self.accept

    @property
    def accept_mask(self):
        mask = np.zeros(self.n_states, dtype=bool)
        mask[list(self.accept)] = True
        return mask

    def accepts_batch(self, words2d):
        """Membership for each row of a 2D symbol-index array."""
        if words2d.shape[1] == 0:
            return np.full(words2d.shape[0], self.start in self.accept)
        final = kernels.dfa_run_batch(self.delta, self.start, words2d)
        return self.accept_mask[final]

    def __repr__(self):
        return (
            f"Dfa(states={self.n_states}, alphabet={list(self.alphabet.symbols)},"
            f" start={self.start}, accept={sorted(self.accept)})"
        )


def dfa_to_nfa(dfa):
    trans = [
        (p, dfa.alphabet.symbols[s], int(dfa.delta[p, s]))
        for p in range(dfa.n_states)
        for s in range(len(dfa.alphabet))
    ]
    return Nfa(dfa.n_states, dfa.alphabet, trans, {dfa.start}, dfa.accept)


def determinize(nfa):
    """Subset construction with epsilon closure; result is complete (the empty
    subset is the dead state)."""
    alphabet = nfa.alphabet
    n_sym = len(alphabet)
    eps = [[] for _ in range(nfa.n_states)]
    by_symbol = [[[] for _ in range(n_sym)] for _ in range(nfa.n_states)]
    for p, sym, q in nfa.transitions:
        if sym is None:
            eps[p].append(q)
        else:
            by_symbol[p][alphabet.index(sym)].append(q)

    def closure(states):
        seen = set(states)
        stack = list(states)
        while stack:
            p = stack.pop()
            for q in eps[p]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    start = closure(nfa.starts)
    index = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        subset = order[i]
        row = []
        for s in range(n_sym):
            nxt = closure({q for p in subset for q in by_symbol[p][s]})
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(row)
        i += 1
    accept = {i for i, subset in enumerate(order) if subset & nfa.accepts}
    return Dfa(alphabet, np.array(rows, dtype=np.int32), 0, accept)


def _nfa_shift(nfa, offset):
    return [(p + offset, sym, q + offset) for p, sym, q in nfa.transitions]


def nfa_union(a, b):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("union over different alphabets")
    off = a.n_states
    trans = list(a.transitions) + _nfa_shift(b, off)
    return Nfa(
        a.n_states + b.n_states,
        a.alphabet,
        trans,
        a.starts | {q + off for q in b.starts},
        a.accepts | {q + off for q in b.accepts},
    )


def nfa_concat(a, b):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("concatenation over different alphabets")
    off = a.n_states
    trans = list(a.transitions) + _nfa_shift(b, off)
    trans += [(q, None, s + off) for q in a.accepts for s in b.starts]
    return Nfa(
        a.n_states + b.n_states,
        a.alphabet,
        trans,
        a.starts,
        {q + off for q in b.accepts},
    )


def nfa_star(a):
    new = a.n_states  # fresh start/accept state
    trans = list(a.transitions)
    trans += [(new, None, s) for s in a.starts]
    trans += [(q, None, new) for q in a.accepts]
    return Nfa(a.n_states + 1, a.alphabet, trans, {new}, {new})


def product_dfa(a, b, combine):
    """Product construction; `combine(bool, bool) -> bool` picks acceptance."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("product over different alphabets")
    n_sym = len(a.alphabet)
    # vectorized over the full product state space
    na, nb = a.n_states, b.n_states
    pa, pb = np.divmod(np.arange(na * nb), nb)
    delta = a.delta[pa][:, :] * nb + b.delta[pb][:, :]
    acc_a = a.accept_mask[pa]
    acc_b = b.accept_mask[pb]
    accept = np.nonzero(combine(acc_a, acc_b))[0]
    prod = Dfa(a.alphabet, delta.astype(np.int32), a.start * nb + b.start, accept)
    return minimize(prod)


def complement(dfa):
    return Dfa(
        dfa.alphabet,
        dfa.delta,
        dfa.start,
        set(range(dfa.n_states)) - dfa.accept,
    )


def regex_to_dfa(ast):
    """Compile to a minimal DFA.  Boolean nodes (complement, intersection)
    go through determinization/products; everything else through Thompson
    pieces.  Minimizing at each node keeps intermediate machines small."""
    alphabet = ast.alphabet

    def lit_dfa(sym):
        s = alphabet.index(sym)
        # 0 = start, 1 = accepted-one-symbol, 2 = dead
        delta = np.full((3, len(alphabet)), 2, dtype=np.int32)
        delta[0, s] = 1
        return Dfa(alphabet, delta, 0, {1})

    def compile_node(node):
        if isinstance(node, Empty):
            return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int32), 0, set())
        if isinstance(node, Epsilon):
            delta = np.ones((2, len(alphabet)), dtype=np.int32)
            return Dfa(alphabet, delta, 0, {0})
        if isinstance(node, Lit):
            return lit_dfa(node.symbol)
        if isinstance(node, Cat):
            acc = compile_node(node.parts[0])
            for part in node.parts[1:]:
                acc = minimize(
                    determinize(nfa_concat(dfa_to_nfa(acc), dfa_to_nfa(compile_node(part))))
                )
            return acc
        if isinstance(node, Alt):
            acc = compile_node(node.parts[0])
            for part in node.parts[1:]:
                acc = minimize(
                    determinize(nfa_union(dfa_to_nfa(acc), dfa_to_nfa(compile_node(part))))
                )
            return acc
        if isinstance(node, And):
            acc = compile_node(node.parts[0])
            for part in node.parts[1:]:
                acc = product_dfa(acc, compile_node(part), np.logical_and)
            return acc
        if isinstance(node, Star):
            return minimize(determinize(nfa_star(dfa_to_nfa(compile_node(node.child)))))
        if isinstance(node, Not):
            return minimize(complement(compile_node(node.child)))
        raise TypeError(f"unknown regex node {node!r}")

    return minimize(compile_node(ast.node))


def dfa_empty(alphabet):
    return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int32), 0, set())


def dfa_epsilon(alphabet):
    return Dfa(alphabet, np.ones((2, len(alphabet)), dtype=np.int32), 0, {0})


def dfa_literal(alphabet, symbol):
    s = alphabet.index(symbol)
    delta = np.full((3, len(alphabet)), 2, dtype=np.int32)
    delta[0, s] = 1
    return Dfa(alphabet, delta, 0, {1})


def dfa_sigma_star(alphabet):
    return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int32), 0, {0})


# ---------------------------------------------------------------------------
# Minimization, equivalence, enumeration


def _reachable(dfa):
    seen = np.zeros(dfa.n_states, dtype=bool)
    seen[dfa.start] = True
    queue = deque([dfa.start])
    order = [dfa.start]
    while queue:
        p = queue.popleft()
        for s in range(len(dfa.alphabet)):
            q = int(dfa.delta[p, s])
            if not seen[q]:
                seen[q] = True
                queue.append(q)
                order.append(q)
    return order


def minimize(dfa):
    """Unique minimal DFA with canonical state numbering (BFS from the start
    state, symbols in alphabet order), so equal languages give identical
    arrays.  Idempotent."""
    order = _reachable(dfa)
    old_to_new = {q: i for i, q in enumerate(order)}
    n = len(order)
    delta = np.empty((n, len(dfa.alphabet)), dtype=np.int32)
    for i, q in enumerate(order):
        for s in range(len(dfa.alphabet)):
            delta[i, s] = old_to_new[int(dfa.delta[q, s])]
    accept = np.zeros(n, dtype=bool)
    for q in dfa.accept:
        if q in old_to_new:
            accept[old_to_new[q]] = True

    # Moore partition refinement, vectorized on rows.
    classes = accept.astype(np.int64)
    while True:
        signature = np.column_stack([classes, classes[delta]])
        _, new_classes = np.unique(signature, axis=0, return_inverse=True)
        if np.array_equal(new_classes, classes):
            break
        classes = new_classes

    # canonical numbering: BFS over classes from the start class
    start_class = int(classes[0])
    rep = {}
    for q in range(n):
        rep.setdefault(int(classes[q]), q)
    numbering = {start_class: 0}
    queue = deque([start_class])
    while queue:
        c = queue.popleft()
        q = rep[c]
        for s in range(len(dfa.alphabet)):
            c2 = int(classes[delta[q, s]])
            if c2 not in numbering:
                numbering[c2] = len(numbering)
                queue.append(c2)
    m = len(numbering)
    new_delta = np.empty((m, len(dfa.alphabet)), dtype=np.int32)
    new_accept = set()
    for c, i in numbering.items():
        q = rep[c]
        for s in range(len(dfa.alphabet)):
            new_delta[i, s] = numbering[int(classes[delta[q, s]])]
        if accept[q]:
            new_accept.add(i)
    return Dfa(dfa.alphabet, new_delta, 0, new_accept)


def equivalent(a, b):
    """(True, None) if the two machines accept the same language, else
    (False, shortest distinguishing word)."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(
            f"cannot compare machines over {a.alphabet.symbols} and {b.alphabet.symbols}"
        )
    start = (a.start, b.start)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        pa, pb = pair
        if (pa in a.accept) != (pb in b.accept):
            word = []
            cur = pair
            while parent[cur] is not None:
                cur, sym = parent[cur]
                word.append(sym)
            return False, tuple(reversed(word))
        for s, sym in enumerate(a.alphabet.symbols):
            nxt = (int(a.delta[pa, s]), int(b.delta[pb, s]))
            if nxt not in parent:
                parent[nxt] = (pair, sym)
                queue.append(nxt)
    return True, None


def enumerate_language(dfa, max_len, budget=10_000_000):
    """All accepted words of length <= max_len in length-then-lex order
    (lex by alphabet order).  `budget` bounds visited search nodes."""
    n_sym = len(dfa.alphabet)
    # feasible[q][r]: some accepted word of length exactly r starts at q
    feasible = np.zeros((dfa.n_states, max_len + 1), dtype=bool)
    feasible[list(dfa.accept), 0] = True
    for r in range(1, max_len + 1):
        feasible[:, r] = feasible[dfa.delta, r - 1].any(axis=1)

    out = []
    work = 0
    symbols = dfa.alphabet.symbols
    for length in range(max_len + 1):
        stack = [(dfa.start, ())]
        while stack:
            q, prefix = stack.pop()
            work += 1
            if work > budget:
                raise BudgetExceededError(
                    f"enumeration budget {budget} exceeded at |w|<= {max_len}"
                )
            remaining = length - len(prefix)
            if remaining == 0:
                if feasible[q, 0]:
                    out.append(prefix)
                continue
            # push in reverse so alphabet order pops first
            for s in range(n_sym - 1, -1, -1):
                q2 = int(dfa.delta[q, s])
                if feasible[q2, remaining - 1]:
                    stack.append((q2, prefix + (symbols[s],)))
    return out


# ---------------------------------------------------------------------------
# Binary encoding


def binarize(dfa):
    """Reencode over {0,1}: each symbol becomes ceil(log2 |Σ|) bits; surplus
    codes map to the last alphabet symbol.  Words of length not divisible by
    the code width are rejected."""
    n_sym = len(dfa.alphabet)
    lam = max(1, int(np.ceil(np.log2(n_sym))) if n_sym > 1 else 1)
    bin_alpha = Alphabet(("0", "1"))

    decode = [min(v, n_sym - 1) for v in range(2**lam)]
    # states: (q, partial value, bits read); laid out as q * (2^lam - 1) + tree node
    index = {}
    order = []

    def state_id(q, value, k):
        key = (q, value, k)
        if key not in index:
            index[key] = len(order)
            order.append(key)
        return index[key]

    state_id(dfa.start, 0, 0)
    rows = []
    i = 0
    while i < len(order):
        q, value, k = order[i]
        row = []
        for bit in (0, 1):
            v2 = value * 2 + bit
            if k + 1 == lam:
                row.append(state_id(int(dfa.delta[q, decode[v2]]), 0, 0))
            else:
                row.append(state_id(q, v2, k + 1))
        rows.append(row)
        i += 1
    accept = {i for i, (q, _v, k) in enumerate(order) if k == 0 and q in dfa.accept}
    return minimize(Dfa(bin_alpha, np.array(rows, dtype=np.int32), 0, accept))


def binarize_word(word, alphabet):
    """Encode a word with the same code binarize() uses."""
    n_sym = len(alphabet)
    lam = max(1, int(np.ceil(np.log2(n_sym))) if n_sym > 1 else 1)
    bits = []
    for s in word:
        v = alphabet.index(s)
        bits.extend(str((v >> (lam - 1 - j)) & 1) for j in range(lam))
    return tuple(bits)


def debinarize_word(bits, alphabet):
    n_sym = len(alphabet)
    lam = max(1, int(np.ceil(np.log2(n_sym))) if n_sym > 1 else 1)
    if len(bits) % lam:
        raise ValueError("bit string length not divisible by the code width")
    out = []
    for i in range(0, len(bits), lam):
        v = int("".join(bits[i : i + lam]), 2)
        out.append(alphabet.symbols[min(v, n_sym - 1)])
    return tuple(out)


# ---------------------------------------------------------------------------
# DFA file format


def format_dfa_file(dfa):
    lines = [
        "alphabet: " + " ".join(dfa.alphabet.symbols),
        f"states: {dfa.n_states}",
        f"start: {dfa.start}",
        "accept: " + " ".join(str(q) for q in sorted(dfa.accept)),
    ]
    for p in range(dfa.n_states):
        for s, sym in enumerate(dfa.alphabet.symbols):
            lines.append(f"trans: {p} {sym} {int(dfa.delta[p, s])}")
    return "\n".join(lines) + "\n"


def parse_dfa_file(text):
    alphabet = None
    n_states = None
    start = None
    accept = None
    trans = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            key, rest = line.split(":", 1)
        except ValueError:
            raise FileFormatError(f"line {lineno}: expected 'key: ...'") from None
        fields = rest.split()
        if key == "alphabet":
            alphabet = Alphabet(fields)
        elif key == "states":
            n_states = int(fields[0])
        elif key == "start":
            start = int(fields[0])
        elif key == "accept":
            accept = {int(f) for f in fields}
        elif key == "trans":
            if len(fields) != 3:
                raise FileFormatError(f"line {lineno}: trans needs 'state symbol state'")
            p, sym, q = int(fields[0]), fields[1], int(fields[2])
            if (p, sym) in trans:
                raise FileFormatError(f"line {lineno}: duplicate transition ({p},{sym})")
            trans[(p, sym)] = q
        else:
            raise FileFormatError(f"line {lineno}: unknown key {key!r}")
    if alphabet is None or n_states is None or start is None or accept is None:
        raise FileFormatError("missing one of alphabet/states/start/accept")
    delta = np.full((n_states, len(alphabet)), -1, dtype=np.int32)
    for (p, sym), q in trans.items():
        if not 0 <= p < n_states or not 0 <= q < n_states:
            raise FileFormatError(f"transition ({p},{sym},{q}) out of range")
        delta[p, alphabet.index(sym)] = q
    if (delta < 0).any():
        p, s = np.argwhere(delta < 0)[0]
        raise FileFormatError(
            f"partial transition function: state {p} has no edge on"
            f" {alphabet.symbols[s]!r}"
        )
    return Dfa(alphabet, delta, start, accept)
