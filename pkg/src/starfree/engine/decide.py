"""Deciders for every complexity class, plus batch and cost-curve drivers.

analyze() runs the classifier once and freezes everything a decide run needs:
the flat family for remainder dispatch, per-component engine tables for the
sqrt-n path, first/last lookup tables for trivial components, and the raw
monoid scan for linear ones.  Raw-degenerate and raw-band languages skip the
flattening detour so their 0-/2-read contracts hold on raw positions.
"""

from dataclasses import dataclass, field

import numpy as np

from .. import kernels
from ..automata import Dfa, RegexAst
from ..classifier import ComplexityClass, classify
from ..errors import ClassRefusalError
from ..monoid import is_degenerate_image, is_rectangular_band_image, syntactic_context
from .core import RunState, eval_main
from .oracle import CLASSICAL, GROVER, VERDICT, CostModel, Oracle, QueryLedger
from .tables import EngineTables


@dataclass
class ComponentDecider:
    cls: ComplexityClass
    ctx: object
    tables: object = None  # EngineTables for sqrt-n components
    pair_table: object = None  # (n_sym, n_sym) membership for >= 2 symbols
    single_table: object = None  # (n_sym,) membership for exactly 1 symbol
    eps_member: bool = False
    plus_member: bool = False  # degenerate components: membership when |y| > 0


@dataclass
class DecisionArtifacts:
    report: object
    family: object
    raw_ctx: object
    raw_degenerate: bool
    raw_band: bool
    raw_tables: dict = field(default_factory=dict)
    components: dict = field(default_factory=dict)

    @property
    def aggregate(self):
        return self.report.aggregate


def _band_tables(ctx):
    mul = ctx.monoid.mul
    img = ctx.letter_image
    S = ctx.accept_set
    n_sym = len(ctx.alphabet)
    pair = np.zeros((n_sym, n_sym), dtype=bool)
    single = np.zeros(n_sym, dtype=bool)
    for a in range(n_sym):
        single[a] = int(img[a]) in S
        for b in range(n_sym):
            pair[a, b] = int(mul[img[a], img[b]]) in S
    return pair, single


def _degenerate_bits(ctx):
    eps = ctx.monoid.identity in ctx.accept_set
    img = ctx.image_semigroup()
    plus = next(iter(img)) in ctx.accept_set if img else eps
    return eps, plus


def analyze(language, monoid_cap=None, block_cap=None):
    report = classify(language, monoid_cap=monoid_cap, block_cap=block_cap)
    raw_ctx = syntactic_context(report.source_dfa)
    art = DecisionArtifacts(
        report=report,
        family=report.family,
        raw_ctx=raw_ctx,
        raw_degenerate=is_degenerate_image(raw_ctx),
        raw_band=is_rectangular_band_image(raw_ctx),
    )
    if art.raw_band:
        pair, single = _band_tables(raw_ctx)
        eps, _ = _degenerate_bits(raw_ctx)
        art.raw_tables = {"pair": pair, "single": single, "eps": eps}
    if art.raw_degenerate:
        eps, plus = _degenerate_bits(raw_ctx)
        art.raw_tables = {"eps": eps, "plus": plus}

    for rem, comp in report.components.items():
        dec = ComponentDecider(cls=comp.cls, ctx=comp.ctx)
        if comp.cls == ComplexityClass.SQRT_N:
            dec.tables = EngineTables(comp.ctx)
        elif comp.cls == ComplexityClass.CONSTANT:
            dec.pair_table, dec.single_table = _band_tables(comp.ctx)
            dec.eps_member, dec.plus_member = _degenerate_bits(comp.ctx)
        elif comp.cls == ComplexityClass.ZERO_QUERY:
            dec.eps_member, dec.plus_member = _degenerate_bits(comp.ctx)
        art.components[rem] = dec
    return art


def _encode_blocks(art, word):
    blocks, rem = art.family.split_word(word)
    balpha = art.family.block_alphabet
    enc = np.array([balpha.index(b) for b in blocks], dtype=np.int32)
    return enc, rem


def decide(art, word, model=CostModel.IDEAL_GROVER):
    """(membership verdict, QueryLedger) for one word under one cost model."""
    word = tuple(word)
    ledger = QueryLedger()
    mode = GROVER if model == CostModel.IDEAL_GROVER else CLASSICAL

    if art.raw_degenerate:
        t = art.raw_tables
        return (t["eps"] if len(word) == 0 else t["plus"]), ledger

    if art.raw_band:
        t = art.raw_tables
        alpha = art.raw_ctx.alphabet
        if len(word) == 0:
            return t["eps"], ledger
        ledger.classical_reads = min(2, len(word))
        ledger.modeled_cost = min(2, len(word))
        if len(word) == 1:
            return bool(t["single"][alpha.index(word[0])]), ledger
        return bool(t["pair"][alpha.index(word[0]), alpha.index(word[-1])]), ledger

    enc, rem = _encode_blocks(art, word)
    dec = art.components[rem]
    p = art.family.p
    # the remainder symbols are read outright (fewer than p raw queries)
    rem_reads = len(rem)

    if dec.cls == ComplexityClass.ZERO_QUERY:
        ledger.classical_reads = rem_reads
        ledger.modeled_cost = rem_reads
        ver = dec.eps_member if len(enc) == 0 else dec.plus_member
        return bool(ver), ledger

    if dec.cls == ComplexityClass.CONSTANT:
        reads = rem_reads + p * min(2, len(enc))
        ledger.classical_reads = reads
        ledger.modeled_cost = reads
        if len(enc) == 0:
            return dec.eps_member, ledger
        if len(enc) == 1:
            return bool(dec.single_table[enc[0]]), ledger
        return bool(dec.pair_table[enc[0], enc[-1]]), ledger

    if dec.cls == ComplexityClass.LINEAR:
        # full scan: the raw morphism product over the whole input
        ctx = art.raw_ctx
        enc_raw = np.array([ctx.alphabet.index(s) for s in word], dtype=np.int32)
        elem = kernels.monoid_scan(
            ctx.monoid.mul, ctx.letter_image, enc_raw, ctx.monoid.identity
        )
        ledger.classical_reads = len(word)
        ledger.modeled_cost = len(word)
        return elem in ctx.accept_set, ledger

    # sqrt-n component: run the star-free algorithm over the block string
    oracle = Oracle(
        enc.reshape(1, -1),
        len(art.family.block_alphabet),
        weight=p,
        raw_length=len(word),
        track_reads=(mode == CLASSICAL),
    )
    if mode == CLASSICAL and rem:
        oracle.mark_read_raw(len(word) - len(rem), len(word))
    run = RunState(mode, oracle)
    T = dec.tables
    ver = False
    cost = 0
    row = np.zeros(1, dtype=np.int64)
    lo = np.zeros(1, dtype=np.int64)
    hi = np.full(1, oracle.n, dtype=np.int64)
    for m in sorted(dec.ctx.accept_set):
        v, c = eval_main(T, False, row, lo, hi, m, run)
        cost += int(c[0])
        if bool(v[0]):
            ver = True
            break
    if mode == GROVER:
        ledger.modeled_cost = len(rem) + cost
    else:
        ledger.classical_reads = oracle.distinct_reads()
    return ver, ledger


def decide_batch(art, words2d, fast=True):
    """Verdicts for a 2-D batch of equal-length words (raw symbol indices),
    via the same per-component dispatch; no accounting (verdict mode).
    `fast=False` forces the general recursion (the closed-form path is
    cross-checked against it in the tests)."""
    words2d = np.asarray(words2d, dtype=np.int32)
    rows, n = words2d.shape
    p = art.family.p
    alpha = art.family.source_alphabet

    if art.raw_degenerate:
        t = art.raw_tables
        return np.full(rows, t["eps"] if n == 0 else t["plus"])
    if art.raw_band:
        t = art.raw_tables
        if n == 0:
            return np.full(rows, t["eps"])
        if n == 1:
            return t["single"][words2d[:, 0]]
        return t["pair"][words2d[:, 0], words2d[:, -1]]

    j = n % p
    rem_words = words2d[:, n - j :] if j else np.zeros((rows, 0), dtype=np.int32)
    prefix = words2d[:, : n - j]
    # block-encode: the block alphabet enumerates symbol tuples in product order
    n_sym = len(alpha)
    enc = np.zeros((rows, (n - j) // p), dtype=np.int32)
    for i in range(p):
        enc = enc * n_sym + prefix[:, i::p]

    out = np.zeros(rows, dtype=bool)
    if j == 0:
        groups = {(): np.arange(rows)}
    else:
        keys = rem_words
        # group rows by remainder word
        order = np.lexsort(keys.T[::-1])
        sorted_keys = keys[order]
        boundaries = np.nonzero((sorted_keys[1:] != sorted_keys[:-1]).any(axis=1))[0] + 1
        groups = {}
        for grp in np.split(order, boundaries):
            rem = tuple(alpha.symbols[s] for s in keys[grp[0]])
            groups[rem] = grp

    for rem, rows_idx in groups.items():
        dec = art.components[rem]
        sub = enc[rows_idx]
        if dec.cls == ComplexityClass.ZERO_QUERY:
            out[rows_idx] = dec.eps_member if sub.shape[1] == 0 else dec.plus_member
        elif dec.cls == ComplexityClass.CONSTANT:
            if sub.shape[1] == 0:
                out[rows_idx] = dec.eps_member
            elif sub.shape[1] == 1:
                out[rows_idx] = dec.single_table[sub[:, 0]]
            else:
                out[rows_idx] = dec.pair_table[sub[:, 0], sub[:, -1]]
        elif dec.cls == ComplexityClass.LINEAR:
            ctx = dec.ctx
            final = kernels.dfa_run_batch(
                ctx.monoid.mul, ctx.monoid.identity, ctx.letter_image[sub]
            )
            accept = np.zeros(ctx.monoid.size, dtype=bool)
            accept[sorted(ctx.accept_set)] = True
            out[rows_idx] = accept[final]
        else:
            oracle = Oracle(sub, len(art.family.block_alphabet), weight=p)
            run = RunState(VERDICT, oracle, memo_enabled=False, fast=fast)
            T = dec.tables
            k = len(rows_idx)
            ver = np.zeros(k, dtype=bool)
            row = np.arange(k, dtype=np.int64)
            lo = np.zeros(k, dtype=np.int64)
            hi = np.full(k, sub.shape[1], dtype=np.int64)
            for m in sorted(dec.ctx.accept_set):
                idx = np.nonzero(~ver)[0]
                if not idx.size:
                    break
                v, _ = eval_main(T, False, row[idx], lo[idx], hi[idx], m, run)
                ver[idx] |= v
            out[rows_idx] = ver
    return out


def _random_member(dfa, n, rng):
    """A uniformly random accepted word of length n, or None."""
    counts = np.zeros((n + 1, dfa.n_states), dtype=np.float64)
    counts[n, sorted(dfa.accept)] = 1.0
    for r in range(n - 1, -1, -1):
        counts[r] = counts[r + 1][dfa.delta].sum(axis=1)
        m = counts[r].max()
        if m > 0:
            counts[r] /= m  # renormalize to dodge overflow; ratios survive
    if counts[0, dfa.start] == 0:
        return None
    word = np.empty(n, dtype=np.int32)
    q = dfa.start
    for r in range(n):
        weights = counts[r + 1][dfa.delta[q]]
        total = weights.sum()
        word[r] = rng.choice(len(weights), p=weights / total)
        q = int(dfa.delta[q, word[r]])
    return word


def sample_strings(art, n, count, rng):
    """Mixed sample at one length: uniform strings, members, near-members."""
    dfa = art.report.source_dfa
    n_sym = len(dfa.alphabet)
    out = []
    for i in range(count):
        kind = i % 3
        if kind == 0:
            out.append(rng.integers(0, n_sym, size=n).astype(np.int32))
            continue
        member = _random_member(dfa, n, rng)
        if member is None:
            out.append(rng.integers(0, n_sym, size=n).astype(np.int32))
        elif kind == 1:
            out.append(member)
        else:
            near = member.copy()
            if n:
                pos = int(rng.integers(0, n))
                near[pos] = (near[pos] + 1 + rng.integers(0, n_sym - 1)) % n_sym
            out.append(near)
    return out


def cost_curve(art, lengths, samples_per_length=3, seed=0):
    """Rows (n, max classical reads, max modeled cost) over seeded samples.

    Classical reads come from classical-model runs, modeled cost from
    ideal-Grover runs on the same strings."""
    if art.aggregate != ComplexityClass.SQRT_N:
        raise ClassRefusalError(
            f"cost_curve runs on sqrt-n languages; this one is {art.aggregate.label}"
        )
    alpha = art.report.source_dfa.alphabet
    rows = []
    for n in lengths:
        rng = np.random.default_rng((seed, n))
        worst_classical = 0
        worst_modeled = 0
        for enc in sample_strings(art, n, samples_per_length, rng):
            word = tuple(alpha.symbols[s] for s in enc)
            _, led_g = decide(art, word, CostModel.IDEAL_GROVER)
            _, led_c = decide(art, word, CostModel.CLASSICAL)
            worst_modeled = max(worst_modeled, led_g.modeled_cost)
            worst_classical = max(worst_classical, led_c.classical_reads)
        rows.append((n, worst_classical, worst_modeled))
    return rows


def curve_csv(rows):
    return "n,classical,modeled\n" + "".join(f"{n},{c},{m}\n" for n, c, m in rows)


def loglog_slope(rows, column=2):
    pts = [(n, r[column]) for r in rows for n in [r[0]] if r[column] > 0 and n > 0]
    xs = np.log([p[0] for p in pts])
    ys = np.log([p[1] for p in pts])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)
