"""The star-free membership algorithm, executed over lockstep lanes.

A lane is one window [lo, hi) of one oracle row; every operation takes
parallel arrays of lanes and a single monoid element m, and returns per-lane
verdicts (plus per-lane modeled cost in grover mode).  Recursion structure:

    main(w, m):
        m = 1:  no non-identity letter in w
        else:   left_ideal(w) and right_ideal(w) and not ideal_infix(w)
                and no C-letter in w

    right_ideal:  OR over (r, a) in E of prefix_check(w, r, a)
    prefix_check: lockstep binary search for the longest prefix inside
                  K = union of phi^-1(s), s in H(r); then one read and a
                  recursive main on the prefix
    ideal_infix:  OR over G of a doubling-scale search whose per-position
                  predicate is an OR over splits p.q = r of
                  suffix_check(left, p, a) and prefix_check(right, q, b)

The mirrored operations run the same code against the opposite tables and the
reversed oracle side.  Verdicts never consult the morphism directly; they are
assembled from the recursion exactly as the quantum algorithm would.
"""

import numpy as np

from ..errors import StructuralError
from .. import kernels
from .oracle import CLASSICAL, GROVER, VERDICT, grover_charge

MAX_SUBLANES = 1 << 21


def _ragged_arange(reps):
    """concat(arange(reps[0]), arange(reps[1]), ...) without a Python loop."""
    reps = np.asarray(reps, dtype=np.int64)
    total = int(reps.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    starts = np.cumsum(reps) - reps
    return np.arange(total, dtype=np.int64) - np.repeat(starts, reps)


class RunState:
    def __init__(self, model, oracle, memo_enabled=True, fast=True):
        self.model = model
        self.oracle = oracle
        self.memo = {} if (memo_enabled and oracle.fwd.rows == 1) else None
        self.max_depth = 0
        # verdict-mode closed forms for identity-only E/F/G sets
        self.fast = fast and model == VERDICT


def _zeros(k):
    return np.zeros(k, dtype=np.int64)


def _as_lanes(row, lo, hi):
    row = np.asarray(row, dtype=np.int64)
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    return row, lo, hi


def eval_main(T, reverse, row, lo, hi, m, run, depth=0):
    """Per-lane verdicts (and grover costs) for 'window in phi^-1(m)'."""
    row, lo, hi = _as_lanes(row, lo, hi)
    k = len(lo)
    if depth > T.size + 2:
        raise StructuralError("recursion exceeded the monoid's rank chain")
    run.max_depth = max(run.max_depth, depth)
    if k == 0:
        return np.zeros(0, dtype=bool), _zeros(0)

    memo_key = None
    if run.memo is not None and k == 1:
        memo_key = (id(T), reverse, m, int(lo[0]), int(hi[0]))
        hit = run.memo.get(memo_key)
        if hit is not None:
            ver, cost = hit
            return np.array([ver]), np.array([cost], dtype=np.int64)

    if m == T.identity:
        ver, cost = _letter_search(T, reverse, row, lo, hi, "nonid", T.nonid_letters, run)
        ver = ~ver  # member of 1* iff nothing non-identity was found
    elif run.fast and T.fast_ok(m):
        ver = _eval_main_fast(T, reverse, row, lo, hi, m, run)
        cost = _zeros(k)
    else:
        ver = np.ones(k, dtype=bool)
        cost = _zeros(k)
        # LeftIdeal: mirrored RightIdeal on the opposite tables
        n_side = run.oracle.n
        r_lo, r_hi = n_side - hi, n_side - lo
        v, c = _ideal_side(T.op, not reverse, row, r_lo, r_hi, m, run, depth)
        cost += c
        ver &= v
        idx = np.nonzero(ver)[0]
        if idx.size:
            v, c = _ideal_side(T, reverse, row[idx], lo[idx], hi[idx], m, run, depth)
            cost[idx] += c
            ver[idx] &= v
        idx = np.nonzero(ver)[0]
        if idx.size:
            v, c = _ideal_infix(T, reverse, row[idx], lo[idx], hi[idx], m, run, depth)
            cost[idx] += c
            ver[idx] &= ~v
        idx = np.nonzero(ver)[0]
        if idx.size:
            v, c = _letter_search(
                T, reverse, row[idx], lo[idx], hi[idx], ("C", m), T.C_mask(m), run
            )
            cost[idx] += c
            ver[idx] &= ~v

    if memo_key is not None:
        run.memo[memo_key] = (bool(ver[0]), int(cost[0]))
    return ver, cost


def _fast_structure(T, m):
    packed = T._fast_packed.get(m) if hasattr(T, "_fast_packed") else None
    if packed is None:
        if not hasattr(T, "_fast_packed"):
            T._fast_packed = {}
        g = T.G(m)
        packed = (
            np.array([a for _, a in T.E(m)], dtype=np.int32),
            np.array([a for _, a in T.op.E(m)], dtype=np.int32),
            np.array([a for a, _, _ in g], dtype=np.int32),
            np.array([b for _, _, b in g], dtype=np.int32),
            np.ascontiguousarray(T.C_mask(m)),
        )
        T._fast_packed[m] = packed
    return packed


def _eval_main_fast(T, reverse, row, lo, hi, m, run):
    """Closed-form verdict for elements whose E/F/G sets reference only the
    identity.  Algebraically identical to the general recursion: the binary
    search for the longest prefix inside K = phi^-1(1) lands exactly before
    the first non-identity letter, and the doubling infix search finds an
    'a, identity letters, b' occurrence iff one exists inside the window.
    The numba kernel fuses the scans; this numpy body is the fallback."""
    if kernels.USE_NUMBA:
        e_fwd, e_op, g_a, g_b, c_mask = _fast_structure(T, m)
        side = run.oracle.side(reverse)
        return kernels.fast_main_verdict(
            side.sym, row, lo, hi, T.nonid_letters, e_fwd, e_op, g_a, g_b, c_mask
        )
    k = len(lo)
    n = hi - lo
    live = n > 0
    ver = np.zeros(k, dtype=bool)
    if not live.any():
        return ver

    def ideal_side_fast(tables, side, s_lo, s_hi):
        out = np.zeros(k, dtype=bool)
        pairs = tables.E(m)
        if not pairs:
            return out
        first = side.first_in_class(
            ("nonid",), tables.nonid_letters, row, s_lo, s_hi
        )
        i_star = np.minimum(first - s_lo, np.maximum(s_hi - s_lo - 1, 0))
        pos = np.where(live, s_lo + i_star, 0)
        symbols = side.sym[row, pos]
        for _r, a in pairs:
            out |= live & (symbols == a)
        return out

    side = run.oracle.side(reverse)
    oside = run.oracle.side(not reverse)
    n_side = run.oracle.n
    ver_r = ideal_side_fast(T, side, lo, hi)
    ver_l = ideal_side_fast(T.op, oside, n_side - hi, n_side - lo)
    ver = ver_l & ver_r

    idx = np.nonzero(ver)[0]
    if idx.size:
        ver_i = np.zeros(idx.size, dtype=bool)
        id_mask = ~T.nonid_letters
        for sa, _r, sb in T.G(m):
            start_from, end = side.pattern_tables(("pat", sa, sb), sa, sb, id_mask)
            p0 = start_from[row[idx], lo[idx]].astype(np.int64)
            inside = p0 < hi[idx]
            endpos = end[row[idx], np.minimum(p0, side.n - 1)]
            ver_i |= inside & (endpos < hi[idx])
        keep = idx[~ver_i]
        ver[idx] = False
        ver[keep] = True
    idx = np.nonzero(ver)[0]
    if idx.size:
        found_c = (
            side.count_in_class(("C", m), T.C_mask(m), row[idx], lo[idx], hi[idx]) > 0
        )
        ver[idx] = ~found_c
    return ver


def _letter_search(T, reverse, row, lo, hi, class_key, mask, run):
    """Search the window for a letter in the class.  Verdict: found one."""
    side = run.oracle.side(reverse)
    key = (class_key,) if class_key == "nonid" else tuple(class_key)
    length = hi - lo
    count = side.count_in_class(key, mask, row, lo, hi)
    found = count > 0
    cost = _zeros(len(lo))
    if run.model == GROVER:
        cost = grover_charge(length, count) * run.oracle.weight
    elif run.model == CLASSICAL:
        first = side.first_in_class(key, mask, row, lo, hi)
        stop = np.minimum(first + 1, hi)
        run.oracle.mark_read_windows(reverse, lo, stop)
    return found, cost


def _ideal_side(T, reverse, row, lo, hi, m, run, depth):
    """U Sigma* membership: OR over E(m) of prefix_check."""
    k = len(lo)
    ver = np.zeros(k, dtype=bool)
    cost = _zeros(k)
    for r, s in T.E(m):
        idx = np.nonzero(~ver)[0]
        if not idx.size:
            break
        v, c = _prefix_check(T, reverse, row[idx], lo[idx], hi[idx], r, s, run, depth)
        cost[idx] += c
        ver[idx] |= v
    return ver, cost


def _or_main_over(T, reverse, row, lo, hi, elements, run, depth):
    """Short-circuit OR of main over several target elements."""
    k = len(lo)
    ver = np.zeros(k, dtype=bool)
    cost = _zeros(k)
    for s in elements:
        idx = np.nonzero(~ver)[0]
        if not idx.size:
            break
        v, c = eval_main(T, reverse, row[idx], lo[idx], hi[idx], s, run, depth + 1)
        cost[idx] += c
        ver[idx] |= v
    return ver, cost


def _prefix_check(T, reverse, row, lo, hi, r, a_sym, run, depth):
    """Window in phi^-1(r) . a . Sigma* via binary search for the longest
    prefix inside the prefix-closed cover K."""
    k = len(lo)
    ver = np.zeros(k, dtype=bool)
    cost = _zeros(k)
    n = hi - lo
    live = np.nonzero(n > 0)[0]
    if not live.size:
        return ver, cost
    row_l, lo_l, n_l = row[live], lo[live], n[live]
    H = T.H(r)

    # largest i in [0, n-1] with prefix_i in K; P(0) = True (epsilon in K).
    lo_i = np.zeros(live.size, dtype=np.int64)
    hi_i = n_l - 1
    while True:
        active = np.nonzero(lo_i < hi_i)[0]
        if not active.size:
            break
        mid = (lo_i[active] + hi_i[active] + 1) // 2
        pv, pc = _or_main_over(
            T, reverse, row_l[active], lo_l[active], lo_l[active] + mid, H, run, depth
        )
        cost[live[active]] += pc
        lo_i[active] = np.where(pv, mid, lo_i[active])
        hi_i[active] = np.where(pv, hi_i[active], mid - 1)
    i_star = lo_i

    side = run.oracle.side(reverse)
    pos = lo_l + i_star
    symbols = side.read(row_l, pos)
    if run.model == GROVER:
        cost[live] += run.oracle.weight
    elif run.model == CLASSICAL:
        run.oracle.mark_read_windows(reverse, pos, pos + 1)
    match = np.nonzero(symbols == a_sym)[0]
    if match.size:
        v, c = eval_main(
            T, reverse, row_l[match], lo_l[match], lo_l[match] + i_star[match], r, run, depth + 1
        )
        cost[live[match]] += c
        ver[live[match]] = v
    return ver, cost


def _ideal_infix(T, reverse, row, lo, hi, m, run, depth):
    """Sigma* W Sigma* membership: OR over G(m) of the doubling infix search."""
    k = len(lo)
    ver = np.zeros(k, dtype=bool)
    cost = _zeros(k)
    for sa, r, sb in T.G(m):
        idx = np.nonzero(~ver)[0]
        if not idx.size:
            break
        v, c = _infix_search(T, reverse, row[idx], lo[idx], hi[idx], sa, r, sb, run, depth)
        cost[idx] += c
        ver[idx] |= v
    return ver, cost


def _infix_search(T, reverse, row, lo, hi, sa, r, sb, run, depth):
    k = len(lo)
    ver = np.zeros(k, dtype=bool)
    cost = _zeros(k)
    n = hi - lo
    pairs = T.splits(r, sa, sb)
    ell = 1
    while True:
        active = np.nonzero(~ver & (ell <= n))[0]
        if not active.size:
            break
        v, c = _infix_scan_scale(
            T, reverse, row[active], lo[active], hi[active], pairs, sa, sb, ell, run, depth
        )
        cost[active] += c
        ver[active] |= v
        ell *= 2
    return ver, cost


def _pred_eval(T, reverse, prow, plo, phi_, pos, pairs, sa, sb, ell, run, depth):
    """Evaluate the split predicate at each sub-lane cut position.

    Cut position `pos` is 1-based within the window; the left window is the
    <= ell symbols ending at the cut, the right window the <= ell symbols
    after it.  Returns per-sub-lane verdict and cost."""
    left_lo = np.maximum(plo, plo + pos - ell)
    left_hi = plo + pos
    right_lo = plo + pos
    right_hi = np.minimum(phi_, plo + pos + ell)
    kk = len(pos)
    pv = np.zeros(kk, dtype=bool)
    pc = _zeros(kk)
    n_side = run.oracle.n
    for p, q in pairs:
        idx = np.nonzero(~pv)[0]
        if not idx.size:
            break
        # suffix side: mirrored prefix_check for Sigma* a phi^-1(p)
        sv, sc = _prefix_check(
            T.op,
            not reverse,
            prow[idx],
            n_side - left_hi[idx],
            n_side - left_lo[idx],
            p,
            sa,
            run,
            depth,
        )
        pc[idx] += sc
        both = idx[np.nonzero(sv)[0]]
        if both.size:
            qv, qc = _prefix_check(
                T, reverse, prow[both], right_lo[both], right_hi[both], q, sb, run, depth
            )
            pc[both] += qc
            pv[both] = qv
    return pv, pc


def _infix_scan_scale(T, reverse, row, lo, hi, pairs, sa, sb, ell, run, depth):
    """One scale of the infix search over all active lanes."""
    k = len(lo)
    n = hi - lo
    ver = np.zeros(k, dtype=bool)
    cost = _zeros(k)

    if run.model == GROVER:
        # full bookkeeping sweep: exact t and worst predicate cost per lane
        t = _zeros(k)
        c_pred = _zeros(k)
        chunk = max(1, int(MAX_SUBLANES // max(1, k)))
        start = 1
        n_max = int(n.max())
        while start <= n_max:
            stop = min(start + chunk, n_max + 1)
            sel = np.nonzero(n >= start)[0]
            if not sel.size:
                break
            reps = np.minimum(n[sel], stop - 1) - start + 1
            parent = np.repeat(sel, reps)
            pos = start + _ragged_arange(reps)
            pv, pc = _pred_eval(
                T, reverse, row[parent], lo[parent], hi[parent], pos, pairs, sa, sb, ell, run, depth
            )
            np.add.at(t, parent, pv.astype(np.int64))
            np.maximum.at(c_pred, parent, pc)
            start = stop
        ver = t > 0
        # Scale-budget accounting: a match of length in [ell, 2*ell] marks at
        # least ~ell cut positions, so the search at this scale runs with the
        # promise t >= ell and O(sqrt(n/ell)) iterations suffice - including
        # for the failure certificate.  (Leaf searches keep the plain
        # t = 0 -> 1 rule; here it would break the sqrt(n) composition.)
        cost = grover_charge(n, np.maximum(t, np.minimum(ell, n))) * c_pred
        return ver, cost

    # classical / verdict: geometric left-to-right scan until a cut matches
    cursor = np.ones(k, dtype=np.int64)  # next 1-based position to try
    chunk = np.ones(k, dtype=np.int64)
    while True:
        active = np.nonzero(~ver & (cursor <= n))[0]
        if not active.size:
            break
        take = np.minimum(chunk[active], n[active] - cursor[active] + 1)
        # bound the round size
        total = int(take.sum())
        if total > MAX_SUBLANES:
            csum = np.cumsum(take)
            cut = int(np.searchsorted(csum, MAX_SUBLANES) + 1)
            active = active[:cut]
            take = take[:cut]
        parent = np.repeat(active, take)
        pos = np.repeat(cursor[active], take) + _ragged_arange(take)
        pv, pc = _pred_eval(
            T, reverse, row[parent], lo[parent], hi[parent], pos, pairs, sa, sb, ell, run, depth
        )
        np.logical_or.at(ver, parent, pv)
        cursor[active] += take
        chunk[active] *= 2
    return ver, cost
