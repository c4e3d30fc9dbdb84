"""Hot numeric kernels.

Every kernel has a pure-numpy/python implementation; when numba is importable
and STARFREE_NO_NUMBA is unset, the inner loops are compiled with @njit.
Both paths compute identical results (benchmarks/bench_kernels.py compares
their speed).
"""

import os

import numpy as np

USE_NUMBA = os.environ.get("STARFREE_NO_NUMBA", "") == ""
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - exercised via the env flag instead
        USE_NUMBA = False

BACKEND = "numba" if USE_NUMBA else "numpy"


def _dfa_run_batch_py(delta, start, words):
    rows, n = words.shape
    state = np.full(rows, start, dtype=np.int32)
    for j in range(n):
        state = delta[state, words[:, j]]
    return state


def _dfa_run_ragged_py(delta, start, flat, offsets):
    rows = offsets.shape[0] - 1
    out = np.empty(rows, dtype=np.int32)
    for i in range(rows):
        q = start
        for j in range(offsets[i], offsets[i + 1]):
            q = delta[q, flat[j]]
        out[i] = q
    return out


def _prefix_products_py(mul, letter_img, word, start):
    n = word.shape[0]
    out = np.empty(n + 1, dtype=np.int32)
    acc = start
    out[0] = acc
    for i in range(n):
        acc = mul[acc, letter_img[word[i]]]
        out[i + 1] = acc
    return out


def _fast_main_verdict_py(sym, row, lo, hi, nonid, e_fwd, e_op, g_a, g_b, c_mask):
    """Reference implementation of the fused closed-form verdict (identity-
    only E/F/G sets): longest identity prefix/suffix checks, 'a id* b'
    occurrence, and C-letter search, one lane at a time."""
    k = len(lo)
    out = np.zeros(k, dtype=np.bool_)
    for j in range(k):
        l, h = lo[j], hi[j]
        r = row[j]
        if l >= h:
            continue
        p = l
        while p < h and not nonid[sym[r, p]]:
            p += 1
        istar = p if p < h else h - 1
        s0 = sym[r, istar]
        ok_r = False
        for a in e_fwd:
            if s0 == a:
                ok_r = True
        q = h - 1
        while q >= l and not nonid[sym[r, q]]:
            q -= 1
        jstar = q if q >= l else l
        s1 = sym[r, jstar]
        ok_l = False
        for a in e_op:
            if s1 == a:
                ok_l = True
        if not (ok_r and ok_l):
            continue
        bad = False
        for t in range(len(g_a)):
            a = g_a[t]
            b = g_b[t]
            active = False
            for p in range(l, h):
                s = sym[r, p]
                if active and s == b:
                    bad = True
                    break
                if nonid[s]:
                    active = s == a
            if bad:
                break
        if bad:
            continue
        found_c = False
        for p in range(l, h):
            if c_mask[sym[r, p]]:
                found_c = True
                break
        out[j] = not found_c
    return out


def _maxweight_step_py(delta, weights, bit_of_symbol):
    n_states, n_sym = delta.shape
    nxt = np.full(n_states, -1, dtype=np.int64)
    for q in range(n_states):
        w = weights[q]
        if w < 0:
            continue
        for s in range(n_sym):
            q2 = delta[q, s]
            w2 = w + bit_of_symbol[s]
            if w2 > nxt[q2]:
                nxt[q2] = w2
    return nxt


if USE_NUMBA:
    _dfa_run_batch_jit = njit(cache=True, nogil=True)(_dfa_run_batch_py)
    _dfa_run_ragged_jit = njit(cache=True, nogil=True)(_dfa_run_ragged_py)
    _prefix_products_jit = njit(cache=True, nogil=True)(_prefix_products_py)
    _maxweight_step_jit = njit(cache=True, nogil=True)(_maxweight_step_py)
    _fast_main_verdict_jit = njit(cache=True, nogil=True)(_fast_main_verdict_py)


def dfa_run_batch(delta, start, words):
    """Final DFA state for each row of `words` (2D array of symbol indices)."""
    words = np.ascontiguousarray(words, dtype=np.int32)
    if USE_NUMBA:
        return _dfa_run_batch_jit(delta, np.int32(start), words)
    return _dfa_run_batch_py(delta, start, words)


def dfa_run_ragged(delta, start, flat, offsets):
    """Final DFA states for ragged words: row i is flat[offsets[i]:offsets[i+1]]."""
    flat = np.ascontiguousarray(flat, dtype=np.int32)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    if USE_NUMBA:
        return _dfa_run_ragged_jit(delta, np.int32(start), flat, offsets)
    return _dfa_run_ragged_py(delta, start, flat, offsets)


def prefix_products(mul, letter_img, word, start):
    """prefix[i] = start · img(word[0]) · ... · img(word[i-1]), length n+1."""
    word = np.ascontiguousarray(word, dtype=np.int32)
    if USE_NUMBA:
        return _prefix_products_jit(mul, letter_img, word, np.int32(start))
    return _prefix_products_py(mul, letter_img, word, start)


def monoid_scan(mul, letter_img, word, start):
    """Product of letter images over one word, starting from `start`."""
    return int(prefix_products(mul, letter_img, word, start)[-1])


def maxweight_step(delta, weights, bit_of_symbol):
    """One column of the max-Hamming-weight DP over a DFA (-1 = unreachable)."""
    if USE_NUMBA:
        return _maxweight_step_jit(delta, weights, bit_of_symbol)
    return _maxweight_step_py(delta, weights, bit_of_symbol)


def fast_main_verdict(sym, row, lo, hi, nonid, e_fwd, e_op, g_a, g_b, c_mask):
    """Fused closed-form star-free verdict over lanes (see the py reference)."""
    if USE_NUMBA:
        return _fast_main_verdict_jit(sym, row, lo, hi, nonid, e_fwd, e_op, g_a, g_b, c_mask)
    return _fast_main_verdict_py(sym, row, lo, hi, nonid, e_fwd, e_op, g_a, g_b, c_mask)
