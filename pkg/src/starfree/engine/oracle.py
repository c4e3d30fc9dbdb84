"""Oracle views, cost models and the query ledger.

The input string is hidden behind window-checked accessors.  Three run modes:

* ``grover``  - simulated ideal-Grover accounting: every search primitive
  evaluates its predicate everywhere (uncharged bookkeeping), determines the
  exact number of marked items t, and charges ceil(sqrt(range/max(t,1))) times
  the worst observed predicate cost.
* ``classical`` - scans are executed left to right (in geometrically growing
  batches) and the ledger counts distinct raw positions read.
* ``verdict`` - no accounting at all; used by the bulk agreement suites.

Oracles come in two storage layouts: a single 1-D word, or a batch of
equal-length rows evaluated in lockstep.  Both expose the same vectorized
window primitives, in forward and reversed coordinates.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

GROVER = "grover"
CLASSICAL = "classical"
VERDICT = "verdict"


class CostModel(Enum):
    CLASSICAL = "classical"
    IDEAL_GROVER = "grover"


@dataclass
class QueryLedger:
    """Per-run counters: distinct raw positions read, and modeled Grover cost
    units (integers; every charge is a ceil of a square root times an integer
    predicate cost)."""

    classical_reads: int = 0
    modeled_cost: int = 0


def grover_charge(length, marked):
    """ceil(sqrt(length / max(marked, 1))); zero-length searches are free.
    A failed search (marked = 0) pays as if one item were marked."""
    length = np.asarray(length, dtype=np.int64)
    marked = np.maximum(np.asarray(marked, dtype=np.int64), 1)
    # ceil(sqrt(a/b)) for ints: float estimate, then exact fix-up.
    val = np.ceil(np.sqrt(length / marked)).astype(np.int64)
    # exact correction: smallest v with v^2 * marked >= length
    too_big = (val - 1) ** 2 * marked >= length
    val = np.where((val > 0) & too_big, val - 1, val)
    too_small = val**2 * marked < length
    val = np.where(too_small, val + 1, val)
    return np.where(length == 0, 0, val)


class _Side:
    """One direction (forward or reversed) of an oracle's storage."""

    def __init__(self, sym, n_symbols):
        # sym: (rows, n) int array; single-word oracles use rows = 1
        self.sym = sym
        self.rows, self.n = sym.shape
        self.n_symbols = n_symbols
        self._class_cum = {}
        self._class_positions = {}

    def _cum(self, key, mask):
        cum = self._class_cum.get(key)
        if cum is None:
            member = mask[self.sym]
            cum = np.zeros((self.rows, self.n + 1), dtype=np.int32)
            np.cumsum(member, axis=1, out=cum[:, 1:])
            self._class_cum[key] = cum
        return cum

    def _position_cum(self, key, member):
        """Cumulative counts for an arbitrary per-position bool matrix."""
        cum = self._class_cum.get(key)
        if cum is None:
            cum = np.zeros((self.rows, self.n + 1), dtype=np.int32)
            np.cumsum(member, axis=1, out=cum[:, 1:])
            self._class_cum[key] = cum
        return cum

    def count_in_class(self, key, mask, row, lo, hi):
        cum = self._cum(key, mask)
        return cum[row, hi] - cum[row, lo]

    def first_from_cum(self, cum, row, lo, hi):
        """Smallest position in [lo, hi) counted by `cum`; hi where none."""
        base = cum[row, lo]
        has = cum[row, hi] > base
        lo_s = np.asarray(lo, dtype=np.int64).copy()
        hi_s = np.asarray(hi, dtype=np.int64).copy()
        while True:
            active = lo_s + 1 < hi_s
            if not active.any():
                break
            mid = (lo_s + hi_s) // 2
            gt = cum[row, mid] > base
            hi_s = np.where(active & gt, mid, hi_s)
            lo_s = np.where(active & ~gt, mid, lo_s)
        first = hi_s - 1
        return np.where(has, first, hi)

    def _build_from_table(self, member):
        """nxt[row, p] = smallest q >= p with member[row, q], n where none;
        shape (rows, n+1) so p = n is a valid (empty) query."""
        n = self.n
        nxt = np.full((self.rows, n + 1), n, dtype=np.int32)
        if n:
            idx = np.where(member[:, ::-1], np.arange(n, dtype=np.int64), -1)
            runmax = np.maximum.accumulate(idx, axis=1)[:, ::-1]
            nxt[:, :n] = np.where(runmax >= 0, n - 1 - runmax, n)
        return nxt

    def _from_table(self, key, mask):
        cache_key = ("from",) + key
        nxt = self._class_positions.get(cache_key)
        if nxt is None:
            nxt = self._build_from_table(mask[self.sym])
            self._class_positions[cache_key] = nxt
        return nxt

    def first_in_class(self, key, mask, row, lo, hi):
        """Smallest position in [lo, hi) whose symbol lies in the class;
        hi where none.  One gather on a precomputed next-member table."""
        first = self._from_table(key, mask)[row, lo].astype(np.int64)
        return np.where(first < hi, first, hi)

    def pattern_tables(self, key, a_sym, b_sym, id_mask):
        """Occurrence machinery for the pattern 'a, identity letters, b'.

        Returns (start_from, end): position p starts an occurrence iff
        sym[p] == a and the next non-identity position q after p exists with
        sym[q] == b; start_from[row, p] is the first such start >= p and
        end[row, p] = q for starts (n elsewhere).
        """
        cached = self._class_positions.get(key)
        if cached is None:
            n = self.n
            nonid_from = self._from_table(("nonid",), ~id_mask)
            starts = self.sym == a_sym
            qcol = nonid_from[:, 1:].astype(np.int64) if n else np.zeros((self.rows, 0), np.int64)
            valid = starts & (qcol < n)
            if n:
                end_sym = self.sym[
                    np.arange(self.rows)[:, None], np.minimum(qcol, n - 1)
                ]
                valid &= end_sym == b_sym
            end = np.where(valid, qcol, n)
            start_from = self._build_from_table(valid)
            cached = (start_from, end)
            self._class_positions[key] = cached
        return cached

    def read(self, row, pos):
        if np.any(pos < 0) or np.any(pos >= self.n):
            raise AssertionError("oracle read outside the input")
        return self.sym[row, pos]


class Oracle:
    """Forward and reversed sides plus read accounting for one run.

    `weight` is the number of raw input positions one symbol stands for
    (the block size p on flattened components); `offset` shifts raw-position
    accounting so remainder reads line up with the original string.
    """

    def __init__(self, sym2d, n_symbols, weight=1, raw_length=None, track_reads=False):
        sym2d = np.asarray(sym2d, dtype=np.int32)
        self.fwd = _Side(sym2d, n_symbols)
        self.rev = _Side(sym2d[:, ::-1].copy(), n_symbols) if sym2d.shape[1] else _Side(sym2d, n_symbols)
        self.weight = weight
        self.raw_length = raw_length if raw_length is not None else sym2d.shape[1] * weight
        self.track_reads = track_reads
        self._diff = (
            np.zeros(self.raw_length + 1, dtype=np.int32) if track_reads else None
        )

    @property
    def n(self):
        return self.fwd.n

    def side(self, reverse):
        return self.rev if reverse else self.fwd

    def to_forward(self, reverse, lo, hi):
        """Map window coordinates of one side back to forward coordinates."""
        if not reverse:
            return lo, hi
        return self.n - hi, self.n - lo

    def mark_read_windows(self, reverse, lo, hi):
        """Record that positions [lo, hi) of the given side were read
        (classical mode, single-row oracles only).  lo/hi are arrays."""
        if not self.track_reads:
            return
        flo, fhi = self.to_forward(reverse, lo, hi)
        np.add.at(self._diff, flo * self.weight, 1)
        np.add.at(self._diff, fhi * self.weight, -1)

    def mark_read_raw(self, lo, hi):
        if not self.track_reads:
            return
        self._diff[lo] += 1
        self._diff[hi] -= 1

    def distinct_reads(self):
        if self._diff is None:
            return 0
        covered = np.cumsum(self._diff[:-1]) > 0
        return int(covered.sum())
