"""Precomputed monoid data the star-free algorithm consults.

One EngineTables instance per flat component and direction.  The reversed
direction (for SuffixCheck / LeftIdeal) is the same data built over the
opposite monoid (transposed multiplication table); running the forward
algorithm on the reversed string with the opposite tables is exactly the
mirrored procedure.
"""

import numpy as np

from ..errors import StructuralError
from ..monoid import is_aperiodic


class EngineTables:
    def __init__(self, ctx, _opposite=None):
        if _opposite is None and not is_aperiodic(ctx):
            raise StructuralError("the star-free engine needs an aperiodic monoid")
        self.ctx = ctx
        mono = ctx.monoid
        self.size = mono.size
        self.identity = mono.identity
        self.n_symbols = len(ctx.alphabet)
        self.letter_img = np.asarray(ctx.letter_image, dtype=np.int32)
        if _opposite is None:
            self.mul = mono.mul
        else:
            self.mul = np.ascontiguousarray(mono.mul.T)

        n = self.size
        rows = np.repeat(np.arange(n), n)
        right = np.zeros((n, n), dtype=bool)
        right[rows, self.mul.ravel()] = True
        left = np.zeros((n, n), dtype=bool)
        left[rows, self.mul.T.ravel()] = True
        two = (left.astype(np.int16) @ right.astype(np.int16)) > 0
        self.right_ideal = right
        self.left_ideal = left
        self.two_sided = two
        self.rank = n - two.sum(axis=1)

        # non-identity letter class (base case search target)
        self.nonid_letters = self.letter_img != self.identity

        self._E = {}
        self._G = {}
        self._C = {}
        self._H = {}
        self._splits = {}
        self._fast = {}

        if _opposite is not None:
            self.op = _opposite
        else:
            self.op = EngineTables(ctx, _opposite=self)

    def _rows_equal(self, mat, i, j):
        return bool((mat[i] == mat[j]).all())

    def E(self, m):
        """(r, symbol index) pairs with r.phi(a) generating the same right
        ideal as m while r's is strictly larger."""
        pairs = self._E.get(m)
        if pairs is None:
            pairs = []
            for r in range(self.size):
                if self._rows_equal(self.right_ideal, r, m):
                    continue
                for s in range(self.n_symbols):
                    ra = int(self.mul[r, self.letter_img[s]])
                    if self._rows_equal(self.right_ideal, ra, m):
                        if self.rank[r] >= self.rank[m]:
                            raise StructuralError("rank descent violated in E")
                        pairs.append((r, s))
            self._E[m] = pairs
        return pairs

    def G(self, m):
        """(symbol a, r, symbol b) triples of the W component."""
        triples = self._G.get(m)
        if triples is None:
            triples = []
            two = self.two_sided
            for sa in range(self.n_symbols):
                fa = int(self.letter_img[sa])
                for r in range(self.size):
                    ar = int(self.mul[fa, r])
                    if not two[ar, m]:
                        continue
                    for sb in range(self.n_symbols):
                        fb = int(self.letter_img[sb])
                        if not two[int(self.mul[r, fb]), m]:
                            continue
                        if two[int(self.mul[ar, fb]), m]:
                            continue
                        if self.rank[r] >= self.rank[m]:
                            raise StructuralError("rank descent violated in G")
                        triples.append((sa, r, sb))
            self._G[m] = triples
        return triples

    def C_mask(self, m):
        """Letters whose two-sided ideal misses m (the C set)."""
        mask = self._C.get(m)
        if mask is None:
            mask = ~self.two_sided[self.letter_img, m]
            self._C[m] = mask
        return mask

    def fast_ok(self, m):
        """True when every r referenced by E(m), F(m) and G(m) is the
        identity, enabling the closed-form verdict path."""
        cached = self._fast.get(m)
        if cached is None:
            cached = (
                all(r == self.identity for r, _ in self.E(m))
                and all(r == self.identity for r, _ in self.op.E(m))
                and all(r == self.identity for _, r, _ in self.G(m))
            )
            self._fast[m] = cached
        return cached

    def H(self, r):
        """{ s : r in sM }, the prefix-closed cover used by PrefixCheck."""
        hs = self._H.get(r)
        if hs is None:
            hs = [s for s in range(self.size) if self.right_ideal[s, r]]
            self._H[r] = hs
        return hs

    def splits(self, r, sa, sb):
        """Factorizations p.q = r, with the prefix/suffix-check preconditions
        (the ideal must strictly descend through the flanking letters)."""
        key = (r, sa, sb)
        pairs = self._splits.get(key)
        if pairs is None:
            p_idx, q_idx = np.nonzero(self.mul == r)
            pairs = list(zip(p_idx.tolist(), q_idx.tolist()))
            fa = int(self.letter_img[sa])
            fb = int(self.letter_img[sb])
            for p, q in pairs:
                # suffix side: M phi(a) p must differ from M p  (mirror ideal)
                ap = int(self.mul[fa, p])
                if self._rows_equal(self.left_ideal, ap, p):
                    raise StructuralError("split precondition fails on the suffix side")
                qb = int(self.mul[q, fb])
                if self._rows_equal(self.right_ideal, qb, q):
                    raise StructuralError("split precondition fails on the prefix side")
            self._splits[key] = pairs
        return pairs
