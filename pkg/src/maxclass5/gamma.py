"""Exact arithmetic in the abelian subgroup generated by s_2, ..., s_{n-1}.

Elements are normal-form exponent vectors in {0..4}^(n-2), packed base-5
into a single integer index (s_2 digit least significant).  Fifth powers
carry into deeper generators via per-position carry words derived from the
power relation s_j^5 s_{j+1}^10 s_{j+2}^10 s_{j+3}^5 s_{j+4} = 1; a carry
at one position only touches strictly deeper positions, so a single
ascending reduction pass normalizes any integer vector.

Everything here depends only on n, never on (w, z, a), so one context is
cached per n and shared by every group of that order.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

P = 5

#: Largest gamma size for which the dense addition table is materialized.
DENSE_ADD_LIMIT = 5 ** 5


class GammaContext:
    """Per-n tables for the abelian group of order 5^(n-2)."""

    def __init__(self, n: int):
        self.n = n
        self.d = n - 2
        self.m = P ** self.d
        self.pows = P ** np.arange(self.d, dtype=np.int64)
        self.W = self._carry_words()
        self._digits = self._unpack(np.arange(self.m, dtype=np.int64))
        self.phi = self._phi_tables()
        self.neg_table = self._neg_table()
        if self.m <= DENSE_ADD_LIMIT:
            self.add_table = self._add_table()
        else:
            self.add_table = None

    # -- digit packing ----------------------------------------------------

    def _unpack(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self.pows) % P

    def _pack(self, digits):
        return (digits * self.pows).sum(axis=-1)

    def reduce_rows(self, digits):
        """Normalize integer digit rows in place; returns packed indices."""
        digits = np.asarray(digits, dtype=np.int64)
        for j in range(self.d):
            q = digits[..., j] // P
            if np.any(q):
                digits[..., j] -= P * q
                digits += q[..., None] * self.W[j]
        return self._pack(digits)

    def reduce_vec(self, vec):
        return int(self.reduce_rows(np.asarray(vec, dtype=np.int64)[None, :])[0])

    # -- construction -----------------------------------------------------

    def _carry_words(self):
        """W[j] = digit vector of s_{j+2}^5 (support strictly deeper than j)."""
        W = np.zeros((self.d, self.d), dtype=np.int64)
        for j in range(self.d - 1, -1, -1):
            raw = np.zeros(self.d, dtype=np.int64)
            for off, c in ((1, -10), (2, -10), (3, -5), (4, -1)):
                if j + off < self.d:
                    raw[j + off] += c
            for i in range(j + 1, self.d):
                q = raw[i] // P
                if q:
                    raw[i] -= P * q
                    raw += q * W[i]
            W[j] = raw
        return W

    def _phi_tables(self):
        """phi[e] maps the whole gamma index range through conj by x^e."""
        digits = self._digits
        img = digits.copy()
        img[:, 1:] += digits[:, :-1]
        phi1 = self.reduce_rows(img).astype(np.int32)
        phi = np.empty((P, self.m), dtype=np.int32)
        phi[0] = np.arange(self.m, dtype=np.int32)
        phi[1] = phi1
        for e in range(2, P):
            phi[e] = phi1[phi[e - 1]]
        return phi

    def _neg_table(self):
        digits = self._digits
        out = np.zeros_like(digits)
        acc = digits.copy()
        for j in range(self.d):
            r = (-acc[:, j]) % P
            out[:, j] = r
            q = (acc[:, j] + r) // P
            acc[:, j] = 0
            acc += q[:, None] * self.W[j]
        return self._pack(out).astype(np.int32)

    def _add_table(self):
        table = np.empty((self.m, self.m), dtype=np.int32)
        digits = self._digits
        chunk = max(1, (1 << 22) // self.m)
        for lo in range(0, self.m, chunk):
            hi = min(lo + chunk, self.m)
            block = digits[lo:hi, None, :] + digits[None, :, :]
            table[lo:hi] = self.reduce_rows(
                block.reshape(-1, self.d)).reshape(hi - lo, self.m)
        return table

    # -- scalar helpers (table-free; used by construction and fallback) ---

    def add(self, g, h):
        if self.add_table is not None:
            return int(self.add_table[g, h])
        return self.reduce_vec(self._digits[g] + self._digits[h])

    def neg(self, g):
        return int(self.neg_table[g])

    def add_many(self, indices):
        total = np.zeros(self.d, dtype=np.int64)
        for g in indices:
            total += self._digits[g]
        return self.reduce_vec(total)

    def basis_index(self, position: int) -> int:
        """Gamma index of the generator s_position (2 <= position <= n-1)."""
        return int(self.pows[position - 2])


@lru_cache(maxsize=None)
def get_gamma(n: int) -> GammaContext:
    return GammaContext(n)
