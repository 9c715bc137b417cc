"""Pure-Python collection kernel (numpy-vectorized batch paths).

Mirrors the API of the C extension `_kernel_c`; results are identical.
Scalar calls are an order of magnitude slower than the extension, batch
calls are within a small factor.
"""

from __future__ import annotations

import numpy as np

from .tables import KernelTables

BACKEND = "python"


class Kernel:
    def __init__(self, kt: KernelTables):
        self.kt = kt
        self._id = np.arange(kt.m, dtype=np.int64)

    # -- gamma helpers -----------------------------------------------------

    def _gadd_digits(self, digit_sum):
        """Reduce integer digit rows and pack to gamma indices."""
        kt = self.kt
        for j in range(kt.d):
            q = digit_sum[..., j] // 5
            if np.any(q):
                digit_sum[..., j] -= 5 * q
                digit_sum += q[..., None] * kt.W[j]
        return digit_sum @ (5 ** np.arange(kt.d, dtype=np.int64))

    def _gadd3(self, g1, g2, g3, extra=None):
        """g1 + g2 + g3 (+ optional per-row extra) over gamma indices."""
        kt = self.kt
        if kt.GADD is not None:
            out = kt.GADD[kt.GADD[g1, g2], g3]
            if extra is not None:
                out = kt.GADD[out, extra]
            return out.astype(np.int64)
        total = kt.DIG[g1] + kt.DIG[g2] + kt.DIG[g3]
        if extra is not None:
            total = total + kt.DIG[extra]
        return self._gadd_digits(total)

    # -- scalar ops ---------------------------------------------------------

    def mul(self, u: int, v: int) -> int:
        return int(self.mul_batch(np.int64([u]), np.int64([v]))[0])

    def inv(self, u: int) -> int:
        kt = self.kt
        a, b = u % 5, (u // 5) % 5
        dd, ee = (-a) % 5, (-b) % 5
        t = self.mul(u, dd + 5 * ee)
        return dd + 5 * ee + 25 * int(kt.GNEG[t // 25])

    def pow(self, u: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(u), -e)
        r, base = 0, u
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    # -- batch ops ----------------------------------------------------------

    def mul_batch(self, U, V):
        """Componentwise product of packed-id arrays (broadcast ok)."""
        kt = self.kt
        U, V = np.broadcast_arrays(np.asarray(U, dtype=np.int64),
                                   np.asarray(V, dtype=np.int64))
        a, b, c = U % 5, (U // 5) % 5, U // 25
        dd, ee, f = V % 5, (V // 5) % 5, V // 25
        g = kt.PSI[ee, kt.PHI[dd, c]].astype(np.int64)
        tw = kt.PSI[ee, kt.TW[b, dd]].astype(np.int64)
        ycarry = (b + ee) >= 5
        xcarry = (a + dd) >= 5
        if kt.GADD is not None:
            gp = kt.GADD[kt.GADD[tw, g], f].astype(np.int64)
            if kt.Y5 and ycarry.any():
                gp = np.where(ycarry, kt.GADD[kt.Y5, gp], gp)
            if kt.X5 and xcarry.any():
                gp = np.where(xcarry, kt.GADD[kt.X5, gp], gp)
        else:
            total = kt.DIG[tw] + kt.DIG[g] + kt.DIG[f]
            if kt.Y5:
                total += ycarry[..., None] * kt.DIG[kt.Y5]
            if kt.X5:
                total += xcarry[..., None] * kt.DIG[kt.X5]
            gp = self._gadd_digits(total)
        return (a + dd) % 5 + 5 * ((b + ee) % 5) + 25 * gp

    def inv_batch(self, U):
        U = np.asarray(U, dtype=np.int64)
        a, b = U % 5, (U // 5) % 5
        de = (-a) % 5 + 5 * ((-b) % 5)
        t = self.mul_batch(U, de)
        return de + 25 * self.kt.GNEG[t // 25].astype(np.int64)

    def assoc_first_fail(self, A, B, C) -> int:
        """Index of the first triple with (ab)c != a(bc), or -1."""
        lhs = self.mul_batch(self.mul_batch(A, B), C)
        rhs = self.mul_batch(A, self.mul_batch(B, C))
        bad = np.nonzero(lhs != rhs)[0]
        return int(bad[0]) if bad.size else -1

    def light_first_fail(self, gens):
        """Exhaustive associativity via generator middles (Light's test).

        Checks (a*g)*b == a*(g*b) for every a, b in G and g in gens, which
        is equivalent to full associativity of the multiplication when the
        gens generate.  Returns (g, a, b) for the first failure, else None.
        """
        order = self.kt.order
        all_ids = np.arange(order, dtype=np.int64)
        chunk = max(1, (1 << 22) // order)
        for g in gens:
            ag = self.mul_batch(all_ids, g)
            gb = self.mul_batch(g, all_ids)
            for lo in range(0, order, chunk):
                hi = min(lo + chunk, order)
                lhs = self.mul_batch(ag[lo:hi, None], all_ids[None, :])
                rhs = self.mul_batch(all_ids[lo:hi, None], gb[None, :])
                bad = np.nonzero(lhs != rhs)
                if bad[0].size:
                    return (int(g), int(lo + bad[0][0]), int(bad[1][0]))
        return None


def make_kernel(kt: KernelTables) -> Kernel:
    return Kernel(kt)
