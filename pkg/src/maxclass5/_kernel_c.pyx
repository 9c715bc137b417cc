# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""C collection kernel; same API and bit-identical results as _kernel_py."""

import numpy as np

from .tables import KernelTables

BACKEND = "c"

DEF MAXD = 16


cdef class Kernel:
    cdef public object kt
    cdef int n, d
    cdef long long m, order, X5, Y5
    cdef long long[:, ::1] W
    cdef long long[:, ::1] DIG
    cdef int[:, ::1] PHI
    cdef int[:, ::1] PSI
    cdef int[:, ::1] TW
    cdef int[::1] GNEG
    cdef int[:, ::1] GADD
    cdef bint has_gadd

    def __init__(self, kt: KernelTables):
        self.kt = kt
        self.n = kt.n
        self.d = kt.d
        self.m = kt.m
        self.order = 25 * kt.m
        self.X5 = kt.X5
        self.Y5 = kt.Y5
        self.W = np.ascontiguousarray(kt.W, dtype=np.int64)
        self.DIG = np.ascontiguousarray(kt.DIG, dtype=np.int64)
        self.PHI = np.ascontiguousarray(kt.PHI, dtype=np.int32)
        self.PSI = np.ascontiguousarray(kt.PSI, dtype=np.int32)
        self.TW = np.ascontiguousarray(kt.TW, dtype=np.int32)
        self.GNEG = np.ascontiguousarray(kt.GNEG, dtype=np.int32)
        self.has_gadd = kt.GADD is not None
        if self.has_gadd:
            self.GADD = np.ascontiguousarray(kt.GADD, dtype=np.int32)
        else:
            self.GADD = np.zeros((1, 1), dtype=np.int32)

    cdef inline long long _reduce_pack(self, long long* buf) nogil:
        cdef int j, i
        cdef long long q, s, pw
        for j in range(self.d):
            q = buf[j] / 5
            if q:
                buf[j] -= 5 * q
                for i in range(j + 1, self.d):
                    buf[i] += q * self.W[j, i]
        s = 0
        pw = 1
        for j in range(self.d):
            s += buf[j] * pw
            pw *= 5
        return s

    cdef long long c_mul(self, long long u, long long v) nogil:
        cdef long long a, b, c, dd, e, f, g, tw, gp
        cdef long long buf[MAXD]
        cdef int j
        a = u % 5
        u = u / 5
        b = u % 5
        c = u / 5
        dd = v % 5
        v = v / 5
        e = v % 5
        f = v / 5
        g = self.PSI[e, self.PHI[dd, c]]
        tw = self.PSI[e, self.TW[b, dd]]
        if self.has_gadd:
            gp = self.GADD[self.GADD[tw, g], f]
            if b + e >= 5 and self.Y5:
                gp = self.GADD[self.Y5, gp]
            if a + dd >= 5 and self.X5:
                gp = self.GADD[self.X5, gp]
        else:
            for j in range(self.d):
                buf[j] = self.DIG[tw, j] + self.DIG[g, j] + self.DIG[f, j]
            if b + e >= 5 and self.Y5:
                for j in range(self.d):
                    buf[j] += self.DIG[self.Y5, j]
            if a + dd >= 5 and self.X5:
                for j in range(self.d):
                    buf[j] += self.DIG[self.X5, j]
            gp = self._reduce_pack(buf)
        return (a + dd) % 5 + 5 * ((b + e) % 5) + 25 * gp

    # -- scalar ops --------------------------------------------------------

    def mul(self, u, v):
        return self.c_mul(u, v)

    def inv(self, u):
        cdef long long uu = u
        cdef long long a = uu % 5, b = (uu / 5) % 5
        cdef long long de = ((5 - a) % 5) + 5 * ((5 - b) % 5)
        cdef long long t = self.c_mul(uu, de)
        return de + 25 * <long long> self.GNEG[t / 25]

    def pow(self, u, e):
        cdef long long r = 0, base
        cdef long long ee
        if e < 0:
            return self.pow(self.inv(u), -e)
        base = u
        ee = e
        while ee:
            if ee & 1:
                r = self.c_mul(r, base)
            base = self.c_mul(base, base)
            ee >>= 1
        return r

    # -- batch ops -----------------------------------------------------------

    def mul_batch(self, U, V):
        Ub, Vb = np.broadcast_arrays(np.asarray(U, dtype=np.int64),
                                     np.asarray(V, dtype=np.int64))
        shape = Ub.shape
        cdef const long long[::1] uf = np.ascontiguousarray(Ub).ravel()
        cdef const long long[::1] vf = np.ascontiguousarray(Vb).ravel()
        out = np.empty(uf.shape[0], dtype=np.int64)
        cdef long long[::1] of = out
        cdef Py_ssize_t i, size = uf.shape[0]
        with nogil:
            for i in range(size):
                of[i] = self.c_mul(uf[i], vf[i])
        return out.reshape(shape)

    def inv_batch(self, U):
        Ua = np.asarray(U, dtype=np.int64)
        cdef const long long[::1] uf = np.ascontiguousarray(Ua).ravel()
        out = np.empty(uf.shape[0], dtype=np.int64)
        cdef long long[::1] of = out
        cdef Py_ssize_t i, size = uf.shape[0]
        cdef long long a, b, de, t
        with nogil:
            for i in range(size):
                a = uf[i] % 5
                b = (uf[i] / 5) % 5
                de = ((5 - a) % 5) + 5 * ((5 - b) % 5)
                t = self.c_mul(uf[i], de)
                of[i] = de + 25 * <long long> self.GNEG[t / 25]
        return out.reshape(Ua.shape)

    def assoc_first_fail(self, A, B, C):
        cdef const long long[::1] af = np.ascontiguousarray(A, dtype=np.int64)
        cdef const long long[::1] bf = np.ascontiguousarray(B, dtype=np.int64)
        cdef const long long[::1] cf = np.ascontiguousarray(C, dtype=np.int64)
        cdef Py_ssize_t i, size = af.shape[0]
        cdef long long lhs, rhs
        cdef Py_ssize_t bad = -1
        with nogil:
            for i in range(size):
                lhs = self.c_mul(self.c_mul(af[i], bf[i]), cf[i])
                rhs = self.c_mul(af[i], self.c_mul(bf[i], cf[i]))
                if lhs != rhs:
                    bad = i
                    break
        return bad

    def light_first_fail(self, gens):
        """Exhaustive associativity via generator middles (Light's test)."""
        cdef long long g, a, b, lhs, rhs
        cdef long long order = self.order
        ag_arr = np.empty(order, dtype=np.int64)
        gb_arr = np.empty(order, dtype=np.int64)
        cdef long long[::1] ag = ag_arr
        cdef long long[::1] gb = gb_arr
        cdef long long bad_a = -1, bad_b = -1
        for gobj in gens:
            g = gobj
            with nogil:
                for a in range(order):
                    ag[a] = self.c_mul(a, g)
                    gb[a] = self.c_mul(g, a)
                for a in range(order):
                    for b in range(order):
                        lhs = self.c_mul(ag[a], b)
                        rhs = self.c_mul(a, gb[b])
                        if lhs != rhs:
                            bad_a = a
                            bad_b = b
                            break
                    if bad_a >= 0:
                        break
            if bad_a >= 0:
                return (int(g), int(bad_a), int(bad_b))
        return None


def make_kernel(kt: KernelTables) -> Kernel:
    return Kernel(kt)
