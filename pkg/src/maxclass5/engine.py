"""Executable polycyclic groups of order 5^n built from (n, w, z, a).

Normal forms are vectors (e_x, e_y, c_2, ..., c_{n-1}) with entries in
0..4; multiplication is collection against precomputed tables:

  * the x-action on the abelian part sends s_j to s_j s_{j+1},
  * the y-action is the unique completion compatible with an abelian
    derived subgroup, extended from [y, s_2] by
    s_{j+1}^y = (s_j^y)^-1 (s_j^y)^x,
  * power words come bottom-up from the quintic power relation,
  * swap words TW[b][d] rewrite y^b x^d as x^d y^b TW[b][d].

Built groups are immutable; all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import ConsistencyError, DimensionError
from .gamma import get_gamma
from .kernel import BACKEND, make_kernel
from .params import PRIME, PresentationParams, validate_params
from .tables import KernelTables


@dataclass(frozen=True)
class Element:
    """Normal-form exponent vector of one group element."""

    exps: tuple

    def __post_init__(self):
        if any(not (0 <= e < PRIME) for e in self.exps):
            raise ValueError(f"entries must be in 0..4, got {self.exps}")

    @property
    def is_identity(self) -> bool:
        return not any(self.exps)

    def __str__(self):
        names = ["x", "y"] + [f"s{j}" for j in range(2, len(self.exps))]
        parts = [f"{g}^{e}" if e > 1 else g
                 for g, e in zip(names, self.exps) if e]
        return "*".join(parts) if parts else "1"


@dataclass
class ConsistencyReport:
    """Outcome of a consistency check; failures carry verbatim witnesses."""

    mode: str
    samples: int
    seed: Optional[int]
    assoc_checked: int = 0
    failures: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"mode": self.mode, "samples": self.samples, "seed": self.seed,
                "assoc_checked": self.assoc_checked, "ok": self.ok,
                "checks": self.checks, "failures": self.failures}


class PcGroup:
    """A member of the family, with exact element arithmetic.

    Use :func:`build_group`; the constructor wires tables together and
    re-verifies the defining relations, raising ConsistencyError if the
    derived data cannot satisfy them.
    """

    def __init__(self, params: PresentationParams):
        self.params = params
        self.n = params.n
        self.order = PRIME ** params.n
        self.ctx = get_gamma(params.n)
        self.kt = self._build_tables()
        self.kern = make_kernel(self.kt)
        self.consistency = None  # filled by consistency_check()
        self._verify_build()

    # -- table construction -------------------------------------------------

    def _build_tables(self) -> KernelTables:
        ctx, params = self.ctx, self.params
        d, m = ctx.d, ctx.m

        # digit vector of the relation word [y, s_2]
        avec = np.zeros(d, dtype=np.int64)
        for i, ai in enumerate(params.a):
            avec[(params.n - 1 - i) - 2] = ai

        # D maps s_{j+2} to the j-fold shift of avec; psi = id - D
        dmat = np.zeros((d, d), dtype=np.int64)
        for j in range(d):
            dmat[j, j:] = avec[: d - j]
        digits = ctx._digits
        psi1 = ctx.reduce_rows(digits - digits @ dmat).astype(np.int32)
        psi = np.empty((PRIME, m), dtype=np.int32)
        psi[0] = np.arange(m, dtype=np.int32)
        psi[1] = psi1
        for e in range(2, PRIME):
            psi[e] = psi1[psi[e - 1]]

        x5 = ctx.reduce_vec(params.w * self._basis_vec(params.n - 1))
        raw = params.z * self._basis_vec(params.n - 1)
        for pos, c in ((2, -10), (3, -10), (4, -5), (5, -1)):
            if pos <= params.n - 1:
                raw = raw + c * self._basis_vec(pos)
        y5 = ctx.reduce_vec(raw)

        phi1 = ctx.phi[1]
        e2 = ctx.basis_index(2)
        tw = np.zeros((PRIME, PRIME), dtype=np.int32)
        for b in range(1, PRIME):
            tw[b, 1] = ctx.add(int(psi1[tw[b - 1, 1]]), e2)
        for b in range(1, PRIME):
            for dd in range(2, PRIME):
                tw[b, dd] = ctx.add(int(tw[b, 1]), int(phi1[tw[b, dd - 1]]))

        return KernelTables(n=params.n, d=d, m=m, W=ctx.W, DIG=digits,
                            PHI=ctx.phi, PSI=psi, TW=tw, X5=x5, Y5=y5,
                            GNEG=ctx.neg_table, GADD=ctx.add_table)

    def _basis_vec(self, position):
        v = np.zeros(self.ctx.d, dtype=np.int64)
        v[position - 2] = 1
        return v

    # -- element plumbing -----------------------------------------------------

    def element(self, exps: Iterable[int]) -> Element:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.n:
            raise DimensionError(
                f"expected a vector of length {self.n}, got {len(exps)}")
        return Element(exps)

    def word(self, exps: Iterable[int]) -> Element:
        """Evaluate x^e0 y^e1 s_2^e2 ... with arbitrary integer exponents."""
        exps = list(exps)
        if len(exps) != self.n:
            raise DimensionError(
                f"expected a vector of length {self.n}, got {len(exps)}")
        gens = [self.gen_x(), self.gen_y()] + \
               [self.gen_s(j) for j in range(2, self.n)]
        out = self.identity()
        for g, e in zip(gens, exps):
            out = self.multiply(out, self.power(g, int(e)))
        return out

    def eid(self, u: Element) -> int:
        if len(u.exps) != self.n:
            raise DimensionError(
                f"element of length {len(u.exps)} in a group of rank {self.n}")
        e = u.exps
        return e[0] + PRIME * e[1] + 25 * int(
            sum(c * p for c, p in zip(e[2:], self.ctx.pows)))

    def from_eid(self, eid: int) -> Element:
        ex, rest = eid % PRIME, eid // PRIME
        ey, g = rest % PRIME, rest // PRIME
        digits = tuple(int(x) for x in self.ctx._digits[g])
        return Element((int(ex), int(ey)) + digits)

    def identity(self) -> Element:
        return Element((0,) * self.n)

    def gen_x(self) -> Element:
        return Element((1, 0) + (0,) * (self.n - 2))

    def gen_y(self) -> Element:
        return Element((0, 1) + (0,) * (self.n - 2))

    def gen_s(self, j: int) -> Element:
        """Generator s_j, 2 <= j <= n-1; s_j = 1 for j >= n."""
        if j >= self.n:
            return self.identity()
        exps = [0] * self.n
        exps[j] = 1
        return Element(tuple(exps))

    def generators(self) -> list:
        return [self.gen_x(), self.gen_y()] + \
               [self.gen_s(j) for j in range(2, self.n)]

    def all_ids(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- arithmetic ------------------------------------------------------------

    def multiply(self, u: Element, v: Element) -> Element:
        return self.from_eid(self.kern.mul(self.eid(u), self.eid(v)))

    def inverse(self, u: Element) -> Element:
        return self.from_eid(self.kern.inv(self.eid(u)))

    def power(self, u: Element, e: int) -> Element:
        return self.from_eid(self.kern.pow(self.eid(u), e))

    def commutator(self, u: Element, v: Element) -> Element:
        """[u, v] = u^-1 v^-1 u v."""
        ui, vi = self.eid(u), self.eid(v)
        k = self.kern
        return self.from_eid(
            k.mul(k.mul(k.mul(k.inv(ui), k.inv(vi)), ui), vi))

    def conjugate(self, u: Element, h: Element) -> Element:
        """u^h = h^-1 u h."""
        ui, hi = self.eid(u), self.eid(h)
        k = self.kern
        return self.from_eid(k.mul(k.mul(k.inv(hi), ui), hi))

    def element_order(self, u: Element) -> int:
        uid = self.eid(u)
        order = 1
        while uid:
            uid = self.kern.pow(uid, PRIME)
            order *= PRIME
        return order

    # -- verification -----------------------------------------------------------

    def _verify_build(self):
        kt, ctx = self.kt, self.ctx
        if not np.array_equal(kt.PSI[1][ctx.phi[1]], ctx.phi[1][kt.PSI[1]]):
            raise ConsistencyError(
                "x-action and derived y-action do not commute")
        if not np.array_equal(kt.PSI[1][kt.PSI[4]],
                              np.arange(ctx.m, dtype=np.int32)):
            raise ConsistencyError("derived y-action does not have order 5")
        bad = self._relation_failures()
        if bad:
            raise ConsistencyError(f"defining relation failed: {bad[0]}")

    def _relation_failures(self) -> list:
        """Re-evaluate every defining relation through the multiplier."""
        n, params = self.n, self.params
        x, y = self.gen_x(), self.gen_y()
        fails = []

        def expect(name, got, want):
            if got != want:
                fails.append(f"{name}: got {got.exps}, want {want.exps}")

        expect("s_2 = [y,x]", self.commutator(y, x), self.gen_s(2))
        for j in range(3, n + 1):
            expect(f"s_{j} = [s_{j-1},x]",
                   self.commutator(self.gen_s(j - 1), x), self.gen_s(j))
        for j in range(2, n):
            word = self.power(self.gen_s(j), 5)
            for off, c in ((1, 10), (2, 10), (3, 5), (4, 1)):
                word = self.multiply(
                    word, self.power(self.gen_s(j + off), c))
            expect(f"power relation at j={j}", word, self.identity())
        expect("x^5", self.power(x, 5),
               self.power(self.gen_s(n - 1), params.w))
        lhs = self.power(y, 5)
        for pos, c in ((2, 10), (3, 10), (4, 5), (5, 1)):
            lhs = self.multiply(lhs, self.power(self.gen_s(pos), c))
        expect("y-power relation", lhs,
               self.power(self.gen_s(n - 1), params.z))
        word = self.identity()
        for i, ai in enumerate(params.a):
            word = self.multiply(word, self.power(self.gen_s(n - 1 - i), ai))
        expect("[y, s_2]", self.commutator(y, self.gen_s(2)), word)
        return fails

    def consistency_check(self, mode: str = "sampled", samples: int = 10 ** 5,
                          seed: int = 0) -> ConsistencyReport:
        """Associativity, closure, relation and action checks.

        mode "exhaustive" runs Light's associativity test over the
        generating pair {x, y}: (a g) b = a (g b) for every a, b in G and
        generating g, which is equivalent to associativity of the whole
        table.  mode "sampled" checks `samples` seeded random triples plus
        every triple from the generator set.
        """
        rep = ConsistencyReport(mode=mode, samples=samples, seed=seed)
        kern = self.kern

        rep.checks["relations"] = True
        for msg in self._relation_failures():
            rep.checks["relations"] = False
            rep.failures.append(f"relation: {msg}")

        commute = np.array_equal(self.kt.PSI[1][self.ctx.phi[1]],
                                 self.ctx.phi[1][self.kt.PSI[1]])
        rep.checks["actions_commute"] = bool(commute)
        if not commute:
            rep.failures.append("actions: x- and y-actions do not commute")

        gen_ids = [self.eid(g) for g in self.generators()]
        if mode == "exhaustive":
            bad = kern.light_first_fail([self.eid(self.gen_x()),
                                         self.eid(self.gen_y())])
            rep.assoc_checked = 2 * self.order * self.order
            rep.checks["associativity"] = bad is None
            if bad is not None:
                g, a, b = bad
                rep.failures.append(
                    f"associativity: (a*g)*b != a*(g*b) for a={self.from_eid(a).exps} "
                    f"g={self.from_eid(g).exps} b={self.from_eid(b).exps}")
        elif mode == "sampled":
            rng = np.random.default_rng(seed)
            trip = rng.integers(0, self.order, size=(3, samples), dtype=np.int64)
            bad = kern.assoc_first_fail(trip[0], trip[1], trip[2])
            rep.assoc_checked = samples
            ga = np.array([(a, b, c) for a in gen_ids for b in gen_ids
                           for c in gen_ids], dtype=np.int64).T
            bad_gen = kern.assoc_first_fail(ga[0], ga[1], ga[2])
            rep.assoc_checked += ga.shape[1]
            rep.checks["associativity"] = bad < 0 and bad_gen < 0
            if bad >= 0:
                a, b, c = (self.from_eid(int(t[bad])).exps for t in trip)
                rep.failures.append(
                    f"associativity: (u v) w != u (v w) for u={a} v={b} w={c}")
            if bad_gen >= 0:
                a, b, c = (self.from_eid(int(t[bad_gen])).exps for t in ga)
                rep.failures.append(
                    f"associativity: generator triple u={a} v={b} w={c}")
        else:
            raise ValueError(f"unknown mode {mode!r}")

        # closure plus identity and inverse laws on a seeded sample
        rng = np.random.default_rng(0 if seed is None else seed + 1)
        count = min(samples, 2000)
        U = rng.integers(0, self.order, size=count, dtype=np.int64)
        V = rng.integers(0, self.order, size=count, dtype=np.int64)
        prod = kern.mul_batch(U, V)
        closed = bool(((prod >= 0) & (prod < self.order)).all())
        rep.checks["closure"] = closed
        if not closed:
            rep.failures.append("closure: product left the normal-form range")
        ident_ok = (np.array_equal(kern.mul_batch(U, 0), U)
                    and np.array_equal(kern.mul_batch(0, V), V))
        inv_ok = not kern.mul_batch(U, kern.inv_batch(U)).any()
        rep.checks["identity_law"] = bool(ident_ok)
        rep.checks["inverse_law"] = bool(inv_ok)
        if not ident_ok:
            rep.failures.append("identity law failed on sample")
        if not inv_ok:
            rep.failures.append("inverse law failed on sample")

        self.consistency = rep
        return rep

    # -- misc --------------------------------------------------------------------

    def descriptor(self) -> dict:
        return self.params.descriptor()

    @property
    def power_table(self) -> dict:
        """Normal form of g^5 for every polycyclic generator."""
        out = {"x": self.from_eid(25 * self.kt.X5),
               "y": self.from_eid(25 * self.kt.Y5)}
        for j in range(2, self.n):
            out[f"s{j}"] = self.from_eid(
                25 * self.ctx.reduce_vec(self.ctx.W[j - 2].copy()))
        return out

    @property
    def conj_x(self) -> dict:
        return {f"s{j}": self.from_eid(25 * int(self.ctx.phi[1][self.ctx.basis_index(j)]))
                for j in range(2, self.n)}

    @property
    def conj_y(self) -> dict:
        return {f"s{j}": self.from_eid(25 * int(self.kt.PSI[1][self.ctx.basis_index(j)]))
                for j in range(2, self.n)}

    def __repr__(self):
        return f"PcGroup{self.params} of order 5^{self.n} [{BACKEND} kernel]"


def build_group(params_or_n, w=None, z=None, a=()) -> PcGroup:
    """Build a consistency-checked group from params or raw (n, w, z, a)."""
    if isinstance(params_or_n, PresentationParams):
        params = params_or_n
    else:
        params = validate_params(params_or_n, w, z, a)
    return PcGroup(params)
