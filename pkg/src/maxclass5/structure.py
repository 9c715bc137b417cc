"""Subgroups, central series, abelianizations and numeric invariants.

Subgroups store their full element sets (at most 5^7 elements for the
supported range), which keeps membership, quotients and comparisons exact
and simple at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .engine import Element, PcGroup
from .errors import StructureError
from .params import PRIME


class Subgroup:
    """A subgroup given by generators plus its enumerated element set."""

    def __init__(self, group: PcGroup, generators: Iterable[Element],
                 ids: np.ndarray):
        self.group = group
        self.generators = tuple(generators)
        self.ids = np.sort(np.asarray(ids, dtype=np.int64))
        self.idset = frozenset(int(i) for i in self.ids)

    @property
    def order(self) -> int:
        return len(self.ids)

    def contains(self, u) -> bool:
        eid = u if isinstance(u, (int, np.integer)) else self.group.eid(u)
        return int(eid) in self.idset

    def elements(self):
        for i in self.ids:
            yield self.group.from_eid(int(i))

    def same_as(self, other: "Subgroup") -> bool:
        return self.idset == other.idset

    def is_subset_of(self, other: "Subgroup") -> bool:
        return self.idset <= other.idset

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"Subgroup(order={self.order}) of {self.group.params}"


@dataclass
class CentralSeries:
    """Lower central series terms, ending with the trivial subgroup."""

    terms: list  # gamma_1, gamma_2, ..., gamma_{c+1} = 1
    nilpotency_class: int

    def term(self, j: int) -> Subgroup:
        """gamma_j, with gamma_j = 1 for every j past the chain."""
        if j < 1:
            raise ValueError("series terms start at j = 1")
        if j > len(self.terms):
            return self.terms[-1]
        return self.terms[j - 1]

    @property
    def orders(self) -> tuple:
        return tuple(t.order for t in self.terms)


@dataclass(frozen=True)
class AbelianType:
    """Cyclic factor orders of a finite abelian 5-group, descending."""

    orders: tuple

    @property
    def total_order(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    def __str__(self):
        return "(" + ",".join(str(o) for o in self.orders) + ")"


# -- subgroup construction ---------------------------------------------------


def closure(G: PcGroup, gens: Iterable[Element]) -> Subgroup:
    """Smallest subgroup containing gens (breadth-first product closure)."""
    gens = list(gens)
    gen_ids = np.unique(np.array([G.eid(g) for g in gens] or [0],
                                 dtype=np.int64))
    gen_ids = gen_ids[gen_ids != 0] if len(gen_ids) > 1 else gen_ids
    known = {0}
    frontier = np.array([0], dtype=np.int64)
    ids = [0]
    while frontier.size:
        prods = G.kern.mul_batch(
            np.repeat(frontier, len(gen_ids)),
            np.tile(gen_ids, len(frontier)))
        fresh = [int(p) for p in np.unique(prods) if int(p) not in known]
        known.update(fresh)
        ids.extend(fresh)
        frontier = np.array(fresh, dtype=np.int64)
    return Subgroup(G, gens, np.array(ids, dtype=np.int64))


def trivial_subgroup(G: PcGroup) -> Subgroup:
    return Subgroup(G, [], np.array([0], dtype=np.int64))


def whole_group(G: PcGroup) -> Subgroup:
    return Subgroup(G, [G.gen_x(), G.gen_y()], G.all_ids())


def normal_closure_of(G: PcGroup, seeds: Iterable[Element]) -> Subgroup:
    """Smallest normal subgroup containing the seeds."""
    gens = [g for g in seeds if not g.is_identity]
    conj_by = [G.gen_x(), G.gen_y()]
    sub = closure(G, gens)
    while True:
        extra = []
        for g in gens:
            for h in conj_by:
                c = G.conjugate(g, h)
                if not sub.contains(c):
                    extra.append(c)
        if not extra:
            return sub
        gens.extend(extra)
        sub = closure(G, gens)


def derived_of_generators(G: PcGroup, hgens: list) -> Subgroup:
    """Commutator subgroup of the subgroup generated by hgens."""
    hgens = list(hgens) or [G.identity()]
    comms = []
    for u in hgens:
        for v in hgens:
            c = G.commutator(u, v)
            if not c.is_identity:
                comms.append(c)
    # normal closure inside the subgroup: stabilize under its generators
    gens = list(comms)
    sub = closure(G, gens)
    while True:
        extra = []
        for g in gens:
            for h in hgens:
                c = G.conjugate(g, h)
                if not sub.contains(c):
                    extra.append(c)
        if not extra:
            return sub
        gens.extend(extra)
        sub = closure(G, gens)


def derived_subgroup(G: PcGroup, H: Optional[Subgroup] = None) -> Subgroup:
    """Commutator subgroup of H (defaults to the whole group)."""
    if H is None:
        H = whole_group(G)
    return derived_of_generators(G, list(H.generators))


def lower_central_series(G: PcGroup) -> CentralSeries:
    """gamma_1 = G, gamma_{j+1} = [gamma_j, G], down to the trivial group."""
    terms = [whole_group(G)]
    ggens = [G.gen_x(), G.gen_y()]
    current_gens = ggens
    while terms[-1].order > 1:
        seeds = []
        for a in current_gens:
            for g in ggens:
                c = G.commutator(a, g)
                if not c.is_identity:
                    seeds.append(c)
        nxt = normal_closure_of(G, seeds) if seeds else trivial_subgroup(G)
        if nxt.order >= terms[-1].order:
            raise StructureError("lower central series failed to decrease")
        terms.append(nxt)
        current_gens = list(nxt.generators) or [G.identity()]
    return CentralSeries(terms=terms, nilpotency_class=len(terms) - 1)


def maximal_subgroups(G: PcGroup,
                      series: Optional[CentralSeries] = None) -> list:
    """The six index-5 subgroups H_1 = <y, gamma_2>, H_i = <x y^(i-2), gamma_2>."""
    gamma2 = (series or lower_central_series(G)).term(2)
    g2gens = [G.gen_s(j) for j in range(2, G.n)]
    subs = [closure(G, [G.gen_y()] + g2gens)]
    for i in range(2, 7):
        h = G.multiply(G.gen_x(), G.power(G.gen_y(), i - 2))
        subs.append(closure(G, [h] + g2gens))
    seen = {s.idset for s in subs}
    if len(seen) != 6:
        raise StructureError(
            f"expected six distinct maximal subgroups, got {len(seen)}")
    for s in subs:
        if s.order * PRIME != G.order or not gamma2.is_subset_of(s):
            raise StructureError("maximal subgroup of unexpected shape")
    return subs


# -- quotients and types ------------------------------------------------------


def _pow5_batch(G: PcGroup, ids: np.ndarray) -> np.ndarray:
    sq = G.kern.mul_batch(ids, ids)
    return G.kern.mul_batch(G.kern.mul_batch(sq, sq), ids)


def coset_representatives(G: PcGroup, H: Subgroup, N: Subgroup) -> np.ndarray:
    """One id per coset of N in H, each the first hit in id order."""
    if N.order == 1:
        return H.ids.copy()
    reps = []
    marked = set()
    for eid in H.ids:
        e = int(eid)
        if e in marked:
            continue
        reps.append(e)
        coset = G.kern.mul_batch(np.int64(e), N.ids)
        marked.update(int(c) for c in coset)
    return np.array(reps, dtype=np.int64)


def abelian_type(G: PcGroup, H: Subgroup) -> AbelianType:
    """Cyclic decomposition of H modulo its derived subgroup.

    The quotient is enumerated and its element-order census read off; for
    abelian 5-groups the census determines the type.
    """
    D = derived_subgroup(G, H)
    reps = coset_representatives(G, H, D)
    q = len(reps)
    if q == 1:
        return AbelianType(orders=())
    # order of each coset in the quotient: least 5^t with rep^(5^t) in D
    cur = reps.copy()
    t = np.zeros(q, dtype=np.int64)
    alive = ~np.isin(cur, D.ids)
    while alive.any():
        cur[alive] = _pow5_batch(G, cur[alive])
        t[alive] += 1
        alive = ~np.isin(cur, D.ids)
    # census -> invariant factors
    maxt = int(t.max())
    n_le = [int((t <= i).sum()) for i in range(maxt + 1)]
    dlog = [round(np.log(c) / np.log(PRIME)) for c in n_le]
    ranks = [dlog[i] - dlog[i - 1] for i in range(1, maxt + 1)]
    orders = []
    for j in range(ranks[0]):
        e = sum(1 for r in ranks if r > j)
        orders.append(PRIME ** e)
    orders.sort(reverse=True)
    total = 1
    for o in orders:
        total *= o
    if total != q:
        raise StructureError("order census does not factor the quotient")
    return AbelianType(orders=tuple(orders))


def exponent(G: PcGroup, H: Subgroup) -> int:
    """lcm of the element orders of H (a 5-power)."""
    cur = H.ids.copy()
    e = 1
    while cur.any():
        cur = _pow5_batch(G, cur)
        e *= PRIME
    return e


# -- the invariants around the two-step centralizer ---------------------------


def two_step_centralizer(G: PcGroup,
                         series: Optional[CentralSeries] = None,
                         maximals: Optional[list] = None) -> Subgroup:
    """Largest subgroup with [chi_2, gamma_2] inside gamma_4.

    For the supported family this is a single maximal subgroup; a whole-G
    answer (the n = 3 degenerate case) is handled as a guard, anything
    else raises StructureError.
    """
    series = series or lower_central_series(G)
    gamma2, gamma4 = series.term(2), series.term(4)
    g2gens = list(gamma2.generators) or [G.identity()]

    def centralizes(g: Element) -> bool:
        return all(gamma4.contains(G.commutator(g, u)) for u in g2gens)

    if centralizes(G.gen_x()) and centralizes(G.gen_y()):
        return whole_group(G)
    maximals = maximals or maximal_subgroups(G, series)
    hits = []
    for H in maximals:
        head = [g for g in H.generators if not gamma2.contains(g)]
        if all(centralizes(g) for g in head):
            hits.append(H)
    if len(hits) != 1:
        raise StructureError(
            f"two-step centralizer is not a unique maximal subgroup "
            f"({len(hits)} candidates)")
    return hits[0]


def defect(G: PcGroup, series: Optional[CentralSeries] = None,
           chi2: Optional[Subgroup] = None) -> int:
    """k with [chi_2, gamma_2] = gamma_{n-k}; k = 0 when the bracket is 1."""
    series = series or lower_central_series(G)
    chi2 = chi2 or two_step_centralizer(G, series)
    gamma2 = series.term(2)
    seeds = [G.commutator(u, v)
             for u in chi2.generators for v in gamma2.generators]
    bracket = normal_closure_of(G, seeds)
    if bracket.order == 1:
        return 0
    for j in range(2, len(series.terms) + 1):
        if bracket.same_as(series.term(j)):
            return G.n - j
    raise StructureError("[chi_2, gamma_2] is not a term of the series")


def invariant_e(G: PcGroup, series: Optional[CentralSeries] = None) -> int:
    """First j >= 3 with |gamma_j / gamma_{j+1}| <= 5 gives e = j - 1."""
    series = series or lower_central_series(G)
    for j in range(3, len(series.terms) + 2):
        ratio = series.term(j).order // series.term(j + 1).order
        if 1 <= ratio <= PRIME:
            return j - 1
    raise StructureError("no small central factor found")


@dataclass
class StructureReport:
    n: int
    nilpotency_class: int
    coclass: int
    defect_k: int
    invariant_e: int
    chi2_index: int
    subgroup_types: list
    gamma2_exponent: int
    gamma_orders: tuple
    lemma_flag: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "class": self.nilpotency_class,
            "coclass": self.coclass,
            "defect_k": self.defect_k,
            "invariant_e": self.invariant_e,
            "chi2_index": self.chi2_index,
            "subgroup_types": [list(t.orders) for t in self.subgroup_types],
            "gamma2_exponent": self.gamma2_exponent,
            "gamma_orders": list(self.gamma_orders),
            "lemma_criterion": self.lemma_flag,
        }


def structure_report(G: PcGroup) -> StructureReport:
    """Aggregate invariants plus the order-25 maximal-subgroup criterion."""
    series = lower_central_series(G)
    maximals = maximal_subgroups(G, series)
    chi2 = two_step_centralizer(G, series, maximals)
    chi2_index = next(i + 1 for i, H in enumerate(maximals)
                      if H.same_as(chi2))
    types = [abelian_type(G, H) for H in maximals]
    count25 = sum(1 for t in types if t.total_order == PRIME ** 2)
    flag = count25 >= PRIME
    cc = G.n - series.nilpotency_class
    if flag != (cc == 1):
        raise StructureError(
            "maximal-class criterion disagrees with coclass")
    return StructureReport(
        n=G.n,
        nilpotency_class=series.nilpotency_class,
        coclass=cc,
        defect_k=defect(G, series, chi2),
        invariant_e=invariant_e(G, series),
        chi2_index=chi2_index,
        subgroup_types=types,
        gamma2_exponent=exponent(G, series.term(2)),
        gamma_orders=series.orders,
        lemma_flag=flag,
    )
