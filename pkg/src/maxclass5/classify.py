"""Standard generators, family labels and transfer-based classification.

A family label G_a^(n)(z,w) is extracted from a built group by choosing
the lexicographically least generating pair (x', y') with x' outside the
two-step centralizer and y' inside it but outside the derived subgroup,
then reading the presentation exponents off the derived s'-chain.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .engine import Element, PcGroup, build_group
from .errors import SizeGuard, StructureError
from .params import PRIME, PresentationParams, iter_valid_params, validate_params
from .structure import (CentralSeries, Subgroup, derived_subgroup,
                        lower_central_series, maximal_subgroups,
                        two_step_centralizer)
from .transfer import _lex_keys, triviality_fingerprint

BRUTE_FORCE_MAX_N = 5


@dataclass(frozen=True)
class FamilyLabel:
    """Label G_a^(n)(z,w); note the (z, w) order in the text form."""

    n: int
    a: tuple
    z: int
    w: int

    @property
    def text(self) -> str:
        if not self.a:
            a_txt = "0"
        elif len(self.a) == 1:
            a_txt = str(self.a[0])
        else:
            a_txt = "(" + ",".join(str(c) for c in self.a) + ")"
        return f"G_{a_txt}^({self.n})({self.z},{self.w})"

    @classmethod
    def from_text(cls, text: str) -> "FamilyLabel":
        m = re.fullmatch(
            r"G_(?P<a>\(\d+(?:,\d+)*\)|\d+)\^\((?P<n>\d+)\)"
            r"\((?P<z>\d+),(?P<w>\d+)\)", text.strip())
        if not m:
            raise ValueError(f"not a family label: {text!r}")
        a_txt = m.group("a")
        if a_txt == "0":
            a = ()
        elif a_txt.startswith("("):
            a = tuple(int(c) for c in a_txt[1:-1].split(","))
        else:
            a = (int(a_txt),)
        return cls(n=int(m.group("n")), a=a, z=int(m.group("z")),
                   w=int(m.group("w")))

    def params(self) -> PresentationParams:
        return validate_params(self.n, self.w, self.z, self.a)

    def __str__(self):
        return self.text


@dataclass
class StandardGenerators:
    """A standard pair with its derived chain and observed exponents."""

    x: Element
    y: Element
    s: tuple          # s'_2, ..., s'_{n-1}
    w: int
    z: int
    a: tuple          # observed, deepest position first; trailing entry nonzero
    defect: int


def _dlog_central(G: PcGroup, target: Element, base: Element) -> Optional[int]:
    """e with target = base^e for a central order-5 base, else None."""
    cur = G.identity()
    for e in range(PRIME):
        if cur == target:
            return e
        cur = G.multiply(cur, base)
    return None


def _chain_and_exponents(G: PcGroup, series: CentralSeries,
                         xc: Element, yc: Element):
    """Derive the s'-chain of (xc, yc) and read (w, z, a) off it.

    Returns None when the pair does not reproduce the presentation format.
    """
    n = G.n
    chain = [G.commutator(yc, xc)]  # s'_2
    for j in range(3, n):
        chain.append(G.commutator(chain[-1], xc))
    for j, s in enumerate(chain, start=2):
        if not (series.term(j).contains(s)
                and not series.term(j + 1).contains(s)):
            return None
    if not G.commutator(chain[-1], xc).is_identity:
        return None
    top = chain[-1]  # s'_{n-1}, central of order 5

    w = _dlog_central(G, G.power(xc, PRIME), top)
    if w is None:
        return None
    lhs = G.power(yc, PRIME)
    for pos, c in ((2, 10), (3, 10), (4, 5), (5, 1)):
        if pos <= n - 1:
            lhs = G.multiply(lhs, G.power(chain[pos - 2], c))
    z = _dlog_central(G, lhs, top)
    if z is None:
        return None

    # quintic power words of the chain must match the family's carry words
    for j in range(2, n):
        word = G.identity()
        for t, c in enumerate(G.ctx.W[j - 2]):
            if c:
                word = G.multiply(word, G.power(chain[t], int(c)))
        if G.power(chain[j - 2], PRIME) != word:
            return None

    # express [y', s'_2] over the deep chain tail
    comm = G.commutator(yc, chain[0])
    coeffs = {}
    residue = comm
    for j in range(2, n):
        c = next((c for c in range(PRIME)
                  if series.term(j + 1).contains(
                      G.multiply(residue,
                                 G.power(chain[j - 2], -c)))), None)
        if c is None:
            return None
        if c:
            coeffs[j] = c
        residue = G.multiply(residue, G.power(chain[j - 2], -c)) if c else residue
    if not residue.is_identity:
        return None
    if not coeffs:
        a_obs, k_obs = (), 0
    else:
        shallowest = min(coeffs)
        k_obs = n - shallowest
        if k_obs > min(n - 4, PRIME - 2):
            return None
        a_obs = tuple(coeffs.get(n - 1 - i, 0) for i in range(k_obs))
    return StandardGenerators(x=xc, y=yc, s=tuple(chain), w=w, z=z,
                              a=a_obs, defect=k_obs)


def standard_generators(G: PcGroup, series: Optional[CentralSeries] = None,
                        chi2: Optional[Subgroup] = None) -> StandardGenerators:
    """Deterministic standard pair: lex-least eligible x', then y'."""
    series = series or lower_central_series(G)
    chi2 = chi2 or two_step_centralizer(G, series)
    gamma2 = series.term(2)
    all_ids = G.all_ids()
    order = np.argsort(_lex_keys(G, all_ids), kind="stable")
    for xid in all_ids[order]:
        if int(xid) in chi2.idset:
            continue
        xc = G.from_eid(int(xid))
        for yid in all_ids[order]:
            if int(yid) not in chi2.idset or int(yid) in gamma2.idset:
                continue
            got = _chain_and_exponents(G, series, xc, G.from_eid(int(yid)))
            if got is not None:
                return got
    raise StructureError("no generating pair reproduces the relation format")


def family_label(G: PcGroup, series: Optional[CentralSeries] = None,
                 chi2: Optional[Subgroup] = None) -> FamilyLabel:
    sg = standard_generators(G, series, chi2)
    return FamilyLabel(n=G.n, a=sg.a, z=sg.z, w=sg.w)


# -- transfer-based dispatch ---------------------------------------------------


@dataclass
class ClassifyResult:
    fingerprint: tuple
    matched: list          # (proposition id, frozenset[FamilyLabel] | None)
    predicted: frozenset   # union over matched propositions
    diagnostic: str = ""


def _valid_a_tuples(n: int) -> list:
    seen, out = set(), []
    for p in iter_valid_params(n):
        if p.a not in seen:
            seen.add(p.a)
            out.append(p.a)
    return out


def _labels_all_a(n: int, z: int, w: int) -> frozenset:
    return frozenset(FamilyLabel(n=n, a=a, z=z, w=w)
                     for a in _valid_a_tuples(n))


def classify_by_transfers(G: PcGroup,
                          fingerprint: Optional[tuple] = None) -> ClassifyResult:
    """Predicted label sets from the triviality pattern of the six transfers.

    Matches, in order: (trivial H_1 and H_2), (trivial H_2 and some H_i,
    i >= 3), (two trivial among H_3..H_6).  The prediction is the union of
    the conclusions of every matching case; an empty set with a diagnostic
    means no case matched.
    """
    fp = fingerprint if fingerprint is not None else triviality_fingerprint(G)
    n = G.n
    matched = []
    if fp[0] and fp[1]:
        if n == 4:
            labels = frozenset({FamilyLabel(4, (), 0, 0)})
        elif n == 5:
            labels = _labels_all_a(5, 0, 0)
        elif n == 6:
            labels = _labels_all_a(6, 1, 0)
        else:
            labels = frozenset()  # the case claims n <= 6; record the clash
        matched.append(("3.1", labels))
    if fp[1] and any(fp[2:6]) and n >= 5:
        labels = (_labels_all_a(n, 0, 0) if n in (5, 6)
                  else frozenset({FamilyLabel(n, (), 0, 0)}))
        matched.append(("3.2", labels))
    if sum(fp[2:6]) >= 2:
        matched.append(("3.3", frozenset({FamilyLabel(n, (), 0, 0)})))
    predicted = frozenset().union(*(s for _, s in matched)) if matched \
        else frozenset()
    diag = "" if matched else (
        f"no transfer-triviality case matched (fingerprint {fp})")
    return ClassifyResult(fingerprint=tuple(fp), matched=matched,
                          predicted=predicted, diagnostic=diag)


# -- brute-force isomorphism -----------------------------------------------------


def _word_over(G: PcGroup, elems: list, exps) -> Element:
    out = G.identity()
    for e, c in zip(elems, exps):
        c = int(c)
        if c:
            out = G.multiply(out, G.power(e, c))
    return out


def brute_force_isomorphic(G1: PcGroup, G2: PcGroup) -> bool:
    """Exhaustive generator-image search for an isomorphism G1 -> G2.

    Images (g, h) of the standard pair are enumerated over eligible
    elements of G2; a pair extends to an isomorphism iff every defining
    relation of G1's presentation holds on the derived image chain.
    Guarded to n <= 5.
    """
    if G1.order != G2.order:
        return False
    n = G1.n
    if n > BRUTE_FORCE_MAX_N:
        raise SizeGuard(f"brute force supports n <= {BRUTE_FORCE_MAX_N}")

    series2 = lower_central_series(G2)
    chi2 = two_step_centralizer(G2, series2)
    gamma2 = series2.term(2)
    if derived_subgroup(G2, gamma2).order != 1:
        raise StructureError("target group is not metabelian")

    p1 = G1.params
    ordx = G1.element_order(G1.gen_x())
    ordy = G1.element_order(G1.gen_y())

    all_ids = G2.all_ids()
    lex = np.argsort(_lex_keys(G2, all_ids), kind="stable")
    xs = [int(i) for i in all_ids[lex] if int(i) not in chi2.idset]
    ys = [int(i) for i in all_ids[lex]
          if int(i) in chi2.idset and int(i) not in gamma2.idset]
    k = G2.kern
    ord_of = {}

    def order_of(eid):
        if eid not in ord_of:
            o, t = 1, eid
            while t:
                t = k.pow(t, PRIME)
                o *= PRIME
            ord_of[eid] = o
        return ord_of[eid]

    a_vec = np.zeros(G1.ctx.d, dtype=np.int64)
    for i, ai in enumerate(p1.a):
        a_vec[(n - 1 - i) - 2] = ai

    gamma_sets = [series2.term(j).idset for j in range(1, n + 1)]

    def comm(a, b):
        return k.mul(k.mul(k.mul(k.inv(a), k.inv(b)), a), b)

    def word(chain, exps):
        out = 0
        for e, c in zip(chain, exps):
            c = int(c)
            if c:
                out = k.mul(out, k.pow(e, c))
        return out

    for gid in xs:
        if order_of(gid) != ordx:
            continue
        ginv = k.inv(gid)
        for hid in ys:
            if order_of(hid) != ordy:
                continue
            chain = [comm(hid, gid)]
            for j in range(3, n):
                chain.append(k.mul(k.mul(k.inv(chain[-1]), ginv),
                                   k.mul(chain[-1], gid)))
            ok = True
            for j, s in enumerate(chain, start=2):
                if s not in gamma_sets[j - 1] or s in gamma_sets[j]:
                    ok = False
                    break
            if not ok or comm(chain[-1], gid) != 0:
                continue
            for j in range(2, n):
                if k.pow(chain[j - 2], PRIME) != word(chain, G1.ctx.W[j - 2]):
                    ok = False
                    break
            if not ok:
                continue
            if k.pow(gid, PRIME) != k.pow(chain[-1], p1.w):
                continue
            lhs = k.pow(hid, PRIME)
            for pos, c in ((2, 10), (3, 10), (4, 5), (5, 1)):
                if pos <= n - 1:
                    lhs = k.mul(lhs, k.pow(chain[pos - 2], c))
            if lhs != k.pow(chain[-1], p1.z):
                continue
            if comm(hid, chain[0]) != word(chain, a_vec):
                continue
            return True
    return False
