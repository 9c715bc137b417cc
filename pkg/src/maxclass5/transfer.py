"""Transfer homomorphisms between a subgroup and a normal subgroup of it.

Both routes of the index-5 transfer are implemented: the general
coset-representative definition and the cyclic shortcut (norm formula for
elements of the kernel subgroup, fifth power for the complement
generator).  They are compared against each other in the tests; neither
is derived from the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .engine import Element, PcGroup
from .errors import BadGenerator, CosetIndexError, UnsupportedQuotient
from .structure import Subgroup, coset_representatives, derived_subgroup

INDEX = 5


def _lex_keys(G: PcGroup, ids: np.ndarray) -> np.ndarray:
    """Sort key: lexicographic on (e_x, e_y, c_2, ..., c_{n-1})."""
    ids = np.asarray(ids, dtype=np.int64)
    ex, rest = ids % 5, ids // 5
    ey, g = rest % 5, rest // 5
    d = G.ctx.d
    rev = 5 ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return (ex * 5 ** (d + 1) + ey * 5 ** d
            + G.ctx._digits[g] @ rev)


def _check_normal_in(G: PcGroup, source: Subgroup, N: Subgroup):
    if not N.is_subset_of(source):
        raise CosetIndexError("subgroup is not contained in the source")
    for g in source.generators:
        for u in N.generators:
            if not N.contains(G.conjugate(u, g)):
                raise CosetIndexError("subgroup is not normal in the source")


def coset_reps(G: PcGroup, source: Subgroup, N: Subgroup) -> list:
    """Representative system of source/N, lex-least element per coset."""
    _check_normal_in(G, source, N)
    order = np.argsort(_lex_keys(G, source.ids), kind="stable")
    sorted_ids = source.ids[order]
    reps, marked = [], set()
    for eid in sorted_ids:
        e = int(eid)
        if e in marked:
            continue
        reps.append(e)
        marked.update(int(c) for c in G.kern.mul_batch(np.int64(e), N.ids))
    return [G.from_eid(e) for e in reps]


def _canonical_mod(G: PcGroup, eid: int, D: Subgroup) -> int:
    """Lex-least representative of the coset eid * D."""
    if D.order == 1:
        return eid
    coset = G.kern.mul_batch(np.int64(eid), D.ids)
    return int(coset[np.argmin(_lex_keys(G, coset))])


@dataclass
class TransferMap:
    """Transfer from source/derived(source) to N/derived(N).

    Generator images are stored as elements of N, canonical modulo
    derived(N) (exact elements whenever N is abelian).
    """

    source: Subgroup
    target: Subgroup
    target_derived: Subgroup
    images: dict = field(default_factory=dict)  # Element -> Element
    rep_ids: tuple = ()

    @property
    def trivial(self) -> bool:
        return all(img.is_identity for img in self.images.values())

    def evaluate(self, g: Element) -> Element:
        """Image of an arbitrary source element, from the definition."""
        G = self.source.group
        return G.from_eid(_transfer_image(
            G, self.target, self.target_derived, list(self.rep_ids),
            G.eid(g)))

    def images_json(self) -> dict:
        return {str(g): list(img.exps) for g, img in self.images.items()}


def _transfer_image(G: PcGroup, N: Subgroup, ND: Subgroup, rep_ids: list,
                    gid: int) -> int:
    """Product over the representative system, reduced mod derived(N)."""
    k = G.kern
    if gid in N.idset:
        acc = 0
        for r in rep_ids:
            acc = k.mul(acc, k.mul(k.mul(k.inv(r), gid), r))
    else:
        f = 1
        power = gid
        while power not in N.idset:
            power = k.mul(power, gid)
            f += 1
            if f > INDEX:
                raise UnsupportedQuotient(
                    "generator's coset order exceeds the quotient")
        r = rep_ids[0]
        acc = k.mul(k.mul(k.inv(r), power), r)
    return _canonical_mod(G, acc, ND)


def transfer_general(G: PcGroup, source: Subgroup, N: Subgroup,
                     reps: Optional[list] = None) -> TransferMap:
    """Transfer by the coset-representative definition.

    For each source generator the coset order f and r = 5/f orbit
    representatives enter the defining product.  Only quotients cyclic of
    order 5 are supported.
    """
    _check_normal_in(G, source, N)
    if source.order != INDEX * N.order:
        raise UnsupportedQuotient(
            f"source/N has order {source.order // N.order}, need {INDEX}")
    if reps is None:
        reps = coset_reps(G, source, N)
    if len(reps) != INDEX:
        raise UnsupportedQuotient(f"need {INDEX} representatives")
    rep_ids = [G.eid(r) for r in reps]
    ND = derived_subgroup(G, N)
    tmap = TransferMap(source=source, target=N, target_derived=ND,
                       rep_ids=tuple(rep_ids))
    for g in source.generators:
        tmap.images[g] = G.from_eid(
            _transfer_image(G, N, ND, rep_ids, G.eid(g)))
    return tmap


def transfer_cyclic(G: PcGroup, source: Subgroup, N: Subgroup,
                    h: Element) -> TransferMap:
    """Transfer via the cyclic index-5 shortcut with complement generator h.

    Elements of N map to their norm g * g^h * ... * g^(h^4); h maps to
    h^5.  Agrees with transfer_general wherever both apply.
    """
    _check_normal_in(G, source, N)
    if source.order != INDEX * N.order:
        raise UnsupportedQuotient(
            f"source/N has order {source.order // N.order}, need {INDEX}")
    hid = G.eid(h)
    if hid in N.idset:
        raise BadGenerator("complement generator lies in the subgroup")
    if hid not in source.idset:
        raise BadGenerator("complement generator outside the source")
    k = G.kern
    ND = derived_subgroup(G, N)
    tmap = TransferMap(source=source, target=N, target_derived=ND,
                       rep_ids=tuple(k.pow(hid, i) for i in range(INDEX)))
    for g in source.generators:
        gid = G.eid(g)
        if gid in N.idset:
            acc, t = gid, gid
            for _ in range(INDEX - 1):
                t = k.mul(k.mul(k.inv(hid), t), hid)
                acc = k.mul(acc, t)
        else:
            acc = k.pow(gid, INDEX)
        tmap.images[g] = G.from_eid(_canonical_mod(G, acc, ND))
    return tmap


def is_trivial(tmap: TransferMap) -> bool:
    """True iff every generator image is the identity coset."""
    return tmap.trivial


@dataclass
class AbelianizedKernel:
    """Kernel of a transfer, as a subset of source/derived(source)."""

    source: Subgroup
    rep_map: dict        # eid -> canonical coset rep (id order)
    reps: frozenset      # canonical reps of kernel cosets

    @property
    def order(self) -> int:
        return len(self.reps)

    def quotient_image_of(self, sub: Subgroup) -> frozenset:
        """Canonical reps of the cosets met by a subgroup of the source."""
        return frozenset(self.rep_map[int(u)] for u in sub.ids)

    def matches_image_of(self, sub: Subgroup) -> bool:
        return self.quotient_image_of(sub) == self.reps


def transfer_kernel_image(G: PcGroup, tmap: TransferMap):
    """Kernel (in the abelianized source) and image (subgroup of N)."""
    source, N, ND = tmap.source, tmap.target, tmap.target_derived
    DS = derived_subgroup(G, source)
    reps = coset_representatives(G, source, DS)
    rep_map = {}
    for r in reps:
        for c in G.kern.mul_batch(np.int64(r), DS.ids):
            rep_map[int(c)] = int(r)
    kernel_reps = []
    image_ids = set()
    rep_ids = list(tmap.rep_ids)
    for r in reps:
        img = _transfer_image(G, N, ND, rep_ids, int(r))
        image_ids.add(img)
        if img == 0:
            kernel_reps.append(int(r))
    from .structure import closure  # local import to avoid cycle at module load
    image = closure(G, [G.from_eid(i) for i in sorted(image_ids)])
    kernel = AbelianizedKernel(source=source, rep_map=rep_map,
                               reps=frozenset(kernel_reps))
    return kernel, image


def triviality_fingerprint(G: PcGroup) -> tuple:
    """Triviality of the six transfers H_i -> gamma_2, computed directly.

    H_1 = <y, gamma_2>, H_i = <x y^(i-2), gamma_2>.  The transfer of a
    gamma_2 generator is its norm under conjugation by the head element;
    the head maps to its fifth power.  Cross-checked against the generic
    route in the test suite.
    """
    k = G.kern
    xid, yid = G.eid(G.gen_x()), G.eid(G.gen_y())
    out = []
    for i in range(1, 7):
        hid = yid if i == 1 else k.mul(xid, k.pow(yid, i - 2))
        trivial = k.pow(hid, INDEX) == 0
        if trivial:
            hinv = k.inv(hid)
            for j in range(2, G.n):
                sid = G.eid(G.gen_s(j))
                acc, t = sid, sid
                for _ in range(INDEX - 1):
                    t = k.mul(k.mul(hinv, t), hid)
                    acc = k.mul(acc, t)
                if acc != 0:
                    trivial = False
                    break
        out.append(trivial)
    return tuple(out)
