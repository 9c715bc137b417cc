"""Exhaustive parameter sweeps and machine verification of the results.

One pass over a parameter range computes, per tuple: build + consistency,
central-series shape, maximal-subgroup factor orders, transfer-triviality
fingerprint, defect and extracted label.  The proposition verifiers then
read those facts; reports are reproducible from (range, samples, seed).

The sweep parallelizes over tuples when workers > 1; results are merged
in parameter order so output is identical regardless of worker count.
The MAXCLASS5_THREADS environment variable caps the pool.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .classify import FamilyLabel, brute_force_isomorphic, standard_generators
from .engine import PcGroup, build_group
from .errors import MaxClass5Error, SweepError
from .params import PRIME, PresentationParams, iter_valid_params
from .structure import (Subgroup, defect, derived_of_generators,
                        lower_central_series, maximal_subgroups,
                        two_step_centralizer)
from .transfer import (transfer_general, transfer_kernel_image,
                       triviality_fingerprint)

#: Above this order exponent only defect-0 tuples (a = ()) are swept.
FULL_SWEEP_MAX_N = 7


def sweep_domain(n: int):
    """Valid tuples for one n; n = 8 restricts to empty a."""
    kmax = 0 if n > FULL_SWEEP_MAX_N else None
    return iter_valid_params(n, kmax=kmax)


@dataclass
class TupleFacts:
    """Everything the verifiers need to know about one built tuple."""

    n: int
    w: int
    z: int
    a: tuple
    consistency_ok: bool
    assoc_checked: int
    nilpotency_class: int
    gamma_orders: tuple
    gamma_orders_ok: bool
    type55_ok: bool
    defect: int
    gamma2_exponent: int
    h_factor_orders: tuple
    fingerprint: tuple
    obs_w: int
    obs_z: int
    obs_a: tuple
    label: str
    outside_verified_family: bool

    @property
    def params_tuple(self):
        return (self.n, self.w, self.z, self.a)

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["a"] = list(self.a)
        d["obs_a"] = list(self.obs_a)
        d["gamma_orders"] = list(self.gamma_orders)
        d["h_factor_orders"] = list(self.h_factor_orders)
        d["fingerprint"] = [bool(b) for b in self.fingerprint]
        return d


def _structural_maximal(G: PcGroup, head_ab, g2gens, gamma2: Subgroup) -> Subgroup:
    """Subgroup <head, gamma_2> from its known coset structure."""
    p, q = head_ab
    k = G.kern
    head_id = k.mul(k.pow(G.eid(G.gen_x()), p), k.pow(G.eid(G.gen_y()), q))
    ids = [gamma2.ids]
    cur = np.int64(0)
    for _ in range(PRIME - 1):
        cur = k.mul(cur, head_id)
        ids.append(k.mul_batch(cur, gamma2.ids))
    head = G.from_eid(int(head_id))
    return Subgroup(G, [head] + list(g2gens), np.concatenate(ids))


def compute_facts(params: PresentationParams, samples: int = 10 ** 5,
                  seed: int = 0) -> TupleFacts:
    """Build one tuple and measure every swept fact."""
    n = params.n
    G = build_group(params)
    mode = "exhaustive" if n == 4 else "sampled"
    rep = G.consistency_check(mode=mode, samples=samples, seed=seed)

    series = lower_central_series(G)
    gamma2 = series.term(2)
    gorders = series.orders
    gorders_ok = (series.nilpotency_class == n - 1
                  and gorders == (PRIME ** n,) + tuple(
                      PRIME ** (n - j) for j in range(2, n + 1)))

    k = G.kern
    xe, ye = G.eid(G.gen_x()), G.eid(G.gen_y())
    type55 = gamma2.order == PRIME ** (n - 2)
    for aa in range(PRIME):
        for bb in range(PRIME):
            if (aa, bb) == (0, 0):
                continue
            rep5 = k.pow(k.mul(k.pow(xe, aa), k.pow(ye, bb)), PRIME)
            if rep5 not in gamma2.idset:
                type55 = False
    g2gens = [G.gen_s(j) for j in range(2, n)]

    heads = [(0, 1)] + [(1, i - 2) for i in range(2, 7)]
    h_orders = []
    for ab in heads:
        p, q = ab
        head = G.multiply(G.power(G.gen_x(), p), G.power(G.gen_y(), q))
        D = derived_of_generators(G, [head] + g2gens)
        h_orders.append(PRIME ** (n - 1) // D.order)

    gamma4 = series.term(4)
    chi_idx = [i for i, ab in enumerate(heads)
               if all(gamma4.contains(
                   G.commutator(G.multiply(G.power(G.gen_x(), ab[0]),
                                           G.power(G.gen_y(), ab[1])), s))
                   for s in g2gens)]
    if len(chi_idx) != 1:
        raise SweepError(f"{params}: two-step centralizer not unique "
                         f"({len(chi_idx)} candidates)")
    chi2 = _structural_maximal(G, heads[chi_idx[0]], g2gens, gamma2)
    kdef = defect(G, series, chi2)

    g2exp = max(G.element_order(s) for s in g2gens) if g2gens else 1
    fp = triviality_fingerprint(G)
    sg = standard_generators(G, series, chi2)
    label = FamilyLabel(n=n, a=sg.a, z=sg.z, w=sg.w)

    return TupleFacts(
        n=n, w=params.w, z=params.z, a=params.a,
        consistency_ok=rep.ok, assoc_checked=rep.assoc_checked,
        nilpotency_class=series.nilpotency_class,
        gamma_orders=gorders, gamma_orders_ok=gorders_ok,
        type55_ok=type55, defect=kdef, gamma2_exponent=g2exp,
        h_factor_orders=tuple(h_orders), fingerprint=fp,
        obs_w=sg.w, obs_z=sg.z, obs_a=sg.a, label=label.text,
        outside_verified_family=(kdef == 3),
    )


def _facts_job(args):
    n, w, z, a, samples, seed = args
    params = PresentationParams(n=n, w=w, z=z, a=a)
    try:
        return compute_facts(params, samples=samples, seed=seed)
    except MaxClass5Error as exc:
        raise SweepError(f"{params}: {exc}") from exc


def default_workers() -> int:
    cap = os.environ.get("MAXCLASS5_THREADS")
    cpus = os.cpu_count() or 1
    if cap:
        return max(1, min(int(cap), cpus))
    return cpus


def run_sweep(ns, samples: int = 10 ** 5, seed: int = 0,
              workers: int = None) -> list:
    """Compute TupleFacts for every valid tuple with n in ns, in order."""
    jobs = []
    for n in sorted(ns):
        for p in sweep_domain(n):
            jobs.append((p.n, p.w, p.z, p.a, samples,
                         seed * 1_000_003 + len(jobs)))
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1 or len(jobs) < 4:
        return [_facts_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_facts_job, jobs, chunksize=16))


@dataclass
class PropositionReport:
    """Sweep outcome for one verified statement."""

    proposition: str
    n_range: tuple
    samples: int
    seed: int
    tuples_tested: int = 0
    violations: list = field(default_factory=list)
    per_tuple: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"proposition": self.proposition,
                "n_range": list(self.n_range),
                "samples": self.samples, "seed": self.seed,
                "tuples_tested": self.tuples_tested,
                "violations": self.violations,
                "ok": self.ok,
                "extra": self.extra,
                "per_tuple": self.per_tuple}


PROPOSITIONS = ("3.1", "3.2", "3.3", "thm2.2", "lemma2.1")

_ALIASES = {"prop31": "3.1", "prop32": "3.2", "prop33": "3.3",
            "thm22": "thm2.2", "lemma21": "lemma2.1"}


def _violation(facts: TupleFacts, reason: str) -> dict:
    return {"params": {"n": facts.n, "w": facts.w, "z": facts.z,
                       "a": list(facts.a)},
            "reason": reason,
            "observed": {"defect": facts.defect,
                         "label": facts.label,
                         "fingerprint": [bool(b) for b in facts.fingerprint],
                         "gamma2_exponent": facts.gamma2_exponent}}


def verify_proposition(proposition: str, n_range, samples: int = 10 ** 5,
                       seed: int = 0, facts: list = None,
                       workers: int = None) -> PropositionReport:
    """Sweep the range and check one statement's hypothesis/conclusion pairs.

    Violations are collected, never asserted away: a tuple that satisfies
    a hypothesis but breaks the claimed conclusion is reported verbatim.
    """
    proposition = _ALIASES.get(proposition, proposition)
    if proposition not in PROPOSITIONS:
        raise ValueError(f"unknown proposition {proposition!r}; "
                         f"pick from {PROPOSITIONS}")
    n_range = tuple(sorted(n_range))
    if facts is None:
        facts = run_sweep(n_range, samples=samples, seed=seed,
                          workers=workers)
    report = PropositionReport(proposition=proposition, n_range=n_range,
                               samples=samples, seed=seed,
                               tuples_tested=len(facts))

    for f in facts:
        if not f.consistency_ok:
            raise SweepError(f"inconsistent build in sweep: {f.params_tuple}")
        report.per_tuple.append(
            {"params": [f.n, f.w, f.z, list(f.a)],
             "fingerprint": [bool(b) for b in f.fingerprint],
             "defect": f.defect, "gamma2_exponent": f.gamma2_exponent,
             "label": f.label})

    if proposition == "3.1":
        for f in facts:
            if not (f.fingerprint[0] and f.fingerprint[1]):
                continue
            if f.n > 6:
                report.violations.append(_violation(
                    f, "hypothesis held at n > 6"))
                continue
            if f.gamma2_exponent != PRIME:
                report.violations.append(_violation(
                    f, "gamma_2 exponent is not 5"))
            want_z = 1 if f.n == 6 else 0
            in_family = (f.obs_w == 0 and f.obs_z == want_z
                         and (f.n != 4 or f.obs_a == ()))
            if not in_family:
                report.violations.append(_violation(
                    f, f"extracted label {f.label} outside the stated family"))
            elif f.n <= 5:
                G = build_group(f.n, f.w, f.z, f.a)
                H = build_group(f.n, f.obs_w, f.obs_z, f.obs_a)
                if not brute_force_isomorphic(G, H):
                    report.violations.append(_violation(
                        f, "extracted label not isomorphic to the group"))

    elif proposition == "3.2":
        for f in facts:
            if f.n < 5:
                continue
            if not (f.fingerprint[1] and any(f.fingerprint[2:6])):
                continue
            if (f.obs_w, f.obs_z) != (0, 0):
                report.violations.append(_violation(
                    f, f"extracted (w, z) = ({f.obs_w}, {f.obs_z}), not (0, 0)"))
            if f.n >= 7 and f.defect != 0:
                report.violations.append(_violation(
                    f, f"defect k = {f.defect} at n >= 7 "
                       "(two-step centralizer not abelian)"))
        if 7 in n_range:
            report.extra["kernel_image_n7"] = _kernel_image_facts_n7()

    elif proposition == "3.3":
        for f in facts:
            if sum(f.fingerprint[2:6]) < 2:
                continue
            if (f.obs_w, f.obs_z) != (0, 0):
                report.violations.append(_violation(
                    f, f"extracted (w, z) = ({f.obs_w}, {f.obs_z}), not (0, 0)"))
            if f.defect != 0:
                report.violations.append(_violation(
                    f, f"defect k = {f.defect}, not 0"))

    elif proposition == "thm2.2":
        for f in facts:
            want_h1 = PRIME ** (f.n - f.defect - 1)
            if f.h_factor_orders[0] != want_h1:
                report.violations.append(_violation(
                    f, f"|H_1/derived| = {f.h_factor_orders[0]}, "
                       f"want 5^(n-k-1) = {want_h1}"))
            if any(o != PRIME ** 2 for o in f.h_factor_orders[1:]):
                report.violations.append(_violation(
                    f, f"|H_i/derived| for i >= 2 not all 25: "
                       f"{f.h_factor_orders[1:]}"))

    elif proposition == "lemma2.1":
        for f in facts:
            count25 = sum(1 for o in f.h_factor_orders if o == PRIME ** 2)
            flag = count25 >= PRIME
            if not flag:
                report.violations.append(_violation(
                    f, f"only {count25} maximal subgroups with factor 25"))
            if flag != (f.n - f.nilpotency_class == 1):
                report.violations.append(_violation(
                    f, "criterion flag disagrees with coclass"))

    return report


def _kernel_image_facts_n7() -> dict:
    """Image and kernel shape of the chi_2 transfer on the n = 7 base tuple."""
    G = build_group(7, 0, 0, ())
    series = lower_central_series(G)
    ms = maximal_subgroups(G, series)
    chi2 = two_step_centralizer(G, series, ms)
    tmap = transfer_general(G, chi2, series.term(2))
    kernel, image = transfer_kernel_image(G, tmap)
    return {
        "image_is_gamma5": bool(image.same_as(series.term(5))),
        "kernel_matches_gamma_n_minus_4":
            bool(kernel.matches_image_of(series.term(7 - 4))),
        "kernel_order": kernel.order,
    }
