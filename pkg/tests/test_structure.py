import numpy as np
import pytest

from maxclass5.engine import build_group
from maxclass5.structure import (abelian_type, closure, defect,
                                 derived_subgroup, exponent, invariant_e,
                                 lower_central_series, maximal_subgroups,
                                 structure_report, trivial_subgroup,
                                 two_step_centralizer, whole_group)

from conftest import get_group


def test_closure_examples():
    G = get_group(5, 0, 0, ())
    assert closure(G, [G.identity()]).order == 1
    g2 = closure(G, [G.gen_s(j) for j in range(2, 5)])
    assert g2.order == 5 ** 3
    h1 = closure(G, [G.gen_y()] + [G.gen_s(j) for j in range(2, 5)])
    assert h1.order == 5 ** 4
    # enumeration oracle: exactly the ids with zero x-exponent
    want = {int(i) for i in G.all_ids() if i % 5 == 0}
    assert h1.idset == want


def test_derived_subgroup_examples():
    G = get_group(6, 1, 0, (2,))
    g2 = closure(G, [G.gen_s(j) for j in range(2, 6)])
    assert derived_subgroup(G).same_as(g2)
    assert derived_subgroup(G, g2).order == 1  # metabelian
    G5 = get_group(5, 0, 0, ())
    h1 = closure(G5, [G5.gen_y()] + [G5.gen_s(j) for j in range(2, 5)])
    assert derived_subgroup(G5, h1).order == 1  # chi_2 abelian when a = 0


def test_lower_central_series():
    G = get_group(5, 1, 1, ())
    ser = lower_central_series(G)
    assert ser.orders == (5 ** 5, 5 ** 3, 5 ** 2, 5, 1)
    assert ser.nilpotency_class == 4
    G4 = get_group(4, 2, 0, ())
    assert lower_central_series(G4).nilpotency_class == 3
    # gamma_2/gamma_3 cyclic of order 5
    for params in [(4, 0, 0, ()), (6, 0, 1, (1,)), (7, 2, 3, (1, 2))]:
        s = lower_central_series(get_group(*params))
        assert s.term(2).order // s.term(3).order == 5


@pytest.mark.parametrize("params", [(4, 0, 0, ()), (6, 2, 1, (1, 3)),
                                    (7, 0, 1, ())])
def test_gamma_orders_maximal_class(params):
    G = get_group(*params)
    ser = lower_central_series(G)
    n = G.n
    assert ser.orders == (5 ** n,) + tuple(5 ** (n - j)
                                           for j in range(2, n + 1))


def test_maximal_subgroups():
    G = get_group(6, 0, 1, (1,))
    subs = maximal_subgroups(G)
    assert len(subs) == 6
    g2 = lower_central_series(G).term(2)
    for H in subs:
        assert H.order == 5 ** 5
        assert g2.is_subset_of(H)
    assert len({H.idset for H in subs}) == 6


def test_abelian_types():
    G4 = get_group(4, 0, 0, ())
    subs = maximal_subgroups(G4)
    assert abelian_type(G4, subs[0]).orders == (5, 5, 5)
    for H in subs[1:]:
        t = abelian_type(G4, H)
        assert t.total_order == 25
    assert abelian_type(G4, whole_group(G4)).orders == (5, 5)
    assert abelian_type(G4, trivial_subgroup(G4)).orders == ()
    # a 25-order cyclic factor shows up at n = 7
    G7 = get_group(7, 0, 0, ())
    t = abelian_type(G7, maximal_subgroups(G7)[0])
    assert t.orders == (25, 25, 5, 5)
    assert t.total_order == 5 ** 6


def test_two_step_centralizer():
    for params in [(4, 0, 0, ()), (5, 1, 2, (3,)), (7, 0, 0, (1, 0, 1))]:
        G = get_group(*params)
        subs = maximal_subgroups(G)
        chi = two_step_centralizer(G)
        assert chi.same_as(subs[0])  # always <y, gamma_2> for the family
    G5 = get_group(5, 0, 0, ())
    assert derived_subgroup(G5, two_step_centralizer(G5)).order == 1


def test_defect_examples():
    assert defect(get_group(5, 0, 0, ())) == 0
    assert defect(get_group(7, 3, 2, ())) == 0
    assert defect(get_group(6, 0, 1, (1,))) == 1
    assert defect(get_group(6, 0, 0, (2, 1))) == 2
    assert defect(get_group(7, 0, 0, (1, 0, 1))) == 3
    # trailing zeros in a lower the observed defect
    assert defect(get_group(7, 0, 0, (1, 0))) == 1
    for params in [(4, 0, 0, ()), (6, 1, 1, (1,)), (7, 0, 0, (2, 4, 1))]:
        G = get_group(*params)
        assert defect(G) <= min(G.n - 4, 3)


def test_invariant_e_is_two():
    for params in [(4, 0, 0, ()), (5, 0, 0, (1,)), (7, 1, 0, (1, 1))]:
        G = get_group(*params)
        assert invariant_e(G) == 2
        ser = lower_central_series(G)
        assert (invariant_e(G) == 2) == (G.n - ser.nilpotency_class == 1)


def test_exponent_examples():
    G6 = get_group(6, 0, 0, ())
    ser = lower_central_series(G6)
    assert exponent(G6, ser.term(2)) == 5
    G7 = get_group(7, 0, 0, ())
    assert exponent(G7, lower_central_series(G7).term(2)) == 25
    assert exponent(G7, trivial_subgroup(G7)) == 1


def test_structure_report():
    G = get_group(4, 0, 0, ())
    rep = structure_report(G)
    d = rep.to_dict()
    assert d["class"] == 3 and d["coclass"] == 1
    assert d["defect_k"] == 0 and d["invariant_e"] == 2
    assert d["chi2_index"] == 1
    assert d["subgroup_types"][0] == [5, 5, 5]
    assert sum(1 for t in d["subgroup_types"]
               if t == [5, 5]) == 5
    assert d["lemma_criterion"] is True
    assert list(d) == ["n", "class", "coclass", "defect_k", "invariant_e",
                       "chi2_index", "subgroup_types", "gamma2_exponent",
                       "gamma_orders", "lemma_criterion"]


def test_report_h1_factor_order_tracks_defect():
    rep = structure_report(get_group(6, 0, 1, (1,)))
    types = rep.subgroup_types
    assert types[0].total_order == 5 ** (6 - 1 - 1)
    assert all(t.total_order == 25 for t in types[1:])


def test_kaloujnine_containments():
    G = get_group(6, 1, 2, (1,))
    ser = lower_central_series(G)
    rng = np.random.default_rng(5)
    for _ in range(40):
        j = int(rng.integers(1, 4))
        l = int(rng.integers(1, 4))
        u = G.from_eid(int(ser.term(j).ids[rng.integers(ser.term(j).order)]))
        v = G.from_eid(int(ser.term(l).ids[rng.integers(ser.term(l).order)]))
        assert ser.term(j + l).contains(G.commutator(u, v))


def test_chi2_deterministic_across_rebuilds():
    a = build_group(6, 0, 1, (1,))
    b = build_group(6, 0, 1, (1,))
    ia = next(i for i, H in enumerate(maximal_subgroups(a))
              if H.same_as(two_step_centralizer(a)))
    ib = next(i for i, H in enumerate(maximal_subgroups(b))
              if H.same_as(two_step_centralizer(b)))
    assert ia == ib


def test_defect_accepts_precomputed_inputs():
    G = get_group(6, 0, 1, (1,))
    ser = lower_central_series(G)
    chi = two_step_centralizer(G, ser)
    assert defect(G, ser, chi) == defect(G)
