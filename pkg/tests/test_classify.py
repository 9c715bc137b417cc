import pytest

from maxclass5.classify import (FamilyLabel, brute_force_isomorphic,
                                classify_by_transfers, family_label,
                                standard_generators)
from maxclass5.engine import build_group
from maxclass5.errors import SizeGuard

from conftest import get_group


def test_label_text_roundtrip():
    for label in [FamilyLabel(5, (), 0, 0), FamilyLabel(6, (1,), 1, 0),
                  FamilyLabel(7, (2, 4, 1), 3, 2)]:
        assert FamilyLabel.from_text(label.text) == label
    assert FamilyLabel(6, (1,), 1, 0).text == "G_1^(6)(1,0)"
    assert FamilyLabel(5, (), 0, 0).text == "G_0^(5)(0,0)"
    with pytest.raises(ValueError):
        FamilyLabel.from_text("H_0^(5)(0,0)")


def test_standard_generators_roundtrip():
    sg = standard_generators(get_group(6, 0, 1, (1,)))
    assert (sg.w, sg.z) == (0, 1)
    assert sg.a != ()
    assert len(sg.s) == 4  # exactly n - 2 nontrivial chain terms

    sg4 = standard_generators(get_group(4, 0, 0, ()))
    assert (sg4.w, sg4.z, sg4.a) == (0, 0, ())


def test_standard_generators_observed_defect():
    sg = standard_generators(get_group(7, 0, 0, (1, 0)))
    assert sg.defect == 1
    assert sg.a == (1,)  # trailing zero collapses to the shorter tuple


def test_family_label_examples():
    assert family_label(get_group(5, 0, 0, ())).text == "G_0^(5)(0,0)"
    assert family_label(get_group(6, 0, 1, (1,))).text == "G_1^(6)(1,0)"


def test_label_roundtrips_through_build():
    for params in [(4, 2, 1, ()), (5, 0, 3, (2,)), (7, 1, 0, (1, 2)),
                   (8, 0, 2, ())]:
        G = get_group(*params)
        lab = family_label(G)
        assert (lab.w, lab.z, lab.a) == (G.params.w, G.params.z, G.params.a)


def test_classify_by_transfers_examples():
    G4 = get_group(4, 0, 0, ())
    res = classify_by_transfers(G4)
    assert FamilyLabel(4, (), 0, 0) in res.predicted
    assert "3.1" in dict(res.matched)

    G7 = get_group(7, 0, 0, ())
    res7 = classify_by_transfers(G7)
    assert res7.predicted == frozenset({FamilyLabel(7, (), 0, 0)})
    assert {pid for pid, _ in res7.matched} == {"3.2", "3.3"}

    G5w = get_group(5, 1, 0, ())
    res5 = classify_by_transfers(G5w)
    assert not res5.predicted
    assert "no transfer-triviality case matched" in res5.diagnostic


def test_prediction_contains_extracted_label_for_31_and_32():
    # the containment property, scoped to the dispatches that hold up
    for params in [(4, 0, 0, ()), (5, 0, 0, (3,)), (6, 0, 1, (1, 2)),
                   (7, 0, 0, ()), (8, 0, 0, ())]:
        G = get_group(*params)
        res = classify_by_transfers(G)
        matched = dict(res.matched)
        lab = family_label(G)
        for pid in ("3.1", "3.2"):
            if pid in matched and matched[pid]:
                assert lab in matched[pid], (params, pid)


def test_brute_force_self_isomorphism():
    G = get_group(4, 0, 0, ())
    assert brute_force_isomorphic(G, G)
    assert brute_force_isomorphic(G, build_group(4, 0, 0, ()))


def test_brute_force_distinguishes_n4_w():
    # recorded outcome: w = 1 changes the n = 4 isomorphism class
    G = get_group(4, 0, 0, ())
    H = get_group(4, 1, 0, ())
    assert brute_force_isomorphic(G, H) is False
    assert brute_force_isomorphic(H, G) is False


def test_brute_force_different_orders():
    assert not brute_force_isomorphic(get_group(4, 0, 0, ()),
                                      get_group(5, 0, 0, ()))


def test_brute_force_size_guard():
    with pytest.raises(SizeGuard):
        brute_force_isomorphic(get_group(6, 0, 0, ()),
                               get_group(6, 0, 0, ()))


def test_a_normalization_study_n5():
    # recorded outcome: all nonzero a at (n=5, z=0, w=0) give one class
    base = get_group(5, 0, 0, (1,))
    for a4 in (2, 3, 4):
        assert brute_force_isomorphic(base, get_group(5, 0, 0, (a4,)))


def test_defect_separates_classes_n5():
    # recorded outcome: defect 1 vs 0 is a real isomorphism split
    assert brute_force_isomorphic(get_group(5, 0, 0, ()),
                                  get_group(5, 0, 0, (1,))) is False


def test_brute_force_deterministic():
    runs = [brute_force_isomorphic(get_group(4, 0, 1, ()),
                                   get_group(4, 0, 2, ()))
            for _ in range(3)]
    assert len(set(runs)) == 1
