import numpy as np
import pytest

from maxclass5.errors import (BadGenerator, CosetIndexError,
                              UnsupportedQuotient)
from maxclass5.structure import (closure, lower_central_series,
                                 maximal_subgroups, whole_group)
from maxclass5.transfer import (coset_reps, is_trivial, transfer_cyclic,
                                transfer_general, transfer_kernel_image,
                                triviality_fingerprint)

from conftest import get_group


def _setup(params):
    G = get_group(*params)
    ser = lower_central_series(G)
    return G, ser, ser.term(2), maximal_subgroups(G, ser)


def test_coset_reps_examples():
    G, ser, g2, subs = _setup((6, 2, 1, (1,)))
    assert [str(r) for r in coset_reps(G, subs[1], g2)] == \
        ["1", "x", "x^2", "x^3", "x^4"]
    assert [str(r) for r in coset_reps(G, subs[0], g2)] == \
        ["1", "y", "y^2", "y^3", "y^4"]


def test_coset_reps_partition_oracle():
    G, ser, g2, subs = _setup((5, 0, 1, ()))
    reps = coset_reps(G, whole_group(G), subs[0])
    assert len(reps) == 5
    seen = set()
    for r in reps:
        coset = frozenset(
            int(c) for c in G.kern.mul_batch(np.int64(G.eid(r)), subs[0].ids))
        assert coset not in seen
        seen.add(coset)
    assert len(frozenset().union(*seen)) == G.order


def test_coset_reps_errors():
    G, ser, g2, subs = _setup((5, 0, 0, ()))
    other = closure(G, [G.gen_x()])
    with pytest.raises(CosetIndexError):
        coset_reps(G, subs[0], other)  # not contained
    g3 = ser.term(3)
    with pytest.raises(UnsupportedQuotient):
        transfer_general(G, subs[0], g3)  # index 25


def test_transfer_images_examples():
    G, ser, g2, subs = _setup((6, 2, 1, (1,)))
    T = transfer_general(G, subs[1], g2)
    head_img = [img for g, img in T.images.items() if not g2.contains(g)]
    assert head_img[0] == G.power(G.gen_s(5), 2)  # x -> s_{n-1}^w
    assert all(img.is_identity for g, img in T.images.items()
               if g2.contains(g))

    G601, ser601, g2601, subs601 = _setup((6, 0, 1, ()))
    T1 = transfer_general(G601, subs601[0], g2601)
    assert is_trivial(T1)  # y -> y^5 = 1 when z = 1 at n = 6


def test_triviality_iff_w_zero_for_h2():
    for w in range(5):
        G, ser, g2, subs = _setup((5, w, 3, (2,)))
        assert is_trivial(transfer_general(G, subs[1], g2)) == (w == 0)


def test_trivial_transfer_example_n4():
    G, ser, g2, subs = _setup((4, 0, 0, ()))
    assert is_trivial(transfer_general(G, subs[0], g2))


def test_cyclic_equals_general_on_all_six():
    for params in [(5, 0, 0, ()), (6, 1, 1, (1,)), (7, 0, 2, (1,))]:
        G, ser, g2, subs = _setup(params)
        for H in subs:
            head = next(g for g in H.generators if not g2.contains(g))
            a = transfer_general(G, H, g2)
            b = transfer_cyclic(G, H, g2, head)
            assert {g: i for g, i in a.images.items()} == \
                {g: i for g, i in b.images.items()}


def test_cyclic_formulas_literal():
    G, ser, g2, subs = _setup((6, 1, 0, ()))
    H = subs[1]
    head = next(g for g in H.generators if not g2.contains(g))
    T = transfer_cyclic(G, H, g2, head)
    assert T.images[head] == G.power(head, 5)
    s3 = G.gen_s(3)
    norm = s3
    t = s3
    for _ in range(4):
        t = G.conjugate(t, head)
        norm = G.multiply(norm, t)
    assert T.images[s3] == norm


def test_cyclic_bad_generator():
    G, ser, g2, subs = _setup((5, 0, 0, ()))
    with pytest.raises(BadGenerator):
        transfer_cyclic(G, subs[0], g2, G.gen_s(2))


def test_representative_independence():
    rng = np.random.default_rng(17)
    for params in [(5, 1, 2, (1,)), (6, 0, 1, (2, 3))]:
        G, ser, g2, subs = _setup(params)
        for H in subs[:3]:
            base = transfer_general(G, H, g2)
            head = next(g for g in H.generators if not g2.contains(g))
            for _ in range(10):
                reps = [G.multiply(G.power(head, i),
                                   G.from_eid(int(g2.ids[rng.integers(g2.order)])))
                        for i in range(5)]
                again = transfer_general(G, H, g2, reps=reps)
                assert again.images == base.images


def test_homomorphism_property_on_abelianization():
    rng = np.random.default_rng(23)
    for params in [(5, 0, 0, (1,)), (6, 1, 1, ())]:
        G, ser, g2, subs = _setup(params)
        H = subs[0]
        T = transfer_general(G, H, g2)
        for _ in range(1000):
            u = G.from_eid(int(H.ids[rng.integers(H.order)]))
            v = G.from_eid(int(H.ids[rng.integers(H.order)]))
            lhs = T.evaluate(G.multiply(u, v))
            rhs = G.multiply(T.evaluate(u), T.evaluate(v))
            assert lhs == rhs


def test_kernel_image_facts_n7():
    G, ser, g2, subs = _setup((7, 0, 0, ()))
    T = transfer_general(G, subs[0], g2)
    kernel, image = transfer_kernel_image(G, T)
    assert image.same_as(ser.term(5))
    assert kernel.matches_image_of(ser.term(3))
    assert kernel.order == 5 ** 4


def test_kernel_of_trivial_map_is_whole_domain():
    G, ser, g2, subs = _setup((4, 0, 0, ()))
    T = transfer_general(G, subs[1], g2)
    assert is_trivial(T)
    kernel, image = transfer_kernel_image(G, T)
    assert image.order == 1
    assert kernel.order == 25  # |H_2 / derived(H_2)|


def test_fingerprint_matches_generic_route():
    for params in [(4, 0, 0, ()), (5, 0, 0, (1,)), (6, 0, 1, (1,)),
                   (7, 0, 0, ()), (7, 0, 4, (1, 0, 1)), (8, 0, 0, ())]:
        G, ser, g2, subs = _setup(params)
        fp = triviality_fingerprint(G)
        generic = tuple(is_trivial(transfer_general(G, H, g2)) for H in subs)
        assert fp == generic, params


def test_group_level_transfer_is_exposed():
    # the G -> H_i map from the transfer diagram: computable, unvalidated
    G, ser, g2, subs = _setup((5, 2, 0, ()))
    T = transfer_general(G, whole_group(G), subs[2])
    assert set(T.images) == {G.gen_x(), G.gen_y()}
    for img in T.images.values():
        assert subs[2].contains(img)
