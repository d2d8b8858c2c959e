import pytest
from hypothesis import given, strategies as st

from citor import INF, GradedPresentation, RingSpec, betti_sequence, change_of_rings_check
from citor import eisenbud_operators, ext, kirby_check, operator_action_on_tor, tor
from citor.pairs import (BettiRecord, BettiSequence, _rank, betti_from_homology,
                         operators_commute, tor_symmetry, two_presentation_check)
from citor.resolution import HorizonError, resolve

NODE = RingSpec.build(["x", "y"], ["x*y"])
CI2 = RingSpec.build(["x", "y"], ["x^2", "y^2"])
cyc = GradedPresentation.cyclic
Rx, Ry = cyc(NODE, ["x"]), cyc(NODE, ["y"])
k = GradedPresentation.residue_field(NODE)
R = GradedPresentation.free_module(NODE)
kc = GradedPresentation.residue_field(CI2)


def test_node_tor_lengths():
    assert tor(Rx, Ry, 10).lengths() == [1, 0] * 5 + [1]
    assert tor(Rx, Rx, 8).lengths() == [INF] + [1, 0] * 4


def test_free_first_argument():
    assert tor(R, Ry, 4).lengths()[1:] == [0, 0, 0, 0]
    assert tor(R, Ry, 0)[0].presentation.hilbert.numerator == Ry.hilbert.numerator
    assert ext(R, Ry, 4).lengths()[1:] == [0, 0, 0, 0]


def test_node_ext_lengths():
    assert ext(Rx, Ry, 7).lengths() == [0, 1] * 4


def test_codim_two_ext():
    assert ext(kc, kc, 6).lengths() == [i + 1 for i in range(7)]


def test_betti_sequences():
    B = betti_sequence(Rx, Ry, 8)
    assert B.betas == [1, 0] * 4 + [1] and B.finite_length_index == 0
    B = betti_sequence(Rx, Rx, 8)
    assert B.betas == [0] + [1, 0] * 4 and B.finite_length_index == 1
    assert betti_sequence(k, k, 6).betas == [1, 2, 2, 2, 2, 2, 2]
    assert betti_sequence(kc, kc, 8).betas == [i + 1 for i in range(9)]


def test_finite_length_index_needs_two_finite_spots():
    rec = lambda i, L: BettiRecord(i, 0 if L is not INF else 1, L, 0 if L is INF else L, 1)
    B = BettiSequence([rec(0, INF), rec(1, INF), rec(2, 0)], 2)
    assert B.finite_length_index is INF
    B = BettiSequence([rec(0, INF), rec(1, 1), rec(2, 0)], 2)
    assert B.finite_length_index == 1


def test_tor_needs_resolution_reach():
    res = resolve(Rx, 2)
    with pytest.raises(HorizonError):
        tor(Rx, Ry, 4, res)


def test_operator_is_isomorphism_on_node_tail():
    data = tor(Rx, Ry, 8)
    act = operator_action_on_tor(eisenbud_operators(data.resolution), data)
    F = NODE.field
    seen = 0
    for (j, i, t), mat in act.maps.items():
        if i >= 1 and mat and mat[0]:
            assert len(mat) == len(mat[0]) == _rank(mat, F)
            seen += 1
    assert seen >= 3


def test_operators_commute_codim_two():
    data = tor(kc, kc, 6)
    act = operator_action_on_tor(eisenbud_operators(data.resolution), data)
    assert operators_commute(act, CI2)
    assert two_presentation_check(kc, kc, 5)


def test_kirby_node():
    d = tor(Rx, Ry, 8)
    rep = kirby_check(betti_from_homology(d), d, eisenbud_operators(d.resolution))
    assert rep.applicable and rep.passed and rep.onset == 0
    d = tor(Rx, Rx, 8)
    rep = kirby_check(betti_from_homology(d), d, eisenbud_operators(d.resolution))
    assert rep.passed and rep.onset == 1


def test_kirby_not_applicable():
    C = RingSpec.build(["x", "y", "z"], ["x*y"])
    M = cyc(C, ["x"])
    d = tor(M, M, 6)
    rep = kirby_check(betti_from_homology(d), d, eisenbud_operators(d.resolution))
    assert not rep.applicable and "infinite" in rep.reason


def test_change_of_rings():
    assert change_of_rings_check(Rx, Ry, 6).passed
    assert change_of_rings_check(R, Ry, 4).passed
    rep = change_of_rings_check(kc, kc, 6)
    assert rep.passed and rep.spots


def test_change_of_rings_needs_relations():
    Q = RingSpec.build(["x", "y"], [])
    with pytest.raises(ValueError):
        change_of_rings_check(cyc(Q, ["x"]), cyc(Q, ["y"]), 3)


def test_different_rings_rejected():
    with pytest.raises(ValueError):
        tor(Rx, kc, 2)


gens = st.lists(st.sampled_from(["x", "y", "x^2", "x*y", "y^2", "x^2 + y^2", "x^3", "y^3"]),
                min_size=1, max_size=2)


@given(gens, gens)
def test_tor_symmetric(a, b):
    assert tor_symmetry(cyc(NODE, a), cyc(NODE, b), 5)


@given(gens, gens)
def test_change_of_rings_random_node_pairs(a, b):
    assert change_of_rings_check(cyc(NODE, a), cyc(NODE, b), 4).passed


def test_surjective_combination_found():
    from citor.pairs import surjective_combination
    d = tor(Rx, Rx, 8)
    rep = surjective_combination(d, eisenbud_operators(d.resolution))
    assert rep.found and rep.combination == ["1"] and rep.onset == 1
    d = tor(kc, kc, 7)
    rep = surjective_combination(d, eisenbud_operators(d.resolution))
    assert rep.found and rep.onset == 0


def test_surjective_combination_miss_is_reported():
    from citor.pairs import surjective_combination
    F2 = RingSpec.build(["x", "y"], ["x^2", "y^2"], field="fp:2")
    k2 = GradedPresentation.residue_field(F2)
    d = tor(k2, k2, 6)
    rep = surjective_combination(d, eisenbud_operators(d.resolution), coeffs=())
    assert not rep.found and rep.tested == 0 and rep.as_dict()["field"] == "fp:2"
