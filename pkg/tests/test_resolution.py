import pytest
from hypothesis import given, strategies as st

from citor import (GradedPresentation, HorizonError, InfiniteResolution, NotRegularSequence,
                   RingSpec, eisenbud_operators, matrix_factorization, resolve,
                   verify_regular_sequence)
from citor.resolution import default_horizon, is_two_periodic_from

Q = RingSpec.build(["x", "y"], [])
NODE = RingSpec.build(["x", "y"], ["x*y"])
CI2 = RingSpec.build(["x", "y"], ["x^2", "y^2"])


def test_regular_sequences():
    P = Q.Q
    assert verify_regular_sequence(P, ["x*y"]).passed
    assert verify_regular_sequence(P, ["x^2", "y^2"]).passed
    cert = verify_regular_sequence(P, ["x", "x*y"])
    assert not cert.passed and cert.index == 1 and cert.witness == 1
    with pytest.raises(NotRegularSequence):
        RingSpec.build(["x", "y"], ["x", "x*y"])


def test_koszul():
    res = resolve(GradedPresentation.residue_field(Q))
    assert res.complete
    assert res.betti() == [1, 2, 1, 0] and res.length == 2
    assert res.twists[:3] == [[0], [1, 1], [2]]
    assert res.check_dd_zero() and res.check_exact() and res.check_minimal()


def test_node_cyclic_alternates():
    res = resolve(GradedPresentation.cyclic(NODE, ["x"]), 4)
    assert res.betti() == [1, 1, 1, 1, 1]
    ents = [str(res.matrix(i)[0][0]) for i in range(1, 5)]
    assert ents == ["x", "y", "x", "y"]


def test_node_residue_field():
    res = resolve(GradedPresentation.residue_field(NODE), 3)
    assert res.betti() == [1, 2, 2, 2]
    assert res.check_dd_zero() and res.check_exact()


def test_full_resolution_probe():
    with pytest.raises(InfiniteResolution):
        resolve(GradedPresentation.residue_field(NODE))
    res = resolve(GradedPresentation.free_module(NODE))
    assert res.complete and res.betti() == [1, 0] and res.length == 0


def test_matrix_factorizations():
    mf = matrix_factorization(resolve(GradedPresentation.cyclic(NODE, ["x"]), 6))
    assert mf.verified and mf.size == 1
    assert mf.as_dict()["A"] == [["x"]] and mf.as_dict()["B"] == [["y"]]
    mf = matrix_factorization(resolve(GradedPresentation.residue_field(NODE), 6))
    assert mf.verified and mf.size == 2
    mf = matrix_factorization(resolve(GradedPresentation.free_module(NODE), 6))
    assert mf.size == 0 and mf.verified


def test_matrix_factorization_needs_hypersurface():
    with pytest.raises(ValueError):
        matrix_factorization(resolve(GradedPresentation.residue_field(CI2), 4))


def test_short_horizon_reported():
    res = resolve(GradedPresentation.residue_field(NODE), 1)
    with pytest.raises(HorizonError) as ei:
        matrix_factorization(res)
    assert ei.value.required is not None


def test_node_operators_identity():
    res = resolve(GradedPresentation.cyclic(NODE, ["x"]), 6)
    ops = eisenbud_operators(res)
    assert ops.check_identity()
    for i in range(ops.spots()):
        assert ops.t(0, i) == [{(0, (0, 0)): 1}]


def test_codim_two_operators():
    res = resolve(GradedPresentation.residue_field(CI2), 5)
    assert res.betti() == [1, 2, 3, 4, 5, 6]
    ops = eisenbud_operators(res)
    assert ops.r == 2 and ops.check_identity()


def test_free_module_operators_vanish():
    ops = eisenbud_operators(resolve(GradedPresentation.free_module(NODE), 4))
    assert all(not any(t) for j in range(ops.r) for t in ops.ops[j])


def test_two_periodicity_after_dim_q():
    res = resolve(GradedPresentation.residue_field(NODE), 8)
    assert is_two_periodic_from(res, Q.dim_Q + 1)


def test_default_horizon(monkeypatch):
    monkeypatch.delenv("CITOR_HORIZON", raising=False)
    assert default_horizon(NODE) == 2 * 2 + 2 + 6
    monkeypatch.setenv("CITOR_HORIZON", "5")
    assert default_horizon(NODE) == 5
    monkeypatch.setenv("CITOR_HORIZON", "five")
    with pytest.raises(ValueError):
        default_horizon(NODE)


ideals = st.lists(st.sampled_from(["x", "y", "x^2", "x*y", "y^2", "x^3", "y^3", "x^2*y", "x*y^2",
                                   "x^2 + y^2", "x^2 - x*y"]), min_size=1, max_size=3)
rings = st.sampled_from([NODE, CI2, RingSpec.build(["x", "y"], ["x^2 - y^2"]),
                         RingSpec.build(["x", "y"], ["x^3"])])


@given(rings, ideals)
def test_resolution_properties(ring, gens):
    M = GradedPresentation.cyclic(ring, gens)
    res = resolve(M, 5)
    assert res.check_dd_zero()
    assert res.check_minimal()
    assert res.check_exact()
    if ring.codim >= 1:
        assert eisenbud_operators(res).check_identity()
    if ring.codim == 1 and not res.complete:
        assert is_two_periodic_from(res, ring.dim_Q + 1) or len(res.betti()) < ring.dim_Q + 4
