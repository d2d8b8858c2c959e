import pytest
from hypothesis import given, strategies as st

from citor import INF, GradedPresentation, RingSpec, depth, hom_into_ring, length_report
from citor import minimal_presentation, mu, pushforward, tensor
from citor.modules import (ModuleMap, NotTorsionFree, PresentationError, direct_sum, is_free,
                           pd_Q, shift, verify_short_exact)
from citor.groebner import InhomogeneousError

Q = RingSpec.build(["x", "y"], [])
NODE = RingSpec.build(["x", "y"], ["x*y"])


def cyc(ring, *gens, s=0):
    return GradedPresentation.cyclic(ring, list(gens), s)


def test_unit_matrix_presents_zero():
    P = GradedPresentation.from_matrix(Q, [0], [0], [["1"]])
    m = minimal_presentation(P)
    assert m.is_zero() and m.rank == 0


def test_minimal_unchanged():
    P = GradedPresentation.from_matrix(Q, [0], [1], [["x"]])
    assert minimal_presentation(P).describe() == P.describe()


def test_unit_row_column_pruning():
    P = GradedPresentation.from_matrix(Q, [0, 0], [0, 1], [["1", "0"], ["0", "x"]])
    assert minimal_presentation(P).describe() == {"target": [0], "source": [1], "matrix": [["x"]]}


def test_minimal_transport():
    P = GradedPresentation.from_matrix(Q, [0, 0], [0, 1], [["1", "0"], ["0", "x"]])
    m = minimal_presentation(P)
    # the second generator survives; the first is killed by the unit
    assert m.transport({(0, (0, 0)): 1}) == {}
    assert m.transport({(1, (0, 0)): 1})


def test_length_reports():
    assert length_report(GradedPresentation.residue_field(Q)).as_dict() == {
        "dimension": 0, "length": 1, "adjusted_length": 1}
    r = length_report(cyc(Q, "x"))
    assert (r.dimension, r.length, r.adjusted_length) == (1, INF, 0)
    r = length_report(cyc(Q, "x^2", "x*y", "y^3"))
    assert (r.dimension, r.length, r.adjusted_length) == (0, 4, 4)


def test_mu():
    assert mu(GradedPresentation.free_module(Q, (0, 0, 0))) == 3
    I = GradedPresentation.from_matrix(Q, [2, 2], [3], [["y"], ["-x"]])  # (x^2, xy)
    assert mu(I) == 2
    assert mu(cyc(Q, "1")) == 0


def test_tensor_examples():
    R = GradedPresentation.free_module(Q)
    M = cyc(Q, "x^2", "y")
    assert tensor(M, R).hilbert.numerator == M.hilbert.numerator
    k = tensor(cyc(Q, "x"), cyc(Q, "y"))
    assert length_report(k).length == 1
    T = tensor(cyc(NODE, "x"), cyc(NODE, "x"))
    assert T.hilbert.numerator == cyc(NODE, "x").hilbert.numerator
    assert length_report(T).length is INF


def test_duals():
    d = hom_into_ring(GradedPresentation.free_module(Q, (3,)))
    assert d.target == (-3,) and not d.source
    assert hom_into_ring(cyc(Q, "x")).is_zero()
    m = GradedPresentation.from_matrix(Q, [1, 1], [2], [["y"], ["-x"]])
    d = hom_into_ring(m)
    assert d.target == (0,) and not d.source


def test_depths():
    assert depth(GradedPresentation.free_module(Q)) == 2
    assert depth(GradedPresentation.residue_field(Q)) == 0
    Rx = cyc(NODE, "x")
    assert depth(Rx) == 1
    assert pd_Q(Rx) == 1


def test_pushforward_free():
    pf = pushforward(GradedPresentation.free_module(Q, (0, 1)))
    assert pf.lam == 2 and pf.M1.is_zero() and pf.exact


def test_pushforward_maximal_ideal():
    m = GradedPresentation.from_matrix(Q, [1, 1], [2], [["y"], ["-x"]])
    pf = pushforward(m)
    assert pf.lam == 1 and pf.exact
    assert length_report(pf.M1).length == 1
    assert depth(pf.M1) >= depth(m) - 1


def test_pushforward_over_node_keeps_mcm():
    Rx = cyc(NODE, "x")
    pf = pushforward(Rx)
    assert pf.exact and pf.lam == 1
    # M1 is R/(y) up to shift: maximal Cohen-Macaulay again
    assert depth(pf.M1) == NODE.dim
    assert not is_free(pf.M1)


def test_pushforward_rejects_torsion():
    with pytest.raises(NotTorsionFree):
        pushforward(GradedPresentation.residue_field(Q))


def test_bad_presentations():
    with pytest.raises(InhomogeneousError):
        GradedPresentation.from_matrix(Q, [0], [2], [["x"]])
    with pytest.raises(PresentationError):
        GradedPresentation.from_matrix(Q, [0, 0], [1], [["x"]])


def test_short_exact_sequence_node():
    # 0 -> R/(y)(-1) --x--> R --> R/(x) -> 0 over the node
    A = cyc(NODE, "y", s=1)
    B = GradedPresentation.free_module(NODE)
    C = cyc(NODE, "x")
    alpha = ModuleMap.from_matrix(A, B, [["x"]])
    beta = ModuleMap.from_matrix(B, C, [["1"]])
    rep = verify_short_exact(alpha, beta)
    assert rep.exact, rep.failures
    bad = ModuleMap.from_matrix(B, C, [["0"]])
    assert not verify_short_exact(alpha, bad).exact


def test_direct_sum_and_shift():
    M = direct_sum(cyc(Q, "x"), GradedPresentation.residue_field(Q))
    assert mu(M) == 2
    S = shift(cyc(Q, "x", "y"), 3)
    assert S.target == (3,) and S.hilbert.series(6) == {3: 1}


monomial_ideals = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda e: sum(e) > 0),
    min_size=1, max_size=4)


def _mono(e):
    return f"x^{e[0]}*y^{e[1]}"


@given(monomial_ideals)
def test_length_by_staircase(exps):
    M = cyc(Q, *[_mono(e) for e in exps])
    inside = lambda a, b: any(a >= e[0] and b >= e[1] for e in exps)
    rep = length_report(M)
    if any(e[1] == 0 for e in exps) and any(e[0] == 0 for e in exps):
        count = sum(1 for a in range(8) for b in range(8) if not inside(a, b))
        assert rep.length == count == rep.adjusted_length
    else:
        assert rep.length is INF and rep.adjusted_length == 0


@given(monomial_ideals, monomial_ideals)
def test_tensor_of_cyclics_is_sum_of_ideals(a, b):
    T = tensor(cyc(Q, *map(_mono, a)), cyc(Q, *map(_mono, b)))
    assert T.hilbert.numerator == cyc(Q, *map(_mono, a + b)).hilbert.numerator
