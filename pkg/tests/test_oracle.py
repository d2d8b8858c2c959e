import pytest
from hypothesis import given, settings, strategies as st

from citor import GradedPresentation, RingSpec
from citor.oracle import oracle_for, pipeline_dimensions, small_inputs


def _triple(rel, I, J, field="q"):
    R = RingSpec.build(["x", "y"], rel, field=field)
    return GradedPresentation.cyclic(R, I), GradedPresentation.cyclic(R, J)


def test_family_shape():
    fam = small_inputs()
    assert len(fam) == 900
    assert all(len(rel) <= 2 and len(I) <= 2 for rel, I, _ in fam)
    assert small_inputs(2) and len(small_inputs(2)) < len(fam)


def test_oracle_hand_values():
    M, N = _triple(["x*y"], ["x"], ["y"])
    dims = oracle_for(M, N, max_i=4, top=6)
    # Tor_{2j} = k in degree 2j, odd spots vanish
    for i, row in enumerate(dims):
        want = [1 if (i % 2 == 0 and t == i) else 0 for t in range(7)]
        assert row == want
    k = GradedPresentation.residue_field(M.ring)
    dims = oracle_for(k, k, max_i=3, top=5)
    assert [sum(row) for row in dims] == [1, 2, 2, 2]


@pytest.mark.parametrize("idx", range(0, 900, 37))
def test_oracle_matches_pipeline_sample(idx):
    rel, I, J = small_inputs()[idx]
    M, N = _triple(rel, I, J)
    assert pipeline_dimensions(M, N) == oracle_for(M, N)


homog = {1: ["x", "y", "x + y", "x - y"],
         2: ["x^2", "x*y", "y^2", "x^2 + x*y", "x^2 - y^2", "x*y + y^2"],
         3: ["x^3", "y^3", "x^2*y", "x*y^2 - y^3", "x^3 + y^3"]}
gen = st.sampled_from([g for gs in homog.values() for g in gs])
rels = st.sampled_from([["x*y"], ["x^2 + y^2"], ["x^3"], ["x^2", "y^2"], ["x*y", "x^3 + y^3"]])


@settings(max_examples=25)
@given(rels, st.lists(gen, min_size=1, max_size=2), st.lists(gen, min_size=1, max_size=2),
       st.sampled_from(["q", "fp:5", "fp:32003"]))
def test_oracle_matches_pipeline_random(rel, I, J, field):
    M, N = _triple(rel, I, J, field)
    assert pipeline_dimensions(M, N, max_i=5, top=7) == oracle_for(M, N, max_i=5, top=7)


def test_shifted_generators():
    R = RingSpec.build(["x", "y"], ["x*y"])
    M = GradedPresentation.cyclic(R, ["x"], 1)
    N = GradedPresentation.cyclic(R, ["y"])
    assert pipeline_dimensions(M, N, 4, 6) == oracle_for(M, N, 4, 6)
