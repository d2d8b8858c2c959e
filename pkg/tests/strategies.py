"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from citor import QQ, GF, PolyRing


def exponents(nvars, max_deg=3):
    return st.tuples(*[st.integers(0, max_deg)] * nvars)


def polynomials(ring: PolyRing, max_terms=4, max_deg=3):
    if ring.field is QQ:
        coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    else:
        coeff = st.integers(0, ring.field.p - 1)
    terms = st.dictionaries(exponents(ring.nvars, max_deg), coeff, max_size=max_terms)
    return terms.map(ring.from_dict)


def homogeneous(ring: PolyRing, degree: int, max_terms=3):
    mons = list(ring.monomials_of_degree(degree))
    coeff = st.integers(-3, 3)
    return st.lists(st.tuples(st.sampled_from(mons), coeff), max_size=max_terms).map(
        lambda ts: ring.from_dict(_acc(ts)))


def _acc(ts):
    out = {}
    for e, c in ts:
        out[e] = out.get(e, 0) + c
    return out


QXY = PolyRing(["x", "y"])
QXYZ = PolyRing(["x", "y", "z"])
F7 = PolyRing(["x", "y"], GF(7))
