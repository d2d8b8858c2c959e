import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from citor import GF, QQ, kernels
from citor import _kernels_py as pyk

try:
    from citor import _ckernels as ck
except ImportError:  # extension not built
    ck = None

needs_ext = pytest.mark.skipif(ck is None, reason="compiled kernels not built")

mons = st.tuples(st.integers(0, 1), st.tuples(st.integers(0, 3), st.integers(0, 3)))


def vectors(p):
    coeff = st.integers(1, p - 1) if p else st.fractions(-4, 4, max_denominator=3).filter(bool)
    return st.dictionaries(mons, coeff, max_size=6)


def test_selected_backend_is_known():
    assert kernels.BACKEND in ("python", "cython")


def test_forced_fallback():
    env = dict(os.environ, CITOR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from citor import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
@given(vectors(0), vectors(0), st.fractions(-3, 3, max_denominator=2), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_sub_mul_agrees_rational(v, g, c, q):
    a, b = dict(v), dict(v)
    pyk.sub_mul(a, c, q, g, QQ)
    ck.sub_mul(b, c, q, g, QQ)
    assert a == b


@needs_ext
@given(vectors(7), vectors(7), st.integers(0, 6), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_sub_mul_agrees_mod_p(v, g, c, q):
    F = GF(7)
    a, b = dict(v), dict(v)
    pyk.sub_mul(a, c, q, g, F)
    ck.sub_mul(b, c, q, g, F)
    assert a == b


@needs_ext
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5),
       st.sampled_from([0, 5, 2 ** 61 - 1]))
def test_rref_agrees(rows, p):
    if p:
        A = [[x % p for x in r] for r in rows]
    else:
        A = [[Fraction(x) for x in r] for r in rows]
    B = [list(r) for r in A]
    assert pyk.rref(A, 4, p) == ck.rref(B, 4, p)
    assert A == B


@needs_ext
def test_reports_identical_across_backends():
    code = ("import json; from citor.analysis import Entry, entry_report; "
            "from citor.problem import read_problem, corpus_dir; import os; "
            "E = Entry(read_problem(os.path.join(corpus_dir(), 'node.yaml')), 8); "
            "print(json.dumps(entry_report(E, ['tor', 'eta']), sort_keys=True))")
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, CITOR_PURE_PYTHON=flag)
        r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                           check=True)
        outs.append(json.loads(r.stdout))
    assert outs[0] == outs[1]
