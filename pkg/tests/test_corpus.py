import json
import os

import pytest

from citor import cli
from citor.analysis import SUITES, Entry, run_checks
from citor.problem import ProblemError, corpus_dir, load_problem

GOLDEN = os.path.join(corpus_dir(), cli.GOLDEN)


@pytest.fixture(scope="module")
def report():
    return cli.build_corpus_report()


def test_corpus_entries(corpus):
    assert set(corpus) == {"codim2", "corner", "cusp", "cylinder", "double_node", "node", "regular"}
    codims = {pb.ring.codim for pb in corpus.values()}
    assert codims == {0, 1, 2}
    assert corpus["cusp"].ring.field.p == 32003
    assert corpus["cusp"].ring.Q.weights == (2, 3)


def test_report_matches_golden_bytes(report):
    with open(GOLDEN, encoding="utf-8") as fh:
        assert fh.read() == cli.dumps(report)


def test_no_failing_checks(report):
    fails = [(name, c["suite"], c["check"], c["subject"])
             for name, rep in report["entries"].items() for c in rep["checks"]
             if c["status"] == "fail"]
    assert fails == []


def test_every_suite_runs(report):
    seen = {c["suite"] for rep in report["entries"].values() for c in rep["checks"]}
    assert seen == set(SUITES)


def test_golden_node_values(report):
    pairs = report["entries"]["node"]["pairs"]
    assert pairs["node_x_y"]["eta"]["1"]["value"] == [1, 2]
    assert pairs["node_x_x"]["eta"]["1"]["value"] == [-1, 2]
    assert pairs["node_k_k"]["eta"]["1"]["value"] == [0, 1]


def test_golden_codim_two(report):
    p = report["entries"]["codim2"]["pairs"]["c2_k_k"]
    cx = p["complexity"]
    assert (cx["lcx"], cx["tcx"], cx["cx"]) == (2, 2, 2)
    assert p["eta"]["2"]["value"] == [0, 1]


def test_golden_dimension_datum(report):
    recs = [c for c in report["entries"]["corner"]["checks"]
            if c["check"] == "example_dimension_datum"]
    assert len(recs) == 1 and recs[0]["status"] == "pass"
    d = recs[0]["detail"]
    assert d["dim_sum"] == d["dim_R_plus_r_minus_1"] == 1 and d["witness_exact"]


def test_parallel_report_identical(report):
    assert cli.build_corpus_report(jobs=3) == report


def test_run_checks_sorted(corpus):
    recs = run_checks(Entry(corpus["regular"]), ["modules", "tor"])
    keys = [(r["suite"], r["check"], r["subject"]) for r in recs]
    assert keys == sorted(keys)


BASE = {"name": "t", "variables": ["x", "y"], "relations": ["x*y"]}


@pytest.mark.parametrize("patch, needle", [
    ({"variables": None}, ""),
    ({"relations": ["x + y^2"]}, "homogeneous"),
    ({"relations": ["x", "x*y"]}, "zerodivisor"),
    ({"modules": {"M": {"ideal": ["x +"]}}}, "position"),
    ({"modules": {"M": {"target": [0], "source": [2], "matrix": [["x"]]}}}, "degree"),
    ({"modules": {"M": 3}}, "mapping"),
    ({"modules": {"M": "free"}, "pairs": {"p": ["M", "Z"]}}, "pair p"),
    ({"modules": {"S": {"sum": ["A"]}}}, "unknown summands"),
    ({"horizon": 1}, "horizon"),
    ({"field": "fp:10"}, "prime"),
])
def test_problem_validation(patch, needle):
    data = dict(BASE)
    for k, v in patch.items():
        if v is None:
            data.pop(k)
        else:
            data[k] = v
    with pytest.raises(ProblemError) as ei:
        load_problem(data)
    assert needle in str(ei.value)


def test_sequence_side_validated():
    data = dict(BASE, modules={"R": "free", "k": "residue_field"},
                sequences={"s": {"modules": ["R", "R", "k"], "alpha": [["0"]],
                                 "beta": [["1"]], "side": "middle"}})
    with pytest.raises(ProblemError):
        load_problem(data)
