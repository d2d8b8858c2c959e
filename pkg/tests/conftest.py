import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from citor.problem import corpus_files, read_problem

settings.register_profile("citor", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("citor")


@pytest.fixture(scope="session")
def corpus():
    return {os.path.basename(p)[:-5]: read_problem(p) for p in corpus_files()}


@pytest.fixture(scope="session")
def entries(corpus):
    from citor.analysis import Entry
    return {name: Entry(pb) for name, pb in corpus.items()}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
