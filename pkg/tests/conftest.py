import itertools
import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pcc.graph import EdgeColouredGraph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), "data")


def rainbow_complete(n):
    return EdgeColouredGraph(n, [(u, v, i) for i, (u, v) in enumerate(itertools.combinations(range(n), 2))])


def mono_complete(n):
    return EdgeColouredGraph(n, [(u, v, 0) for u, v in itertools.combinations(range(n), 2)])


@st.composite
def coloured_graphs(draw, min_n=1, max_n=8, max_colours=5, complete=False):
    n = draw(st.integers(min_n, max_n))
    q = draw(st.integers(1, max_colours))
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if complete or draw(st.booleans()):
            edges.append((u, v, draw(st.integers(0, q - 1))))
    return EdgeColouredGraph(n, edges)


@pytest.fixture
def k4_factorization():
    with open(os.path.join(DATA, "k4_one_factorization.ecg")) as fh:
        return EdgeColouredGraph.from_ecg(fh.read())
