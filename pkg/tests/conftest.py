import random

import pytest
from hypothesis import strategies as st

from ngorenstein.graph import DecoratedGraph


def path_graph(k, p=0, e=None):
    vs = [f"v{i}" for i in range(1, k + 1)]
    return DecoratedGraph.build(vs, [p] * k, [(vs[i], vs[i + 1]) for i in range(k - 1)], e)


def cycle_graph(k, p=0, e=None):
    vs = [f"c{i}" for i in range(1, k + 1)]
    if k == 2:
        edges = {(vs[0], vs[1]): 2}
    else:
        edges = {(vs[i], vs[(i + 1) % k]): 1 for i in range(k)}
    return DecoratedGraph.build(vs, [p] * k, edges, e)


def star_graph(genus, arms, e=None):
    vs = ["c"] + [f"a{i}" for i in range(1, arms + 1)]
    return DecoratedGraph.build(vs, [genus] + [0] * arms, [("c", v) for v in vs[1:]], e)


def tree_with_arms(arms, e=None):
    """Three arms of the given vertex counts around a centre (D and E shapes)."""
    vs = ["o"]
    edges = []
    for k, length in enumerate(arms):
        prev = "o"
        for j in range(length):
            v = f"x{k}_{j}"
            vs.append(v)
            edges.append((prev, v))
            prev = v
    return DecoratedGraph.build(vs, [0] * len(vs), edges, e)


def dynkin(tag):
    kind, rank = tag[0], int(tag[1:])
    if kind == "A":
        return path_graph(rank)
    if kind == "D":
        return tree_with_arms((1, 1, rank - 3))
    return tree_with_arms((1, 2, rank - 4))


def random_graph(rng, max_vertices=4, max_mult=2, max_p=3, e_range=None):
    k = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(k)]
    edges = {}
    for i in range(1, k):
        j = rng.randrange(i)
        edges[(vs[j], vs[i])] = rng.randint(1, max_mult)
    for i in range(k):
        for j in range(i + 1, k):
            if (vs[i], vs[j]) not in edges and rng.random() < 0.3:
                edges[(vs[i], vs[j])] = rng.randint(1, max_mult)
    e = None if e_range is None else [rng.randint(*e_range) for _ in vs]
    return DecoratedGraph.build(vs, [rng.randint(0, max_p) for _ in vs], edges, e)


@st.composite
def graphs(draw, max_vertices=5, max_mult=2, max_p=3, with_e=False, min_e=1, max_e=8):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return random_graph(rng, max_vertices, max_mult, max_p, (min_e, max_e) if with_e else None)


def negative_definite_graph(rng, max_vertices=6):
    """Random graph with weights large enough (diagonal dominance) to be definite."""
    g = random_graph(rng, max_vertices, 3, 3)
    adj = g.adjacency()
    e = [sum(row) + rng.randint(1, 20) for row in adj]
    return g.with_e(e)


@pytest.fixture
def two_vertex():
    return DecoratedGraph.build(["a", "b"], [1, 2], [("a", "b")])


PAPER_EIGHT = {
    ((5, 4), (1, 2)), ((3, 2), (1, 3)), ((2, 1), (1, 5)), ((4, 7), (2, 1)),
    ((1, 1), (2, 4)), ((2, 5), (3, 1)), ((1, 2), (3, 2)), ((1, 4), (5, 1)),
}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, text): acceptance criterion")


_criteria = {}


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria.setdefault(report.nodeid, report.outcome)


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            _criteria_meta[item.nodeid] = mark.args


_criteria_meta = {}


def pytest_terminal_summary(terminalreporter):
    if not _criteria_meta:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (cid, text) in _criteria_meta.items():
        outcome = _criteria.get(nodeid)
        if outcome is None:
            continue
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {cid}: {text}")
