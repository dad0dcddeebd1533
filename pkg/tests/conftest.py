"""Independent brute-force references.

Nothing here touches the package's ranking, counting or search code: the
helpers enumerate triples with itertools and count intersections directly.
"""

from functools import lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def colex_triples(n):
    """All 3-subsets of {1..n} in colex order."""
    return sorted(combinations(range(1, n + 1), 3), key=lambda t: (t[2], t[1], t[0]))


def meets_once(u, v):
    return len(set(u) & set(v)) == 1


def brute_edges(triples):
    return sum(meets_once(u, v) for u, v in combinations(triples, 2))


@lru_cache(maxsize=None)
def subset_edge_table(n):
    """Edge count and size of every subset of V_n, indexed by bitmask over colex order.

    Built by extending subsets one vertex at a time; only feasible for
    C(n,3) <= 20.
    """
    verts = colex_triples(n)
    N = len(verts)
    adj = [sum(1 << j for j, u in enumerate(verts) if meets_once(v, u)) for v in verts]
    edges = np.zeros(1 << N, dtype=np.int32)
    size = np.zeros(1 << N, dtype=np.int8)
    for v in range(N):
        block = 1 << v
        idx = np.arange(block, dtype=np.int64)
        # popcount of (adj[v] & idx) via the size table of smaller subsets
        edges[block:2 * block] = edges[:block] + size[idx & adj[v]]
        size[block:2 * block] = size[:block] + 1
    return edges, size


@lru_cache(maxsize=None)
def brute_min_edges(n):
    """r(l) for every l by exhaustive enumeration of all 2^C(n,3) subsets."""
    edges, size = subset_edge_table(n)
    N = len(colex_triples(n))
    return [int(edges[size == s].min()) for s in range(N + 1)]


def brute_alpha(n):
    r = brute_min_edges(n)
    return max(l for l, v in enumerate(r) if v == 0)


def load_min_edges_fixture():
    table = {}
    for line in (FIXTURES / "min_edges.tsv").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        n, l, v = map(int, line.split("\t"))
        table[(n, l)] = v
    return table


@pytest.fixture(scope="session")
def min_edges_fixture():
    return load_min_edges_fixture()


# ---------------------------------------------------------------- acceptance summary

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion."""
    label = request.node.get_closest_marker("criterion").args[0]
    yield label
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
