import itertools

import pytest
from hypothesis import settings, strategies as st

from loopcut import Network


def net(arcs, nodes=None, values=None):
    nodes = set(nodes or ()) | {v for a in arcs for v in a}
    values = values or {}
    return Network({v: values.get(v, 2) for v in nodes}, arcs)


settings.register_profile("default", deadline=None)
settings.load_profile("default")

DIAMOND_ARCS = [(1, 2), (1, 3), (2, 4), (3, 4)]
# Two diamonds joined through node 5: 4->5->6.
BRIDGED_ARCS = DIAMOND_ARCS + [(4, 5), (5, 6), (6, 7), (6, 8), (7, 9), (8, 9)]
# Two triangles sharing node 3; 3 has one parent in each (1 and 5).
BOWTIE_ARCS = [(1, 2), (1, 3), (3, 2), (5, 3), (5, 4), (3, 4)]


@pytest.fixture
def diamond():
    return net(DIAMOND_ARCS)


@pytest.fixture
def bridged():
    return net(BRIDGED_ARCS)


@pytest.fixture
def bowtie():
    return net(BOWTIE_ARCS)


@st.composite
def small_dags(draw, max_nodes=8):
    """DAGs on up to ``max_nodes`` nodes with shuffled ids so that id order is not topological."""
    n = draw(st.integers(0, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    labels = draw(st.permutations(range(1, n + 1)))
    values = draw(st.lists(st.integers(2, 4), min_size=n, max_size=n))
    return Network({labels[i]: values[i] for i in range(n)}, [(labels[i], labels[j]) for i, j in chosen])


def all_dags(n):
    """Every DAG whose topological order is 1..n (each subset of forward pairs)."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Network({v: 2 for v in range(1, n + 1)}, [p for b, p in enumerate(pairs) if mask >> b & 1])


# -- acceptance reporting ------------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    num, title = mark.args
    ok = call.excinfo is None
    prev = _CRITERIA.get(num, (title, True))
    _CRITERIA[num] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
