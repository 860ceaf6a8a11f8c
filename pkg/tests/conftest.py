import pytest
from hypothesis import settings
from hypothesis import strategies as st
from itertools import combinations

from hyperturan import Hypergraph3, _backend

# solver calls vary in cost; examples are bounded by size, not by a clock
settings.register_profile("repo", deadline=None)
settings.load_profile("repo")


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run the test once per available kernel backend."""
    previous = _backend.current()
    _backend.use(request.param)
    yield request.param
    _backend.use(previous)


@st.composite
def hypergraphs(draw, min_n=0, max_n=8, max_edges=None):
    n = draw(st.integers(min_n, max_n))
    triples = list(combinations(range(n), 3))
    if not triples:
        return Hypergraph3(n)
    chosen = draw(st.lists(st.sampled_from(triples), unique=True,
                           max_size=max_edges if max_edges is not None else len(triples)))
    return Hypergraph3(n, chosen)


def random_tripartite(rng, n, p):
    """Edges drawn only from the crossing triples of a random balanced partition."""
    perm = rng.permutation(n)
    cls = [0] * n
    for i, v in enumerate(perm):
        cls[int(v)] = i % 3
    edges = [t for t in combinations(range(n), 3)
             if len({cls[t[0]], cls[t[1]], cls[t[2]]}) == 3 and rng.random() < p]
    return Hypergraph3(n, edges), cls
