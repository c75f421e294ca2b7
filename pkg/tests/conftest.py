import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from edgemagic import Graph


@st.composite
def graph_strategy(draw, max_p=8, min_p=1):
    p = draw(st.integers(min_value=min_p, max_value=max_p))
    pairs = [(u, v) for u in range(p) for v in range(u + 1, p)]
    chosen = draw(st.sets(st.sampled_from(pairs)) if pairs else st.just(set()))
    return Graph(p, tuple(chosen))


def to_networkx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.p))
    nxg.add_edges_from(g.edges)
    return nxg


def random_graph(rng: random.Random, p_min=1, p_max=7) -> Graph:
    p = rng.randint(p_min, p_max)
    pairs = [(u, v) for u in range(p) for v in range(u + 1, p)]
    q = rng.randint(0, len(pairs))
    return Graph(p, tuple(rng.sample(pairs, q)))


def random_permutation(rng: random.Random, p: int) -> list[int]:
    perm = list(range(p))
    rng.shuffle(perm)
    return perm


@pytest.fixture
def rng():
    return random.Random(0xEDA6)
