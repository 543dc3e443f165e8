"""Shared hypothesis strategies for multigraph-based property tests."""

from hypothesis import strategies as st

from edgeext.core import MultiGraph


@st.composite
def multigraphs(draw, max_n=6, max_e=9, min_e=0, max_mu=None, max_degree=None):
    n = draw(st.integers(min_value=2, max_value=max_n))
    e = draw(st.integers(min_value=min_e, max_value=max_e))
    edges = []
    degrees = [0] * n
    mults = {}
    for i in range(e):
        u = draw(st.integers(min_value=0, max_value=n - 1))
        v = draw(st.integers(min_value=0, max_value=n - 1))
        if u == v:
            continue
        pair = (min(u, v), max(u, v))
        if max_mu is not None and mults.get(pair, 0) >= max_mu:
            continue
        if max_degree is not None and (degrees[u] >= max_degree
                                       or degrees[v] >= max_degree):
            continue
        mults[pair] = mults.get(pair, 0) + 1
        degrees[u] += 1
        degrees[v] += 1
        edges.append((len(edges), u, v))
    return MultiGraph(n, edges)


@st.composite
def bipartite_multigraphs(draw, max_side=4, max_e=9, min_e=0, max_mu=None):
    nx = draw(st.integers(min_value=1, max_value=max_side))
    ny = draw(st.integers(min_value=1, max_value=max_side))
    e = draw(st.integers(min_value=min_e, max_value=max_e))
    edges = []
    mults = {}
    for i in range(e):
        u = draw(st.integers(min_value=0, max_value=nx - 1))
        v = nx + draw(st.integers(min_value=0, max_value=ny - 1))
        if max_mu is not None and mults.get((u, v), 0) >= max_mu:
            continue
        mults[(u, v)] = mults.get((u, v), 0) + 1
        edges.append((len(edges), u, v))
    return MultiGraph(nx + ny, edges)
