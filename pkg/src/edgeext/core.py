"""Loopless multigraph model with stable edge identities.

Edges carry opaque identifiers that survive subgraph operations, so that
individual parallel edges can be precoloured and tracked through
reductions.  All values are immutable after construction.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

EdgeId = Hashable

#: Distance reported between edges in different components.
INFINITE_DISTANCE = math.inf


class InputError(ValueError):
    """Malformed or contract-violating input (CLI exit code 2)."""


def _id_sort_key(eid):
    # Mixed int/str ids must still order deterministically.
    return (0, eid, "") if isinstance(eid, int) else (1, 0, str(eid))


class MultiGraph:
    """Immutable loopless multigraph on vertices 0..n-1.

    ``edges`` is an ordered sequence of (edge_id, u, v) triples; parallel
    edges are distinct entries with distinct ids.
    """

    __slots__ = ("n", "edges", "_endpoints", "_incident", "_degrees")

    def __init__(self, n: int, edges: Iterable[tuple[EdgeId, int, int]]):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        self.n = n
        edge_list = []
        endpoints = {}
        incident: list[list[tuple[EdgeId, int]]] = [[] for _ in range(n)]
        for eid, u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {eid!r}: endpoint out of range")
            if u == v:
                raise InputError(f"edge {eid!r}: loops are not allowed")
            if eid in endpoints:
                raise InputError(f"duplicate edge id {eid!r}")
            edge_list.append((eid, u, v))
            endpoints[eid] = (u, v)
            incident[u].append((eid, v))
            incident[v].append((eid, u))
        self.edges = tuple(edge_list)
        self._endpoints = endpoints
        self._incident = tuple(tuple(entries) for entries in incident)
        self._degrees = tuple(len(entries) for entries in incident)

    # -- basic accessors -------------------------------------------------

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(eid for eid, _, _ in self.edges)

    def has_edge(self, eid: EdgeId) -> bool:
        return eid in self._endpoints

    def endpoints(self, eid: EdgeId) -> tuple[int, int]:
        try:
            return self._endpoints[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid!r}") from None

    def degree(self, v: int) -> int:
        return self._degrees[v]

    def incident(self, v: int) -> tuple[tuple[EdgeId, int], ...]:
        """Edges at v as (edge_id, other_endpoint) pairs, in edge order."""
        return self._incident[v]

    def delta(self) -> int:
        return max(self._degrees, default=0)

    def mu(self) -> int:
        counts: dict[tuple[int, int], int] = {}
        for _, u, v in self.edges:
            key = (u, v) if u < v else (v, u)
            counts[key] = counts.get(key, 0) + 1
        return max(counts.values(), default=0)

    def adjacent_edges(self, eid: EdgeId) -> tuple[EdgeId, ...]:
        """Edges sharing at least one endpoint with ``eid`` (itself excluded)."""
        u, v = self.endpoints(eid)
        seen = {eid}
        out = []
        for w in (u, v):
            for f, _ in self._incident[w]:
                if f not in seen:
                    seen.add(f)
                    out.append(f)
        return tuple(out)

    # -- derived graphs --------------------------------------------------

    def delete_edges(self, ids: Iterable[EdgeId]) -> "MultiGraph":
        """New graph without the given edges; survivors keep id and order."""
        drop = set(ids)
        for eid in drop:
            if eid not in self._endpoints:
                raise InputError(f"unknown edge id {eid!r}")
        return MultiGraph(self.n, (e for e in self.edges if e[0] not in drop))

    def restrict_edges(self, ids: Iterable[EdgeId]) -> "MultiGraph":
        """New graph with only the given edges, in original order."""
        keep = set(ids)
        for eid in keep:
            if eid not in self._endpoints:
                raise InputError(f"unknown edge id {eid!r}")
        return MultiGraph(self.n, (e for e in self.edges if e[0] in keep))

    def components(self) -> list[tuple[frozenset[int], tuple[EdgeId, ...]]]:
        """Connected components spanned by edges, as (vertices, edge ids).

        Isolated vertices are ignored: they carry no edges to colour.
        """
        seen: set[int] = set()
        out = []
        for v in range(self.n):
            if v in seen or not self._incident[v]:
                continue
            comp = {v}
            queue = deque([v])
            while queue:
                w = queue.popleft()
                for _, x in self._incident[w]:
                    if x not in comp:
                        comp.add(x)
                        queue.append(x)
            seen |= comp
            eids = tuple(eid for eid, u, _ in self.edges if u in comp)
            out.append((frozenset(comp), eids))
        return out

    def is_connected(self) -> bool:
        """True iff all edges lie in one component (isolated vertices ignored)."""
        return len(self.components()) <= 1

    # -- serialization ---------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"n": self.n, "edges": [[eid, u, v] for eid, u, v in self.edges]}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "MultiGraph":
        try:
            n = obj["n"]
            raw = obj["edges"]
        except (KeyError, TypeError):
            raise InputError("graph object needs 'n' and 'edges'") from None
        edges = []
        for item in raw:
            if len(item) != 3:
                raise InputError(f"bad edge entry {item!r}")
            eid, u, v = item
            edges.append((eid, int(u), int(v)))
        return cls(int(n), edges)

    @classmethod
    def from_json(cls, text: str) -> "MultiGraph":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
        return cls.from_json_obj(obj)

    def to_dot(self, colouring: Mapping[EdgeId, int] | None = None) -> str:
        lines = ["graph G {"]
        for v in range(self.n):
            lines.append(f"  {v};")
        for eid, u, v in self.edges:
            label = f"{eid}"
            if colouring and eid in colouring:
                label += f":{colouring[eid]}"
            lines.append(f'  {u} -- {v} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self):
        return f"MultiGraph(n={self.n}, edges={len(self.edges)})"


@dataclass(frozen=True)
class DegreeStats:
    delta: int
    mu: int
    line_delta: int


def degree_stats(g: MultiGraph) -> DegreeStats:
    """Maximum degree, maximum multiplicity and line-graph maximum degree."""
    # d(u)+d(v)-2 counts each parallel edge twice; count neighbours exactly.
    line_delta = 0
    for eid, _, _ in g.edges:
        line_delta = max(line_delta, len(g.adjacent_edges(eid)))
    return DegreeStats(delta=g.delta(), mu=g.mu(), line_delta=line_delta)


def line_adjacency(g: MultiGraph) -> dict[EdgeId, tuple[EdgeId, ...]]:
    """Adjacency of the line graph keyed by edge id."""
    return {eid: g.adjacent_edges(eid) for eid in g.edge_ids}


def line_graph(g: MultiGraph) -> MultiGraph:
    """Simple graph on g's edges; vertex i is g.edges[i].

    The returned edge ids are (id_a, id_b) pairs in edge order.
    """
    index = {eid: i for i, (eid, _, _) in enumerate(g.edges)}
    edges = []
    for eid, _, _ in g.edges:
        for f in g.adjacent_edges(eid):
            if index[eid] < index[f]:
                edges.append(((eid, f), index[eid], index[f]))
    return MultiGraph(len(g.edges), edges)


def edge_distance(g: MultiGraph, e: EdgeId, f: EdgeId):
    """Line-graph distance between two edges; adjacent edges are at 1.

    Returns INFINITE_DISTANCE when the edges lie in different components.
    """
    g.endpoints(e)
    g.endpoints(f)
    if e == f:
        return 0
    dist = {e: 0}
    queue = deque([e])
    while queue:
        cur = queue.popleft()
        d = dist[cur]
        for nxt in g.adjacent_edges(cur):
            if nxt not in dist:
                if nxt == f:
                    return d + 1
                dist[nxt] = d + 1
                queue.append(nxt)
    return INFINITE_DISTANCE


def is_distance_matching(g: MultiGraph, ids: Iterable[EdgeId], t: int) -> bool:
    """True iff all pairs in the set are at edge distance greater than t.

    t=1 is an ordinary matching, t=2 an induced matching; t=0 accepts any set.
    """
    id_list = list(ids)
    for i, e in enumerate(id_list):
        for f in id_list[i + 1:]:
            if edge_distance(g, e, f) <= t:
                return False
    return True


def edges_path(n: int) -> MultiGraph:
    """Path on n vertices, edge ids 0..n-2 (test/demo helper)."""
    return MultiGraph(n, [(i, i, i + 1) for i in range(n - 1)])


def edges_cycle(n: int) -> MultiGraph:
    """Cycle on n vertices, edge ids 0..n-1 (test/demo helper)."""
    return MultiGraph(n, [(i, i, (i + 1) % n) for i in range(n)])
