"""Palettes, partial edge-colourings and the reduction to list instances.

A partial colouring is a plain mapping from edge id to a colour in
``{1, ..., k}``.  Reducing a properly precoloured graph deletes the
precoloured edges and leaves every surviving edge with the list of palette
colours not seen on adjacent precoloured edges; merging any solution of the
list instance with the precolouring yields a proper colouring of the
original graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import EdgeId, InputError, MultiGraph


@dataclass(frozen=True)
class Palette:
    """The colour set {1, ..., k}."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InputError("palette size must be at least 1")

    @property
    def colours(self) -> range:
        return range(1, self.k + 1)

    def __contains__(self, colour) -> bool:
        return isinstance(colour, int) and 1 <= colour <= self.k


def is_proper(g: MultiGraph, colouring: Mapping[EdgeId, int]) -> bool:
    """True iff no two adjacent coloured edges share a colour.

    Parallel edges share both endpoints and therefore count as adjacent.
    """
    at_vertex: dict[tuple[int, int], EdgeId] = {}
    for eid, colour in colouring.items():
        u, v = g.endpoints(eid)
        for w in (u, v):
            key = (w, colour)
            if key in at_vertex:
                return False
            at_vertex[key] = eid
    return True


def precoloured_degree_edge(g: MultiGraph, precoloured: Iterable[EdgeId],
                            e: EdgeId) -> int:
    """Number of precoloured edges adjacent to the uncoloured edge e."""
    pre = set(precoloured)
    if e in pre:
        raise InputError(f"edge {e!r} is itself precoloured")
    g.endpoints(e)
    return sum(1 for f in g.adjacent_edges(e) if f in pre)


def precoloured_degree_vertex(g: MultiGraph, precoloured: Iterable[EdgeId],
                              v: int) -> int:
    """Number of precoloured edges incident with vertex v."""
    pre = set(precoloured)
    return sum(1 for eid, _ in g.incident(v) if eid in pre)


def validate_precolouring(g: MultiGraph, colouring: Mapping[EdgeId, int],
                          palette: Palette) -> None:
    for eid, colour in colouring.items():
        g.endpoints(eid)
        if colour not in palette:
            raise InputError(
                f"edge {eid!r} has colour {colour!r} outside palette [{palette.k}]")
    if not is_proper(g, colouring):
        raise InputError("precolouring is not proper")


def reduce_to_lists(
    g: MultiGraph,
    colouring: Mapping[EdgeId, int],
    palette: Palette,
) -> tuple[MultiGraph, dict[EdgeId, frozenset[int]]]:
    """Delete precoloured edges; list each survivor's still-usable colours."""
    validate_precolouring(g, colouring, palette)
    reduced = g.delete_edges(colouring.keys())
    full = frozenset(palette.colours)
    lists = {}
    for eid in reduced.edge_ids:
        banned = {colouring[f] for f in g.adjacent_edges(eid) if f in colouring}
        lists[eid] = full - banned
    return reduced, lists


def merge_colourings(base: Mapping[EdgeId, int],
                     extension: Mapping[EdgeId, int]) -> dict[EdgeId, int]:
    merged = dict(base)
    for eid, colour in extension.items():
        if eid in merged and merged[eid] != colour:
            raise InputError(f"conflicting colours for edge {eid!r}")
        merged[eid] = colour
    return merged


# -- precolouring file format -------------------------------------------

def colouring_to_json_obj(colouring: Mapping[EdgeId, int],
                          palette: Palette) -> dict:
    return {"palette": palette.k,
            "colours": {str(eid): c for eid, c in colouring.items()}}


def _resolve_edge_key(g: MultiGraph, key: str) -> EdgeId:
    if g.has_edge(key):
        return key
    try:
        as_int = int(key)
    except ValueError:
        as_int = None
    if as_int is not None and g.has_edge(as_int):
        return as_int
    raise InputError(f"precolouring names unknown edge {key!r}")


def colouring_from_json_obj(g: MultiGraph, obj: Mapping
                            ) -> tuple[dict[EdgeId, int], Palette]:
    try:
        palette = Palette(int(obj["palette"]))
        raw = obj["colours"]
    except (KeyError, TypeError, ValueError):
        raise InputError("precolouring object needs 'palette' and 'colours'") from None
    colouring = {}
    for key, value in raw.items():
        eid = _resolve_edge_key(g, key)
        colouring[eid] = int(value)
    return colouring, palette


def colouring_from_json(g: MultiGraph, text: str
                        ) -> tuple[dict[EdgeId, int], Palette]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return colouring_from_json_obj(g, obj)


def lists_to_json_obj(lists: Mapping[EdgeId, frozenset[int]]) -> dict:
    """Debug dump of a list assignment."""
    return {str(eid): sorted(colours) for eid, colours in lists.items()}
