"""Exact ground-truth engines.

Backtracking list-edge-colouring with most-constrained-edge-first order,
extension and avoidance deciders built on it, chromatic index by upward
search, and a constructive fan/alternating-path colouring meeting the
classical Delta+mu (and floor(3*Delta/2)) bound without any search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import EdgeId, InputError, MultiGraph, _id_sort_key
from .colouring import (Palette, is_proper, merge_colourings, reduce_to_lists,
                        validate_precolouring)

SOLVED = "solved"
UNSOLVABLE = "unsolvable"
BUDGET = "budget"


@dataclass
class SolveOutcome:
    status: str
    colouring: dict[EdgeId, int] | None = None
    nodes: int = 0
    depth: int = 0
    method: str | None = None

    @property
    def solved(self) -> bool:
        return self.status == SOLVED

    def to_json_obj(self) -> dict:
        obj = {"status": self.status,
               "stats": {"nodes": self.nodes, "depth": self.depth}}
        if self.method is not None:
            obj["method"] = self.method
        if self.colouring is not None:
            obj["colouring"] = {str(eid): c for eid, c in self.colouring.items()}
        return obj


def _mask_of(colours: Iterable[int]) -> int:
    mask = 0
    for c in colours:
        mask |= 1 << c
    return mask


def _colours_of(mask: int) -> list[int]:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return out


class _BudgetExceeded(Exception):
    pass


def solve_list(g: MultiGraph,
               lists: Mapping[EdgeId, Iterable[int]],
               budget: int | None = None) -> SolveOutcome:
    """Decide a list-edge-colouring instance by exhaustive backtracking.

    Deterministic: the most constrained edge (smallest remaining list) is
    branched first, ties by edge id; colours are tried in increasing order.
    When every list is the same full palette {1..k}, interchangeable unused
    colours are skipped (symmetry breaking); list instances are searched
    without it so correctness never depends on the symmetry argument.
    """
    eids = list(g.edge_ids)
    for eid in eids:
        if eid not in lists:
            raise InputError(f"edge {eid!r} has no colour list")
    if not eids:
        return SolveOutcome(SOLVED, {}, nodes=0, depth=0)

    masks = {eid: _mask_of(lists[eid]) for eid in eids}
    all_colours = set()
    for eid in eids:
        all_colours.update(lists[eid])
    max_colour = max(all_colours, default=0)
    full_mask = _mask_of(range(1, max_colour + 1))
    symmetric = all(masks[eid] == full_mask for eid in eids) and max_colour >= 1

    order_rank = {eid: i for i, eid in
                  enumerate(sorted(eids, key=_id_sort_key))}
    ends = {eid: g.endpoints(eid) for eid in eids}
    used = [0] * g.n
    assignment: dict[EdgeId, int] = {}
    stats = {"nodes": 0, "depth": 0}

    def class_prune(uncoloured: list[EdgeId]) -> bool:
        """Parity refutation on single colour classes.

        A vertex whose remaining edges have exactly as many usable colours
        as there are edges must see every one of those colours.  For each
        colour c, the edges that can still take c split into components;
        a component whose vertices all demand c needs a perfect matching
        on itself, which an odd component cannot have.
        """
        union = {}
        count = {}
        for eid in uncoloured:
            u, v = ends[eid]
            avail = masks[eid] & ~used[u] & ~used[v]
            for w in (u, v):
                union[w] = union.get(w, 0) | avail
                count[w] = count.get(w, 0) + 1
        needs = {w: union[w] for w in union
                 if union[w].bit_count() == count[w]}
        if not needs:
            return False
        demanded = 0
        for mask in needs.values():
            demanded |= mask
        for c in _colours_of(demanded):
            bit = 1 << c
            adj: dict[int, list[int]] = {}
            for eid in uncoloured:
                u, v = ends[eid]
                if masks[eid] & bit and not (used[u] | used[v]) & bit:
                    adj.setdefault(u, []).append(v)
                    adj.setdefault(v, []).append(u)
            seen = set()
            for start in adj:
                if start in seen:
                    continue
                comp = [start]
                seen.add(start)
                i = 0
                while i < len(comp):
                    for w in adj[comp[i]]:
                        if w not in seen:
                            seen.add(w)
                            comp.append(w)
                    i += 1
                if len(comp) % 2 == 1 and all(
                        needs.get(w, 0) & bit for w in comp):
                    return True
        return False

    def search(uncoloured: list[EdgeId], depth: int, max_used: int) -> bool:
        if not uncoloured:
            return True
        stats["nodes"] += 1
        stats["depth"] = max(stats["depth"], depth)
        if budget is not None and stats["nodes"] > budget:
            raise _BudgetExceeded
        if class_prune(uncoloured):
            return False
        best = None
        best_key = None
        for eid in uncoloured:
            u, v = ends[eid]
            avail = masks[eid] & ~used[u] & ~used[v]
            if avail == 0:
                return False
            key = (avail.bit_count(), order_rank[eid])
            if best_key is None or key < best_key:
                best, best_key, best_avail = eid, key, avail
        u, v = ends[best]
        rest = [eid for eid in uncoloured if eid != best]
        avail = best_avail
        if symmetric:
            avail &= (1 << (max_used + 2)) - 1
        for c in _colours_of(avail):
            bit = 1 << c
            used[u] |= bit
            used[v] |= bit
            assignment[best] = c
            if search(rest, depth + 1, max(max_used, c)):
                return True
            del assignment[best]
            used[u] &= ~bit
            used[v] &= ~bit
        return False

    try:
        ok = search(eids, 0, 0)
    except _BudgetExceeded:
        return SolveOutcome(BUDGET, None, nodes=stats["nodes"],
                            depth=stats["depth"])
    if not ok:
        return SolveOutcome(UNSOLVABLE, None, nodes=stats["nodes"],
                            depth=stats["depth"])
    result = dict(assignment)
    _check_solution(g, result, masks)
    return SolveOutcome(SOLVED, result, nodes=stats["nodes"],
                        depth=stats["depth"])


def _check_solution(g, colouring, masks):
    # Soundness is asserted on every run, not just in tests.
    if not is_proper(g, colouring):
        raise AssertionError("solver produced an improper colouring")
    for eid, c in colouring.items():
        if not (masks[eid] >> c) & 1:
            raise AssertionError(f"edge {eid!r} coloured outside its list")


def extend(g: MultiGraph, colouring: Mapping[EdgeId, int], palette: Palette,
           budget: int | None = None) -> SolveOutcome:
    """Decide whether the proper precolouring extends within the palette."""
    reduced, lists = reduce_to_lists(g, colouring, palette)
    outcome = solve_list(reduced, lists, budget=budget)
    if outcome.solved:
        outcome.colouring = merge_colourings(colouring, outcome.colouring)
    return outcome


def avoid(g: MultiGraph, forbidden: Mapping[EdgeId, int], palette: Palette,
          budget: int | None = None) -> SolveOutcome:
    """Find a proper colouring disagreeing with ``forbidden`` on its domain.

    The forbidden assignment need not be proper.
    """
    for eid, colour in forbidden.items():
        g.endpoints(eid)
        if colour not in palette:
            raise InputError(
                f"forbidden colour {colour!r} outside palette [{palette.k}]")
    full = frozenset(palette.colours)
    lists = {}
    for eid in g.edge_ids:
        if eid in forbidden:
            lists[eid] = full - {forbidden[eid]}
        else:
            lists[eid] = full
    return solve_list(g, lists, budget=budget)


def chromatic_index(g: MultiGraph, budget: int | None = None) -> int:
    """Least K admitting a proper edge-colouring, searching K = Delta, ..."""
    if not g.edges:
        raise InputError("chromatic index of an empty edge set is undefined")
    delta = g.delta()
    upper = delta + g.mu()
    for k in range(delta, upper + 1):
        full = frozenset(range(1, k + 1))
        outcome = solve_list(g, {eid: full for eid in g.edge_ids},
                             budget=budget)
        if outcome.status == BUDGET:
            raise InputError("node budget exceeded while computing chromatic index")
        if outcome.solved:
            return k
    raise AssertionError("chromatic index exceeded the Delta+mu bound")


# -- constructive fan colouring -----------------------------------------

def vizing_colour(g: MultiGraph) -> dict[EdgeId, int]:
    """Proper colouring with at most min(Delta+mu, floor(3*Delta/2)) colours.

    Constructive fan/alternating-path recolouring; no exhaustive search.
    Ambiguities resolve to the lowest colour and lowest edge id.
    """
    if not g.edges:
        return {}
    delta = g.delta()
    k = min(delta + g.mu(), max(3 * delta // 2, delta + 1))
    palette = list(range(1, k + 1))
    colour: dict[EdgeId, int] = {}
    at: list[set[int]] = [set() for _ in range(g.n)]

    def missing(v: int) -> list[int]:
        have = at[v]
        return [c for c in palette if c not in have]

    def assign(eid: EdgeId, c: int) -> None:
        old = colour.get(eid)
        u, v = g.endpoints(eid)
        if old is not None:
            at[u].discard(old)
            at[v].discard(old)
        colour[eid] = c
        at[u].add(c)
        at[v].add(c)

    def edge_with_colour(v: int, c: int) -> EdgeId:
        for eid, _ in g.incident(v):
            if colour.get(eid) == c:
                return eid
        raise AssertionError("colour recorded as present but not found")

    def swap_chain(start: int, a: int, b: int, anchor: int) -> bool:
        """Swap the a/b alternating chain from ``start`` unless it meets anchor.

        Precondition: a missing at start.  Returns True when swapped.
        """
        chain = []
        v, want = start, b
        while want in at[v]:
            eid = edge_with_colour(v, want)
            chain.append(eid)
            u1, u2 = g.endpoints(eid)
            v = u2 if u1 == v else u1
            want = a if want == b else b
        if v == anchor:
            return False
        touched = {start, v}
        for eid in chain:
            u1, u2 = g.endpoints(eid)
            touched.update((u1, u2))
            colour[eid] = a if colour[eid] == b else b
        for w in touched:
            at[w] = {colour[eid] for eid, _ in g.incident(w)
                     if eid in colour}
        return True

    def fold(x: int, fan: list[EdgeId], rim: list[int]) -> None:
        # Precondition: some colour is missing at both x and the last rim
        # vertex.  Shifts colours down the fan until the seed edge is done.
        while True:
            z = rim[-1]
            common = [c for c in missing(x) if c not in at[z]]
            new = common[0]
            old = colour.get(fan[-1])
            assign(fan[-1], new)
            if len(fan) == 1:
                return
            idx = next(i for i, y in enumerate(rim[:-1]) if old not in at[y])
            del fan[idx + 1:]
            del rim[idx + 1:]

    def run_fan(seed: EdgeId, x: int, y0: int) -> None:
        fan = [seed]
        rim = [y0]
        in_fan = {seed}
        rim_missing = set(missing(y0))
        miss_x = set(missing(x))
        while True:
            candidates = [(colour[eid], _id_sort_key(eid), eid, other)
                          for eid, other in g.incident(x)
                          if eid in colour and eid not in in_fan
                          and colour[eid] in rim_missing]
            if not candidates:
                raise AssertionError("fan construction stalled below the bound")
            _, _, nxt, z = min(candidates)
            fan.append(nxt)
            in_fan.add(nxt)
            rim.append(z)
            miss_z = set(missing(z))
            if miss_x & miss_z:
                fold(x, fan, rim)
                return
            hit = None
            for i, y in enumerate(rim[:-1]):
                if y != z and (set(missing(y)) & miss_z):
                    hit = i
                    break
            if hit is not None:
                yi = rim[hit]
                a = min(set(missing(yi)) & miss_z)
                b = min(miss_x)
                if swap_chain(yi, a, b, x):
                    del fan[hit + 1:]
                    del rim[hit + 1:]
                    fold(x, fan, rim)
                else:
                    if not swap_chain(z, a, b, x):
                        raise AssertionError(
                            "both alternating chains reached the fan anchor")
                    fold(x, fan, rim)
                return
            rim_missing |= miss_z

    for eid, u, v in g.edges:
        common = [c for c in palette if c not in at[u] and c not in at[v]]
        if common:
            assign(eid, common[0])
            continue
        x, y = (u, v) if g.degree(u) <= g.degree(v) else (v, u)
        run_fan(eid, x, y)

    if not is_proper(g, colour):
        raise AssertionError("fan colouring produced an improper colouring")
    if len(colour) != len(g.edges):
        raise AssertionError("fan colouring left edges uncoloured")
    return colour
