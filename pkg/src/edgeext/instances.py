"""Sharpness families, small-graph enumeration, odd-set density, and the
exhaustive verification harness.

The families are the classical tight examples: the subdivided star (whose
pendant matching cannot be extended without one extra colour), the chain
of diamond blocks separating two precoloured edges, the fat triangle, and
the subdivided star with fat pendant edges.  Enumeration streams are
deduplicated by an exact canonical form so exhaustive sweeps are both
complete and reproducible.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .core import (EdgeId, InputError, MultiGraph, _id_sort_key,
                   degree_stats, edge_distance)
from .colouring import Palette, colouring_to_json_obj, is_proper
from . import exact, kernels, gallai
from .exact import SolveOutcome, SOLVED


# -- families ------------------------------------------------------------

SUBDIVIDED_STAR = "subdivided-star"
CHAIN_BLOCKS = "chain-blocks"
SHANNON_TRIANGLE = "shannon-triangle"
MULTI_STAR = "multi-star"


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple

    @classmethod
    def subdivided_star(cls, s: int) -> "FamilySpec":
        return cls(SUBDIVIDED_STAR, (s,))

    @classmethod
    def chain_blocks(cls, delta: int, blocks: int) -> "FamilySpec":
        return cls(CHAIN_BLOCKS, (delta, blocks))

    @classmethod
    def shannon_triangle(cls, m1: int, m2: int, m3: int) -> "FamilySpec":
        return cls(SHANNON_TRIANGLE, (m1, m2, m3))

    @classmethod
    def multi_star(cls, s: int, k: int) -> "FamilySpec":
        return cls(MULTI_STAR, (s, k))


def generate(spec: FamilySpec) -> tuple[MultiGraph, dict[EdgeId, int], Palette]:
    if spec.family == SUBDIVIDED_STAR:
        return _subdivided_star(*spec.params)
    if spec.family == CHAIN_BLOCKS:
        return _chain_blocks(*spec.params)
    if spec.family == SHANNON_TRIANGLE:
        return _shannon_triangle(*spec.params)
    if spec.family == MULTI_STAR:
        return _multi_star(*spec.params)
    raise InputError(f"unknown family {spec.family!r}")


def _subdivided_star(s: int):
    """Star with s leaves, each leaf edge subdivided; pendants colour 1."""
    if s < 2:
        raise InputError("need at least 2 leaves")
    edges = []
    pre = {}
    for i in range(s):
        edges.append((i, 0, 1 + i))                # centre to midpoint
        edges.append((s + i, 1 + i, 1 + s + i))    # midpoint to leaf
        pre[s + i] = 1
    return MultiGraph(1 + 2 * s, edges), pre, Palette(s)


def _chain_blocks(delta: int, blocks: int):
    """Chain of diamond blocks between two pendant precoloured edges.

    Each block is a bipartite diamond: a connector vertex, an independent
    set of size delta/2, one of size delta-1, another of size delta/2,
    joined completely layer to layer; blocks share connector vertices.
    The two outermost edges are precoloured 1 and the palette is [delta].
    """
    if delta < 4 or delta % 2 != 0:
        raise InputError("delta must be even and at least 4")
    if blocks < 1:
        raise InputError("need at least one block")
    half = delta // 2
    mid = delta - 1
    eid = itertools.count()
    vid = itertools.count()
    edges = []

    def fresh(count):
        return [next(vid) for _ in range(count)]

    def join(layer_a, layer_b):
        for a in layer_a:
            for b in layer_b:
                edges.append((next(eid), a, b))

    end_left = fresh(1)
    connector = fresh(1)
    first_edge = next(eid)
    edges.append((first_edge, end_left[0], connector[0]))
    for _ in range(blocks):
        left = fresh(half)
        centre = fresh(mid)
        right = fresh(half)
        join(connector, left)
        join(left, centre)
        join(centre, right)
        connector = fresh(1)
        join(right, connector)
    end_right = fresh(1)
    last_edge = next(eid)
    edges.append((last_edge, connector[0], end_right[0]))
    g = MultiGraph(next(vid), edges)
    return g, {first_edge: 1, last_edge: 1}, Palette(delta)


def _shannon_triangle(m1: int, m2: int, m3: int):
    if min(m1, m2, m3) < 1:
        raise InputError("multiplicities must be positive")
    edges = []
    eid = 0
    for count, (u, v) in ((m1, (0, 1)), (m2, (1, 2)), (m3, (0, 2))):
        for _ in range(count):
            edges.append((eid, u, v))
            eid += 1
    g = MultiGraph(3, edges)
    return g, {}, Palette(g.delta() + g.mu())


def _multi_star(s: int, k: int):
    """Subdivided star whose pendant edges have multiplicity k.

    Each fat pendant is precoloured 1..k; palette [Delta+k-1].
    """
    if s < 2 or k < 1:
        raise InputError("need s >= 2 leaves and multiplicity k >= 1")
    edges = []
    pre = {}
    eid = 0
    for i in range(s):
        edges.append((eid, 0, 1 + i))
        eid += 1
    for i in range(s):
        for j in range(k):
            edges.append((eid, 1 + i, 1 + s + i))
            pre[eid] = j + 1
            eid += 1
    g = MultiGraph(1 + 2 * s, edges)
    return g, pre, Palette(g.delta() + k - 1)


# -- odd-set density -----------------------------------------------------

def compute_rho(g: MultiGraph) -> Fraction:
    """max over odd vertex sets T, |T| >= 3, of 2|E(G[T])| / (|T|-1)."""
    if g.n < 3:
        raise InputError("need at least 3 vertices")
    best = Fraction(0)
    verts = list(range(g.n))
    for size in range(3, g.n + 1, 2):
        for combo in itertools.combinations(verts, size):
            inside = set(combo)
            count = sum(1 for _, u, v in g.edges
                        if u in inside and v in inside)
            best = max(best, Fraction(2 * count, size - 1))
    return best


# -- canonical forms and enumeration -------------------------------------

def canonical_form(g: MultiGraph) -> tuple:
    """Exact canonical form: iterated neighbourhood refinement, with
    branching on the first non-singleton class until discrete."""
    n = g.n
    nbr: list[dict[int, int]] = [dict() for _ in range(n)]
    for _, u, v in g.edges:
        nbr[u][v] = nbr[u].get(v, 0) + 1
        nbr[v][u] = nbr[v].get(u, 0) + 1

    def refine(colours):
        while True:
            sig = []
            for v in range(n):
                around = tuple(sorted((colours[w], mult)
                                      for w, mult in nbr[v].items()))
                sig.append((colours[v], around))
            order = {s: i for i, s in enumerate(sorted(set(sig)))}
            new = tuple(order[sig[v]] for v in range(n))
            if new == colours:
                return new
            colours = new

    def form_of(colours):
        rank = {}
        for v in sorted(range(n), key=lambda v: colours[v]):
            rank[v] = len(rank)
        pairs = sorted((min(rank[u], rank[v]), max(rank[u], rank[v]))
                       for _, u, v in g.edges)
        return tuple(pairs)

    def search(colours):
        colours = refine(colours)
        classes: dict[int, list[int]] = {}
        for v in range(n):
            classes.setdefault(colours[v], []).append(v)
        target = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                target = classes[c]
                break
        if target is None:
            return form_of(colours)
        best = None
        for v in target:
            branched = tuple(c - n if w == v else c
                             for w, c in enumerate(colours))
            cand = search(branched)
            if best is None or cand < best:
                best = cand
        return best

    return (n, search(tuple(0 for _ in range(n))))


def enumerate_multigraphs(n_max: int, e_max: int, mu_max: int = 1,
                          connected_only: bool = True,
                          delta_max: int | None = None
                          ) -> Iterator[MultiGraph]:
    """All multigraphs within the bounds, one per isomorphism class.

    Graphs have no isolated vertices and at least one edge; the stream is
    produced level by level in edge count and is deterministic.
    """
    if n_max < 2 or e_max < 1 or mu_max < 1:
        raise InputError("bounds must allow at least a single edge")

    def ok_degrees(g):
        return delta_max is None or g.delta() <= delta_max

    level = {}
    seed = MultiGraph(2, [(0, 0, 1)])
    if ok_degrees(seed):
        level[canonical_form(seed)] = seed
    for e in range(1, e_max + 1):
        ordered = sorted(level.items())
        for _, g in ordered:
            yield g
        if e == e_max:
            break
        nxt = {}
        for _, g in ordered:
            for h in _augment(g, n_max, mu_max, connected_only):
                if not ok_degrees(h):
                    continue
                key = canonical_form(h)
                if key not in nxt:
                    nxt[key] = h
        level = nxt


def _augment(g: MultiGraph, n_max, mu_max, connected_only):
    e = len(g.edges)
    mults = {}
    for _, u, v in g.edges:
        pair = (u, v) if u < v else (v, u)
        mults[pair] = mults.get(pair, 0) + 1
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if mults.get((u, v), 0) < mu_max:
                yield MultiGraph(g.n, list(g.edges) + [(e, u, v)])
    if g.n < n_max:
        for u in range(g.n):
            yield MultiGraph(g.n + 1, list(g.edges) + [(e, u, g.n)])
    if not connected_only and g.n + 2 <= n_max:
        yield MultiGraph(g.n + 2, list(g.edges) + [(e, g.n, g.n + 1)])


def enumerate_edge_sets(g: MultiGraph, t: int = 1) -> Iterator[tuple]:
    """All edge sets of pairwise distance > t, in deterministic order.

    t=0 yields every subset; t=1 the matchings; t=2 induced matchings.
    """
    ids = sorted(g.edge_ids, key=_id_sort_key)
    conflict = {eid: set() for eid in ids}
    if t >= 1:
        for a, b in itertools.combinations(ids, 2):
            if edge_distance(g, a, b) <= t:
                conflict[a].add(b)
                conflict[b].add(a)

    def grow(start: int, chosen: tuple, blocked: set):
        yield chosen
        for i in range(start, len(ids)):
            eid = ids[i]
            if eid in blocked:
                continue
            yield from grow(i + 1, chosen + (eid,), blocked | conflict[eid])

    yield from grow(0, (), set())


def enumerate_precolourings(g: MultiGraph, palette: Palette, t: int = 1,
                            up_to_colour_permutation: bool = True
                            ) -> Iterator[dict[EdgeId, int]]:
    """All proper precolourings whose support has pairwise distance > t.

    With ``up_to_colour_permutation`` exactly one representative per
    colour-permutation orbit is produced (colours appear in first-use
    order along increasing edge id).
    """
    for subset in enumerate_edge_sets(g, t):
        yield from _colourings_of(g, subset, palette,
                                  up_to_colour_permutation)


def _colourings_of(g, subset, palette, up_to_permutation):
    if not subset:
        yield {}
        return
    adj = {eid: set(g.adjacent_edges(eid)) & set(subset) for eid in subset}

    def assign(i, current, max_used):
        if i == len(subset):
            yield dict(current)
            return
        eid = subset[i]
        top = min(palette.k, max_used + 1) if up_to_permutation else palette.k
        for c in range(1, top + 1):
            if any(current.get(f) == c for f in adj[eid]):
                continue
            current[eid] = c
            yield from assign(i + 1, current, max(max_used, c))
            del current[eid]

    yield from assign(0, {}, 0)


def random_distance_matching(g: MultiGraph, t: int, palette: Palette,
                             rng) -> dict[EdgeId, int]:
    """Random precoloured distance-t matching (proper by construction)."""
    ids = sorted(g.edge_ids, key=_id_sort_key)
    rng.shuffle(ids)
    chosen = []
    for eid in ids:
        if all(edge_distance(g, eid, f) > t for f in chosen):
            if rng.random() < 0.5 or not chosen:
                chosen.append(eid)
    return {eid: rng.randrange(1, palette.k + 1) for eid in chosen}


# -- verification harness ------------------------------------------------

CLAIMS = {
    "matching-extension": "precoloured matchings extend with Delta+mu colours",
    "matching-avoidance": "forbidden matchings are avoidable with Delta+mu colours",
    "distance3-extension": "distance-3 matchings extend with Delta+mu+1 colours",
    "bipartite-matching-extension": "bipartite matchings extend with Delta+1 colours",
    "shannon-matching-extension": "matchings extend with floor(3*Delta/2+1/2) colours",
    "subcubic-matching-extension": "subcubic matchings extend with 4 colours",
    "line-degree-extension": "palette Delta+k extensions fail only on the two known shapes",
    "bipartite-extension": "bipartite degree-k precolourings extend with Delta+k colours",
    "shannon-extension": "degree-k precolourings extend with floor((3*Delta+k)/2) colours",
}


@dataclass
class VerificationReport:
    claim: str
    bounds: dict
    graphs: int = 0
    instances: int = 0
    counterexample: dict | None = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json_obj(self, timestamp: bool = True) -> dict:
        obj = {"claim": self.claim,
               "description": CLAIMS.get(self.claim, ""),
               "bounds": self.bounds,
               "graphs": self.graphs,
               "instances": self.instances,
               "ok": self.ok,
               "counterexample": self.counterexample}
        if timestamp:
            obj["elapsed_seconds"] = round(self.elapsed, 3)
        return obj


def _vertex_precol_degree_ok(g, pre, k):
    count = {}
    for eid in pre:
        for v in g.endpoints(eid):
            count[v] = count.get(v, 0) + 1
            if count[v] > k:
                return False
    return True


def _check_graph(claim: str, g: MultiGraph, max_k: int,
                 palette_offset: int, budget) -> tuple[int, dict | None]:
    """Check one graph against the claim; (instances, counterexample)."""
    stats = degree_stats(g)
    checked = 0

    def bad(pre, palette, note):
        replay = exact.extend(g, pre, palette, budget=None)
        if replay.solved:
            raise AssertionError(
                "reported failure but exact replay found an extension")
        return {"graph": g.to_json_obj(),
                "precolouring": colouring_to_json_obj(pre, palette),
                "note": note}

    if claim in ("matching-extension", "distance3-extension"):
        t = 1 if claim == "matching-extension" else 3
        k = stats.delta + stats.mu + (0 if t == 1 else 1) + palette_offset
        if k < 1:
            return 0, None
        palette = Palette(k)
        for pre in enumerate_precolourings(g, palette, t=t):
            checked += 1
            if not exact.extend(g, pre, palette, budget=budget).solved:
                return checked, bad(pre, palette, "not extendable")
        return checked, None

    if claim == "matching-avoidance":
        k = stats.delta + stats.mu + palette_offset
        if k < 1:
            return 0, None
        palette = Palette(k)
        for subset in enumerate_edge_sets(g, t=1):
            for forb in _forbidden_assignments(subset, palette):
                checked += 1
                if not exact.avoid(g, forb, palette, budget=budget).solved:
                    replay = exact.avoid(g, forb, palette)
                    if replay.solved:
                        raise AssertionError("avoidance replay disagreed")
                    return checked, {
                        "graph": g.to_json_obj(),
                        "forbidden": {str(e): c for e, c in forb.items()},
                        "palette": palette.k,
                        "note": "not avoidable"}
        return checked, None

    if claim == "bipartite-matching-extension":
        try:
            side = kernels.find_bipartition(g)
        except InputError:
            return 0, None
        palette = Palette(stats.delta + 1)
        for pre in enumerate_precolourings(g, palette, t=1):
            checked += 1
            out = kernels.extend_bipartite(g, side, pre, 1, budget=budget)
            if not out.solved or not is_proper(g, out.colouring):
                return checked, bad(pre, palette, "bipartite extender failed")
        return checked, None

    if claim == "shannon-matching-extension":
        palette = Palette((3 * stats.delta + 1) // 2)
        for pre in enumerate_precolourings(g, palette, t=1):
            checked += 1
            out = kernels.extend_shannon(g, pre, 1, budget=budget)
            if not out.solved or not is_proper(g, out.colouring):
                return checked, bad(pre, palette, "shannon extender failed")
        return checked, None

    if claim == "subcubic-matching-extension":
        if stats.delta > 3:
            return 0, None
        palette = Palette(4)
        for pre in enumerate_precolourings(g, palette, t=1):
            checked += 1
            out = gallai.extend_subcubic(g, pre, budget=budget)
            if not out.solved or not is_proper(g, out.colouring):
                return checked, bad(pre, palette, "subcubic extender failed")
        return checked, None

    if claim == "line-degree-extension":
        for k in range(0, max_k + 1):
            if stats.line_delta > stats.delta + k:
                continue
            palette = Palette(stats.delta + k)
            for pre in enumerate_precolourings(g, palette, t=1):
                if not _vertex_precol_degree_ok(g, pre, k):
                    continue
                checked += 1
                out = gallai.extend_gallai(g, pre, k, budget=budget)
                if isinstance(out, gallai.ExceptionReport):
                    replay = exact.extend(g, pre, palette)
                    if replay.solved:
                        return checked, bad(pre, palette,
                                            "exception shape was extendable")
                    continue
                if not out.solved or not is_proper(g, out.colouring):
                    return checked, bad(pre, palette,
                                        "failed without an exception shape")
        return checked, None

    if claim == "bipartite-extension":
        try:
            side = kernels.find_bipartition(g)
        except InputError:
            return 0, None
        for k in range(1, max_k + 1):
            palette = Palette(stats.delta + k)
            for pre in enumerate_precolourings(g, palette, t=0):
                if not _vertex_precol_degree_ok(g, pre, k):
                    continue
                checked += 1
                out = kernels.extend_bipartite(g, side, pre, k, budget=budget)
                if not out.solved or not is_proper(g, out.colouring):
                    return checked, bad(pre, palette,
                                        "bipartite extender failed")
        return checked, None

    if claim == "shannon-extension":
        for k in range(1, max_k + 1):
            palette = Palette((3 * stats.delta + k) // 2)
            for pre in enumerate_precolourings(g, palette, t=0):
                if not _vertex_precol_degree_ok(g, pre, k):
                    continue
                checked += 1
                out = kernels.extend_shannon(g, pre, k, budget=budget)
                if not out.solved or not is_proper(g, out.colouring):
                    return checked, bad(pre, palette, "shannon extender failed")
        return checked, None

    raise InputError(f"unknown claim {claim!r}")


def _forbidden_assignments(subset, palette):
    """All colour assignments on the subset, up to colour permutation."""
    if not subset:
        yield {}
        return

    def assign(i, current, max_used):
        if i == len(subset):
            yield dict(current)
            return
        for c in range(1, min(palette.k, max_used + 1) + 1):
            current[subset[i]] = c
            yield from assign(i + 1, current, max(max_used, c))
            del current[subset[i]]

    yield from assign(0, {}, 0)


def _worker(args):
    graph_obj, claim, max_k, palette_offset, budget = args
    g = MultiGraph.from_json_obj(graph_obj)
    return _check_graph(claim, g, max_k, palette_offset, budget)


def verify(claim: str, max_n: int = 4, max_e: int = 7, max_mu: int = 2,
           max_k: int = 1, palette_offset: int = 0, jobs: int = 1,
           budget: int | None = None,
           delta_max: int | None = None) -> VerificationReport:
    """Exhaustively check a claim over all connected multigraphs in bounds.

    The first counterexample in enumeration order (fewest edges first) is
    recorded after an exact-solver replay confirms it.
    """
    if claim not in CLAIMS:
        raise InputError(f"unknown claim {claim!r}; known: "
                         + ", ".join(sorted(CLAIMS)))
    bounds = {"max_n": max_n, "max_e": max_e, "max_mu": max_mu,
              "max_k": max_k, "palette_offset": palette_offset}
    report = VerificationReport(claim=claim, bounds=bounds)
    start = time.monotonic()
    graphs = enumerate_multigraphs(max_n, max_e, max_mu,
                                   connected_only=True, delta_max=delta_max)
    if jobs <= 1:
        for g in graphs:
            report.graphs += 1
            checked, cex = _check_graph(claim, g, max_k, palette_offset,
                                        budget)
            report.instances += checked
            if cex is not None:
                report.counterexample = cex
                break
    else:
        import multiprocessing
        tasks = ((g.to_json_obj(), claim, max_k, palette_offset, budget)
                 for g in graphs)
        with multiprocessing.Pool(jobs) as pool:
            for checked, cex in pool.imap(_worker, tasks, chunksize=8):
                report.graphs += 1
                report.instances += checked
                if cex is not None:
                    report.counterexample = cex
                    pool.terminate()
                    break
    report.elapsed = time.monotonic() - start
    return report
