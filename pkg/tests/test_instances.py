import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from edgeext.core import InputError, MultiGraph, edges_cycle, edges_path
from edgeext.colouring import Palette, is_proper
from edgeext.exact import chromatic_index, extend
from edgeext.instances import (CLAIMS, FamilySpec, canonical_form,
                               compute_rho, enumerate_edge_sets,
                               enumerate_multigraphs,
                               enumerate_precolourings, generate,
                               random_distance_matching, verify)

from conftest import multigraphs


# -- families ------------------------------------------------------------

def test_subdivided_star_shape():
    g, pre, palette = generate(FamilySpec.subdivided_star(5))
    assert g.n == 11 and len(g.edges) == 10
    assert g.delta() == 5
    assert palette.k == 5
    assert len(pre) == 5 and set(pre.values()) == {1}
    # the precoloured edges are the pendants
    for eid in pre:
        u, v = g.endpoints(eid)
        assert min(g.degree(u), g.degree(v)) == 1


def test_chain_blocks_shape():
    g, pre, palette = generate(FamilySpec.chain_blocks(6, 2))
    assert g.n == 27
    assert g.delta() == 6 and palette.k == 6
    assert sorted(pre.values()) == [1, 1]
    with pytest.raises(InputError):
        generate(FamilySpec.chain_blocks(5, 2))
    with pytest.raises(InputError):
        generate(FamilySpec.chain_blocks(4, 0))


def test_shannon_triangle_shape():
    g, pre, palette = generate(FamilySpec.shannon_triangle(2, 2, 2))
    assert g.n == 3 and len(g.edges) == 6
    assert g.delta() == 4 and g.mu() == 2
    assert pre == {}


def test_multi_star_shape():
    g, pre, palette = generate(FamilySpec.multi_star(3, 2))
    assert g.delta() == 3
    assert palette.k == g.delta() + 2 - 1
    assert sorted(set(pre.values())) == [1, 2]
    assert is_proper(g, pre)


def test_unknown_family_rejected():
    with pytest.raises(InputError):
        generate(FamilySpec("no-such-family", ()))


# -- odd-set density -----------------------------------------------------

def test_rho_small_cases():
    assert compute_rho(edges_cycle(3)) == Fraction(3)
    assert compute_rho(edges_cycle(5)) == Fraction(5, 2)
    assert compute_rho(edges_path(3)) == Fraction(2)
    g, _, _ = generate(FamilySpec.shannon_triangle(2, 2, 2))
    assert compute_rho(g) == Fraction(6)
    with pytest.raises(InputError):
        compute_rho(MultiGraph(2, [(0, 0, 1)]))


@settings(max_examples=40)
@given(multigraphs(max_n=6, max_e=8))
def test_rho_lower_bounds_chromatic_index(g):
    # any proper colouring induces matchings, so chi' >= ceil(rho)
    if g.n < 3 or not g.edges:
        return
    rho = compute_rho(g)
    chi = chromatic_index(g)
    assert chi >= rho


# -- canonical forms -----------------------------------------------------

def permuted(g, perm):
    return MultiGraph(g.n, [(eid, perm[u], perm[v])
                            for eid, u, v in g.edges])


@settings(max_examples=60)
@given(multigraphs(max_n=6, max_e=8), st.randoms())
def test_canonical_form_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g) == canonical_form(permuted(g, perm))


def test_canonical_form_separates_non_isomorphic():
    path = edges_path(4)       # 3 edges
    star = MultiGraph(4, [(0, 0, 1), (1, 0, 2), (2, 0, 3)])
    assert canonical_form(path) != canonical_form(star)
    single = MultiGraph(2, [(0, 0, 1)])
    double = MultiGraph(2, [(0, 0, 1), (1, 0, 1)])
    assert canonical_form(single) != canonical_form(double)


# -- enumeration ---------------------------------------------------------

def brute_classes(n_max, e_max, mu_max, connected=True):
    seen = set()
    for n in range(2, n_max + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mults in itertools.product(range(mu_max + 1),
                                       repeat=len(pairs)):
            e = sum(mults)
            if not 1 <= e <= e_max:
                continue
            edges = []
            for (u, v), m in zip(pairs, mults):
                for _ in range(m):
                    edges.append((len(edges), u, v))
            g = MultiGraph(n, edges)
            if any(g.degree(v) == 0 for v in range(n)):
                continue
            if connected and not g.is_connected():
                continue
            seen.add(canonical_form(g))
    return seen


@pytest.mark.parametrize("n_max,e_max,mu_max", [(4, 4, 1), (3, 5, 3),
                                                (4, 5, 2)])
def test_enumeration_complete_and_duplicate_free(n_max, e_max, mu_max):
    got = [canonical_form(g)
           for g in enumerate_multigraphs(n_max, e_max, mu_max)]
    assert len(got) == len(set(got))
    assert set(got) == brute_classes(n_max, e_max, mu_max)


def test_enumeration_deterministic():
    a = [g.to_json_obj() for g in enumerate_multigraphs(4, 5, 2)]
    b = [g.to_json_obj() for g in enumerate_multigraphs(4, 5, 2)]
    assert a == b


def test_enumeration_respects_delta_max():
    for g in enumerate_multigraphs(6, 6, 2, delta_max=3):
        assert g.delta() <= 3


def test_enumeration_disconnected_mode():
    got = [canonical_form(g)
           for g in enumerate_multigraphs(4, 3, 1, connected_only=False)]
    assert len(got) == len(set(got))
    # contains the two-disjoint-edges graph
    two = MultiGraph(4, [(0, 0, 1), (1, 2, 3)])
    assert canonical_form(two) in got


# -- precolouring enumeration -------------------------------------------

def test_edge_sets_distance_filter():
    g = edges_path(4)  # edges 0,1,2 in a path
    all_sets = set(enumerate_edge_sets(g, t=0))
    assert len(all_sets) == 8
    matchings = set(enumerate_edge_sets(g, t=1))
    assert matchings == {(), (0,), (1,), (2,), (0, 2)}
    induced = set(enumerate_edge_sets(g, t=2))
    assert induced == {(), (0,), (1,), (2,)}


def test_precolourings_up_to_colour_permutation():
    g = edges_path(4)
    pal = Palette(3)
    reps = list(enumerate_precolourings(g, pal, t=1))
    # (): 1; singles: one rep each; {0,2}: same-or-different = 2 reps
    assert {():1}  # readability anchor
    count = {0: 0, 1: 0, 2: 0}
    for pre in reps:
        count[len(pre)] += 1
    assert count == {0: 1, 1: 3, 2: 2}
    for pre in reps:
        assert is_proper(g, pre)
    # without the quotient, singles come in 3 colours each
    full = list(enumerate_precolourings(g, pal, t=1,
                                        up_to_colour_permutation=False))
    count = {0: 0, 1: 0, 2: 0}
    for pre in full:
        count[len(pre)] += 1
    assert count[1] == 9


def test_random_distance_matching_properties():
    g = edges_cycle(9)
    rng = random.Random(2)
    pal = Palette(4)
    for _ in range(20):
        pre = random_distance_matching(g, 2, pal, rng)
        from edgeext.core import is_distance_matching
        assert is_distance_matching(g, pre.keys(), 2)
        assert all(c in pal for c in pre.values())


# -- the verification harness -------------------------------------------

def test_verify_rejects_unknown_claim():
    with pytest.raises(InputError):
        verify("no-such-claim", max_n=3, max_e=3)


def test_verify_passes_on_tiny_bounds():
    rep = verify("matching-extension", max_n=3, max_e=4, max_mu=2)
    assert rep.ok
    assert rep.graphs > 0 and rep.instances > 0
    obj = rep.to_json_obj(timestamp=False)
    assert obj["ok"] is True and obj["counterexample"] is None
    assert "elapsed_seconds" not in obj


def test_verify_finds_planted_counterexample():
    # weakening the palette by one rediscovers the triangle
    rep = verify("matching-extension", max_n=3, max_e=4, max_mu=2,
                 palette_offset=-1)
    assert not rep.ok
    cex = rep.counterexample
    g = MultiGraph.from_json_obj(cex["graph"])
    assert len(g.edges) == 3  # minimal in enumeration order
    # replay: genuinely unsolvable
    from edgeext.colouring import colouring_from_json_obj
    pre, pal = colouring_from_json_obj(g, cex["precolouring"])
    assert not extend(g, pre, pal).solved


def test_verify_counterexample_is_first_in_order():
    a = verify("matching-extension", max_n=3, max_e=4, max_mu=2,
               palette_offset=-1)
    b = verify("matching-extension", max_n=3, max_e=4, max_mu=2,
               palette_offset=-1)
    assert a.counterexample == b.counterexample


def test_verify_parallel_matches_serial():
    serial = verify("matching-extension", max_n=3, max_e=5, max_mu=2)
    parallel = verify("matching-extension", max_n=3, max_e=5, max_mu=2,
                      jobs=2)
    assert serial.ok == parallel.ok
    assert serial.instances == parallel.instances
    assert serial.graphs == parallel.graphs


def test_all_claims_run_on_tiny_bounds():
    for claim in sorted(CLAIMS):
        rep = verify(claim, max_n=3, max_e=3, max_mu=2, max_k=1)
        assert rep.ok, claim
