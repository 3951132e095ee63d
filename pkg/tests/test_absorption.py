import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcc.absorption import (
    AbsorberFamily,
    absorb_paths,
    absorbs,
    build_absorber_family,
    build_absorbing_cycle,
    enumerate_absorbers_edges,
    enumerate_absorbers_vertex,
    is_absorbing_for_edges,
    is_absorbing_for_vertex,
    iter_absorbers_vertex,
    join_edges,
    join_two_cycles,
    split_pieces,
)
from pcc.errors import SearchFailure
from pcc.generators import random_complete
from pcc.graph import EdgeColouredGraph, is_pc_cycle, is_pc_path

from conftest import coloured_graphs, rainbow_complete


def _brute_vertex(G, x):
    return {
        q
        for q in itertools.permutations([v for v in range(G.n) if v != x], 4)
        if is_pc_path(G, q) and is_pc_path(G, (q[0], q[1], x, q[2], q[3]))
    }


def _brute_edges(G, x1, x2, y1, y2):
    rest = [v for v in range(G.n) if v not in (x1, x2, y1, y2)]
    return {
        q
        for q in itertools.permutations(rest, 4)
        if is_pc_path(G, q) and is_pc_path(G, (q[0], q[1], x1, x2)) and is_pc_path(G, (y1, y2, q[2], q[3]))
    }


# -- predicates and enumeration ---------------------------------------------------------


def test_rainbow_k6_vertex_absorbers():
    G = rainbow_complete(6)
    found = enumerate_absorbers_vertex(G, 0)
    assert found and all(is_absorbing_for_vertex(G, a.path, 0) for a in found)
    assert {a.path for a in found} == _brute_vertex(G, 0)


def test_path_containing_target_is_not_absorbing():
    assert not is_absorbing_for_vertex(rainbow_complete(6), (0, 1, 2, 3), 2)


def test_splice_colour_clash_is_not_absorbing():
    # z2 x shares the colour of z1 z2, so z1 z2 x z3 z4 is not PC
    G = EdgeColouredGraph(5, [(0, 1, 0), (1, 2, 1), (2, 3, 2), (1, 4, 0), (4, 2, 3)])
    assert is_pc_path(G, (0, 1, 2, 3))
    assert not is_absorbing_for_vertex(G, (0, 1, 2, 3), 4)
    # z2 z3 sharing the colour of z2 x is harmless: that edge is not on the splice
    H = EdgeColouredGraph(5, [(0, 1, 0), (1, 2, 1), (2, 3, 2), (1, 4, 1), (4, 2, 3)])
    assert is_absorbing_for_vertex(H, (0, 1, 2, 3), 4)


def test_predicates_reject_bad_vertices():
    with pytest.raises(ValueError):
        is_absorbing_for_vertex(rainbow_complete(6), (0, 1, 1, 3), 4)
    with pytest.raises(ValueError):
        is_absorbing_for_vertex(rainbow_complete(6), (0, 1, 2, 3), 9)


def test_monochromatic_star_has_no_absorbers():
    G = EdgeColouredGraph(6, [(0, v, 0) for v in range(1, 6)] + [(1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 5, 4)])
    assert enumerate_absorbers_vertex(G, 0) == []


def test_limit_truncates():
    assert len(enumerate_absorbers_vertex(rainbow_complete(7), 0, limit=5)) == 5
    with pytest.raises(ValueError):
        enumerate_absorbers_vertex(rainbow_complete(7), 0, limit=0)


@settings(max_examples=30)
@given(coloured_graphs(min_n=5, max_n=8, max_colours=4), st.data())
def test_vertex_enumeration_matches_brute_force(G, data):
    x = data.draw(st.integers(0, G.n - 1))
    found = [a.path for a in enumerate_absorbers_vertex(G, x)]
    assert len(found) == len(set(found))
    assert set(found) == _brute_vertex(G, x)


@settings(max_examples=30)
@given(coloured_graphs(min_n=8, max_n=8, max_colours=4, complete=True), st.data())
def test_edge_enumeration_matches_brute_force(G, data):
    x1, x2, y1, y2 = data.draw(st.permutations(range(G.n)))[:4]
    found = [a.path for a in enumerate_absorbers_edges(G, x1, x2, y1, y2)]
    assert set(found) == _brute_edges(G, x1, x2, y1, y2)
    assert all(is_absorbing_for_edges(G, q, x1, x2, y1, y2) for q in found)


def test_rainbow_k8_edge_pairs_have_absorbers():
    G = rainbow_complete(8)
    for x1, x2, y1, y2 in [(0, 1, 2, 3), (7, 6, 5, 4), (1, 5, 3, 0)]:
        assert enumerate_absorbers_edges(G, x1, x2, y1, y2)


def test_monochromatic_end_blocks_edge_absorbers():
    K = rainbow_complete(7)
    edges = [(u, v, 999 if 3 in (u, v) else c) for u, v, c in K.edges()]
    G = EdgeColouredGraph(7, edges)
    assert enumerate_absorbers_edges(G, 0, 1, 2, 3) == []


def test_edge_enumeration_needs_edges():
    G = EdgeColouredGraph(6, [(0, 1, 0)])
    with pytest.raises(ValueError):
        enumerate_absorbers_edges(G, 0, 1, 2, 3)


def test_absorber_count_lower_bound():
    # minimum over all colour classes is at least (1/2 + 1/4) n
    n, eps = 40, 0.25
    G = random_complete(n, n, n - 1 - 30, seed=4)
    for x in (0, 17):
        count = sum(1 for _ in iter_absorbers_vertex(G, x))
        assert count >= eps**3 * n**4


# -- families --------------------------------------------------------------------------


def test_greedy_family_rainbow_k12():
    G = rainbow_complete(12)
    fam = build_absorber_family(G, 1)
    assert not fam.uncovered()
    verts = [v for p in fam.paths for v in p]
    assert len(verts) == len(set(verts))
    assert fam.recount(G) == fam.coverage


def test_coverage_beyond_quarter_fails():
    with pytest.raises(SearchFailure) as err:
        build_absorber_family(rainbow_complete(8), 3)
    assert err.value.stage == "absorber-family" and err.value.info["uncovered"]


def test_randomized_family_is_reproducible():
    G = random_complete(24, 24, 5, seed=1)
    a = build_absorber_family(G, 1, "randomized", gamma=2**12, seed=77, strict=False)
    b = build_absorber_family(G, 1, "randomized", gamma=2**12, seed=77, strict=False)
    assert a.paths == b.paths and a.coverage == b.coverage
    assert a.paths
    assert a.recount(G) == a.coverage
    verts = [v for p in a.paths for v in p]
    assert len(verts) == len(set(verts))
    for p in a.paths:
        assert any(absorbs(G, p, (v,)) for v in range(G.n) if v not in p)


def test_family_text_round_trip():
    G = random_complete(16, 16, 3, seed=2)
    fam = build_absorber_family(G, 1, strict=False, min_size=3)
    back = AbsorberFamily.from_text(fam.to_text())
    assert back.paths == fam.paths and back.coverage == fam.coverage and back.t == fam.t


def test_family_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_absorber_family(rainbow_complete(8), 0)
    with pytest.raises(ValueError):
        build_absorber_family(rainbow_complete(8), 1, mode="bogus")


# -- joins and absorbing cycles -------------------------------------------------------


def test_join_rainbow_k7():
    G = rainbow_complete(7)
    for x1, x2, y1, y2 in [(0, 1, 2, 3), (4, 2, 6, 0)]:
        z1, z2 = join_edges(G, (), x1, x2, y1, y2)
        assert is_pc_path(G, (x1, x2, z1, z2)) and is_pc_path(G, (z1, z2, y1, y2))
        assert (z1, z2) == min(join_two_cycles(G, (), x1, x2, y1, y2))


def test_join_two_isolated_edges_fails():
    G = EdgeColouredGraph(4, [(0, 1, 0), (2, 3, 1)])
    with pytest.raises(SearchFailure) as err:
        join_edges(G, (), 0, 1, 2, 3)
    assert err.value.stage == "join"


@settings(max_examples=40)
@given(coloured_graphs(min_n=6, max_n=9, max_colours=4, complete=True), st.data())
def test_join_splices_are_pc(G, data):
    x1, x2, y1, y2 = data.draw(st.permutations(range(G.n)))[:4]
    try:
        z1, z2 = join_edges(G, (), x1, x2, y1, y2)
    except SearchFailure:
        assert not join_two_cycles(G, (), x1, x2, y1, y2)
        return
    assert len({x1, x2, y1, y2, z1, z2}) == 6
    assert is_pc_path(G, (x1, x2, z1, z2, y1, y2))


def test_single_absorber_cycle_has_six_vertices():
    G = rainbow_complete(10)
    fam = build_absorber_family(G, 1, cap=1, strict=False)
    ac = build_absorbing_cycle(G, fam)
    assert len(ac.cycle) == 6 and is_pc_cycle(G, ac.cycle)
    assert ac.absorber(0) == fam.paths[0]


def _cycle_setup(seed, size=6, n=60):
    G = random_complete(n, n, n // 8, seed=seed)
    fam = build_absorber_family(G, 1, strict=False, min_size=size, cap=size)
    return G, build_absorbing_cycle(G, fam)


def test_absorbing_cycle_layout():
    G, ac = _cycle_setup(3)
    assert is_pc_cycle(G, ac.cycle)
    for j, p in enumerate(ac.family.paths):
        assert ac.absorber(j) == p


def test_absorb_nothing_and_one_vertex():
    G, ac = _cycle_setup(5)
    assert absorb_paths(G, ac, []) == ac.cycle
    rest = [v for v in range(G.n) if v not in ac.cycle]
    x = next(v for v in rest if any(absorbs(G, ac.absorber(j), (v,)) for j in range(len(ac.family))))
    out = absorb_paths(G, ac, [[x]])
    assert len(out) == len(ac.cycle) + 1 and is_pc_cycle(G, out)


def test_absorb_rejects_overlap():
    G, ac = _cycle_setup(5)
    with pytest.raises(ValueError):
        absorb_paths(G, ac, [[ac.cycle[0]]])


def test_split_pieces():
    assert split_pieces([(1, 2, 3), (4, 5, 6, 7), (8,)]) == [(1,), (2,), (3,), (4, 5, 6, 7), (8,)]


def _random_paths(G, free, rng, count):
    col = G.colour_rows()
    free = list(free)
    rng.shuffle(free)
    out = []
    pool = set(free)
    for _ in range(count):
        if not pool:
            break
        start = min(pool)
        path = [start]
        pool.discard(start)
        target = int(rng.integers(1, 9))
        while len(path) < target:
            nxt = [
                w
                for w in sorted(pool)
                if G.has_edge(path[-1], w) and (len(path) < 2 or col[path[-2]][path[-1]] != col[path[-1]][w])
            ]
            if not nxt:
                break
            w = nxt[int(rng.integers(len(nxt)))]
            path.append(w)
            pool.discard(w)
        out.append(path)
    return out


def test_absorb_paths_vertex_set_randomized():
    rng = np.random.default_rng(2024)
    setups = [_cycle_setup(s) for s in range(4)]
    successes = 0
    for trial in range(200):
        G, ac = setups[trial % len(setups)]
        free = [v for v in range(G.n) if v not in ac.cycle]
        paths = _random_paths(G, free, rng, int(rng.integers(0, 3)))
        try:
            out = absorb_paths(G, ac, paths)
        except SearchFailure:
            continue
        successes += 1
        assert is_pc_cycle(G, out)
        assert sorted(out) == sorted(set(ac.cycle) | {v for p in paths for v in p})
    assert successes >= 150


@pytest.mark.parametrize("n", [40, 60, 80])
def test_greedy_full_coverage_above_threshold(n):
    eps = 0.05
    t = math.ceil(8 * eps**2 * n / 81)
    G = random_complete(n, n, n - 1 - math.ceil((0.5 + eps) * n), seed=n)
    fam = build_absorber_family(G, t)
    assert not fam.uncovered() and fam.recount(G) == fam.coverage
