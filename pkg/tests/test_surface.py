from fractions import Fraction as F

import pytest

from coverball import fixtures
from coverball.linalg import Echelon
from coverball.surface import (SurfaceError, TriSurface, capturing_test,
                               format_surface, parse_surface, prune_to_iso,
                               subgraph_betti, subgraph_length, _pair)


def test_tetrahedron_is_a_sphere():
    s = fixtures.tetrahedron()
    assert s.genus == 0
    assert len(s.vertices) == 4 and len(s.edges) == 6 and len(s.faces) == 4
    assert len(s.homology().free_cols) == 0


def test_torus7_counts_and_genus():
    s = fixtures.torus7()
    assert (len(s.vertices), len(s.edges), len(s.faces)) == (7, 21, 14)
    assert s.genus == 1
    assert len(s.homology().free_cols) == 2


def test_genus2_counts_and_genus():
    s = fixtures.genus2()
    assert (len(s.vertices), len(s.edges), len(s.faces)) == (11, 39, 26)
    assert s.genus == 2
    assert len(s.homology().free_cols) == 4


def test_non_surface_rejected():
    with pytest.raises(SurfaceError):
        # edge shared by three faces
        TriSurface.build([(0, 1, 2), (0, 1, 3), (0, 1, 4), (2, 3, 4),
                          (2, 3, 0), (2, 4, 1), (3, 4, 1)], {})


def test_heron_area_unit_torus():
    s = fixtures.torus7()
    import math
    assert abs(s.total_area() - 14 * math.sqrt(3) / 4) < 1e-12


def test_distances_symmetric_triangle_inequality():
    s = fixtures.torus7()
    d = {v: s.distances_from(v) for v in s.vertices}
    for a in s.vertices:
        for b in s.vertices:
            assert d[a][b] == d[b][a]
            for c in s.vertices:
                assert d[a][c] <= d[a][b] + d[b][c]


def test_subdivision_preserves_distances():
    s = fixtures.torus7()
    sub = fixtures.subdivide(s)
    d0 = s.distances_from(0)
    d1 = sub.distances_from(0)
    for v in s.vertices:
        assert d0[v] == d1[v]


def test_scale_surface():
    s = fixtures.scale_surface(fixtures.torus7(), F(1, 4))
    assert all(l == F(1, 4) for l in s.edge_lengths.values())
    assert s.genus == 1


# ---------------------------------------------------------------------------
# homology and capturing

def torus_loop_pair(s):
    # 0-1-2-...-0 by step 1 and by step 2 are independent torus loops
    a = [(i, (i + 1) % 7) for i in range(7)]
    b = [(0, 2), (2, 4), (4, 6), (6, 1), (1, 3), (3, 5), (5, 0)]
    return {_pair(u, w) for (u, w) in a} | {_pair(u, w) for (u, w) in b}


def test_torus_generating_pair_rank2():
    s = fixtures.torus7()
    sub = torus_loop_pair(s)
    ok, rank = capturing_test(s, sub)
    assert ok and rank == 2


def test_torus_single_loop_fails():
    s = fixtures.torus7()
    sub = {_pair(i, (i + 1) % 7) for i in range(7)}
    ok, rank = capturing_test(s, sub)
    assert not ok and rank == 1


def test_genus2_four_loops_and_drop_one():
    s = fixtures.genus2()
    # two non-face triangles per handle, supported away from the gluing
    loops = [[2, 4, 6], [2, 5, 6], [9, 11, 13], [9, 12, 13]]
    sets = [{_pair(a, b) for a, b in zip(l, l[1:] + l[:1])} for l in loops]
    union = set().union(*sets)
    ok, rank = capturing_test(s, union)
    assert ok and rank == 4
    for k in range(4):
        dropped = set().union(*(sets[j] for j in range(4) if j != k))
        ok, rank = capturing_test(s, dropped)
        assert not ok and rank == 3


@pytest.mark.parametrize("fix", [fixtures.torus7, fixtures.genus2])
def test_prune_full_skeleton_to_iso(fix):
    s = fix()
    sub = prune_to_iso(s, set(s.edges))
    ok, rank = capturing_test(s, sub)
    assert ok and rank == 2 * s.genus
    assert subgraph_betti(sub) == 2 * s.genus


def test_modular_backend_agrees_with_exact():
    big = fixtures.subdivide(fixtures.torus7(), 2)   # 336 edges exact...
    assert len(big.edges) == 336
    bigger = fixtures.subdivide(big)                  # 1344 edges -> mod p
    assert len(bigger.homology().free_cols) == 2
    sub = prune_to_iso(bigger, set(bigger.edges))
    ok, rank = capturing_test(bigger, sub)
    assert ok and rank == 2


def test_echelon_rank_and_membership():
    e = Echelon()
    assert e.add({0: F(1), 2: F(2)})
    assert e.add({2: F(1)})
    assert not e.add({0: F(2), 2: F(4)})
    assert e.rank == 2
    # residual reduction continues past pivotless columns
    r = e.reduce({0: F(1), 1: F(5), 2: F(3)})
    assert 0 not in r and 2 not in r and r[1] == F(5)


def test_surface_round_trip():
    for fix in (fixtures.torus7, fixtures.genus2):
        text = format_surface(fix())
        assert format_surface(parse_surface(text)) == text


def test_subgraph_length():
    s = fixtures.torus7()
    sub = {_pair(i, (i + 1) % 7) for i in range(7)}
    assert subgraph_length(s, sub) == 7
