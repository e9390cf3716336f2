from fractions import Fraction as F

import pytest

from coverball import fixtures, surfballs
from coverball.surface import capturing_test, subgraph_length


@pytest.fixture(scope="module")
def torus():
    return fixtures.torus7()


@pytest.fixture(scope="module")
def sub_torus():
    return fixtures.subdivide(fixtures.torus7())


@pytest.fixture(scope="module")
def g2():
    return fixtures.genus2()


# ---------------------------------------------------------------------------
# contractibility and systole

def test_face_cycles_are_contractible(torus):
    for f in torus.faces:
        assert surfballs.is_contractible_cycle(torus, list(f))


def test_essential_cycle_detected(torus):
    assert not surfballs.is_contractible_cycle(torus, [2, 4, 6])


def test_systole_torus_exhaustive_oracle(torus):
    length, cyc = surfballs.systole(torus, mode="exact")
    assert length == 3
    assert not surfballs.is_contractible_cycle(torus, cyc)
    # oracle: sweep every simple cycle up to length 3 and take the shortest
    # non-contractible one
    best = None
    for l, vs in surfballs._enumerate_simple_cycles(torus, F(3)):
        if not surfballs.is_contractible_cycle(torus, vs):
            best = l if best is None else min(best, l)
    assert best == length


def test_systole_modes_agree(torus, sub_torus, g2):
    for s in (torus, sub_torus, g2):
        exact, _ = surfballs.systole(s, mode="exact")
        hom, _ = surfballs.systole(s, mode="homological")
        auto, _ = surfballs.systole(s, mode="auto")
        assert exact == hom == auto == 3


def test_systole_scales(torus):
    s = fixtures.scale_surface(torus, F(1, 4))
    assert surfballs.systole(s)[0] == F(3, 4)


def test_systole_at_dominates_free(torus):
    free, _ = surfballs.systole(torus)
    for x in torus.vertices:
        based, cyc = surfballs.systole_at(torus, x)
        assert based >= free
        assert x in cyc


# ---------------------------------------------------------------------------
# balls and filling

def test_ball_area_monotone(torus):
    areas = [surfballs.ball(torus, 0, F(k, 4)).area(torus) for k in range(1, 9)]
    assert all(a <= b + 1e-12 for a, b in zip(areas, areas[1:]))


def test_fill_never_shrinks_area_or_adds_boundary(torus, g2):
    for s in (torus, g2):
        for x in (0, 1):
            for k in range(1, 7):
                b = surfballs.ball(s, x, F(k, 4))
                bp = surfballs.fill_to_bplus(s, b)
                assert bp.area(s) >= b.area(s) - 1e-12
                assert len(surfballs.boundary_components(s, bp)) <= \
                    len(surfballs.boundary_components(s, b))
                assert b.faces <= bp.faces


def test_saturated_ball_has_no_boundary(torus):
    b = surfballs.ball(torus, 0, F(4))
    assert len(b.faces) == len(torus.faces)
    assert not b.boundary_edges


# ---------------------------------------------------------------------------
# capture

def test_exact_capture_matches_enumeration_oracle(torus):
    L, edges = surfballs.capture_length(torus, mode="exact")
    L_oracle, _ = surfballs._capture_by_cycle_pairs(torus)
    assert L == L_oracle == 5
    ok, rank = capturing_test(torus, edges)
    assert ok and rank == 2
    assert subgraph_length(torus, edges) == L


@pytest.mark.parametrize("x", [0, 3, 6])
def test_exact_based_capture_matches_oracle(torus, x):
    L, edges = surfballs.capture_length(torus, mode="exact", x=x)
    L_oracle, _ = surfballs._capture_by_cycle_pairs(torus, x=x)
    assert L == L_oracle
    assert x in {v for e in edges for v in e}
    ok, _ = capturing_test(torus, edges)
    assert ok


def test_exact_capture_stable_under_subdivision(sub_torus):
    L, edges = surfballs.capture_length(sub_torus, mode="exact")
    assert L == 5
    ok, rank = capturing_test(sub_torus, edges)
    assert ok and rank == 2


def test_greedy_capture_upper_bounds_exact(torus):
    Lg, eg = surfballs.capture_length(torus, mode="greedy")
    Le, _ = surfballs.capture_length(torus, mode="exact")
    assert Lg >= Le
    ok, _ = capturing_test(torus, eg)
    assert ok


def test_greedy_capture_genus2(g2):
    L, edges = surfballs.capture_length(g2, mode="greedy")
    ok, rank = capturing_test(g2, edges)
    assert ok and rank == 4


# ---------------------------------------------------------------------------
# height and the small-ball window

def test_height_nonnegative_and_bounded(sub_torus):
    for x in (0, 7, 27):
        h = surfballs.height(sub_torus, x)
        assert h["Hpp"] >= 0
        assert h["Hpp"] <= h["dist_bound"]


def test_window_check_passes_on_refined_torus(sub_torus):
    h = surfballs.height(sub_torus, 7)
    rep = surfballs.small_ball_area_check(sub_torus, 7, F(5, 4), hpp=h["Hpp"])
    assert rep["status"] == "pass"


def test_window_check_inconclusive_outside(sub_torus):
    rep = surfballs.small_ball_area_check(sub_torus, 0, F(2))   # 2 >= sys/2 = 3/2
    assert rep["status"] == "inconclusive"
