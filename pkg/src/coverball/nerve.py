"""Nerve graphs of ball packings and the surface-to-graph pipeline.

A maximal system of disjoint radius-r0 balls gives a nerve graph with
quarter-length edges mapping into the surface by shortest paths; pruning
it to a homology isomorphism bounds the minimal capturing length.  The
pipeline chains this bound through the witness-vertex machinery down to
the hyperbolic-area comparison, reporting every inequality as a margin.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import cover, surfballs, witness
from .graphs import Edge, GraphError, MetricGraph, betti, girth, scale
from .surface import (SurfaceError, TriSurface, _pair, capturing_test,
                      subgraph_length, subgraph_metric_graph)

DEFAULT_R0 = Fraction(1, 32)
DEFAULT_EPS = Fraction(1, 64)


@dataclass
class NerveReport:
    r0: Fraction
    eps: Fraction
    centers: list[int]
    nerve: MetricGraph
    phi_paths: dict[tuple[int, int], list[int]]     # nerve edge -> vertex path
    center_distances: dict[tuple[int, int], Fraction]
    ball_areas: list[float]
    precondition_ok: bool                           # every r0-ball area >= r0^2/4
    packing_bound_ok: bool                          # |I| <= 2^12 * area
    non_expansion_ok: bool                          # every phi path <= 1/4
    image_edges: set = field(default_factory=set)
    image_captures: bool = False
    image_rank: int = 0
    pruned_nerve_edges: list[tuple[int, int]] = field(default_factory=list)
    pruned_image_edges: set = field(default_factory=set)
    pruned_length: Fraction = Fraction(0)           # length of the pruned nerve
    length_bound_ok: bool = False                   # length <= (v-1+2g)/4
    checks: dict = field(default_factory=dict)


def _shortest_path(s: TriSurface, a: int, b: int) -> tuple[Fraction, list[int]]:
    g = s.skeleton()
    dist = {a: Fraction(0)}
    par = {a: None}
    heap = [(Fraction(0), a)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        if v == b:
            break
        for e in sorted(g.incident(v), key=lambda e: e.id):
            u = e.other(v)
            nd = d + e.length
            if u not in dist or nd < dist[u]:
                dist[u] = nd
                par[u] = v
                heapq.heappush(heap, (nd, u))
    path = [b]
    while par[path[-1]] is not None:
        path.append(par[path[-1]])
    return dist[b], path[::-1]


def nerve_graph(s: TriSurface, r0: Fraction | str = DEFAULT_R0,
                eps: Fraction | str = DEFAULT_EPS) -> NerveReport:
    """Greedy farthest-point packing and its nerve, with all side checks.

    Centers are vertices at pairwise distance > 2*r0 such that every vertex
    lies within 2*r0 of a center; nerve edges join centers at distance at
    most 4*r0 + 2*eps and carry length 1/4.
    """
    r0 = Fraction(r0)
    eps = Fraction(eps)
    if r0 <= 0 or eps <= 0:
        raise SurfaceError("r0 and eps must be positive")
    if 4 * r0 + 2 * eps >= Fraction(1, 4):
        raise SurfaceError("slack constraint violated: need 4*r0 + 2*eps < 1/4")

    verts = sorted(s.vertices)
    centers = [verts[0]]
    dists = {verts[0]: s.distances_from(verts[0])}
    mind = dict(dists[verts[0]])
    while True:
        far = max(verts, key=lambda v: (mind[v], -v))
        if mind[far] <= 2 * r0:
            break
        centers.append(far)
        dists[far] = s.distances_from(far)
        for v in verts:
            if dists[far][v] < mind[v]:
                mind[v] = dists[far][v]

    reach = 4 * r0 + 2 * eps
    cdist = {}
    phi = {}
    nerve_edges = []
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            d = dists[centers[i]][centers[j]]
            if d <= reach:
                cdist[(i, j)] = d
                _, path = _shortest_path(s, centers[i], centers[j])
                phi[(i, j)] = path
                nerve_edges.append((i, j))

    quarter = Fraction(1, 4)
    nerve = MetricGraph(frozenset(range(len(centers))),
                        tuple(Edge(k, i, j, quarter)
                              for k, (i, j) in enumerate(nerve_edges)))

    areas = [surfballs.ball(s, p, r0).area(s) for p in centers]
    min_area = float(r0) ** 2 / 4.0
    precondition_ok = all(a >= min_area for a in areas)
    total = s.total_area()
    packing_ok = len(centers) <= (1 << 12) * total
    non_exp = all(cdist[e] <= quarter for e in nerve_edges)

    def image_of(edge_subset):
        out = set()
        for e in edge_subset:
            path = phi[e]
            out |= {_pair(a, b) for a, b in zip(path, path[1:])}
        return out

    image = image_of(nerve_edges)
    if s.genus > 0 and image:
        captures, rank = capturing_test(s, image)
    else:
        captures, rank = (s.genus == 0), 0

    rep = NerveReport(r0, eps, centers, nerve, phi, cdist, areas,
                      precondition_ok, packing_ok, non_exp,
                      image_edges=image, image_captures=captures,
                      image_rank=rank)

    if captures and s.genus > 0:
        pruned = list(nerve_edges)
        changed = True
        while changed:
            changed = False
            for e in sorted(pruned):
                trial = [x for x in pruned if x != e]
                ok, _ = capturing_test(s, image_of(trial)) if trial else (False, 0)
                if ok:
                    pruned = trial
                    changed = True
        rep.pruned_nerve_edges = pruned
        rep.pruned_image_edges = image_of(pruned)
        rep.pruned_length = quarter * len(pruned)
        bound = Fraction(len(centers) - 1 + 2 * s.genus, 4)
        rep.length_bound_ok = rep.pruned_length <= bound
        rep.checks["length_bound"] = {"length": rep.pruned_length, "bound": bound}
    rep.checks["packing"] = {"count": len(centers),
                             "area_bound": (1 << 12) * total}
    rep.checks["genus_count_bound"] = {
        "count": len(centers), "bound": 2 * s.genus - 1,
        "ok": len(centers) <= 2 * s.genus - 1}
    return rep


# ---------------------------------------------------------------------------
# closed-form anchors

def hyperbolic_area_lower_bound(R: float) -> float:
    """(1/(4*pi*ln2)) * V_H2(R*ln2), the target area bound."""
    return cover.hyperbolic_ball_area(R * math.log(2)) / (4.0 * math.pi * math.log(2))


def coarea_closed_form(R: float) -> float:
    """(1/2) * integral_0^R sinh(r ln2) dr, evaluated exactly."""
    return (math.cosh(R * math.log(2)) - 1.0) / (2.0 * math.log(2))


def area_shrink_factor(a: float) -> float:
    """Shrink factor c with a*V_H2(R) >= V_H2(R*c): c = sqrt(min(a, 1))."""
    if a <= 0:
        raise GraphError("shrink factor input must be positive")
    return math.sqrt(min(a, 1.0))


def shrink_factor_grid_check(a: float, radii) -> dict:
    c = area_shrink_factor(a)
    rows = []
    worst = float("inf")
    for R in radii:
        lhs = a * cover.hyperbolic_ball_area(R)
        rhs = cover.hyperbolic_ball_area(R * c)
        rows.append({"R": R, "lhs": lhs, "rhs": rhs, "margin": lhs - rhs})
        worst = min(worst, lhs - rhs)
    return {"a": a, "c": c, "rows": rows, "worst_margin": worst,
            "ok": worst >= -1e-9}


def rescaling_lambda_search(lam_grid, radii) -> dict:
    """Smallest grid lambda with (1/(4 pi lam^2 ln2)) V_H2(lam R ln2) >=
    V_H2(R) on the whole R grid, plus the induced area ratio delta."""
    radii = list(radii)
    if not radii:
        raise GraphError("empty radius grid")
    results = []
    found = None
    for lam in lam_grid:
        if lam <= 0:
            raise GraphError("lambda grid entries must be positive")
        ok = True
        for R in radii:
            try:
                lhs = cover.hyperbolic_ball_area(lam * R * math.log(2)) \
                    / (4.0 * math.pi * lam * lam * math.log(2))
            except OverflowError:
                lhs = math.inf
            if lhs < cover.hyperbolic_ball_area(R):
                ok = False
                break
        results.append({"lam": lam, "ok": ok})
        if ok and found is None:
            found = lam
    out = {"results": results, "lam": found}
    if found is not None:
        out["delta"] = 1.0 / ((1 << 13) * math.pi * found * found)
    return out


# ---------------------------------------------------------------------------
# the staged pipeline

def surface_growth_pipeline(s: TriSurface, method: str = "nerve",
                      r_grid: int = 8, budget: int = cover.DEFAULT_BUDGET) -> dict:
    """Run the whole surface-to-growth chain, reporting each inequality.

    Every stage is diagnostic: hypothesis failures are recorded and the
    remaining stages still run, since the constructed capturing graph is
    only approximately minimal anyway.
    """
    g = s.genus
    report: dict = {"genus": g, "stages": []}
    area = s.total_area()
    hyp_area = 4.0 * math.pi * max(g - 1, 0)      # Gauss-Bonnet at genus g
    sys_len = None
    if g >= 1:
        try:
            sys_len, _ = surfballs.systole(s)
        except SurfaceError as exc:
            report["stages"].append({"stage": "systole", "status": "skipped",
                                     "reason": str(exc)})
    area_ok = g >= 2 and area <= (2 * g - 1) / float(1 << 12)
    sys_ok = sys_len is not None and sys_len >= Fraction(1, 2)
    report["stages"].append({
        "stage": "hypotheses", "area": area, "hyperbolic_area": hyp_area,
        "area_bound": (2 * g - 1) / float(1 << 12) if g >= 1 else 0.0,
        "area_ok": area_ok, "systole": sys_len, "systole_ok": sys_ok,
        "status": "pass" if (area_ok and sys_ok) else "hypothesis failed",
    })

    # capturing graph
    if g < 1:
        report["stages"].append({"stage": "capture", "status": "skipped",
                                 "reason": "genus 0 has trivial homology"})
        return report
    image_edges = None
    if method == "nerve":
        try:
            nrep = nerve_graph(s)
            if nrep.pruned_image_edges:
                image_edges = nrep.pruned_image_edges
            report["stages"].append({
                "stage": "nerve", "centers": len(nrep.centers),
                "precondition_ok": nrep.precondition_ok,
                "packing_bound_ok": nrep.packing_bound_ok,
                "non_expansion_ok": nrep.non_expansion_ok,
                "image_captures": nrep.image_captures,
                "length_bound_ok": nrep.length_bound_ok,
                "pruned_length": nrep.pruned_length,
                "status": "pass" if nrep.image_captures else "capture failed",
            })
        except SurfaceError as exc:
            report["stages"].append({"stage": "nerve", "status": "failed",
                                     "reason": str(exc)})
    if image_edges is None:
        length, image_edges = surfballs.capture_length(s, "greedy")
        report["stages"].append({"stage": "greedy-capture", "length": length,
                                 "status": "pass"})
    cap_len = subgraph_length(s, image_edges)
    length_bound = Fraction(2 * g - 1, 2)
    report["stages"].append({
        "stage": "length-bound", "length": cap_len, "bound": length_bound,
        "ok": cap_len <= length_bound,
        "status": "pass" if cap_len <= length_bound else "fail",
    })

    gamma = subgraph_metric_graph(s, image_edges)
    comp = max(gamma.components(), key=len)
    if len(comp) < len(gamma.vertices):
        from .graphs import induced_subgraph
        gamma = induced_subgraph(gamma, comp)
    b = betti(gamma)
    lam = Fraction(1, 6)
    hyp_len = lam * (3 * b - 3)
    scaled_by = Fraction(1)
    work = gamma
    if b >= 2 and gamma.total_length() > hyp_len:
        # diagnostic rescale so the witness machinery can still run
        scaled_by = hyp_len / gamma.total_length()
        work = scale(gamma, scaled_by)
    if b < 2:
        report["stages"].append({"stage": "witness", "status": "skipped",
                                 "reason": "captured graph has Betti < 2"})
        u = min(gamma.vertices)
        cert = None
    else:
        cert = witness.find_witness(work, lam)
        u = cert.witness
        report["stages"].append({
            "stage": "witness", "witness": u, "betti": b,
            "scaled_by": scaled_by, "factor": cert.factor,
            "status": "pass" if scaled_by == 1 else "hypothesis failed (rescaled)",
        })

    # boundary domination and projection identities on an R grid
    sys_cap = sys_len if sys_len is not None else Fraction(1)
    rmax = sys_cap / 2
    gamma_girth = girth(gamma)
    dist_u = s.distances_from(u)
    rows = []
    for k in range(1, r_grid + 1):
        r = rmax * k / r_grid
        bplus = surfballs.fill_to_bplus(s, surfballs.ball(s, u, r))
        boundary = bplus.boundary_length(s)
        # portion of the capturing graph inside the surface ball, with
        # partial edges measured by surface distances from u
        gamma_cap = Fraction(0)
        for (va, vb) in image_edges:
            l = s.edge_lengths[(va, vb)]
            covered = max(Fraction(0), r - dist_u[va]) \
                + max(Fraction(0), r - dist_u[vb])
            gamma_cap += min(l, covered)
        gball = cover.finite_ball_length(gamma, u, r)
        cover_ball = cover.ball_length(gamma, u, r, budget)
        proj_exact = (r <= gamma_girth / 2)
        # boundary domination is only argued for contractible filled balls:
        # check that B+ is a single disk (fan-counted Euler characteristic 1)
        comps = surfballs._face_components(s, set(bplus.faces),
                                           bplus.boundary_edges)
        contractible = (len(comps) == 1 and
                        surfballs.face_set_chi(s, comps[0],
                                               bplus.boundary_edges) == 1)
        rows.append({
            "R": r,
            "boundary_length": boundary,
            "gamma_in_ball": gamma_cap,
            "boundary_margin": boundary - gamma_cap,
            "gamma_ball": gball,
            "containment_margin": gamma_cap - gball,
            "cover_ball": cover_ball.total_length,
            "projection_exact": (gball == cover_ball.total_length) if proj_exact else None,
            "truncated": cover_ball.truncated,
            "contractible": contractible,
        })
    live = [row for row in rows if row["contractible"]]
    boundary_ok = all(row["boundary_margin"] >= 0 for row in live)
    containment_ok = all(row["containment_margin"] >= 0 for row in rows)
    projection_ok = all(row["projection_exact"] in (True, None) for row in rows)
    report["stages"].append({
        "stage": "ball-domination", "rows": rows, "rmax": rmax,
        "boundary_ok": boundary_ok, "containment_ok": containment_ok, "projection_ok": projection_ok,
        "status": "pass" if (boundary_ok and containment_ok and projection_ok) else "fail",
    })

    # coarea: integrate boundary lengths by trapezoid and compare targets
    rs = [Fraction(0)] + [row["R"] for row in rows]
    bs = [Fraction(0)] + [row["boundary_length"] for row in rows]
    integral = sum((rs[i + 1] - rs[i]) * (bs[i] + bs[i + 1]) / 2
                   for i in range(len(rs) - 1))
    R_final = float(rs[-1])
    ball_area_val = surfballs.ball(s, u, rs[-1]).area(s)
    target = hyperbolic_area_lower_bound(R_final)
    report["stages"].append({
        "stage": "coarea", "R": rs[-1],
        "integral": integral, "ball_area": ball_area_val,
        "target": target,
        "area_vs_target_margin": ball_area_val - target,
        "closed_form": coarea_closed_form(R_final),
        "status": "pass" if ball_area_val >= target else
                  "area below hyperbolic target",
    })
    return report
