import random
from fractions import Fraction

from coverball.graphs import MetricGraph


def brute_force_cover_ball(g: MetricGraph, base: int, R: Fraction) -> Fraction:
    """Independent oracle: expand non-backtracking directed paths one tree
    edge at a time, no aggregation, and sum clipped lengths."""
    R = Fraction(R)
    departures: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    head = {}
    length = {}
    for e in g.edges:
        head[(e.id, 0)] = e.w
        head[(e.id, 1)] = e.u
        length[(e.id, 0)] = length[(e.id, 1)] = e.length
        departures[e.u].append((e.id, 0))
        departures[e.w].append((e.id, 1))
    total = Fraction(0)
    stack = [(t, Fraction(0)) for t in departures[base]]
    while stack:
        t, d = stack.pop()
        l = length[t]
        total += min(l, R - d)
        if d + l < R:
            rev = (t[0], 1 - t[1])
            for s in departures[head[t]]:
                if s != rev:
                    stack.append((s, d + l))
    return total


def random_bounded_instance(b: int, total_bound: Fraction, seed: int,
                            denom: int = 64) -> MetricGraph:
    """Random connected multigraph of Betti number b whose edge lengths are
    multiples of 1/denom and whose total length is at most ``total_bound``."""
    rng = random.Random(seed)
    nv = rng.randint(2, 2 * b)
    verts = list(range(nv))
    edges = []
    eid = 0
    order = verts[1:]
    rng.shuffle(order)
    joined = [verts[0]]
    for v in order:
        edges.append([eid, rng.choice(joined), v])
        eid += 1
        joined.append(v)
    for _ in range(b):
        edges.append([eid, rng.choice(verts), rng.choice(verts)])
        eid += 1
    hi = int(Fraction(total_bound) / len(edges) * denom)
    if hi < 1:
        raise ValueError("bound too small for this denominator")
    full = [(i, u, w, Fraction(rng.randint(1, hi), denom))
            for (i, u, w) in edges]
    return MetricGraph.build(verts, full)
