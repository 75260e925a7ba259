"""Shared oracles and generators.

The oracles here are deliberately independent of the search code they check:
exhaustive enumeration over all rotation systems for genus, and edge-simple
closed-walk enumeration for girth.
"""

from __future__ import annotations

import math
import random
from itertools import combinations, permutations

import pytest

from genuslab.embedding import RotationSystem, dart_vertex, trace_faces
from genuslab.graphs import Edge, Multigraph


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple(Edge(u, v) for u, v in combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, tuple(Edge(u, a + v) for u in range(a) for v in range(b)))


def darts_at(g: Multigraph) -> dict[int, list[int]]:
    at: dict[int, list[int]] = {v: [] for v in range(g.num_vertices)}
    for d in range(2 * g.num_edges):
        at[dart_vertex(g, d)].append(d)
    return at


def all_rotation_systems(g: Multigraph):
    """Every rotation system, with the first dart of each vertex pinned
    (cyclic orders, not linear ones)."""
    at = darts_at(g)

    def orders_for(v):
        ds = at[v]
        if not ds:
            yield ()
            return
        for perm in permutations(ds[1:]):
            yield (ds[0],) + perm

    def rec(v):
        if v == g.num_vertices:
            yield ()
            return
        for rest in rec(v + 1):
            for o in orders_for(v):
                yield (o,) + rest

    # build outer-to-inner to keep memory flat
    def rec2(v, acc):
        if v == g.num_vertices:
            yield tuple(acc)
            return
        for o in orders_for(v):
            acc.append(o)
            yield from rec2(v + 1, acc)
            acc.pop()

    yield from rec2(0, [])


def rotation_count(g: Multigraph) -> int:
    return math.prod(
        max(1, math.factorial(max(0, g.degree(v) - 1))) for v in range(g.num_vertices)
    )


def exhaustive_min_genus(g: Multigraph) -> int:
    best = None
    for orders in all_rotation_systems(g):
        w = trace_faces(g, RotationSystem(orders))
        if best is None or w.genus < best:
            best = w.genus
    return best


def brute_force_girth(g: Multigraph, max_len: int = 6):
    """Shortest edge-simple closed walk of length <= max_len, or None."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.num_vertices)}
    for eid, e in enumerate(g.edges):
        adj[e.u].append((eid, e.v))
        if not e.is_loop:
            adj[e.v].append((eid, e.u))
    best = None

    def dfs(start, v, used, length):
        nonlocal best
        if best is not None and length >= best:
            return
        for eid, w in adj[v]:
            if eid in used:
                continue
            if w == start:
                cand = length + 1
                if best is None or cand < best:
                    best = cand
                continue
            if length + 1 < max_len:
                dfs(start, w, used | {eid}, length + 1)

    for v in range(g.num_vertices):
        dfs(v, v, frozenset(), 0)
    return best


def random_connected_multigraph(rng: random.Random, max_edges: int = 7) -> Multigraph:
    """Random connected multigraph (loops and parallels included) with at
    most ``max_edges`` edges."""
    while True:
        n = rng.randint(2, 6)
        edges = []
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            edges.append((order[i], order[rng.randrange(i)]))
        extra = rng.randint(0, max_edges - len(edges))
        for _ in range(extra):
            edges.append((rng.randrange(n), rng.randrange(n)))
        rng.shuffle(edges)
        g = Multigraph(n, tuple(Edge(u, v) for u, v in edges[:max_edges]))
        if g.is_connected:
            return g


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
