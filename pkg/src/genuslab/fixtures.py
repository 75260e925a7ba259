"""Canonical example files: the family automata, the 6-state planar automaton
for the 5-residue language, the 12-state planar emulator of the mod-6 sum
language (an icosahedron with antipodal residue labels), the torus embedding
of the 4x4 shuffle automaton, and a planar rotation of K4.

All constructions are deterministic, so emitted files are byte-stable.
"""

from __future__ import annotations

from itertools import permutations

from genuslab.dfa import Dfa, format_dfa, minimize
from genuslab.embedding import (
    EmbeddingWitness,
    RotationSystem,
    format_witness,
    trace_faces,
)
from genuslab.emulator import (
    EmulatorMap,
    format_emulator,
    lift_to_automaton,
    search_min_genus_emulator,
)
from genuslab.errors import GenusLabError
from genuslab.families import exponential_cascade, shuffle, two_letter_hierarchy, zmod
from genuslab.graphs import Edge, Multigraph, SimpleDigraph, simplify, underlying_multigraph


def icosahedron_adjacency() -> dict[int, list[int]]:
    """Poles 0 and 11, upper ring 1..5, lower ring 6..10."""
    edges = [(0, i) for i in range(1, 6)]
    edges += [(i, 1 + i % 5) for i in range(1, 6)]
    edges += [(5 + i, 6 + i % 5) for i in range(1, 6)]
    edges += [(11, i) for i in range(6, 11)]
    edges += [(i, 5 + i) for i in range(1, 6)]
    edges += [(i, 6 + i % 5) for i in range(1, 6)]
    adj: dict[int, list[int]] = {v: [] for v in range(12)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return {v: sorted(ns) for v, ns in adj.items()}


# antipodal vertex pairs share a residue class; every vertex then sees all
# five other classes among its neighbors
ICOSAHEDRON_CLASSES = {0: 0, 11: 0, 1: 1, 9: 1, 2: 2, 10: 2, 3: 3, 6: 3, 4: 4, 7: 4, 5: 5, 8: 5}


def z6_planar_emulator() -> EmulatorMap:
    """A 12-vertex planar tight emulator of the mod-6 sum language's digraph
    (the complete digraph on 6 vertices)."""
    base = simplify(underlying_multigraph(minimize(zmod(6))))
    adj = icosahedron_adjacency()
    arcs = []
    for v, ns in adj.items():
        for u in ns:
            arcs.append((v, u))
    total = SimpleDigraph(12, tuple(arcs))
    proj = tuple(ICOSAHEDRON_CLASSES[v] for v in range(12))
    return EmulatorMap(base, total, proj)


def z6_planar_automaton() -> Dfa:
    """The 12-state planar automaton for the mod-6 sum language, lifted from
    the icosahedral emulator."""
    return lift_to_automaton(z6_planar_emulator(), minimize(zmod(6)))


def zmod5_planar_automaton() -> Dfa:
    """The 6-state planar automaton computing the 5-residue language on
    letters {0,1,2}, found by the emulator search."""
    a_min = minimize(zmod(5, [0, 1, 2]))
    base = simplify(underlying_multigraph(a_min))
    result = search_min_genus_emulator(base, max_size=6, target_genus=0)
    if result.found is None:
        raise GenusLabError("internal error: the 6-state planar emulator was not found")
    return lift_to_automaton(result.found[0], a_min)


def shuffle_grid_coordinates(n: int, p: int) -> dict[tuple[int, int], int]:
    """State id of each (count0 mod n, count1 mod p) pair in the minimized
    shuffle automaton."""
    a = minimize(shuffle(n, p))
    coords = {}
    for i in range(n):
        for j in range(p):
            q = a.initial
            for _ in range(i):
                q = a.delta(q, "0")
            for _ in range(j):
                q = a.delta(q, "1")
            coords[(i, j)] = q
    return coords


def shuffle_torus_witness(n: int = 4, p: int = 4) -> EmbeddingWitness:
    """The flat-torus rotation of the shuffle automaton's grid multigraph:
    around every state, the two outgoing edges then the two incoming ones.
    All faces are quadrilaterals, so the genus is 1."""
    a = minimize(shuffle(n, p))
    mg = underlying_multigraph(a)
    out_edge = {}
    in_edge = {}
    for eid in range(mg.num_edges):
        q = eid // 2
        letter = "0" if eid % 2 == 0 else "1"
        out_edge[(q, letter)] = eid
        in_edge[(a.delta(q, letter), letter)] = eid
    orders = []
    for q in a.states:
        orders.append(
            (
                2 * out_edge[(q, "0")],
                2 * out_edge[(q, "1")],
                2 * in_edge[(q, "0")] + 1,
                2 * in_edge[(q, "1")] + 1,
            )
        )
    witness = trace_faces(mg, RotationSystem(tuple(orders)))
    if witness.genus != 1:
        raise GenusLabError("internal error: grid rotation is not toric")
    return witness


def diagonal_grid_torus_witness(n: int = 4, p: int = 3) -> EmbeddingWitness:
    """Flat-torus rotation of the product-sum automaton on generators
    (1,0), (0,1), (1,1): the diagonal triangulates each grid square, so all
    faces are triangles and the genus is 1."""
    from genuslab.families import zmod_product

    a = minimize(zmod_product([n, p], [(1, 0), (0, 1), (1, 1)]))
    mg = underlying_multigraph(a)
    east, north, diag = "(1,0)", "(0,1)", "(1,1)"
    out_edge = {}
    in_edge = {}
    for eid in range(mg.num_edges):
        q = eid // 3
        letter = a.alphabet[eid % 3]
        out_edge[(q, letter)] = eid
        in_edge[(a.delta(q, letter), letter)] = eid
    orders = []
    for q in a.states:
        orders.append(
            (
                2 * out_edge[(q, east)],
                2 * out_edge[(q, diag)],
                2 * out_edge[(q, north)],
                2 * in_edge[(q, east)] + 1,
                2 * in_edge[(q, diag)] + 1,
                2 * in_edge[(q, north)] + 1,
            )
        )
    witness = trace_faces(mg, RotationSystem(tuple(orders)))
    if witness.genus != 1:
        raise GenusLabError("internal error: diagonal grid rotation is not toric")
    return witness


def k4_planar_witness() -> EmbeddingWitness:
    """The lexicographically first planar rotation system of K4."""
    g = Multigraph(4, tuple(Edge(u, v) for u in range(4) for v in range(u + 1, 4)))
    at = {v: [d for d in range(2 * g.num_edges) if _vert(g, d) == v] for v in range(4)}
    choices = [[(at[v][0],) + perm for perm in permutations(at[v][1:])] for v in range(4)]
    for o0 in choices[0]:
        for o1 in choices[1]:
            for o2 in choices[2]:
                for o3 in choices[3]:
                    w = trace_faces(g, RotationSystem((o0, o1, o2, o3)))
                    if w.genus == 0:
                        return w
    raise GenusLabError("internal error: K4 has a planar embedding")


def _vert(g: Multigraph, d: int) -> int:
    e = g.edges[d >> 1]
    return e.u if d % 2 == 0 else e.v


def build_fixtures() -> dict[str, str]:
    """All fixture files as name -> content."""
    files = {
        "zmod5_012.dfa": format_dfa(zmod(5, [0, 1, 2])),
        "zmod6.dfa": format_dfa(zmod(6)),
        "shuffle_4_3.dfa": format_dfa(shuffle(4, 3)),
        "shuffle_4_4.dfa": format_dfa(shuffle(4, 4)),
        "two_letter_hierarchy_5.dfa": format_dfa(two_letter_hierarchy(5)),
        "cascade_0.dfa": format_dfa(exponential_cascade(0)),
        "zmod5_012_planar6.dfa": format_dfa(zmod5_planar_automaton()),
        "z6_planar12.emu": format_emulator(z6_planar_emulator()),
        "z6_planar12.dfa": format_dfa(z6_planar_automaton()),
        "shuffle_4_4_torus.wit": format_witness(shuffle_torus_witness(4, 4)),
        "diagonal_grid_4_3_torus.wit": format_witness(diagonal_grid_torus_witness(4, 3)),
        "k4_planar.wit": format_witness(k4_planar_witness()),
    }
    return files
