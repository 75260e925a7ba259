from fractions import Fraction

import pytest

from conftest import (
    all_rotation_systems,
    complete_bipartite,
    complete_graph,
    darts_at,
    exhaustive_min_genus,
    random_connected_multigraph,
    rotation_count,
)
from genuslab.embedding import (
    RotationSystem,
    SearchBudget,
    face_census_genus,
    genus_exact,
    planar,
    trace_faces,
)
from genuslab.errors import GenusLabError
from genuslab.families import exponential_cascade, zmod
from genuslab.fixtures import (
    diagonal_grid_torus_witness,
    k4_planar_witness,
    shuffle_torus_witness,
)
from genuslab.graphs import Edge, Multigraph, underlying_multigraph


def test_single_loop_trace():
    g = Multigraph(1, (Edge(0, 0),))
    w = trace_faces(g, RotationSystem(((0, 1),)))
    assert w.census == {1: 2}
    assert w.genus == 0


def test_k4_planar_rotation_exists():
    g = complete_graph(4)
    genera = [trace_faces(g, RotationSystem(o)).genus for o in all_rotation_systems(g)]
    assert min(genera) == 0
    w = k4_planar_witness()
    assert w.genus == 0 and w.census == {3: 4}


def test_k33_exhaustive_min_genus_is_one():
    g = complete_bipartite(3, 3)
    genera = [trace_faces(g, RotationSystem(o)).genus for o in all_rotation_systems(g)]
    assert len(genera) == 64
    assert min(genera) == 1
    assert all(x >= 1 for x in genera)


def test_trace_faces_invariants(rng):
    for _ in range(25):
        g = random_connected_multigraph(rng, max_edges=8)
        at = darts_at(g)
        orders = []
        for v in range(g.num_vertices):
            ds = at[v][:]
            rng.shuffle(ds)
            orders.append(tuple(ds))
        w = trace_faces(g, RotationSystem(tuple(orders)))
        assert sum(k * c for k, c in w.census.items()) == 2 * g.num_edges
        assert w.genus >= 0


def test_trace_faces_rejects_bad_rotations():
    g = Multigraph(2, (Edge(0, 1),))
    with pytest.raises(GenusLabError):
        trace_faces(g, RotationSystem(((0, 1), ())))  # dart at wrong vertex
    with pytest.raises(GenusLabError):
        trace_faces(g, RotationSystem(((0,), ())))  # dart missing
    with pytest.raises(GenusLabError):
        trace_faces(g, RotationSystem(((0,),)))  # vertex list too short


def test_genus_exact_classics():
    assert genus_exact(complete_graph(4)).upper == 0
    k5 = genus_exact(complete_graph(5))
    assert k5.exact and k5.upper == 1
    k6 = genus_exact(complete_graph(6))
    assert k6.exact and k6.upper == 1
    k33 = genus_exact(complete_bipartite(3, 3))
    assert k33.exact and k33.upper == 1
    tree = Multigraph(4, (Edge(0, 1), Edge(1, 2), Edge(1, 3)))
    t = genus_exact(tree)
    assert t.exact and t.upper == 0
    assert t.witness.genus == 0


def test_genus_exact_with_loops_and_parallels():
    mg = underlying_multigraph(zmod(5, [0, 1, 2]))  # K5 plus loops
    r = genus_exact(mg)
    assert r.exact and r.upper == 1
    assert r.witness.graph is mg


def test_genus_additive_over_components():
    g = Multigraph(
        9,
        tuple(Edge(u, v) for u in range(4) for v in range(u + 1, 4))
        + tuple(Edge(4 + u, 4 + v) for u in range(5) for v in range(u + 1, 5)),
    )
    r = genus_exact(g)
    assert r.exact and r.upper == 1  # K4 (planar) + K5 (toric)
    assert r.witness.genus == 1


def test_genus_exact_matches_exhaustive_oracle(rng):
    checked = 0
    while checked < 40:
        g = random_connected_multigraph(rng, max_edges=7)
        if rotation_count(g) > 20000:
            continue
        assert genus_exact(g).upper == exhaustive_min_genus(g)
        checked += 1


def test_genus_budget_interval():
    k7 = complete_graph(7)
    small = genus_exact(k7, SearchBudget(max_nodes=50))
    assert not small.exact
    assert small.budget_exhausted
    assert small.lower <= small.upper
    assert small.witness is not None and small.witness.genus == small.upper
    big = genus_exact(k7)
    assert big.exact and big.upper == 1
    # more budget never worsens the bounds
    assert big.lower >= small.lower
    assert big.upper <= small.upper


def test_planar_examples():
    assert planar(underlying_multigraph(zmod(5, [0, 1, 2])))[0] is False
    assert planar(underlying_multigraph(exponential_cascade(0)))[0] is False
    ok, w = planar(Multigraph(4, (Edge(0, 1), Edge(1, 2), Edge(1, 3))))
    assert ok and w.genus == 0


def test_planar_witness_with_loops_and_parallels():
    g = Multigraph(
        3,
        (
            Edge(0, 1, True),
            Edge(1, 0, True),
            Edge(1, 2, True),
            Edge(0, 0, True),
            Edge(2, 2, True),
        ),
    )
    ok, w = planar(g)
    assert ok and w.genus == 0
    assert sum(k * c for k, c in w.census.items()) == 2 * g.num_edges


def test_planar_agrees_with_genus_exact(rng):
    for _ in range(25):
        g = random_connected_multigraph(rng, max_edges=8)
        r = genus_exact(g)
        assert r.exact
        assert planar(g)[0] == (r.upper == 0)


def test_face_census_genus_values():
    assert face_census_genus(1, 1, {1: 2}) == 0
    # quadrilateral-faced two-letter automata are toric
    for n in (4, 9, 16):
        assert face_census_genus(2, n, {4: n}) == 1
    with pytest.raises(GenusLabError):
        face_census_genus(2, 4, {4: 3})
    assert isinstance(face_census_genus(3, 2, {1: 2, 10: 1}), Fraction)


def test_face_census_identity_on_random_rotations(rng):
    for k in (2, 3, 4, 5):
        a = zmod(k)
        mg = underlying_multigraph(a)
        at = darts_at(mg)
        for _ in range(8):
            orders = []
            for v in range(mg.num_vertices):
                ds = at[v][:]
                rng.shuffle(ds)
                orders.append(tuple(ds))
            w = trace_faces(mg, RotationSystem(tuple(orders)))
            assert face_census_genus(k, k, w.census) == Fraction(w.genus)


def test_torus_fixture_for_shuffle():
    w = shuffle_torus_witness(4, 4)
    assert w.genus == 1
    assert w.census == {4: 16}
    # and the same construction stays toric for other grid sizes
    assert shuffle_torus_witness(5, 4).genus == 1


def test_genus_additivity_matches_exhaustive_oracle():
    # two triangles sharing nothing: oracle over the disconnected graph
    g = Multigraph(
        6,
        (Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(3, 4), Edge(4, 5), Edge(3, 5)),
    )
    assert exhaustive_min_genus(g) == 0
    r = genus_exact(g)
    assert r.exact and r.upper == 0


def petersen_graph() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, tuple(Edge(u, v) for u, v in outer + spokes + inner))


def test_genus_exact_known_values():
    for g, want in (
        (complete_bipartite(4, 4), 1),
        (complete_bipartite(3, 5), 1),
        (complete_bipartite(4, 5), 2),
        (petersen_graph(), 1),
    ):
        r = genus_exact(g)
        assert r.exact and r.upper == want


def test_genus_exact_deterministic_for_fixed_budget():
    g = complete_graph(7)
    a = genus_exact(g, SearchBudget(max_nodes=3000))
    b = genus_exact(g, SearchBudget(max_nodes=3000))
    assert (a.lower, a.upper, a.exact, a.nodes_used) == (b.lower, b.upper, b.exact, b.nodes_used)
    assert a.witness.rotation == b.witness.rotation


def test_planar_triple_parallel_bundle():
    g = Multigraph(2, (Edge(0, 1, True), Edge(1, 0, True), Edge(0, 1, True)))
    ok, w = planar(g)
    assert ok and w.genus == 0
    assert w.census == {2: 3}  # theta graph: three nested bigons


def test_diagonal_grid_torus_witness():
    w = diagonal_grid_torus_witness(4, 3)
    assert w.genus == 1
    assert w.census == {3: 24}
    assert diagonal_grid_torus_witness(4, 4).genus == 1
