
import pytest

from genuslab.dfa import equivalent, minimize
from genuslab.embedding import SearchBudget, planar
from genuslab.emulator import (
    EmulatorMap,
    compose_emulators,
    fibered_product,
    girth_preserved,
    identity_emulator,
    lift_cycle,
    lift_to_automaton,
    random_tight_emulator,
    search_min_genus_emulator,
    verify_emulator,
)
from genuslab.errors import GenusLabError
from genuslab.families import shuffle, two_letter_hierarchy, zmod
from genuslab.graphs import (
    CycleWitness,
    SimpleDigraph,
    digraph_multigraph,
    girth,
    simplify,
    underlying_multigraph,
)


def c_cycle(n: int) -> SimpleDigraph:
    return SimpleDigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def covering_6_over_3() -> EmulatorMap:
    return EmulatorMap(c_cycle(3), c_cycle(6), tuple(i % 3 for i in range(6)))


def base_of(a) -> SimpleDigraph:
    return simplify(underlying_multigraph(minimize(a)))


def test_verify_identity_and_point():
    base = base_of(zmod(5, [0, 1, 2]))
    assert verify_emulator(identity_emulator(base)) == (True, None)
    point = SimpleDigraph(1, ())
    to_point = EmulatorMap(point, base, tuple(0 for _ in range(base.num_vertices)))
    assert verify_emulator(to_point) == (True, None)


def test_verify_covering():
    ok, why = verify_emulator(covering_6_over_3())
    assert ok, why


def test_verify_detects_violations():
    base = c_cycle(3)
    # not surjective
    bad = EmulatorMap(base, c_cycle(6), tuple([0, 1, 0, 1, 0, 1]))
    ok, why = verify_emulator(bad)
    assert not ok and "misses" in why
    # covering broken: remove one lift arc
    total = SimpleDigraph(6, tuple(a for a in c_cycle(6).arcs if a != (2, 3)))
    broken = EmulatorMap(base, total, tuple(i % 3 for i in range(6)))
    ok, why = verify_emulator(broken)
    assert not ok and "covering" in why


def test_fibered_product_with_identity():
    base = base_of(zmod(5, [0, 1, 2]))
    fp = fibered_product(identity_emulator(base), identity_emulator(base))
    assert fp.over_base.total.num_vertices == base.num_vertices
    assert verify_emulator(fp.over_base)[0]

    cov = covering_6_over_3()
    fp2 = fibered_product(identity_emulator(cov.base), cov)
    assert fp2.over_base.total.num_vertices == cov.total.num_vertices
    assert verify_emulator(fp2.over_base)[0]


def test_fibered_product_of_coverings():
    cov = covering_6_over_3()
    fp = fibered_product(cov, cov)
    assert fp.over_base.total.num_vertices == 12
    for p in (fp.over_base, fp.onto_left, fp.onto_right):
        assert verify_emulator(p)[0]
    for z, (x, y) in enumerate(fp.pairs):
        assert cov.projection[x] == cov.projection[y] == fp.over_base.projection[z]


def test_fibered_product_base_mismatch():
    with pytest.raises(GenusLabError):
        fibered_product(covering_6_over_3(), identity_emulator(c_cycle(4)))


def test_lift_cycle_identity_and_covering():
    base = c_cycle(3)
    cyc = CycleWitness(
        (base.arc_id(0, 1), base.arc_id(1, 2), base.arc_id(2, 0)), directed=True
    )
    same = lift_cycle(identity_emulator(base), cyc, 0)
    assert same.length == 3
    lifted = lift_cycle(covering_6_over_3(), cyc, 0)
    assert lifted.length == 6
    with pytest.raises(GenusLabError):
        lift_cycle(covering_6_over_3(), CycleWitness(cyc.edges, directed=False), 0)
    with pytest.raises(GenusLabError):
        lift_cycle(covering_6_over_3(), cyc, 1)  # wrong fiber


def test_lift_cycle_on_random_emulators(rng):
    base = base_of(zmod(5, [1, 2]))
    five = CycleWitness(tuple(base.arc_id(i, (i + 1) % 5) for i in range(5)), directed=True)
    for _ in range(60):
        m = random_tight_emulator(base, rng)
        start = rng.choice(m.fiber(0))
        lifted = lift_cycle(m, five, start)
        assert lifted.length % 5 == 0 and lifted.length > 0
        assert len(set(lifted.edges)) == lifted.length


def test_girth_preserved_examples(rng):
    base = base_of(shuffle(4, 4))
    assert girth(digraph_multigraph(base)) == 4
    for _ in range(40):
        m = random_tight_emulator(base, rng)
        assert girth_preserved(m, 3)
    with pytest.raises(GenusLabError):
        girth_preserved(identity_emulator(base_of(zmod(6))), 2)


def test_girth_preservation_fails_beyond_three():
    # two fiber mates with identical lift choices close a 4-cycle even over a
    # girth-5 base, so thresholds above 3 are genuinely not preserved
    base = simplify(underlying_multigraph(two_letter_hierarchy(5)))
    assert girth(digraph_multigraph(base)) == 5
    nb = base.num_vertices
    arcs = list(base.arcs)
    for u, v in base.arcs:
        if u == 0:
            arcs.append((nb, v))
    dup = EmulatorMap(base, SimpleDigraph(nb + 1, tuple(arcs)), tuple(list(range(nb)) + [0]))
    assert verify_emulator(dup)[0]
    assert girth_preserved(dup, 3)
    assert not girth_preserved(dup, 4)


def test_search_zmod5_sizes():
    base = base_of(zmod(5, [0, 1, 2]))
    none5 = search_min_genus_emulator(base, max_size=5, target_genus=0)
    assert none5.found is None and none5.exhausted and not none5.budget_exhausted
    found6 = search_min_genus_emulator(base, max_size=6, target_genus=0)
    assert found6.found is not None
    em, wit = found6.found
    assert em.total.num_vertices == 6 and wit.genus == 0
    assert verify_emulator(em)[0]


def test_search_trivial_base():
    point = SimpleDigraph(1, ())
    r = search_min_genus_emulator(point, max_size=1, target_genus=0)
    assert r.found is not None
    em, wit = r.found
    assert em.total.num_vertices == 1 and wit.genus == 0


def test_search_budget_state():
    base = base_of(zmod(6))
    r = search_min_genus_emulator(
        base, max_size=12, target_genus=0, budget=SearchBudget(max_nodes=500)
    )
    assert r.found is None and r.budget_exhausted and not r.exhausted


def test_search_positive_genus_target():
    base = base_of(zmod(5, [1, 2]))  # 5-cycle with chords, toric-ish base
    r = search_min_genus_emulator(base, max_size=5, target_genus=1)
    assert r.found is not None
    em, wit = r.found
    assert wit.genus <= 1
    assert verify_emulator(em)[0]


def test_lift_to_automaton_identity():
    a = minimize(zmod(6))
    lifted = lift_to_automaton(identity_emulator(base_of(zmod(6))), a)
    assert equivalent(lifted, a)
    assert lifted.num_states == a.num_states


def test_lift_to_automaton_search_witness():
    a = minimize(zmod(5, [0, 1, 2]))
    found = search_min_genus_emulator(base_of(zmod(5, [0, 1, 2])), 6, 0).found
    lifted = lift_to_automaton(found[0], a)
    assert lifted.num_states == 6
    assert equivalent(lifted, a)
    assert planar(underlying_multigraph(lifted))[0]


def test_lift_to_automaton_validations():
    a = minimize(zmod(6))
    with pytest.raises(GenusLabError):
        lift_to_automaton(identity_emulator(c_cycle(6)), a)  # wrong base
    # all-final 3-cycle: same digraph as its minimal automaton is not
    from genuslab.dfa import Dfa

    lax = Dfa(3, ("a",), {(i, "a"): (i + 1) % 3 for i in range(3)}, 0, frozenset([0, 1, 2]))
    with pytest.raises(GenusLabError):
        lift_to_automaton(identity_emulator(c_cycle(3)), lax)


def test_composition_closure(rng):
    base = base_of(shuffle(4, 3))
    for _ in range(10):
        outer = random_tight_emulator(base, rng, max_fiber=2)
        inner = random_tight_emulator(outer.total, rng, max_fiber=2)
        comp = compose_emulators(outer, inner)
        assert verify_emulator(comp)[0]


def test_tight_emulators_are_simple(rng):
    base = base_of(shuffle(4, 4))
    for _ in range(20):
        m = random_tight_emulator(base, rng)
        # SimpleDigraph construction enforces no loops and no duplicates
        assert all(u != v for u, v in m.total.arcs)
        assert len(set(m.total.arcs)) == m.total.num_arcs


def test_fibered_product_size_bound(rng):
    base = base_of(zmod(5, [1, 2]))
    for _ in range(10):
        p1 = random_tight_emulator(base, rng, max_fiber=2)
        p2 = random_tight_emulator(base, rng, max_fiber=2)
        fp = fibered_product(p1, p2)
        assert fp.over_base.total.num_vertices <= p1.total.num_vertices * p2.total.num_vertices


def _all_tight_emulators(base, max_size):
    """Exhaustive tight-emulator enumeration, independent of the search."""
    from itertools import product as iproduct

    nb = base.num_vertices

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(1, total - parts + 2):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for total in range(nb, max_size + 1):
        for sizes in compositions(total, nb):
            offsets = []
            acc = 0
            for s in sizes:
                offsets.append(acc)
                acc += s
            proj = []
            for v, s in enumerate(sizes):
                proj.extend([v] * s)
            cells = [
                (x, u)
                for x in range(total)
                for u in sorted(base.out_neighbors(proj[x]))
            ]
            spaces = [range(offsets[u], offsets[u] + sizes[u]) for _, u in cells]
            for choice in iproduct(*spaces):
                arcs = tuple((cells[i][0], t) for i, t in enumerate(choice))
                yield EmulatorMap(base, SimpleDigraph(total, arcs), tuple(proj))


def test_every_small_emulator_preserves_short_girth():
    # Zmod(5;{1,2}) has girth 3; every tight emulator up to size 7 keeps all
    # simple cycles longer than 2
    base = base_of(zmod(5, [1, 2]))
    assert girth(digraph_multigraph(base)) == 3
    count = 0
    for m in _all_tight_emulators(base, 7):
        assert girth(digraph_multigraph(m.total)) > 2
        count += 1
    assert count == 386  # 1 + 20 at size 6 + 365 at size 7


def test_search_outputs_satisfy_contract():
    cases = [
        (zmod(5, [0, 1, 2]), 6, 0),
        (zmod(5, [1, 2]), 6, 1),
        (zmod(6), 12, 1),
    ]
    for source, max_size, target in cases:
        a_min = minimize(source)
        base = base_of(source)
        result = search_min_genus_emulator(base, max_size=max_size, target_genus=target)
        assert result.found is not None, (source.alphabet, max_size, target)
        em, witness = result.found
        assert verify_emulator(em)[0]
        assert witness.genus <= target
        lifted = lift_to_automaton(em, a_min)
        assert equivalent(lifted, a_min)


def test_search_deterministic_for_fixed_budget():
    base = base_of(zmod(5, [0, 1, 2]))
    a = search_min_genus_emulator(base, max_size=6, target_genus=0)
    b = search_min_genus_emulator(base, max_size=6, target_genus=0)
    assert a.nodes_used == b.nodes_used
    assert a.found[0] == b.found[0]
    assert a.found[1].rotation == b.found[1].rotation
