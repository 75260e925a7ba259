"""Directed emulators: verification, fibered products, cycle lifting, bounded
minimal-genus emulator search, and lifting emulators back to automata.

A directed emulator of a simple digraph G is a digraph G' with a surjection
p onto G's vertices such that every outgoing arc of G lifts from every point
of the corresponding fiber.  The genus of a regular language equals the least
genus over directed emulators of its minimal automaton's simple digraph, so
the search below enumerates them by total size.

The search restricts to tight emulators (exactly one lifted arc per required
out-class): surplus arcs can be deleted without breaking the covering
condition and never lower the genus, so nothing is lost at a fixed size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import networkx as nx

from genuslab.dfa import Dfa, minimize, trim
from genuslab.embedding import (
    EmbeddingWitness,
    SearchBudget,
    _BudgetExhausted,
    _BudgetState,
    genus_exact,
    planar,
)
from genuslab.errors import FormatError, GenusLabError
from genuslab.graphs import (
    CycleWitness,
    SimpleDigraph,
    check_cycle_witness,
    digraph_multigraph,
    format_digraph,
    girth,
    parse_digraph,
    simplify,
    underlying_multigraph,
)


@dataclass(frozen=True)
class EmulatorMap:
    """A surjection ``projection[total vertex] -> base vertex`` claimed to
    satisfy the out-arc covering condition (see ``verify_emulator``)."""

    base: SimpleDigraph
    total: SimpleDigraph
    projection: tuple[int, ...]

    def __post_init__(self):
        if len(self.projection) != self.total.num_vertices:
            raise GenusLabError("projection must map every total vertex")
        for x, v in enumerate(self.projection):
            if not 0 <= v < self.base.num_vertices:
                raise GenusLabError(f"projection of vertex {x} out of range: {v}")

    def fiber(self, v: int) -> list[int]:
        return [x for x, u in enumerate(self.projection) if u == v]


def identity_emulator(d: SimpleDigraph) -> EmulatorMap:
    return EmulatorMap(d, d, tuple(range(d.num_vertices)))


def compose_emulators(outer: EmulatorMap, inner: EmulatorMap) -> EmulatorMap:
    """Emulator over ``outer.base`` from an emulator ``inner`` of
    ``outer.total``."""
    if inner.base != outer.total:
        raise GenusLabError("inner emulator's base must be the outer emulator's total")
    proj = tuple(outer.projection[inner.projection[x]] for x in range(inner.total.num_vertices))
    return EmulatorMap(outer.base, inner.total, proj)


def verify_emulator(m: EmulatorMap) -> tuple[bool, str | None]:
    """Check surjectivity and the covering condition; on failure, report the
    first violated condition."""
    hit = set(m.projection)
    missing = sorted(set(range(m.base.num_vertices)) - hit)
    if missing:
        return False, f"projection misses base vertex {missing[0]}"
    out_proj: dict[int, set[int]] = {x: set() for x in range(m.total.num_vertices)}
    for x, y in m.total.arcs:
        out_proj[x].add(m.projection[y])
    for u, v in m.base.arcs:
        for x in range(m.total.num_vertices):
            if m.projection[x] == u and v not in out_proj[x]:
                return False, (
                    f"covering broken: base arc ({u},{v}) has no lift from vertex {x}"
                )
    return True, None


@dataclass(frozen=True)
class FiberedProduct:
    """The fibered product of two emulators over a common base, with its three
    projections: onto the base and onto each factor's total."""

    pairs: tuple[tuple[int, int], ...]
    over_base: EmulatorMap
    onto_left: EmulatorMap
    onto_right: EmulatorMap


def fibered_product(p1: EmulatorMap, p2: EmulatorMap) -> FiberedProduct:
    """Total vertices are pairs agreeing over the base; arcs are pairs of
    factor arcs over the same base arc.  The coordinate projections commute
    with p1 and p2 by construction."""
    if p1.base != p2.base:
        raise GenusLabError("fibered product needs emulators over the same base")
    pairs = [
        (x, y)
        for x in range(p1.total.num_vertices)
        for y in range(p2.total.num_vertices)
        if p1.projection[x] == p2.projection[y]
    ]
    idx = {p: i for i, p in enumerate(pairs)}
    arcs1 = set(p1.total.arcs)
    arcs2 = set(p2.total.arcs)
    arcs = []
    for (x, y) in pairs:
        for (x2, y2) in pairs:
            if (x, x2) in arcs1 and (y, y2) in arcs2:
                arcs.append((idx[(x, y)], idx[(x2, y2)]))
    total = SimpleDigraph(len(pairs), tuple(arcs))
    base_proj = tuple(p1.projection[x] for x, _ in pairs)
    return FiberedProduct(
        pairs=tuple(pairs),
        over_base=EmulatorMap(p1.base, total, base_proj),
        onto_left=EmulatorMap(p1.total, total, tuple(x for x, _ in pairs)),
        onto_right=EmulatorMap(p2.total, total, tuple(y for _, y in pairs)),
    )


def lift_cycle(m: EmulatorMap, c: CycleWitness, start: int) -> CycleWitness:
    """Lift a simple directed base cycle through the emulator: follow lifts
    (smallest target first) until a vertex repeats; the closed stretch is an
    edge-simple directed cycle whose length is a positive multiple of the base
    cycle's length."""
    if not c.directed:
        raise GenusLabError("cycle lifting needs a directed cycle")
    verts = check_cycle_witness(m.base, c)
    k = c.length
    if m.projection[start] != verts[0]:
        raise GenusLabError(
            f"start vertex {start} is not in the fiber of the cycle's origin {verts[0]}"
        )
    out: dict[int, list[int]] = {x: [] for x in range(m.total.num_vertices)}
    for x, y in sorted(m.total.arcs):
        out[x].append(y)
    walk = [start]
    seen = {start: 0}
    cur = start
    pos = 0
    while True:
        target_base = verts[(pos + 1) % k]
        nxt = next(
            (y for y in out[cur] if m.projection[y] == target_base),
            None,
        )
        if nxt is None:
            raise GenusLabError(
                f"covering broken at vertex {cur}: no lift toward base vertex {target_base}"
            )
        pos += 1
        if nxt in seen:
            j = seen[nxt]
            cycle_verts = walk[j:] + [nxt]
            arc_ids = []
            for a, b in zip(cycle_verts, cycle_verts[1:]):
                aid = m.total.arc_id(a, b)
                if aid is None:
                    raise GenusLabError("internal error: walked a missing arc")
                arc_ids.append(aid)
            if len(arc_ids) % k != 0:
                raise GenusLabError("internal error: lifted cycle length not a multiple")
            return CycleWitness(tuple(arc_ids), directed=True)
        seen[nxt] = len(walk)
        walk.append(nxt)
        cur = nxt


def girth_preserved(m: EmulatorMap, k: int) -> bool:
    """Runtime check that the total, like the base, has no simple cycle of
    length <= k (undirected multigraph sense).

    For k <= 3 and emulators without vertical arcs (tight ones in particular)
    this always holds: a total cycle of length <= 3 has pairwise-adjacent
    vertices, whose projections are therefore pairwise distinct and span an
    equally short base cycle.  From k = 4 on it can genuinely fail: two fiber
    mates choosing the same lift targets in two out-classes close a 4-cycle.
    """
    if k < 1:
        raise GenusLabError("cycle-length threshold must be >= 1")
    if girth(digraph_multigraph(m.base)) <= k:
        raise GenusLabError(f"precondition unmet: base has a simple cycle of length <= {k}")
    return girth(digraph_multigraph(m.total)) > k


# ---------------------------------------------------------------------------
# bounded minimal-genus emulator search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EmulatorSearchResult:
    found: tuple[EmulatorMap, EmbeddingWitness] | None
    exhausted: bool
    budget_exhausted: bool
    nodes_used: int
    sizes_exhausted: tuple[int, ...]


def _compositions(total: int, parts: int):
    """All ways to write ``total`` as ``parts`` positive integers, in
    lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _min_undirected_edges(base: SimpleDigraph, fiber_sizes: tuple[int, ...]) -> int:
    """Lower bound on simple undirected edges of any tight emulator with the
    given fibers: arcs over a base pair merge only with antiparallel ones."""
    arcs_between: dict[tuple[int, int], int] = {}
    for u, v in base.arcs:
        key = (min(u, v), max(u, v))
        arcs_between[key] = max(arcs_between.get(key, 0), fiber_sizes[u])
    return sum(arcs_between.values())


def _edge_cap(n: int, genus: int) -> int:
    if n >= 3:
        return 3 * n - 6 + 6 * genus
    return n - 1


class _EmulatorDfs:
    """Row-major enumeration of tight emulators for one fiber-size vector.

    Rows (total vertices) are laid out fiber by fiber; each cell picks the
    lift target of one base out-class.  Fiber members never yet touched by the
    scan are interchangeable, so only the smallest fresh member is tried
    (label symmetry breaking).  Planarity of the partial undirected graph is
    checked whenever a row completes and the target genus is zero.
    """

    def __init__(self, base, fiber_sizes, target_genus, state):
        self.base = base
        self.target = target_genus
        self.state = state
        self.nb = base.num_vertices
        self.sizes = fiber_sizes
        self.offsets = [0] * self.nb
        acc = 0
        for v in range(self.nb):
            self.offsets[v] = acc
            acc += fiber_sizes[v]
        self.n = acc
        self.row_base = []
        for v in range(self.nb):
            self.row_base.extend([v] * fiber_sizes[v])
        self.out_classes = [sorted(base.out_neighbors(v)) for v in range(self.nb)]
        self.cells = [
            (row, u) for row in range(self.n) for u in self.out_classes[self.row_base[row]]
        ]
        self.used = [0] * self.n  # times used as an arc target
        self.arcs: list[tuple[int, int]] = []
        self.edge_count: dict[tuple[int, int], int] = {}
        # a single edge is "live" while its antiparallel partner's cell is
        # still undecided, "forever" once that cell chose something else
        self.live_singles = 0
        self.forever_singles = 0
        self.cap = _edge_cap(self.n, target_genus)

    def fiber_members(self, u: int) -> range:
        return range(self.offsets[u], self.offsets[u] + self.sizes[u])

    def _candidates(self, row: int, u: int) -> list[int]:
        cand = []
        fresh = None
        for x in self.fiber_members(u):
            if self.used[x] > 0 or x <= row:
                cand.append(x)
            elif fresh is None:
                fresh = x
        if fresh is not None:
            cand.append(fresh)
        # completing an antiparallel pair keeps the edge count tight; try
        # those targets first, then ascending ids
        cand.sort(key=lambda x: ((min(row, x), max(row, x)) not in self.edge_count, x))
        return cand

    def _planar_so_far(self) -> bool:
        g = nx.Graph()
        g.add_edges_from(self.edge_count)
        return nx.check_planarity(g)[0]

    def enumerate(self, ci: int = 0):
        if ci == len(self.cells):
            yield EmulatorMap(
                self.base,
                SimpleDigraph(self.n, tuple(self.arcs)),
                tuple(self.row_base),
            )
            return
        row, u = self.cells[ci]
        remaining = len(self.cells) - ci - 1
        total_arcs = len(self.cells)
        for x in self._candidates(row, u):
            self.state.tick()
            key = (min(row, x), max(row, x))
            self.used[x] += 1
            self.arcs.append((row, x))
            cnt = self.edge_count.get(key, 0)
            self.edge_count[key] = cnt + 1
            if cnt == 1:
                self.live_singles -= 1  # the partner slot was exactly this cell
            elif x < row:
                self.forever_singles += 1  # x's row is decided and skipped us
            else:
                self.live_singles += 1
            # singles into `row` from the chosen class's fiber that this cell
            # was the last chance to reciprocate
            expired = []
            for w in self.fiber_members(u):
                if w != x and w < row and self.edge_count.get((min(w, row), max(w, row)), 0) == 1:
                    expired.append(w)
            self.live_singles -= len(expired)
            self.forever_singles += len(expired)
            # every remaining arc either completes a live single or opens a new
            # edge (each edge holds at most one arc per direction); forever
            # singles keep their edge at one arc to the end
            floor_edges = max(
                len(self.edge_count) + max(0, (remaining - self.live_singles + 1) // 2),
                (total_arcs + self.forever_singles + 1) // 2,
            )
            ok = floor_edges <= self.cap
            if ok and self.target == 0:
                last_of_row = ci + 1 == len(self.cells) or self.cells[ci + 1][0] != row
                if last_of_row:
                    ok = self._planar_so_far()
            if ok:
                yield from self.enumerate(ci + 1)
            self.live_singles += len(expired)
            self.forever_singles -= len(expired)
            if cnt == 1:
                self.live_singles += 1
            elif x < row:
                self.forever_singles -= 1
            else:
                self.live_singles -= 1
            self.edge_count[key] -= 1
            if self.edge_count[key] == 0:
                del self.edge_count[key]
            self.arcs.pop()
            self.used[x] -= 1


def search_min_genus_emulator(
    base: SimpleDigraph,
    max_size: int,
    target_genus: int,
    budget: SearchBudget | None = None,
    min_size: int | None = None,
) -> EmulatorSearchResult:
    """Enumerate tight emulators by total size (then lexicographic fiber-size
    vectors, then canonical target choices) and return the first one whose
    multigraph genus is at most ``target_genus``, along with its embedding
    witness.  Exhaustion and budget death are distinguishable outcomes."""
    if target_genus < 0:
        raise GenusLabError("target genus must be >= 0")
    state = _BudgetState(budget or SearchBudget())
    lo = base.num_vertices if min_size is None else max(min_size, base.num_vertices)
    sizes_done: list[int] = []
    try:
        for n in range(lo, max_size + 1):
            for fiber_sizes in _compositions(n, base.num_vertices):
                state.tick()
                if _min_undirected_edges(base, fiber_sizes) > _edge_cap(n, target_genus):
                    continue
                dfs = _EmulatorDfs(base, fiber_sizes, target_genus, state)
                for cand in dfs.enumerate():
                    found = _certify(cand, target_genus, state)
                    if found is not None:
                        return EmulatorSearchResult(
                            found=found,
                            exhausted=False,
                            budget_exhausted=False,
                            nodes_used=state.nodes,
                            sizes_exhausted=tuple(sizes_done),
                        )
            sizes_done.append(n)
    except _BudgetExhausted:
        return EmulatorSearchResult(
            found=None,
            exhausted=False,
            budget_exhausted=True,
            nodes_used=state.nodes,
            sizes_exhausted=tuple(sizes_done),
        )
    return EmulatorSearchResult(
        found=None,
        exhausted=True,
        budget_exhausted=False,
        nodes_used=state.nodes,
        sizes_exhausted=tuple(sizes_done),
    )


def _certify(cand: EmulatorMap, target: int, state: _BudgetState):
    mg = digraph_multigraph(cand.total)
    if target == 0:
        ok, witness = planar(mg)
        return (cand, witness) if ok else None
    remaining = max(1, state.max_nodes - state.nodes)
    interval = genus_exact(mg, SearchBudget(max_nodes=remaining))
    state.nodes += interval.nodes_used
    if interval.upper <= target:
        return cand, interval.witness
    if not interval.exact:
        # cannot soundly rule this candidate out
        state.dead = True
        raise _BudgetExhausted
    return None


# ---------------------------------------------------------------------------
# lifting emulators to automata
# ---------------------------------------------------------------------------


def lift_to_automaton(m: EmulatorMap, a_min: Dfa) -> Dfa:
    """Label the emulator's arcs with the minimal automaton's letters.

    For each total vertex over state x and each letter with target y != x, the
    lift follows the smallest arc into y's fiber; self-loop letters of the
    minimal automaton are re-added at every lift (they were dropped on the way
    to the simple digraph and never change genus).  The result is trimmed, so
    it computes the same language.
    """
    expected_base = simplify(underlying_multigraph(a_min))
    if expected_base != m.base:
        raise GenusLabError("emulator base is not this automaton's simple digraph")
    if minimize(a_min).num_states != a_min.num_states:
        raise GenusLabError("lift_to_automaton needs a minimal automaton")
    out: dict[int, list[int]] = {x: [] for x in range(m.total.num_vertices)}
    for x, y in sorted(m.total.arcs):
        out[x].append(y)
    trans: dict[tuple[int, str], int] = {}
    for x in range(m.total.num_vertices):
        v = m.projection[x]
        for s in a_min.alphabet:
            y = a_min.delta(v, s)
            if y is None:
                continue
            if y == v:
                trans[(x, s)] = x
                continue
            target = next((t for t in out[x] if m.projection[t] == y), None)
            if target is None:
                raise GenusLabError(
                    f"covering condition broken at vertex {x} for letter {s!r}"
                )
            trans[(x, s)] = target
    initial = min(m.fiber(a_min.initial))
    finals = frozenset(
        x for x in range(m.total.num_vertices) if m.projection[x] in a_min.finals
    )
    return trim(Dfa(m.total.num_vertices, a_min.alphabet, trans, initial, finals))


def random_tight_emulator(base: SimpleDigraph, rng, max_fiber: int = 3) -> EmulatorMap:
    """A random tight emulator: random fiber sizes, then one random lift
    target per (vertex, out-class).  Used by the property suites."""
    sizes = [rng.randint(1, max_fiber) for _ in range(base.num_vertices)]
    offsets = []
    acc = 0
    for s in sizes:
        offsets.append(acc)
        acc += s
    proj = []
    for v, s in enumerate(sizes):
        proj.extend([v] * s)
    arcs = []
    for x, v in enumerate(proj):
        for u in sorted(base.out_neighbors(v)):
            target = offsets[u] + rng.randrange(sizes[u])
            arcs.append((x, target))
    return EmulatorMap(base, SimpleDigraph(acc, tuple(arcs)), tuple(proj))


# ---------------------------------------------------------------------------
# emulator file format: base graph section, total graph section, then
# one `map: total_vertex base_vertex` line per total vertex.
# ---------------------------------------------------------------------------


def format_emulator(m: EmulatorMap) -> str:
    parts = [format_digraph(m.base), format_digraph(m.total)]
    for x, v in enumerate(m.projection):
        parts.append(f"map: {x} {v}\n")
    return "".join(parts)


def parse_emulator(text: str) -> EmulatorMap:
    sections: list[list[str]] = []
    mapping: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key = line.partition(":")[0].strip()
        if key == "vertices":
            sections.append([raw])
        elif key == "map":
            toks = line.partition(":")[2].split()
            try:
                x, v = int(toks[0]), int(toks[1])
            except (ValueError, IndexError) as exc:
                raise FormatError("map: needs two vertex ids", lineno) from exc
            if x in mapping:
                raise FormatError(f"duplicate map: line for vertex {x}", lineno)
            mapping[x] = v
        elif key == "arc":
            if not sections:
                raise FormatError("arc: before any vertices: section", lineno)
            sections[-1].append(raw)
        else:
            raise FormatError(f"unknown directive {key!r}", lineno)
    if len(sections) != 2:
        raise FormatError(
            f"expected a base and a total graph section, found {len(sections)}"
        )
    base = parse_digraph("\n".join(sections[0]))
    total = parse_digraph("\n".join(sections[1]))
    if sorted(mapping) != list(range(total.num_vertices)):
        raise FormatError("map: lines must cover every total vertex exactly once")
    try:
        return EmulatorMap(base, total, tuple(mapping[x] for x in range(total.num_vertices)))
    except GenusLabError as exc:
        raise FormatError(str(exc)) from exc


def emulator_to_json(m: EmulatorMap) -> str:
    obj = {
        "base": {"vertices": m.base.num_vertices, "arcs": [list(a) for a in m.base.arcs]},
        "total": {"vertices": m.total.num_vertices, "arcs": [list(a) for a in m.total.arcs]},
        "map": list(m.projection),
    }
    return json.dumps(obj, indent=2) + "\n"


def emulator_from_json(text: str) -> EmulatorMap:
    try:
        obj = json.loads(text)
        base = SimpleDigraph(
            int(obj["base"]["vertices"]), tuple((int(u), int(v)) for u, v in obj["base"]["arcs"])
        )
        total = SimpleDigraph(
            int(obj["total"]["vertices"]),
            tuple((int(u), int(v)) for u, v in obj["total"]["arcs"]),
        )
        return EmulatorMap(base, total, tuple(int(v) for v in obj["map"]))
    except GenusLabError as exc:
        raise FormatError(str(exc)) from exc
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FormatError(f"bad emulator JSON: {exc}") from exc
