"""Cellular embeddings: rotation systems, face tracing, exact orientable genus
by branch and bound, polynomial planarity with a certified rotation witness,
and the face-census genus formula for complete deterministic automata.

A rotation system lists the darts (edge-ends) around each vertex in clockwise
order; dart ``2e`` sits at edge ``e``'s first endpoint, dart ``2e+1`` at its
second, and ``d ^ 1`` is the opposite end.  Faces follow the standard rule:
after dart ``d`` comes the successor of its twin in the twin's rotation, and
genus drops out of Euler's relation.

The exact search first strips what never changes genus (self-loops, parallel
edges, leaves, degree-2 vertices), then traces faces incrementally over
partial rotations of the reduced graph, pruning with an Euler bound driven by
the provable minimum face length.  Reductions are replayed backwards onto the
found rotation, so the returned witness always embeds the original graph.
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import networkx as nx

from genuslab.errors import FormatError, GenusLabError
from genuslab.graphs import (
    Edge,
    Multigraph,
    format_multigraph,
    girth,
    multigraph_from_json,
    multigraph_to_json,
    parse_multigraph,
)

DEFAULT_BUDGET_NODES = 2_000_000


@dataclass(frozen=True)
class RotationSystem:
    """Clockwise dart order around each vertex; ``orders[v]`` may be empty for
    an isolated vertex."""

    orders: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class EmbeddingWitness:
    """A rotation system together with its traced face census and genus."""

    graph: Multigraph
    rotation: RotationSystem
    census: dict[int, int]
    genus: int


@dataclass(frozen=True)
class GenusInterval:
    lower: int
    upper: int
    exact: bool
    witness: EmbeddingWitness | None
    budget_exhausted: bool
    nodes_used: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise GenusLabError("genus interval lower bound exceeds upper bound")
        if self.exact and (self.lower != self.upper or self.witness is None):
            raise GenusLabError("exact interval needs equal bounds and a witness")


@dataclass
class SearchBudget:
    """Node-count limit first, wall clock second.  A fixed node budget gives
    deterministic results; millisecond budgets may change exactness but never
    the validity of reported bounds."""

    max_nodes: int = DEFAULT_BUDGET_NODES
    max_ms: int | None = None


class _BudgetExhausted(Exception):
    pass


class _BudgetState:
    __slots__ = ("max_nodes", "deadline", "nodes", "dead")

    def __init__(self, budget: SearchBudget):
        self.max_nodes = budget.max_nodes
        self.deadline = (
            time.monotonic() + budget.max_ms / 1000.0 if budget.max_ms else None
        )
        self.nodes = 0
        self.dead = False

    def tick(self):
        self.nodes += 1
        if self.nodes >= self.max_nodes:
            self.dead = True
            raise _BudgetExhausted
        if self.deadline is not None and self.nodes % 4096 == 0:
            if time.monotonic() > self.deadline:
                self.dead = True
                raise _BudgetExhausted


def dart_vertex(g: Multigraph, d: int) -> int:
    e = g.edges[d >> 1]
    return e.u if (d & 1) == 0 else e.v


def validate_rotation(g: Multigraph, rot: RotationSystem) -> None:
    if len(rot.orders) != g.num_vertices:
        raise GenusLabError(
            f"rotation lists {len(rot.orders)} vertices, graph has {g.num_vertices}"
        )
    seen: set[int] = set()
    for v, order in enumerate(rot.orders):
        for d in order:
            if not 0 <= d < 2 * g.num_edges:
                raise GenusLabError(f"dart {d} out of range")
            if d in seen:
                raise GenusLabError(f"dart {d} listed twice")
            if dart_vertex(g, d) != v:
                raise GenusLabError(
                    f"dart {d} listed at vertex {v} but lives at {dart_vertex(g, d)}"
                )
            seen.add(d)
    if len(seen) != 2 * g.num_edges:
        raise GenusLabError(
            f"rotation covers {len(seen)} darts, expected {2 * g.num_edges}"
        )


def _component_index(g: Multigraph) -> list[int]:
    comp = [-1] * g.num_vertices
    for i, members in enumerate(g.components()):
        for v in members:
            comp[v] = i
    return comp


def trace_faces(g: Multigraph, rot: RotationSystem) -> EmbeddingWitness:
    """Trace all faces of the embedding and compute its genus.

    The genus of a disconnected graph is the sum over components, each of
    which satisfies Euler's relation on its own.
    """
    validate_rotation(g, rot)
    nd = 2 * g.num_edges
    succ = [0] * nd
    for order in rot.orders:
        k = len(order)
        for i, d in enumerate(order):
            succ[d] = order[(i + 1) % k]
    visited = [False] * nd
    census: Counter[int] = Counter()
    comp_of = _component_index(g)
    faces_per_comp: Counter[int] = Counter()
    for d0 in range(nd):
        if visited[d0]:
            continue
        length = 0
        d = d0
        while not visited[d]:
            visited[d] = True
            length += 1
            d = succ[d ^ 1]
        if d != d0:
            raise GenusLabError("face tracing left its starting dart; invalid rotation")
        census[length] += 1
        faces_per_comp[comp_of[dart_vertex(g, d0)]] += 1
    genus = 0
    comp_sizes: Counter[int] = Counter(comp_of)
    comp_edges: Counter[int] = Counter(comp_of[e.u] for e in g.edges)
    for c, nv in comp_sizes.items():
        ne = comp_edges.get(c, 0)
        if ne == 0:
            continue  # isolated vertex, spherical
        euler = nv - ne + faces_per_comp[c]
        if euler > 2 or (2 - euler) % 2:
            raise GenusLabError("Euler relation violated; invalid rotation system")
        genus += (2 - euler) // 2
    return EmbeddingWitness(g, rot, dict(sorted(census.items())), genus)


def face_census_genus(m: int, n: int, census: dict[int, int]) -> Fraction:
    """Genus of a cellular embedding of a complete deterministic automaton
    with ``n`` states on ``m`` letters, from the face census alone:
    ``1 + sum_k (k(m-1) - 2m)/(4m) * f_k``.  Exact rational arithmetic."""
    if m < 1 or n < 1:
        raise GenusLabError("need m >= 1 letters and n >= 1 states")
    total = sum(k * fk for k, fk in census.items())
    if total != 2 * n * m:
        raise GenusLabError(
            f"census covers {total} dart steps, a complete automaton embedding has {2 * n * m}"
        )
    acc = Fraction(1)
    for k, fk in census.items():
        acc += Fraction(k * (m - 1) - 2 * m, 4 * m) * fk
    return acc


# ---------------------------------------------------------------------------
# planarity (polynomial) with a certified rotation witness
# ---------------------------------------------------------------------------


def planar(g: Multigraph) -> tuple[bool, EmbeddingWitness | None]:
    """Left-right planarity on the simplified underlying graph; when planar,
    a genus-0 rotation system for the original multigraph (self-loops and
    parallel edges reinserted) is built and certified by ``trace_faces``."""
    simple = nx.Graph()
    simple.add_nodes_from(range(g.num_vertices))
    bundles: dict[tuple[int, int], list[int]] = {}
    loops: dict[int, list[int]] = {}
    for eid, e in enumerate(g.edges):
        if e.is_loop:
            loops.setdefault(e.u, []).append(eid)
        else:
            key = (min(e.u, e.v), max(e.u, e.v))
            bundles.setdefault(key, []).append(eid)
            simple.add_edge(*key)
    ok, emb = nx.check_planarity(simple)
    if not ok:
        return False, None
    cw = emb.get_data()
    orders: list[tuple[int, ...]] = []
    for v in range(g.num_vertices):
        order: list[int] = []
        for u in cw.get(v, []):
            key = (min(u, v), max(u, v))
            bundle = sorted(bundles[key])
            # parallel edges nest: ascending at the lower endpoint, descending
            # at the other, so consecutive pairs bound bigons
            if v != key[0]:
                bundle.reverse()
            for eid in bundle:
                order.append(2 * eid if g.edges[eid].u == v else 2 * eid + 1)
        for eid in sorted(loops.get(v, [])):
            order.extend((2 * eid, 2 * eid + 1))
        orders.append(tuple(order))
    witness = trace_faces(g, RotationSystem(tuple(orders)))
    if witness.genus != 0:
        raise GenusLabError("internal error: planar reinsertion produced positive genus")
    return True, witness


# ---------------------------------------------------------------------------
# genus-neutral reduction with witness replay
# ---------------------------------------------------------------------------


class _Reduction:
    """Reduces one connected component, logging each step with enough endpoint
    data that a rotation of the reduced graph lifts back to the component.

    Edges are tracked by stable keys; a key's endpoint pair never changes.
    Original edges keep their ids as keys, merged edges get fresh keys.
    """

    def __init__(self, g: Multigraph, vertices: list[int]):
        vset = set(vertices)
        self.edges: dict[int, tuple[int, int]] = {
            eid: (e.u, e.v) for eid, e in enumerate(g.edges) if e.u in vset
        }
        self.vertices: set[int] = vset
        self.ops: list[tuple] = []
        self._next_key = g.num_edges

    def _degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for u, v in self.edges.values():
            deg[u] += 1
            deg[v] += 1
        return deg

    def reduce(self) -> None:
        while True:
            stripped = False
            for key in sorted(self.edges):
                u, v = self.edges[key]
                if u == v:
                    del self.edges[key]
                    self.ops.append(("loop", key, u))
                    stripped = True
            by_pair: dict[tuple[int, int], list[int]] = {}
            for key in sorted(self.edges):
                u, v = self.edges[key]
                by_pair.setdefault((min(u, v), max(u, v)), []).append(key)
            for keys in by_pair.values():
                for extra in keys[1:]:
                    self.ops.append(
                        ("parallel", extra, self.edges[extra], keys[0], self.edges[keys[0]])
                    )
                    del self.edges[extra]
                    stripped = True
            if stripped:
                continue
            deg = self._degrees()
            leaf = next((v for v in sorted(deg) if deg[v] == 1), None)
            if leaf is not None:
                key = next(k for k in sorted(self.edges) if leaf in self.edges[k])
                u, v = self.edges[key]
                other = v if u == leaf else u
                self.ops.append(("leaf", key, (u, v), leaf, other))
                del self.edges[key]
                self.vertices.discard(leaf)
                continue
            two = next((v for v in sorted(deg) if deg[v] == 2), None)
            if two is not None:
                ka, kb = sorted(k for k in self.edges if two in self.edges[k])
                ea, eb = self.edges[ka], self.edges[kb]
                a = ea[1] if ea[0] == two else ea[0]
                b = eb[1] if eb[0] == two else eb[0]
                new_key = self._next_key
                self._next_key += 1
                del self.edges[ka]
                del self.edges[kb]
                self.edges[new_key] = (a, b)
                self.vertices.discard(two)
                self.ops.append(("suppress", two, ka, ea, a, kb, eb, b, new_key))
                continue
            lone = next((v for v in sorted(deg) if deg[v] == 0), None)
            if lone is not None:
                self.vertices.discard(lone)
                self.ops.append(("isolated", lone))
                continue
            break

    @staticmethod
    def _end(endpoints: tuple[int, int], v: int) -> int:
        return 0 if endpoints[0] == v else 1

    def lift(self, rot: dict[int, list[tuple[int, int]]]) -> dict[int, list[tuple[int, int]]]:
        """Replay the reduction backwards onto a {vertex: [(key, end), ...]}
        rotation of the reduced graph."""
        rot = {v: list(order) for v, order in rot.items()}
        for op in reversed(self.ops):
            kind = op[0]
            if kind == "loop":
                _, key, v = op
                rot.setdefault(v, [])
                rot[v][0:0] = [(key, 0), (key, 1)]
            elif kind == "parallel":
                _, key, ends, sibling, sib_ends = op
                u, v = sib_ends
                ru = rot[u]
                i = ru.index((sibling, self._end(sib_ends, u)))
                ru.insert(i + 1, (key, self._end(ends, u)))
                rv = rot[v]
                j = rv.index((sibling, self._end(sib_ends, v)))
                rv.insert(j, (key, self._end(ends, v)))
            elif kind == "leaf":
                _, key, ends, leaf, other = op
                rot[leaf] = [(key, self._end(ends, leaf))]
                rot.setdefault(other, [])
                rot[other].insert(0, (key, self._end(ends, other)))
            elif kind == "suppress":
                _, v, ka, ea, a, kb, eb, b, new_key = op
                i = rot[a].index((new_key, 0))
                rot[a][i] = (ka, self._end(ea, a))
                j = rot[b].index((new_key, 1))
                rot[b][j] = (kb, self._end(eb, b))
                rot[v] = [(ka, self._end(ea, v)), (kb, self._end(eb, v))]
            else:  # isolated
                rot[op[1]] = []
        return rot


# ---------------------------------------------------------------------------
# exact genus branch and bound
# ---------------------------------------------------------------------------


def _euler_lower_bound(nv: int, ne: int, face_floor: int) -> int:
    # from face_floor * F <= 2E and Euler's relation on a connected graph
    f = face_floor
    return max(0, -(-((f - 2) * ne - f * (nv - 2)) // (2 * f)))


class _ComponentSearch:
    """Branch and bound over rotation systems of one reduced component.

    The rotation is built while tracing faces: each step fixes the successor
    of the current dart's twin, so every branch decision extends the open
    face.  Per-vertex chains guarantee each vertex's rotation closes into a
    single cycle.  The bound packs unseen darts into faces of at least the
    floor length; a face shorter than the floor would contain a short simple
    cycle or need a vertex of degree below 3, neither of which survives the
    reduction.
    """

    def __init__(self, endpoints: list[tuple[int, int]], budget: _BudgetState):
        self.budget = budget
        self.ne = len(endpoints)
        verts = sorted({v for uv in endpoints for v in uv})
        self.vmap = {v: i for i, v in enumerate(verts)}
        self.verts = verts
        self.nv = len(verts)
        self.nd = 2 * self.ne
        self.dart_at = [0] * self.nd
        for i, (u, v) in enumerate(endpoints):
            self.dart_at[2 * i] = self.vmap[u]
            self.dart_at[2 * i + 1] = self.vmap[v]
        self.at: list[list[int]] = [[] for _ in range(self.nv)]
        for d in range(self.nd):
            self.at[self.dart_at[d]].append(d)
        self.deg = [len(ds) for ds in self.at]
        gir = girth(Multigraph(max(max(uv) for uv in endpoints) + 1,
                               tuple(Edge(u, v) for u, v in endpoints)))
        self.face_floor = 5 if gir == math.inf else min(int(gir), 5)
        self.euler_lb = _euler_lower_bound(self.nv, self.ne, self.face_floor)
        self.parity = (self.nv + self.ne) % 2

        self.succ = [-1] * self.nd
        self.pred = [-1] * self.nd
        self.chain_start = list(range(self.nd))  # valid where pred is unset
        self.chain_end = list(range(self.nd))  # valid where succ is unset
        self.assigned_at = [0] * self.nv
        self.visited = [False] * self.nd
        self.unseen = self.nd
        self.f_closed = 0

        self.best_genus: int | None = None
        self.best_succ: list[int] | None = None

    # rotation bookkeeping ---------------------------------------------------

    def _assign(self, t: int, x: int):
        """Fix sigma(t) = x if the single-cycle-per-vertex constraint allows;
        returns an undo record or None."""
        w = self.dart_at[t]
        head = self.chain_start[t]
        if head == x:
            if self.assigned_at[w] + 1 != self.deg[w]:
                return None
            self.succ[t] = x
            self.pred[x] = t
            self.assigned_at[w] += 1
            return ()
        tail = self.chain_end[x]
        self.succ[t] = x
        self.pred[x] = t
        self.assigned_at[w] += 1
        self.chain_end[head] = tail
        self.chain_start[tail] = head
        return (head, tail)

    def _unassign(self, t: int, x: int, undo):
        self.succ[t] = -1
        self.pred[x] = -1
        self.assigned_at[self.dart_at[t]] -= 1
        if undo:
            head, tail = undo
            self.chain_end[head] = t
            self.chain_start[tail] = x

    # search -------------------------------------------------------------------

    def _prune(self, open_face: bool) -> bool:
        fmax = self.f_closed + (1 if open_face else 0) + self.unseen // self.face_floor
        if fmax % 2 != (2 - self.nv + self.ne) % 2:
            fmax -= 1
        branch_min = (2 - self.nv + self.ne - fmax) // 2
        return self.best_genus is not None and branch_min >= self.best_genus

    def _dfs(self):
        if self.unseen == 0:
            genus = (2 - self.nv + self.ne - self.f_closed) // 2
            if self.best_genus is None or genus < self.best_genus:
                self.best_genus = genus
                self.best_succ = self.succ.copy()
            return
        if self._prune(open_face=False):
            return
        self.budget.tick()
        f0 = self.visited.index(False)
        self.visited[f0] = True
        self.unseen -= 1
        self._walk(f0, f0, 1)
        self.visited[f0] = False
        self.unseen += 1

    def _walk(self, f0: int, cur: int, length: int):
        t = cur ^ 1
        forced = self.succ[t]
        if forced != -1:
            if forced == f0:
                if length >= self.face_floor:
                    self.f_closed += 1
                    self._dfs()
                    self.f_closed -= 1
                return
            self.visited[forced] = True
            self.unseen -= 1
            self._walk(f0, forced, length + 1)
            self.visited[forced] = False
            self.unseen += 1
            return
        if self._prune(open_face=True):
            return
        w = self.dart_at[t]
        # closing the face first steers toward face-rich (low genus) systems
        if length >= self.face_floor and self.dart_at[f0] == w and self.pred[f0] == -1:
            undo = self._assign(t, f0)
            if undo is not None:
                self.budget.tick()
                self.f_closed += 1
                self._dfs()
                self.f_closed -= 1
                self._unassign(t, f0, undo)
        for x in self.at[w]:
            if x == f0 or self.pred[x] != -1:
                continue
            undo = self._assign(t, x)
            if undo is None:
                continue
            self.budget.tick()
            self.visited[x] = True
            self.unseen -= 1
            self._walk(f0, x, length + 1)
            self.visited[x] = False
            self.unseen += 1
            self._unassign(t, x, undo)

    def run(self) -> bool:
        """Explore all rotation systems up to reflection; returns True when
        the space was exhausted (or the Euler bound was attained)."""
        root = max(range(self.nv), key=lambda v: (self.deg[v], -v))
        darts = self.at[root]
        d0, rest = darts[0], darts[1:]
        try:
            for perm in permutations(rest):
                if len(perm) >= 2 and perm[0] > perm[-1]:
                    continue  # mirror image: same genus
                if self.best_genus is not None and self.best_genus <= self.euler_lb:
                    return True
                self.budget.tick()
                cycle = (d0,) + perm
                undos = []
                for i, t in enumerate(cycle):
                    x = cycle[(i + 1) % len(cycle)]
                    undo = self._assign(t, x)
                    if undo is None:
                        raise GenusLabError("internal error: root rotation rejected")
                    undos.append((t, x, undo))
                self._dfs()
                for t, x, undo in reversed(undos):
                    self._unassign(t, x, undo)
        except _BudgetExhausted:
            return False
        return True

    # helpers --------------------------------------------------------------------

    def default_succ(self) -> list[int]:
        """The sorted-order rotation, used as a fallback witness when the
        budget dies before any embedding completes."""
        succ = [-1] * self.nd
        for darts in self.at:
            for i, d in enumerate(darts):
                succ[d] = darts[(i + 1) % len(darts)]
        return succ

    def genus_of_succ(self, succ: list[int]) -> int:
        visited = [False] * self.nd
        faces = 0
        for d0 in range(self.nd):
            if visited[d0]:
                continue
            d = d0
            while not visited[d]:
                visited[d] = True
                d = succ[d ^ 1]
            faces += 1
        return (2 - self.nv + self.ne - faces) // 2

    def rotation_of_succ(
        self, succ: list[int], keys: list[int]
    ) -> dict[int, list[tuple[int, int]]]:
        """Convert a successor array into {original vertex: [(key, end), ...]}."""
        rot: dict[int, list[tuple[int, int]]] = {}
        for vi, darts in enumerate(self.at):
            order = []
            d = darts[0]
            for _ in darts:
                order.append((keys[d >> 1], d & 1))
                d = succ[d]
            rot[self.verts[vi]] = order
        return rot


def genus_exact(g: Multigraph, budget: SearchBudget | None = None) -> GenusInterval:
    """Exact orientable genus by branch and bound over rotation systems.

    Disconnected graphs are summed over components.  Within the node budget
    the result is exact with an embedding witness; otherwise an interval with
    the best embedding found (or a default one) and the proven lower bound.
    """
    state = _BudgetState(budget or SearchBudget())
    lower = 0
    upper = 0
    exact_all = True
    rot_parts: dict[int, list[tuple[int, int]]] = {}
    for comp in g.components():
        red = _Reduction(g, comp)
        red.reduce()
        if not red.edges:
            for v, order in red.lift({}).items():
                rot_parts[v] = order
            continue
        keys = sorted(red.edges)
        endpoints = [red.edges[k] for k in keys]
        search = _ComponentSearch(endpoints, state)
        finished = search.run() if not state.dead else False
        if search.best_succ is None:
            succ = search.default_succ()
            comp_upper = search.genus_of_succ(succ)
        else:
            succ = search.best_succ
            comp_upper = search.best_genus
        comp_lower = comp_upper if finished else search.euler_lb
        lower += comp_lower
        upper += comp_upper
        exact_all = exact_all and finished
        for v, order in red.lift(search.rotation_of_succ(succ, keys)).items():
            rot_parts[v] = order
    orders = tuple(
        tuple(2 * key + end for key, end in rot_parts.get(v, []))
        for v in range(g.num_vertices)
    )
    witness = trace_faces(g, RotationSystem(orders))
    if witness.genus != upper:
        raise GenusLabError(
            f"internal error: lifted witness genus {witness.genus} != searched {upper}"
        )
    return GenusInterval(
        lower=lower,
        upper=upper,
        exact=exact_all,
        witness=witness,
        budget_exhausted=state.dead,
        nodes_used=state.nodes,
    )


# ---------------------------------------------------------------------------
# rotation and witness formats
#
#   rot: v e.i e.i ...     darts clockwise; dart = (edge id).(end index)
#   face: length count
#   genus: g
#
# A witness file is a multigraph section followed by rot/face/genus lines.
# ---------------------------------------------------------------------------


def _format_dart(d: int) -> str:
    return f"{d >> 1}.{d & 1}"


def _parse_dart(tok: str, lineno: int) -> int:
    try:
        eid, end = tok.split(".")
        eid, end = int(eid), int(end)
        if end not in (0, 1) or eid < 0:
            raise ValueError(tok)
        return 2 * eid + end
    except ValueError as exc:
        raise FormatError(f"bad dart token {tok!r}", lineno) from exc


def format_rotation(rot: RotationSystem) -> str:
    lines = []
    for v, order in enumerate(rot.orders):
        lines.append("rot: " + " ".join([str(v)] + [_format_dart(d) for d in order]))
    return "\n".join(lines) + "\n"


def format_witness(w: EmbeddingWitness) -> str:
    parts = [format_multigraph(w.graph), format_rotation(w.rotation)]
    for length, count in sorted(w.census.items()):
        parts.append(f"face: {length} {count}\n")
    parts.append(f"genus: {w.genus}\n")
    return "".join(parts)


def parse_witness(text: str) -> EmbeddingWitness:
    graph_lines = []
    rots: dict[int, tuple[int, ...]] = {}
    census: dict[int, int] = {}
    genus: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        toks = rest.split()
        if key in ("vertices", "edge", "arc"):
            graph_lines.append(raw)
        elif key == "rot":
            try:
                v = int(toks[0])
            except (ValueError, IndexError) as exc:
                raise FormatError("rot: needs a vertex id", lineno) from exc
            if v in rots:
                raise FormatError(f"duplicate rot: line for vertex {v}", lineno)
            rots[v] = tuple(_parse_dart(t, lineno) for t in toks[1:])
        elif key == "face":
            try:
                census[int(toks[0])] = int(toks[1])
            except (ValueError, IndexError) as exc:
                raise FormatError("face: needs length and count", lineno) from exc
        elif key == "genus":
            try:
                genus = int(toks[0])
            except (ValueError, IndexError) as exc:
                raise FormatError("genus: needs an integer", lineno) from exc
        else:
            raise FormatError(f"unknown directive {key!r}", lineno)
    g = parse_multigraph("\n".join(graph_lines))
    if genus is None:
        raise FormatError("missing genus: line")
    orders = tuple(rots.get(v, ()) for v in range(g.num_vertices))
    if set(rots) - set(range(g.num_vertices)):
        raise FormatError("rot: line for a vertex outside the graph")
    return EmbeddingWitness(g, RotationSystem(orders), census, genus)


def verify_witness(w: EmbeddingWitness) -> tuple[bool, str | None]:
    """Re-trace the faces and compare census and genus against the claims."""
    try:
        traced = trace_faces(w.graph, w.rotation)
    except GenusLabError as exc:
        return False, str(exc)
    if traced.census != w.census:
        return False, f"face census mismatch: traced {traced.census}, claimed {w.census}"
    if traced.genus != w.genus:
        return False, f"genus mismatch: traced {traced.genus}, claimed {w.genus}"
    return True, None


def witness_to_json(w: EmbeddingWitness) -> str:
    obj = {
        "graph": json.loads(multigraph_to_json(w.graph)),
        "rot": [list(order) for order in w.rotation.orders],
        "faces": {str(k): v for k, v in sorted(w.census.items())},
        "genus": w.genus,
    }
    return json.dumps(obj, indent=2) + "\n"


def witness_from_json(text: str) -> EmbeddingWitness:
    try:
        obj = json.loads(text)
        g = multigraph_from_json(json.dumps(obj["graph"]))
        rot = RotationSystem(tuple(tuple(int(d) for d in order) for order in obj["rot"]))
        census = {int(k): int(v) for k, v in obj["faces"].items()}
        return EmbeddingWitness(g, rot, census, int(obj["genus"]))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FormatError(f"bad witness JSON: {exc}") from exc
