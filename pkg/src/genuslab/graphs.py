"""Multigraphs and simple digraphs, the two graph images of an automaton, and
girth under edge-simple cycle semantics.

A cycle here is a closed walk in the undirected multigraph repeating no edge:
a self-loop has length 1, a parallel pair length 2, and walking one edge back
and forth is not a cycle.  Standard vertex-girth routines get multigraphs
wrong, hence the explicit short-circuits below.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass

from genuslab.dfa import Dfa
from genuslab.errors import FormatError, GenusLabError


@dataclass(frozen=True)
class Edge:
    """One multigraph edge; when ``directed`` is set, ``u`` is the tail."""

    u: int
    v: int
    directed: bool = False

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class Multigraph:
    """Vertices ``0..n-1`` plus an edge list; edge ids are list positions.
    Self-loops and repeated endpoint pairs are allowed."""

    num_vertices: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        for e in self.edges:
            if not (0 <= e.u < self.num_vertices and 0 <= e.v < self.num_vertices):
                raise GenusLabError(f"edge ({e.u},{e.v}) out of range")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        # self-loops count twice
        return sum((e.u == v) + (e.v == v) for e in self.edges)

    def endpoints(self, eid: int) -> tuple[int, int]:
        e = self.edges[eid]
        return e.u, e.v

    def incident(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in (e.u, e.v)]

    def components(self) -> list[list[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(self.num_vertices)}
        for e in self.edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        seen: set[int] = set()
        comps = []
        for v in range(self.num_vertices):
            if v in seen:
                continue
            comp = [v]
            seen.add(v)
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1


@dataclass(frozen=True)
class SimpleDigraph:
    """Loop-free digraph with at most one arc per ordered pair.  Arcs are kept
    sorted so arc ids (positions) are canonical."""

    num_vertices: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))
        seen = set()
        for u, v in self.arcs:
            if u == v:
                raise GenusLabError(f"self-loop at {u} not allowed in a simple digraph")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise GenusLabError(f"arc ({u},{v}) out of range")
            if (u, v) in seen:
                raise GenusLabError(f"duplicate arc ({u},{v})")
            seen.add((u, v))

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def endpoints(self, aid: int) -> tuple[int, int]:
        return self.arcs[aid]

    def out_neighbors(self, v: int) -> list[int]:
        return [w for u, w in self.arcs if u == v]

    def arc_id(self, u: int, v: int) -> int | None:
        try:
            return self.arcs.index((u, v))
        except ValueError:
            return None


@dataclass(frozen=True)
class CycleWitness:
    """A closed edge-simple walk, stored as an edge-id sequence into its host
    graph; ``directed`` asserts every step follows arc orientation."""

    edges: tuple[int, ...]
    directed: bool = False

    @property
    def length(self) -> int:
        return len(self.edges)


def check_cycle_witness(g, c: CycleWitness) -> list[int]:
    """Validate ``c`` against a Multigraph or SimpleDigraph and return the
    vertex sequence (one vertex per step, starting point repeated at close)."""
    if not c.edges:
        raise GenusLabError("a cycle has length >= 1")
    if len(set(c.edges)) != len(c.edges):
        raise GenusLabError("cycle repeats an edge")
    if c.directed:
        verts = []
        u, v = g.endpoints(c.edges[0])
        verts = [u, v]
        for eid in c.edges[1:]:
            x, y = g.endpoints(eid)
            if x != verts[-1]:
                raise GenusLabError("directed cycle steps must chain head to tail")
            verts.append(y)
        if verts[-1] != verts[0]:
            raise GenusLabError("directed cycle does not close")
        return verts
    # undirected: orient each edge as we walk
    u, v = g.endpoints(c.edges[0])
    for start in (u, v):
        verts = [start, v if start == u else u]
        ok = True
        for eid in c.edges[1:]:
            x, y = g.endpoints(eid)
            if x == verts[-1]:
                verts.append(y)
            elif y == verts[-1]:
                verts.append(x)
            else:
                ok = False
                break
        if ok and verts[-1] == verts[0]:
            return verts
    raise GenusLabError("edge sequence is not a closed walk")


def underlying_multigraph(a: Dfa) -> Multigraph:
    """One vertex per state, one oriented edge per transition, ordered by
    (state, letter) so edge ids are canonical."""
    edges = []
    for q in a.states:
        for s in a.alphabet:
            r = a.delta(q, s)
            if r is not None:
                edges.append(Edge(q, r, directed=True))
    return Multigraph(a.num_states, tuple(edges))


def digraph_multigraph(d: SimpleDigraph) -> Multigraph:
    """View a simple digraph as an oriented multigraph (arc id = edge id)."""
    return Multigraph(d.num_vertices, tuple(Edge(u, v, directed=True) for u, v in d.arcs))


def simplify(g: Multigraph) -> SimpleDigraph:
    """The retraction onto simple digraphs: drop self-loops, merge repeated
    oriented pairs.  Every edge must carry an orientation."""
    for i, e in enumerate(g.edges):
        if not e.directed:
            raise GenusLabError(f"edge {i} has no orientation tag")
    arcs = sorted({(e.u, e.v) for e in g.edges if not e.is_loop})
    return SimpleDigraph(g.num_vertices, tuple(arcs))


def girth(g: Multigraph) -> int | float:
    """Length of the shortest edge-simple cycle; ``inf`` for forests."""
    if any(e.is_loop for e in g.edges):
        return 1
    pairs: set[tuple[int, int]] = set()
    for e in g.edges:
        key = (min(e.u, e.v), max(e.u, e.v))
        if key in pairs:
            return 2
        pairs.add(key)
    # simple graph now: shortest cycle through each edge via BFS without it
    adj: dict[int, list[int]] = {v: [] for v in range(g.num_vertices)}
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    best: int | float = math.inf
    for u, v in sorted(pairs):
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            if dist[x] + 1 >= best - 1:
                continue
            for y in adj[x]:
                if (x, y) in ((u, v), (v, u)):
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def has_no_simple_cycle_up_to(g: Multigraph, k: int) -> bool:
    """True when every simple cycle is strictly longer than ``k``."""
    if k < 1:
        raise GenusLabError("cycle-length threshold must be >= 1")
    return girth(g) > k


# ---------------------------------------------------------------------------
# text and JSON formats
#
#   vertices: n
#   edge: u v [loop]     unoriented multigraph edge
#   arc: u v             oriented edge / digraph arc
# ---------------------------------------------------------------------------


def _parse_graph_lines(text: str):
    num_vertices = None
    items: list[tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        toks = rest.split()
        try:
            if key == "vertices":
                num_vertices = int(toks[0])
            elif key == "edge":
                u, v = int(toks[0]), int(toks[1])
                if len(toks) > 2 and toks[2] != "loop":
                    raise FormatError(f"unexpected token {toks[2]!r}", lineno)
                items.append(("edge", u, v))
            elif key == "arc":
                items.append(("arc", int(toks[0]), int(toks[1])))
            else:
                raise FormatError(f"unknown directive {key!r}", lineno)
        except FormatError:
            raise
        except (ValueError, IndexError) as exc:
            raise FormatError(f"bad {key!r} line: {exc}", lineno) from exc
    if num_vertices is None:
        raise FormatError("missing vertices: directive")
    return num_vertices, items


def parse_multigraph(text: str) -> Multigraph:
    n, items = _parse_graph_lines(text)
    edges = tuple(Edge(u, v, directed=(kind == "arc")) for kind, u, v in items)
    try:
        return Multigraph(n, edges)
    except GenusLabError as exc:
        raise FormatError(str(exc)) from exc


def parse_digraph(text: str) -> SimpleDigraph:
    n, items = _parse_graph_lines(text)
    for kind, u, v in items:
        if kind != "arc":
            raise FormatError("digraph files may only contain arc: lines")
    try:
        return SimpleDigraph(n, tuple((u, v) for _, u, v in items))
    except GenusLabError as exc:
        raise FormatError(str(exc)) from exc


def format_multigraph(g: Multigraph) -> str:
    lines = [f"vertices: {g.num_vertices}"]
    for e in g.edges:
        if e.directed:
            lines.append(f"arc: {e.u} {e.v}")
        elif e.is_loop:
            lines.append(f"edge: {e.u} {e.v} loop")
        else:
            lines.append(f"edge: {e.u} {e.v}")
    return "\n".join(lines) + "\n"


def format_digraph(d: SimpleDigraph) -> str:
    lines = [f"vertices: {d.num_vertices}"]
    lines.extend(f"arc: {u} {v}" for u, v in d.arcs)
    return "\n".join(lines) + "\n"


def multigraph_to_json(g: Multigraph) -> str:
    obj = {
        "vertices": g.num_vertices,
        "edges": [{"u": e.u, "v": e.v, "directed": e.directed} for e in g.edges],
    }
    return json.dumps(obj, indent=2) + "\n"


def multigraph_from_json(text: str) -> Multigraph:
    try:
        obj = json.loads(text)
        edges = tuple(
            Edge(int(e["u"]), int(e["v"]), bool(e.get("directed", False)))
            for e in obj["edges"]
        )
        return Multigraph(int(obj["vertices"]), edges)
    except GenusLabError as exc:
        raise FormatError(str(exc)) from exc
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FormatError(f"bad multigraph JSON: {exc}") from exc


def digraph_to_json(d: SimpleDigraph) -> str:
    obj = {"vertices": d.num_vertices, "arcs": [list(a) for a in d.arcs]}
    return json.dumps(obj, indent=2) + "\n"


def digraph_from_json(text: str) -> SimpleDigraph:
    try:
        obj = json.loads(text)
        return SimpleDigraph(
            int(obj["vertices"]), tuple((int(u), int(v)) for u, v in obj["arcs"])
        )
    except GenusLabError as exc:
        raise FormatError(str(exc)) from exc
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FormatError(f"bad digraph JSON: {exc}") from exc
