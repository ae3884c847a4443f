"""Exact decision procedures, independent of the constructive solvers.

Everything here is ground truth: a max-flow router for setwise disjoint
paths, an exhaustive backtracking decision for pairing linkages, BFS path
search under avoid sets, separator structure checks, and the linkage
validator.  The constructive engine never shares code with these beyond the
cube adjacency model, so an engine bug cannot hide behind an oracle bug.

Hosts are either a ``cube_core.CubeGraph`` (a cube, possibly with removed
vertices) or a ``FixtureGraph`` (explicit adjacency lists, string vertex
names).  Instances serialize as JSON::

    {"host": {"type": "cube", "d": 4, "forbidden": ["1111"]},
     "pairs": [["0000", "0011"], ["0101", "1010"]]}

    {"host": {"type": "graph", "vertices": [...], "edges": [[a, b], ...]},
     "pairs": [["s1", "t1"], ["s2", "t2"]]}

Vertices of cube hosts are binary strings, most significant coordinate
first; fixture vertices are their names.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from . import cube_core
from .cube_core import CubeGraph

Vertex = Union[int, str]
Path = list
Linkage = list

DEFAULT_NODE_BUDGET = 10**8

LINKED = "linked"
UNLINKED = "unlinked"
BUDGET_EXCEEDED = "budget_exceeded"


class InvariantError(RuntimeError):
    """An internal invariant failed; carries enough context to replay."""

    def __init__(self, message: str, context: dict | None = None) -> None:
        super().__init__(message)
        self.context = context or {}


# ---------------------------------------------------------------------------
# Hosts


@dataclass(frozen=True)
class FixtureGraph:
    """A small explicit graph with string vertex names."""

    name: str
    adjacency: Mapping[str, tuple[str, ...]]
    removed: frozenset = field(default_factory=frozenset)

    @property
    def vertex_count(self) -> int:
        return sum(1 for v in self.adjacency if v not in self.removed)

    def vertex_list(self) -> list[str]:
        return sorted(v for v in self.adjacency if v not in self.removed)

    def has_vertex(self, v: Vertex) -> bool:
        return v in self.adjacency and v not in self.removed

    def neighbors(self, v: Vertex) -> list[str]:
        return [w for w in self.adjacency[v] if w not in self.removed]

    def without(self, extra: Iterable[Vertex]) -> "FixtureGraph":
        return FixtureGraph(self.name, self.adjacency, self.removed | frozenset(extra))

    def format_vertex(self, v: Vertex) -> str:
        if v not in self.adjacency:
            raise ValueError(f"unknown vertex {v!r} in graph {self.name!r}")
        return str(v)

    def parse_vertex(self, s: str) -> str:
        if s not in self.adjacency:
            raise ValueError(f"unknown vertex {s!r} in graph {self.name!r}")
        if s in self.removed:
            raise ValueError(f"vertex {s!r} is removed from this host")
        return s


HostGraph = Union[CubeGraph, FixtureGraph]


def fixture_graph(name: str, edges: Iterable[tuple[str, str]],
                  vertices: Iterable[str] = ()) -> FixtureGraph:
    """Build a FixtureGraph from an edge list; isolated vertices may be listed."""
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for a, b in edges:
        if a == b:
            raise ValueError(f"self-loop at {a!r}")
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    frozen = {v: tuple(sorted(ws)) for v, ws in sorted(adj.items())}
    return FixtureGraph(name, frozen)


def pyramid2_quad() -> FixtureGraph:
    """Two-fold pyramid over a quadrangle.

    Six vertices: s1, s2, t1, t2 on a 4-cycle in this cyclic order, plus two
    apexes x and y adjacent to all other vertices and to each other.  The
    graph is 2-linked but not strongly 2-linked: remove an apex and the
    crossing pairing {s1,t1},{s2,t2} has no linkage.
    """
    cycle = [("s1", "s2"), ("s2", "t1"), ("t1", "t2"), ("t2", "s1")]
    apex = [(a, v) for a in ("x", "y") for v in ("s1", "s2", "t1", "t2")]
    return fixture_graph("pyramid2-quad", cycle + apex + [("x", "y")])


def host_adjacent(G: HostGraph, u: Vertex, v: Vertex) -> bool:
    if isinstance(G, CubeGraph):
        return G.has_vertex(u) and G.has_vertex(v) and cube_core.adjacent(u, v)
    return G.has_vertex(u) and G.has_vertex(v) and v in G.adjacency[u]


# ---------------------------------------------------------------------------
# Pairings


@dataclass(frozen=True)
class Pairing:
    """An ordered list of k unordered terminal pairs with all 2k distinct."""

    pairs: tuple

    def __post_init__(self) -> None:
        pairs = tuple((s, t) for s, t in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("a pairing needs at least one pair")
        flat = [v for p in pairs for v in p]
        if len(set(flat)) != len(flat):
            seen = set()
            dup = next(v for v in flat if v in seen or seen.add(v))
            raise ValueError(f"terminals are not distinct: {dup!r} repeats")

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def terminals(self) -> tuple:
        return tuple(v for p in self.pairs for v in p)


# ---------------------------------------------------------------------------
# JSON plumbing


def host_to_json(G: HostGraph) -> dict:
    if isinstance(G, CubeGraph):
        return {
            "type": "cube",
            "d": G.d,
            "forbidden": [cube_core.format_vertex(G.d, v) for v in sorted(G.removed)],
        }
    edges = set()
    for v, ws in G.adjacency.items():
        for w in ws:
            edges.add((min(v, w), max(v, w)))
    out = {
        "type": "graph",
        "vertices": sorted(G.adjacency),
        "edges": [list(e) for e in sorted(edges)],
    }
    if G.removed:
        out["forbidden"] = sorted(G.removed)
    return out


def host_from_json(obj: dict) -> HostGraph:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("host object must be a dict with a 'type' field")
    if obj["type"] == "cube":
        d = obj.get("d")
        cube_core.check_dim(d)
        forbidden = frozenset(
            cube_core.parse_vertex(d, s) for s in obj.get("forbidden", [])
        )
        return CubeGraph(d, forbidden)
    if obj["type"] == "graph":
        names = obj.get("vertices", [])
        edges = [(a, b) for a, b in obj.get("edges", [])]
        G = fixture_graph(str(obj.get("name", "graph")), edges, names)
        forbidden = obj.get("forbidden", [])
        if forbidden:
            for s in forbidden:
                G.parse_vertex(s)
            G = G.without(forbidden)
        return G
    raise ValueError(f"unknown host type {obj['type']!r}")


def pairing_to_json(G: HostGraph, Y: Pairing) -> list:
    return [[G.format_vertex(s), G.format_vertex(t)] for s, t in Y.pairs]


def pairing_from_json(G: HostGraph, obj: Iterable) -> Pairing:
    pairs = []
    for item in obj:
        if len(item) != 2:
            raise ValueError(f"pair {item!r} must have exactly two vertices")
        s, t = item
        pairs.append((G.parse_vertex(s), G.parse_vertex(t)))
    return Pairing(tuple(pairs))


def instance_to_json(G: HostGraph, Y: Pairing) -> dict:
    return {"host": host_to_json(G), "pairs": pairing_to_json(G, Y)}


def parse_instance(obj: dict) -> tuple[HostGraph, Pairing]:
    if not isinstance(obj, dict) or "host" not in obj or "pairs" not in obj:
        raise ValueError("instance object needs 'host' and 'pairs' fields")
    G = host_from_json(obj["host"])
    return G, pairing_from_json(G, obj["pairs"])


def linkage_to_json(G: HostGraph, L: Linkage) -> list:
    return [[G.format_vertex(v) for v in path] for path in L]


def linkage_from_json(G: HostGraph, obj: Iterable) -> Linkage:
    return [[G.parse_vertex(s) for s in path] for path in obj]


# ---------------------------------------------------------------------------
# BFS path search


def avoid_path(G: HostGraph, s: Vertex, t: Vertex, avoid: Iterable[Vertex]) -> Path | None:
    """Shortest s-t path in G minus the avoid set, or None if disconnected.

    Deterministic: BFS visits neighbors in ascending order, so ties break
    toward lexicographically earlier parents.
    """
    avoid_set = frozenset(avoid)
    if s in avoid_set or t in avoid_set:
        raise ValueError("avoid_path endpoints must not be in the avoid set")
    for v in (s, t):
        if not G.has_vertex(v):
            raise ValueError(f"endpoint {v!r} is not a vertex of the host")
    if s == t:
        return [s]
    parent = {s: None}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in sorted(G.neighbors(v)):
            if w in parent or w in avoid_set:
                continue
            parent[w] = v
            if w == t:
                path = [t]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            queue.append(w)
    return None


# ---------------------------------------------------------------------------
# Menger-style setwise routing via max-flow


@dataclass(frozen=True)
class MengerResult:
    """Outcome of menger_disjoint_paths.

    ``paths`` holds min(count, flow) A-B paths.  When fewer than ``count``
    exist, ``complete`` is False and (in the default mode) ``separator``
    is a vertex set of size == flow, drawn from V minus (A union B), whose
    removal separates A from B.  Strict mode reports no separator.
    """

    paths: list
    separator: list | None
    complete: bool

    @property
    def flow(self) -> int:
        return len(self.paths)


def menger_disjoint_paths(G: HostGraph, A: Iterable[Vertex], B: Iterable[Vertex],
                          count: int, *, strict: bool = False) -> MengerResult:
    """Route ``count`` disjoint A-B paths, or expose a small separator.

    Each returned path meets A only at its first vertex and B only at its
    last.  In the default (fan) mode, distinct paths may share endpoints:
    a single vertex of A can be the start of several paths, which is the
    setwise Menger statement matching separators drawn from V minus
    (A union B).  With ``strict=True`` every vertex, terminals included,
    is used by at most one path, so a full routing has ``count`` distinct
    start vertices; callers use this to push a terminal set into a facet.

    Vertices in both A and B become one-vertex paths first.  Implemented as
    unit-capacity max-flow on the vertex-split digraph (fan mode uncaps the
    terminal splits); augmenting paths are shortest-first, so results are
    deterministic.
    """
    if count <= 0:
        raise ValueError(f"count must be positive, got {count}")
    A_set = frozenset(A)
    B_set = frozenset(B)
    if not A_set or not B_set:
        raise ValueError("A and B must be nonempty")
    for v in A_set | B_set:
        if not G.has_vertex(v):
            raise ValueError(f"terminal {v!r} is not a vertex of the host")

    trivial = [[v] for v in sorted(A_set & B_set)]
    if len(trivial) >= count:
        return MengerResult(trivial[:count], None, True)
    work = G.without(A_set & B_set) if trivial else G
    A_run = A_set - B_set
    B_run = B_set - A_set
    if not A_run or not B_run:
        # Every remaining source or sink was consumed by the overlap.
        return _menger_incomplete(G, work, A_set, B_set, trivial, [], {}, count, strict)
    need = count - len(trivial)
    paths, flow_map = _max_flow_paths(work, A_run, B_run, need, strict)
    if len(paths) >= need:
        return MengerResult(trivial + paths[:need], None, True)
    return _menger_incomplete(G, work, A_set, B_set, trivial, paths, flow_map, count, strict)


def _menger_incomplete(G, work, A_set, B_set, trivial, paths, flow_map, count, strict):
    all_paths = trivial + paths
    if strict:
        return MengerResult(all_paths, None, False)
    if trivial:
        raise ValueError(
            "no separator witness exists: A and B overlap, and a shared "
            "vertex is an uncuttable one-vertex path"
        )
    for a in A_set:
        for w in G.neighbors(a):
            if w in B_set:
                raise ValueError(
                    "no separator witness exists: an A-B edge cannot be cut "
                    f"by vertices outside A and B (edge {a!r}-{w!r})"
                )
    sep = _extract_separator(work, A_set, B_set, flow_map)
    if len(sep) != len(paths):
        raise InvariantError(
            "separator size disagrees with flow value",
            {"separator": sorted(sep), "flow": len(paths)},
        )
    leak = _reaches(work, A_set, B_set, sep)
    if leak:
        raise InvariantError(
            "extracted separator fails to separate", {"separator": sorted(sep)}
        )
    return MengerResult(all_paths, sorted(sep), False)


# Flow network nodes are ('i', v) / ('o', v) splits plus 'S' and 'T'.
# Arcs: S -> ('i',a) for a in A; ('i',a) -> ('o',a); ('o',v) -> ('i',w) for
# edges vw with w not in A; ('i',b) -> T for b in B.  B out-nodes have no
# arcs and A in-nodes no edge arcs, so paths meet A at the start and B at
# the end, structurally.  Interior splits are capacity 1; terminal arcs get
# capacity `need` in fan mode, 1 in strict mode.


def _arc_cap(node, succ, A_set, B_set, loose: int) -> int:
    if node == "S":
        return loose
    kind, v = node
    if kind == "i":
        if succ == "T":
            return loose
        return loose if v in A_set else 1
    return 1  # edge arc


def _successors(G, node, A_set, B_set):
    if node == "S":
        return [("i", a) for a in sorted(A_set)]
    kind, v = node
    if kind == "i":
        if v in B_set:
            return ["T"]
        return [("o", v)]
    if v in B_set:
        return []
    return [("i", w) for w in sorted(G.neighbors(v)) if w not in A_set]


def _max_flow_paths(G, A_set, B_set, need: int, strict: bool):
    loose = 1 if strict else need
    flow: dict = {}
    in_flow: dict = {}

    def residual_neighbors(node):
        for succ in _successors(G, node, A_set, B_set):
            cap = _arc_cap(node, succ, A_set, B_set, loose)
            if cap - flow.get((node, succ), 0) > 0:
                yield succ, (node, succ), +1
        for pred in in_flow.get(node, ()):  # cancel existing flow
            if flow.get((pred, node), 0) > 0:
                yield pred, (pred, node), -1

    value = 0
    while value < need:
        parent = {"S": None}
        queue = deque(["S"])
        found = False
        while queue and not found:
            node = queue.popleft()
            for succ, arc, sign in residual_neighbors(node):
                if succ in parent:
                    continue
                parent[succ] = (node, arc, sign)
                if succ == "T":
                    found = True
                    break
                queue.append(succ)
        if not found:
            break
        node = "T"
        while parent[node] is not None:
            prev, arc, sign = parent[node]
            flow[arc] = flow.get(arc, 0) + sign
            if sign > 0:
                in_flow.setdefault(arc[1], set()).add(arc[0])
            node = prev
        value += 1

    paths = []
    for a in sorted(A_set):
        while flow.get(("S", ("i", a)), 0) > 0:
            flow["S", ("i", a)] -= 1
            path = [a]
            node = ("i", a)
            while node != "T":
                for succ in _successors(G, node, A_set, B_set):
                    if flow.get((node, succ), 0) > 0:
                        flow[node, succ] -= 1
                        if succ != "T" and succ[0] == "i":
                            path.append(succ[1])
                        node = succ
                        break
                else:
                    raise InvariantError("flow decomposition ran out of arcs")
            paths.append(path)
    # Rebuild the flow map for separator extraction (decomposition consumed it).
    flow_map: dict = {}
    for path in paths:
        flow_map["S", ("i", path[0])] = flow_map.get(("S", ("i", path[0])), 0) + 1
        for u, w in zip(path, path[1:]):
            flow_map[("i", u), ("o", u)] = flow_map.get((("i", u), ("o", u)), 0) + 1
            flow_map[("o", u), ("i", w)] = flow_map.get((("o", u), ("i", w)), 0) + 1
        flow_map[("i", path[-1]), "T"] = flow_map.get((("i", path[-1]), "T"), 0) + 1
    return paths, flow_map


def _extract_separator(G, A_set, B_set, flow_map):
    in_flow: dict = {}
    for (a, b), f in flow_map.items():
        if f > 0:
            in_flow.setdefault(b, set()).add(a)
    loose = len(flow_map) + 2  # terminal arcs are never saturated below count

    reach = {"S"}
    queue = deque(["S"])
    while queue:
        node = queue.popleft()
        for succ in _successors(G, node, A_set, B_set):
            cap = _arc_cap(node, succ, A_set, B_set, loose)
            if succ not in reach and cap - flow_map.get((node, succ), 0) > 0:
                reach.add(succ)
                queue.append(succ)
        for pred in in_flow.get(node, ()):
            if pred not in reach and flow_map.get((pred, node), 0) > 0:
                reach.add(pred)
                queue.append(pred)

    sep = set()
    for node in reach:
        if node in ("S", "T"):
            continue
        kind, v = node
        for succ in _successors(G, node, A_set, B_set):
            if succ in reach or succ == "T":
                continue
            if kind == "i":
                sep.add(v)  # the split arc of an interior vertex
            else:
                w = succ[1]
                sep.add(w if w not in B_set else v)
    return sep


def _reaches(G, A_set, B_set, removed) -> bool:
    removed = set(removed)
    seen = set(a for a in A_set if a not in removed)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        if v in B_set:
            return True
        for w in G.neighbors(v):
            if w not in seen and w not in removed:
                seen.add(w)
                queue.append(w)
    return any(b in seen for b in B_set)


# ---------------------------------------------------------------------------
# Exact pairing-linkage decision


@dataclass(frozen=True)
class DecideOutcome:
    """Result of decide_linked.

    ``status`` is one of LINKED / UNLINKED / BUDGET_EXCEEDED.  An UNLINKED
    certificate records the routing order whose search space was exhausted;
    a LINKED outcome carries the witness linkage.
    """

    status: str
    linkage: list | None
    pair_order: tuple
    nodes_used: int

    def __bool__(self) -> bool:
        return self.status == LINKED


class _BudgetExhausted(Exception):
    pass


def decide_linked(G: HostGraph, Y: Pairing, budget: int = DEFAULT_NODE_BUDGET) -> DecideOutcome:
    """Exact backtracking decision: is the pairing linked in G?

    Deterministic: pairs are routed in input order and paths extend through
    the lowest neighbor first.  Pruning is sound: a partial state is
    abandoned when some unfinished pair has its endpoints separated in the
    graph minus the vertices already used and minus all other terminals
    (terminals of other pairs can never lie on a pair's path, since each is
    an endpoint of its own path in any linkage).  The node budget turns
    oversize searches into an explicit BUDGET_EXCEEDED outcome; it is never
    reported as UNLINKED.
    """
    for v in Y.terminals:
        if not G.has_vertex(v):
            raise ValueError(f"terminal {v!r} is not a usable vertex of the host")
    k = Y.k
    terminals = frozenset(Y.terminals)
    used: set = set()
    paths: list = []
    nodes = 0

    def feasible(i: int, cur: Vertex) -> bool:
        for j in range(i, k):
            a = cur if j == i else Y.pairs[j][0]
            b = Y.pairs[j][1]
            allowed_t = {a, b}
            seen = {a}
            queue = deque([a])
            ok = False
            while queue:
                v = queue.popleft()
                if v == b:
                    ok = True
                    break
                for w in G.neighbors(v):
                    if w in seen or w in used or (w in terminals and w not in allowed_t):
                        continue
                    seen.add(w)
                    queue.append(w)
            if not ok:
                return False
        return True

    def start_pair(i: int) -> bool:
        if i == k:
            return True
        s = Y.pairs[i][0]
        used.add(s)
        paths.append([s])
        if extend(i, s):
            return True
        paths.pop()
        used.discard(s)
        return False

    def extend(i: int, cur: Vertex) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExhausted
        t = Y.pairs[i][1]
        if cur == t:
            return start_pair(i + 1)
        if not feasible(i, cur):
            return False
        for w in sorted(G.neighbors(cur)):
            if w in used:
                continue
            if w in terminals and w != t:
                continue
            used.add(w)
            paths[i].append(w)
            if extend(i, w):
                return True
            paths[i].pop()
            used.discard(w)
        return False

    order = tuple(range(k))
    try:
        if start_pair(0):
            return DecideOutcome(LINKED, [list(p) for p in paths], order, nodes)
        return DecideOutcome(UNLINKED, None, order, nodes)
    except _BudgetExhausted:
        return DecideOutcome(BUDGET_EXCEEDED, None, order, nodes)


# ---------------------------------------------------------------------------
# Separator structure


NOT_SEPARATOR = "NOT_SEPARATOR"
NEIGHBORHOOD = "NEIGHBORHOOD"
VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class SeparatorReport:
    kind: str
    center: int | None = None
    detail: str = ""


def check_separator_structure(d: int, S: Iterable[int]) -> SeparatorReport:
    """Classify a size-d vertex set of Q_d as separator structure demands.

    A size-d set either fails to separate Q_d, or it is exactly the
    neighborhood N(u) of some vertex (and then an independent set).  The
    VIOLATION kind exists so harnesses can assert it never appears.
    """
    cube_core.check_dim(d)
    S_set = frozenset(S)
    if len(S_set) != d:
        raise ValueError(f"separator check needs exactly d={d} vertices, got {len(S_set)}")
    for v in S_set:
        cube_core.check_vertex(d, v)
    G = CubeGraph(d, S_set)
    rest = G.vertex_list()
    if not rest:
        return SeparatorReport(NOT_SEPARATOR, detail="no vertices remain")
    seen = {rest[0]}
    queue = deque([rest[0]])
    while queue:
        v = queue.popleft()
        for w in G.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) == len(rest):
        return SeparatorReport(NOT_SEPARATOR)
    centers = [u for u in rest if frozenset(cube_core.neighbors(d, u)) == S_set]
    if not centers:
        return SeparatorReport(VIOLATION, detail="separating set is no vertex neighborhood")
    for a in S_set:
        for b in S_set:
            if a < b and cube_core.adjacent(a, b):
                return SeparatorReport(
                    VIOLATION, detail=f"separating neighborhood contains edge {a}-{b}"
                )
    return SeparatorReport(NEIGHBORHOOD, center=min(centers))


def max_shared_neighbors(d: int, u: int, v: int) -> int:
    """|N(u) and N(v)| in Q_d: two for distance-2 pairs, zero otherwise."""
    if u == v:
        raise ValueError("max_shared_neighbors needs two distinct vertices")
    cube_core.check_vertex(d, u)
    cube_core.check_vertex(d, v)
    return len(set(cube_core.neighbors(d, u)) & set(cube_core.neighbors(d, v)))


# ---------------------------------------------------------------------------
# Linkage validation


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    clause: str | None = None
    witness: object = None
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def validate_linkage(G: HostGraph, Y: Pairing, L: Linkage) -> ValidationReport:
    """Check every linkage invariant; report the first violated clause.

    Clauses, in check order: PATH_COUNT, ENDPOINTS (each path's endpoint set
    is its pair, either orientation), MEMBERSHIP (vertices exist and are not
    forbidden), REPEAT (paths are simple), ADJACENCY (consecutive hops are
    edges), DISJOINTNESS (no vertex on two paths).
    """
    if len(L) != Y.k:
        return ValidationReport(
            False, "PATH_COUNT", len(L), f"expected {Y.k} paths, got {len(L)}"
        )
    for i, (path, (s, t)) in enumerate(zip(L, Y.pairs)):
        if not path or {path[0], path[-1]} != {s, t}:
            return ValidationReport(
                False, "ENDPOINTS", i,
                f"path {i} endpoints {path[:1]}...{path[-1:]} do not match pair {(s, t)}",
            )
        for v in path:
            if not G.has_vertex(v):
                return ValidationReport(
                    False, "MEMBERSHIP", v,
                    f"path {i} uses {v!r}, which is not a usable host vertex",
                )
        if len(set(path)) != len(path):
            seen: set = set()
            dup = next(v for v in path if v in seen or seen.add(v))
            return ValidationReport(
                False, "REPEAT", dup, f"path {i} repeats vertex {dup!r}"
            )
        for a, b in zip(path, path[1:]):
            if not host_adjacent(G, a, b):
                return ValidationReport(
                    False, "ADJACENCY", (a, b), f"path {i} hop {a!r}-{b!r} is not an edge"
                )
    placed: dict = {}
    for i, path in enumerate(L):
        for v in path:
            if v in placed:
                return ValidationReport(
                    False, "DISJOINTNESS", v,
                    f"vertex {v!r} lies on paths {placed[v]} and {i}",
                )
            placed[v] = i
    return ValidationReport(True)
