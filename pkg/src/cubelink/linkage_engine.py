"""Constructive linkage solvers for cube graphs.

The entry points solve three problems on Q_d hosts:

  solve_linkage(d, Y)      k disjoint paths for any pairing, k <= (d+1)//2
  solve_strong(d, Y, x)    the same avoiding one forbidden vertex, k <= d//2
  solve_link(D, v, Y)      a linkage in Q_D minus {v, opposite(v)}

Every solver reduces along facets until instances are small enough for the
exact search in path_oracle (dimension at most four), so the recursion is
paved with guaranteed cases.  The internal contract is uniform: a call on
Q_d with k pairs and an avoid set A is legal when 2k + |A| <= d + 1 and
d != 3, and within that budget the solver never fails.  Violations of the
construction's internal facts raise InvariantError with a replayable
context; they indicate bugs, not unsolvable inputs.

The dispatch, in order: single pairs go to BFS; d <= 4 goes to the oracle
search; slack instances (k below the maximum, or a nonempty avoid set)
project into a facet chosen through a free direction; tight even d splits
off a facet by Menger routing; tight odd d classifies into one of three
scenario constructions (all pairs antipodal / all terminals in one facet /
the rest).  Each recursion level appends a label to the scenario trace of
the result, e.g. "Q7:scenario3", so a solve is auditable after the fact.

Set SELF_CHECK = True (tests do) to validate every internal recursion
level's output against its own sub-instance, not just the final linkage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import cube_core
from .cube_core import (
    CubeGraph,
    Face,
    delete_coordinate,
    face_vertices,
    facet,
    free_direction,
    insert_coordinate,
    link_graph,
    opposite,
    project,
)
from .path_oracle import (
    LINKED,
    HostGraph,
    InvariantError,
    Pairing,
    avoid_path,
    decide_linked,
    instance_to_json,
    menger_disjoint_paths,
    validate_linkage,
)

# When True, every recursion level validates its own output against the
# sub-instance it solved (dimension, pairing, avoid set).  Tests enable it.
SELF_CHECK = False


class UnsupportedInstanceError(ValueError):
    """The instance falls outside the guaranteed range (e.g. two pairs in Q3)."""

    def __init__(self, message: str, certificate: object = None) -> None:
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class SolveResult:
    """A solved instance: host, pairing, the linkage, and the case trace."""

    host: CubeGraph
    pairing: Pairing
    linkage: list
    trace: tuple

    def to_json(self) -> dict:
        out = instance_to_json(self.host, self.pairing)
        out["paths"] = [[self.host.format_vertex(v) for v in p] for p in self.linkage]
        out["scenario_trace"] = list(self.trace)
        return out


@dataclass(frozen=True)
class Config3F:
    """The Q3 obstruction: a 2-face whose four vertices are terminals, with
    witness_terminal's partner sitting at face-distance 2."""

    face: Face
    witness_terminal: int


# ---------------------------------------------------------------------------
# Small helpers


def _bit(v: int, c: int) -> int:
    return (v >> c) & 1


def _oriented(path: list, s: int, t: int) -> list:
    if path and path[0] == s and path[-1] == t:
        return path
    if path and path[0] == t and path[-1] == s:
        return path[::-1]
    raise InvariantError(
        "path endpoints disagree with its pair",
        {"path": path, "pair": (s, t)},
    )


def _facet_coord(F: Face) -> tuple[int, int]:
    """The (coordinate, value) of a facet."""
    if not F.is_facet():
        raise ValueError("expected a facet (exactly one fixed coordinate)")
    c = F.fixed_mask.bit_length() - 1
    return c, F.fixed_values >> c


def _push(v: int, F: Face, c: int) -> int:
    """Project v into facet F and drop the fixed coordinate."""
    return delete_coordinate(project(v, F), c)


def _lift(path: Iterable[int], c: int, value: int) -> list:
    return [insert_coordinate(u, c, value) for u in path]


def _terminals(pairs: list) -> list:
    return [v for p in pairs for v in p]


def _solve_contract_check(d: int, pairs: list, avoid: frozenset) -> None:
    k = len(pairs)
    flat = _terminals(pairs)
    if len(set(flat)) != 2 * k or set(flat) & avoid:
        raise InvariantError(
            "recursive instance has colliding terminals",
            {"d": d, "pairs": pairs, "avoid": sorted(avoid)},
        )
    if 2 * k + len(avoid) > d + 1 or (d == 3 and k >= 2) or k < 1:
        raise InvariantError(
            "recursive instance exceeds the solver contract",
            {"d": d, "k": k, "avoid": sorted(avoid)},
        )
    for v in flat:
        cube_core.check_vertex(d, v)


def _self_check(d: int, pairs: list, avoid: frozenset, paths: list) -> None:
    G = CubeGraph(d, avoid)
    report = validate_linkage(G, Pairing(tuple(pairs)), paths)
    if not report:
        raise InvariantError(
            "self-check: invalid linkage from internal solver",
            {"d": d, "pairs": pairs, "avoid": sorted(avoid),
             "clause": report.clause, "message": report.message},
        )
    for path, (s, t) in zip(paths, pairs):
        if path[0] != s or path[-1] != t:
            raise InvariantError("self-check: path orientation drifted",
                                 {"pair": (s, t), "path": path})


# ---------------------------------------------------------------------------
# The uniform internal solver


def _solve(d: int, pairs: list, avoid: frozenset, trace: list) -> list:
    """k disjoint paths in Q_d avoiding `avoid`; legal when 2k+|avoid| <= d+1,
    d != 3.  Paths come back oriented, path i running pairs[i][0] -> [1]."""
    _solve_contract_check(d, pairs, avoid)
    k = len(pairs)
    if k == 1:
        trace.append(f"Q{d}:trivial_pair")
        s, t = pairs[0]
        path = avoid_path(CubeGraph(d), s, t, avoid)
        if path is None:
            # |avoid| <= d-1 < connectivity, so this cannot happen.
            raise InvariantError("BFS failed under the connectivity budget",
                                 {"d": d, "pair": pairs[0], "avoid": sorted(avoid)})
        paths = [path]
    elif d <= 4:
        trace.append(f"Q{d}:base")
        paths = base_solve(CubeGraph(d), Pairing(tuple(pairs)), avoid)
    elif avoid or k < (d + 1) // 2:
        paths = _projection(d, pairs, avoid, trace)
    elif d % 2 == 0:
        paths = _even_reduction(d, pairs, trace)
    else:
        full = (1 << d) - 1
        if all(s ^ t == full for s, t in pairs):
            paths = _scenario1(d, pairs, trace)
        else:
            F = _common_facet(d, _terminals(pairs))
            if F is not None:
                paths = _scenario2(d, pairs, F, trace)
            else:
                paths = _scenario3(d, pairs, trace)
    if SELF_CHECK:
        _self_check(d, pairs, avoid, paths)
    return paths


def _common_facet(d: int, X: list) -> Face | None:
    for c in range(d):
        bits = {_bit(x, c) for x in X}
        if len(bits) == 1:
            return facet(c, bits.pop())
    return None


# ---------------------------------------------------------------------------
# Base case: exact search on small hosts


def base_solve(G: HostGraph, Y: Pairing, avoid: Iterable[int] = ()) -> list:
    """Solve a small instance exactly; existence is guaranteed here, so UNLINKED
    here means a bug and raises InvariantError."""
    if not isinstance(G, CubeGraph):
        raise ValueError("base_solve expects a cube host")
    if G.d > 4:
        raise ValueError("base_solve is for dimension at most four")
    work = G.without(avoid)
    outcome = decide_linked(work, Y)
    if outcome.status != LINKED:
        raise InvariantError(
            f"exact search reported {outcome.status} on a guaranteed instance",
            instance_to_json(work, Y),
        )
    return [_oriented(p, s, t) for p, (s, t) in zip(outcome.linkage, Y.pairs)]


# ---------------------------------------------------------------------------
# Slack instances: project everything into one facet


def _projection(d: int, pairs: list, avoid: frozenset, trace: list) -> list:
    trace.append(f"Q{d}:projection")
    X = set(_terminals(pairs))
    if avoid:
        z_star = min(avoid)
        rest = avoid - {z_star}
        w = free_direction(d, X | rest)
        side = 1 - _bit(z_star, w)  # solve on the side away from z_star
    else:
        rest = frozenset()
        w = free_direction(d, X)
        side = 0
    F = facet(w, side)
    sub_pairs = [(_push(s, F, w), _push(t, F, w)) for s, t in pairs]
    sub_avoid = frozenset(delete_coordinate(a, w) for a in rest if F.contains(a))
    sub_paths = _solve(d - 1, sub_pairs, sub_avoid, trace)
    out = []
    for (s, t), sub in zip(pairs, sub_paths):
        path = _lift(sub, w, side)
        if not F.contains(s):
            path = [s] + path
        if not F.contains(t):
            path = path + [t]
        out.append(path)
    return out


# ---------------------------------------------------------------------------
# Tight even dimension: route terminals onto a facet, solve inside


def even_reduction(d: int, Y: Pairing) -> list:
    if d < 6 or d % 2:
        raise ValueError("even_reduction needs even dimension at least six")
    if Y.k != d // 2:
        raise ValueError(f"even_reduction needs exactly {d // 2} pairs in Q{d}")
    return _even_reduction(d, list(Y.pairs), [])


def _even_reduction(d: int, pairs: list, trace: list) -> list:
    trace.append(f"Q{d}:even_menger")
    w = d - 1
    F = facet(w, 0)
    X = _terminals(pairs)
    res = menger_disjoint_paths(
        CubeGraph(d), X, frozenset(face_vertices(d, F)), len(X), strict=True
    )
    if not res.complete:
        raise InvariantError(
            "facet routing found fewer paths than the connectivity guarantees",
            {"d": d, "pairs": pairs, "found": res.flow},
        )
    stub = {p[0]: p for p in res.paths}
    sub_pairs = [
        (delete_coordinate(stub[s][-1], w), delete_coordinate(stub[t][-1], w))
        for s, t in pairs
    ]
    sub_paths = _solve(d - 1, sub_pairs, frozenset(), trace)
    out = []
    for (s, t), sub in zip(pairs, sub_paths):
        inner = _lift(sub, w, 0)
        path = stub[s] + inner[1:]
        back = stub[t][::-1]
        out.append(path + back[1:])
    return out


# ---------------------------------------------------------------------------
# Scenario 1: every pair antipodal


def scenario1(d: int, Y: Pairing) -> list:
    if d < 5 or d % 2 == 0:
        raise ValueError("scenario1 needs odd dimension at least five")
    if Y.k != (d + 1) // 2:
        raise ValueError(f"scenario1 needs exactly {(d + 1) // 2} pairs in Q{d}")
    full = (1 << d) - 1
    for s, t in Y.pairs:
        if s ^ t != full:
            raise ValueError(f"pair ({s}, {t}) is not antipodal in Q{d}")
    return _scenario1(d, list(Y.pairs), [])


def _scenario1(d: int, pairs: list, trace: list) -> list:
    trace.append(f"Q{d}:scenario1")
    k = len(pairs)
    s1 = pairs[0][0]
    X = set(_terminals(pairs))
    w = free_direction(d, X - {s1})
    side = _bit(s1, w)
    Fo = facet(w, side)  # the facet holding every s_i after orientation
    F = Fo.opposite_facet()
    oriented = [(s, t) if _bit(s, w) == side else (t, s) for s, t in pairs]
    # Pick the second special pair: its F-side terminal must not project
    # back onto s1.  At most one pair can fail this, so a pick exists.
    idx2 = next(
        (i for i in range(1, k) if project(oriented[i][1], Fo) != s1), None
    )
    if idx2 is None:
        raise InvariantError("no usable second pair among antipodal pairs",
                             {"d": d, "pairs": pairs})
    rest = [i for i in range(1, k) if i != idx2]
    if k >= 4 and not (k - 2 <= 2 * k - 6):
        raise InvariantError("avoid-set budget bound failed", {"d": d, "k": k})

    down_pairs = [(_push(oriented[i][0], F, w), _push(oriented[i][1], F, w))
                  for i in rest]
    down_avoid = frozenset(
        delete_coordinate(oriented[i][1], w) for i in (0, idx2)
    )
    down = _solve(d - 1, down_pairs, down_avoid, trace)

    up_pairs = [(_push(oriented[i][0], Fo, w), _push(oriented[i][1], Fo, w))
                for i in (0, idx2)]
    up_avoid = frozenset(delete_coordinate(oriented[i][0], w) for i in rest)
    up = _solve(d - 1, up_pairs, up_avoid, trace)

    out: dict = {}
    for slot, i in enumerate((0, idx2)):
        s, t = oriented[i]
        out[i] = _lift(up[slot], w, side) + [t]
    for slot, i in enumerate(rest):
        s, t = oriented[i]
        out[i] = [s] + _lift(down[slot], w, 1 - side)
    return [_oriented(out[i], s, t) for i, (s, t) in enumerate(pairs)]


# ---------------------------------------------------------------------------
# Scenario 2: all terminals in one facet


def short_distance_pair(d: int, F: Face, Y: Pairing) -> tuple[int, list]:
    """First pair (input order) joinable inside F by an avoid-path dodging
    every other terminal.  At most one pair can be blocked, so the first or
    second attempt succeeds; zero successes is an invariant failure."""
    c, value = _facet_coord(F)
    sub_d = F.dim(d)
    if sub_d < 4:
        raise ValueError("short_distance_pair needs a facet of dimension >= 4")
    X = list(Y.terminals)
    if len(X) != sub_d + 2:
        raise ValueError(
            f"short_distance_pair needs exactly {sub_d + 2} terminals, got {len(X)}"
        )
    for x in X:
        if not F.contains(x):
            raise ValueError(f"terminal {x} lies outside the facet")
    G = CubeGraph(sub_d)
    reduced = [(delete_coordinate(s, c), delete_coordinate(t, c)) for s, t in Y.pairs]
    others = set(delete_coordinate(x, c) for x in X)
    for i, (s, t) in enumerate(reduced):
        path = avoid_path(G, s, t, others - {s, t})
        if path is not None:
            return i, _lift(path, c, value)
    raise InvariantError("every pair is blocked inside the facet",
                         {"d": d, "pairs": list(Y.pairs)})


def scenario2(d: int, Y: Pairing, F: Face) -> list:
    if d < 5 or d % 2 == 0:
        raise ValueError("scenario2 needs odd dimension at least five")
    if Y.k != (d + 1) // 2:
        raise ValueError(f"scenario2 needs exactly {(d + 1) // 2} pairs in Q{d}")
    if not F.is_facet():
        raise ValueError("scenario2 needs a facet")
    for x in Y.terminals:
        if not F.contains(x):
            raise ValueError(f"terminal {x} lies outside the facet")
    return _scenario2(d, list(Y.pairs), F, [])


def _scenario2(d: int, pairs: list, F: Face, trace: list) -> list:
    trace.append(f"Q{d}:scenario2")
    c, value = _facet_coord(F)
    idx, L_first = short_distance_pair(d, F, Pairing(tuple(pairs)))
    remaining = [i for i in range(len(pairs)) if i != idx]
    # Dropping the fixed coordinate maps F and F^o to the same Q_{d-1}
    # words, so the projected sub-instance reuses the reduced pairs.
    sub_pairs = [
        (delete_coordinate(pairs[i][0], c), delete_coordinate(pairs[i][1], c))
        for i in remaining
    ]
    sub_paths = _solve(d - 1, sub_pairs, frozenset(), trace)
    out = {idx: _oriented(L_first, *pairs[idx])}
    for slot, i in enumerate(remaining):
        s, t = pairs[i]
        out[i] = [s] + _lift(sub_paths[slot], c, 1 - value) + [t]
    return [out[i] for i in range(len(pairs))]


# ---------------------------------------------------------------------------
# Scenario 3: the general odd tight case


@dataclass
class ScenarioContext:
    """Bookkeeping for the general odd-dimension construction: the special
    pair and its facet, the partner involution rho, the in-facet terminal
    classes, and (once built) the entry system omega / M into F^o."""

    d: int
    face: Face
    pairs: tuple
    first: int
    rho: dict
    X_F: frozenset
    X_alpha: frozenset
    Y_alpha: tuple
    X_beta: tuple
    omega: dict | None = None
    M: dict = field(default_factory=dict)
    X_o: tuple = ()
    Y_o: tuple = ()
    S: frozenset = frozenset()


def _make_context(d: int, pairs: list, first: int, F: Face) -> ScenarioContext:
    rho = {}
    for s, t in pairs:
        rho[s] = t
        rho[t] = s
    s1, t1 = pairs[first]
    X_F = frozenset(
        x for x in rho if x not in (s1, t1) and F.contains(x)
    )
    alpha_idx = tuple(
        i for i, (s, t) in enumerate(pairs)
        if i != first and F.contains(s) and F.contains(t)
        and cube_core.adjacent(s, t)
    )
    X_alpha = frozenset(v for i in alpha_idx for v in pairs[i])
    X_beta = tuple(sorted(X_F - X_alpha))
    return ScenarioContext(d, F, tuple(pairs), first, rho,
                           X_F, X_alpha, alpha_idx, X_beta)


def build_omega(ctx: ScenarioContext) -> dict:
    """Assign each blocked F-side terminal an entry vertex in F.

    omega(x) = x unless x's projection into F^o collides with a foreign
    terminal; then omega(x) becomes the smallest neighbor of x in F that
    dodges terminals, foreign projections onto F, and earlier assignments.
    The obstruction set has at most d-2 members, so a candidate survives.
    """
    d, F = ctx.d, ctx.face
    Fo = F.opposite_facet()
    X = frozenset(ctx.rho)
    omega: dict = {}
    for x in ctx.X_beta:
        px = project(x, Fo)
        if px not in X or px == ctx.rho[x]:
            omega[x] = x
            continue
        nf = [n for n in cube_core.neighbors(ctx.d, x) if F.contains(n)]
        foreign = {project(z, F) for z in X if z != ctx.rho[x]}
        taken = set(omega.values())
        obstruction = [n for n in nf if n in X or n in foreign or n in taken]
        if len(obstruction) > d - 2:
            raise InvariantError("entry obstruction set is too large",
                                 {"x": x, "obstruction": obstruction})
        candidates = sorted(set(nf) - set(obstruction))
        if not candidates:
            raise InvariantError("no entry vertex available",
                                 {"x": x, "neighbors": nf})
        omega[x] = candidates[0]
    values = list(omega.values())
    if len(set(values)) != len(values):
        raise InvariantError("entry map is not injective", {"omega": omega})
    for x, wx in omega.items():
        clash = {wx, project(wx, Fo)} & (X - {x, ctx.rho[x]})
        if clash:
            raise InvariantError("entry vertex touches a foreign terminal",
                                 {"x": x, "omega_x": wx, "clash": sorted(clash)})
    ctx.omega = omega
    return omega


def scenario3(d: int, Y: Pairing) -> list:
    if d < 5 or d % 2 == 0:
        raise ValueError("scenario3 needs odd dimension at least five")
    if Y.k != (d + 1) // 2:
        raise ValueError(f"scenario3 needs exactly {(d + 1) // 2} pairs in Q{d}")
    full = (1 << d) - 1
    if all(s ^ t == full for s, t in Y.pairs):
        raise ValueError("all pairs antipodal: that is the scenario1 case")
    if _common_facet(d, list(Y.terminals)) is not None:
        raise ValueError("all terminals share a facet: that is the scenario2 case")
    return _scenario3(d, list(Y.pairs), [])


def scenario3_context(d: int, Y: Pairing) -> ScenarioContext:
    """Build the bookkeeping for Y as scenario3 would, including the entry
    map omega, without solving.  Handy for inspecting the construction."""
    pairs = list(Y.pairs)
    full = (1 << d) - 1
    first = next((i for i, (s, t) in enumerate(pairs) if s ^ t != full), None)
    if first is None:
        raise ValueError("all pairs antipodal: no scenario3 context exists")
    if _common_facet(d, list(Y.terminals)) is not None:
        raise ValueError("all terminals share a facet: no scenario3 context exists")
    s1, t1 = pairs[first]
    agree = next(c for c in range(d) if _bit(s1, c) == _bit(t1, c))
    F = facet(agree, _bit(s1, agree))
    ctx = _make_context(d, pairs, first, F)
    build_omega(ctx)
    return ctx


def _scenario3(d: int, pairs: list, trace: list) -> list:
    trace.append(f"Q{d}:scenario3")
    k = len(pairs)
    full = (1 << d) - 1
    first = next(i for i, (s, t) in enumerate(pairs) if s ^ t != full)
    s1, t1 = pairs[first]
    agree = next(c for c in range(d) if _bit(s1, c) == _bit(t1, c))
    value = _bit(s1, agree)
    F = facet(agree, value)
    Fo = F.opposite_facet()
    ctx = _make_context(d, pairs, first, F)
    build_omega(ctx)

    routed = set(ctx.Y_alpha) | {first}
    M: dict = {}
    for i in range(k):
        if i in routed:
            continue
        for x in pairs[i]:
            if Fo.contains(x):
                M[x] = [x]
            else:
                wx = ctx.omega[x]
                M[x] = [x, project(x, Fo)] if wx == x else [x, wx, project(wx, Fo)]
    ctx.M = M

    out: dict = {}
    for i in ctx.Y_alpha:
        out[i] = list(pairs[i])

    complete = []
    open_idx = []
    for i in range(k):
        if i in routed:
            continue
        s, t = pairs[i]
        if M[s][-1] == t:
            out[i] = M[s]
            complete.append(i)
        elif M[t][-1] == s:
            out[i] = M[t][::-1]
            complete.append(i)
        else:
            open_idx.append(i)

    sub_avoid = frozenset(
        delete_coordinate(out[i][0] if Fo.contains(out[i][0]) else out[i][-1], agree)
        for i in complete
    )
    if open_idx:
        sub_pairs = [
            (delete_coordinate(M[pairs[i][0]][-1], agree),
             delete_coordinate(M[pairs[i][1]][-1], agree))
            for i in open_idx
        ]
        sub_paths = _solve(d - 1, sub_pairs, sub_avoid, trace)
        for slot, i in enumerate(open_idx):
            s, t = pairs[i]
            mid = _lift(sub_paths[slot], agree, 1 - value)
            out[i] = M[s] + mid[1:] + M[t][::-1][1:]
    ctx.X_o = tuple(sorted(delete_coordinate(M[x][-1], agree)
                           for i in open_idx for x in pairs[i]))
    ctx.Y_o = tuple(open_idx)

    S = set(ctx.X_F) | (set(ctx.omega.values()) - set(ctx.rho))
    ctx.S = frozenset(S)
    if len(S) > d - 1:
        raise InvariantError("avoid set for the special pair is too large",
                             {"S": sorted(S), "d": d})
    L1 = avoid_path(
        CubeGraph(d - 1),
        delete_coordinate(s1, agree),
        delete_coordinate(t1, agree),
        {delete_coordinate(v, agree) for v in S},
    )
    if L1 is None:
        raise InvariantError(
            "special-pair search failed inside the facet",
            {"d": d, "pair": (s1, t1), "S": sorted(S)},
        )
    out[first] = _lift(L1, agree, value)
    return [_oriented(out[i], s, t) for i, (s, t) in enumerate(pairs)]


# ---------------------------------------------------------------------------
# Public solvers


def solve_linkage(d: int, Y: Pairing) -> SolveResult:
    """A Y-linkage in Q_d for any pairing with k <= (d+1)//2 pairs (d != 3)."""
    cube_core.check_dim(d)
    for v in Y.terminals:
        cube_core.check_vertex(d, v)
    max_k = (d + 1) // 2
    if Y.k > max_k:
        raise ValueError(f"Q{d} supports at most {max_k} pairs, got {Y.k}")
    if d == 3 and Y.k >= 2:
        cert = detect_config_3F(Y)
        raise UnsupportedInstanceError(
            "two pairs in the 3-cube are not guaranteed linkable",
            certificate=cert,
        )
    trace: list = []
    paths = _solve(d, list(Y.pairs), frozenset(), trace)
    return SolveResult(CubeGraph(d), Y, paths, tuple(trace))


def solve_avoiding(d: int, Y: Pairing, avoid: Iterable[int]) -> SolveResult:
    """A Y-linkage in Q_d dodging a set of forbidden vertices, within the
    budget 2k + |avoid| <= d + 1 (d != 3 unless k == 1 fits)."""
    cube_core.check_dim(d)
    avoid_set = frozenset(avoid)
    if not avoid_set:
        return solve_linkage(d, Y)
    for v in Y.terminals:
        cube_core.check_vertex(d, v)
    for v in avoid_set:
        cube_core.check_vertex(d, v)
    hit = avoid_set & frozenset(Y.terminals)
    if hit:
        raise ValueError(f"forbidden vertex {min(hit)} is a terminal")
    if 2 * Y.k + len(avoid_set) > d + 1:
        raise ValueError(
            f"Q{d} guarantees {Y.k} pairs with at most "
            f"{d + 1 - 2 * Y.k} forbidden vertices, got {len(avoid_set)}"
        )
    trace: list = []
    paths = _solve(d, list(Y.pairs), avoid_set, trace)
    return SolveResult(CubeGraph(d, avoid_set), Y, paths, tuple(trace))


def solve_strong(d: int, Y: Pairing, x: int) -> SolveResult:
    """A Y-linkage in Q_d that avoids the forbidden vertex x, k <= d//2."""
    cube_core.check_dim(d)
    cube_core.check_vertex(d, x)
    for v in Y.terminals:
        cube_core.check_vertex(d, v)
    if Y.k > d // 2:
        raise ValueError(f"strong linkage in Q{d} supports at most {d // 2} pairs")
    if x in Y.terminals:
        raise ValueError(f"forbidden vertex {x} is a terminal")
    trace: list = []
    paths = _strong(d, list(Y.pairs), x, trace)
    host = CubeGraph(d, frozenset({x}))
    result = SolveResult(host, Y, paths, tuple(trace))
    if SELF_CHECK:
        report = validate_linkage(host, Y, paths)
        if not report:
            raise InvariantError("self-check: strong linkage invalid",
                                 {"clause": report.clause, "message": report.message})
    return result


def _strong(d: int, pairs: list, x: int, trace: list) -> list:
    k = len(pairs)
    if k == 1:
        trace.append(f"Q{d}:trivial_pair")
        path = avoid_path(CubeGraph(d), pairs[0][0], pairs[0][1], {x})
        if path is None:
            raise InvariantError("single-pair BFS failed with one forbidden vertex",
                                 {"d": d, "pair": pairs[0], "x": x})
        return [path]
    if d % 2:
        # Odd dimension leaves budget for one extra pair; a path through x
        # claimed by that pair keeps x off everyone else's path.
        trace.append(f"Q{d}:strong_extra_pair")
        taken = set(_terminals(pairs)) | {x}
        y = next(v for v in range(1 << d) if v not in taken)
        sub = _solve(d, pairs + [(x, y)], frozenset(), trace)
        return sub[:-1]
    if d == 4:
        return _solve(d, pairs, frozenset({x}), trace)
    trace.append(f"Q{d}:strong_projection")
    X = set(_terminals(pairs))
    w = free_direction(d, X)
    F = facet(w, 1 - _bit(x, w))  # solve on the side away from x
    sub_pairs = [(_push(s, F, w), _push(t, F, w)) for s, t in pairs]
    sub_paths = _solve(d - 1, sub_pairs, frozenset(), trace)
    out = []
    for (s, t), sub in zip(pairs, sub_paths):
        path = _lift(sub, w, 1 - _bit(x, w))
        if not F.contains(s):
            path = [s] + path
        if not F.contains(t):
            path = path + [t]
        out.append(path)
    return out


def solve_link(d_plus_1: int, v: int, Y: Pairing) -> SolveResult:
    """A Y-linkage in Q_{d+1} minus {v, opposite(v)}: the link of v.

    Requires d := d_plus_1 - 1 >= 2 and d != 3, with k <= (d+1)//2 pairs
    whose terminals avoid both removed vertices.
    """
    cube_core.check_dim(d_plus_1)
    d = d_plus_1 - 1
    if d < 2:
        raise ValueError("link hosts need dimension at least three")
    if d == 3:
        raise ValueError("the link inside Q4 is out of range (d = 3)")
    cube_core.check_vertex(d_plus_1, v)
    vo = opposite(d_plus_1, v)
    for u in Y.terminals:
        cube_core.check_vertex(d_plus_1, u)
        if u in (v, vo):
            raise ValueError(f"terminal {u} collides with a removed vertex")
    if Y.k > (d + 1) // 2:
        raise ValueError(
            f"the link of a vertex in Q{d_plus_1} supports at most {(d + 1) // 2} pairs"
        )
    trace: list = []
    paths = _link(d_plus_1, v, list(Y.pairs), trace)
    host = link_graph(d_plus_1, v)
    result = SolveResult(host, Y, paths, tuple(trace))
    if SELF_CHECK:
        report = validate_linkage(host, Y, paths)
        if not report:
            raise InvariantError("self-check: link linkage invalid",
                                 {"clause": report.clause, "message": report.message})
    return result


def _link(D: int, v: int, pairs: list, trace: list) -> list:
    vo = opposite(D, v)
    k = len(pairs)
    if k == 1:
        trace.append(f"Q{D}:link_bfs")
        path = avoid_path(CubeGraph(D), pairs[0][0], pairs[0][1], {v, vo})
        if path is None:
            raise InvariantError("link BFS failed with two forbidden vertices",
                                 {"D": D, "pair": pairs[0]})
        return [path]
    if D == 5:
        # 30-vertex host, at most two pairs: the exact search settles it.
        trace.append("Q5:link_base")
        outcome = decide_linked(link_graph(5, v), Pairing(tuple(pairs)))
        if outcome.status != LINKED:
            raise InvariantError(
                f"exact search reported {outcome.status} on a guaranteed link instance",
                instance_to_json(link_graph(5, v), Pairing(tuple(pairs))),
            )
        return [_oriented(p, s, t) for p, (s, t) in zip(outcome.linkage, pairs)]
    X = _terminals(pairs)
    w = free_direction(D, set(X))
    side_v = _bit(v, w)
    in_v_side = [x for x in X if _bit(x, w) == side_v]
    if not in_v_side or len(in_v_side) == len(X):
        return _link_one_side(D, v, vo, pairs, w, trace)
    return _link_two_sides(D, v, vo, pairs, w, trace)


def _link_one_side(D: int, v: int, vo: int, pairs: list, w: int, trace: list) -> list:
    trace.append(f"Q{D}:link_case1")
    side = _bit(pairs[0][0], w)
    A = facet(w, side)
    bad_A = v if _bit(v, w) == side else vo
    bad_B = vo if bad_A == v else v
    sub_pairs = [(delete_coordinate(s, w), delete_coordinate(t, w))
                 for s, t in pairs]
    sub_paths = _solve(D - 1, sub_pairs, frozenset(), trace)
    out = [_lift(p, w, side) for p in sub_paths]
    hit = [i for i, p in enumerate(out) if bad_A in p]
    if not hit:
        return out
    if len(hit) > 1:
        raise InvariantError("disjoint paths share the removed vertex", {"hit": hit})
    trace.append(f"Q{D}:link_detour")
    i = hit[0]
    path = out[i]
    j = path.index(bad_A)
    if j == 0 or j == len(path) - 1:
        raise InvariantError("removed vertex surfaced as a terminal",
                             {"path": path, "v": bad_A})
    w1, w2 = path[j - 1], path[j + 1]
    B_side = 1 - side
    p1 = delete_coordinate(w1, w)
    p2 = delete_coordinate(w2, w)
    bad_B_red = delete_coordinate(bad_B, w)
    if p1 == bad_B_red or p2 == bad_B_red:
        raise InvariantError("detour endpoints collide with the opposite removed vertex",
                             {"w1": w1, "w2": w2})
    M = avoid_path(CubeGraph(D - 1), p1, p2, {bad_B_red})
    if M is None:
        raise InvariantError("detour BFS failed in the opposite facet",
                             {"D": D, "from": w1, "to": w2})
    out[i] = path[:j] + _lift(M, w, B_side) + path[j + 1:]
    return out


def _link_two_sides(D: int, v: int, vo: int, pairs: list, w: int, trace: list) -> list:
    trace.append(f"Q{D}:link_case2")
    X = _terminals(pairs)
    side_v = _bit(v, w)
    count_v_side = sum(1 for x in X if _bit(x, w) == side_v)
    if count_v_side >= len(X) - count_v_side:
        solve_side, bad, bad_tail = side_v, v, vo
    else:
        solve_side, bad, bad_tail = 1 - side_v, vo, v
    SF = facet(w, solve_side)
    tail_terms = [x for x in X if not SF.contains(x)]
    pref = project(bad, SF.opposite_facet())  # the unique tail-side neighbor of bad
    t1 = pref if pref in tail_terms else min(tail_terms)
    j1 = next(i for i, p in enumerate(pairs) if t1 in p)
    s1 = pairs[j1][0] if pairs[j1][1] == t1 else pairs[j1][1]

    others = [i for i in range(len(pairs)) if i != j1]
    sub_pairs = [(_push(s1, SF, w), delete_coordinate(bad, w))]
    sub_pairs += [(_push(pairs[i][0], SF, w), _push(pairs[i][1], SF, w))
                  for i in others]
    sub_paths = _solve(D - 1, sub_pairs, frozenset(), trace)

    M1 = _lift(sub_paths[0], w, solve_side)
    if len(M1) < 2:
        raise InvariantError("guide path degenerated to the removed vertex",
                             {"pair": (s1, t1)})
    guide = M1[-2]
    pw = project(guide, SF.opposite_facet())
    tail_d = D - 1
    tail_side = 1 - solve_side
    S = {bad_tail} | (set(tail_terms) - {t1})
    if pw == s1:
        # The guide path is a single edge out of s1; route directly.
        tail = avoid_path(
            CubeGraph(tail_d),
            delete_coordinate(s1, w),
            delete_coordinate(t1, w),
            {delete_coordinate(u, w) for u in S if u != s1},
        )
        if tail is None:
            raise InvariantError("direct tail BFS failed", {"pair": (s1, t1)})
        L1 = _lift(tail, w, tail_side)
    else:
        if pw in S:
            raise InvariantError("tail entry vertex is blocked",
                                 {"entry": pw, "S": sorted(S)})
        tail = avoid_path(
            CubeGraph(tail_d),
            delete_coordinate(pw, w),
            delete_coordinate(t1, w),
            {delete_coordinate(u, w) for u in S},
        )
        if tail is None:
            raise InvariantError("tail BFS failed in the opposite facet",
                                 {"pair": (s1, t1), "S": sorted(S)})
        L1 = M1[:-1] + _lift(tail, w, tail_side)
        if not SF.contains(s1):
            L1 = [s1] + L1
    out: dict = {j1: _oriented(L1, *pairs[j1])}
    for slot, i in enumerate(others):
        s, t = pairs[i]
        path = _lift(sub_paths[slot + 1], w, solve_side)
        if not SF.contains(s):
            path = [s] + path
        if not SF.contains(t):
            path = path + [t]
        out[i] = path
    return [out[i] for i in range(len(pairs))]


# ---------------------------------------------------------------------------
# The Q3 obstruction


def detect_config_3F(Y: Pairing) -> Config3F | None:
    """Scan the six 2-faces of Q3 for the blocking configuration: a face
    whose four vertices are all terminals with one pair on a diagonal."""
    for v in Y.terminals:
        cube_core.check_vertex(3, v)
    if len(Y.terminals) < 4:
        raise ValueError("the configuration needs at least four terminals")
    X = set(Y.terminals)
    for c in range(3):
        for value in (0, 1):
            F = Face(1 << c, value << c)
            corners = list(face_vertices(3, F))
            if any(u not in X for u in corners):
                continue
            # All four corners are terminals, so both face-neighbors of any
            # corner are terminals too; a diagonal pair seals the witness.
            for s, t in Y.pairs:
                if F.contains(s) and F.contains(t) and cube_core.distance(s, t) == 2:
                    return Config3F(F, s)
    return None
