"""Constructive PC 2-factors.

Two procedures live here:

* ``find_pc_two_factor`` grows a family of vertex-disjoint PC cycles one
  vertex at a time. Each step classifies a colour neighbourhood of an
  uncovered vertex ``x`` and tries a fixed catalogue of local exchanges that
  splice ``x`` (and possibly more uncovered vertices) into the family.
* ``find_pc_two_factor_min_length`` keeps PC cycles of length at least
  ``k/2`` plus one PC path, extends or rotates the path while it can, and
  otherwise splits the path into long PC cycles through a directed 2-cycle of
  an auxiliary endpoint graph.

Every candidate structure is re-checked for proper colouring before it is
accepted, so a wrong case analysis can only cost completeness, never
soundness.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .certify import pc_cycle_through, pc_two_factor_of
from .errors import BudgetExceeded, SearchFailure
from .graph import (
    NO_EDGE,
    Cycle,
    EdgeColouredGraph,
    OnePathCycle,
    OrientedCycles,
    edge_minimal_reduction,
    pc_cycle_unchecked,
    pc_path_unchecked,
)

# Vertex colour given to members of T; never used by an edge.
C0 = -2

TAGS = "abcdef"


# ---------------------------------------------------------------------------
# colour neighbourhoods
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassifiedNeighbourhood:
    x: int
    nc: tuple[int, ...]
    tags: dict[int, str]
    W: frozenset[int]
    R: frozenset[int]
    S: frozenset[int]
    T: frozenset[int]
    R_prime: frozenset[int]
    S_prime: frozenset[int]
    vertex_colour: dict[int, int]

    @property
    def F(self) -> tuple[int, ...]:
        return tuple(sorted(self.W | self.R | self.S | self.T))

    def weight(self) -> int:
        return len(self.R) + len(self.S) + 2 * len(self.T) + len(self.W)


def _tag(col, orient: OrientedCycles, x: int, y: int) -> int:
    if not orient.covers(y):
        return 0
    cxy = col[x][y]
    yp = orient.succ(y)
    if cxy == col[y][yp]:
        return 1
    if cxy == col[y][orient.pred(y)]:
        return 2
    if col[x][yp] == NO_EDGE:
        return 3
    if cxy != col[x][yp]:
        return 4
    return 5


def colour_neighbourhood(
    G: EdgeColouredGraph, H: Sequence[Sequence[int]] | OrientedCycles, x: int
) -> ClassifiedNeighbourhood:
    """Pick one neighbour of ``x`` per colour and split them into W, R, S, T.

    Within a colour class the neighbour with the best preference tag wins,
    ties going to the smaller vertex.
    """
    orient = H if isinstance(H, OrientedCycles) else OrientedCycles(H)
    if orient.covers(x):
        raise ValueError(f"vertex {x} is already covered by the cycle family")
    col = G.colour_rows()
    best: dict[int, tuple[int, int]] = {}
    for y in G.neighbours(x):
        key = (_tag(col, orient, x, y), y)
        c = col[x][y]
        if c not in best or key < best[c]:
            best[c] = key
    tags = {y: TAGS[t] for t, y in best.values()}
    nc = tuple(sorted(tags))
    W = frozenset(y for y in nc if tags[y] == "a")
    Rp = frozenset(orient.succ(y) for y in nc if tags[y] in "bdef")
    Sp = frozenset(orient.pred(y) for y in nc if tags[y] == "c")
    R, S, T = Rp - Sp, Sp - Rp, Rp & Sp
    vc: dict[int, int] = {}
    for y in W:
        vc[y] = col[x][y]
    for y in R:
        vc[y] = col[y][orient.succ(y)]
    for y in S:
        vc[y] = col[y][orient.pred(y)]
    for y in T:
        vc[y] = C0
    return ClassifiedNeighbourhood(x, nc, tags, W, frozenset(R), frozenset(S), frozenset(T), Rp, Sp, vc)


# ---------------------------------------------------------------------------
# single augmentation step
# ---------------------------------------------------------------------------


def _is_new_cycle(col, cyc: Sequence[int]) -> bool:
    return len(set(cyc)) == len(cyc) and pc_cycle_unchecked(col, cyc)


def _catalogue(G: EdgeColouredGraph, orient: OrientedCycles, cn: ClassifiedNeighbourhood):
    """Yield ``(removed cycle ids, new cycles)`` in catalogue order."""
    col = G.colour_rows()
    x = cn.x
    vc = cn.vertex_colour
    F = cn.F
    bad = [
        (y, z)
        for y, z in combinations(F, 2)
        if col[y][z] != NO_EDGE and col[y][z] != vc[y] and col[y][z] != vc[z]
    ]
    # triangles on two uncovered representatives
    for y, z in bad:
        if y in cn.W and z in cn.W:
            yield (), ([x, y, z],)
    # one uncovered representative spliced in front of a cycle
    for y, z in bad:
        for a, b in ((y, z), (z, y)):
            if a in cn.W and b not in cn.W:
                for s in (1, -1):
                    yield (orient.cycle_id(b),), ([x, a] + orient.walk(b, orient.pred(b, s), s),)
    # insert x into a single cycle edge
    for ci, cyc in enumerate(orient.cycles):
        k = len(cyc)
        for i in range(k):
            a, b = cyc[i], cyc[(i + 1) % k]
            if col[x][a] == NO_EDGE or col[x][b] == NO_EDGE:
                continue
            yield (ci,), ([x] + orient.walk(b, a, 1),)
    covered = [(y, z) for y, z in bad if orient.covers(y) and orient.covers(z)]
    # merge two cycles through x
    for y, z in covered:
        cy, cz = orient.cycle_id(y), orient.cycle_id(z)
        if cy == cz:
            continue
        for sy in (1, -1):
            for sz in (1, -1):
                ym, zm = orient.pred(y, sy), orient.pred(z, sz)
                yield (cy, cz), ([x] + orient.walk(ym, y, -sy) + orient.walk(z, zm, sz),)
    # reroute one cycle through x
    for y, z in covered:
        ci = orient.cycle_id(y)
        if ci != orient.cycle_id(z):
            continue
        for a, b in ((y, z), (z, y)):
            for s in (1, -1):
                am, bm, bp = orient.pred(a, s), orient.pred(b, s), orient.succ(b, s)
                if am == b:
                    yield (ci,), ([x] + orient.walk(a, b, s),)
                    continue
                yield (ci,), ([x] + orient.walk(am, b, -s) + orient.walk(a, bm, s),)
                yield (ci,), ([x] + orient.walk(am, bp, -s), orient.walk(a, b, s))


def _apply(H: list[Cycle], removed: Iterable[int], new: Iterable[Sequence[int]]) -> list[Cycle]:
    gone = set(removed)
    return [c for i, c in enumerate(H) if i not in gone] + [tuple(c) for c in new]


def augment_two_factor(
    G: EdgeColouredGraph, H: Sequence[Sequence[int]], x: int
) -> list[Cycle] | None:
    """Cover ``x`` by one local exchange on the PC cycle family ``H``.

    ``G`` should already be edge-minimal. Returns the new family (covering
    every vertex of ``H`` plus ``x`` and possibly further uncovered vertices)
    or None if no catalogued move applies.
    """
    H = [tuple(c) for c in H]
    orient = OrientedCycles(H)
    cn = colour_neighbourhood(G, orient, x)
    col = G.colour_rows()
    for removed, new in _catalogue(G, orient, cn):
        if all(_is_new_cycle(col, c) for c in new):
            return _apply(H, removed, new)
    return None


def exchange_fallback(
    G: EdgeColouredGraph,
    H: Sequence[Sequence[int]],
    x: int,
    size_limit: int = 12,
    budget: int = 10**6,
) -> list[Cycle] | None:
    """Exhaustive rewrites around ``x``: a fresh cycle through ``x`` among
    uncovered vertices, or a PC 2-factor of ``x`` plus one or two cycles."""
    H = [tuple(c) for c in H]
    covered = {v for c in H for v in c}
    free = [v for v in range(G.n) if v not in covered]
    if len(free) <= size_limit:
        for length in range(3, len(free) + 1):
            try:
                cyc = pc_cycle_through(G, x, length, allowed=free, budget=budget)
            except BudgetExceeded:
                break
            if cyc is not None:
                return H + [cyc]
    groups: list[tuple[int, ...]] = [(i,) for i in range(len(H))]
    groups += [(i, j) for i, j in combinations(range(len(H)), 2)]
    for group in groups:
        verts = [x] + [v for i in group for v in H[i]]
        if len(verts) > size_limit:
            continue
        try:
            cycles = pc_two_factor_of(G, verts, budget=budget)
        except BudgetExceeded:
            continue
        if cycles is not None:
            return _apply(H, group, cycles)
    return None


def greedy_triangles(G: EdgeColouredGraph) -> list[Cycle]:
    """Vertex-disjoint PC triangles, scanning triples in lexicographic order."""
    col = G.colour_rows()
    used: set[int] = set()
    out: list[Cycle] = []
    for a in range(G.n):
        if a in used:
            continue
        done = False
        for b in G.neighbours(a):
            if b <= a or b in used:
                continue
            for c in G.neighbours(b):
                if c <= b or c in used:
                    continue
                if pc_cycle_unchecked(col, (a, b, c)):
                    out.append((a, b, c))
                    used.update((a, b, c))
                    done = True
                    break
            if done:
                break
    return out


def find_pc_two_factor(
    G: EdgeColouredGraph,
    fallback: bool = True,
    size_limit: int = 12,
    max_moves: int | None = None,
) -> list[Cycle]:
    """Spanning family of vertex-disjoint PC cycles, or ``SearchFailure``.

    The graph is first made edge-minimal; cycles of the reduced graph are PC
    in ``G`` as well. ``SearchFailure.residual`` holds the stuck family.
    """
    if G.n == 0:
        return []
    R = edge_minimal_reduction(G)
    H = greedy_triangles(R)
    limit = 50 * G.n * G.n if max_moves is None else max_moves
    moves = 0
    while True:
        covered = {v for c in H for v in c}
        free = [v for v in range(G.n) if v not in covered]
        if not free:
            return H
        nxt = None
        for x in free:
            moves += 1
            nxt = augment_two_factor(R, H, x)
            if nxt is not None:
                break
        if nxt is None and fallback:
            for x in free:
                moves += 1
                nxt = exchange_fallback(R, H, x, size_limit)
                if nxt is not None:
                    break
        if nxt is None:
            raise SearchFailure(
                "no exchange covers another vertex", "augment", residual=H, uncovered=free
            )
        H = nxt
        if moves > limit:
            raise SearchFailure("move budget exhausted", "augment", residual=H, uncovered=free)


# ---------------------------------------------------------------------------
# endpoint classification for the long-cycle variant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EndSets:
    N: frozenset[int]
    N_prime: frozenset[int]
    R: frozenset[int]
    S_prime: frozenset[int]
    S_double: frozenset[int]
    S: frozenset[int]
    T: frozenset[int]
    W: frozenset[int]
    U: frozenset[int]


@dataclass(frozen=True)
class EndpointClassification:
    path: tuple[int, ...]
    k: int
    strip: int
    first: EndSets
    last: EndSets
    pos: dict[int, int] = field(repr=False)

    def sets(self, q: int) -> EndSets:
        """``q`` is 1 for the first endpoint and ``len(path)`` for the last."""
        return self.first if q == 1 else self.last


class _PathColours:
    """c+ / c- lookups along a path; undefined ends map to ``NO_EDGE``."""

    def __init__(self, col, path: Sequence[int]):
        self.col = col
        self.path = list(path)
        self.pos = {v: i for i, v in enumerate(path)}

    def succ(self, v: int) -> int | None:
        i = self.pos[v] + 1
        return self.path[i] if i < len(self.path) else None

    def pred(self, v: int) -> int | None:
        i = self.pos[v] - 1
        return self.path[i] if i >= 0 else None

    def cplus(self, v: int) -> int:
        w = self.succ(v)
        return NO_EDGE if w is None else self.col[v][w]

    def cminus(self, v: int) -> int:
        w = self.pred(v)
        return NO_EDGE if w is None else self.col[v][w]


def _end_sets(G: EdgeColouredGraph, pc: _PathColours, q_vertex: int, strip: int) -> EndSets:
    col = pc.col
    path = pc.path
    L = len(path)
    inner = pc.path[1] if q_vertex == path[0] else path[-2]
    N = frozenset(y for y in G.neighbours(q_vertex) if col[q_vertex][y] != col[q_vertex][inner])
    Np = frozenset(y for y in N if y in pc.pos and strip <= pc.pos[y] < L - strip)
    R = frozenset(
        v for v in path[1:] if pc.pred(v) in Np and col[pc.pred(v)][q_vertex] == pc.cplus(pc.pred(v))
    )
    S1, S2 = set(), set()
    for v in path[:-1]:
        y = pc.succ(v)
        if y not in Np:
            continue
        c = col[y][q_vertex]
        if c == pc.cminus(y):
            S1.add(v)
        elif c != pc.cplus(y):
            S2.add(v)
    S = frozenset(S1 | S2)
    T = R & S
    W = ((R | S) - {path[0], path[-1]}) | {q_vertex}
    return EndSets(N, Np, R, frozenset(S1), frozenset(S2), S, T, frozenset(W), frozenset(W - T))


def classify_endpoints(G: EdgeColouredGraph, P: Sequence[int], k: int) -> EndpointClassification:
    """Neighbour sets of both ends of ``P`` with ``ceil(k/2)`` positions stripped."""
    if len(P) < 2:
        raise ValueError("path needs at least two vertices")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    pc = _PathColours(G.colour_rows(), P)
    strip = -(-k // 2)
    first = _end_sets(G, pc, P[0], strip)
    last = _end_sets(G, pc, P[-1], strip)
    return EndpointClassification(tuple(P), k, strip, first, last, dict(pc.pos))


@dataclass(frozen=True)
class JoinGraph:
    """Directed bipartite graph between W_1 (side 1) and W_l (side l)."""

    out_first: dict[int, frozenset[int]]
    out_last: dict[int, frozenset[int]]

    def has_arc(self, side: int, a: int, b: int) -> bool:
        table = self.out_first if side == 1 else self.out_last
        return b in table.get(a, ())

    def two_cycles(self, order: dict[int, int] | None = None) -> list[tuple[int, int]]:
        """Pairs ``(u, w)`` with ``u`` in W_1, ``w`` in W_l and both arcs present."""
        key = (lambda v: order[v]) if order else (lambda v: v)
        out = [
            (u, w)
            for u, targets in self.out_first.items()
            for w in targets
            if u in self.out_last.get(w, ())
        ]
        return sorted(out, key=lambda p: (key(p[0]), key(p[1])))


def _arcs(G: EdgeColouredGraph, pc: _PathColours, mine: EndSets, theirs: EndSets, first: bool):
    col = pc.col
    z1, zl = pc.path[0], pc.path[-1]
    ends = {z1, zl}
    out: dict[int, frozenset[int]] = {}
    for x in mine.W:
        targets = set()
        for y in theirs.W:
            c = col[x][y]
            if c == NO_EDGE:
                continue
            if x in mine.T:
                ok = True
            elif x in ends:
                ok = (first and x == z1 and c != col[z1][pc.path[1]]) or (
                    not first and x == zl and c != col[zl][pc.path[-2]]
                )
            elif x in mine.R:
                ok = c != pc.cplus(x)
            elif x in mine.S:
                ok = c != pc.cminus(x)
            else:
                ok = False
            if ok:
                targets.add(y)
        out[x] = frozenset(targets)
    return out


def endpoint_join_graph(
    ec: EndpointClassification, G: EdgeColouredGraph, P: Sequence[int] | None = None
) -> JoinGraph:
    pc = _PathColours(G.colour_rows(), ec.path if P is None else P)
    return JoinGraph(
        _arcs(G, pc, ec.first, ec.last, True),
        _arcs(G, pc, ec.last, ec.first, False),
    )


# ---------------------------------------------------------------------------
# splitting a path into long cycles
# ---------------------------------------------------------------------------


class SplitError(SearchFailure):
    """A split case was requested whose colour conditions do not hold."""

    def __init__(self, condition: str, **info):
        self.condition = condition
        super().__init__(f"condition failed: {condition}", "split", **info)


def case_conditions(G: EdgeColouredGraph, ec: EndpointClassification, u: int, w: int) -> tuple[set[int], set[int]]:
    """Indices ``i`` with (a_i) true for ``u`` and ``j`` with (b_j) true for ``w``."""
    pc = _PathColours(G.colour_rows(), ec.path)
    return _a_conditions(pc, ec, u, w), _b_conditions(pc, ec, u, w)


def _a_conditions(pc: _PathColours, ec: EndpointClassification, u: int, w: int) -> set[int]:
    col = pc.col
    z1, z2 = pc.path[0], pc.path[1]
    cuw = col[u][w]
    out = set()
    um, up = pc.pred(u), pc.succ(u)
    if u in ec.first.R and cuw != pc.cplus(u) and um is not None:
        if col[z1][z2] != col[z1][um] != pc.cminus(um):
            out.add(1)
    if u in ec.first.S and cuw != pc.cminus(u) and up is not None:
        if col[z1][z2] != col[z1][up] != pc.cplus(up):
            out.add(2)
    if u == z1 and cuw != col[z1][z2]:
        out.add(3)
    return out


def _b_conditions(pc: _PathColours, ec: EndpointClassification, u: int, w: int) -> set[int]:
    col = pc.col
    zl, zl1 = pc.path[-1], pc.path[-2]
    cuw = col[u][w]
    out = set()
    wm, wp = pc.pred(w), pc.succ(w)
    if w in ec.last.R and cuw != pc.cplus(w) and wm is not None:
        if col[zl][zl1] != col[zl][wm] != pc.cminus(wm):
            out.add(1)
    if w in ec.last.S and cuw != pc.cminus(w) and wp is not None:
        if col[zl][zl1] != col[zl][wp] != pc.cplus(wp):
            out.add(2)
    if w == zl and cuw != col[zl1][zl]:
        out.add(3)
    return out


def _seg(path: Sequence[int], i: int, j: int) -> list[int]:
    if not (0 <= i < len(path) and 0 <= j < len(path)):
        raise IndexError
    return list(path[i : j + 1]) if i <= j else list(path[j : i + 1])[::-1]


def _structure(path: Sequence[int], pu: int, pw: int, i: int, j: int) -> list[list[int]]:
    """Cycle family for case (a_i, b_j) with ``u`` at ``pu`` and ``w`` at ``pw``."""
    L = len(path)
    s = lambda a, b: _seg(path, a, b)  # noqa: E731
    if (i, j) == (3, 3):
        return [s(0, L - 1)]
    if (i, j) == (1, 2):
        if pu - 1 == pw:
            return [s(0, pu - 1), s(pw + 1, L - 1)]
        if pu - 1 > pw:
            return [s(pu - 1, pw + 1) + s(L - 1, pu) + s(pw, 0)]
        return [s(0, pu - 1), s(pu, pw), s(pw + 1, L - 1)]
    if (i, j) == (1, 1):
        if pu < pw:
            return [s(0, pu - 1), s(pu, pw - 1) + s(L - 1, pw)]
        return [s(0, pw - 1) + s(L - 1, pu) + s(pw, pu - 1)]
    if (i, j) == (1, 3):
        return [s(0, pu - 1), s(pu, L - 1)]
    if (i, j) == (2, 1):
        if pu < pw - 1:
            return [s(0, pu) + s(pw, L - 1) + s(pw - 1, pu + 1)]
        if pu == pw - 1:
            return [s(0, pu) + s(L - 1, pu + 1)]
        return [s(pw, pu), s(0, pw - 1) + s(L - 1, pu + 1)]
    if (i, j) == (2, 3):
        return [s(0, pu) + s(L - 1, pu + 1)]
    # remaining cases are handled on the reversed path
    flip = {1: 2, 2: 1, 3: 3}
    return _structure(list(path)[::-1], L - 1 - pw, L - 1 - pu, flip[j], flip[i])


def _family_ok(col, cycles: Sequence[Sequence[int]], span: Sequence[int], k: int) -> str:
    seen: list[int] = []
    for cyc in cycles:
        if len(cyc) < 3:
            return f"cycle {list(cyc)} has fewer than 3 vertices"
        if 2 * len(cyc) < k:
            return f"cycle {list(cyc)} shorter than k/2"
        if not pc_cycle_unchecked(col, cyc):
            return f"cycle {list(cyc)} is not properly coloured"
        seen.extend(cyc)
    if sorted(seen) != sorted(span):
        return "cycles do not partition the path"
    return ""


def split_path_to_cycles(
    G: EdgeColouredGraph,
    P: Sequence[int],
    k: int,
    u: int,
    w: int,
    case: tuple[int, int],
) -> list[Cycle]:
    """PC cycles of length at least ``k/2`` spanning ``V(P)`` for case (a_i, b_j).

    Raises ``SplitError`` naming the condition that fails.
    """
    ec = classify_endpoints(G, P, k)
    i, j = case
    a, b = case_conditions(G, ec, u, w)
    if i not in a:
        raise SplitError(f"(a{i}) for u={u}", u=u, w=w)
    if j not in b:
        raise SplitError(f"(b{j}) for w={w}", u=u, w=w)
    if u == w:
        raise SplitError("u != w", u=u, w=w)
    try:
        cycles = _structure(list(P), ec.pos[u], ec.pos[w], i, j)
    except IndexError:
        raise SplitError("segment bounds", u=u, w=w) from None
    reason = _family_ok(G.colour_rows(), cycles, P, k)
    if reason:
        raise SplitError(reason, u=u, w=w, cycles=cycles)
    return [tuple(c) for c in cycles]


def _split_any(G: EdgeColouredGraph, P: Sequence[int], k: int) -> list[Cycle] | None:
    ec = classify_endpoints(G, P, k)
    jg = endpoint_join_graph(ec, G, P)
    pc = _PathColours(G.colour_rows(), P)
    col = pc.col
    path = list(P)
    for u, w in jg.two_cycles(ec.pos):
        if u == w:
            continue
        a = _a_conditions(pc, ec, u, w)
        b = _b_conditions(pc, ec, u, w)
        for i in sorted(a):
            for j in sorted(b):
                try:
                    cycles = _structure(path, ec.pos[u], ec.pos[w], i, j)
                except IndexError:
                    continue
                if not _family_ok(col, cycles, path, k):
                    return [tuple(c) for c in cycles]
    return None


# ---------------------------------------------------------------------------
# long-cycle 2-factor by local search
# ---------------------------------------------------------------------------


def _first_extension(G: EdgeColouredGraph, end: int, inner: int | None, free: set[int]) -> int | None:
    col = G.colour_rows()
    bad = col[end][inner] if inner is not None else NO_EDGE
    for y in G.neighbours(end):
        if y in free and col[end][y] != bad:
            return y
    return None


def _absorb_cycle(
    G: EdgeColouredGraph, path: list[int], cycles: list[Cycle], at_start: bool
) -> tuple[list[int], int] | None:
    """Rotate a cycle hanging off one end of the path into the path."""
    if not cycles:
        return None
    col = G.colour_rows()
    orient = OrientedCycles(cycles)
    end = path[0] if at_start else path[-1]
    inner = (path[1] if at_start else path[-2]) if len(path) > 1 else None
    bad = col[end][inner] if inner is not None else NO_EDGE
    for y in G.neighbours(end):
        if not orient.covers(y) or col[end][y] == bad:
            continue
        for s in (1, -1):
            if col[y][orient.succ(y, s)] == col[end][y]:
                continue
            if at_start:
                new = orient.walk(orient.pred(y, s), y, -s) + path
            else:
                new = path + orient.walk(y, orient.pred(y, s), s)
            return new, orient.cycle_id(y)
    return None


def find_pc_two_factor_min_length(
    G: EdgeColouredGraph, k: int, max_moves: int | None = None
) -> list[Cycle]:
    """PC 2-factor whose cycles all have at least ``k/2`` vertices.

    Raises ``SearchFailure`` with the stuck ``OnePathCycle`` as residual.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    k = min(k, G.n)
    col = G.colour_rows()
    cycles: list[Cycle] = []
    path: list[int] | None = None
    free = set(range(G.n))
    limit = 50 * G.n * G.n if max_moves is None else max_moves
    for _ in range(limit + 1):
        if path is None:
            if not free:
                return cycles
            path = [min(free)]
            free.discard(path[0])
            continue
        y = _first_extension(G, path[-1], path[-2] if len(path) > 1 else None, free)
        if y is not None:
            path.append(y)
            free.discard(y)
            continue
        y = _first_extension(G, path[0], path[1] if len(path) > 1 else None, free)
        if y is not None:
            path.insert(0, y)
            free.discard(y)
            continue
        grown = _absorb_cycle(G, path, cycles, at_start=False) or _absorb_cycle(G, path, cycles, at_start=True)
        if grown is not None:
            path, gone = grown
            del cycles[gone]
            continue
        if len(path) >= 3 and 2 * len(path) >= k and pc_cycle_unchecked(col, path):
            cycles.append(tuple(path))
            path = None
            continue
        if len(path) >= 2:
            split = _split_any(G, path, k)
            if split is not None:
                cycles.extend(split)
                path = None
                continue
        raise SearchFailure(
            "no move applies", "local-search", residual=OnePathCycle(list(cycles), list(path)), k=k
        )
    raise SearchFailure(
        "move budget exhausted",
        "local-search",
        residual=OnePathCycle(list(cycles), None if path is None else list(path)),
        k=k,
    )


def path_cover(G: EdgeColouredGraph, k: int, max_moves: int | None = None) -> list[tuple[int, ...]]:
    """At most ``floor(2n/k)`` disjoint PC paths covering ``V(G)``."""
    return [tuple(c) for c in find_pc_two_factor_min_length(G, k, max_moves)]


def is_pc_path_family(G: EdgeColouredGraph, paths: Sequence[Sequence[int]]) -> bool:
    col = G.colour_rows()
    seen = [v for p in paths for v in p]
    return sorted(seen) == list(range(G.n)) and all(pc_path_unchecked(col, p) for p in paths)
