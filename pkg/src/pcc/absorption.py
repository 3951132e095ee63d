"""Absorbing paths, absorber families, edge joins and absorbing cycles.

A 4-vertex PC path ``z1 z2 z3 z4`` absorbs a vertex ``x`` when
``z1 z2 x z3 z4`` is still PC, and absorbs an edge pair ``(x1, x2; y1, y2)``
when ``z1 z2 x1 x2`` and ``y1 y2 z3 z4`` are PC. A PC path running from
``x1 x2`` to ``y1 y2`` can then be spliced between ``z2`` and ``z3``.

Absorbers are chained into one short PC cycle by joining consecutive members
with single connector edges; pieces are later spliced into that cycle through
a bipartite matching of pieces to absorbers.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import GraphFormatError, SearchFailure
from .graph import NO_EDGE, EdgeColouredGraph, pc_cycle_unchecked, pc_path_unchecked

Quad = tuple[int, int, int, int]
Target = tuple[int, ...]  # (x,) or (x1, x2, y1, y2)


@dataclass(frozen=True)
class AbsorbingPath:
    z1: int
    z2: int
    z3: int
    z4: int
    target: Target

    @property
    def path(self) -> Quad:
        return (self.z1, self.z2, self.z3, self.z4)


# -- predicates --------------------------------------------------------------


def _distinct_in_range(G: EdgeColouredGraph, verts: Sequence[int]) -> None:
    for v in verts:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} outside 0..{G.n - 1}")
    if len(set(verts)) != len(verts):
        raise ValueError(f"vertices {list(verts)} are not distinct")


def is_absorbing_for_vertex(G: EdgeColouredGraph, P: Sequence[int], x: int) -> bool:
    _distinct_in_range(G, P)
    _distinct_in_range(G, [x])
    if len(P) != 4 or x in P:
        return False
    col = G.colour_rows()
    z1, z2, z3, z4 = P
    return pc_path_unchecked(col, P) and pc_path_unchecked(col, (z1, z2, x, z3, z4))


def is_absorbing_for_edges(
    G: EdgeColouredGraph, P: Sequence[int], x1: int, x2: int, y1: int, y2: int
) -> bool:
    _distinct_in_range(G, P)
    _distinct_in_range(G, [x1, x2, y1, y2])
    if len(P) != 4 or set(P) & {x1, x2, y1, y2}:
        return False
    col = G.colour_rows()
    z1, z2, z3, z4 = P
    return (
        pc_path_unchecked(col, P)
        and pc_path_unchecked(col, (z1, z2, x1, x2))
        and pc_path_unchecked(col, (y1, y2, z3, z4))
    )


def absorbs(G: EdgeColouredGraph, P: Sequence[int], target: Target) -> bool:
    if len(target) == 1:
        return target[0] not in P and is_absorbing_for_vertex(G, P, target[0])
    return is_absorbing_for_edges(G, P, *target)


# -- enumeration ---------------------------------------------------------------


def iter_absorbers_vertex(
    G: EdgeColouredGraph, x: int, forbidden: Iterable[int] = ()
) -> Iterator[Quad]:
    """Every absorbing path for ``x`` avoiding ``forbidden``, in scan order."""
    col = G.colour_rows()
    nb = G.neighbours
    banned = set(forbidden) | {x}
    cx = col[x]
    for z2 in nb(x):
        if z2 in banned:
            continue
        c2x = cx[z2]
        row2 = col[z2]
        for z3 in nb(z2):
            if z3 in banned or cx[z3] == NO_EDGE or cx[z3] == c2x:
                continue
            c23 = row2[z3]
            c3x = cx[z3]
            row3 = col[z3]
            for z1 in nb(z2):
                if z1 in banned or z1 == z3:
                    continue
                c12 = row2[z1]
                if c12 == c23 or c12 == c2x:
                    continue
                for z4 in nb(z3):
                    if z4 in banned or z4 == z1 or z4 == z2:
                        continue
                    c34 = row3[z4]
                    if c34 != c23 and c34 != c3x:
                        yield (z1, z2, z3, z4)


def iter_absorbers_edges(
    G: EdgeColouredGraph, x1: int, x2: int, y1: int, y2: int, forbidden: Iterable[int] = ()
) -> Iterator[Quad]:
    """Every absorbing path for ``(x1, x2; y1, y2)`` avoiding ``forbidden``."""
    _distinct_in_range(G, [x1, x2, y1, y2])
    if not (G.has_edge(x1, x2) and G.has_edge(y1, y2)):
        raise ValueError("both x1x2 and y1y2 must be edges")
    col = G.colour_rows()
    nb = G.neighbours
    banned = set(forbidden) | {x1, x2, y1, y2}
    cx12 = col[x1][x2]
    cy12 = col[y1][y2]
    for z2 in nb(x1):
        if z2 in banned or col[x1][z2] == cx12:
            continue
        c2x = col[z2][x1]
        row2 = col[z2]
        for z3 in nb(z2):
            if z3 in banned:
                continue
            c3y = col[y2][z3]
            if c3y == NO_EDGE or c3y == cy12:
                continue
            c23 = row2[z3]
            row3 = col[z3]
            for z1 in nb(z2):
                if z1 in banned or z1 == z3:
                    continue
                c12 = row2[z1]
                if c12 == c23 or c12 == c2x:
                    continue
                for z4 in nb(z3):
                    if z4 in banned or z4 == z1 or z4 == z2:
                        continue
                    c34 = row3[z4]
                    if c34 != c23 and c34 != c3y:
                        yield (z1, z2, z3, z4)


def enumerate_absorbers_vertex(
    G: EdgeColouredGraph, x: int, limit: int | None = None, forbidden: Iterable[int] = ()
) -> list[AbsorbingPath]:
    if limit is not None and limit < 1:
        raise ValueError("limit must be at least 1")
    out = []
    for q in iter_absorbers_vertex(G, x, forbidden):
        out.append(AbsorbingPath(*q, (x,)))
        if limit is not None and len(out) >= limit:
            break
    return out


def enumerate_absorbers_edges(
    G: EdgeColouredGraph,
    x1: int,
    x2: int,
    y1: int,
    y2: int,
    limit: int | None = None,
    forbidden: Iterable[int] = (),
) -> list[AbsorbingPath]:
    if limit is not None and limit < 1:
        raise ValueError("limit must be at least 1")
    out = []
    for q in iter_absorbers_edges(G, x1, x2, y1, y2, forbidden):
        out.append(AbsorbingPath(*q, (x1, x2, y1, y2)))
        if limit is not None and len(out) >= limit:
            break
    return out


# -- families -------------------------------------------------------------------


@dataclass
class AbsorberFamily:
    """Vertex-disjoint 4-vertex PC paths with per-target coverage counts."""

    paths: list[Quad]
    coverage: dict[Target, int]
    t: int
    mode: str = "greedy"
    params: dict[str, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.paths)

    def vertices(self) -> set[int]:
        return {v for p in self.paths for v in p}

    def recount(self, G: EdgeColouredGraph) -> dict[Target, int]:
        return {t: sum(absorbs(G, p, t) for p in self.paths) for t in self.coverage}

    def uncovered(self) -> list[Target]:
        return sorted(t for t, c in self.coverage.items() if c < self.t)

    def to_text(self) -> str:
        lines = ["# pcc absorber family v1", f"mode {self.mode}", f"t {self.t}"]
        lines += [f"param {k} {v}" for k, v in self.params.items()]
        lines += ["path " + " ".join(map(str, p)) for p in self.paths]
        lines += [
            "cover " + " ".join(map(str, t)) + f" : {c}" for t, c in sorted(self.coverage.items())
        ]
        lines.append("end")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "AbsorberFamily":
        mode, t = "greedy", None
        params: dict[str, str] = {}
        paths: list[Quad] = []
        coverage: dict[Target, int] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#") or line == "end":
                continue
            word, _, rest = line.partition(" ")
            try:
                if word == "mode":
                    mode = rest.strip()
                elif word == "t":
                    t = int(rest)
                elif word == "param":
                    key, _, value = rest.strip().partition(" ")
                    params[key] = value.strip()
                elif word == "path":
                    vals = tuple(int(v) for v in rest.split())
                    if len(vals) != 4:
                        raise ValueError("a path has four vertices")
                    paths.append(vals)  # type: ignore[arg-type]
                elif word == "cover":
                    head, _, count = rest.partition(":")
                    coverage[tuple(int(v) for v in head.split())] = int(count)
                else:
                    raise ValueError(f"unknown directive {word!r}")
            except ValueError as exc:
                raise GraphFormatError(str(exc), lineno) from None
        if t is None:
            raise GraphFormatError("missing 't' line")
        return cls(paths, coverage, t, mode, params)


def randomized_probability(n: int, gamma: float) -> float:
    """Selection probability ``2^-7 * gamma * (n-4)!/(n-1)!`` per ordered 4-tuple."""
    return 2.0**-7 * gamma / ((n - 1) * (n - 2) * (n - 3))


def _greedy_family(
    G: EdgeColouredGraph,
    targets: list[Target],
    t: int,
    cap: int,
    min_size: int,
    forbidden: set[int],
    candidates: int,
) -> tuple[list[Quad], dict[Target, int]]:
    cover = {tg: 0 for tg in targets}
    used = set(forbidden)
    paths: list[Quad] = []
    stuck: set[Target] = set()
    while len(paths) < cap:
        live = [tg for tg in cover if tg not in stuck and not used.intersection(tg)]
        if not live:
            break
        need = [tg for tg in live if cover[tg] < t]
        if not need and len(paths) >= min_size:
            break
        pool = need or live
        goal = min(pool, key=lambda tg: (cover[tg], tg))
        it = (
            iter_absorbers_vertex(G, goal[0], used)
            if len(goal) == 1
            else iter_absorbers_edges(G, *goal, forbidden=used)
        )
        best, best_gain = None, -1
        for i, q in enumerate(it):
            if i >= candidates:
                break
            gain = sum(
                1 for tg in need if cover[tg] < t and not set(q).intersection(tg) and absorbs(G, q, tg)
            )
            if gain > best_gain:
                best, best_gain = q, gain
        if best is None:
            stuck.add(goal)
            continue
        paths.append(best)
        used.update(best)
        for tg in cover:
            if not set(best).intersection(tg) and absorbs(G, best, tg):
                cover[tg] += 1
    # targets swallowed by the family no longer need absorbing
    inside = {v for p in paths for v in p}
    cover = {tg: c for tg, c in cover.items() if not inside.intersection(tg)}
    return paths, cover


def _randomized_family(
    G: EdgeColouredGraph, targets: list[Target], gamma: float, seed: int, forbidden: set[int]
) -> tuple[list[Quad], dict[str, str]]:
    n = G.n
    rng = np.random.default_rng(seed)
    total = n * (n - 1) * (n - 2) * (n - 3)
    p = randomized_probability(n, gamma)
    draws = int(rng.binomial(total, p)) if total > 0 else 0
    chosen: dict[Quad, None] = {}
    while len(chosen) < draws:
        q = tuple(int(v) for v in rng.choice(n, 4, replace=False))
        chosen.setdefault(q, None)  # type: ignore[arg-type]
    kept: list[Quad] = []
    used = set(forbidden)
    for q in chosen:
        if used.intersection(q):
            continue
        kept.append(q)
        used.update(q)
    col = G.colour_rows()
    family = [
        q for q in kept if pc_path_unchecked(col, q) and any(absorbs(G, q, tg) for tg in targets if not set(q) & set(tg))
    ]
    info = {"p": repr(p), "drawn": str(draws), "disjoint": str(len(kept))}
    return family, info


def build_absorber_family(
    G: EdgeColouredGraph,
    t: int,
    mode: str = "greedy",
    *,
    edge_targets: Iterable[Target] = (),
    vertex_targets: Iterable[int] | None = None,
    cap: int | None = None,
    min_size: int = 0,
    forbidden: Iterable[int] = (),
    gamma: float | None = None,
    seed: int = 0,
    candidates: int = 64,
    strict: bool = True,
) -> AbsorberFamily:
    """Select vertex-disjoint absorbing paths covering every target ``t`` times.

    ``greedy`` repeatedly serves the least-covered target with the candidate
    absorber (among the first ``candidates`` in scan order) that helps the most
    under-covered targets. ``randomized`` draws ordered 4-tuples independently
    and keeps the first of each intersecting pair. With ``strict`` a
    ``SearchFailure`` lists targets left below ``t``.
    """
    if t < 1:
        raise ValueError(f"coverage target must be positive, got {t}")
    banned = set(forbidden)
    verts = range(G.n) if vertex_targets is None else vertex_targets
    targets: list[Target] = [(v,) for v in verts if v not in banned]
    for tg in edge_targets:
        tg = tuple(tg)
        if len(tg) != 4:
            raise ValueError(f"edge target {tg} needs four vertices")
        targets.append(tg)
    cap = G.n // 4 if cap is None else min(cap, G.n // 4)
    params: dict[str, str] = {"cap": str(cap)}
    if mode == "greedy":
        paths, _ = _greedy_family(G, targets, t, cap, min_size, banned, candidates)
    elif mode == "randomized":
        gamma = 1.0 if gamma is None else gamma
        paths, info = _randomized_family(G, targets, gamma, seed, banned)
        params.update(info, gamma=repr(gamma), seed=str(seed))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    inside = {v for p in paths for v in p}
    coverage = {
        tg: sum(absorbs(G, p, tg) for p in paths) for tg in targets if not inside.intersection(tg)
    }
    fam = AbsorberFamily(paths, coverage, t, mode, params)
    short = fam.uncovered()
    if strict and short:
        raise SearchFailure(
            f"{len(short)} targets covered fewer than {t} times",
            "absorber-family",
            residual=fam,
            uncovered=short,
        )
    return fam


# -- joining two edges through a connector edge ---------------------------------


def _join_sets(G, forbidden, x1, x2, y1, y2):
    col = G.colour_rows()
    banned = set(forbidden) | {x1, x2, y1, y2}
    X = [v for v in G.neighbours(x2) if v not in banned and col[v][x2] != col[x1][x2]]
    Y = [v for v in G.neighbours(y1) if v not in banned and col[v][y1] != col[y1][y2]]
    return X, Y


def _check_join(G: EdgeColouredGraph, x1: int, x2: int, y1: int, y2: int) -> None:
    _distinct_in_range(G, [x1, x2])
    _distinct_in_range(G, [y1, y2])
    if x2 == y2:
        raise ValueError("x2 and y2 must differ")
    if not (G.has_edge(x1, x2) and G.has_edge(y1, y2)):
        raise ValueError("both x1x2 and y1y2 must be edges")


def join_two_cycles(
    G: EdgeColouredGraph, forbidden: Iterable[int], x1: int, x2: int, y1: int, y2: int
) -> list[tuple[int, int]]:
    """All connector edges ``(z1, z2)``, i.e. directed 2-cycles of the join graph."""
    _check_join(G, x1, x2, y1, y2)
    col = G.colour_rows()
    X, Y = _join_sets(G, forbidden, x1, x2, y1, y2)
    out = []
    for a in X:
        for b in Y:
            c = col[a][b]
            if c != NO_EDGE and c != col[a][x2] and c != col[b][y1]:
                out.append((a, b))
    return out


def join_edges(
    G: EdgeColouredGraph, forbidden: Iterable[int], x1: int, x2: int, y1: int, y2: int
) -> tuple[int, int]:
    """Smallest edge ``z1 z2`` with ``x1 x2 z1 z2`` and ``z1 z2 y1 y2`` both PC."""
    _check_join(G, x1, x2, y1, y2)
    col = G.colour_rows()
    X, Y = _join_sets(G, forbidden, x1, x2, y1, y2)
    ys = set(Y)
    for a in X:
        ca = col[a][x2]
        for b in G.neighbours(a):
            if b in ys:
                c = col[a][b]
                if c != ca and c != col[b][y1]:
                    return a, b
    raise SearchFailure(
        f"no connector edge between {x1}{x2} and {y1}{y2}", "join", X=len(X), Y=len(Y)
    )


# -- absorbing cycles -------------------------------------------------------------


@dataclass(frozen=True)
class AbsorbingCycle:
    """PC cycle ``P1 c1 P2 c2 ...``: absorber ``j`` sits at positions ``6j..6j+3``."""

    cycle: tuple[int, ...]
    family: AbsorberFamily
    connectors: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.cycle)

    def absorber(self, j: int) -> Quad:
        return tuple(self.cycle[6 * j : 6 * j + 4])  # type: ignore[return-value]


def build_absorbing_cycle(G: EdgeColouredGraph, family: AbsorberFamily) -> AbsorbingCycle:
    paths = list(family.paths)
    m = len(paths)
    if m == 0:
        raise ValueError("absorber family is empty")
    base = {v for p in paths for v in p}
    connectors: list[tuple[int, int]] = []
    for j in range(m):
        v = paths[j]
        w = paths[(j + 1) % m]
        blocked = (base | {z for e in connectors for z in e}) - {v[2], v[3], w[0], w[1]}
        try:
            connectors.append(join_edges(G, blocked, v[2], v[3], w[0], w[1]))
        except SearchFailure as exc:
            raise SearchFailure(exc.reason, "absorbing-cycle", residual=connectors, index=j) from None
    cycle = tuple(v for j in range(m) for v in paths[j] + connectors[j])
    if not pc_cycle_unchecked(G.colour_rows(), cycle) or len(set(cycle)) != len(cycle):
        raise SearchFailure("joined cycle is not properly coloured", "absorbing-cycle")
    return AbsorbingCycle(cycle, family, tuple(connectors))


# -- absorbing paths into the cycle -------------------------------------------------


def split_pieces(paths: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Paths on at most three vertices become single vertices."""
    out: list[tuple[int, ...]] = []
    for p in paths:
        p = tuple(p)
        if len(p) <= 3:
            out.extend((v,) for v in p)
        else:
            out.append(p)
    return out


def _fits(G: EdgeColouredGraph, quad: Quad, piece: tuple[int, ...]) -> tuple[int, ...] | None:
    """The orientation of ``piece`` that ``quad`` absorbs, if any."""
    if len(piece) == 1:
        return piece if absorbs(G, quad, piece) else None
    for p in (piece, piece[::-1]):
        if absorbs(G, quad, (p[0], p[1], p[-2], p[-1])):
            return p
    return None


def absorption_matching(
    G: EdgeColouredGraph, absorbers: Sequence[Quad], pieces: Sequence[tuple[int, ...]]
) -> dict[int, tuple[int, tuple[int, ...]]] | None:
    """Injective map piece index -> (absorber index, oriented piece), or None."""
    if not pieces:
        return {}
    rows, cols, fits = [], [], {}
    for i, piece in enumerate(pieces):
        for j, q in enumerate(absorbers):
            oriented = _fits(G, q, piece)
            if oriented is not None:
                rows.append(i)
                cols.append(j)
                fits[i, j] = oriented
    if not absorbers:
        return None
    graph = csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(pieces), len(absorbers))
    )
    match = maximum_bipartite_matching(graph, perm_type="column")
    if (match < 0).any():
        return None
    return {i: (int(j), fits[i, int(j)]) for i, j in enumerate(match)}


def absorb_paths(
    G: EdgeColouredGraph, ac: AbsorbingCycle, paths: Sequence[Sequence[int]]
) -> tuple[int, ...]:
    """PC cycle on ``V(C)`` plus every vertex of ``paths``."""
    on_cycle = set(ac.cycle)
    seen: set[int] = set()
    col = G.colour_rows()
    for p in paths:
        if on_cycle.intersection(p) or seen.intersection(p) or len(set(p)) != len(p):
            raise ValueError("paths must be disjoint from each other and from the cycle")
        if not pc_path_unchecked(col, p):
            raise ValueError(f"path {list(p)} is not properly coloured")
        seen.update(p)
    pieces = split_pieces(paths)
    absorbers = [ac.absorber(j) for j in range(len(ac.family))]
    match = absorption_matching(G, absorbers, pieces)
    if match is None:
        raise SearchFailure(
            "not enough unused absorbers for the pieces", "absorb", pieces=len(pieces)
        )
    insert = {j: piece for j, piece in match.values()}
    out: list[int] = []
    for j in range(len(ac.family)):
        block = ac.cycle[6 * j : 6 * j + 6]
        out.extend(block[:2])
        out.extend(insert.get(j, ()))
        out.extend(block[2:])
    cycle = tuple(out)
    if not pc_cycle_unchecked(col, cycle):
        raise SearchFailure("spliced cycle is not properly coloured", "absorb")
    return cycle


def family_size_bound(n: int, eps: float) -> int:
    """``floor(eps * n / 9)``: largest family that keeps ``6|F| <= 2 eps n / 3``."""
    return math.floor(eps * n / 9)
