"""Edge-coloured simple graphs, colour-degree statistics and PC predicates.

Vertices are ``0..n-1``. Colours are arbitrary non-negative integers (they
need not be contiguous). Paths and cycles are plain vertex sequences; a cycle
``(v0, ..., vk)`` implicitly closes with the edge ``vk v0``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import GraphFormatError

NO_EDGE = -1

Cycle = tuple[int, ...]


class EdgeColouredGraph:
    """Immutable undirected simple graph with exactly one colour per edge."""

    __slots__ = ("n", "_col", "_adj", "_edges", "_matrix")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        self.n = int(n)
        col = [[NO_EDGE] * self.n for _ in range(self.n)]
        for u, v, c in edges:
            u, v, c = int(u), int(v), int(c)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if c < 0:
                raise ValueError(f"edge ({u}, {v}) has negative colour {c}")
            if col[u][v] != NO_EDGE:
                raise ValueError(f"parallel edge ({u}, {v})")
            col[u][v] = col[v][u] = c
        self._col = col
        self._adj = tuple(
            tuple(w for w in range(self.n) if row[w] != NO_EDGE) for row in col
        )
        self._edges = tuple(
            (u, v, col[u][v]) for u in range(self.n) for v in self._adj[u] if u < v
        )
        self._matrix: np.ndarray | None = None

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    def colour(self, u: int, v: int) -> int:
        """Colour of edge ``uv``, or ``NO_EDGE`` (-1) if absent."""
        return self._col[u][v]

    def has_edge(self, u: int, v: int) -> bool:
        return self._col[u][v] != NO_EDGE

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edges(self) -> tuple[tuple[int, int, int], ...]:
        """All edges as ``(u, v, colour)`` with ``u < v``, lexicographically sorted."""
        return self._edges

    def colour_rows(self) -> list[list[int]]:
        """Row-major colour table (shared, do not mutate)."""
        return self._col

    @property
    def matrix(self) -> np.ndarray:
        """Read-only ``n x n`` int64 colour matrix with -1 for non-edges."""
        if self._matrix is None:
            mat = np.array(self._col, dtype=np.int64).reshape(self.n, self.n)
            mat.setflags(write=False)
            self._matrix = mat
        return self._matrix

    def colour_counts(self, v: int) -> Counter:
        """Number of edges of each colour at ``v``."""
        row = self._col[v]
        return Counter(row[w] for w in self._adj[v])

    def subgraph(self, vertices: Iterable[int]) -> tuple["EdgeColouredGraph", tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1``.

        Returns the subgraph and ``labels`` with ``labels[new] == old``.
        """
        labels = tuple(sorted(set(vertices)))
        index = {old: new for new, old in enumerate(labels)}
        sub_edges = [
            (index[u], index[v], c)
            for u, v, c in self._edges
            if u in index and v in index
        ]
        return EdgeColouredGraph(len(labels), sub_edges), labels

    def without_edges(self, drop: Iterable[tuple[int, int]]) -> "EdgeColouredGraph":
        gone = {(min(u, v), max(u, v)) for u, v in drop}
        return EdgeColouredGraph(
            self.n, [(u, v, c) for u, v, c in self._edges if (u, v) not in gone]
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColouredGraph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"EdgeColouredGraph(n={self.n}, m={self.m})"

    # -- text format -----------------------------------------------------

    def to_ecg(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v} {c}" for u, v, c in self._edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_ecg(cls, text: str) -> "EdgeColouredGraph":
        header: tuple[int, int] | None = None
        edges: list[tuple[int, int, int]] = []
        seen: dict[tuple[int, int], int] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            try:
                values = [int(f) for f in fields]
            except ValueError:
                raise GraphFormatError(f"expected integers, got {line!r}", lineno) from None
            if header is None:
                if len(values) != 2 or min(values) < 0:
                    raise GraphFormatError("header must be 'n m' with n, m >= 0", lineno)
                header = (values[0], values[1])
                continue
            if len(values) != 3:
                raise GraphFormatError(f"edge line must be 'u v c', got {line!r}", lineno)
            u, v, c = values
            n = header[0]
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex out of range 0..{n - 1}", lineno)
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}", lineno)
            if c < 0:
                raise GraphFormatError(f"negative colour {c}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"parallel edge {key} (first on line {seen[key]})", lineno)
            seen[key] = lineno
            edges.append((u, v, c))
        if header is None:
            raise GraphFormatError("missing 'n m' header")
        if len(edges) != header[1]:
            raise GraphFormatError(f"header announces {header[1]} edges, found {len(edges)}")
        return cls(header[0], edges)


def read_ecg(path: str | Path) -> EdgeColouredGraph:
    return EdgeColouredGraph.from_ecg(Path(path).read_text())


def write_ecg(graph: EdgeColouredGraph, path: str | Path) -> None:
    Path(path).write_text(graph.to_ecg())


# -- colour statistics ---------------------------------------------------


def _check_vertex(G: EdgeColouredGraph, v: int) -> None:
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} outside 0..{G.n - 1}")


def colour_degree(G: EdgeColouredGraph, v: int) -> int:
    """Number of distinct colours on edges at ``v``."""
    _check_vertex(G, v)
    row = G.colour_rows()[v]
    return len({row[w] for w in G.neighbours(v)})


def min_colour_degree(G: EdgeColouredGraph) -> int:
    if G.n == 0:
        raise ValueError("graph has no vertices")
    return min(colour_degree(G, v) for v in range(G.n))


def delta1(G: EdgeColouredGraph) -> int:
    """Minimum degree left after deleting the worst monochromatic subgraph.

    Computed per vertex as ``deg(v) - max_c #(colour-c edges at v)``: deleting a
    whole colour class never does worse than any of its subgraphs.
    """
    if G.n == 0:
        raise ValueError("graph has no vertices")
    best = None
    for v in range(G.n):
        counts = G.colour_counts(v)
        value = G.degree(v) - (max(counts.values()) if counts else 0)
        best = value if best is None else min(best, value)
    return best


def max_mono_degree(G: EdgeColouredGraph) -> int:
    """Largest number of same-coloured edges at one vertex."""
    if G.n == 0:
        raise ValueError("graph has no vertices")
    return max((max(G.colour_counts(v).values(), default=0) for v in range(G.n)), default=0)


# -- PC predicates ---------------------------------------------------------


def _check_distinct(G: EdgeColouredGraph, verts: Sequence[int]) -> None:
    for v in verts:
        _check_vertex(G, v)
    if len(set(verts)) != len(verts):
        raise ValueError(f"repeated vertex in {list(verts)}")


def is_pc_path(G: EdgeColouredGraph, verts: Sequence[int]) -> bool:
    """True iff ``verts`` is a path of G whose adjacent edges differ in colour."""
    _check_distinct(G, verts)
    col = G.colour_rows()
    prev = NO_EDGE
    for a, b in zip(verts, verts[1:]):
        c = col[a][b]
        if c == NO_EDGE or c == prev:
            return False
        prev = c
    return True


def is_pc_cycle(G: EdgeColouredGraph, verts: Sequence[int]) -> bool:
    """True iff ``verts`` (closed cyclically) is a properly coloured cycle."""
    _check_distinct(G, verts)
    return len(verts) >= 3 and pc_cycle_unchecked(G.colour_rows(), verts)


def pc_cycle_unchecked(col: list[list[int]], verts: Sequence[int]) -> bool:
    """PC-cycle test without distinctness/range checks (hot path)."""
    k = len(verts)
    if k < 3:
        return False
    first = prev = col[verts[-1]][verts[0]]
    if first == NO_EDGE:
        return False
    for i in range(k - 1):
        c = col[verts[i]][verts[i + 1]]
        if c == NO_EDGE or c == prev:
            return False
        prev = c
    return prev != first


def pc_path_unchecked(col: list[list[int]], verts: Sequence[int]) -> bool:
    prev = NO_EDGE
    for i in range(len(verts) - 1):
        c = col[verts[i]][verts[i + 1]]
        if c == NO_EDGE or c == prev:
            return False
        prev = c
    return True


# -- edge-minimal reduction -------------------------------------------------


def edge_minimal_reduction(G: EdgeColouredGraph) -> EdgeColouredGraph:
    """Delete edges whose two endpoints both see their colour at least twice.

    Colour classes are scanned by ascending colour id, edges in lexicographic
    order. Deleting an edge only lowers monochromatic degrees, so an edge that
    was not deletable earlier in the scan never becomes deletable later; one
    ordered pass therefore equals the restart-after-each-deletion procedure.
    The result keeps every colour degree and each colour class is a star forest.
    """
    mono: dict[tuple[int, int], int] = Counter()
    for u, v, c in G.edges():
        mono[u, c] += 1
        mono[v, c] += 1
    drop = []
    for u, v, c in sorted(G.edges(), key=lambda e: (e[2], e[0], e[1])):
        if mono[u, c] >= 2 and mono[v, c] >= 2:
            mono[u, c] -= 1
            mono[v, c] -= 1
            drop.append((u, v))
    if not drop:
        return G
    return G.without_edges(drop)


# -- oriented cycle families ----------------------------------------------


@dataclass
class OnePathCycle:
    """Vertex-disjoint PC cycles plus at most one PC path."""

    cycles: list[Cycle] = field(default_factory=list)
    path: list[int] | None = None

    def vertices(self) -> set[int]:
        out = {v for c in self.cycles for v in c}
        if self.path:
            out.update(self.path)
        return out


class OrientedCycles:
    """Successor/predecessor view of a family of vertex-disjoint oriented cycles.

    ``sigma=+1`` follows the stored orientation and ``sigma=-1`` the reverse, so
    callers can try both orientations without mutating the family.
    """

    def __init__(self, cycles: Sequence[Sequence[int]]):
        self.cycles = [tuple(c) for c in cycles]
        self._where: dict[int, tuple[int, int]] = {}
        for ci, cyc in enumerate(self.cycles):
            for i, v in enumerate(cyc):
                if v in self._where:
                    raise ValueError(f"vertex {v} appears in two cycles")
                self._where[v] = (ci, i)

    def covers(self, v: int) -> bool:
        return v in self._where

    def cycle_id(self, v: int) -> int:
        return self._where[v][0]

    def cycle_of(self, v: int) -> Cycle:
        return self.cycles[self._where[v][0]]

    def succ(self, v: int, sigma: int = 1) -> int:
        ci, i = self._where[v]
        cyc = self.cycles[ci]
        return cyc[(i + sigma) % len(cyc)]

    def pred(self, v: int, sigma: int = 1) -> int:
        return self.succ(v, -sigma)

    def walk(self, a: int, b: int, sigma: int = 1) -> list[int]:
        """Vertices from ``a`` to ``b`` inclusive following direction ``sigma``."""
        ci, i = self._where[a]
        cj, j = self._where[b]
        if ci != cj:
            raise ValueError(f"{a} and {b} lie on different cycles")
        cyc = self.cycles[ci]
        k = len(cyc)
        steps = ((j - i) * sigma) % k
        return [cyc[(i + sigma * t) % k] for t in range(steps + 1)]

    def vertex_set(self) -> set[int]:
        return set(self._where)
