"""Backtracking kernels behind the exhaustive oracles.

Every kernel is written once in the subset of Python that numba compiles in
nopython mode and works on an ``n x n`` int64 colour matrix (``-1`` marks a
non-edge). The searches are iterative (explicit stacks) so the same source
runs unchanged when numba is disabled.

Set ``PCC_NO_NUMBA=1`` to force the interpreted path. Both backends visit the
search tree in the same order, so witnesses and counts agree exactly.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

FOUND = 1
NOT_FOUND = 0
OVER_BUDGET = -1


def pc_cycle_search(col, length, start_limit, budget):
    """First PC cycle on exactly ``length`` vertices, canonical form.

    A cycle is reported starting at its smallest vertex ``s`` (only starts
    ``s < start_limit`` are tried) with its second vertex smaller than its
    last, so each cycle is met once. Returns ``(status, path, expansions)``.
    """
    n = col.shape[0]
    path = np.zeros(length, np.int64)
    used = np.zeros(n, np.bool_)
    nxt = np.zeros(length + 1, np.int64)
    expansions = 0
    for s in range(min(start_limit, n)):
        if n - s < length:
            break
        path[0] = s
        used[s] = True
        depth = 1
        nxt[1] = s + 1
        while depth > 0:
            if depth == length:
                v = path[length - 1]
                c = col[v, s]
                if c >= 0 and c != col[path[length - 2], v] and c != col[s, path[1]] and path[1] < v:
                    return FOUND, path, expansions
                depth -= 1
                used[path[depth]] = False
                continue
            v = path[depth - 1]
            pc = col[path[depth - 2], v] if depth >= 2 else -1
            w = nxt[depth]
            while w < n:
                c = col[v, w]
                if c >= 0 and c != pc and not used[w]:
                    if depth < length - 1 or col[w, s] >= 0:
                        break
                w += 1
            if w < n:
                expansions += 1
                if expansions > budget:
                    return OVER_BUDGET, path, expansions
                nxt[depth] = w + 1
                path[depth] = w
                used[w] = True
                depth += 1
                if depth < length:
                    nxt[depth] = s + 1
            else:
                depth -= 1
                used[path[depth]] = False
    return NOT_FOUND, path, expansions


def two_factor_search(col, mask, budget):
    """Partition the vertices with ``mask`` set into PC cycles.

    Cycles are opened at the lowest uncovered vertex and extended through
    larger vertices only; extensions are tried in ascending order before the
    current cycle is closed. Returns ``(status, seq, starts, expansions)`` where
    ``seq`` lists the vertices cycle after cycle and ``starts`` flags the first
    vertex of each cycle.
    """
    n = col.shape[0]
    seq = np.full(n, -1, np.int64)
    starts = np.zeros(n, np.bool_)
    cst = np.zeros(n, np.int64)
    used = np.zeros(n, np.bool_)
    total = 0
    first = -1
    for v in range(n):
        if mask[v]:
            total += 1
            if first < 0:
                first = v
        else:
            used[v] = True
    if total == 0:
        return FOUND, seq, starts, 0
    if total < 3:
        return NOT_FOUND, seq, starts, 0
    seq[0] = first
    starts[0] = True
    cst[0] = 0
    used[first] = True
    nxt = np.zeros(n + 1, np.int64)
    depth = 1
    expansions = 0
    while depth > 0:
        cs = cst[depth - 1]
        s = seq[cs]
        v = seq[depth - 1]
        span = depth - cs
        pc = col[seq[depth - 2], v] if span >= 2 else -1
        closes = False
        if span >= 3:
            c = col[v, s]
            closes = c >= 0 and c != pc and c != col[s, seq[cs + 1]] and seq[cs + 1] < v
        if depth == total:
            if closes:
                return FOUND, seq, starts, expansions
            depth -= 1
            used[seq[depth]] = False
            continue
        o = nxt[depth]
        placed = False
        while o <= n:
            if o < n:
                if o > s and not used[o]:
                    c = col[v, o]
                    if c >= 0 and c != pc:
                        seq[depth] = o
                        starts[depth] = False
                        cst[depth] = cs
                        placed = True
                        break
            elif closes and total - depth >= 3:
                u = 0
                while used[u]:
                    u += 1
                seq[depth] = u
                starts[depth] = True
                cst[depth] = depth
                placed = True
                break
            o += 1
        if placed:
            expansions += 1
            if expansions > budget:
                return OVER_BUDGET, seq, starts, expansions
            nxt[depth] = o + 1
            used[seq[depth]] = True
            depth += 1
            nxt[depth] = 0
        else:
            depth -= 1
            used[seq[depth]] = False
    return NOT_FOUND, seq, starts, expansions


def longest_pc_path(col, budget):
    """Longest PC path by exhaustive DFS from every start vertex.

    Returns ``(status, best, count, expansions)``: ``best[:count]`` is the
    first longest path met (``count`` vertices).
    """
    n = col.shape[0]
    best = np.zeros(max(n, 1), np.int64)
    if n == 0:
        return FOUND, best, 0, 0
    path = np.zeros(n, np.int64)
    used = np.zeros(n, np.bool_)
    nxt = np.zeros(n + 1, np.int64)
    best_count = 1
    expansions = 0
    for s in range(n):
        path[0] = s
        used[s] = True
        depth = 1
        nxt[1] = 0
        while depth > 0:
            if depth > best_count:
                best_count = depth
                for i in range(depth):
                    best[i] = path[i]
                if best_count == n:
                    return FOUND, best, best_count, expansions
            w = n
            if depth < n:
                v = path[depth - 1]
                pc = col[path[depth - 2], v] if depth >= 2 else -1
                w = nxt[depth]
                while w < n:
                    c = col[v, w]
                    if c >= 0 and c != pc and not used[w]:
                        break
                    w += 1
            if w < n:
                expansions += 1
                if expansions > budget:
                    return OVER_BUDGET, best, best_count, expansions
                nxt[depth] = w + 1
                path[depth] = w
                used[w] = True
                depth += 1
                nxt[depth] = 0
            else:
                depth -= 1
                used[path[depth]] = False
    return FOUND, best, best_count, expansions


_SOURCES = {
    "pc_cycle_search": pc_cycle_search,
    "two_factor_search": two_factor_search,
    "longest_pc_path": longest_pc_path,
}

PURE = SimpleNamespace(name="python", **_SOURCES)

if numba is not None:
    JIT = SimpleNamespace(
        name="numba", **{k: numba.njit(cache=True)(f) for k, f in _SOURCES.items()}
    )
else:  # pragma: no cover
    JIT = None


def numba_enabled() -> bool:
    flag = os.environ.get("PCC_NO_NUMBA", "").strip().lower()
    return JIT is not None and flag in ("", "0", "false", "no")


def backend(use_numba: bool | None = None) -> SimpleNamespace:
    """Kernel namespace; ``None`` follows the ``PCC_NO_NUMBA`` flag."""
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba and JIT is None:
        raise RuntimeError("numba is not importable")
    return JIT if use_numba else PURE
