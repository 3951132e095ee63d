"""Instance generators: the sharpness construction and seeded random graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import EdgeColouredGraph

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One step of the splitmix64 output function."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(*parts: int) -> int:
    """Fold integers into one 64-bit seed; order matters."""
    h = 0
    for p in parts:
        h = splitmix64(h ^ (int(p) & MASK64))
    return h


def _extremal(n: int, delta: int) -> EdgeColouredGraph:
    base = delta * (delta - 1) // 2
    edges = [(a, b, i) for i, (a, b) in enumerate(combinations(range(delta), 2))]
    edges += [(i, y, base + i) for i in range(delta) for y in range(delta, n)]
    return EdgeColouredGraph(n, edges)


def gen_extremal(n: int, delta: int) -> EdgeColouredGraph:
    """Rainbow ``K_delta`` on ``0..delta-1`` joined to an independent set.

    Edge ``x_i y`` gets colour ``C(delta, 2) + i``, so every vertex has colour
    degree exactly ``delta``. Requires ``1 <= delta`` and ``3 delta < 2n``.
    """
    if delta < 1:
        raise ValueError(f"delta must be at least 1, got {delta}")
    if 3 * delta >= 2 * n:
        raise ValueError(f"need 3*delta < 2*n, got n={n}, delta={delta}")
    return _extremal(n, delta)


@dataclass(frozen=True)
class GenSpec:
    """``kind`` is ``extremal``, ``complete`` or ``gnp``."""

    kind: str
    n: int
    delta: int | None = None
    colours: int | None = None
    cap: int | None = None
    p: float | None = None
    seed: int = 0


def _round_robin(n: int, colours: int, rng: np.random.Generator) -> EdgeColouredGraph:
    # circle-method 1-factorization, relabelled at random
    m = n + (n % 2)
    rounds = m - 1
    if colours < rounds:
        raise ValueError(f"a proper colouring of K_{n} needs {rounds} colours, got {colours}")
    perm = rng.permutation(n)
    names = rng.choice(colours, rounds, replace=False)
    edges = []
    for r in range(rounds):
        pairs = [(m - 1, r)] + [((r + i) % rounds, (r - i) % rounds) for i in range(1, m // 2)]
        for a, b in pairs:
            if a < n and b < n:
                edges.append((int(perm[a]), int(perm[b]), int(names[r])))
    return EdgeColouredGraph(n, edges)


def random_complete(n: int, colours: int, cap: int, seed: int = 0, tries: int = 100) -> EdgeColouredGraph:
    """Coloured ``K_n`` where no vertex sees any colour more than ``cap`` times.

    Edges are coloured in a random order, each uniformly among the colours
    still below the cap at both ends; a dead end restarts the whole colouring.
    Cap 1 uses a randomly relabelled round-robin 1-factorization instead.
    """
    if n < 1 or colours < 1 or cap < 1:
        raise ValueError("n, colours and cap must be positive")
    if colours * cap < n - 1:
        raise ValueError(f"{colours} colours with cap {cap} cannot colour degree {n - 1}")
    rng = np.random.default_rng(seed)
    if cap == 1:
        return _round_robin(n, colours, rng)
    pairs = np.array(list(combinations(range(n), 2)), dtype=np.int64).reshape(-1, 2)
    for _ in range(tries):
        mono = np.zeros((n, colours), dtype=np.int64)
        edges = []
        for idx in rng.permutation(len(pairs)):
            u, v = (int(t) for t in pairs[idx])
            free = np.flatnonzero((mono[u] < cap) & (mono[v] < cap))
            if free.size == 0:
                break
            c = int(free[rng.integers(free.size)])
            mono[u, c] += 1
            mono[v, c] += 1
            edges.append((u, v, c))
        else:
            return EdgeColouredGraph(n, edges)
    raise ValueError(f"no colouring found within cap {cap} after {tries} attempts")


def random_gnp(n: int, p: float, colours: int, cap: int | None = None, seed: int = 0) -> EdgeColouredGraph:
    """Binomial random graph with uniform colours; over-cap edges are dropped."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if n < 0 or colours < 1:
        raise ValueError("n must be non-negative and colours positive")
    rng = np.random.default_rng(seed)
    mono = np.zeros((max(n, 1), colours), dtype=np.int64)
    edges = []
    for u, v in combinations(range(n), 2):
        if rng.random() >= p:
            continue
        if cap is None:
            c = int(rng.integers(colours))
        else:
            free = np.flatnonzero((mono[u] < cap) & (mono[v] < cap))
            if free.size == 0:
                continue
            c = int(free[rng.integers(free.size)])
        mono[u, c] += 1
        mono[v, c] += 1
        edges.append((u, v, c))
    return EdgeColouredGraph(n, edges)


def gen_random(spec: GenSpec) -> EdgeColouredGraph:
    if spec.kind == "extremal":
        if spec.delta is None:
            raise ValueError("extremal spec needs delta")
        return gen_extremal(spec.n, spec.delta)
    if spec.kind == "complete":
        if spec.colours is None or spec.cap is None:
            raise ValueError("complete spec needs colours and cap")
        return random_complete(spec.n, spec.colours, spec.cap, spec.seed)
    if spec.kind == "gnp":
        if spec.colours is None or spec.p is None:
            raise ValueError("gnp spec needs p and colours")
        return random_gnp(spec.n, spec.p, spec.colours, spec.cap, spec.seed)
    raise ValueError(f"unknown generator kind {spec.kind!r}")
