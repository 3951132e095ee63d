"""PC cycles of every length: triangles, short cycles by path + join, long
cycles by absorbing a path cover into a short absorbing cycle.

``pancyclic_all`` builds the absorbing cycle and the cover of the remaining
vertices once, then solves each length independently. Each length draws its
randomness from a seed derived from ``(seed, length)``, so the report does not
depend on the number of worker threads.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from .absorption import (
    AbsorbingCycle,
    absorb_paths,
    absorption_matching,
    build_absorber_family,
    build_absorbing_cycle,
    join_edges,
    split_pieces,
)
from .certify import CYCLE, Certificate, oracle_pc_cycle, validate_certificate
from .errors import BudgetExceeded, SearchFailure
from .factor import find_pc_two_factor_min_length
from .generators import derive_seed
from .graph import NO_EDGE, EdgeColouredGraph, pc_cycle_unchecked

FIDELITY_EPS = Fraction(1, 3 * 512)


@dataclass(frozen=True)
class DriverConfig:
    """Parameters of the pancyclicity pipeline.

    ``family_size`` defaults to ``max(3, floor(eps n / 9))`` absorbers and
    ``k`` (the minimum-cycle parameter of the cover) is chosen adaptively when
    left as None. ``fidelity`` enforces ``eps <= 1/1536``.
    """

    epsilon: Fraction | float | str = Fraction(1, 20)
    k: int | None = None
    coverage: int = 1
    family_size: int | None = None
    path_budget: int = 50_000
    join_retries: int = 500
    direct_budget: int = 10**6
    max_moves: int | None = None
    seed: int = 0
    fidelity: bool = False
    workers: int = 1

    def __post_init__(self):
        eps = Fraction(str(self.epsilon)) if not isinstance(self.epsilon, Fraction) else self.epsilon
        object.__setattr__(self, "epsilon", eps)
        if not 0 < eps <= 1:
            raise ValueError(f"epsilon must lie in (0, 1], got {eps}")
        if self.fidelity and eps > FIDELITY_EPS:
            raise ValueError(f"fidelity mode needs epsilon <= {FIDELITY_EPS}, got {eps}")
        if self.coverage < 1 or self.workers < 1:
            raise ValueError("coverage and workers must be positive")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be positive")

    def short_limit(self, n: int) -> int:
        return math.floor(2 * self.epsilon * n / 3)

    def gamma(self) -> Fraction:
        return 2**6 * self.epsilon / 9

    def target_family_size(self, n: int) -> int:
        if self.family_size is not None:
            return self.family_size
        return max(3, math.floor(self.epsilon * n / 9))

    def min_cover_k(self, m: int) -> int:
        return max(1, math.ceil(self.epsilon * m / 3))

    def describe(self) -> dict[str, str]:
        return {"epsilon": str(self.epsilon), "seed": str(self.seed), "coverage": str(self.coverage)}


# ---------------------------------------------------------------------------
# triangles
# ---------------------------------------------------------------------------


def find_pc_triangle(G: EdgeColouredGraph, x: int) -> tuple[int, int, int]:
    """PC triangle through ``x`` from a directed 2-cycle on ``N(x)``.

    Arc ``y -> z`` exists when ``c(yz) != c(xy) != c(xz)``.
    """
    if not 0 <= x < G.n:
        raise ValueError(f"vertex {x} outside 0..{G.n - 1}")
    col = G.colour_rows()
    cx = col[x]
    nbrs = G.neighbours(x)
    out_deg = dict.fromkeys(nbrs, 0)
    in_deg = dict.fromkeys(nbrs, 0)

    def arc(y: int, z: int) -> bool:
        c = col[y][z]
        return c != NO_EDGE and c != cx[y] and cx[y] != cx[z]

    for y in nbrs:
        for z in nbrs:
            if y != z and arc(y, z):
                if arc(z, y):
                    return (x, min(y, z), max(y, z))
                out_deg[y] += 1
                in_deg[z] += 1
    raise SearchFailure(
        f"no PC triangle through {x}",
        "triangle",
        max_out=max(out_deg.values(), default=0),
        max_in=max(in_deg.values(), default=0),
    )


def any_pc_triangle(G: EdgeColouredGraph) -> tuple[int, int, int]:
    for x in range(G.n):
        try:
            return find_pc_triangle(G, x)
        except SearchFailure:
            continue
    raise SearchFailure("no vertex lies on a PC triangle", "triangle")


# ---------------------------------------------------------------------------
# short cycles
# ---------------------------------------------------------------------------


def _random_pc_paths(G: EdgeColouredGraph, size: int, rng: np.random.Generator, budget: int):
    """PC paths on ``size`` vertices from a randomised backtracking DFS."""
    col = G.colour_rows()
    expansions = 0
    for start in rng.permutation(G.n).tolist():
        path = [start]
        on = {start}
        stack = [iter(rng.permutation(G.neighbours(start)).tolist())]
        while stack:
            if len(path) == size:
                yield list(path)
                on.discard(path.pop())
                stack.pop()
                continue
            step = None
            for w in stack[-1]:
                if w in on:
                    continue
                if len(path) >= 2 and col[path[-2]][path[-1]] == col[path[-1]][w]:
                    continue
                step = w
                break
            if step is None:
                stack.pop()
                on.discard(path.pop())
                continue
            expansions += 1
            if expansions > budget:
                return
            path.append(step)
            on.add(step)
            stack.append(iter(rng.permutation(G.neighbours(step)).tolist()) if len(path) < size else iter(()))


def _direct_cycle(G: EdgeColouredGraph, length: int, budget: int) -> tuple[int, ...] | None:
    try:
        return oracle_pc_cycle(G, length, budget=budget)
    except BudgetExceeded:
        return None


def find_pc_cycle_short(G: EdgeColouredGraph, length: int, cfg: DriverConfig = DriverConfig()) -> tuple[int, ...]:
    """PC cycle ``x1 .. x_{l-2} z1 z2``: a random PC path closed by one connector edge.

    Length 4 has no such closure and is searched directly; lengths 5 and 6
    fall back to direct search when the joins fail.
    """
    if not 4 <= length <= G.n:
        raise ValueError(f"length must lie in 4..{G.n}, got {length}")
    if length > 4:
        rng = np.random.default_rng(derive_seed(cfg.seed, length, 0))
        failures = 0
        for path in _random_pc_paths(G, length - 2, rng, cfg.path_budget):
            interior = path[2 : length - 4]
            try:
                z1, z2 = join_edges(G, interior, path[-2], path[-1], path[0], path[1])
            except SearchFailure:
                failures += 1
                if failures >= cfg.join_retries:
                    break
                continue
            return tuple(path) + (z1, z2)
    if length <= 6:
        cyc = _direct_cycle(G, length, cfg.direct_budget)
        if cyc is not None:
            return cyc
    raise SearchFailure(f"no PC {length}-cycle from path + join", "short", length=length)


# ---------------------------------------------------------------------------
# long cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LongContext:
    """Shared state for every long length: absorbing cycle and cover cycles."""

    absorbing: AbsorbingCycle
    cover: tuple[tuple[int, ...], ...]
    k: int

    @property
    def size(self) -> int:
        return len(self.absorbing.cycle)


def _absorbing_cycle(G: EdgeColouredGraph, cfg: DriverConfig) -> AbsorbingCycle:
    size = cfg.target_family_size(G.n)
    fam = build_absorber_family(G, cfg.coverage, min_size=size, cap=size, strict=False)
    while len(fam.paths) > 0:
        try:
            return build_absorbing_cycle(G, fam)
        except SearchFailure as exc:
            drop = (exc.info.get("index", 0) + 1) % len(fam.paths)
            fam = replace(fam, paths=fam.paths[:drop] + fam.paths[drop + 1 :])
            fam.coverage = fam.recount(G)
    raise SearchFailure("could not join any absorber family into a cycle", "absorbing-cycle")


def _cover(G: EdgeColouredGraph, rest: list[int], cfg: DriverConfig) -> tuple[tuple[tuple[int, ...], ...], int]:
    sub, labels = G.subgraph(rest)
    m = sub.n
    if m == 0:
        return (), 0
    if cfg.k is not None:
        ks = [min(cfg.k, m)]
    else:
        floor_k = cfg.min_cover_k(m)
        ks = []
        k = m
        while k > floor_k:
            ks.append(k)
            k //= 2
        ks.append(floor_k)
    last = None
    for k in ks:
        try:
            cycles = find_pc_two_factor_min_length(sub, k, cfg.max_moves)
        except SearchFailure as exc:
            last = exc
            continue
        return tuple(tuple(labels[v] for v in c) for c in cycles), k
    raise SearchFailure(f"no long-cycle cover of the remaining {m} vertices", "cover", residual=last)


def prepare_long(G: EdgeColouredGraph, cfg: DriverConfig = DriverConfig()) -> LongContext:
    ac = _absorbing_cycle(G, cfg)
    on = set(ac.cycle)
    cover, k = _cover(G, [v for v in range(G.n) if v not in on], cfg)
    return LongContext(ac, cover, k)


def _plans(lengths: list[int], need: int):
    """Candidate ``[(cycle index, arc length)]`` allocations, best first."""
    order = sorted(range(len(lengths)), key=lambda i: (-lengths[i], i))
    chosen = list(order)
    total = sum(lengths)
    while chosen and total - lengths[chosen[-1]] >= need:
        total -= lengths[chosen.pop()]
    excess = total - need
    seen = set()
    for pick in range(len(chosen)):
        arcs = {i: lengths[i] for i in chosen}
        i = chosen[pick]
        if arcs[i] - excess < 1:
            continue
        arcs[i] -= excess
        plan = tuple((j, arcs[j]) for j in chosen)
        if plan not in seen:
            seen.add(plan)
            yield list(plan)
    for i in order:
        if lengths[i] >= need:
            plan = ((i, need),)
            if plan not in seen:
                seen.add(plan)
                yield list(plan)


def _allocate(G: EdgeColouredGraph, ctx: LongContext, need: int) -> list[tuple[int, ...]]:
    absorbers = [ctx.absorbing.absorber(j) for j in range(len(ctx.absorbing.family))]
    lengths = [len(c) for c in ctx.cover]
    for plan in _plans(lengths, need):
        pieces: list[tuple[int, ...]] = []
        for ci, arc in plan:
            cyc = ctx.cover[ci]
            placed = False
            for off in range(len(cyc)):
                cand = split_pieces([(cyc[off:] + cyc[:off])[:arc]])
                if absorption_matching(G, absorbers, pieces + cand) is not None:
                    pieces += cand
                    placed = True
                    break
            if not placed:
                break
        else:
            return pieces
    raise SearchFailure(f"no absorbable allocation of {need} vertices", "allocate", need=need)


def find_pc_cycle_long(
    G: EdgeColouredGraph,
    length: int,
    cfg: DriverConfig = DriverConfig(),
    ctx: LongContext | None = None,
) -> tuple[int, ...]:
    """PC cycle through the absorbing cycle plus ``length - |C|`` cover vertices."""
    if not 3 <= length <= G.n:
        raise ValueError(f"length must lie in 3..{G.n}, got {length}")
    ctx = prepare_long(G, cfg) if ctx is None else ctx
    need = length - ctx.size
    if need < 0:
        raise SearchFailure(f"absorbing cycle already has {ctx.size} vertices", "long", length=length)
    if need == 0:
        return ctx.absorbing.cycle
    pieces = _allocate(G, ctx, need)
    return absorb_paths(G, ctx.absorbing, pieces)


# ---------------------------------------------------------------------------
# all lengths
# ---------------------------------------------------------------------------


@dataclass
class PancyclicReport:
    n: int
    results: dict[int, Certificate | SearchFailure]
    absorbing_length: int | None = None
    cover_k: int | None = None
    setup_error: str = ""
    config: dict[str, str] = field(default_factory=dict)

    def successes(self) -> list[int]:
        return [L for L, r in self.results.items() if isinstance(r, Certificate)]

    def success_fraction(self) -> float:
        return len(self.successes()) / len(self.results) if self.results else 1.0

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# pcc-pancyclic v1\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["length", "status", "cycle_length", "method", "stage", "reason"])
        for L in sorted(self.results):
            r = self.results[L]
            if isinstance(r, Certificate):
                w.writerow([L, "ok", len(r.parts[0]), r.notes.get("method", ""), "", ""])
            else:
                w.writerow([L, "fail", "", r.info.get("method", ""), r.stage, r.reason])
        return buf.getvalue()


def _solve_length(G: EdgeColouredGraph, L: int, cfg: DriverConfig, ctx: LongContext | None):
    if L == 3:
        try:
            return any_pc_triangle(G), "triangle", False
        except SearchFailure as exc:
            exc.info["method"] = "triangle"
            raise
    long_ok = ctx is not None and L >= ctx.size
    primary = "long" if long_ok and L > cfg.short_limit(G.n) else "short"
    methods = [primary] + [m for m in ("short", "long") if m != primary and (m != "long" or long_ok)]
    first_error: SearchFailure | None = None
    for i, method in enumerate(methods):
        try:
            if method == "short":
                cyc = find_pc_cycle_short(G, L, cfg)
            else:
                cyc = find_pc_cycle_long(G, L, cfg, ctx)
            return cyc, method, i > 0
        except SearchFailure as exc:
            first_error = first_error or exc
    assert first_error is not None
    first_error.info["method"] = primary
    raise first_error


def pancyclic_all(
    G: EdgeColouredGraph, cfg: DriverConfig = DriverConfig(), cert_dir: str | Path | None = None
) -> PancyclicReport:
    """Try every length ``3..n``; each success is validated before it is kept."""
    ctx: LongContext | None = None
    setup_error = ""
    if G.n >= 3:
        try:
            ctx = prepare_long(G, cfg)
        except SearchFailure as exc:
            setup_error = str(exc)

    def solve(L: int):
        try:
            cyc, method, fell_back = _solve_length(G, L, cfg, ctx)
        except SearchFailure as exc:
            return L, exc
        cert = Certificate.make(
            CYCLE,
            [cyc],
            L,
            algorithm="pancyclic_all",
            method=method,
            fallback="yes" if fell_back else "no",
            **cfg.describe(),
        )
        verdict = validate_certificate(G, cert)
        if not verdict:
            return L, SearchFailure(f"emitted cycle rejected: {verdict.reason}", "validate", method=method)
        return L, cert

    lengths = range(3, G.n + 1)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            pairs = list(pool.map(solve, lengths))
    else:
        pairs = [solve(L) for L in lengths]
    report = PancyclicReport(
        G.n,
        dict(pairs),
        ctx.size if ctx else None,
        ctx.k if ctx else None,
        setup_error,
        cfg.describe(),
    )
    if cert_dir is not None:
        out = Path(cert_dir)
        out.mkdir(parents=True, exist_ok=True)
        for L, r in report.results.items():
            if isinstance(r, Certificate):
                (out / f"cycle_{L:04d}.cert").write_text(r.to_text())
        (out / "summary.csv").write_text(report.to_csv())
    return report


def is_pc_length_cycle(G: EdgeColouredGraph, cyc: tuple[int, ...], length: int) -> bool:
    return len(cyc) == length and len(set(cyc)) == length and pc_cycle_unchecked(G.colour_rows(), cyc)
