"""Experiment harness: threshold scans and the long-path conjecture scanner.

Each cell or instance gets its own seed from ``derive_seed``, so rows do not
depend on the worker count. Reports are CSV with a versioned header comment.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .certify import (
    TWO_FACTOR,
    Certificate,
    oracle_longest_pc_path,
    oracle_pc_cycle,
    oracle_pc_two_factor,
    validate_certificate,
)
from .errors import BudgetExceeded, SearchFailure
from .factor import find_pc_two_factor
from .generators import _extremal, derive_seed, random_gnp
from .graph import EdgeColouredGraph, min_colour_degree, write_ecg

THRESHOLD_HEADER = "# pcc-threshold-scan v1"
CONJECTURE_HEADER = "# pcc-conjecture-scan v1"
DEFAULT_SAMPLES = 50


def sample_colour_degree(n: int, delta: int, seed: int, tries: int = 10_000) -> EdgeColouredGraph | None:
    """Random graph with ``min colour degree == delta`` by rejection, or None."""
    rng = np.random.default_rng(seed)
    lo = min(1.0, delta / max(n - 1, 1))
    for _ in range(tries):
        p = rng.uniform(lo, 1.0)
        q = int(rng.integers(max(delta, 2), n * n + 1))
        G = random_gnp(n, p, q, seed=int(rng.integers(2**63)))
        if min_colour_degree(G) == delta:
            return G
    return None


def _rows_csv(header: str, rows: list) -> str:
    buf = io.StringIO()
    buf.write(header + "\n")
    w = csv.writer(buf, lineterminator="\n")
    if rows:
        w.writerow([f.name for f in fields(rows[0])])
        w.writerows(astuple(r) for r in rows)
    return buf.getvalue()


def _map(fn, jobs: list, workers: int) -> list:
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


# -- threshold scan ---------------------------------------------------------


@dataclass(frozen=True)
class ThresholdRow:
    n: int
    delta: int
    instances: int
    shortfall: int
    oracle_exists: int
    oracle_none: int
    oracle_over_budget: int
    constructive_ok: int
    constructive_invalid: int
    extremal_included: int


def _threshold_cell(job: tuple[int, int, int, int, int]) -> ThresholdRow:
    n, delta, samples, budget, seed = job
    graphs: list[EdgeColouredGraph] = []
    extremal = 0
    if 1 <= delta and 3 * delta < 2 * n:
        graphs.append(_extremal(n, delta))
        extremal = 1
    shortfall = 0
    for i in range(samples):
        G = sample_colour_degree(n, delta, derive_seed(seed, n, delta, i))
        if G is None:
            shortfall += 1
        else:
            graphs.append(G)
    exists = none = over = ok = invalid = 0
    for G in graphs:
        try:
            if oracle_pc_two_factor(G, budget=budget) is None:
                none += 1
            else:
                exists += 1
        except BudgetExceeded:
            over += 1
        try:
            cycles = find_pc_two_factor(G, fallback=True)
        except SearchFailure:
            continue
        if validate_certificate(G, Certificate.make(TWO_FACTOR, cycles)):
            ok += 1
        else:
            invalid += 1
    return ThresholdRow(n, delta, len(graphs), shortfall, exists, none, over, ok, invalid, extremal)


@dataclass
class ThresholdReport:
    rows: list[ThresholdRow]

    def to_csv(self) -> str:
        return _rows_csv(THRESHOLD_HEADER, self.rows)


def scan_threshold(
    cells: list[tuple[int, int]],
    samples: int = DEFAULT_SAMPLES,
    budget: int = 10**7,
    seed: int = 0,
    workers: int = 1,
) -> ThresholdReport:
    """Per ``(n, delta)`` cell: PC 2-factor existence (oracle) vs. constructive success.

    Cells below ``2n/3`` also include the sharpness construction.
    """
    for n, delta in cells:
        if not 1 <= delta < n:
            raise ValueError(f"cell ({n}, {delta}) needs 1 <= delta < n")
    jobs = [(n, d, samples, budget, seed) for n, d in cells]
    return ThresholdReport(_map(_threshold_cell, jobs, workers))


# -- conjecture scan --------------------------------------------------------


@dataclass(frozen=True)
class ConjectureRow:
    source: str
    n: int
    m: int
    delta_c: int
    longest_path: int
    hamiltonian: int
    bound: int
    violation: int


def is_connected(G: EdgeColouredGraph) -> bool:
    if G.n == 0:
        return False
    es = G.edges()
    rows = [u for u, _, _ in es]
    cols = [v for _, v, _ in es]
    A = csr_matrix((np.ones(len(es)), (rows, cols)), shape=(G.n, G.n))
    return connected_components(A, directed=False)[0] == 1


def conjecture_row(G: EdgeColouredGraph, source: str) -> ConjectureRow:
    d = min_colour_degree(G)
    longest = oracle_longest_pc_path(G)
    ham = int(G.n >= 3 and oracle_pc_cycle(G, G.n) is not None)
    bound = 3 * d // 2
    return ConjectureRow(source, G.n, G.m, d, longest, ham, bound, int(not ham and longest < bound))


def _conjecture_instances(n: int, samples: int, seed: int) -> list[tuple[str, EdgeColouredGraph]]:
    out = []
    out.append((f"rainbow-{n}", EdgeColouredGraph(n, [(u, v, u * n + v) for u in range(n) for v in range(u + 1, n)])))
    for delta in range(1, n):
        if 3 * delta < 2 * n:
            out.append((f"extremal-{n}-{delta}", _extremal(n, delta)))
    rng = np.random.default_rng(derive_seed(seed, n))
    for i in range(samples):
        p = rng.uniform(0.3, 1.0)
        q = int(rng.integers(2, n * n + 1))
        out.append((f"gnp-{n}-{i}", random_gnp(n, p, q, seed=derive_seed(seed, n, i))))
    return out


def _conjecture_cell(job: tuple[int, int, int]) -> list[tuple[ConjectureRow, str]]:
    n, samples, seed = job
    return [
        (conjecture_row(G, name), G.to_ecg())
        for name, G in _conjecture_instances(n, samples, seed)
        if is_connected(G)
    ]


@dataclass
class ConjectureReport:
    rows: list[ConjectureRow]

    @property
    def violations(self) -> list[ConjectureRow]:
        return [r for r in self.rows if r.violation]

    def to_csv(self) -> str:
        return _rows_csv(CONJECTURE_HEADER, self.rows)


def scan_conjecture(
    sizes: list[int],
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    workers: int = 1,
    dump_dir: str | Path | None = None,
) -> ConjectureReport:
    """Connected instances: PC Hamiltonian cycle or a PC path of ``floor(3 delta_c / 2)`` edges.

    Any violation is written to ``dump_dir`` as ``<source>.ecg``.
    """
    for n in sizes:
        if n < 3:
            raise ValueError(f"sizes must be at least 3, got {n}")
    results = _map(_conjecture_cell, [(n, samples, seed) for n in sizes], workers)
    rows = []
    for cell in results:
        for row, text in cell:
            rows.append(row)
            if row.violation and dump_dir is not None:
                out = Path(dump_dir)
                out.mkdir(parents=True, exist_ok=True)
                write_ecg(EdgeColouredGraph.from_ecg(text), out / f"{row.source}.ecg")
    return ConjectureReport(rows)
