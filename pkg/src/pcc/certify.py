"""Certificates, their independent validation, and exhaustive oracles.

A certificate is a witness that can be checked against the host graph
without trusting the algorithm that produced it. The oracles are brute-force
searches (see ``_kernels``) meant for graphs with roughly a dozen vertices.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, GraphFormatError
from .graph import NO_EDGE, EdgeColouredGraph

DEFAULT_BUDGET = 10**8

TWO_FACTOR = "two_factor"
CYCLE = "cycle"
PATH_COVER = "path_cover"
TRIANGLE = "triangle"
KINDS = (TWO_FACTOR, CYCLE, PATH_COVER, TRIANGLE)

HEADER = "# pcc certificate v1"


@dataclass(frozen=True)
class Certificate:
    """Tagged witness: PC cycles (2-factor, cycle, triangle) or PC paths (cover).

    ``note`` is an ordered tuple of ``(key, value)`` strings recording the
    producing algorithm and its parameters.
    """

    kind: str
    parts: tuple[tuple[int, ...], ...]
    length: int | None = None
    note: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        for key, value in self.note:
            if not key or any(ch.isspace() for ch in key):
                raise ValueError(f"note key {key!r} must be a non-empty word")
            if "\n" in value or value != value.strip():
                raise ValueError(f"note value {value!r} must be a single trimmed line")

    @classmethod
    def make(cls, kind: str, parts: Iterable[Sequence[int]], length: int | None = None, **note) -> "Certificate":
        return cls(
            kind,
            tuple(tuple(int(v) for v in p) for p in parts),
            length,
            tuple((k, str(v)) for k, v in note.items()),
        )

    @property
    def notes(self) -> dict[str, str]:
        return dict(self.note)

    def to_text(self) -> str:
        lines = [HEADER, f"kind {self.kind}"]
        if self.length is not None:
            lines.append(f"length {self.length}")
        lines.extend(f"note {k} {v}".rstrip() for k, v in self.note)
        word = "path" if self.kind == PATH_COVER else "cycle"
        lines.extend(f"{word} " + " ".join(map(str, p)) for p in self.parts)
        lines.append("end")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Certificate":
        kind = None
        length = None
        note: list[tuple[str, str]] = []
        parts: list[tuple[int, ...]] = []
        ended = False
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if ended:
                raise GraphFormatError("content after 'end'", lineno)
            word, _, rest = line.partition(" ")
            rest = rest.strip()
            if word == "kind":
                kind = rest
            elif word == "length":
                try:
                    length = int(rest)
                except ValueError:
                    raise GraphFormatError(f"bad length {rest!r}", lineno) from None
            elif word == "note":
                key, _, value = rest.partition(" ")
                note.append((key, value.strip()))
            elif word in ("cycle", "path"):
                try:
                    parts.append(tuple(int(t) for t in rest.split()))
                except ValueError:
                    raise GraphFormatError(f"bad vertex list {rest!r}", lineno) from None
            elif word == "end":
                ended = True
            else:
                raise GraphFormatError(f"unknown directive {word!r}", lineno)
        if kind is None:
            raise GraphFormatError("missing 'kind' line")
        if not ended:
            raise GraphFormatError("missing 'end' line")
        try:
            return cls(kind, tuple(parts), length, tuple(note))
        except ValueError as exc:
            raise GraphFormatError(str(exc)) from None


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _check_sequence(G: EdgeColouredGraph, seq: Sequence[int], closed: bool, label: str) -> str:
    for v in seq:
        if not 0 <= v < G.n:
            return f"{label}: vertex {v} out of range"
    if len(set(seq)) != len(seq):
        return f"{label}: repeated vertex"
    if closed and len(seq) < 3:
        return f"{label}: a cycle needs at least 3 vertices"
    if not seq:
        return f"{label}: empty"
    pairs = list(zip(seq, seq[1:]))
    if closed:
        pairs.append((seq[-1], seq[0]))
    colours = []
    for a, b in pairs:
        c = G.colour(a, b)
        if c == NO_EDGE:
            return f"{label}: {a}-{b} is not an edge"
        colours.append(c)
    for i in range(1, len(colours)):
        if colours[i] == colours[i - 1]:
            return f"{label}: edges at vertex {pairs[i][0]} share colour {colours[i]}"
    if closed and colours[0] == colours[-1]:
        return f"{label}: edges at vertex {seq[0]} share colour {colours[0]}"
    return ""


def validate_certificate(G: EdgeColouredGraph, cert: Certificate) -> Verdict:
    """Check a witness against ``G``; the verdict names the first violation."""
    closed = cert.kind != PATH_COVER
    for i, part in enumerate(cert.parts):
        reason = _check_sequence(G, part, closed, f"{'cycle' if closed else 'path'} {i}")
        if reason:
            return Verdict(False, reason)
    if cert.kind in (TWO_FACTOR, PATH_COVER):
        seen: set[int] = set()
        for part in cert.parts:
            overlap = seen.intersection(part)
            if overlap:
                return Verdict(False, f"parts share vertex {min(overlap)}")
            seen.update(part)
        missing = set(range(G.n)) - seen
        if missing:
            return Verdict(False, f"vertex {min(missing)} not covered")
        return Verdict(True)
    if len(cert.parts) != 1:
        return Verdict(False, f"expected exactly one cycle, got {len(cert.parts)}")
    size = len(cert.parts[0])
    if cert.kind == TRIANGLE and size != 3:
        return Verdict(False, f"triangle has {size} vertices")
    if cert.kind == CYCLE and cert.length is not None and size != cert.length:
        return Verdict(False, f"cycle has {size} vertices, certificate claims {cert.length}")
    if cert.kind == CYCLE and cert.length is None:
        return Verdict(False, "cycle certificate without length")
    return Verdict(True)


# -- oracles ---------------------------------------------------------------


def oracle_pc_cycle(
    G: EdgeColouredGraph, length: int, budget: int = DEFAULT_BUDGET, use_numba: bool | None = None
) -> tuple[int, ...] | None:
    """A PC cycle on exactly ``length`` vertices, or None if none exists."""
    if not 3 <= length <= G.n:
        raise ValueError(f"length must lie in 3..{G.n}, got {length}")
    k = _kernels.backend(use_numba)
    status, path, _ = k.pc_cycle_search(G.matrix, length, G.n, budget)
    if status == _kernels.OVER_BUDGET:
        raise BudgetExceeded("oracle_pc_cycle", budget)
    if status == _kernels.FOUND:
        return tuple(int(v) for v in path[:length])
    return None


def pc_cycle_through(
    G: EdgeColouredGraph,
    x: int,
    length: int,
    allowed: Iterable[int] | None = None,
    budget: int = DEFAULT_BUDGET,
    use_numba: bool | None = None,
) -> tuple[int, ...] | None:
    """A PC cycle of the given length through ``x`` using only ``allowed`` vertices."""
    others = sorted(set(range(G.n) if allowed is None else allowed) - {x})
    order = [x] + others
    if length > len(order) or length < 3:
        return None
    sub = np.ascontiguousarray(G.matrix[np.ix_(order, order)])
    k = _kernels.backend(use_numba)
    status, path, _ = k.pc_cycle_search(sub, length, 1, budget)
    if status == _kernels.OVER_BUDGET:
        raise BudgetExceeded("pc_cycle_through", budget)
    if status == _kernels.FOUND:
        return tuple(order[int(v)] for v in path[:length])
    return None


def _two_factor_on(G: EdgeColouredGraph, mask: np.ndarray, budget: int, use_numba: bool | None):
    k = _kernels.backend(use_numba)
    status, seq, starts, used = k.two_factor_search(G.matrix, mask, budget)
    if status == _kernels.OVER_BUDGET:
        raise BudgetExceeded("two-factor search", budget)
    if status != _kernels.FOUND:
        return None, used
    cycles: list[tuple[int, ...]] = []
    for v, first in zip(seq.tolist(), starts.tolist()):
        if v < 0:
            break
        if first:
            cycles.append((v,))
        else:
            cycles[-1] = cycles[-1] + (v,)
    return cycles, used


def oracle_pc_two_factor(
    G: EdgeColouredGraph, budget: int = DEFAULT_BUDGET, use_numba: bool | None = None
) -> list[tuple[int, ...]] | None:
    """A spanning family of vertex-disjoint PC cycles, or None."""
    cycles, _ = _two_factor_on(G, np.ones(G.n, np.bool_), budget, use_numba)
    return cycles


def pc_two_factor_of(
    G: EdgeColouredGraph,
    vertices: Iterable[int],
    budget: int = DEFAULT_BUDGET,
    use_numba: bool | None = None,
) -> list[tuple[int, ...]] | None:
    """PC 2-factor of the subgraph induced by ``vertices`` (original labels)."""
    mask = np.zeros(G.n, np.bool_)
    mask[list(vertices)] = True
    cycles, _ = _two_factor_on(G, mask, budget, use_numba)
    return cycles


def _could_be_covered(G: EdgeColouredGraph, subset: tuple[int, ...]) -> bool:
    inside = set(subset)
    col = G.colour_rows()
    for v in subset:
        seen = {col[v][w] for w in G.neighbours(v) if w in inside}
        if len(seen) < 2:
            return False
    return True


def oracle_max_pc_cycle_cover(
    G: EdgeColouredGraph, budget: int = DEFAULT_BUDGET, use_numba: bool | None = None
) -> int:
    """Most vertices coverable by vertex-disjoint PC cycles (0 if no PC cycle).

    Tries vertex subsets from largest to smallest and asks the 2-factor
    search for a PC 2-factor of each induced subgraph.
    """
    remaining = budget
    for size in range(G.n, 2, -1):
        for subset in combinations(range(G.n), size):
            if not _could_be_covered(G, subset):
                continue
            mask = np.zeros(G.n, np.bool_)
            mask[list(subset)] = True
            try:
                cycles, used = _two_factor_on(G, mask, remaining, use_numba)
            except BudgetExceeded:
                raise BudgetExceeded("oracle_max_pc_cycle_cover", budget) from None
            remaining -= used
            if cycles is not None:
                return size
    return 0


def oracle_longest_pc_path_witness(
    G: EdgeColouredGraph, budget: int = DEFAULT_BUDGET, use_numba: bool | None = None
) -> tuple[int, ...]:
    k = _kernels.backend(use_numba)
    status, best, count, _ = k.longest_pc_path(G.matrix, budget)
    if status == _kernels.OVER_BUDGET:
        raise BudgetExceeded("oracle_longest_pc_path", budget)
    return tuple(int(v) for v in best[:count])


def oracle_longest_pc_path(
    G: EdgeColouredGraph, budget: int = DEFAULT_BUDGET, use_numba: bool | None = None
) -> int:
    """Length (edge count) of a longest PC path."""
    return max(len(oracle_longest_pc_path_witness(G, budget, use_numba)) - 1, 0)
