import csv
import dataclasses
import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcc import experiments
from pcc.certify import oracle_longest_pc_path, oracle_pc_cycle
from pcc.experiments import (
    CONJECTURE_HEADER,
    THRESHOLD_HEADER,
    conjecture_row,
    is_connected,
    sample_colour_degree,
    scan_conjecture,
    scan_threshold,
)
from pcc.generators import (
    GenSpec,
    derive_seed,
    gen_extremal,
    gen_random,
    random_complete,
    random_gnp,
    splitmix64,
)
from pcc.graph import EdgeColouredGraph, colour_degree, delta1, max_mono_degree, min_colour_degree

from conftest import rainbow_complete


def test_splitmix_reference_values():
    # first outputs of the reference generator seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert derive_seed(1, 2) != derive_seed(2, 1)


def test_extremal_structure():
    G = gen_extremal(9, 5)
    assert min_colour_degree(G) == 5
    assert all(colour_degree(G, y) == 5 for y in range(5, 9))
    assert not any(G.has_edge(a, b) for a in range(5, 9) for b in range(5, 9))
    rainbow = {G.colour(a, b) for a in range(5) for b in range(a + 1, 5)}
    assert rainbow == set(range(10))
    assert {G.colour(i, 7) for i in range(5)} == set(range(10, 15))


def test_extremal_small_case():
    G = gen_extremal(4, 2)
    assert min_colour_degree(G) == 2 and oracle_longest_pc_path(G) <= 3


@pytest.mark.parametrize("n, delta", [(6, 4), (9, 6), (5, 0), (3, 2)])
def test_extremal_parameter_errors(n, delta):
    with pytest.raises(ValueError):
        gen_extremal(n, delta)


def test_random_complete_proper_when_cap_one():
    G = random_complete(8, 7, 1, seed=0)
    assert max_mono_degree(G) == 1 and delta1(G) == 8 - 2


def test_random_complete_determinism():
    assert random_complete(20, 8, 4, seed=3) == random_complete(20, 8, 4, seed=3)
    assert random_complete(20, 8, 4, seed=3) != random_complete(20, 8, 4, seed=4)


@settings(max_examples=30)
@given(st.integers(4, 30), st.integers(2, 10), st.integers(0, 2**32))
def test_random_complete_delta1_bound(n, cap, seed):
    colours = 2 * math.ceil((n - 1) / cap) + 2
    G = random_complete(n, colours, cap, seed=seed)
    assert G.m == n * (n - 1) // 2
    assert delta1(G) >= n - 1 - cap


def test_infeasible_cap_is_an_input_error():
    with pytest.raises(ValueError):
        random_complete(10, 2, 3)


def test_gnp_respects_cap_and_seed():
    G = random_gnp(15, 0.8, 3, cap=2, seed=1)
    assert max_mono_degree(G) <= 2
    assert G == random_gnp(15, 0.8, 3, cap=2, seed=1)
    with pytest.raises(ValueError):
        random_gnp(5, 1.5, 3)


def test_gen_random_dispatch():
    assert gen_random(GenSpec("extremal", 9, delta=5)) == gen_extremal(9, 5)
    assert gen_random(GenSpec("complete", 10, colours=10, cap=3, seed=2)) == random_complete(10, 10, 3, 2)
    assert gen_random(GenSpec("gnp", 10, colours=4, p=0.5, seed=2)) == random_gnp(10, 0.5, 4, seed=2)
    with pytest.raises(ValueError):
        gen_random(GenSpec("bogus", 5))
    with pytest.raises(ValueError):
        gen_random(GenSpec("complete", 5))


# -- experiments ------------------------------------------------------------------------


def test_sample_exact_colour_degree():
    G = sample_colour_degree(8, 5, seed=1)
    assert G is not None and min_colour_degree(G) == 5


def test_threshold_scan_small():
    report = scan_threshold([(6, 3), (6, 4), (7, 4), (7, 5)], samples=8, seed=3)
    text = report.to_csv()
    assert text.startswith(THRESHOLD_HEADER)
    rows = list(csv.DictReader(io.StringIO(text.split("\n", 1)[1])))
    assert len(rows) == 4
    by_cell = {(int(r["n"]), int(r["delta"])): r for r in rows}
    for (n, d), r in by_cell.items():
        if 3 * d >= 2 * n:
            assert int(r["oracle_none"]) == 0 and int(r["oracle_exists"]) == int(r["instances"])
        else:
            assert int(r["extremal_included"]) == 1 and int(r["oracle_none"]) >= 1
        assert int(r["constructive_invalid"]) == 0


def test_threshold_scan_is_worker_independent():
    cells = [(6, 4), (7, 5)]
    assert scan_threshold(cells, 4, seed=9).to_csv() == scan_threshold(cells, 4, seed=9, workers=2).to_csv()


def test_conjecture_rows():
    row = conjecture_row(rainbow_complete(6), "rainbow")
    assert row.hamiltonian == 1 and row.violation == 0
    for n, d in [(5, 2), (7, 4), (8, 5)]:
        row = conjecture_row(gen_extremal(n, d), "extremal")
        assert row.longest_path == 3 * d // 2 and row.violation == 0
        assert oracle_pc_cycle(gen_extremal(n, d), n) is None


def test_connectivity():
    assert is_connected(rainbow_complete(4))
    assert not is_connected(EdgeColouredGraph(3, [(0, 1, 0)]))


def test_conjecture_scan_and_dump(tmp_path, monkeypatch):
    report = scan_conjecture([4, 5, 6], samples=5, seed=1, dump_dir=tmp_path)
    assert report.to_csv().startswith(CONJECTURE_HEADER)
    assert report.violations == []
    assert list(tmp_path.iterdir()) == []
    with pytest.raises(ValueError):
        scan_conjecture([2])

    real = experiments.conjecture_row

    def flag_rainbow(G, source):
        row = real(G, source)
        return dataclasses.replace(row, violation=1) if source.startswith("rainbow") else row

    monkeypatch.setattr(experiments, "conjecture_row", flag_rainbow)
    report = scan_conjecture([5], samples=2, seed=1, dump_dir=tmp_path)
    assert [r.source for r in report.violations] == ["rainbow-5"]
    dumped = EdgeColouredGraph.from_ecg((tmp_path / "rainbow-5.ecg").read_text())
    assert dumped.m == 10 and min_colour_degree(dumped) == 4
