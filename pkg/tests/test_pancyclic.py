import csv
import io
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcc.certify import Certificate, oracle_pc_cycle, validate_certificate
from pcc.errors import SearchFailure
from pcc.generators import gen_extremal, random_complete, random_gnp
from pcc.graph import is_pc_cycle
from pcc.pancyclic import (
    DriverConfig,
    find_pc_cycle_long,
    find_pc_cycle_short,
    find_pc_triangle,
    pancyclic_all,
    prepare_long,
)

from conftest import mono_complete, rainbow_complete


def test_config_parses_epsilon_exactly():
    cfg = DriverConfig(epsilon="0.05")
    assert cfg.epsilon == Fraction(1, 20)
    assert cfg.short_limit(60) == 2
    assert cfg.gamma() == Fraction(64, 180)
    assert cfg.target_family_size(60) == 3
    assert cfg.min_cover_k(42) == 1
    assert DriverConfig(epsilon=0.5).short_limit(60) == 20


def test_config_validation():
    with pytest.raises(ValueError):
        DriverConfig(epsilon=0)
    with pytest.raises(ValueError):
        DriverConfig(epsilon=2)
    with pytest.raises(ValueError):
        DriverConfig(fidelity=True)
    assert DriverConfig(epsilon=Fraction(1, 1536), fidelity=True).fidelity
    with pytest.raises(ValueError):
        DriverConfig(workers=0)


# -- triangles ------------------------------------------------------------------------------


def test_triangle_rainbow_k4():
    G = rainbow_complete(4)
    for x in range(4):
        tri = find_pc_triangle(G, x)
        assert tri[0] == x and is_pc_cycle(G, tri)


def test_triangle_monochromatic_fails_with_degrees():
    with pytest.raises(SearchFailure) as err:
        find_pc_triangle(mono_complete(5), 0)
    assert err.value.stage == "triangle"
    assert err.value.info["max_out"] == 0 and err.value.info["max_in"] == 0


def test_triangle_vertex_range():
    with pytest.raises(ValueError):
        find_pc_triangle(rainbow_complete(4), 4)


# -- short cycles -----------------------------------------------------------------------------


def test_short_four_cycle_rainbow_k8():
    G = rainbow_complete(8)
    cyc = find_pc_cycle_short(G, 4)
    assert len(cyc) == 4 and is_pc_cycle(G, cyc)


def test_short_five_cycle_fails_when_none_exists():
    G = gen_extremal(6, 3)
    assert oracle_pc_cycle(G, 5) is None
    with pytest.raises(SearchFailure) as err:
        find_pc_cycle_short(G, 5)
    assert err.value.stage == "short"


def test_short_length_range():
    with pytest.raises(ValueError):
        find_pc_cycle_short(rainbow_complete(8), 3)
    with pytest.raises(ValueError):
        find_pc_cycle_short(rainbow_complete(8), 9)


@settings(max_examples=30)
@given(st.integers(10, 30), st.integers(0, 2**32), st.data())
def test_short_output_has_exact_length(n, seed, data):
    G = random_complete(n, n, max(1, n // 4), seed=seed)
    L = data.draw(st.integers(4, n))
    try:
        cyc = find_pc_cycle_short(G, L, DriverConfig(seed=seed))
    except SearchFailure:
        return
    assert len(cyc) == L and len(set(cyc)) == L and is_pc_cycle(G, cyc)


# -- long cycles -------------------------------------------------------------------------------


def test_long_hamiltonian_cycle():
    G = random_complete(60, 60, 14, seed=8)
    cyc = find_pc_cycle_long(G, 60)
    assert sorted(cyc) == list(range(60)) and is_pc_cycle(G, cyc)


def test_long_at_absorbing_length_returns_cycle():
    G = random_complete(50, 50, 11, seed=9)
    ctx = prepare_long(G)
    assert find_pc_cycle_long(G, ctx.size, ctx=ctx) == ctx.absorbing.cycle
    with pytest.raises(SearchFailure):
        find_pc_cycle_long(G, ctx.size - 1, ctx=ctx)


def test_absorbing_cycle_within_short_range():
    cfg = DriverConfig(epsilon=0.5)
    G = random_complete(60, 60, 14, seed=1)
    ctx = prepare_long(G, cfg)
    assert ctx.size <= cfg.short_limit(60)
    cover = {v for c in ctx.cover for v in c}
    assert cover | set(ctx.absorbing.cycle) == set(range(60))


# -- all lengths ---------------------------------------------------------------------------------


def test_rainbow_k10_is_pancyclic():
    G = rainbow_complete(10)
    report = pancyclic_all(G)
    assert report.success_fraction() == 1.0
    for L, cert in report.results.items():
        assert validate_certificate(G, cert) and len(cert.parts[0]) == L


def test_monochromatic_k10_has_nothing():
    report = pancyclic_all(mono_complete(10))
    assert report.successes() == []
    assert all(isinstance(r, SearchFailure) for r in report.results.values())


def test_extremal_has_no_hamiltonian_cycle():
    G = gen_extremal(9, 5)
    report = pancyclic_all(G)
    assert isinstance(report.results[9], SearchFailure)
    assert oracle_pc_cycle(G, 9) is None


@settings(max_examples=25)
@given(st.integers(5, 10), st.floats(0.4, 1.0), st.integers(2, 6), st.integers(0, 2**32))
def test_never_claims_what_the_oracle_denies(n, p, q, seed):
    G = random_gnp(n, p, q, seed=seed)
    report = pancyclic_all(G)
    for L, r in report.results.items():
        exists = oracle_pc_cycle(G, L) is not None
        if isinstance(r, Certificate):
            assert exists and validate_certificate(G, r)


def test_report_csv_and_certificate_files(tmp_path):
    G = random_complete(20, 20, 4, seed=3)
    report = pancyclic_all(G, DriverConfig(seed=4), cert_dir=tmp_path)
    lines = report.to_csv().splitlines()
    assert lines[0] == "# pcc-pancyclic v1"
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert [int(r["length"]) for r in rows] == list(range(3, 21))
    for L in report.successes():
        cert = Certificate.from_text((tmp_path / f"cycle_{L:04d}.cert").read_text())
        assert validate_certificate(G, cert)
    assert (tmp_path / "summary.csv").read_text() == report.to_csv()


def test_thread_count_does_not_change_output():
    G = random_complete(40, 40, 9, seed=12)
    one = pancyclic_all(G, DriverConfig(seed=5))
    four = pancyclic_all(G, DriverConfig(seed=5, workers=4))
    assert one.to_csv() == four.to_csv()
    for L in one.results:
        a, b = one.results[L], four.results[L]
        if isinstance(a, Certificate):
            assert a.to_text() == b.to_text()
