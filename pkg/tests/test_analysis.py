import math

import pytest

from dilation_codes.analysis import (
    compare_models,
    convergence_sweep,
    emit_figure_data,
    empirical_density,
    figure_csv,
    records_csv,
)
from dilation_codes.codebook import CodeSpec, count
from dilation_codes.numtheory import zeta


def test_empirical_density_c_and_d():
    rec = empirical_density(CodeSpec(10_000, 2, "C"))
    assert rec.gap < 5e-3
    assert rec.theoretical == pytest.approx(6 / math.pi**2, abs=1e-13)
    assert rec.ratio == rec.count / rec.binomial
    rec = empirical_density(CodeSpec(10_000, 2, "D", 2))
    assert abs(rec.ratio - 8 / math.pi**2) < 5e-3


@pytest.mark.parametrize("N, k", [(5, 2), (40, 3), (300, 2), (25, 4)])
def test_beta_one_ratio_is_exactly_one(N, k):
    rec = empirical_density(CodeSpec(N, k, "D", 1))
    assert rec.ratio == 1.0 and rec.count == rec.binomial
    assert rec.theoretical == 1.0


def test_ratio_non_increasing_in_beta():
    grid = ["1", "6/5", "3/2", "2", "5/2", "3", "7", "inf"]
    for N, k in [(200, 2), (60, 3)]:
        ratios = [empirical_density(CodeSpec(N, k, "D", b)).ratio for b in grid]
        assert ratios == sorted(ratios, reverse=True)


def test_sweep_examples():
    recs = convergence_sweep(2, "inf", [100, 1000, 10000])
    gaps = [r.gap for r in recs]
    assert gaps == sorted(gaps, reverse=True)
    assert [r.N for r in recs] == [100, 1000, 10000]
    (rec,) = convergence_sweep(3, "inf", [1000])
    assert rec.ratio == pytest.approx(1 / zeta(3), abs=1e-3)
    assert 1 / zeta(3) == pytest.approx(0.8319, abs=1e-4)
    assert all(r.ratio == 1.0 for r in convergence_sweep(2, 1, [10, 100, 1000]))


def test_sweep_parallel_matches_serial():
    Ns = [50, 500, 5000]
    assert convergence_sweep(2, "3/2", Ns, workers=2) == convergence_sweep(2, "3/2", Ns)


def test_compare_models():
    t = compare_models(2, 2, 12)
    assert t["drift_density"] < t["dilation_density"]
    assert [r["d_n"] for r in t["rows"][:4]] == [1, 2, 4, 8]
    assert [r["b_n"] for r in t["rows"][:4]] == [1, 3, 7, 15]
    assert all(r["b_n"] >= r["d_n"] for r in t["rows"])
    assert t["rows"][-1]["partial_dilation"] == pytest.approx(t["dilation_density"], abs=1e-6)
    one = compare_models(3, 1, 5)
    assert one["dilation_density"] == one["drift_density"] == 1.0
    assert one["identical"]


def test_compare_models_identical_columns():
    # beta = 10/7: products beta * d_{n-1} stay non-integer while d_n < 7
    t = compare_models(2, "10/7", 4)
    assert [r["d_n"] for r in t["rows"]] == [1, 2, 3, 5]
    assert t["identical"]
    assert t["rows"][-1]["partial_dilation"] == t["rows"][-1]["partial_drift"]


def test_figure_data():
    rows = emit_figure_data(16, 2)
    assert len(rows) == math.comb(16, 2)
    flags = {r[:2]: r[2] for r in rows}
    assert flags[(2, 4)] is False
    assert flags[(1, 1)] is True
    assert sum(flags.values()) == count(CodeSpec(16, 2, "C"))
    assert all(f == (math.gcd(*t) == 1) for t, f in flags.items())
    text = figure_csv()
    assert text.splitlines()[0] == "t1,t2,is_codeword"
    assert "2,4,0" in text.splitlines()


def test_records_csv():
    recs = convergence_sweep(2, 2, [100, 200])
    lines = records_csv(recs).splitlines()
    assert lines[0] == "N,k,beta,family,count,binomial,ratio,theoretical,gap"
    assert len(lines) == 3
