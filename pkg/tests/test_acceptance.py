"""Exit criteria, one test per criterion, each reporting a PASS/FAIL line."""

import math
import random
import time
from fractions import Fraction

import mpmath
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import primitive_counts_upto

from dilation_codes.analysis import emit_figure_data, empirical_density
from dilation_codes.channel import AlphaDistribution, run_monte_carlo
from dilation_codes.codebook import CodeSpec, count
from dilation_codes.confusability import build_graph, max_independent_set, shannon_certificate
from dilation_codes.numtheory import delta_inf_even, zeta
from dilation_codes.sequences import UNBOUNDED, b_seq, d_seq, density_theoretical


@pytest.fixture
def cold_caches():
    """Drop memoized counts so timings start from scratch."""
    from dilation_codes import codebook, numtheory, sequences

    for fn in (codebook.count_primitive, codebook._first_slot_cumulative, numtheory.mobius_sieve,
               sequences.scale_sequence):
        fn.cache_clear()


def report(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_1_density_unbounded_k2(cold_caches):
    t0 = time.perf_counter()
    rec = empirical_density(CodeSpec(10_000, 2, "C"))
    elapsed = time.perf_counter() - t0
    target = 6 / math.pi**2
    gap4 = abs(rec.ratio - target)
    gap5 = abs(empirical_density(CodeSpec(100_000, 2, "C")).ratio - target)
    ok = gap4 < 5e-3 and elapsed < 5 and gap5 < 1e-3
    report(1, "C_{N,2} density vs 6/pi^2", ok,
           f"gap(1e4)={gap4:.3e} (<5e-3) in {elapsed:.2f}s (<5s), gap(1e5)={gap5:.3e} (<1e-3)")


def test_2_density_beta2_k2(cold_caches):
    t0 = time.perf_counter()
    rec = empirical_density(CodeSpec(10_000, 2, "D", 2))
    elapsed = time.perf_counter() - t0
    gap = abs(rec.ratio - 8 / math.pi**2)
    report(2, "D_{N,2} beta=2 density vs 8/pi^2", gap < 5e-3 and elapsed < 10,
           f"gap={gap:.3e} (<5e-3) in {elapsed:.2f}s (<10s)")


def test_3_series_vs_closed_form():
    mpmath.mp.dps = 30
    worst = 0.0
    for k in range(2, 7):
        zk = mpmath.zeta(k)
        for beta in range(2, 11):
            closed = float(mpmath.mpf(beta) ** k / (zk * (mpmath.mpf(beta) ** k - 1)))
            worst = max(worst, abs(density_theoretical(beta, k) - closed))
        worst = max(worst, abs(density_theoretical(UNBOUNDED, k) - float(1 / zk)))
    report(3, "Density series vs integer-beta closed form and 1/zeta(k)", worst < 1e-10,
           f"max abs error {worst:.3e} (<1e-10) over beta in [2,10], k in [2,6], beta=inf")


def test_4_bernoulli_cross_check():
    worst = max(abs(delta_inf_even(m) - 1 / zeta(2 * m)) for m in range(1, 7))
    report(4, "Bernoulli closed form vs 1/zeta(2m)", worst < 1e-10, f"max abs error {worst:.3e} (<1e-10), m in [1,6]")


def test_5_optimality_oracle(cold_caches):
    t0 = time.perf_counter()
    bad = []
    cases = 0
    for beta in (Fraction(3, 2), 2, 3):
        for k in (2, 3):
            for N in range(k, 13):
                cases += 1
                alpha = max_independent_set(build_graph(N, k, beta))
                size = count(CodeSpec(N, k, "D", beta))
                cert = shannon_certificate(N, k, beta)
                if alpha != size or not cert["pass"]:
                    bad.append((N, k, str(beta), alpha, size, cert["pass"]))
    elapsed = time.perf_counter() - t0
    report(5, "independence number = |D_{N,k}| and certificate", not bad and elapsed < 60,
           f"{cases} instances, {len(bad)} mismatches, {elapsed:.2f}s (<60s)")


def test_6_zero_error_monte_carlo(cold_caches):
    t0 = time.perf_counter()
    c = run_monte_carlo(CodeSpec(500, 2, "C"), AlphaDistribution("pareto-unbounded", shape=1.0), 100_000, seed=2020)
    d = run_monte_carlo(CodeSpec(500, 2, "D", 2), AlphaDistribution("uniform-open", 2), 100_000, seed=2020)
    elapsed = time.perf_counter() - t0
    worst = max(c.max_alpha_rel_error, d.max_alpha_rel_error)
    ok = c.failures == 0 and d.failures == 0 and worst <= 1e-9 and elapsed < 30
    report(6, "zero-error Monte Carlo", ok,
           f"failures C={c.failures} D={d.failures} of 1e5 each, max alpha rel err {worst:.2e} (<=1e-9), {elapsed:.2f}s (<30s)")


def test_7_sequence_identities():
    powers = d_seq(2, 20) == tuple(2 ** (n - 1) for n in range(1, 21))
    mersenne = b_seq(2, 20) == tuple(2**n - 1 for n in range(1, 21))
    rng = random.Random(7)
    betas = set()
    while len(betas) < 200:
        q = rng.randint(1, 50)
        b = Fraction(rng.randint(q + 1, 10 * q - 1), q)
        betas.add(b)
    dominated = all(all(b >= d for b, d in zip(b_seq(x, 30), d_seq(x, 30))) for x in betas)
    strict = all(all(b > d for b, d in zip(b_seq(x, 30)[1:], d_seq(x, 30)[1:])) for x in range(2, 51))
    report(7, "d_n and b_n identities", powers and mersenne and dominated and strict,
           f"powers={powers} mersenne={mersenne} b>=d on 200 rationals={dominated} strict for integer beta 2..50={strict}")


def test_8_counting_oracle():
    t0 = time.perf_counter()
    mismatches = 0
    for k in (2, 3, 4):
        brute = primitive_counts_upto(300, k)
        mismatches += sum(int(brute[N]) != count(CodeSpec(N, k, "C")) for N in range(1, 301))
    report(8, "Moebius count = exhaustive enumeration, N<=300, k in {2,3,4}", mismatches == 0,
           f"{mismatches} mismatches in 900 cases, {time.perf_counter() - t0:.1f}s")


def test_9_figure_reproduction():
    rows = emit_figure_data(16, 2)
    flags_ok = all(r[2] == (math.gcd(r[0], r[1]) == 1) for r in rows)
    flagged = sum(r[2] for r in rows)
    expected = count(CodeSpec(16, 2, "C"))
    complete = len(rows) == math.comb(16, 2)
    report(9, "figure data for C_{16,2}", flags_ok and flagged == expected and complete,
           f"{len(rows)} rows, {flagged} flagged, Moebius count {expected}")
