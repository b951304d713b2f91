import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dilation_codes.channel import (
    BLOCK_SIZE,
    DEFAULT_TOLERANCE,
    AlphaDistribution,
    ObservedSignal,
    bits,
    decode,
    encode,
    run_monte_carlo,
    sample_alpha,
    sample_alphas,
    transmit,
)
from dilation_codes.codebook import CodeSpec, count, enumerate_code
from dilation_codes.errors import InvalidInput, Undecodable
from dilation_codes.sequences import d_seq


def test_sample_alpha_ranges():
    u = AlphaDistribution("uniform-open", 2)
    p = AlphaDistribution("pareto-unbounded", shape=1.0)
    for s in range(200):
        assert 1 <= sample_alpha(u, s) < 2
        assert sample_alpha(p, s) >= 1
    assert sample_alpha(u, 7) == sample_alpha(u, 7)


def test_uniform_mean():
    x = sample_alphas(AlphaDistribution("uniform-open", 3), np.random.default_rng(1), 100_000)
    assert x.mean() == pytest.approx(2.0, abs=0.01)
    assert x.max() < 3


@pytest.mark.parametrize("shape", [0.5, 1.0, 2.5])
def test_power_law_cdf(shape):
    beta = 4.0
    x = sample_alphas(AlphaDistribution("truncated-power-law", 4, shape), np.random.default_rng(2), 200_000)
    assert x.min() >= 1 and x.max() < beta
    # compare the empirical CDF at a few points with the analytic one
    for q in (1.5, 2.0, 3.0):
        if shape == 1.0:
            F = math.log(q) / math.log(beta)
        else:
            e = 1 - shape
            F = (q**e - 1) / (beta**e - 1)
        assert (x <= q).mean() == pytest.approx(F, abs=0.005)


def test_uniform_never_hits_endpoint():
    class Ones:
        def random(self, size):
            return np.full(size, np.nextafter(1.0, 0.0))

    x = sample_alphas(AlphaDistribution("uniform-open", Fraction(10**9 + 1, 10**9)), Ones(), 3)
    assert (x < float(Fraction(10**9 + 1, 10**9))).all()


def test_distribution_validation():
    with pytest.raises(InvalidInput):
        AlphaDistribution("uniform-open")
    with pytest.raises(InvalidInput):
        AlphaDistribution("uniform-open", 1)
    with pytest.raises(InvalidInput):
        AlphaDistribution("pareto-unbounded", 2)
    with pytest.raises(InvalidInput):
        AlphaDistribution("gaussian", 2)


def test_transmit_examples():
    assert transmit((1, 2), 2.1).values == (2.1, 4.2)
    assert transmit((5, 7, 9), 1.0).values == (5.0, 7.0, 9.0)
    assert transmit((3, 1, 2), 1.5).values == (4.5, 1.5, 3.0)
    with pytest.raises(InvalidInput):
        transmit((1, 2), 0.5)
    with pytest.raises(InvalidInput):
        ObservedSignal((1.0, -2.0))


def test_encode_examples():
    spec = CodeSpec(4, 2, "C")
    assert encode(0, spec) == (1, 1)
    assert encode(count(spec) - 1, spec) == list(enumerate_code(spec))[-1]
    with pytest.raises(InvalidInput):
        encode(count(spec), spec)
    with pytest.raises(InvalidInput):
        encode(0, CodeSpec(4, 2, "T"))


def test_decode_examples():
    assert decode((2.1, 4.2), CodeSpec(16, 2, "C")) == ((1, 2), pytest.approx(2.1))
    word, a = decode((3.0, 3.0), CodeSpec(12, 2, "D", 2))
    assert word == (2, 2) and a == pytest.approx(1.5)
    for t in enumerate_code(CodeSpec(20, 2, "C")):
        assert decode(transmit(t, 1.0), CodeSpec(20, 2, "C")) == (t, 1.0)


def test_decode_rejections():
    spec = CodeSpec(12, 2, "D", 2)
    with pytest.raises(Undecodable):
        decode((3.0, 3.1), spec)  # ratio 31/30 needs denominator 30 > N
    with pytest.raises(Undecodable):
        decode((0.5, 0.5), spec)  # scale below 1
    with pytest.raises(Undecodable):
        decode((5.0, 8.0), CodeSpec(12, 2, "C"))  # direction (5, 8) has sum 13 > N
    with pytest.raises(Undecodable):
        decode((1.0, 2.0, 3.0), spec)
    # non-integer bucket gaps: beta = 3/2 buckets [1,3/2) [2,3) [3,9/2) [5,15/2)...
    with pytest.raises(Undecodable):
        decode((1.7, 1.7), CodeSpec(12, 2, "D", "3/2"))


def test_decode_d_bucket_boundaries():
    spec = CodeSpec(400, 2, "D", 2)
    for alpha in (1.0, 1.0 + 1e-12, 1.5, 2 - 1e-9, 2 * (1 - 1e-12)):
        for t in [(1, 2), (2, 4), (32, 64), (128, 3 * 128 - 128), (3, 5)]:
            if t[0] + t[1] > 400:
                continue
            got, est = decode(transmit(t, alpha), spec)
            assert got == t
            assert abs(est - alpha) / alpha <= DEFAULT_TOLERANCE


@pytest.mark.parametrize("beta", ["3/2", 2, 3, "7/3"])
def test_zero_error_roundtrip_dense(beta):
    spec = CodeSpec(40, 2, "D", beta)
    b = float(Fraction(beta))
    alphas = list(np.linspace(1.0, b, 41)[:-1]) + [b - 1e-9, b * (1 - 1e-12), 1.0 + 1e-9]
    for t in enumerate_code(spec):
        for a in alphas:
            got, est = decode(transmit(t, a), spec)
            assert got == t
            assert abs(est - a) / a <= DEFAULT_TOLERANCE


def test_zero_error_roundtrip_k3():
    spec = CodeSpec(25, 3, "D", "5/3")
    for t in enumerate_code(spec):
        for a in (1.0, 1.3, 5 / 3 - 1e-9):
            assert decode(transmit(t, a), spec)[0] == t


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.floats(1.0, 1e6))
def test_roundtrip_primitive_code(m, alpha):
    spec = CodeSpec(2000, 2, "C")
    t = encode(m % count(spec), spec)
    got, est = decode(transmit(t, alpha), spec)
    assert got == t
    assert est == pytest.approx(alpha, rel=DEFAULT_TOLERANCE)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.floats(1.0, 2.0, exclude_max=True), st.floats(0.6, 1.6))
def test_scale_consistency(m, alpha, c):
    spec = CodeSpec(300, 2, "D", 2)
    t = encode(m % count(spec), spec)
    g = math.gcd(*t)
    r = transmit(t, alpha)
    scaled = ObservedSignal(tuple(c * x for x in r.values))
    s = c * alpha * g
    if s < 1:
        return
    d = max(x for x in d_seq(2, 30) if x <= s)
    if d == g and d * (1 + 1e-9) < s < 2 * d * (1 - 1e-9):
        assert decode(scaled, spec)[0] == t


def test_bits():
    assert bits(CodeSpec(16, 2, "C")) == pytest.approx(math.log2(79))


def test_monte_carlo_small_zero_failures():
    rep = run_monte_carlo(CodeSpec(60, 3, "D", "3/2"), AlphaDistribution("uniform-open", "3/2"), 3000, seed=5)
    assert rep.failures == 0 and rep.successes == 3000
    assert rep.max_alpha_rel_error <= DEFAULT_TOLERANCE
    d = rep.to_dict()
    assert {"spec", "distribution", "trials", "failures", "bits", "seed"} <= set(d)


def test_monte_carlo_deterministic_and_schedule_independent():
    spec = CodeSpec(100, 2, "C")
    dist = AlphaDistribution("pareto-unbounded", shape=0.7)
    trials = BLOCK_SIZE + 100
    a = run_monte_carlo(spec, dist, trials, seed=3)
    b = run_monte_carlo(spec, dist, trials, seed=3)
    c = run_monte_carlo(spec, dist, trials, seed=3, workers=2)
    assert a == b == c


@pytest.mark.parametrize(
    "dist",
    [AlphaDistribution("uniform-open", 2), AlphaDistribution("truncated-power-law", 2, 3.0),
     AlphaDistribution("truncated-power-law", 2, 1.0), AlphaDistribution("uniform-open", "3/2")],
)
def test_monte_carlo_distribution_independent(dist):
    rep = run_monte_carlo(CodeSpec(200, 2, "D", 2), dist, 2000, seed=11)
    assert rep.failures == 0


def test_monte_carlo_precondition():
    with pytest.raises(InvalidInput):
        run_monte_carlo(CodeSpec(50, 2, "D", 2), AlphaDistribution("uniform-open", 3), 10)
    with pytest.raises(InvalidInput):
        run_monte_carlo(CodeSpec(50, 2, "D", 2), AlphaDistribution("pareto-unbounded"), 10)
    with pytest.raises(InvalidInput):
        run_monte_carlo(CodeSpec(50, 2, "T"), AlphaDistribution("uniform-open", 2), 10)


def test_code_t_fails_under_dilation():
    # the full space is not zero-error: (1,1) and (2,2) collide at alpha in (1, 2)
    spec = CodeSpec(10, 2, "D", 3)
    assert decode(transmit((2, 2), 1.0), spec)[0] == (1, 1)


def test_decode_scale_just_below_one():
    for spec in (CodeSpec(12, 2, "D", 2), CodeSpec(12, 2, "C")):
        word, est = decode((1 - 1e-12, 2 * (1 - 1e-12)), spec)
        assert word == (1, 2) and est == pytest.approx(1.0)
