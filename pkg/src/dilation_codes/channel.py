"""Dilation channel simulation, encoder, and exact decoder.

The channel multiplies every interval of the transmitted tuple by one
unknown factor alpha >= 1. The decoder recovers the line of sight from the
ratios r_i / r_1 (rational reconstruction with denominators <= N), then the
scale bucket [d_n, beta d_n) that the observed scale falls into.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .codebook import CodeSpec, SignalTuple, contains, count, unrank
from .errors import InvalidInput, Undecodable
from .sequences import UNBOUNDED, DilationBound, scale_sequence

__all__ = [
    "DEFAULT_TOLERANCE",
    "AlphaDistribution",
    "ObservedSignal",
    "sample_alpha",
    "sample_alphas",
    "transmit",
    "encode",
    "decode",
    "bits",
    "MonteCarloReport",
    "run_monte_carlo",
]

DEFAULT_TOLERANCE = 1e-9
# Trials per independently seeded block; part of the reproducibility contract.
BLOCK_SIZE = 4096

Kind = Literal["uniform-open", "truncated-power-law", "pareto-unbounded"]


@dataclass(frozen=True)
class AlphaDistribution:
    """Distribution of the dilation factor, supported on [1, beta) or [1, inf).

    ``shape`` is the exponent a of the density alpha^-a for the power-law
    kinds; pareto-unbounded uses it as the Pareto index (density a x^-(a+1)).
    """

    kind: Kind
    bound: DilationBound = field(default=UNBOUNDED)
    shape: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "bound", DilationBound.parse(self.bound))
        if self.kind == "pareto-unbounded":
            if not self.bound.unbounded:
                raise InvalidInput("pareto-unbounded has support [1, inf)")
        elif self.kind in ("uniform-open", "truncated-power-law"):
            if self.bound.unbounded or self.bound.value <= 1:
                raise InvalidInput(f"{self.kind} needs a finite beta > 1")
        else:
            raise InvalidInput(f"unknown distribution kind {self.kind!r}")
        if self.shape <= 0:
            raise InvalidInput("shape must be positive")

    @property
    def supremum(self) -> float:
        return math.inf if self.bound.unbounded else float(self.bound.value)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "beta": str(self.bound), "shape": self.shape}


def sample_alphas(dist: AlphaDistribution, rng: np.random.Generator, size: int) -> np.ndarray:
    """Draw ``size`` dilation factors, all inside the support interior."""
    u = rng.random(size)  # [0, 1)
    if dist.kind == "pareto-unbounded":
        return (1.0 - u) ** (-1.0 / dist.shape)
    beta = float(dist.bound.value)
    if dist.kind == "uniform-open":
        x = 1.0 + (beta - 1.0) * u
    elif dist.shape == 1.0:
        x = beta**u
    else:
        e = 1.0 - dist.shape
        x = (1.0 - u * (1.0 - beta**e)) ** (1.0 / e)
    # rounding can reach beta itself; never return the endpoint
    return np.clip(x, 1.0, np.nextafter(beta, 1.0))


def sample_alpha(dist: AlphaDistribution, seed: int) -> float:
    """One seeded draw of alpha."""
    return float(sample_alphas(dist, np.random.default_rng(seed), 1)[0])


@dataclass(frozen=True)
class ObservedSignal:
    """Intervals measured by the receiver's clock."""

    values: tuple[float, ...]
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        vals = tuple(float(x) for x in self.values)
        if not vals or any(not (x > 0 and math.isfinite(x)) for x in vals):
            raise InvalidInput(f"observed intervals must be finite and positive, got {vals}")
        object.__setattr__(self, "values", vals)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def transmit(t: Sequence[int], alpha: float) -> ObservedSignal:
    """Apply the dilation factor to every interval."""
    if not alpha >= 1:
        raise InvalidInput(f"alpha must be >= 1, got {alpha}")
    return ObservedSignal(tuple(alpha * x for x in t))


def _require_zero_error(spec: CodeSpec) -> None:
    if spec.family == "T":
        raise InvalidInput("family T is not a zero-error code; use C or D")


def bits(spec: CodeSpec) -> float:
    """log2 of the number of codewords."""
    n = count(spec)
    return math.log2(n) if n else 0.0


def encode(message: int, spec: CodeSpec) -> SignalTuple:
    """Codeword carrying message number ``message``."""
    _require_zero_error(spec)
    try:
        return unrank(spec, message)
    except IndexError as exc:
        raise InvalidInput(str(exc)) from exc


def decode(r, spec: CodeSpec, tolerance: float | None = None) -> tuple[SignalTuple, float]:
    """Recover (codeword, alpha estimate) from an observation.

    Raises :class:`Undecodable` when the ratios are not rationals with
    denominator <= N within ``tolerance``, or the scale misses every bucket.
    """
    _require_zero_error(spec)
    if not isinstance(r, ObservedSignal):
        r = ObservedSignal(tuple(r))
    if tolerance is None:
        tolerance = r.tolerance
    vals = r.values
    if len(vals) != spec.k:
        raise Undecodable(f"expected {spec.k} intervals, got {len(vals)}")

    r1 = vals[0]
    ratios = []
    for x in vals[1:]:
        q = x / r1
        exact = Fraction(q)
        f = exact.limit_denominator(spec.N)
        if abs(f - exact) > tolerance * q:
            raise Undecodable(f"ratio {q!r} has no rational within tolerance with denominator <= {spec.N}")
        ratios.append(f)
    lcm = math.lcm(*(f.denominator for f in ratios)) if ratios else 1
    ints = [lcm] + [f.numerator * (lcm // f.denominator) for f in ratios]
    g = math.gcd(*ints)
    u = tuple(x // g for x in ints)

    s = r1 / u[0]
    if s * (1 + tolerance) < 1:
        raise Undecodable(f"scale {s} below 1 is impossible for alpha >= 1")
    if spec.effective_family == "C":
        d = 1
    else:
        beta = spec.bound.value
        # No slack on the lower edge: rounding is monotone, so alpha >= 1
        # gives s >= d_n exactly. Slack here would push alpha just below
        # beta into the next bucket whenever beta * d_n is an integer.
        terms = scale_sequence(spec.bound, "dilation-d").up_to(max(1, math.floor(s)))
        d = terms[-1]
        if not s < float(beta) * d * (1 + tolerance):
            raise Undecodable(f"scale {s} falls between buckets [{d}, {beta * d}) and the next")
    word = tuple(d * x for x in u)
    if not contains(spec, word):
        raise Undecodable(f"decoded {word} is not a codeword of {spec.label()}")
    return word, s / d


@dataclass
class MonteCarloReport:
    spec: str
    distribution: dict
    trials: int
    successes: int
    failures: int
    bits: float
    seed: int
    max_alpha_rel_error: float
    alpha_violations: int

    def to_dict(self) -> dict:
        return asdict(self)


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))


def _run_block(spec: CodeSpec, dist: AlphaDistribution, seed: int, block: int, size: int, total: int, tolerance: float):
    rng = _block_rng(seed, block)
    if total < 2**62:
        msgs = rng.integers(0, total, size).tolist()
    else:
        py = random.Random(int(rng.integers(2**62)))
        msgs = [py.randrange(total) for _ in range(size)]
    alphas = sample_alphas(dist, rng, size).tolist()
    fails = violations = 0
    worst = 0.0
    for m, a in zip(msgs, alphas):
        t = unrank(spec, m)
        try:
            got, est = decode(transmit(t, a), spec, tolerance)
        except Undecodable:
            fails += 1
            continue
        if got != t:
            fails += 1
            continue
        err = abs(est - a) / a
        worst = max(worst, err)
        if err > tolerance:
            violations += 1
    return fails, violations, worst


def run_monte_carlo(
    spec: CodeSpec,
    dist: AlphaDistribution,
    trials: int,
    seed: int = 0,
    tolerance: float = DEFAULT_TOLERANCE,
    workers: int = 1,
) -> MonteCarloReport:
    """Encode a uniform message, dilate, decode, compare; ``trials`` times.

    Trial i draws from the block ``i // BLOCK_SIZE`` seeded by
    (seed, block), so the report depends only on the arguments and not on
    ``workers``.
    """
    _require_zero_error(spec)
    if spec.effective_family == "D" and dist.supremum > float(spec.bound.value):
        raise InvalidInput(
            f"distribution supremum {dist.supremum} exceeds the code bound beta = {spec.bound}"
        )
    total = count(spec)
    if total == 0:
        raise InvalidInput(f"{spec.label()} is empty")
    blocks = [(b, min(BLOCK_SIZE, trials - b * BLOCK_SIZE)) for b in range(-(-trials // BLOCK_SIZE))]
    args = [(spec, dist, seed, b, n, total, tolerance) for b, n in blocks]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_block, *zip(*args)))
    else:
        results = [_run_block(*a) for a in args]
    failures = sum(r[0] for r in results)
    return MonteCarloReport(
        spec=spec.label(),
        distribution=dist.to_dict(),
        trials=trials,
        successes=trials - failures,
        failures=failures,
        bits=bits(spec),
        seed=seed,
        max_alpha_rel_error=max((r[2] for r in results), default=0.0),
        alpha_violations=sum(r[1] for r in results),
    )
