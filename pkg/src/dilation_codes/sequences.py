"""Scale sequences for the dilation model (d_n) and the clock-drift model (b_n).

Both are driven by an exact rational bound beta >= 1:

    d_1 = 1, d_n = ceil(beta * d_{n-1})
    b_1 = 1, b_n = floor(beta * b_{n-1} + 1)

For beta = 1 the d-recursion would stall at 1; the sequence is defined as
d_n = n there, the limit of the recursion as beta -> 1.

An irrational beta can only be represented by a rational approximant, and the
sequences depend discontinuously on beta (the ceiling jumps whenever
beta * d_{n-1} crosses an integer), so results are exact for the approximant
and not for the number it approximates.
"""

from __future__ import annotations

import bisect
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

from .errors import InvalidInput
from .numtheory import zeta

Family = Literal["dilation-d", "drift-b"]

__all__ = [
    "DilationBound",
    "UNBOUNDED",
    "ScaleSequence",
    "scale_sequence",
    "d_seq",
    "b_seq",
    "density_theoretical",
    "density_drift",
]


@dataclass(frozen=True)
class DilationBound:
    """Supremum beta of the support of the dilation factor.

    ``value`` is an exact Fraction >= 1, or None for an unbounded support.
    """

    value: Fraction | None

    def __post_init__(self):
        if self.value is None:
            return
        if isinstance(self.value, float) or not isinstance(self.value, (int, Fraction)):
            raise InvalidInput(
                f"beta must be an exact rational (int, Fraction or 'p/q'), got {self.value!r}"
            )
        v = Fraction(self.value)
        if v < 1:
            raise InvalidInput(f"beta must be >= 1, got {v}")
        object.__setattr__(self, "value", v)

    @classmethod
    def parse(cls, text) -> "DilationBound":
        """Build from an int, Fraction, DilationBound, or a string 'p/q', 'n' or 'inf'."""
        if isinstance(text, DilationBound):
            return text
        if text is None:
            return UNBOUNDED
        if isinstance(text, str):
            s = text.strip().lower()
            if s in ("inf", "infinity", "unbounded"):
                return UNBOUNDED
            if "." in s or "e" in s:
                raise InvalidInput(f"beta must be given as p/q, an integer, or inf; got {text!r}")
            try:
                return cls(Fraction(s))
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidInput(f"cannot parse beta {text!r}") from exc
        return cls(text)

    @property
    def unbounded(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


UNBOUNDED = DilationBound(None)


class ScaleSequence:
    """Lazily extended d_n or b_n sequence for one bound.

    ``terms`` holds the prefix computed so far; ``seq[i]`` is the (i+1)-th
    term. Extension takes a lock so one instance may be shared by threads.
    """

    def __init__(self, bound: DilationBound, family: Family):
        if bound.unbounded:
            raise InvalidInput("an unbounded support has no scale sequence")
        if family not in ("dilation-d", "drift-b"):
            raise InvalidInput(f"unknown sequence family {family!r}")
        self.bound = bound
        self.family = family
        self._terms = [1]
        self._lock = threading.Lock()

    @property
    def terms(self) -> tuple[int, ...]:
        return tuple(self._terms)

    def _next(self, prev: int) -> int:
        beta = self.bound.value
        if self.family == "drift-b":
            return math.floor(beta * prev + 1)
        if beta == 1:
            return prev + 1
        return math.ceil(beta * prev)

    def extend_to(self, count: int) -> None:
        if len(self._terms) >= count:
            return
        with self._lock:
            while len(self._terms) < count:
                self._terms.append(self._next(self._terms[-1]))

    def prefix(self, count: int) -> tuple[int, ...]:
        if count < 1:
            raise InvalidInput("count must be positive")
        self.extend_to(count)
        return tuple(self._terms[:count])

    def up_to(self, limit: int) -> tuple[int, ...]:
        """All terms <= limit."""
        with self._lock:
            while self._terms[-1] <= limit:
                self._terms.append(self._next(self._terms[-1]))
            return tuple(self._terms[: bisect.bisect_right(self._terms, limit)])

    def __getitem__(self, i: int) -> int:
        self.extend_to(i + 1)
        return self._terms[i]

    def index_of_bucket(self, g: int) -> int:
        """Zero-based index n of the largest term <= g (g >= 1)."""
        return len(self.up_to(g)) - 1

    def __repr__(self) -> str:
        return f"ScaleSequence(beta={self.bound}, family={self.family!r}, cached={len(self._terms)})"


@lru_cache(maxsize=256)
def scale_sequence(bound: DilationBound, family: Family = "dilation-d") -> ScaleSequence:
    """Shared cached sequence instance per (bound, family)."""
    return ScaleSequence(bound, family)


def d_seq(bound, count: int) -> tuple[int, ...]:
    """First ``count`` terms of d_n = ceil(beta d_{n-1}), d_1 = 1."""
    return scale_sequence(DilationBound.parse(bound), "dilation-d").prefix(count)


def b_seq(bound, count: int) -> tuple[int, ...]:
    """First ``count`` terms of b_n = floor(beta b_{n-1} + 1), b_1 = 1."""
    return scale_sequence(DilationBound.parse(bound), "drift-b").prefix(count)


def _scaled_series(bound: DilationBound, family: Family, k: int, tolerance: float) -> float:
    # Both families satisfy s_{m+1} >= beta s_m, so the tail after s_n is at
    # most s_n^-k * r / (1 - r) with r = beta^-k.
    seq = scale_sequence(bound, family)
    r = float(bound.value) ** -k
    parts = []
    n = 0
    while True:
        term = float(seq[n]) ** -k
        parts.append(term)
        if term * r / (1.0 - r) < tolerance:
            return math.fsum(parts)
        n += 1


def _density(bound, k: int, tolerance: float, family: Family) -> float:
    bound = DilationBound.parse(bound)
    if int(k) != k or k < 2:
        raise InvalidInput("k must be an integer >= 2")
    if tolerance <= 0:
        raise InvalidInput("tolerance must be positive")
    if bound.unbounded:
        return 1.0 / zeta(k, tolerance / 4)
    if bound.value == 1:
        # both sequences are n -> n, and the series is zeta(k) itself
        return 1.0
    z = zeta(k, tolerance / 4)
    return _scaled_series(bound, family, k, tolerance / 4) / z


def density_theoretical(bound, k: int, tolerance: float = 1e-13) -> float:
    """Optimal asymptotic code density: sum_n d_n^-k / zeta(k).

    Unbounded support gives 1/zeta(k); beta = 1 gives exactly 1.
    """
    return _density(bound, k, tolerance, "dilation-d")


def density_drift(bound, k: int, tolerance: float = 1e-13) -> float:
    """Clock-drift counterpart: sum_n b_n^-k / zeta(k)."""
    return _density(bound, k, tolerance, "drift-b")
