"""Finite-N density experiments and model comparison tables."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable

from .codebook import CodeSpec, count, enumerate_code
from .numtheory import zeta
from .sequences import DilationBound, b_seq, d_seq, density_drift, density_theoretical

__all__ = [
    "DensityRecord",
    "empirical_density",
    "convergence_sweep",
    "compare_models",
    "emit_figure_data",
    "figure_csv",
    "records_csv",
]


@dataclass(frozen=True)
class DensityRecord:
    N: int
    k: int
    beta: str
    family: str
    count: int
    binomial: int
    ratio: float
    theoretical: float
    gap: float

    def to_dict(self) -> dict:
        return asdict(self)


def _family_density(spec: CodeSpec, tolerance: float) -> float:
    fam = spec.effective_family
    if fam == "T":
        return 1.0
    if fam == "C":
        return 1.0 / zeta(spec.k, tolerance)
    return density_theoretical(spec.bound, spec.k, tolerance)


def empirical_density(spec: CodeSpec, tolerance: float = 1e-13) -> DensityRecord:
    """Exact |code| / C(N, k) next to the limiting density of the family."""
    n = count(spec)
    binom = math.comb(spec.N, spec.k)
    ratio = float(Fraction(n, binom)) if binom else 0.0
    theory = _family_density(spec, tolerance)
    return DensityRecord(
        N=spec.N,
        k=spec.k,
        beta=str(spec.bound) if spec.family == "D" else "inf",
        family=spec.family,
        count=n,
        binomial=binom,
        ratio=ratio,
        theoretical=theory,
        gap=abs(ratio - theory),
    )


def convergence_sweep(k: int, bound, Ns: Iterable[int], family: str | None = None, workers: int = 1) -> list[DensityRecord]:
    """One record per N, in the order given.

    ``family`` defaults to D (which coincides with C for an unbounded bound).
    The gap tends to shrink with N but need not do so monotonically.
    """
    bound = DilationBound.parse(bound)
    specs = [CodeSpec(int(N), k, family or "D", bound) for N in Ns]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(empirical_density, specs))
    return [empirical_density(s) for s in specs]


def compare_models(k: int, bound, n_terms: int = 10, tolerance: float = 1e-13) -> dict:
    """d_n next to b_n, with partial densities of both series.

    ``rows`` has partial sums up to each n; ``dilation_density`` and
    ``drift_density`` are the full series values.
    """
    bound = DilationBound.parse(bound)
    d = d_seq(bound, n_terms)
    b = b_seq(bound, n_terms)
    z = zeta(k, tolerance)
    rows = []
    pd = pb = 0.0
    for n, (dn, bn) in enumerate(zip(d, b), 1):
        pd += dn**-k
        pb += bn**-k
        rows.append({"n": n, "d_n": dn, "b_n": bn, "partial_dilation": pd / z, "partial_drift": pb / z})
    return {
        "k": k,
        "beta": str(bound),
        "rows": rows,
        "identical": d == b,
        "dilation_density": density_theoretical(bound, k, tolerance),
        "drift_density": density_drift(bound, k, tolerance),
    }


def emit_figure_data(N: int = 16, k: int = 2) -> list[tuple]:
    """Every point of T_{N,k} with a flag marking the primitive ones (codewords of C)."""
    return [t + (math.gcd(*t) == 1,) for t in enumerate_code(CodeSpec(N, k, "T"))]


def figure_csv(N: int = 16, k: int = 2) -> str:
    lines = [",".join([f"t{i}" for i in range(1, k + 1)] + ["is_codeword"])]
    for row in emit_figure_data(N, k):
        lines.append(",".join(str(x) for x in row[:-1]) + ("," + ("1" if row[-1] else "0")))
    return "\n".join(lines) + "\n"


def records_csv(records: Iterable[DensityRecord]) -> str:
    fields = list(DensityRecord.__dataclass_fields__)
    lines = [",".join(fields)]
    for r in records:
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v) for v in asdict(r).values()))
    return "\n".join(lines) + "\n"

