"""Zero-error codes for timing signals under an unknown linear time dilation.

A transmitter sends k events whose inter-event intervals form a tuple of
positive integers with sum <= N; the receiver sees every interval scaled by
the same unknown factor alpha in [1, beta) (or [1, inf)). This package builds
the optimal codes for that channel, counts them exactly, verifies their
optimality on small spaces, and simulates the encode/dilate/decode loop.
"""

from .analysis import DensityRecord, compare_models, convergence_sweep, emit_figure_data, empirical_density
from .channel import AlphaDistribution, ObservedSignal, decode, encode, run_monte_carlo, sample_alpha, transmit
from .codebook import CodeSpec, contains, count, enumerate_code, rank, unrank
from .confusability import (
    build_graph,
    confusable,
    max_independent_set,
    shannon_certificate,
    verify_zero_error,
)
from .errors import DivergentSeries, GraphTooLarge, InvalidInput, Undecodable
from .numtheory import bernoulli, delta_inf_even, gcd_tuple, mobius_sieve, zeta
from .sequences import UNBOUNDED, DilationBound, b_seq, d_seq, density_drift, density_theoretical

__version__ = "0.1.0"
