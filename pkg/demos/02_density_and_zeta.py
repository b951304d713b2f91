"""
Code density and the zeta function
==================================

The fraction of signals an optimal code can use tends to
sum_n d_n^-k / zeta(k). With no bound on the dilation that is 1/zeta(k).
"""

import math

from dilation_codes import CodeSpec, delta_inf_even, density_theoretical, empirical_density, zeta
from dilation_codes.analysis import convergence_sweep

print("zeta(2) =", zeta(2), " pi^2/6 =", math.pi**2 / 6)
print("zeta(3) =", zeta(3))

# Even arguments have a Bernoulli-number closed form; it agrees with the series.
for m in range(1, 5):
    print(f"m={m}: closed form {delta_inf_even(m):.15f}   1/zeta({2 * m}) {1 / zeta(2 * m):.15f}")

# Exact finite-N ratios approach the limit as N grows.
for rec in convergence_sweep(2, "inf", [10**2, 10**3, 10**4, 10**5]):
    print(f"N={rec.N:>6}  ratio={rec.ratio:.7f}  limit={rec.theoretical:.7f}  gap={rec.gap:.2e}")

# A bounded dilation lets the code reuse rays at scales 1, beta, beta^2, ...
# For integer beta the series sums to beta^k / (zeta(k) (beta^k - 1)).
for beta in (2, 3, "3/2", "11/10", 1):
    print(f"beta={beta!s:>5}: density {density_theoretical(beta, 2):.9f}")
print("8/pi^2 =", 8 / math.pi**2)
print(empirical_density(CodeSpec(10**4, 2, "D", 2)))
