"""
Signal space and the two code families
======================================

A signal of k events is written as its k inter-event intervals. With N
time slots, the admissible signals are the positive integer k-tuples whose
sum is at most N.
"""

import math

from dilation_codes import CodeSpec, contains, count, enumerate_code, rank, unrank
from dilation_codes.analysis import emit_figure_data

# The whole space for N = 4, k = 2 has C(4, 2) = 6 points.
space = CodeSpec(4, 2, "T")
print("T_{4,2}:", list(enumerate_code(space)))

# (1, 1) and (2, 2) lie on the same ray from the origin. A receiver with no
# bound on the dilation factor cannot tell them apart, so the primitive code
# keeps only tuples with gcd 1.
primitive = CodeSpec(4, 2, "C")
print("C_{4,2}:", list(enumerate_code(primitive)))

# With a bound beta = 2 on the dilation, scales 1 and 2 on one ray no longer
# overlap (except at a single point), so the code can keep both.
bounded = CodeSpec(4, 2, "D", 2)
print("D_{4,2}, beta=2:", list(enumerate_code(bounded)))

# Counting never enumerates: it sums Moebius-weighted binomials.
for N in (16, 1000, 10**5):
    spec = CodeSpec(N, 2, "C")
    print(f"|C_{{{N},2}}| = {count(spec)}  ({count(spec) / math.comb(N, 2):.6f} of the space)")

# A message number maps to a codeword (and back) in lexicographic order.
spec = CodeSpec(50, 3, "D", "3/2")
word = unrank(spec, 1234)
print("message 1234 ->", word, "-> rank", rank(spec, word), "member:", contains(spec, word))

# Data behind the classic picture of C_{16,2}: every grid point with a flag.
rows = emit_figure_data(16, 2)
for t2 in range(15, 0, -1):
    print("".join("#" if (t1, t2, True) in rows else ("." if t1 + t2 <= 16 else " ") for t1 in range(1, 16)))
