"""
Sending messages through the dilation channel
=============================================

Encode a message as a codeword, stretch it by a random factor alpha, and
recover both the codeword and alpha at the receiver.
"""

from dilation_codes import AlphaDistribution, CodeSpec, decode, encode, run_monte_carlo, transmit
from dilation_codes.errors import Undecodable

# Without a code, (1, 2) and (2, 4) are ambiguous; with C the observation
# (2.1, 4.2) can only come from (1, 2).
print(decode((2.1, 4.2), CodeSpec(16, 2, "C")))

spec = CodeSpec(500, 2, "D", 2)
word = encode(31337, spec)
observed = transmit(word, 1.73)
print("sent", word, "observed", observed.values, "decoded", decode(observed, spec))

# An observation that no codeword can produce is rejected.
try:
    decode((3.0, 3.1), CodeSpec(12, 2, "D", 2))
except Undecodable as exc:
    print("rejected:", exc)

# Monte Carlo: no failures for either code.
for spec, dist in [
    (CodeSpec(500, 2, "C"), AlphaDistribution("pareto-unbounded", shape=1.0)),
    (CodeSpec(500, 2, "D", 2), AlphaDistribution("uniform-open", 2)),
    (CodeSpec(120, 3, "D", "3/2"), AlphaDistribution("truncated-power-law", "3/2", shape=2.0)),
]:
    print(run_monte_carlo(spec, dist, trials=5000, seed=1).to_dict())
