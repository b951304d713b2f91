"""
Checking optimality on small spaces
===================================

The confusability graph links every pair of signals that the receiver could
mix up. An optimal zero-error code is a maximum independent set of that
graph; here it is computed exactly and compared with the size of D.
"""

from dilation_codes import CodeSpec, build_graph, count, max_independent_set, shannon_certificate
from dilation_codes.confusability import shannon_map

for beta in ("3/2", 2, 3):
    for k in (2, 3):
        N = 12
        graph = build_graph(N, k, beta)
        alpha = max_independent_set(graph)
        size = count(CodeSpec(N, k, "D", beta))
        print(f"N={N} k={k} beta={beta}: {len(graph.vertices)} signals, {len(graph.edges)} confusable pairs, "
              f"independence number {alpha}, |D| = {size}")

# The certificate maps each signal g*u to the codeword d_n*u of its bucket
# [d_n, beta d_n) and checks that only confusable signals share an image.
print("(3, 3) maps to", shannon_map((3, 3), 2), "when beta = 2")
report = shannon_certificate(12, 2, 2)
print("certificate:", report["pass"], "after", report["checked_pairs"], "pairs")
