"""
Dilation versus clock drift
===========================

A related model treats two signals as confusable even when their outputs
meet at a single point. Its optimal codes use b_n = floor(beta b_{n-1} + 1)
instead of d_n = ceil(beta d_{n-1}), and since b_n >= d_n they are never larger.
"""

from dilation_codes.analysis import compare_models

for beta in (2, "3/2", "10/7"):
    table = compare_models(2, beta, n_terms=6)
    print(f"beta = {beta}: dilation {table['dilation_density']:.9f}, drift {table['drift_density']:.9f}")
    for row in table["rows"]:
        print(f"   n={row['n']}  d_n={row['d_n']:>4}  b_n={row['b_n']:>4}")

# When no product beta * d_{n-1} is an integer the two sequences agree; with
# an irrational beta that happens at every n.
print(compare_models(2, "10/7", n_terms=4)["identical"])
