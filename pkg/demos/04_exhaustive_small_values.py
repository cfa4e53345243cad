"""Exact small values by exhaustive search
==========================================

Enumerate C4-free graphs up to isomorphism and confirm the smallest Ramsey
values: a witness one vertex short, and no valid graph at the claimed order.
"""

# %%
import time

from c4books.exhaustive import enumerate_c4free, verify_exact

for order in range(1, 10):
    t0 = time.monotonic()
    count = sum(1 for _ in enumerate_c4free(order))
    print(f"{order} vertices: {count:5d} C4-free graphs up to isomorphism ({time.monotonic() - t0:.2f}s)")

# %%
for n, R in ((1, 7), (2, 7), (3, 9)):
    out = verify_exact(n, R)
    print(f"r(C4,B{n}) = {R}: {out.status}, witness {out.witness.decode()}, "
          f"{out.graphs_examined} graphs, {out.elapsed:.2f}s")

# %%
# A wrong claim is refuted, and a tight budget reports inconclusive rather than guessing.
print(verify_exact(2, 8).detail)
print(verify_exact(4, 11, budget_graphs=50).status)
