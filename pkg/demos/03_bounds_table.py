"""Bounds on r(C4, B_n)
=======================

Compare the general upper bounds, the construction-based lower bounds and
the known exact values for small n, then look at large n.
"""

# %%
from c4books.bounds import KNOWN_SMALL_VALUES, best_known, formula_bounds, frs_upper, mt_upper

print(" n  lower  upper  known  iterated-star  m^2+t")
for n in range(1, 15):
    rec = formula_bounds(n)
    print(f"{n:2d}  {rec.lower.value:5d}  {rec.upper.value:5d}  {KNOWN_SMALL_VALUES[n]:5d}"
          f"  {frs_upper(n):13d}  {mt_upper(n) or '-':>5}")

# %%
# Where a witness exists, lower and upper bounds meet.
for n in (16, 18, 40, 52, 100, 1000):
    rec = best_known(n)
    exact = rec.exact.value if rec.exact else "open"
    print(f"n={n:5d}: [{rec.lower.value}, {rec.upper.value}]  exact={exact}")
    print("         lower from:", rec.lower.provenance)
    print("         upper from:", rec.upper.provenance)

# %%
# The random-deletion lower bound only kicks in for n in the low thousands.
from c4books.bounds import asymptotic_lower

for n in (100, 2000, 2075, 10_000, 10**6):
    print(n, asymptotic_lower(n))
