"""Random deletion from a large polarity graph
==============================================

Pick p just above sqrt(n), delete a random set of vertices from ER_p, and
check that every survivor keeps enough neighbours.  The survivors then form
a certificate for r(C4, B_n) > n + 2m.
"""

# %%
from c4books.random_deletion import TrialParams, failure_rate, retry_until_witness

params = TrialParams.derive(10_000)
print(params)

# %%
rep = retry_until_witness(10_000)
print(rep.to_text())

# %%
# Failures are rare: count how often the minimum-degree condition breaks.
print("failure rate over 50 seeds:", failure_rate(10_000, range(50)))

# %%
# Near n = 12700 the prime after sqrt(n) jumps from 113 to 127, and the
# construction's prime-gap requirement fails; this is reported loudly.
from c4books.random_deletion import PrimeGapViolation

try:
    TrialParams.derive(12_700)
except PrimeGapViolation as exc:
    print("refused:", exc)
