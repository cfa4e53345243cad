"""Lower-bound witnesses from ER_q
==================================

Delete a vertex and its neighbourhood frame from ER_q, then glue some
vertices back.  Each resulting graph is C4-free and its complement has no
large book, which certifies a lower bound on r(C4, B_n).
"""

# %%
from c4books import build, build_tmax_witness, verify_witness
from c4books.bounds import mt_upper
from c4books.constructions import g_range, h_range

for q in (4, 8):
    for t in h_range(q):
        res = build("H", q, t)
        n = res.target_book
        print(f"H q={q} t={t:2d}: order {res.order:3d}, book max {res.report.book_max:3d}, "
              f"{res.report.statement}, upper bound {mt_upper(n)}")

# %%
# Odd q uses a second family with its own admissible range of t.
for q in (5, 7):
    print(f"q={q}: admissible t = {g_range(q)}")
    for t in g_range(q):
        res = build("G", q, t)
        print(f"   t={t}: {res.report.statement}")

# %%
# The largest admissible t gives an order q^2+q-2 witness for n = q^2-q-2.
w = build_tmax_witness(7)
print(w.manifest())

# %%
# Any witness can be re-verified from scratch, for example after a graph6 round trip.
from c4books import decode_graph6, encode_graph6

data = encode_graph6(w.graph)
again = verify_witness(decode_graph6(data), w.target_book)
print(len(data), "bytes of graph6;", again.statement)
