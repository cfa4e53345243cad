"""Polarity graphs over small fields
====================================

Build ER_q for a few field sizes and look at what makes it useful as a
starting point: no four-cycles, two degree values, and a small independent
set of self-orthogonal points.
"""

# %%
# A field of order 9 is GF(3)[x] modulo the smallest monic irreducible quadratic.
from c4books import build_er_graph, field_of_order
from c4books.graph_core import contains_c4, degree_profile, diameter

F9 = field_of_order(9)
print("modulus coefficients (low degree first):", F9.modulus)
a, b = F9.from_index(4), F9.from_index(7)
print(f"{a} * {b} = {F9.mul(a, b)},  inverse of {a} is {F9.inv(a)}")

# %%
# Points of PG(2,q) are normalised so the leftmost nonzero coordinate is 1.
for q in (2, 3, 4, 5, 7, 8, 9):
    er = build_er_graph(field_of_order(q))
    g = er.graph
    print(f"q={q:2d}  order={g.n:3d}  degrees={degree_profile(g)}  "
          f"self-orthogonal={len(er.absolute):2d}  diameter={diameter(g)}  C4={contains_c4(g)}")

# %%
# Self-orthogonal points are exactly the vertices of degree q, and no two are adjacent.
er = build_er_graph(field_of_order(5))
low = sorted(er.absolute)
print("degree-5 vertices:", low)
print("edges among them:", int(er.graph.adjacency[low][:, low].sum()) // 2)
