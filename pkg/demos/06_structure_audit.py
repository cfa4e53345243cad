"""Auditing local structure
===========================

Split a C4-free graph around a vertex into its neighbours, the private
second neighbourhoods and the rest, then check the counting identities and
the structural facts that the upper-bound argument relies on.
"""

# %%
from c4books.constructions import build, er_graph
from c4books.structure_audit import (
    audit_er_structure,
    audit_graph,
    check_counterexample_claims,
    decompose,
)

g = er_graph(4).graph
d = decompose(g, int(g.degrees.argmin()))
print("hub", d.v, "neighbours", d.neighbors)
print("second-neighbourhood sizes", [len(a) for a in d.A], "rest", d.B)

# %%
print(audit_graph(g, subject="ER_4").to_text())

# %%
for q in (7, 9):
    print(audit_er_structure(q).to_text())
    print()

# %%
# Add one vertex to a witness to reach the critical order: some check always fails.
# Neighbours are picked greedily to avoid a C4.  Every vertex here is
# adjacent to vertex 0 or shares a neighbour with it, so only 0 gets picked.
base = build("H", 4, 3).graph
adj = base.adjacency
chosen = []
for v in range(base.n):
    if len(chosen) == 4:
        break
    if all(not adj[v, u] and not (adj[v] & adj[u]).any() for u in chosen):
        chosen.append(v)
bigger = base.add_vertex(chosen)
print("new vertex joined to", chosen)
print(check_counterexample_claims(bigger, 4, 3).to_text())
