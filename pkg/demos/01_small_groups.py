# Non-nilpotent graphs of a few small groups.
# Run: python demos/01_small_groups.py

from nilgraph import build_nilgraph, make_group, nonnilpotent_graph, parse_cycles
from nilgraph.graph import degree, diameter, hamiltonian, is_complete_multipartite, isolated_vertices

# S3: the identity is the only isolated vertex
S3 = make_group("S3")
full = build_nilgraph(S3)
print("S3 isolated:", [full.labels[v] for v in isolated_vertices(full)])

R = nonnilpotent_graph(S3)
print("S3 graph:", R.n, "vertices,", R.n_edges, "edges")
for part in is_complete_multipartite(R):
    print("  part", [R.labels[v] for v in part])

# S4 has 23 non-isolated vertices and (1 2)(3 4) has only 8 neighbours
S4 = make_group("S4")
R4 = nonnilpotent_graph(S4)
v = R4.ids.index(S4.index[parse_cycles("(1 2)(3 4)", 4)])
print("\nS4:", R4.n, "vertices; deg (1 2)(3 4) =", degree(R4, v))
print("neighbours:", sorted(R4.labels[u] for u in R4.neighbors(v)))
print("diameter:", diameter(R4))
print("not complete multipartite:", is_complete_multipartite(R4) is None)
cyc = hamiltonian(R4).cycle
print("a Hamiltonian cycle:", " ".join(R4.labels[u] for u in cyc[:6]), "...")

# two groups of order 18 with the same graph
for spec in ("D9", "GD(C3xC3)"):
    g = nonnilpotent_graph(make_group(spec))
    sizes = sorted(len(p) for p in is_complete_multipartite(g))
    print(f"\n{spec}: part sizes {sizes}")
