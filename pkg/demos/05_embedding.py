# Realize a graph as an induced subgraph of a non-nilpotent graph.
# Run: python demos/05_embedding.py

import itertools

from nilgraph.embedder import embed_graph, realized_subgraph, verify_embedding
from nilgraph.graph import Graph

path = Graph.from_edges(["1", "2", "3"], [(0, 1), (1, 2)])
tower, ws = embed_graph(path)
print("path on 3 vertices -> primes", tower.primes, "order", tower.order)
print(verify_embedding(path, tower, ws).to_text())

# a small case that can be written out and checked element by element
cherry = Graph.from_edges(["1", "2", "3"], [(0, 1), (0, 2)])
print("\ncherry, read back from the explicit group:", realized_subgraph(cherry).edges())

k6 = Graph.from_edges([str(i) for i in range(6)], itertools.combinations(range(6), 2))
tower, ws = embed_graph(k6)
print("\nK6: dimensions", [lv.dim for lv in tower.levels])
print("K6 transcript verified:", verify_embedding(k6, tower, ws).ok)
