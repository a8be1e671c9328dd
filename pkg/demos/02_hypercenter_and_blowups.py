# Isolated vertices sit exactly in the hypercenter, and the graph of G is a
# blow-up of the graph of G/Z*(G).
# Run: python demos/02_hypercenter_and_blowups.py

from nilgraph import hypercenter, make_group, verify_quotient_blowup
from nilgraph.graph import build_nilgraph, isolated_vertices

for spec in ["S4", "C2xS3", "C3xS3", "C4xA4", "SD(C3,C4,inv)", "C2xC2xA4"]:
    G = make_group(spec)
    Z = hypercenter(G)
    iso = isolated_vertices(build_nilgraph(G))
    res = verify_quotient_blowup(G)
    print(
        f"{spec:>14}  |G|={G.order:<4} |Z*|={Z.order:<3} isolated={len(iso):<3}"
        f" quotient vertices={res.quotient_graph.n:<4} blow-up ok={res.ok}"
    )
