"""From a 3-dimensional matching instance to a layered graph and back.

Run with ``python3 demos/reduction_walkthrough.py``.
"""

from ivmatch import (
    TripartiteHypergraph,
    brute_force_3dm,
    embed_from_3dm,
    interface_v_totals,
    lift_to_3dm,
    reduce_3dm,
    solve,
    verify_matching,
)
from ivmatch.formats import emit_cert, emit_ivg

# Two elements per side and three triples. {(1,1,1), (2,2,2)} is a perfect matching.
h = TripartiteHypergraph(2, ((1, 1, 1), (2, 2, 2), (1, 2, 1)))
print("hyperedges:", h.edges)

# The gadget graph has four layers: X and Y, one {x_e, y_e} pair per triple,
# one z_e per triple, then Z.
g, rmap = reduce_3dm(h)
print(emit_ivg(g))
print("vertices:", g.total_vertices, "macroedges:", len(g.macroedges))

# Counting alone already fixes how many V-shapes any certificate must use.
print("V-shapes forced at the middle interface:", interface_v_totals(g))

# Solve the layered instance and pull a matching back out of the certificate.
res = solve(g)
print(emit_cert(res.certificate))
chosen = lift_to_3dm(h, rmap, res.certificate)
print("lifted matching:", sorted(chosen))

# The other direction: a matching found by brute force embeds as a certificate.
found = brute_force_3dm(h)
cert = embed_from_3dm(h, rmap, found)
print("embedded certificate verifies:", verify_matching(g, cert).ok)

# Without a perfect matching the reduced graph is infeasible too.
bad = TripartiteHypergraph(2, ((1, 1, 1), (1, 2, 2)))
res = solve(reduce_3dm(bad)[0])
print("uncoverable instance:", res.status.value, res.reason.value if res.reason else "")
