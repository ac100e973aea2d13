"""
Small girths by search
======================

Bidirectional BFS from one edge of Lambda(k, q). The graph is
edge-transitive, so the shortest cycle through that edge is the girth.
"""

from dkgirth import GraphParams, girth_bfs, mk_field

F3 = mk_field(3, 1)

for k in range(2, 15):
    res = girth_bfs(GraphParams(k, F3))
    print(f"k={k:>2}  girth={res.girth:>2}  k+5={k + 5:>2}  "
          f"visited={res.stats.get('visited', '?')}")

# the certificate only stores the walk type; re-check it from scratch
res = girth_bfs(GraphParams(13, F3))
cert = res.witness
print(cert.walk_type, cert.length, cert.closed, cert.exact)
