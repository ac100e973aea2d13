"""
Lifting a hexagon
=================

A 6-cycle of Lambda(2, 3) becomes a 12-cycle at k=7 (alternating v)
and at k=8 (scale every other step, then double).
"""

from dkgirth import GraphParams, WalkType, mk_field
from dkgirth.graph import is_circuit_type
from dkgirth.lift import lift_l4, lift_t3_item3, l4_down

F3 = mk_field(3, 1)
hexagon = is_circuit_type(GraphParams(2, F3), WalkType.from_interleaved((1,) * 6),
                          require_distinct=True)
print("base   ", hexagon.k, hexagon.length, hexagon.walk_type)

c7 = lift_l4(hexagon)
print("k=7    ", c7.length, c7.walk_type)

c8 = lift_t3_item3(hexagon)
print("k=8    ", c8.length, c8.walk_type, "alpha =", c8.extra["alpha"])

# going back down recovers the original type
print("down   ", l4_down(c7).walk_type == hexagon.walk_type)
