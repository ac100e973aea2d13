"""
Identity checks
===============

Seeded random checks of the rho identities over a few small fields.
Same seed, same report.
"""

from dkgirth.field import mk_field
from dkgirth.identities import CHECKS, run_check

for p, m in [(3, 1), (2, 2), (5, 1), (3, 2)]:
    F = mk_field(p, m)
    for name in sorted(CHECKS):
        rep = run_check(name, F, 6, 100, seed=1)
        print(f"q={F.q:<2} {name:<8} cases={rep.cases:<6} ok={rep.ok}")
