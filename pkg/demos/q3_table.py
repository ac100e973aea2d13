"""
Girth table for q = 3
=====================

Exact values where search or the lifting rules pin the girth down,
otherwise a [lower, upper] bracket.  The method column names the
last rule in the chain.
"""

import sys

from dkgirth.bounds import derive_girth, table_csv, table_q3

rows = table_q3(320)
sys.stdout.write(table_csv(rows))

# why is g(Lambda(67, 3)) exactly 72?
rep = derive_girth(67, 3, 3)
for step in rep.rule_chain:
    print("  ", step)
