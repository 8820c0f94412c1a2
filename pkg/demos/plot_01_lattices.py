"""
Planar lattices and their predicates
====================================

A lattice is given by ordered cover lists; the order of each list is the
left-to-right order of the diagram.
"""

import spslat
from spslat.constructions import fixture

# S7: seven elements, the top covers three elements
S7 = fixture("S7")
print(S7.labels)
print([S7.label(x) for x in S7.lower_covers[S7.index("t")]])

# meets and joins come from precomputed tables
print(S7.label(S7.meet(S7.index("a_r"), S7.index("m"))))

# the three defining properties, and the two non-examples
for name in ("B2", "S7", "N5", "M3"):
    L = fixture(name)
    print(name, spslat.is_semimodular(L), spslat.is_slim(L), spslat.is_sps(L))

# boundaries of the diagram
print([S7.label(x) for x in S7.left_boundary()])
print([S7.label(x) for x in S7.right_boundary()])

# a lattice can also be built from a cover list directly
C = spslat.from_cover_pairs(3, [(0, 1), (1, 2)], ["0", "c", "1"])
print(C.n, C.cover_pairs())
