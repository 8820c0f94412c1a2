"""
Principal congruences
=====================

``con(p)`` is the least congruence collapsing the prime interval ``p``.
"""

from spslat.congruence import con, join_irreducible_congruences, two_cover_property
from spslat.constructions import fixture

S7 = fixture("S7")
for p in S7.prime_intervals():
    print(f"con({S7.label(p.bottom)},{S7.label(p.top)}) = {con(S7, p).format(S7)}")

# [m,t] generates a strictly smaller congruence than [a_l,t]
ix = S7.index
print(con(S7, (ix("m"), ix("t"))) < con(S7, (ix("a_l"), ix("t"))))

# J(Con S7): three join-irreducibles, one below the other two
J = join_irreducible_congruences(S7)
print([(S7.label(g.bottom), S7.label(g.top)) for g in J.generators])
print(J.covers, two_cover_property(S7, J))
