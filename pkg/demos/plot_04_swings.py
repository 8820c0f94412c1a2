"""
Witness sequences
=================

A prime interval ``q`` is collapsed by ``con(p)`` exactly when a short
sequence of perspectivities and swings leads from ``p`` to ``q``.
"""

from spslat.congruence import con
from spslat.constructions import fixture
from spslat.lattice import PrimeInterval
from spslat.swing import find_prime_projectivity, find_swing_sequence

S7 = fixture("S7")


def prime(L, a, b):
    return PrimeInterval(L.index(a), L.index(b))


p, q = prime(S7, "a_l", "t"), prime(S7, "z_r", "a_r")
print(find_swing_sequence(S7, p, q).format(S7))
print(con(S7, p).collapses(q))

# no witness in the other direction, and the oracle agrees
p, q = prime(S7, "m", "t"), prime(S7, "a_l", "t")
print(find_swing_sequence(S7, p, q), con(S7, p).collapses(q))

# prime-perspectivities work in any finite lattice, N5 included
N5 = fixture("N5")
print(find_prime_projectivity(N5, prime(N5, "u", "i"), prime(N5, "v", "w")).format(N5))
