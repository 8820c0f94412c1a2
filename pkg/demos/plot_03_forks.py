"""
Fork insertion
==============

Every slim patch lattice arises from B2 by inserting forks into covering
squares.  Here we grow a few and look at what the insertion adds.
"""

from spslat.constructions import B2, covering_squares, fork_insert, fork_trace, generate_patch_lattices

L = B2()
(square,) = covering_squares(L)
S7 = fork_insert(L, square)
print(S7.labels)

# an inner square of S7: the left chain descends two steps to the boundary
S = covering_squares(S7)[-1]
trace = fork_trace(S7, S)
print([S7.label(x) for x in trace.x_l], [S7.label(y) for y in trace.y_l])
K = fork_insert(S7, S, trace=trace)
print(K.n, "=", S7.n, "+ 1 +", trace.n_l, "+", trace.n_r)

# the whole family up to three forks, deduplicated up to mirror image
for g in generate_patch_lattices(3, with_meta=True):
    print(g.depth, g.id, g.lattice.n)
