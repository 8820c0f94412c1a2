"""
Exhaustive verification
=======================

Check the witness characterisation against the congruence oracle on every
generated lattice, then run the structural checks.
"""

from collections import Counter

from spslat.constructions import generate_patch_lattices
from spslat.swing import lemma_suite, sl_persistence, verify_swing_lemma

gens = generate_patch_lattices(3, with_meta=True)

total = None
for g in gens:
    r = verify_swing_lemma(g.lattice, g.id)
    total = r if total is None else total.merge(r)
print(total.checked, "pairs,", len(total.discrepancies), "discrepancies")

# the structural suite; failures are collected, not raised
found = Counter()
for g in gens:
    for d in lemma_suite(g.lattice, g.id).discrepancies:
        found[d["lemma"]] += 1
print(dict(found))

print(sl_persistence(3).summary())
