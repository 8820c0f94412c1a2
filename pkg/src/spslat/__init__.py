"""Congruence spreading in slim, planar, semimodular lattices."""
from .lattice import (
    Interval,
    PlanarLattice,
    PrimeInterval,
    build,
    from_cover_pairs,
    is_patch_lattice,
    is_semimodular,
    is_slim,
    is_sps,
)
from .relations import (
    StepKind,
    is_proper_swing,
    persp,
    persp_dn,
    persp_up,
    prime_persp,
    prime_persp_dn,
    prime_persp_up,
    swing,
    swing_witness,
)
from .congruence import (
    Congruence,
    collapses,
    join_irreducible_congruences,
    principal_congruence,
    two_cover_property,
)
from .constructions import (
    CoveringSquare,
    covering_squares,
    fixture,
    fork_insert,
    fork_trace,
    generate_patch_lattices,
)
from .canonical import canonical_form
from .swing import (
    StepSequence,
    find_prime_projectivity,
    find_swing_sequence,
    lemma_suite,
    normalize_witness,
    verify_prime_projectivity_lemma,
    verify_swing_lemma,
)

__version__ = "0.1.0"
