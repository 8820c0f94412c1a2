"""Perspectivity, prime-perspectivity and swing relations between intervals.

All predicates are pure functions of a lattice's meet/join tables.  Intervals
may be passed as :class:`Interval`, :class:`PrimeInterval` or plain
``(bottom, top)`` pairs.
"""
from __future__ import annotations

import enum

from .errors import NotASwing, WitnessNotS7
from .lattice import PlanarLattice, PrimeInterval


class StepKind(str, enum.Enum):
    UP_PERSP = "UpPersp"
    DOWN_PERSP = "DownPersp"
    SWING = "Swing"
    PRIME_UP = "PrimeUp"
    PRIME_DOWN = "PrimeDown"

    def __str__(self):
        return self.value


SYMBOLS = {
    StepKind.UP_PERSP: "↗",
    StepKind.DOWN_PERSP: "↘",
    StepKind.SWING: "↻",
    StepKind.PRIME_UP: "⇗",
    StepKind.PRIME_DOWN: "⇘",
}


def _pair(I) -> tuple[int, int]:
    if isinstance(I, tuple):
        return int(I[0]), int(I[1])
    return I.bottom, I.top


def persp_dn(L: PlanarLattice, I, J) -> bool:
    """``I`` is down-perspective to ``J``: ``0_J = 0_I ∧ 1_J`` and ``1_I = 0_I ∨ 1_J``."""
    i0, i1 = _pair(I)
    j0, j1 = _pair(J)
    return L.meet(i0, j1) == j0 and L.join(i0, j1) == i1


def persp_up(L: PlanarLattice, I, J) -> bool:
    return persp_dn(L, J, I)


def persp(L: PlanarLattice, I, J) -> bool:
    return persp_dn(L, I, J) or persp_dn(L, J, I)


def prime_persp_dn(L: PlanarLattice, p, q) -> bool:
    """``p`` is down-perspective to ``[0_p ∧ 1_q, 1_q]`` and that interval contains ``q``."""
    p0, p1 = _pair(p)
    q0, q1 = _pair(q)
    d = L.meet(p0, q1)
    return persp_dn(L, (p0, p1), (d, q1)) and L.le(d, q0)


def prime_persp_up(L: PlanarLattice, p, q) -> bool:
    """Dual of :func:`prime_persp_dn`: ``p`` up-perspective to ``[0_q, 1_p ∨ 0_q]`` containing ``q``."""
    p0, p1 = _pair(p)
    q0, q1 = _pair(q)
    e = L.join(p1, q0)
    return persp_up(L, (p0, p1), (q0, e)) and L.le(q1, e)


def prime_persp(L: PlanarLattice, p, q) -> bool:
    return prime_persp_dn(L, p, q) or prime_persp_up(L, p, q)


def swing(L: PlanarLattice, p, q) -> bool:
    """``p`` swings to ``q``.

    Same top, the top has at least three lower covers, and ``0_q`` is
    neither the left-most nor the right-most of them.  ``p == q`` is not
    excluded here.
    """
    p0, p1 = _pair(p)
    q0, q1 = _pair(q)
    if p1 != q1:
        return False
    lows = L.lower_covers[p1]
    if len(lows) < 3 or p0 not in lows or q0 not in lows:
        return False
    return q0 not in (lows[0], lows[-1])


def is_proper_swing(L: PlanarLattice, p, q) -> bool:
    if not swing(L, p, q):
        raise NotASwing(f"{p} does not swing to {q}")
    p0, p1 = _pair(p)
    lows = L.lower_covers[p1]
    return p0 in (lows[0], lows[-1])


def generated_sublattice(L: PlanarLattice, gens) -> frozenset[int]:
    """Closure of ``gens`` under meet and join."""
    S = set(int(g) for g in gens)
    frontier = list(S)
    while frontier:
        new = []
        current = list(S)
        for x in frontier:
            for y in current:
                for z in (L.meet(x, y), L.join(x, y)):
                    if z not in S:
                        S.add(z)
                        new.append(z)
        frontier = new
    return frozenset(S)


def swing_witness(L: PlanarLattice, p, q) -> frozenset[int] | None:
    """The S7 sublattice generated by ``0_p``, ``0_q`` and a third lower cover of the top.

    The third generator is picked so that the three are adjacent in the
    top's lower-cover list when possible.  Returns ``None`` when ``p == q``.
    """
    from .constructions import S7_SHAPE  # avoid import cycle at module load
    from .canonical import order_form

    if not swing(L, p, q):
        raise NotASwing(f"{p} does not swing to {q}")
    p0, top = _pair(p)
    q0, _ = _pair(q)
    if p0 == q0:
        return None
    lows = list(L.lower_covers[top])
    i, j = sorted((lows.index(p0), lows.index(q0)))
    if j - i == 1:
        w = lows[i - 1] if i > 0 else lows[j + 1]
    elif j - i == 2:
        w = lows[i + 1]
    else:
        w = next(c for c in lows if c not in (p0, q0))
    S = generated_sublattice(L, (p0, q0, w))
    if len(S) != 7 or order_form(L.induced(S)) != order_form(S7_SHAPE()):
        raise WitnessNotS7(f"{{{p0}, {q0}, {w}}} generates {sorted(S)}")
    return S


def is_cover_preserving(L: PlanarLattice, S) -> bool:
    """Every cover inside the subposet ``S`` is a cover of ``L``."""
    S = sorted(S)
    for a in S:
        for b in S:
            if a == b or not L.leq[a, b] or L.covers(a, b):
                continue
            if not any(c not in (a, b) and L.leq[a, c] and L.leq[c, b] for c in S):
                return False
    return True


RELATIONS = {
    StepKind.UP_PERSP: persp_up,
    StepKind.DOWN_PERSP: persp_dn,
    StepKind.SWING: swing,
    StepKind.PRIME_UP: prime_persp_up,
    StepKind.PRIME_DOWN: prime_persp_dn,
}


def holds(L: PlanarLattice, kind: StepKind, p, q) -> bool:
    return RELATIONS[StepKind(kind)](L, p, q)


def as_prime(L: PlanarLattice, p) -> PrimeInterval:
    b, t = _pair(p)
    if not L.covers(b, t):
        raise ValueError(f"[{L.label(b)}, {L.label(t)}] is not a prime interval")
    return PrimeInterval(b, t)
