"""Finite lattices with a left-to-right order on every cover list.

Elements are dense integer ids ``0..n-1``.  A :class:`PlanarLattice` stores,
for each element, its lower and upper covers ordered from left to right; the
order relation and the meet/join tables are derived once at construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BottomHasNoCovers,
    InconsistentOrder,
    NoBottomOrTop,
    NotALattice,
    NotAPoset,
    NotComparable,
)


@dataclass(frozen=True, order=True)
class Interval:
    bottom: int
    top: int


@dataclass(frozen=True, order=True)
class PrimeInterval:
    """A cover ``bottom < top``; ordering is lexicographic on the pair."""

    bottom: int
    top: int

    def as_interval(self) -> Interval:
        return Interval(self.bottom, self.top)


class PlanarLattice:
    """Immutable finite lattice given by ordered cover lists.

    Attributes
    ----------
    n : int
        number of elements
    labels : tuple of str
    lower_covers, upper_covers : tuple of tuples
        per-element cover lists, left to right
    leq : ndarray of bool, shape (n, n)
        ``leq[x, y]`` iff ``x <= y``
    meet_table, join_table : ndarray of int, shape (n, n)
    bottom, top : int
    """

    def __init__(
        self,
        upper_covers: Sequence[Sequence[int]],
        lower_covers: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
    ):
        n = len(upper_covers)
        if len(lower_covers) != n:
            raise InconsistentOrder("upper and lower cover lists differ in length")
        if n == 0:
            raise NoBottomOrTop("empty poset")
        self.n = n
        self.upper_covers = tuple(tuple(int(c) for c in cs) for cs in upper_covers)
        self.lower_covers = tuple(tuple(int(c) for c in cs) for cs in lower_covers)
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise InconsistentOrder("label count does not match element count")
        self.labels = tuple(str(s) for s in labels)
        self._label_index = {s: i for i, s in enumerate(self.labels)}

        self._check_cover_lists()
        self.topological_order = self._topological_order()
        self.leq = self._order_matrix()
        self._find_bounds()
        self.meet_table = self._bound_table(lower=True)
        self.join_table = self._bound_table(lower=False)
        self.meet_table.setflags(write=False)
        self.join_table.setflags(write=False)
        self.leq.setflags(write=False)

    # -- construction helpers -------------------------------------------------

    def _check_cover_lists(self):
        n = self.n
        for x in range(n):
            for lst, name in ((self.upper_covers[x], "upper"), (self.lower_covers[x], "lower")):
                if len(set(lst)) != len(lst):
                    raise InconsistentOrder(f"duplicate entry in {name} covers of {x}")
                for c in lst:
                    if not 0 <= c < n:
                        raise InconsistentOrder(f"cover id {c} out of range")
                    if c == x:
                        raise NotAPoset(f"element {x} covers itself")
        for x in range(n):
            for y in self.upper_covers[x]:
                if x not in self.lower_covers[y]:
                    raise InconsistentOrder(f"{y} in upper_covers({x}) but {x} not in lower_covers({y})")
            for y in self.lower_covers[x]:
                if x not in self.upper_covers[y]:
                    raise InconsistentOrder(f"{y} in lower_covers({x}) but {x} not in upper_covers({y})")

    def _topological_order(self) -> tuple[int, ...]:
        ts = TopologicalSorter({x: self.lower_covers[x] for x in range(self.n)})
        try:
            return tuple(ts.static_order())
        except CycleError as exc:
            raise NotAPoset(f"cover relation has a cycle: {exc.args[1]}") from None

    def _order_matrix(self) -> np.ndarray:
        n = self.n
        below = np.zeros((n, n), dtype=bool)  # below[y] = down-set of y
        for y in self.topological_order:
            row = below[y]
            row[y] = True
            for c in self.lower_covers[y]:
                row |= below[c]
        return below.T.copy()

    def _find_bounds(self):
        mins = [x for x in range(self.n) if not self.lower_covers[x]]
        maxs = [x for x in range(self.n) if not self.upper_covers[x]]
        if len(mins) != 1 or len(maxs) != 1:
            raise NoBottomOrTop(f"{len(mins)} minimal and {len(maxs)} maximal elements")
        self.bottom = mins[0]
        self.top = maxs[0]

    def _bound_table(self, lower: bool) -> np.ndarray:
        n = self.n
        leq = self.leq if lower else self.leq.T
        # leq[:, x] is the set of elements below x (above x when transposed)
        downsize = leq.sum(axis=0)
        table = np.empty((n, n), dtype=np.int64)
        for x in range(n):
            table[x, x] = x
            for y in range(x + 1, n):
                common = np.flatnonzero(leq[:, x] & leq[:, y])
                if common.size == 0:
                    raise NotALattice(f"{self.labels[x]}, {self.labels[y]} have no common bound")
                c = common[np.argmax(downsize[common])]
                if not leq[common, c].all():
                    kind = "meet" if lower else "join"
                    raise NotALattice(f"{self.labels[x]}, {self.labels[y]} have no {kind}")
                table[x, y] = table[y, x] = c
        return table

    # -- basic queries --------------------------------------------------------

    def __repr__(self):
        return f"PlanarLattice(n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, PlanarLattice):
            return NotImplemented
        return (
            self.upper_covers == other.upper_covers
            and self.lower_covers == other.lower_covers
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.upper_covers, self.lower_covers, self.labels))

    def index(self, ref: int | str) -> int:
        """Element id for a label, falling back to a numeric index."""
        if isinstance(ref, str):
            if ref in self._label_index:
                return self._label_index[ref]
            try:
                ref = int(ref)
            except ValueError:
                raise KeyError(f"no element labelled {ref!r}") from None
        if not 0 <= ref < self.n:
            raise KeyError(f"element id {ref} out of range")
        return int(ref)

    def label(self, x: int) -> str:
        return self.labels[x]

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.leq[x, y])

    def comparable(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y] or self.leq[y, x])

    def covers(self, x: int, y: int) -> bool:
        """True iff ``y`` covers ``x``."""
        return y in self.upper_covers[x]

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def meet_all(self, xs: Iterable[int]) -> int:
        r = self.top
        for x in xs:
            r = self.meet(r, x)
        return r

    def join_all(self, xs: Iterable[int]) -> int:
        r = self.bottom
        for x in xs:
            r = self.join(r, x)
        return r

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in self.upper_covers[x]]

    def heights(self) -> list[int]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.n
        for y in self.topological_order:
            for c in self.lower_covers[y]:
                h[y] = max(h[y], h[c] + 1)
        return h

    # -- planar order ---------------------------------------------------------

    def leftmost_lower_cover(self, x: int) -> int:
        if not self.lower_covers[x]:
            raise BottomHasNoCovers(f"{self.labels[x]} has no lower covers")
        return self.lower_covers[x][0]

    def rightmost_lower_cover(self, x: int) -> int:
        if not self.lower_covers[x]:
            raise BottomHasNoCovers(f"{self.labels[x]} has no lower covers")
        return self.lower_covers[x][-1]

    def _boundary_up(self, side: int) -> list[int]:
        chain = [self.bottom]
        while self.upper_covers[chain[-1]]:
            chain.append(self.upper_covers[chain[-1]][side])
        return chain

    def _boundary_down(self, side: int) -> list[int]:
        chain = [self.top]
        while self.lower_covers[chain[-1]]:
            chain.append(self.lower_covers[chain[-1]][side])
        return chain[::-1]

    def left_boundary(self) -> list[int]:
        """Chain of left-most upper covers from the bottom to the top."""
        return self._boundary_up(0)

    def right_boundary(self) -> list[int]:
        return self._boundary_up(-1)

    def has_planar_order(self) -> bool:
        """Necessary conditions for the cover lists to describe a planar diagram.

        The left boundary climbed via left-most upper covers must coincide
        with the one descended via left-most lower covers, and likewise on
        the right.
        """
        return (
            self._boundary_up(0) == self._boundary_down(0)
            and self._boundary_up(-1) == self._boundary_down(-1)
        )

    def mirror(self) -> "PlanarLattice":
        """Left-right reflection of the diagram."""
        return PlanarLattice(
            [cs[::-1] for cs in self.upper_covers],
            [cs[::-1] for cs in self.lower_covers],
            self.labels,
        )

    def dual(self) -> "PlanarLattice":
        """Order dual; keeps left-right orientation."""
        return PlanarLattice(self.lower_covers, self.upper_covers, self.labels)

    # -- intervals ------------------------------------------------------------

    def prime_intervals(self) -> list[PrimeInterval]:
        return sorted(PrimeInterval(x, y) for x, y in self.cover_pairs())

    def interval_elements(self, a: int, b: int) -> list[int]:
        if not self.leq[a, b]:
            raise NotComparable(f"{self.labels[a]} is not below {self.labels[b]}")
        return [x for x in range(self.n) if self.leq[a, x] and self.leq[x, b]]

    def induced(self, elements: Iterable[int]) -> "PlanarLattice":
        """Restrict to a subset, keeping the induced cover relation.

        Cover lists keep the parent's left-to-right order where the parent
        covers survive; extra covers (pairs that are covers only inside the
        subset) are appended in id order.  The result carries the original
        ids in ``origin``.
        """
        elems = sorted(set(elements))
        pos = {x: i for i, x in enumerate(elems)}
        sub = self.leq[np.ix_(elems, elems)]
        k = len(elems)
        ucov: list[list[int]] = [[] for _ in range(k)]
        lcov: list[list[int]] = [[] for _ in range(k)]
        for i in range(k):
            for j in range(k):
                if i == j or not sub[i, j]:
                    continue
                if any(sub[i, t] and sub[t, j] for t in range(k) if t not in (i, j)):
                    continue
                ucov[i].append(j)
                lcov[j].append(i)
        def order(lst, parent_list):
            ordered = [pos[c] for c in parent_list if c in pos and pos[c] in lst]
            rest = [c for c in lst if c not in ordered]
            return ordered + sorted(rest)

        ucov = [order(ucov[i], self.upper_covers[elems[i]]) for i in range(k)]
        lcov = [order(lcov[i], self.lower_covers[elems[i]]) for i in range(k)]
        L = PlanarLattice(ucov, lcov, [self.labels[x] for x in elems])
        L.origin = tuple(elems)
        return L

    def interval(self, a: int, b: int) -> "PlanarLattice":
        """The interval ``[a, b]`` as a lattice of its own (see ``induced``)."""
        return self.induced(self.interval_elements(a, b))

    def length(self, a: int, b: int) -> int:
        """Number of covers in a maximal chain of ``[a, b]`` by greedy descent."""
        if not self.leq[a, b]:
            raise NotComparable(f"{self.labels[a]} is not below {self.labels[b]}")
        steps = 0
        x = b
        while x != a:
            x = next(c for c in self.lower_covers[x] if self.leq[a, c])
            steps += 1
        return steps


def build(
    upper_covers: Sequence[Sequence[int]],
    lower_covers: Sequence[Sequence[int]] | None = None,
    labels: Sequence[str] | None = None,
) -> PlanarLattice:
    """Build and validate a lattice from ordered cover lists.

    When ``lower_covers`` is omitted it is derived from ``upper_covers``,
    ordering each lower-cover list by element id.
    """
    if lower_covers is None:
        n = len(upper_covers)
        lower: list[list[int]] = [[] for _ in range(n)]
        for x, ups in enumerate(upper_covers):
            for y in ups:
                if not 0 <= y < n:
                    raise InconsistentOrder(f"cover id {y} out of range")
                lower[y].append(x)
        lower_covers = lower
    return PlanarLattice(upper_covers, lower_covers, labels)


def from_cover_pairs(n: int, pairs: Iterable[tuple[int, int]], labels=None) -> PlanarLattice:
    """Build from ``(lower, upper)`` pairs; list order follows pair order."""
    upper: list[list[int]] = [[] for _ in range(n)]
    lower: list[list[int]] = [[] for _ in range(n)]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise InconsistentOrder(f"cover ({a}, {b}) out of range")
        upper[a].append(b)
        lower[b].append(a)
    return PlanarLattice(upper, lower, labels)


# -- structural predicates ----------------------------------------------------


def is_semimodular(L: PlanarLattice) -> bool:
    """Upper semimodularity: ``a ∧ b ≺ a`` implies ``b ≺ a ∨ b``."""
    for a in range(L.n):
        for b in range(L.n):
            if L.covers(L.meet(a, b), a) and not L.covers(b, L.join(a, b)):
                return False
    return True


def find_m3(L: PlanarLattice) -> tuple[int, int, int] | None:
    """Three pairwise incomparable elements with common pairwise meets and joins."""
    leq, M, J = L.leq, L.meet_table, L.join_table
    incomp = ~(leq | leq.T)
    for x in range(L.n):
        for y in range(x + 1, L.n):
            if not incomp[x, y]:
                continue
            m, j = M[x, y], J[x, y]
            cand = (
                incomp[x] & incomp[y]
                & (M[x] == m) & (M[y] == m)
                & (J[x] == j) & (J[y] == j)
            )
            cand[: y + 1] = False
            hits = np.flatnonzero(cand)
            if hits.size:
                return x, y, int(hits[0])
    return None


def is_slim(L: PlanarLattice) -> bool:
    return find_m3(L) is None


def is_sps(L: PlanarLattice) -> bool:
    return L.has_planar_order() and is_semimodular(L) and is_slim(L)


def is_patch_lattice(L: PlanarLattice, strict: bool = False) -> bool:
    """Slim patch lattice test.

    Default: SPS, and the left-most and right-most lower covers of the top
    are distinct and meet in the bottom.  With ``strict=True`` the top must
    also have exactly two lower covers.
    """
    top_lower = L.lower_covers[L.top]
    if len(top_lower) < 2 or (strict and len(top_lower) != 2):
        return False
    if L.meet(top_lower[0], top_lower[-1]) != L.bottom:
        return False
    return is_sps(L)
