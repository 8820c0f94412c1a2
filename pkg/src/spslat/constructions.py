"""Fixture lattices, fork insertion and generation of slim patch lattices."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .canonical import canonical_id, order_isomorphic
from .errors import NotACoveringSquare, NotSPS, TraceStuck, UnknownFixture
from .lattice import PlanarLattice, is_patch_lattice, is_sps
from .relations import is_cover_preserving


# -- fixtures -----------------------------------------------------------------


def B2() -> PlanarLattice:
    # o, a_l, a_r, t
    return PlanarLattice(
        upper_covers=[[1, 2], [3], [3], []],
        lower_covers=[[], [0], [0], [1, 2]],
        labels=["o", "a_l", "a_r", "t"],
    )


def chain(n: int) -> PlanarLattice:
    if n < 1:
        raise UnknownFixture(f"chain length must be positive, got {n}")
    return PlanarLattice(
        upper_covers=[[i + 1] if i + 1 < n else [] for i in range(n)],
        lower_covers=[[i - 1] if i else [] for i in range(n)],
        labels=[f"c{i}" for i in range(n)],
    )


def grid(m: int, n: int) -> PlanarLattice:
    """``C_m × C_n`` drawn as a diamond; the first factor grows to the left."""
    idx = {(i, j): i * n + j for i in range(m) for j in range(n)}
    upper: list[list[int]] = [[] for _ in idx]
    lower: list[list[int]] = [[] for _ in idx]
    for (i, j), x in idx.items():
        if i + 1 < m:
            upper[x].append(idx[i + 1, j])
        if j + 1 < n:
            upper[x].append(idx[i, j + 1])
        if j > 0:
            lower[x].append(idx[i, j - 1])
        if i > 0:
            lower[x].append(idx[i - 1, j])
    labels = [f"({i},{j})" for (i, j) in idx]
    return PlanarLattice(upper, lower, labels)


def N5() -> PlanarLattice:
    # o < u < i and o < v < w < i, u drawn on the left
    return PlanarLattice(
        upper_covers=[[1, 2], [4], [3], [4], []],
        lower_covers=[[], [0], [0], [2], [1, 3]],
        labels=["o", "u", "v", "w", "i"],
    )


def M3() -> PlanarLattice:
    return PlanarLattice(
        upper_covers=[[1, 2, 3], [4], [4], [4], []],
        lower_covers=[[], [0], [0], [0], [1, 2, 3]],
        labels=["0", "a", "b", "c", "1"],
    )


def S7() -> PlanarLattice:
    # ids: o=0, z_l=1, z_r=2, a_l=3, m=4, a_r=5, t=6
    return PlanarLattice(
        upper_covers=[[1, 2], [3, 4], [4, 5], [6], [6], [6], []],
        lower_covers=[[], [0], [0], [1], [1, 2], [2], [3, 4, 5]],
        labels=["o", "z_l", "z_r", "a_l", "m", "a_r", "t"],
    )


S7_SHAPE = S7

_FIXTURES = {"B2": B2, "N5": N5, "M3": M3, "S7": S7}


def fixture(name: str) -> PlanarLattice:
    """Named fixture: ``B2``, ``N5``, ``M3``, ``S7``, ``C<n>``, ``C<m>xC<n>``."""
    if name in _FIXTURES:
        return _FIXTURES[name]()
    if m := re.fullmatch(r"C(\d+)", name):
        return chain(int(m.group(1)))
    if m := re.fullmatch(r"C(\d+)xC(\d+)", name):
        return grid(int(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"B2xC(\d+)", name):
        return grid(2, int(m.group(1)))
    raise UnknownFixture(name)


# -- covering squares and the fork trace --------------------------------------


@dataclass(frozen=True, order=True)
class CoveringSquare:
    o: int
    a_l: int
    a_r: int
    t: int

    def elements(self) -> tuple[int, int, int, int]:
        return (self.o, self.a_l, self.a_r, self.t)


def is_covering_square(L: PlanarLattice, S: CoveringSquare) -> bool:
    o, al, ar, t = S.elements()
    if al == ar:
        return False
    if not (L.covers(o, al) and L.covers(o, ar) and L.covers(al, t) and L.covers(ar, t)):
        return False
    if L.meet(al, ar) != o or L.join(al, ar) != t:
        return False
    lows = L.lower_covers[t]
    return lows.index(al) < lows.index(ar)


def covering_squares(L: PlanarLattice) -> list[CoveringSquare]:
    squares = []
    for t in range(L.n):
        lows = L.lower_covers[t]
        for i, al in enumerate(lows):
            for ar in lows[i + 1:]:
                o = L.meet(al, ar)
                if L.covers(o, al) and L.covers(o, ar):
                    squares.append(CoveringSquare(o, al, ar, t))
    return sorted(squares)


@dataclass
class ForkTrace:
    """Chains ``x_{·,k} ≻ x_{·,k+1}`` and ``y_{·,k} ≻ y_{·,k+1}`` on each side.

    ``y[k] ≺ x[k]`` for every ``k``; index 0 is the square's own edge.  After
    insertion the new element ids are filled into ``m``, ``z_l`` and ``z_r``.
    """

    square: CoveringSquare
    x_l: list[int]
    y_l: list[int]
    x_r: list[int]
    y_r: list[int]
    m: int | None = None
    z_l: list[int] = field(default_factory=list)
    z_r: list[int] = field(default_factory=list)

    @property
    def n_l(self) -> int:
        return len(self.x_l)

    @property
    def n_r(self) -> int:
        return len(self.x_r)

    def grid_elements(self) -> list[int]:
        """``G[S]``: the square together with the four chains."""
        return sorted(set(self.square.elements()) | set(self.x_l + self.y_l + self.x_r + self.y_r))


def _descend(L: PlanarLattice, x: int, y: int, side: int) -> tuple[list[int], list[int]]:
    """Follow the cells below the edge ``[y, x]`` towards one boundary.

    ``side`` is -1 for left, +1 for right.  The next edge is spanned by the
    lower cover of ``x`` next to ``y`` on that side and its meet with ``y``.
    """
    xs, ys = [x], [y]
    boundary = set(L.left_boundary() if side < 0 else L.right_boundary())
    while True:
        lows = L.lower_covers[x]
        k = lows.index(y) + side
        if not 0 <= k < len(lows):
            break
        x2 = lows[k]
        y2 = L.meet(x2, y)
        if not (L.covers(y2, x2) and L.covers(y2, y)):
            raise TraceStuck(f"cell below [{L.label(y)}, {L.label(x)}] is not a covering square")
        x, y = x2, y2
        xs.append(x)
        ys.append(y)
    if x not in boundary or y not in boundary:
        raise TraceStuck(
            f"trace ended at [{L.label(y)}, {L.label(x)}], off the {'left' if side < 0 else 'right'} boundary"
        )
    return xs, ys


def fork_trace(L: PlanarLattice, S: CoveringSquare) -> ForkTrace:
    if not is_covering_square(L, S):
        raise NotACoveringSquare(str(S))
    x_l, y_l = _descend(L, S.a_l, S.o, -1)
    x_r, y_r = _descend(L, S.a_r, S.o, +1)
    return ForkTrace(S, x_l, y_l, x_r, y_r)


def is_join_closed(L: PlanarLattice, elements) -> bool:
    E = set(elements)
    return all(L.join(a, b) in E for a in E for b in E)


def _fresh(labels: list[str], base: str) -> str:
    name = base
    while name in labels:
        name += "'"
    return name


def fork_insert(L: PlanarLattice, S: CoveringSquare, validate: bool = True,
                trace: ForkTrace | None = None) -> PlanarLattice:
    """Insert a fork into ``L`` at the covering square ``S``.

    New elements (appended after the old ids): ``m`` below ``t`` between
    ``a_l`` and ``a_r``, then ``z_l[k]`` subdividing ``y_l[k] ≺ x_l[k]``, then
    ``z_r[k]`` subdividing ``y_r[k] ≺ x_r[k]``.  When ``trace`` is given it is
    filled in with the new ids.
    """
    if validate and not is_sps(L):
        raise NotSPS("fork insertion needs an SPS lattice")
    tr = fork_trace(L, S)
    upper = [list(cs) for cs in L.upper_covers]
    lower = [list(cs) for cs in L.lower_covers]
    labels = list(L.labels)

    def new(base):
        labels.append(_fresh(labels, base))
        upper.append([])
        lower.append([])
        return len(labels) - 1

    m = new("m")
    z_l = [new("z_l" if tr.n_l == 1 else f"z_l{k + 1}") for k in range(tr.n_l)]
    z_r = [new("z_r" if tr.n_r == 1 else f"z_r{k + 1}") for k in range(tr.n_r)]

    t_low = lower[S.t]
    t_low.insert(t_low.index(S.a_l) + 1, m)
    upper[m] = [S.t]
    lower[m] = [z_l[0], z_r[0]]

    # left chain: z sits mid-edge, its lower-left neighbour is the next z down
    for k, (x, y, z) in enumerate(zip(tr.x_l, tr.y_l, z_l)):
        lower[x][lower[x].index(y)] = z
        upper[y][upper[y].index(x)] = z
        lower[z] = ([z_l[k + 1]] if k + 1 < tr.n_l else []) + [y]
        upper[z] = [x, z_l[k - 1] if k else m]
    for k, (x, y, z) in enumerate(zip(tr.x_r, tr.y_r, z_r)):
        lower[x][lower[x].index(y)] = z
        upper[y][upper[y].index(x)] = z
        lower[z] = [y] + ([z_r[k + 1]] if k + 1 < tr.n_r else [])
        upper[z] = [z_r[k - 1] if k else m, x]

    K = PlanarLattice(upper, lower, labels)
    if trace is not None:
        trace.__dict__.update(tr.__dict__, m=m, z_l=z_l, z_r=z_r)
    if validate:
        check_fork_postconditions(L, K, tr, m, z_l, z_r)
    return K


def check_fork_postconditions(L, K, tr: ForkTrace, m, z_l, z_r) -> None:
    """Raise ``AssertionError`` if ``K`` is not the expected fork extension of ``L``."""
    S = tr.square
    assert K.n == L.n + 1 + tr.n_l + tr.n_r
    assert order_isomorphic(K.interval(S.o, S.t), S7()), "[o, t] is not S7"
    for xs, ys, zs in ((tr.x_l, tr.y_l, z_l), (tr.x_r, tr.y_r, z_r)):
        strip = xs + ys + zs
        assert order_isomorphic(K.induced(strip), grid(3, len(xs))), "strip is not C3 x Cn"
        assert is_cover_preserving(K, strip)
    subdivided = set(zip(tr.y_l, tr.x_l)) | set(zip(tr.y_r, tr.x_r))
    for a, b in L.cover_pairs():
        assert K.le(a, b)
        assert K.covers(a, b) == ((a, b) not in subdivided)
    for a in range(L.n):
        for b in range(L.n):
            assert K.join(a, b) == L.join(a, b), "old elements must keep their joins"
    assert is_sps(K), "fork insertion left the SPS class"


# -- generation ---------------------------------------------------------------


@dataclass
class GeneratedLattice:
    lattice: PlanarLattice
    id: str
    depth: int
    parent: str | None = None
    square: CoveringSquare | None = None


def iter_fork_insertions(max_forks: int) -> Iterator[tuple[GeneratedLattice, CoveringSquare, PlanarLattice]]:
    """Yield every ``(parent, square, child)`` along the generation BFS.

    Parents come from the deduplicated frontier of depth ``< max_forks``;
    children are yielded before dedup, so duplicates appear once per path.
    """
    for parent, S, child, _ in _bfs(max_forks):
        if parent is not None:
            yield parent, S, child


def _bfs(max_forks: int):
    root = B2()
    frontier = [GeneratedLattice(root, canonical_id(root), 0)]
    seen = {frontier[0].id}
    yield None, None, None, frontier[0]
    for depth in range(1, max_forks + 1):
        nxt = []
        for g in frontier:
            for S in covering_squares(g.lattice):
                child = fork_insert(g.lattice, S)
                cid = canonical_id(child)
                new = None
                if cid not in seen:
                    seen.add(cid)
                    new = GeneratedLattice(child, cid, depth, g.id, S)
                    nxt.append(new)
                yield g, S, child, new
        frontier = nxt


def generate_patch_lattices(max_forks: int, with_meta: bool = False):
    """All slim patch lattices reachable from B2 by at most ``max_forks`` fork insertions.

    Deduplicated by diagram isomorphism up to reflection, in BFS order.
    """
    out = [g for *_, g in _bfs(max_forks) if g is not None]
    for g in out:
        assert is_patch_lattice(g.lattice), f"generated lattice {g.id} is not a patch lattice"
    return out if with_meta else [g.lattice for g in out]
