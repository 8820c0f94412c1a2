"""Congruence closure and the order of join-irreducible congruences.

This is the brute-force side of every Swing-Lemma check: ``con(a, b)`` is
computed by closing the pair under meet/join substitution with a union-find,
without any reference to perspectivities.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .lattice import PlanarLattice, PrimeInterval


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class Congruence:
    """Partition of the element set; ``block_of[x]`` is the least id in x's block."""

    block_of: tuple[int, ...]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Congruence":
        rep = list(range(n))
        for block in blocks:
            block = list(block)
            low = min(block)
            for x in block:
                rep[x] = low
        return cls(tuple(rep))

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.block_of)

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.block_of):
            out.setdefault(r, []).append(x)
        return [out[r] for r in sorted(out)]

    def same(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def collapses(self, q) -> bool:
        b, t = (q.bottom, q.top) if not isinstance(q, tuple) else q
        return self.same(b, t)

    def __le__(self, other: "Congruence") -> bool:
        """Refinement: every block of ``self`` lies inside a block of ``other``."""
        return all(other.block_of[x] == other.block_of[r] for x, r in enumerate(self.block_of))

    def __lt__(self, other: "Congruence") -> bool:
        return self != other and self <= other

    def join(self, other: "Congruence") -> "Congruence":
        uf = _UnionFind(self.n)
        for x in range(self.n):
            uf.union(x, self.block_of[x])
            uf.union(x, other.block_of[x])
        return Congruence(tuple(uf.find(x) for x in range(self.n)))

    def is_congruence_of(self, L: PlanarLattice) -> bool:
        """Substitution property, checked over every related pair and every element."""
        rep = np.array(self.block_of)
        M, J = L.meet_table, L.join_table
        for block in self.blocks():
            for a in block:
                for b in block:
                    if a < b and not (
                        np.array_equal(rep[M[a]], rep[M[b]]) and np.array_equal(rep[J[a]], rep[J[b]])
                    ):
                        return False
        return True

    def format(self, L: PlanarLattice) -> str:
        return " | ".join("{" + ", ".join(L.label(x) for x in b) + "}" for b in self.blocks())


def principal_congruence(L: PlanarLattice, a: int, b: int) -> Congruence:
    """Smallest congruence identifying ``a`` and ``b``.

    Work queue of merged pairs; each merge of ``(x, y)`` enqueues
    ``(x∧c, y∧c)`` and ``(x∨c, y∨c)`` for every ``c``.
    """
    uf = _UnionFind(L.n)
    M, J = L.meet_table, L.join_table
    queue = deque([(a, b)])
    while queue:
        x, y = queue.popleft()
        if not uf.union(x, y):
            continue
        for c in range(L.n):
            queue.append((int(M[x, c]), int(M[y, c])))
            queue.append((int(J[x, c]), int(J[y, c])))
    return Congruence(tuple(uf.find(x) for x in range(L.n)))


def con(L: PlanarLattice, p) -> Congruence:
    b, t = (p.bottom, p.top) if not isinstance(p, tuple) else p
    return principal_congruence(L, b, t)


def collapses(theta: Congruence, q) -> bool:
    return theta.collapses(q)


@dataclass
class JiConOrder:
    """``J(Con L)``: join-irreducible congruences ordered by refinement.

    ``generators[i]`` is the least prime interval generating ``congruences[i]``;
    ``leq[i, j]`` means ``congruences[i] <= congruences[j]``; ``covers`` holds
    pairs ``(i, j)`` with ``j`` covering ``i``.
    """

    generators: list[PrimeInterval]
    congruences: list[Congruence]
    leq: np.ndarray
    covers: list[tuple[int, int]]

    def __len__(self):
        return len(self.generators)

    def upper_cover_counts(self) -> list[int]:
        counts = [0] * len(self)
        for i, _ in self.covers:
            counts[i] += 1
        return counts


def prime_congruences(L: PlanarLattice) -> dict[PrimeInterval, Congruence]:
    return {p: con(L, p) for p in L.prime_intervals()}


def join_irreducible_congruences(L: PlanarLattice, principal=None) -> JiConOrder:
    principal = principal or prime_congruences(L)
    gens: dict[Congruence, PrimeInterval] = {}
    for p in sorted(principal):
        gens.setdefault(principal[p], p)
    distinct = list(gens)
    bottom = Congruence.identity(L.n)
    ji = []
    for theta in distinct:
        below = bottom
        for phi in distinct:
            if phi < theta:
                below = below.join(phi)
        if below != theta:
            ji.append(theta)
    ji.sort(key=lambda th: gens[th])
    k = len(ji)
    leq = np.array([[ji[i] <= ji[j] for j in range(k)] for i in range(k)], dtype=bool).reshape(k, k)
    covers = [
        (i, j)
        for i in range(k)
        for j in range(k)
        if i != j and leq[i, j] and not any(leq[i, c] and leq[c, j] for c in range(k) if c not in (i, j))
    ]
    return JiConOrder([gens[th] for th in ji], ji, leq, covers)


def two_cover_property(L: PlanarLattice, order: JiConOrder | None = None) -> bool:
    order = order or join_irreducible_congruences(L)
    return max(order.upper_cover_counts(), default=0) <= 2


def all_congruences(L: PlanarLattice) -> list[Congruence]:
    """Every congruence of ``L``, as joins of prime-generated ones (slow path)."""
    found = {Congruence.identity(L.n)}
    for theta in set(prime_congruences(L).values()):
        found |= {phi.join(theta) for phi in found}
    return sorted(found, key=lambda th: (len(th.blocks()) * -1, th.block_of))
