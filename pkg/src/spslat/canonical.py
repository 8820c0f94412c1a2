"""Canonical forms for isomorphism dedup.

Two flavours:

* ``diagram_form`` respects the left-to-right cover order.  A diagram
  isomorphism must send the bottom to the bottom and each ordered upper-cover
  list to the corresponding list, so a breadth-first walk from the bottom
  that visits upper covers left to right labels every element canonically.
  The reflection-closed variant takes the smaller encoding of the lattice
  and its mirror image.
* ``order_form`` ignores the planar order.  It uses colour refinement on
  the cover digraph followed by individualisation and backtracking; the
  lexicographically least cover-pair encoding over all leaves is the form.
"""
from __future__ import annotations

import hashlib
from collections import deque

from .lattice import PlanarLattice


def _diagram_walk(L: PlanarLattice) -> bytes:
    label = {L.bottom: 0}
    queue = deque([L.bottom])
    while queue:
        x = queue.popleft()
        for y in L.upper_covers[x]:
            if y not in label:
                label[y] = len(label)
                queue.append(y)
    order = sorted(label, key=label.get)
    parts = []
    for x in order:
        ups = ",".join(str(label[y]) for y in L.upper_covers[x])
        lows = ",".join(str(label[y]) for y in L.lower_covers[x])
        parts.append(f"{ups}/{lows}")
    return f"{L.n}:".encode() + ";".join(parts).encode()


def diagram_form(L: PlanarLattice, reflect: bool = True) -> bytes:
    form = _diagram_walk(L)
    if reflect:
        form = min(form, _diagram_walk(L.mirror()))
    return form


def _refine(L: PlanarLattice, colors: list) -> list[int]:
    """Stable colour refinement; colours are ranks of label-free signatures."""
    colors = _rank(colors)
    while True:
        sigs = [
            (
                colors[x],
                tuple(sorted(colors[c] for c in L.lower_covers[x])),
                tuple(sorted(colors[c] for c in L.upper_covers[x])),
            )
            for x in range(L.n)
        ]
        new = _rank(sigs)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _rank(keys) -> list[int]:
    table = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def _encode(L: PlanarLattice, colors: list[int]) -> tuple:
    return tuple(sorted((colors[a], colors[b]) for a, b in L.cover_pairs()))


def order_form(L: PlanarLattice) -> bytes:
    leq = L.leq
    heights = L.heights()
    init = [
        (
            heights[x],
            len(L.lower_covers[x]),
            len(L.upper_covers[x]),
            int(leq[:, x].sum()),
            int(leq[x, :].sum()),
        )
        for x in range(L.n)
    ]
    best = None

    def search(colors):
        nonlocal best
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        cell = min((c for c, k in counts.items() if k > 1), default=None)
        if cell is None:
            enc = _encode(L, colors)
            if best is None or enc < best:
                best = enc
            return
        for v in range(L.n):
            if colors[v] != cell:
                continue
            split = [(c, 0 if x == v else 1) for x, c in enumerate(colors)]
            search(_refine(L, split))

    search(_refine(L, init))
    return f"{L.n}:".encode() + repr(best).encode()


def canonical_form(L: PlanarLattice, flavor: str = "diagram") -> bytes:
    """``flavor`` is ``"diagram"`` (reflection-closed), ``"oriented"`` or ``"order"``."""
    if flavor == "diagram":
        return diagram_form(L, reflect=True)
    if flavor == "oriented":
        return diagram_form(L, reflect=False)
    if flavor == "order":
        return order_form(L)
    raise ValueError(f"unknown flavor {flavor!r}")


def canonical_id(L: PlanarLattice, flavor: str = "diagram") -> str:
    return hashlib.sha256(canonical_form(L, flavor)).hexdigest()[:16]


def order_isomorphic(K: PlanarLattice, L: PlanarLattice) -> bool:
    return K.n == L.n and order_form(K) == order_form(L)
