"""Witness search for congruence spreading and lemma verification.

``find_swing_sequence`` searches for sequences of the form
``p ↗ r ↘/↻ ... ↘/↻ q`` (one optional leading up-perspectivity, then
down-perspectivities and swings); ``find_prime_projectivity`` searches
prime-perspectivity chains.  The ``verify_*`` functions compare witness
existence with the congruence-closure oracle for every ordered pair of
distinct prime intervals.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field

from . import relations as rel
from .congruence import JiConOrder, join_irreducible_congruences, prime_congruences
from .constructions import (
    B2,
    covering_squares,
    fork_insert,
    fork_trace,
    is_join_closed,
    grid,
)
from .canonical import order_isomorphic
from .errors import NotAWitness, WitnessNotS7
from .lattice import PlanarLattice, PrimeInterval, is_patch_lattice
from .relations import StepKind


@dataclass(frozen=True)
class StepSequence:
    intervals: tuple[PrimeInterval, ...]
    steps: tuple[StepKind, ...]

    def __post_init__(self):
        if len(self.steps) != max(len(self.intervals) - 1, 0):
            raise ValueError("need exactly one step between consecutive intervals")

    def __len__(self):
        return len(self.steps)

    def format(self, L: PlanarLattice) -> str:
        def show(p):
            return f"[{L.label(p.bottom)},{L.label(p.top)}]"

        parts = [show(self.intervals[0])]
        for kind, p in zip(self.steps, self.intervals[1:]):
            parts.append(f"{rel.SYMBOLS[kind]} {show(p)}")
        return " ".join(parts)

    def to_json(self, L: PlanarLattice) -> dict:
        return {
            "intervals": [[L.label(p.bottom), L.label(p.top)] for p in self.intervals],
            "steps": [str(k) for k in self.steps],
        }


# -- relation graphs ----------------------------------------------------------


class RelationGraph:
    """Adjacency lists over the prime intervals of one lattice.

    Neighbours are sorted by prime index, so BFS returns the lexicographically
    least shortest path.
    """

    def __init__(self, L: PlanarLattice):
        self.L = L
        self.primes = L.prime_intervals()
        self.index = {p: i for i, p in enumerate(self.primes)}
        P = self.primes
        k = len(P)
        self.up = [[j for j in range(k) if j != i and rel.persp_up(L, P[i], P[j])] for i in range(k)]
        self.down = [[j for j in range(k) if j != i and rel.persp_dn(L, P[i], P[j])] for i in range(k)]
        self.swing = [[j for j in range(k) if j != i and rel.swing(L, P[i], P[j])] for i in range(k)]
        self.prime_up = [[j for j in range(k) if j != i and rel.prime_persp_up(L, P[i], P[j])] for i in range(k)]
        self.prime_down = [[j for j in range(k) if j != i and rel.prime_persp_dn(L, P[i], P[j])] for i in range(k)]

    def _merge(self, i, tables):
        edges = [(j, kind) for kind, table in tables for j in table[i]]
        edges.sort(key=lambda e: e[0])
        return edges

    def swing_edges(self, i, first: bool):
        tables = [(StepKind.DOWN_PERSP, self.down), (StepKind.SWING, self.swing)]
        if first:
            tables.append((StepKind.UP_PERSP, self.up))
        return self._merge(i, tables)

    def pproj_edges(self, i, first: bool = False):
        # a pair can be both PrimeUp and PrimeDown only for equal tops; prefer PrimeDown
        edges = self._merge(i, [(StepKind.PRIME_DOWN, self.prime_down), (StepKind.PRIME_UP, self.prime_up)])
        out, seen = [], set()
        for j, kind in edges:
            if j not in seen:
                seen.add(j)
                out.append((j, kind))
        return out


def _bfs(graph: RelationGraph, source: int, edges) -> dict[int, tuple[int, StepKind] | None]:
    parent: dict[int, tuple[int, StepKind] | None] = {source: None}
    queue = deque([source])
    while queue:
        i = queue.popleft()
        for j, kind in edges(i, i == source):
            if j not in parent:
                parent[j] = (i, kind)
                queue.append(j)
    return parent


def _path(graph: RelationGraph, parent, target: int) -> StepSequence:
    idx, kinds = [target], []
    while parent[idx[-1]] is not None:
        i, kind = parent[idx[-1]]
        idx.append(i)
        kinds.append(kind)
    idx.reverse()
    kinds.reverse()
    return StepSequence(tuple(graph.primes[i] for i in idx), tuple(kinds))


def swing_reachable(graph: RelationGraph, p: PrimeInterval):
    """BFS parents for all primes reachable from ``p`` by a Swing-Lemma sequence."""
    return _bfs(graph, graph.index[p], graph.swing_edges)


def find_swing_sequence(L: PlanarLattice, p, q, graph: RelationGraph | None = None) -> StepSequence | None:
    """Shortest ``p ↗ r (↘|↻)* q`` witness, or ``None``.

    The up-perspectivity is a single optional first step (``r = p`` allowed).
    """
    graph = graph or RelationGraph(L)
    p, q = rel.as_prime(L, p), rel.as_prime(L, q)
    parent = swing_reachable(graph, p)
    j = graph.index[q]
    return _path(graph, parent, j) if j in parent else None


def find_prime_projectivity(L: PlanarLattice, p, q, graph: RelationGraph | None = None) -> StepSequence | None:
    graph = graph or RelationGraph(L)
    p, q = rel.as_prime(L, p), rel.as_prime(L, q)
    parent = _bfs(graph, graph.index[p], graph.pproj_edges)
    j = graph.index[q]
    return _path(graph, parent, j) if j in parent else None


def find_down_swing_sequence(L: PlanarLattice, p, q, graph: RelationGraph | None = None) -> StepSequence | None:
    """Like :func:`find_swing_sequence` but without the leading up-perspectivity."""
    graph = graph or RelationGraph(L)
    parent = _bfs(graph, graph.index[p], lambda i, first: graph.swing_edges(i, False))
    j = graph.index[q]
    return _path(graph, parent, j) if j in parent else None


# -- witness validation -------------------------------------------------------


def witness_problems(L: PlanarLattice, seq: StepSequence, kind: str = "swing") -> list[str]:
    """Independent re-check of a witness using only the relation predicates.

    ``kind`` is ``"swing"`` (shape and monotone tops) or ``"pproj"``.
    """
    problems = []
    for i, (a, step, b) in enumerate(zip(seq.intervals, seq.steps, seq.intervals[1:])):
        if a == b:
            problems.append(f"step {i}: repeated interval")
        if not rel.holds(L, step, a, b):
            problems.append(f"step {i}: {step} does not hold")
    if kind == "swing":
        allowed = {StepKind.DOWN_PERSP, StepKind.SWING}
        for i, step in enumerate(seq.steps):
            if step not in allowed and not (i == 0 and step is StepKind.UP_PERSP):
                problems.append(f"step {i}: {step} not allowed here")
        start = 1 if seq.steps and seq.steps[0] is StepKind.UP_PERSP else 0
        tops = [r.top for r in seq.intervals[start:]]
        for a, b in zip(tops, tops[1:]):
            if not L.le(b, a):
                problems.append("tops are not weakly decreasing")
                break
    elif kind == "pproj":
        if len(set(seq.intervals)) != len(seq.intervals):
            problems.append("intervals are not pairwise distinct")
        for i, step in enumerate(seq.steps):
            if step not in (StepKind.PRIME_UP, StepKind.PRIME_DOWN):
                problems.append(f"step {i}: {step} not a prime-perspectivity")
    return problems


def normal_form_problems(seq: StepSequence) -> list[str]:
    problems = []
    if len(set(seq.intervals)) != len(seq.intervals):
        problems.append("intervals are not pairwise distinct")
    for i, (a, b) in enumerate(zip(seq.steps, seq.steps[1:])):
        if a == b and a in (StepKind.DOWN_PERSP, StepKind.SWING):
            problems.append(f"steps {i},{i + 1}: consecutive {a}")
    if StepKind.UP_PERSP in seq.steps[1:]:
        problems.append("up-perspectivity after the first step")
    return problems


def normalize_witness(L: PlanarLattice, seq: StepSequence, graph: RelationGraph | None = None) -> StepSequence:
    """Shortest witness between the same endpoints, checked for normal form."""
    bad = witness_problems(L, seq)
    if bad or not seq.intervals:
        raise NotAWitness("; ".join(bad) or "empty sequence")
    best = find_swing_sequence(L, seq.intervals[0], seq.intervals[-1], graph)
    assert best is not None and len(best) <= len(seq)
    problems = normal_form_problems(best)
    assert not problems, problems
    return best


# -- reports ------------------------------------------------------------------


@dataclass
class Report:
    name: str
    lattice: str = ""
    checked: int = 0
    discrepancies: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def fail(self, **entry):
        self.discrepancies.append(entry)

    def merge(self, other: "Report") -> "Report":
        out = Report(self.name, self.lattice, self.checked + other.checked,
                     self.discrepancies + other.discrepancies, dict(self.notes))
        for k, v in other.notes.items():
            out.notes[k] = out.notes.get(k, 0) + v if isinstance(v, int) else v
        return out

    def summary(self) -> dict:
        return {
            "check": self.name,
            "lattice": self.lattice,
            "checked": self.checked,
            "discrepancies": len(self.discrepancies),
            **({"notes": self.notes} if self.notes else {}),
        }

    def jsonl(self) -> str:
        lines = [json.dumps(self.summary(), sort_keys=True, ensure_ascii=False)]
        for d in self.discrepancies:
            lines.append(json.dumps({"check": self.name, "lattice": self.lattice, **d},
                                    sort_keys=True, ensure_ascii=False))
        return "\n".join(lines)


def _show(L, p):
    return [L.label(p.bottom), L.label(p.top)]


def verify_swing_lemma(L: PlanarLattice, name: str = "", principal=None, graph=None) -> Report:
    """Oracle collapse ⟺ Swing-Lemma witness, for all ordered pairs of distinct primes.

    Every witness is also re-validated and normal-form checked.
    """
    report = Report("swing", name)
    graph = graph or RelationGraph(L)
    principal = principal or prime_congruences(L)
    for p in graph.primes:
        parent = swing_reachable(graph, p)
        theta = principal[p]
        for q in graph.primes:
            if q == p:
                continue
            report.checked += 1
            j = graph.index[q]
            found = j in parent
            if theta.collapses(q) != found:
                report.fail(p=_show(L, p), q=_show(L, q), oracle=theta.collapses(q), witness=found)
                continue
            if found:
                seq = _path(graph, parent, j)
                bad = witness_problems(L, seq, "swing") + normal_form_problems(seq)
                if bad:
                    report.fail(p=_show(L, p), q=_show(L, q), witness=seq.to_json(L), problems=bad)
    return report


def verify_prime_projectivity_lemma(L: PlanarLattice, name: str = "", principal=None, graph=None) -> Report:
    report = Report("pproj", name)
    graph = graph or RelationGraph(L)
    principal = principal or prime_congruences(L)
    for p in graph.primes:
        parent = _bfs(graph, graph.index[p], graph.pproj_edges)
        theta = principal[p]
        for q in graph.primes:
            if q == p:
                continue
            report.checked += 1
            j = graph.index[q]
            found = j in parent
            if theta.collapses(q) != found:
                report.fail(p=_show(L, p), q=_show(L, q), oracle=theta.collapses(q), witness=found)
            elif found:
                bad = witness_problems(L, _path(graph, parent, j), "pproj")
                if bad:
                    report.fail(p=_show(L, p), q=_show(L, q), problems=bad)
    return report


# -- lemma suite --------------------------------------------------------------


def check_at_most_two_upper_covers(L, report):
    for x in range(L.n):
        report.checked += 1
        if len(L.upper_covers[x]) > 2:
            report.fail(lemma="2(i)", element=L.label(x), upper_covers=len(L.upper_covers[x]))


def check_disjoint_triples(L, report):
    """Elements pairwise disjoint over ``a`` include a comparable pair."""
    M = L.meet_table
    for u, v, w in itertools.combinations(range(L.n), 3):
        a = M[u, v]
        if M[v, w] != a or M[w, u] != a:
            continue
        report.checked += 1
        if not (L.comparable(u, v) or L.comparable(v, w) or L.comparable(u, w)):
            report.fail(lemma="2(ii)", elements=[L.label(u), L.label(v), L.label(w)])


def check_triple_covers(L, report):
    """Three lower covers of one element generate S7; cover-preserving when adjacent."""
    from .constructions import S7

    s7 = S7()
    for x in range(L.n):
        lows = L.lower_covers[x]
        for i, j, k in itertools.combinations(range(len(lows)), 3):
            report.checked += 1
            gens = (lows[i], lows[j], lows[k])
            S = rel.generated_sublattice(L, gens)
            if not (len(S) == 7 and order_isomorphic(L.induced(S), s7)):
                report.fail(lemma="2(iii)", top=L.label(x), generators=[L.label(g) for g in gens])
            elif k - i == 2:
                if not rel.is_cover_preserving(L, S):
                    report.fail(lemma="2(iv)", top=L.label(x), generators=[L.label(g) for g in gens])
                if not _upper_cells_are_covers(L, x, gens):
                    report.fail(lemma="2(iv) upper cells", top=L.label(x), generators=[L.label(g) for g in gens])


def _upper_cells_are_covers(L, x, gens) -> bool:
    """The two cells just below ``x`` spanned by adjacent lower covers consist of covers."""
    u, v, w = gens
    a, b = L.meet(u, v), L.meet(v, w)
    return all(L.covers(*c) for c in ((a, u), (a, v), (b, v), (b, w)))


def check_swing_targets(L, graph, report):
    for i, p in enumerate(graph.primes):
        for j in graph.swing[i]:
            q = graph.primes[j]
            report.checked += 1
            if len(L.upper_covers[q.bottom]) != 1:
                report.fail(lemma="2(v)", p=_show(L, p), q=_show(L, q))
            try:
                rel.swing_witness(L, p, q)
            except WitnessNotS7 as exc:
                report.fail(lemma="swing-witness", p=_show(L, p), q=_show(L, q), error=str(exc))


def check_common_down_target(L, graph, report):
    """Two distinct primes down-perspective to the same prime are perspective."""
    k = len(graph.primes)
    sources = [[] for _ in range(k)]
    for i in range(k):
        for j in graph.down[i]:
            sources[j].append(i)
    for j, srcs in enumerate(sources):
        for a, b in itertools.combinations(srcs, 2):
            report.checked += 1
            if not rel.persp(L, graph.primes[a], graph.primes[b]):
                report.fail(lemma="3", q=_show(L, graph.primes[j]),
                            q1=_show(L, graph.primes[a]), q2=_show(L, graph.primes[b]))


def n5_sublattices(L):
    """All ``(o, u, i, v, w)`` forming N5 with ``o < u < i``, ``o < v < w < i`` and ``v ≺ w``."""
    M, J = L.meet_table, L.join_table
    for v, w in L.cover_pairs():
        for u in range(L.n):
            if L.comparable(u, v) or L.comparable(u, w):
                continue
            o, i = M[u, v], J[u, v]
            if M[u, w] == o and J[u, w] == i:
                yield int(o), u, int(i), v, w


def check_n5_meets(L, report):
    for o, u, i, v, w in n5_sublattices(L):
        for x in L.lower_covers[i]:
            if not L.le(u, x):
                continue
            report.checked += 1
            y = L.meet(x, w)
            if not L.lt(y, v):
                report.fail(lemma="4", N5=[L.label(e) for e in (o, u, i, v, w)], x=L.label(x))


def check_fork_grids(L, report):
    """G[S] is join-closed and its covers are covers of L, for every covering square."""
    for S in covering_squares(L):
        report.checked += 1
        tr = fork_trace(L, S)
        G = tr.grid_elements()
        if not is_join_closed(L, G):
            report.fail(lemma="1", square=[L.label(e) for e in S.elements()], issue="G[S] not join-closed")
        if not rel.is_cover_preserving(L, G):
            report.fail(lemma="1", square=[L.label(e) for e in S.elements()], issue="covers not preserved")
        for xs, ys in ((tr.x_l, tr.y_l), (tr.x_r, tr.y_r)):
            if not order_isomorphic(L.induced(xs + ys), grid(2, len(xs))):
                report.fail(lemma="1", square=[L.label(e) for e in S.elements()], issue="strip is not C2 x Cn")
            if L.interval_elements(ys[-1], xs[0]) != sorted(xs + ys):
                report.notes["interval_wider_than_strip"] = report.notes.get("interval_wider_than_strip", 0) + 1


def lower_right_boundary_primes(L: PlanarLattice) -> list[PrimeInterval]:
    c_r = L.rightmost_lower_cover(L.top)
    return [p for p in L.prime_intervals() if L.le(p.top, c_r)]


def sl_failures(L: PlanarLattice, graph: RelationGraph | None = None) -> list[PrimeInterval]:
    """Lower-right boundary primes not reachable from ``[c_l, 1]`` by ↘/↻ steps."""
    graph = graph or RelationGraph(L)
    p_l = PrimeInterval(L.leftmost_lower_cover(L.top), L.top)
    parent = _bfs(graph, graph.index[p_l], lambda i, first: graph.swing_edges(i, False))
    return [q for q in lower_right_boundary_primes(L) if graph.index[q] not in parent]


def check_sl(L, graph, report):
    if not is_patch_lattice(L):
        return
    right = set(L.right_boundary())
    for q in lower_right_boundary_primes(L):
        report.checked += 1
        if q.bottom not in right or q.top not in right:
            report.fail(lemma="SL", q=_show(L, q), issue="lower-right prime off the right boundary")
    for q in sl_failures(L, graph):
        report.fail(lemma="SL", q=_show(L, q), issue="no ↘/↻ sequence from the top-left prime")


def check_two_covers(L, order: JiConOrder, report):
    report.checked += len(order)
    for i, count in enumerate(order.upper_cover_counts()):
        if count > 2:
            report.fail(lemma="J(Con L) two covers", generator=_show(L, order.generators[i]), covers=count)


def proper_swing_gaps(L: PlanarLattice, order: JiConOrder, graph: RelationGraph, principal) -> list[tuple]:
    """Covers ``con(q) < con(p)`` of ``J(Con L)`` with no proper swing ``p' ↻ q'`` between their generators."""
    gaps = []
    cls = {}
    for r, theta in principal.items():
        cls.setdefault(theta, []).append(r)
    for lo, hi in order.covers:
        found = False
        for a in cls[order.congruences[hi]]:
            for j in graph.swing[graph.index[a]]:
                b = graph.primes[j]
                if principal[b] == order.congruences[lo] and rel.is_proper_swing(L, a, b):
                    found = True
                    break
            if found:
                break
        if not found:
            gaps.append((order.generators[lo], order.generators[hi]))
    return gaps


def lemma_suite(L: PlanarLattice, name: str = "", principal=None, graph=None) -> Report:
    """Exhaustive structural checks on an SPS lattice."""
    report = Report("lemmas", name)
    graph = graph or RelationGraph(L)
    principal = principal or prime_congruences(L)
    check_at_most_two_upper_covers(L, report)
    check_disjoint_triples(L, report)
    check_triple_covers(L, report)
    check_swing_targets(L, graph, report)
    check_common_down_target(L, graph, report)
    check_n5_meets(L, report)
    check_fork_grids(L, report)
    check_sl(L, graph, report)
    order = join_irreducible_congruences(L, principal)
    check_two_covers(L, order, report)
    gaps = proper_swing_gaps(L, order, graph, principal)
    report.notes["ji_covers"] = len(order.covers)
    report.notes["ji_covers_without_proper_swing"] = len(gaps)
    return report


def sl_persistence(max_forks: int) -> Report:
    """(SL) re-verified on the result of every single fork insertion of the generation."""
    from .constructions import iter_fork_insertions

    report = Report("sl-persistence", f"forks<={max_forks}")
    root = B2()
    report.checked += 1
    if sl_failures(root):
        report.fail(parent=None, issue="B2 fails (SL)")
    for parent, S, child in iter_fork_insertions(max_forks):
        report.checked += 1
        if not is_patch_lattice(child):
            report.fail(parent=parent.id, square=list(S.elements()), issue="child is not a patch lattice")
            continue
        missing = sl_failures(child)
        if missing:
            report.fail(parent=parent.id, square=list(S.elements()),
                        missing=[_show(child, q) for q in missing])
    return report
