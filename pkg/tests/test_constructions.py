import itertools

import pytest
from hypothesis import given, settings

import oracles
from conftest import fork_lattices, generated, s7_with_fork
from spslat import relations as rel
from spslat.canonical import canonical_form, order_isomorphic
from spslat.constructions import (
    B2,
    CoveringSquare,
    chain,
    covering_squares,
    fixture,
    fork_insert,
    fork_trace,
    generate_patch_lattices,
    grid,
    is_covering_square,
    is_join_closed,
)
from spslat.errors import NotACoveringSquare, NotSPS, UnknownFixture
from spslat.lattice import is_patch_lattice, is_sps


@pytest.mark.parametrize(
    "name, n, covers",
    [("B2", 4, 4), ("S7", 7, 9), ("N5", 5, 5), ("M3", 5, 6), ("C4", 4, 3), ("C2xC3", 6, 7), ("B2xC3", 6, 7)],
)
def test_fixture_sizes(name, n, covers):
    L = fixture(name)
    assert (L.n, len(L.cover_pairs())) == (n, covers)


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        fixture("Q9")
    with pytest.raises(KeyError):
        fixture("")


def test_s7_is_fork_of_b2():
    L = B2()
    (S,) = covering_squares(L)
    K = fork_insert(L, S)
    assert canonical_form(K) == canonical_form(fixture("S7"))
    assert sorted(K.labels) == sorted(fixture("S7").labels)


def _brute_squares(L):
    out = set()
    for o, a, b, t in itertools.permutations(range(L.n), 4):
        if all(L.covers(*c) for c in ((o, a), (o, b), (a, t), (b, t))) and L.meet(a, b) == o:
            lows = L.lower_covers[t]
            if lows.index(a) < lows.index(b):
                out.add((o, a, b, t))
    return out


@pytest.mark.parametrize("name, count", [("B2", 1), ("S7", 3), ("C4", 0), ("C2xC3", 2), ("N5", 0)])
def test_covering_squares(name, count):
    L = fixture(name)
    sq = covering_squares(L)
    assert len(sq) == count
    assert {s.elements() for s in sq} == _brute_squares(L)
    assert all(is_covering_square(L, s) for s in sq)


def test_s7_squares_by_label(S7):
    named = [tuple(S7.label(e) for e in s.elements()) for s in covering_squares(S7)]
    assert sorted(named) == sorted([("o", "z_l", "z_r", "m"), ("z_l", "a_l", "m", "t"), ("z_r", "m", "a_r", "t")])


def test_trace_b2():
    L = B2()
    tr = fork_trace(L, covering_squares(L)[0])
    assert (tr.n_l, tr.n_r) == (1, 1)
    assert tr.x_l == [1] and tr.y_l == [0] and tr.x_r == [2] and tr.y_r == [0]


def test_trace_s7_inner_square(S7):
    S = CoveringSquare(*(S7.index(s) for s in ("z_r", "m", "a_r", "t")))
    tr = fork_trace(S7, S)
    assert [S7.label(x) for x in tr.x_l] == ["m", "z_l"]
    assert [S7.label(y) for y in tr.y_l] == ["z_r", "o"]
    assert (tr.n_l, tr.n_r) == (2, 1)
    assert is_join_closed(S7, tr.grid_elements())


def test_fork_at_bottom_square_of_s7():
    K = s7_with_fork(("o", "z_l", "z_r", "m"))
    assert K.n == 10 and is_sps(K)
    assert len(K.lower_covers[K.index("t")]) == 3
    assert len(K.lower_covers[K.index("m")]) == 3


@pytest.mark.parametrize("square", [("z_l", "a_l", "m", "t"), ("z_r", "m", "a_r", "t")])
def test_fork_at_upper_squares_of_s7(square):
    K = s7_with_fork(square)
    assert K.n == 11 and is_sps(K) and is_patch_lattice(K)
    assert len(K.lower_covers[K.index("t")]) == 4


def test_fork_rejects_bad_input(S7):
    with pytest.raises(NotACoveringSquare):
        fork_insert(S7, CoveringSquare(0, 1, 2, 6))
    N5 = fixture("N5")
    with pytest.raises(NotSPS):
        fork_insert(N5, CoveringSquare(0, 1, 2, 4))


def test_fork_size_and_interval(gen2):
    s7 = fixture("S7")
    for L in gen2:
        for S in covering_squares(L):
            tr = fork_trace(L, S)
            K = fork_insert(L, S, trace=tr)
            assert K.n == L.n + 1 + tr.n_l + tr.n_r
            top = S.t
            assert order_isomorphic(K.interval(S.o, top), s7)
            # old joins survive
            for a, b in itertools.combinations(range(L.n), 2):
                assert K.join(a, b) == L.join(a, b)


def test_strip_grows_to_c3(S7):
    S = CoveringSquare(*(S7.index(s) for s in ("z_r", "m", "a_r", "t")))
    tr = fork_trace(S7, S)
    K = fork_insert(S7, S, trace=tr)
    z = [K.index(s) for s in K.labels[S7.n + 1:S7.n + 1 + tr.n_l]]
    strip = K.induced(tr.x_l + tr.y_l + z)
    assert order_isomorphic(strip, grid(3, tr.n_l))
    assert rel.is_cover_preserving(K, tr.x_l + tr.y_l + z)


def test_generation_counts():
    counts = [len(generate_patch_lattices(k)) for k in range(4)]
    assert counts == [1, 2, 4, 9]
    sizes = [L.n for L in generate_patch_lattices(3)]
    assert sizes == [4, 7, 10, 11, 13, 15, 14, 14, 16]


def test_generation_dedup_matches_order_isomorphism():
    forms = {canonical_form(g.lattice, "order") for g in generated(3)}
    assert len(forms) == len(generated(3))


def test_generation_depth_one_is_b2_s7():
    out = generate_patch_lattices(1)
    assert [canonical_form(L) for L in out] == [canonical_form(B2()), canonical_form(fixture("S7"))]
    assert generate_patch_lattices(0)[0].n == 4


def test_reflection_stable():
    forms = {canonical_form(g.lattice) for g in generated(3)}
    for g in generated(3):
        assert canonical_form(g.lattice.mirror()) in forms
        assert canonical_form(g.lattice.mirror()) == canonical_form(g.lattice)


def test_every_fork_of_depth3_is_sps(gen3):
    for L in gen3:
        for S in covering_squares(L):
            assert is_sps(fork_insert(L, S))


@settings(max_examples=25, deadline=None)
@given(fork_lattices(max_forks=3))
def test_grid_is_join_closed(L):
    for S in covering_squares(L):
        assert is_join_closed(L, fork_trace(L, S).grid_elements())


def test_grid_fixture_against_oracle():
    G = grid(2, 3)
    assert oracles.is_semimodular(G.n, G.cover_pairs())
    assert chain(1).n == 1
