import itertools

import pytest

import oracles
from conftest import generated, s7_with_fork
from spslat.congruence import con
from spslat.constructions import fixture
from spslat.errors import NotAWitness
from spslat.lattice import PrimeInterval
from spslat.relations import StepKind
from spslat.swing import (
    RelationGraph,
    StepSequence,
    find_down_swing_sequence,
    find_prime_projectivity,
    find_swing_sequence,
    lemma_suite,
    normal_form_problems,
    normalize_witness,
    sl_failures,
    sl_persistence,
    verify_prime_projectivity_lemma,
    verify_swing_lemma,
    witness_problems,
)

DOWN, SW, UP = StepKind.DOWN_PERSP, StepKind.SWING, StepKind.UP_PERSP


def P(L, a, b):
    return PrimeInterval(L.index(a), L.index(b))


def test_s7_witnesses(S7):
    seq = find_swing_sequence(S7, P(S7, "a_l", "t"), P(S7, "z_r", "a_r"))
    assert seq.format(S7) == "[a_l,t] ↻ [m,t] ↘ [z_r,a_r]"
    assert seq.steps == (SW, DOWN)
    # a single down-perspectivity reaches [o,z_r] directly
    seq = find_swing_sequence(S7, P(S7, "a_l", "t"), P(S7, "o", "z_r"))
    assert seq.steps == (DOWN,)
    assert find_swing_sequence(S7, P(S7, "m", "t"), P(S7, "a_l", "t")) is None


def test_same_interval_is_empty(S7):
    p = P(S7, "m", "t")
    assert len(find_swing_sequence(S7, p, p)) == 0
    assert find_prime_projectivity(S7, p, p).intervals == (p,)


def test_up_step_only_first(S7):
    seq = find_swing_sequence(S7, P(S7, "o", "z_l"), P(S7, "z_r", "a_r"))
    assert seq is not None and seq.steps[0] is UP
    assert UP not in seq.steps[1:]
    assert not witness_problems(S7, seq)


def test_n5_prime_projectivity():
    N5 = fixture("N5")
    seq = find_prime_projectivity(N5, P(N5, "u", "i"), P(N5, "v", "w"))
    assert seq.steps == (StepKind.PRIME_DOWN,)


def test_m3_all_pairs_connected():
    M3 = fixture("M3")
    primes = M3.prime_intervals()
    for p, q in itertools.permutations(primes, 2):
        seq = find_prime_projectivity(M3, p, q)
        assert seq is not None and not witness_problems(M3, seq, "pproj")


@pytest.mark.parametrize("name", ["B2", "S7", "C2xC3", "C3"])
def test_swing_lemma_fixtures(name):
    L = fixture(name)
    r = verify_swing_lemma(L, name)
    assert r.ok and r.checked == len(L.prime_intervals()) * (len(L.prime_intervals()) - 1)


def test_s7_pair_count(S7):
    assert verify_swing_lemma(S7).checked == 72


@pytest.mark.parametrize("name", ["N5", "M3", "S7", "B2", "C2xC3"])
def test_prime_projectivity_fixtures(name):
    assert verify_prime_projectivity_lemma(fixture(name), name).ok


def test_witness_validation_rejects(S7):
    bogus = StepSequence((P(S7, "m", "t"), P(S7, "a_l", "t")), (SW,))
    assert witness_problems(S7, bogus)
    with pytest.raises(NotAWitness):
        normalize_witness(S7, bogus)
    with pytest.raises(ValueError):
        StepSequence((P(S7, "m", "t"),), (SW,))


def test_normalize_double_down(S7):
    # [a_l,t] ↘ [z_l,m] ↘ [o,z_r] shortens to one step
    long = StepSequence((P(S7, "a_l", "t"), P(S7, "z_l", "m"), P(S7, "o", "z_r")), (DOWN, DOWN))
    assert not witness_problems(S7, long)
    assert normal_form_problems(long)
    short = normalize_witness(S7, long)
    assert short.steps == (DOWN,) and not normal_form_problems(short)


def test_normalize_swing_swing():
    K = s7_with_fork(("z_l", "a_l", "m", "t"))
    padded = StepSequence((P(K, "a_l", "t"), P(K, "m'", "t"), P(K, "m", "t")), (SW, SW))
    assert not witness_problems(K, padded)
    short = normalize_witness(K, padded)
    assert short.steps == (SW,)


def test_already_normal(S7):
    seq = find_swing_sequence(S7, P(S7, "a_l", "t"), P(S7, "z_r", "a_r"))
    assert normalize_witness(S7, seq) == seq


def test_subsumption(gen2):
    for L in gen2:
        g = RelationGraph(L)
        for i, p in enumerate(g.primes):
            for j in g.down[i]:
                q = g.primes[j]
                if q != p:
                    assert len(find_swing_sequence(L, p, q, g)) == 1


def test_witnesses_sound_and_complete(gen2):
    for L in gen2:
        g = RelationGraph(L)
        for p, q in itertools.permutations(g.primes, 2):
            seq = find_swing_sequence(L, p, q, g)
            assert (seq is not None) == con(L, p).collapses(q)
            if seq is not None:
                assert seq.intervals[0] == p and seq.intervals[-1] == q
                assert not witness_problems(L, seq)
                assert not normal_form_problems(seq)


def test_down_swing_search(S7):
    assert find_down_swing_sequence(S7, P(S7, "o", "z_l"), P(S7, "z_r", "a_r")) is None
    assert find_down_swing_sequence(S7, P(S7, "a_l", "t"), P(S7, "z_r", "a_r")) is not None


def test_sl_on_fixtures(S7, B2L):
    assert sl_failures(S7) == [] and sl_failures(B2L) == []


def test_sl_persistence_depth2():
    r = sl_persistence(2)
    assert r.ok and r.checked == 1 + 1 + 3


def test_lemma_suite_s7(S7):
    r = lemma_suite(S7, "S7")
    assert r.ok, r.discrepancies
    assert r.notes["ji_covers_without_proper_swing"] == 0


def test_lemma_suite_depth2():
    literal_2iv = 0
    for g in generated(2):
        r = lemma_suite(g.lattice, g.id)
        other = [d for d in r.discrepancies if d["lemma"] != "2(iv)"]
        assert not other, other
        literal_2iv += len(r.discrepancies)
    # the only literal 2(iv) violation at depth 2 is the bottom-fork S7
    assert literal_2iv == 1


def test_lemma_2iv_literal_counterexample():
    # a fork at the bottom square of S7 leaves t's three lower covers
    # generating an S7 whose bottom cell is subdivided
    K = s7_with_fork(("o", "z_l", "z_r", "m"))
    r = lemma_suite(K, "S7+bottom")
    lemmas = {d["lemma"] for d in r.discrepancies}
    assert lemmas == {"2(iv)"}
    # confirm independently of the library predicates
    pairs = K.cover_pairs()
    assert oracles.is_semimodular(K.n, pairs) and not oracles.has_m3(K.n, pairs)
    ix = K.index
    assert [K.label(x) for x in K.lower_covers[ix("t")]] == ["a_l", "m", "a_r"]
    _, meet, _ = oracles.meet_join(K.n, pairs)
    assert meet[ix("a_l")][ix("m")] == ix("z_l") and meet[ix("z_l")][ix("z_r")] == ix("o")
    assert (ix("o"), ix("z_l")) not in pairs


def test_report_merge_and_jsonl(S7):
    a = verify_swing_lemma(S7, "S7")
    b = verify_swing_lemma(fixture("B2"), "B2")
    m = a.merge(b)
    assert m.checked == a.checked + b.checked
    assert m.jsonl().count("\n") == 0
    a.fail(p=[1, 2])
    assert a.jsonl().count("\n") == 1 and not a.ok
