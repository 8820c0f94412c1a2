import io as _io
import json
import re

import pytest

from conftest import generated
from spslat import io
from spslat.canonical import canonical_form
from spslat.cli import main
from spslat.constructions import fixture
from spslat.errors import ParseError, SchemaError, ValidationError
from spslat.lattice import is_sps


def run(*argv):
    buf = _io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()


@pytest.fixture
def s7_file(tmp_path):
    path = tmp_path / "s7.json"
    io.save(fixture("S7"), path)
    return str(path)


@pytest.mark.parametrize("name", ["B2", "S7", "N5", "C2xC3"])
def test_round_trip(tmp_path, name):
    L = fixture(name)
    io.save(L, tmp_path / "l.json")
    K = io.load(tmp_path / "l.json")
    assert K.upper_covers == L.upper_covers and K.lower_covers == L.lower_covers
    assert K.labels == L.labels
    assert canonical_form(K) == canonical_form(L)
    assert io.dumps(K) == io.dumps(L)


def test_n5_loads_but_is_not_sps():
    L = io.loads(io.dumps(fixture("N5")))
    assert L.n == 5 and not is_sps(L)


def test_schema_errors():
    good = io.to_dict(fixture("B2"))
    with pytest.raises(ParseError):
        io.loads("{not json")
    for mutate in (
        lambda d: d.pop("labels"),
        lambda d: d.update(extra=1),
        lambda d: d["upper_covers"][0].remove(1),
        lambda d: d["lower_covers"].pop(),
        lambda d: d.update(labels=["x", "x", "y", "z"]),
    ):
        d = json.loads(json.dumps(good))
        mutate(d)
        with pytest.raises(SchemaError):
            io.from_dict(d)
    with pytest.raises(SchemaError):
        io.from_dict([1, 2])


def test_validation_error():
    # consistent lists, but two maximal elements
    d = {"n": 3, "labels": ["a", "b", "c"], "upper_covers": [[1, 2], [], []], "lower_covers": [[], [0], [0]]}
    with pytest.raises(ValidationError):
        io.from_dict(d)


def _edges(dot):
    return re.findall(r"^\s*n(\d+) -> n(\d+);$", dot, re.M)


@pytest.mark.parametrize("name", ["S7", "N5", "C2xC3"])
def test_dot_one_edge_per_cover(name):
    L = fixture(name)
    dot = io.to_dot(L, name)
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
    assert dot.count("{") == dot.count("}")
    edges = sorted((int(a), int(b)) for a, b in _edges(dot))
    assert edges == sorted(L.cover_pairs())


def test_catalog(tmp_path):
    entries = io.write_catalog(generated(2), tmp_path)
    assert len(entries) == 4
    back = io.read_catalog(tmp_path)
    assert [e.id for e in back] == [e.id for e in entries]
    assert all(e.flags == {"sps": True, "patch": True} for e in back)


def test_worker_count(monkeypatch):
    monkeypatch.setenv("SPSLAT_WORKERS", "3")
    assert io.worker_count() == 3
    monkeypatch.setenv("SPSLAT_WORKERS", "junk")
    assert io.worker_count() == 1


# -- CLI ---------------------------------------------------------------------


def test_cli_seq(s7_file):
    code, out = run("seq", "--lattice", s7_file, "--from", "a_l,t", "--to", "z_r,a_r")
    assert code == 0
    assert out.splitlines() == ["[a_l,t] ↻ [m,t] ↘ [z_r,a_r]", "steps: Swing DownPersp"]
    code, out = run("seq", "--fixture", "S7", "--from", "m,t", "--to", "a_l,t")
    assert (code, out) == (0, "none\n")
    code, out = run("seq", "--fixture", "N5", "--from", "u,i", "--to", "v,w", "--mode", "pproj")
    assert code == 0 and "⇘" in out


def test_cli_check_swing():
    code, out = run("check", "--suite", "swing", "--forks", "2")
    assert code == 0
    assert json.loads(out.splitlines()[-1])["discrepancies"] == 0


def test_cli_check_pproj_fixture():
    code, out = run("check", "--suite", "pproj", "--fixture", "M3")
    assert code == 0


def test_cli_check_lemmas_reports_failures():
    code, out = run("check", "--suite", "lemmas", "--forks", "2")
    assert code == 1
    last = json.loads(out.splitlines()[-1])
    assert last["discrepancies"] == 1


def test_cli_check_sl():
    code, _ = run("check", "--suite", "sl", "--forks", "2")
    assert code == 0


def test_cli_gen(tmp_path):
    code, out = run("gen", "--forks", "1", "--out", str(tmp_path))
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert len([f for f in files if f.startswith("lattice_")]) == 2
    assert "catalog.json" in files
    assert len(out.splitlines()) == 2


def test_cli_con():
    code, out = run("con", "--fixture", "S7")
    assert code == 0
    assert "con(a_l,t): {o, z_r, a_r} | {z_l, a_l, m, t}" in out.splitlines()
    assert out.count(" -> ") == 2


def test_cli_export(s7_file):
    code, out = run("export", "--lattice", s7_file, "--format", "json")
    assert code == 0 and io.loads(out).n == 7
    code, out = run("export", "--fixture", "S7")
    assert code == 0 and len(_edges(out)) == 9


def test_cli_stats():
    code, out = run("stats", "--forks", "2")
    rows = [json.loads(s) for s in out.splitlines()]
    assert code == 0 and rows[-1]["total"] == 4 and rows[-1]["all_patch"]


@pytest.mark.parametrize(
    "argv",
    [
        ["seq", "--fixture", "S7", "--from", "a_l", "--to", "m,t"],
        ["seq", "--fixture", "S7", "--from", "o,t", "--to", "m,t"],
        ["seq", "--fixture", "S7", "--from", "q,t", "--to", "m,t"],
        ["export", "--lattice", "/nonexistent/x.json"],
        ["export", "--fixture", "Q9"],
        ["export"],
        ["export", "--fixture", "S7", "--lattice", "x"],
        ["frobnicate"],
    ],
)
def test_cli_usage_errors(argv):
    assert run(*argv)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--suite", "swing", "--forks", "2"],
        ["con", "--fixture", "S7"],
        ["export", "--fixture", "S7"],
        ["stats", "--forks", "2"],
        ["seq", "--fixture", "S7", "--from", "a_l,t", "--to", "z_r,a_r"],
    ],
)
def test_cli_byte_stable(argv):
    assert run(*argv) == run(*argv)


def test_cli_parallel_matches_serial(monkeypatch):
    serial = run("check", "--suite", "swing", "--forks", "2")
    monkeypatch.setenv("SPSLAT_WORKERS", "2")
    assert run("check", "--suite", "swing", "--forks", "2") == serial
