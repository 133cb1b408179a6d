import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moorepi.errors import NotCurated, ParseError, ValidationError
from moorepi.facts import bundled_path, dangling_scan, load, loads, validate


@pytest.fixture(scope="module")
def raw():
    return json.loads(bundled_path().read_text(encoding="utf-8"))


def with_fact(raw, rec):
    d = dict(raw)
    d["facts"] = raw["facts"] + [rec]
    return loads(json.dumps(d))


def test_bundled_counts(fb):
    c = fb.counts()
    assert c["sphere_groups"] >= 60
    assert c["relations"] >= 120


def test_bundled_has_provenance(fb):
    for rec in fb.records:
        if rec.kind not in ("family", "symbol"):
            assert rec.src, rec.fid


@pytest.mark.parametrize("text", ["", "   \n", "{", "[]"])
def test_bad_files_raise_parse_error(text):
    with pytest.raises(ParseError):
        loads(text)


def test_missing_top_keys():
    with pytest.raises(ValidationError):
        loads("{}")


def test_unknown_key_rejected(raw):
    d = dict(raw)
    d["extra"] = 1
    with pytest.raises(ValidationError):
        loads(json.dumps(d))


def test_accepts_sigma_pp_fact(raw):
    fb = with_fact(raw, {"id": "composition.check", "kind": "composition", "lhs": "sigma'' eta_13",
                         "rhs": "4*bar_nu_6", "src": "test"})
    assert validate(fb, fb.default_env(1)) == []


def test_order_conflict(raw):
    fb = with_fact(raw, {"id": "composition.bad", "kind": "composition", "lhs": "eta_3 eta_4",
                         "rhs": "eta_3 eta_4", "order": 4, "src": "test"})
    kinds = {f.kind for f in validate(fb, fb.default_env(1))}
    assert "order conflict" in kinds


def test_degree_chain(raw):
    fb = with_fact(raw, {"id": "composition.bad", "kind": "composition", "lhs": "nu_4 eta_3",
                         "rhs": "0", "src": "test"})
    found = validate(fb, fb.default_env(1))
    assert [f.kind for f in found] == ["degree chain"]


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_bundled_zero_findings(fb, r):
    assert validate(fb, fb.default_env(r)) == []


def test_no_dangling(fb):
    assert dangling_scan(fb) == 0


def test_query_sphere_group(fb):
    G = fb.query_sphere_group(8, 7)
    assert G.torsion == (8,) and G.free_rank == 1
    assert set(G.names) == {"sigma_8", "E(sigma')"}
    G = fb.query_sphere_group(4, 10)
    assert G.torsion == (2, 4, 8)
    assert set(G.names) == {"nu_4 sigma'", "E(eps')", "eta_4 mu_5"}


@pytest.mark.parametrize("n,k", [(5, -1), (4, 40), (30, 3)])
def test_query_not_curated(fb, n, k):
    with pytest.raises(NotCurated):
        fb.query_sphere_group(n, k)


def test_query_fact(fb):
    rec = fb.query_fact("composition", "sigma'' eta_13")
    assert rec.rhs == "4*bar_nu_6"
    with pytest.raises(NotCurated):
        fb.query_fact("composition", "eta_3 eta_3")


def test_round_trip(fb):
    text = fb.serialize()
    again = loads(text)
    assert again.serialize() == text
    assert again.counts() == fb.counts()


def test_load_path_and_env(tmp_path, monkeypatch, fb):
    p = tmp_path / "copy.json"
    p.write_text(fb.serialize(), encoding="utf-8")
    assert load(p).counts() == fb.counts()
    monkeypatch.setenv("MOOREPI_FACTS", str(p))
    assert load().counts() == fb.counts()
    monkeypatch.setenv("MOOREPI_FACTS", str(tmp_path / "absent.json"))
    with pytest.raises(ParseError):
        load()


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_round_trip_subsets(fb, data):
    """Dropping arbitrary relation records still serializes losslessly."""
    ids = [r.fid for r in fb.records if r.kind in ("composition", "bracket", "boundary")]
    drop = data.draw(st.lists(st.sampled_from(ids), max_size=5, unique=True))
    sub = fb
    for fid in drop:
        sub = sub.without(fid)
    assert loads(sub.serialize()).serialize() == sub.serialize()
    assert len(sub.records) == len(fb.records) - len(drop)
