import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from setseq import cli
from setseq.cache import ResultCache, canonical_key
from setseq.crosscheck import Check
from setseq.expansion import evaluate_at, term_list
from setseq.models import BUILTIN_IDS, DEFAULT_PARAMS, builtin


@pytest.fixture
def invoke(tmp_path):
    cache_dir = tmp_path / "cache"

    def call(*argv, cache=True):
        out, err = io.StringIO(), io.StringIO()
        extra = ["--cache-dir", str(cache_dir)] if cache else ["--no-cache"]
        code = cli.run([*argv, *extra], stdout=out, stderr=err)
        return code, out.getvalue(), err.getvalue()

    call.cache_dir = cache_dir
    return call


def rational(doc):
    return F(int(doc["numerator"]), int(doc["denominator"]))


def test_expand_graph_json(invoke):
    code, out, _ = invoke("expand", "--model", "graph", "-r", "4", "--at", "20", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [rational(t["d"]) for t in doc["terms"]] == [1, 0, 2, 24]
    (evaluation,) = doc["evaluations"]
    assert evaluation["n"] == 20
    assert rational(evaluation["value"]) == evaluate_at(term_list(builtin("graph"), 4), 20)


def test_series_triangulation(invoke):
    code, out, _ = invoke("series", "--model", "triangulation", "-r", "3")
    assert code == 0
    for text in ("5/36", "695/2592", "216305/279936"):
        assert text in out


def test_series_json_schema(invoke):
    _, out, _ = invoke("series", "--model", "quad_sts", "-r", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["model"] == "quad_sts" and doc["r"] == 2 and "convention" in doc
    assert doc["coefficients"] == [
        {"order": 1, "numerator": "1", "denominator": "4"},
        {"order": 2, "numerator": "15", "denominator": "32"},
    ]


def test_verify_graph(invoke):
    code, out, _ = invoke("verify", "--model", "graph", "--max-n", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    connected = [c for c in doc["results"][0]["checks"] if c["quantity"] == "connected"]
    assert [c["expected"] for c in connected] == ["1", "1", "4", "38"]
    assert all(c["status"] == "match" for c in connected)


def test_verify_all_builtins(invoke):
    code, out, _ = invoke("verify", "--max-n", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    covered = {r["model"] for r in doc["results"]}
    models = [builtin(i, DEFAULT_PARAMS.get(i)) for i in BUILTIN_IDS]
    with_oracle = {m.key for m in models if m.oracle_id}
    assert covered == with_oracle


def test_verify_stops_on_first_mismatch(invoke, monkeypatch):
    calls = []

    def fake(model, max_n):
        calls.append(model.key)
        return [Check("connected", 2, 5, F(1), "mismatch")]

    monkeypatch.setattr(cli, "verify_model", fake)
    code, out, err = invoke("verify", "--max-n", "3")
    assert code == 1
    assert "MISMATCH" in err and "MISMATCH" in out
    assert len(calls) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["coeffs", "--model", "nope"],
        ["coeffs"],
        ["coeffs", "--model", "ogem", "--param", "D=1"],
        ["coeffs", "--model", "graph", "--param", "oops"],
        ["coeffs", "--model", "graph", "--bogus"],
        ["exact", "--model", "graph"],
        ["exact", "--model", "graph", "--range", "9..3"],
        ["frobnicate"],
    ],
)
def test_usage_errors(invoke, argv):
    code, _, err = invoke(*argv)
    assert code == 2
    assert err


@pytest.mark.parametrize(
    "argv,error",
    [
        (["exact", "--model", "comb_map", "--at", "3"], "EvaluationDomainError"),
        (["series", "--model", "graph"], "ClassificationError"),
        (["expand", "--model", "graph", "-r", "4", "--at", "3"], "EvaluationDomainError"),
        (["diagnose", "--model", "graph", "--window", "5..6"], "DiagnosticError"),
        (["verify", "--model", "quad_sts"], "SetSeqError"),
    ],
)
def test_domain_errors(invoke, argv, error):
    code, out, err = invoke(*argv)
    assert code == 1
    assert error in err
    assert out == ""


def test_custom_file(invoke, tmp_path):
    path = tmp_path / "graphs.json"
    path.write_text(json.dumps({"label": "graphs", "terms": [1, 1, 2, 8, 64]}))
    code, out, _ = invoke("connected", "--custom", str(path), "-r", "4", "--format", "json")
    assert code == 0
    assert [t["value"] for t in json.loads(out)["terms"]] == ["0", "1", "1", "4", "38"]


def test_custom_file_errors(invoke, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"label": "x", "terms": [0, 1]}))
    code, _, err = invoke("coeffs", "--custom", str(path))
    assert code == 1 and "LeadingTermError" in err
    code, _, err = invoke("coeffs", "--custom", str(tmp_path / "missing.json"))
    assert code == 1 and "MalformedSequenceFile" in err


def test_custom_cache_key_tracks_contents(invoke, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"label": "s", "terms": [1, 1, 2, 8]}))
    _, first, _ = invoke("connected", "--custom", str(path), "-r", "3")
    path.write_text(json.dumps({"label": "s", "terms": [1, 1, 4, 8]}))
    _, second, _ = invoke("connected", "--custom", str(path), "-r", "3")
    assert first != second


COMMANDS = [
    ["coeffs", "--model", "ogem", "--param", "D=3"],
    ["connected", "--model", "origami", "-r", "8"],
    ["derivative", "--model", "quad_sts", "-r", "6", "--decimal", "5"],
    ["expand", "--model", "comb_map", "--range", "10..16", "--decimal", "8"],
    ["series", "--model", "gem3", "-r", "5"],
    ["exact", "--model", "graph", "--range", "1..6"],
    ["diagnose", "--model", "constellation", "--param", "d=4"],
]


@pytest.mark.parametrize("fmt", ["table", "json"])
@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_cache_is_transparent(invoke, argv, fmt):
    argv = [*argv, "--format", fmt]
    fresh = invoke(*argv)
    cached = invoke(*argv)
    uncached = invoke(*argv, cache=False)
    assert fresh[0] == 0
    assert fresh == cached == uncached
    assert any(invoke.cache_dir.iterdir())


def test_corrupt_cache_entry_is_recomputed(invoke):
    argv = ["series", "--model", "quadrangulation", "-r", "3", "--format", "json"]
    _, expected, _ = invoke(*argv)
    (entry,) = invoke.cache_dir.glob("*.json")
    entry.write_text("{truncated")
    code, out, _ = invoke(*argv)
    assert code == 0 and out == expected
    assert json.loads(entry.read_text())["payload"]


def test_mismatched_cache_entry_is_discarded(tmp_path):
    cache = ResultCache(tmp_path)
    key = canonical_key("series", "gem3", {"r": 2})
    cache.put(key, {"x": 1})
    (entry,) = tmp_path.glob("*.json")
    entry.write_text(json.dumps({"key": "something else", "payload": {"x": 2}}))
    assert cache.get(key) is None
    assert not entry.exists()
    assert cache.fetch(key, lambda: {"x": 3}) == {"x": 3}


def test_disabled_cache_writes_nothing(tmp_path):
    cache = ResultCache(tmp_path / "c", enabled=False)
    cache.put("k", {"a": 1})
    assert cache.get("k") is None
    assert not (tmp_path / "c").exists()


def test_decimal_is_labelled(invoke):
    _, out, _ = invoke("series", "--model", "triangulation", "-r", "1", "--decimal", "4")
    assert "display only" in out
    assert "5/36  ~0.1389" in out


def test_models_listing(invoke):
    code, out, _ = invoke("models", "--format", "json")
    assert code == 0
    ids = [m["id"] for m in json.loads(out)["models"]]
    assert len(ids) == len(BUILTIN_IDS)
    assert "ogem(D=3)" in ids


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "setseq", "models"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "quad_sts" in proc.stdout
