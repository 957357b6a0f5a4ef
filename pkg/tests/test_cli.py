import io
import json

import pytest

from hyperlang.cli import main
from hyperlang.spec_io import fixture_text


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def specs(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run("demo")
    assert code == 0 and "wrote ab-words.json" in out
    return tmp_path


MANIFEST = json.loads(fixture_text("manifest.json"))


@pytest.mark.parametrize("entry", MANIFEST, ids=lambda e: " ".join(e["args"]))
def test_manifest_exit_codes(specs, entry):
    code, _, _ = run(*entry["args"])
    assert code == entry["exit"]


def test_parse_messages(specs):
    assert run("parse", "ab-words.json", "--input", "a", "b")[1].startswith("accepted, 1 derivation\n")
    assert run("parse", "ab-words.json", "--input", "a b")[0] == 0
    code, out, _ = run("parse", "ab-words.json", "--input", "b", "a")
    assert code == 1 and out.startswith("rejected, 0 derivations")


def test_parse_emit(specs):
    code, out, err = run("parse", "anbn.json", "--input", "a", "a", "b", "b", "--emit", "json")
    assert code == 0 and err.strip() == "accepted, 1 derivation"
    (tree,) = json.loads(out)
    assert tree["bond"]["emit"] == "S"
    code, out, _ = run("parse", "sentences.json", "--input", "a", "b", "b", "a", "--emit", "dot")
    assert out.startswith("digraph")


def test_check_reports(specs):
    code, _, err = run("check", "broken.json")
    assert code == 2 and "/atoms" in err
    code, _, err = run("check", "bad-reference.json")
    assert code == 2 and "noun" in err
    code, out, _ = run("check", "presheaf-broken.json")
    assert code == 1 and "composition" in out


def test_generate_output(specs):
    code, out, _ = run("generate", "ab-star.json", "--tier", "0", "--bound", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "count 12" and len(lines) == 13
    assert run("generate", "ab-star.json", "--tier", "0", "--bound", "0")[0] == 2
    assert run("generate", "ab-star.json", "--tier", "5", "--bound", "2")[0] == 2


def test_globalize_output(specs):
    code, out, _ = run("globalize", "sentences.json", "--input", "a", "b", "b", "a")
    assert code == 0 and "ab(a,b)@letters ↦ m2" in out
    code, out, _ = run("globalize", "local-global.json", "--input", "a", "b", "b", "a")
    assert code == 1 and "certificate" in out and "tier 3" in out
    assert run("globalize", "sentences.json", "--input", "a", "a")[0] == 1
    assert run("globalize", "ab-star.json", "--input", "a")[0] == 2


def test_oracle_output(specs):
    code, out, _ = run("oracle", "corrupted.json", "--max-len", "8")
    assert code == 1 and "3 discrepancies" in out and "a a b b: oracle only" in out


def test_usage_errors(specs):
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("check", "missing.json")[0] == 2
    assert run("parse", "ab-words.json")[0] == 2


def test_color(specs):
    _, out, _ = run("--color", "always", "parse", "ab-words.json", "--input", "a", "b")
    assert "\x1b[32maccepted\x1b[0m" in out
    _, out, _ = run("parse", "ab-words.json", "--input", "a", "b")
    assert "\x1b" not in out
