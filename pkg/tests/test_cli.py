import json
import subprocess
import sys

import pytest

from fitzprops.cli import main
from fitzprops.monoid import dump_monoid, load_monoid, monoid_isomorphic
from fitzprops.presentations import ALTERNATING_PRESENTATION, SIX_ELEMENT_PRESENTATION


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_report_builtin_counterexample(capsys):
    code, out, _ = run(capsys, "--json", "report", "builtin:fitzgerald")
    assert code == 2
    d = json.loads(out)
    assert [d[k] for k in ("ri", "ur", "ri_star", "ur_star", "idempotents_commute")] == [True] * 4 + [False]


def test_report_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "report", "builtin:singleton", "--json")
    assert code == 0 and all(v for k, v in json.loads(out).items() if k != "witnesses")


def test_report_text_and_set(capsys):
    code, out, _ = run(capsys, "report", "corpus:set:3")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "--json", "report", "corpus:set:3")
    assert json.loads(out)["ri"] is False


def test_report_monoid_file(tmp_path, capsys, S):
    path = tmp_path / "s.json"
    path.write_text(dump_monoid(S), encoding="utf-8")
    assert run(capsys, "report", str(path))[0] == 2


def test_report_plot(tmp_path, capsys):
    target = tmp_path / "cayley.png"
    code, _, err = run(capsys, "report", "builtin:fitzgerald", "--plot", str(target))
    assert code == 2 and target.stat().st_size > 0 and str(target) in err


@pytest.mark.parametrize("arg", ["builtin:nope", "corpus:set:x", "missing.json"])
def test_input_errors(arg, capsys):
    code, _, err = run(capsys, "report", arg)
    assert code == 1 and err.startswith("error:")


def test_bad_json_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert run(capsys, "report", str(path))[0] == 1
    path.write_text('{"order": 2, "identity": 0, "table": [1, 1, 1, 1]}', encoding="utf-8")
    assert run(capsys, "report", str(path))[0] == 1


def test_endo_limit(capsys):
    assert run(capsys, "endo", "corpus:set:11")[0] == 1
    code, out, _ = run(capsys, "--limit-endo", "0", "--json", "endo", "corpus:set:3")
    assert code == 0 and len(json.loads(out)["maps"]) == 27


def test_endo_listing(capsys):
    code, out, _ = run(capsys, "endo", "builtin:fitzgerald")
    assert code == 0
    assert out.startswith("6 endomorphisms (4 idempotent)")
    code, out, _ = run(capsys, "--json", "endo", "corpus:pointed_set:2")
    d = json.loads(out)
    assert d["maps"] == [[0, 1], [0, 0]] and d["idempotents"] == [0, 1]


def test_bridge(capsys):
    code, out, _ = run(capsys, "bridge", "builtin:fitzgerald")
    assert code == 0 and "RI*" in out
    code, out, _ = run(capsys, "--json", "bridge", "corpus:abelian:Z2xZ2")
    assert code == 0
    code, out, err = run(capsys, "bridge", "corpus:gset:Z2:2,1,1")
    assert code == 4 and "violation" in out and err


def test_presentation_success(capsys, S):
    code, out, _ = run(capsys, "presentation", SIX_ELEMENT_PRESENTATION)
    assert code == 0
    M = load_monoid(out)
    assert M.order == 6 and monoid_isomorphic(M, S).holds
    code, out, _ = run(capsys, "presentation", "|")
    assert code == 0 and json.loads(out)["order"] == 1


def test_presentation_from_file(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text(SIX_ELEMENT_PRESENTATION, encoding="utf-8")
    code, out, _ = run(capsys, "presentation", str(path))
    assert code == 0 and json.loads(out)["order"] == 6


def test_presentation_bound(capsys):
    code, out, _ = run(capsys, "--json", "presentation", ALTERNATING_PRESENTATION)
    assert code == 3
    d = json.loads(out)
    assert d["error"] == "BoundExceeded"
    assert sorted(d["growth"]["8"]) == ["efefefef", "fefefefe"]
    code, out, _ = run(capsys, "presentation", ALTERNATING_PRESENTATION)
    assert code == 3 and "length 8" in out


def test_presentation_errors(capsys):
    assert run(capsys, "presentation", "e | f f = f")[0] == 1
    assert run(capsys, "presentation", "a | a =")[0] == 1


def test_karoubi(tmp_path, capsys):
    dump = tmp_path / "k.json"
    code, out, _ = run(capsys, "--json", "karoubi", "builtin:fitzgerald", "--dump", str(dump))
    assert code == 0
    d = json.loads(out)
    assert len(d["envelope_objects"]) == 4 and d["envelope_objects"][0] == "1"
    assert d["correspondence"]
    # |fSe| over the 16 pairs: the whole monoid once, the four homs between
    # e and f (either way round) have two elements, anything touching g one
    assert sorted(d["hom_cardinalities"].values()) == [1] * 7 + [2] * 4 + [3] * 4 + [6]
    assert all(d["envelope_completion"].values())
    assert len(json.loads(dump.read_text())["objects"]) == 4
    code, out, _ = run(capsys, "karoubi", "builtin:fitzgerald")
    assert "matches category of retracts: yes" in out


def test_search_streaming(tmp_path, capsys):
    plot = tmp_path / "search.png"
    code, out, err = run(capsys, "search", "--max-order", "5", "--progress", "--plot", str(plot))
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines[0]["order"] == 5 and lines[-1]["found"] == 1
    assert lines[-1]["stats"]["5"]["monoids"] == 228
    assert "order 5" in err and plot.stat().st_size > 0


def test_search_ri_gap(capsys):
    code, out, _ = run(capsys, "--seed", "1", "search", "--predicate", "ri-gap", "--max-size", "2")
    assert code == 0
    assert json.loads(out.splitlines()[-1])["stats"]["found"] is False


def test_search_order_guard(capsys):
    assert run(capsys, "search", "--max-order", "7")[0] == 1


def test_corpus_command(capsys):
    code, out, _ = run(capsys, "--json", "corpus", "--max-size", "2")
    labels = [json.loads(x)["label"] for x in out.splitlines()]
    assert code == 0 and "set:0" in labels and "abelian:Z2" in labels
    code, out, _ = run(capsys, "corpus", "gset:Z2:2,1")
    assert code == 0 and json.loads(out)["size"] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fitzprops", "report", "builtin:fitzgerald"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 2 and proc.stdout
