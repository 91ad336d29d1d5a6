import io
import json

import pytest

from vankampen.cli import main
from vankampen.documents import corpus_names, load, parse, serialize
from vankampen.errors import DocumentError

from conftest import GOLDEN


def run(*argv, env=None):
    out = io.StringIO()
    code = main(list(argv), out)
    text = out.getvalue()
    summary = json.loads(text.split("--- summary ---\n", 1)[1])
    return code, text, summary


def corpus_doc(name):
    return json.loads(serialize(load(name)))


def write(tmp_path, doc, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_corpus_round_trip():
    for name in corpus_names():
        inst = load(name)
        again = parse(serialize(inst), name)
        assert again.complex == inst.complex
        assert list(again.cover.pieces) == list(inst.cover.pieces)
        assert again.base_set == inst.base_set
        assert serialize(again) == serialize(inst)


@pytest.mark.parametrize("mutate, field", [
    (lambda d: d.pop("base_set"), "<root>"),
    (lambda d: d["complex"]["edges"].update(z=["v0"]), "complex.edges.z"),
    (lambda d: d["complex"]["edges"].update(z=["v0", "nowhere"]), "complex.edges.z"),
    (lambda d: d.update(base_set=["nowhere"]), "base_set"),
    (lambda d: d["cover"]["pieces"].pop("U2"), "cover.pieces"),
])
def test_invalid_documents(mutate, field):
    doc = corpus_doc("circle")
    mutate(doc)
    with pytest.raises(DocumentError) as err:
        parse(json.dumps(doc))
    assert err.value.field == field


def test_bad_json_reports_position():
    with pytest.raises(DocumentError) as err:
        parse('{"complex": ')
    assert "line 1" in err.value.field


def test_schema_error_exits_1(tmp_path):
    doc = corpus_doc("circle")
    doc["complex"]["faces"] = {"F": []}
    code, text, summary = run("vk", write(tmp_path, doc))
    assert code == 1 and summary["status"] == "invalid"


def test_corrupted_section_exits_1(tmp_path):
    doc = corpus_doc("circle_double")
    # t2 now lands in the wrong sheet, so the section is not continuous
    doc["cover"]["sections"]["st(t0)"]["vertices"]["t2"] = "h2"
    code, text, summary = run("vk", write(tmp_path, doc))
    assert code == 1
    assert "cover" in summary["error"]


def test_vk_circle_passes():
    code, text, summary = run("vk", "circle")
    assert code == 0 and summary["status"] == "pass"
    assert summary["round_trips"]["distinct"] == 0


def test_vk_point_mode_hypothesis_failure():
    code, text, summary = run("vk", "circle", "--mode", "point", "--base-set", "v0")
    assert code == 2 and summary["status"] == "hypothesis"
    assert summary["components"]


def test_vk_all_mode_torus():
    code, text, summary = run("vk", "torus", "--mode", "all")
    assert code == 0
    assert summary["fingerprints"]["x"]["direct"]["abelian"] == [2, []]


def test_pi1_command():
    code, text, summary = run("pi1", "rp2")
    assert code == 0
    assert summary["invariants"] == {"x": [0, [2]]}


def test_pi1_command_hypothesis():
    code, text, summary = run("pi1", "figure_eight", "--base-set", "nowhere")
    assert code == 1


@pytest.mark.parametrize("name, verdict", [("circle", "AGREE"), ("torus", "AGREE (absolute)")])
def test_crosscheck_verdicts(name, verdict):
    code, text, summary = run("crosscheck", name)
    assert code == 0 and summary["verdict"] == verdict


def test_output_is_deterministic():
    for name in GOLDEN:
        assert run("vk", name)[1] == run("vk", name)[1]


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("VK_BUDGET", "1")
    code, text, summary = run("vk", "torus")
    assert code == 3 and summary["status"] == "budget"
    monkeypatch.setenv("VK_BUDGET", "100000")
    assert run("vk", "torus")[0] == 0


def test_sweep_command():
    code, text, summary = run("sweep", "--seed", "3", "--trials", "5")
    assert code == 0 and summary["pass"] == 5
