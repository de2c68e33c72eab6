import json
from importlib import resources

import jsonschema
import pytest

from landauvar.cli import main
from landauvar.poly import parse


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def load_schema():
    text = (
        resources.files("landauvar") / "schemas" / "analysis_report.schema.json"
    ).read_text()
    return json.loads(text)


def test_symanzik_builtin(capsys):
    code, out, _ = run_cli(capsys, "symanzik", "bubble", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert parse(data["U"]) == parse("x1+x2")
    assert parse(data["F"]) == parse("(x1+x2)*(m1sq*x1+m2sq*x2) - psq*x1*x2")


def test_symanzik_from_file(tmp_path, capsys):
    doc = {
        "vertices": ["v1", "v2"],
        "edges": [
            {"id": "1", "ends": ["v1", "v2"], "mass": "m1", "var": "x1"},
            {"id": "2", "ends": ["v2", "v1"], "mass": "m2", "var": "x2"},
        ],
        "legs": [{"vertex": "v1", "momentum": "p1"},
                 {"vertex": "v2", "momentum": "p2"}],
        "channels": {"p1": "psq"},
    }
    path = tmp_path / "bubble.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "symanzik", str(path), "--format", "json")
    assert code == 0
    assert parse(json.loads(out)["U"]) == parse("x1+x2")


def test_landau_oneloop_json(capsys):
    code, out, _ = run_cli(capsys, "landau", "oneloop", "bubble", "--format", "json")
    assert code == 0
    comps = json.loads(out)
    assert {c["id"] for c in comps} == {"lF", "lFU", "lF/1", "lF/2"}
    for c in comps:
        parse(c["defining"])  # round-trips through the grammar


def test_landau_oneloop_split_flag(capsys):
    code, out, _ = run_cli(capsys, "landau", "oneloop", "bubble", "--split",
                           "--format", "json")
    assert code == 0
    ids = {c["id"] for c in json.loads(out)}
    assert ids == {"lF+", "lF-", "lFU", "lF/1", "lF/2"}


def test_landau_fixture_and_eliminate(capsys):
    code, out, _ = run_cli(capsys, "landau", "fixture", "massless-triangle",
                           "--format", "json")
    assert code == 0 and len(json.loads(out)) == 4
    code, out, _ = run_cli(capsys, "landau", "eliminate", "bubble",
                           "--chart", "x1=1", "--format", "json")
    assert code == 0
    eliminant = parse(json.loads(out)["eliminant"])
    from landauvar.poly import divides
    assert divides(parse("(m1sq+m2sq-psq)^2-4*m1sq*m2sq"), eliminant) is not None


def test_hierarchy_dot_and_check(capsys):
    code, out, _ = run_cli(capsys, "hierarchy", "--graph", "bubble", "--dot")
    assert code == 0
    assert out.startswith("digraph hierarchy {")
    assert out.rstrip().endswith("}")
    # every non-brace line is a node or edge statement ending in ';'
    body = out.strip().splitlines()[1:-1]
    assert all(line.strip().endswith(";") for line in body)
    code, out, _ = run_cli(
        capsys, "hierarchy", "--graph", "bubble",
        "--check", "word=lF/1,lF+", "--check", "word=lF+,lF/1",
        "--format", "json",
    )
    assert code == 0
    verdicts = {tuple(v["word"]): v["verdict"] for v in json.loads(out)}
    assert verdicts[("lF/1", "lF+")] == "unconstrained"
    assert verdicts[("lF+", "lF/1")] == "forced_zero"


def test_homrank(capsys):
    code, out, _ = run_cli(capsys, "homrank", "--n", "1", "--m", "2",
                           "--I", "", "--J", "1", "--K", "2", "--degree", "1")
    assert code == 0 and out.strip() == "1"


def test_signword(capsys):
    code, out, _ = run_cli(capsys, "signword", "d1 p2 d3:r=2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["sign"] == -1
    assert data["canonical"] == "d1 d3 p2"


def test_variation_commands(capsys):
    code, out, _ = run_cli(capsys, "variation", "compose", "bubble",
                           "w=l2,lD+", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["images"]["sigma"] == {"nu1": "1", "nu2": "-1"}
    code, out, _ = run_cli(capsys, "variation", "audit", "bubble", "--format", "json")
    assert code == 0
    assert json.loads(out)["violations"] == []
    code, out, _ = run_cli(capsys, "variation", "table", "logarithm",
                           "--format", "json")
    assert code == 0
    assert json.loads(out)["basis"] == ["sigma", "nu"]


def test_aomoto_commands(capsys):
    code, out, _ = run_cli(capsys, "aomoto", "symbol", "--n", "1")
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 4
    code, out, _ = run_cli(capsys, "aomoto", "hierarchy", "--n", "1", "--dot")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run_cli(capsys, "aomoto", "components", "--n", "2",
                           "--format", "json")
    assert code == 0 and len(json.loads(out)) == 20


def test_variation_user_model_file(tmp_path, capsys):
    from landauvar.variation import builtin_model, model_to_json

    path = tmp_path / "model.json"
    path.write_text(json.dumps(model_to_json(builtin_model("bubble"))))
    code, out, _ = run_cli(capsys, "variation", "audit", str(path),
                           "--format", "json")
    assert code == 0 and json.loads(out)["violations"] == []


def test_track_command(capsys):
    code, out, _ = run_cli(
        capsys, "track", "bubble", "--chart", "x1=1", "--var", "x2",
        "--loop", "psq:center=9,r=0.1", "--fix", "m1sq=1,m2sq=4",
        "--mark", "0", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["permutation"] == [1, 0]


def test_analyze_schema_and_determinism(capsys):
    code, out1, _ = run_cli(capsys, "analyze", "bubble", "--check", "lF/1,lF+")
    assert code == 0
    report = json.loads(out1)
    jsonschema.validate(report, load_schema())
    for comp in report["landau"]:
        parse(comp["defining"])
    assert report["words"][0]["verdict"] == "unconstrained"
    code, out2, _ = run_cli(capsys, "analyze", "bubble", "--check", "lF/1,lF+")
    assert out1 == out2  # byte-identical on identical input


def test_analyze_with_audit_and_track(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "bubble", "--audit", "bubble",
        "--track-loop", "psq:center=9,r=0.1", "--track-chart", "x1=1",
        "--track-var", "x2", "--track-fix", "m1sq=1,m2sq=4", "--track-mark", "0",
    )
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, load_schema())
    assert report["audit"]["violations"] == []
    assert report["track"]["permutation"] == [1, 0]


def test_exit_codes(capsys):
    code, _, err = run_cli(capsys, "landau", "fixture", "bogus")
    assert code == 1 and "unknown fixture" in err
    code, _, err = run_cli(capsys, "analyze", "missing-file.json")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["definitely-not-a-command"])
    assert exc.value.code == 2


def test_malformed_json_reports_location(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"vertices": [,]}')
    code, _, err = run_cli(capsys, "analyze", str(path))
    assert code == 1
    assert "line" in err or "char" in err
