import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from polyvar.cli import main, parse_polyhedron, parse_union, ProblemError, parse_scalar
from polyvar.fixtures import g_maps, s1
from polyvar.polykernel import Polyhedron, relate
from polyvar.varcalc import limit_cones, tangent_cone

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, json.loads(capsys.readouterr().out)


def write(tmp_path, data):
    p = tmp_path / "problem.json"
    p.write_text(json.dumps(data))
    return p


def test_certify_fixture_holds(capsys):
    code, rep = run(capsys, PROBLEMS / "s1_certify.json")
    assert code == 0 and rep["results"][0]["verdict"] == "holds"
    assert rep["schema"] == "polyvar-report/1"


def test_certify_fixture_fails_with_witness(capsys):
    code, rep = run(capsys, PROBLEMS / "s1_certify_fail.json")
    res = rep["results"][0]
    assert code == 1 and res["verdict"] == "fails"
    assert res["witness"]["p"] and res["witness"]["p"] != ["0"]


def test_malformed_rational_is_an_input_error(capsys):
    code, rep = run(capsys, PROBLEMS / "malformed_rational.json")
    assert code == 2
    assert rep["error"]["location"] == "maps.S.pieces[0].halfspaces[0].a[0]"


def test_json_syntax_error_has_location(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"maps": {,}}')
    code, rep = run(capsys, p)
    assert code == 2 and rep["error"]["location"].endswith(":1:11")


def test_dimension_mismatch_is_exit_2(capsys, tmp_path):
    data = {"maps": {"S": {"type": "builtin", "name": "S1"}},
            "queries": [{"kind": "tangent", "map": "S", "x": ["0", "0"], "y": ["0"]}]}
    code, rep = run(capsys, write(tmp_path, data))
    assert code == 2 and rep["error"]["location"] == "queries[0].x"


def test_point_off_graph_is_exit_2(capsys, tmp_path):
    data = {"maps": {"S": {"type": "builtin", "name": "S1"}},
            "queries": [{"kind": "lip", "map": "S", "x": ["1"], "y": ["0"]}]}
    code, rep = run(capsys, write(tmp_path, data))
    assert code == 2 and rep["error"]["location"] == "queries[0]"


def test_inconsistent_representations(capsys, tmp_path):
    data = {"maps": {"S": {"type": "map", "n": 1, "m": 1, "pieces": [
        {"dim": 2, "halfspaces": [{"a": ["1", "0"], "b": "0"}], "vertices": [["0", "0"]], "rays": [["1", "0"]]}]}}}
    code, rep = run(capsys, write(tmp_path, data))
    assert code == 2 and rep["error"]["type"] == "InconsistentRepresentations"


def test_scalar_parsing():
    assert str(parse_scalar("6/4", "x")) == "3/2"
    for bad in (0.5, True, "1/0", "abc", None):
        with pytest.raises(ProblemError):
            parse_scalar(bad, "x")


def test_exit_codes_across_fixtures(capsys):
    expected = {"s1_certify.json": 0, "s1_certify_fail.json": 1, "malformed_rational.json": 2,
                "tour.json": 0, "s3_oracle.json": 1}
    for name, code in expected.items():
        got, _ = run(capsys, PROBLEMS / name)
        assert got == code, name


def test_report_cones_round_trip(capsys):
    code, rep = run(capsys, PROBLEMS / "tour.json")
    assert code == 0
    res = {r["index"]: r for r in rep["results"]}
    T = parse_union(res[0]["cone"], "t", 2)
    assert relate(T, tangent_cone(s1().graph, (0, 0))).kind == "equal"
    L = limit_cones(s1(), (0,), (0,))
    cones = [parse_union(c, "c", 2) for c in res[3]["cones"]]
    assert res[3]["count"] == 6
    for C, G in zip(cones, L):
        assert relate(C, G.graph).kind == "equal"
    for G in g_maps().values():
        assert any(relate(C, G.graph).kind == "equal" for C in cones)
    N = res[1]["limiting"]
    back = parse_union(N, "n", 2)
    assert relate(back, Polyhedron(2, vertices=[(0, 0)], rays=[(-1, 1)])).kind == "equal"
    # every reported polyhedron carries both descriptions; parsing cross-checks them
    for r in rep["results"]:
        for key in ("cone", "graph", "regular", "limiting"):
            if key in r:
                obj = r[key]
                if "pieces" in obj:
                    parse_union(obj, key, obj["dim"])
                else:
                    parse_polyhedron(obj, key)


def test_tour_values(capsys):
    _, rep = run(capsys, PROBLEMS / "tour.json")
    res = rep["results"]
    assert res[4]["count"] == 5
    assert res[5]["modulus"] == "1"
    assert res[6]["route"] == "clarke-fastpath" and res[6]["verdict"] == "holds"
    assert res[9]["verdict"] == "holds"
    assert res[10]["modulus"] == "1/2"
    assert res[11]["lower_bound"] == "1"


def test_route_and_norm_flags(capsys):
    code, rep = run(capsys, PROBLEMS / "s1_certify_fail.json", "--route", "dual", "--norm", "one")
    assert code == 1
    res = rep["results"][0]
    assert res["route"] == "dual-normal" and {"u", "v"} <= set(res["witness"])
    assert rep["norms"]["domain"] == "one"


def test_output_modes(capsys, monkeypatch):
    monkeypatch.setenv("POLYVAR_OUTPUT", "json")
    main([str(PROBLEMS / "s1_certify.json")])
    assert "\n" not in capsys.readouterr().out.strip()
    main([str(PROBLEMS / "s1_certify.json"), "--pretty"])
    assert capsys.readouterr().out.count("\n") > 3


def test_oracle_flags(capsys):
    code, rep = run(capsys, PROBLEMS / "s3_oracle.json", "--oracle-budget", "2", "--seed", "5")
    assert code == 1 and rep["results"][0]["violation"]["y"] == ["0"]


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "polyvar.cli", str(PROBLEMS / "s1_certify.json"), "--json"],
                         capture_output=True, text=True, env={**os.environ})
    assert out.returncode == 0 and json.loads(out.stdout)["exit_code"] == 0
