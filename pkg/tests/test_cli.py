import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from toric_lch.cli import main
from toric_lch.inputs import (ParseError, ValidationError, load_document, parse_input, preset)
from toric_lch.laurent import LaurentPoly
from toric_lch.serialize import table_from_json

CLIFFORD3_TOML = """
name = "clifford 3 by hand"

[polytope]
dim = 2
facets = [
  { normal = [1, 0], offset = "0" },
  { normal = [0, 1], offset = "0" },
  { normal = [-1, -1], offset = "1" },
]

[lift]
sublattice = [[-1, 1], [-2, -1]]
fiber_points = 3
components = [{ label = "1", phase = "0" }]

[options]
vertex = [1, 0]
max_word_len = 4
"""


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv,expected", [
    (("augpoly", "--example", "clifford", "3"), "1 + y1 + y2"),
    (("augpoly", "clifford", "2"), "1 + y1"),
    (("augpoly", "--example", "p1xp1"), "1 + y1 + y2 + y1*y2"),
    (("augpoly", "cliffordanti", "3"), "1 + y1^2*y2 + y1*y2^2"),
    (("potential", "p1xp1"), "x2^-1 + x1^-1 + x1 + x2"),
])
def test_goldens(argv, expected):
    code, out = run(*argv)
    assert code == 0 and out.strip() == expected


def test_exit_codes():
    assert run("d2check", "--fixture", "synthetic-closed")[0] == 0
    assert run("d2check", "--fixture", "synthetic-mutated")[0] == 1
    assert run("d2check", "hopf", "3")[0] == 0
    assert run("augcheck", "--fixture", "hopf3")[0] == 0
    assert run("augcheck", "--fixture", "cp1-zero")[0] == 1
    assert run("chaincheck", "--fixture", "scale")[0] == 0
    assert run("chaincheck", "--fixture", "zero")[0] == 1
    assert run("mc-residual", "--fixture", "linear")[0] == 0
    assert run("mc-residual", "--fixture", "curved")[0] == 1
    assert run("variety-member", "p1xp1", "--point=-1,5")[0] == 0
    assert run("variety-member", "p1xp1", "--point=1,5")[0] == 1
    assert run("augpoly", "nosuch")[0] == 2
    assert run("augpoly", "clifford", "x")[0] == 2
    assert run("d2check", "--fixture", "nosuch")[0] == 2


def test_validate_reports_invalid_polytope(tmp_path):
    doc = {"polytope": {"facets": [{"normal": [1, 0], "offset": 0}, {"normal": [-1, 2], "offset": 0},
                                   {"normal": [0, -1], "offset": 1}]}}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out = run("validate", str(p), "--json")
    data = json.loads(out)
    assert code == 1 and data["error"] == "NotSmooth" and data["schema"] == 1


def test_toml_input(tmp_path):
    p = tmp_path / "c3.toml"
    p.write_text(CLIFFORD3_TOML)
    spec = parse_input(load_document(str(p)))
    assert spec.lift.index == 3 and spec.truncation.max_word_len == 4
    assert run("augpoly", str(p))[1].strip() == "1 + y1 + y2"


def test_auto_sublattice(tmp_path):
    doc = load_document_from_text(CLIFFORD3_TOML.replace("sublattice = [[-1, 1], [-2, -1]]",
                                                         'sublattice = "auto"'), tmp_path)
    spec = parse_input(doc)
    assert spec.lift.index == 3


def load_document_from_text(text, tmp_path):
    p = tmp_path / "doc.toml"
    p.write_text(text)
    return load_document(str(p))


def test_malformed_facet_is_validation_error():
    doc = {"polytope": {"facets": [{"normal": [1.5, 0], "offset": 0}]}}
    with pytest.raises(ValidationError) as exc:
        parse_input(doc)
    assert "facets[0].normal" in exc.value.field


def test_parse_error_has_location(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"polytope":\n  {"facets": [}\n}')
    with pytest.raises(ParseError) as exc:
        load_document(str(p))
    assert ":2:" in exc.value.location
    t = tmp_path / "broken.toml"
    t.write_text("[polytope\nfacets = 1\n")
    with pytest.raises(ParseError) as exc:
        load_document(str(t))
    assert "line 1" in str(exc.value)
    assert run("augpoly", str(p))[0] == 2


def test_presets_round_trip_through_json(tmp_path):
    for name, args in [("clifford", ["4"]), ("cliffordanti", ["3"]), ("hopf", ["3"]), ("p1xp1", [])]:
        spec = preset(name, args)
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(spec.to_json()))
        again = parse_input(load_document(str(p)))
        assert again.polytope == spec.polytope and again.lift == spec.lift
        assert again.vertex == spec.vertex


def test_examples_command_emits_parseable_input(tmp_path):
    code, out = run("examples", "hopf", "3")
    p = tmp_path / "h.json"
    p.write_text(out)
    assert code == 0 and parse_input(load_document(str(p))).lift.components[1].phase == Fraction(1, 6)


def test_json_polynomial_round_trip():
    code, out = run("augpoly", "p1xp1", "--json")
    data = json.loads(out)
    poly = LaurentPoly.from_json(data["terms"], 2)
    assert poly.format(["y1", "y2"]) == data["polynomial"]


def test_json_table_round_trip():
    code, out = run("leading-diff", "hopf", "3", "--json")
    data = json.loads(out)
    T = table_from_json(data["table"])
    from toric_lch.serialize import table_to_json
    assert table_to_json(T) == data["table"]


def test_table_file_input(tmp_path):
    code, out = run("leading-diff", "--fixture", "synthetic-mutated", "--json")
    p = tmp_path / "t.json"
    p.write_text(json.dumps(json.loads(out)["table"]))
    assert run("d2check", str(p))[0] == 1


def test_augmentation_file_input(tmp_path):
    code, out = run("leading-diff", "clifford", "2", "--json")
    table = json.loads(out)["table"]
    doc = {"table": table, "augmentation": {"variables": ["-1"], "values": {}}}
    p = tmp_path / "aug.json"
    p.write_text(json.dumps(doc))
    assert run("augcheck", str(p))[0] == 0
    doc["augmentation"]["variables"] = ["2"]
    p.write_text(json.dumps(doc))
    assert run("augcheck", str(p))[0] == 1


def test_mc_file_input(tmp_path):
    doc = {"generators": [{"symbol": "x0"}, {"symbol": "g"}],
           "m": {"0": [{"inputs": [], "output": [{"word": ["x0"], "coeff": [{"coeff": "1", "exp": []}]}]}],
                 "1": [{"inputs": ["g"], "output": [{"word": ["x0"], "coeff": [{"coeff": "-1/2", "exp": []}]}]}]},
           "b": [{"word": ["g"], "coeff": [{"coeff": "2", "exp": []}]}]}
    p = tmp_path / "mc.json"
    p.write_text(json.dumps(doc))
    assert run("mc-residual", str(p))[0] == 0


@pytest.mark.parametrize("argv", [
    ["generators", "hopf", "4", "--json"], ["leading-diff", "hopf", "3", "--json"],
    ["abelianize", "--fixture", "t2"], ["augpoly", "clifford", "5", "--json"],
])
def test_deterministic_subprocess(argv):
    outs = [subprocess.run([sys.executable, "-m", "toric_lch", *argv], capture_output=True,
                           check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]


def test_flags_override_preset():
    assert run("augpoly", "clifford", "3", "--signs", "1,-1,-1")[1].strip() == "1 - y1 - y2"
    code, out = run("augpoly", "clifford", "3", "--vertex", "0,1", "--json")
    assert json.loads(out)["vertex"] == [0, 1]
    assert run("augpoly", "clifford", "3", "--vertex", "0,0")[0] == 2
