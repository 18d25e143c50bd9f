import json

import pytest

from thompson_jones.acceptance import TREFOIL
from thompson_jones.cli import main
from thompson_jones.config import ENV_VAR, Config, load_config
from thompson_jones.errors import ValidationError

X0 = "11000/10100"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# the documented examples


def test_koopman_coefficient_of_x0(capsys):
    code, out, _ = run(capsys, "coeff", "--engine", "koopman", X0)
    assert code == 0
    assert abs(float(out) - 0.957106781) < 1e-9


def test_link_code_has_four_lines(capsys):
    code, out, _ = run(capsys, "link", X0, "--format", "code")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4 and all(x.startswith("X(") for x in lines)


def test_product_with_inverse(capsys):
    assert run(capsys, "mul", X0, "10100/11000")[:2] == (0, "0/0\n")


def test_dyck_violation_is_a_parse_error(capsys):
    code, out, err = run(capsys, "normal-form", "1100/10100")
    assert code == 2 and not out
    assert err.startswith("error: parse:") and "Dyck" in err
    assert err.count("\n") == 1


# verbs


def test_normal_form_reduces(capsys):
    assert run(capsys, "normal-form", "1100100/1010100")[1] == "11000/10100\n"
    assert run(capsys, "normal-form", "--unreduced", "100/100")[1] == "100/100\n"


def test_inverse_and_action(capsys):
    assert run(capsys, "inv", X0)[1] == "10100/11000\n"
    assert run(capsys, "act", X0, "0110")[1] == "00110\n"


def test_plmap_json(capsys):
    code, out, _ = run(capsys, "plmap", X0, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["breakpoints"] == ["0", "1/2", "3/4", "1"]
    assert data["slopes"] == ["1/2", "1", "2"]


def test_fixmeasure(capsys):
    assert run(capsys, "fixmeasure", "1100100/1011000")[0] == 0
    assert run(capsys, "fixmeasure", "0/0")[1] == "1\n"


def test_symbolic_coefficient(capsys):
    assert run(capsys, "coeff", "--engine", "symbolic", X0)[1] == "⟨Aξ,AAξ⟩+⟨ABξ,BAξ⟩+⟨BBξ,Bξ⟩\n"


def test_coeff_json_shape(capsys):
    code, out, _ = run(capsys, "coeff", "--engine", "property-t", "--theta", "0.5", X0, "--format", "json")
    data = json.loads(out)
    assert set(data) == {"element", "engine", "parameters", "value"}
    assert data["parameters"] == {"theta": 0.5}
    assert data["value"][1] == 0


def test_deformed_needs_parameters(capsys):
    code, _, err = run(capsys, "coeff", "--engine", "deformed", X0)
    assert code == 1 and err.startswith("error: ")


def test_deformed_rejects_non_isometry(capsys):
    code, _, err = run(capsys, "coeff", "--engine", "deformed", "--v", "1", "--w", "1", X0)
    assert code == 1


def test_direct_sum_parameter_file(tmp_path, capsys):
    p = tmp_path / "rep.json"
    p.write_text(json.dumps({"A": [[0.6]], "B": [[0.8]], "xi": [1]}))
    code, out, _ = run(capsys, "coeff", "--engine", "direct-sum", "--params", str(p), "0/0")
    assert code == 0 and float(out) == 1
    p.write_text(json.dumps({"A": [[0.6]]}))
    assert run(capsys, "coeff", "--engine", "direct-sum", "--params", str(p), "0/0")[0] == 2
    p.write_text("{")
    assert run(capsys, "coeff", "--engine", "direct-sum", "--params", str(p), "0/0")[0] == 2


def test_gram(capsys):
    code, out, _ = run(capsys, "gram", "--random", "8", "--seed", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["psd"] and len(data["matrix"]) == 8
    assert run(capsys, "gram")[0] == 1


def test_bracket_engines_agree(capsys):
    a = run(capsys, "bracket", X0, "--format", "json")[1]
    b = run(capsys, "bracket", X0, "--engine", "states", "--format", "json")[1]
    assert a == b
    assert json.loads(a)["bracket"] == {"0": 1}


def test_bracket_of_diagram_file(tmp_path, capsys):
    p = tmp_path / "trefoil.txt"
    p.write_text(TREFOIL)
    code, out, _ = run(capsys, "bracket", "--diagram", str(p), "--format", "json")
    assert code == 0
    assert json.loads(out)["bracket"] == {"-3": -1, "-7": 1, "5": -1}
    p.write_text("X(1,2)")
    assert run(capsys, "bracket", "--diagram", str(p))[0] == 2


def test_link_of_non_f_element_is_a_domain_error(capsys):
    code, _, err = run(capsys, "link", "10100/r1/11000")
    assert code == 1 and "UnsupportedFlavor" in err


def test_link_svg(tmp_path, capsys):
    out = tmp_path / "x0.svg"
    code, printed, _ = run(capsys, "link", X0, "--format", "svg", "--out", str(out))
    assert code == 0 and not printed
    assert out.read_text().lstrip().startswith("<?xml")
    assert run(capsys, "inv", X0, "--format", "svg")[0] == 1


def test_orientable(capsys):
    assert run(capsys, "orientable", X0)[1] == "false\n"
    data = json.loads(run(capsys, "orientable", "0/0", "--format", "json")[1])
    assert data == {"element": "0/0", "orientable": True, "shading": "outer", "stabilizer": True}


def test_jt_index(tmp_path, capsys):
    code, out, _ = run(capsys, "jt-index", "--link", "unknot", "--max-leaves", "2", "--format", "json")
    assert code == 0 and json.loads(out)["leaves"] == 1
    code, _, err = run(capsys, "jt-index", "--link", "trefoil", "--max-leaves", "3")
    assert code == 1 and "NotFound" in err
    fp = tmp_path / "fp.json"
    fp.write_text(json.dumps({"components": 1, "bracket": {"0": 1}}))
    assert run(capsys, "jt-index", "--target", str(fp), "--max-leaves", "2")[0] == 0


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-leaves", "2", "--flavor", "V")
    assert out.split() == ["0/[0]/0", "100/[1,0]/100"]
    data = json.loads(run(capsys, "enumerate", "--max-leaves", "4", "--format", "json")[1])
    assert data["count"] == len(data["elements"]) == 17


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("[PASS]  1.") and lines[1].startswith("[PASS]  5.")
    assert lines[-1] == "2/2 checks passed"


# argument handling


def test_usage_errors_exit_with_two(capsys):
    for argv in (["nope"], ["act", X0], ["coeff", "--engine", "nope", X0], []):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
    capsys.readouterr()


def test_json_output_is_stable(capsys):
    a = run(capsys, "link", X0, "--format", "json")[1]
    b = run(capsys, "link", X0, "--format", "json")[1]
    assert a == b
    assert list(json.loads(a)) == sorted(json.loads(a))


# configuration


def test_config_defaults(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    cfg = load_config()
    assert cfg == Config() and cfg.shading == "outer"


def test_config_file(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"max_crossings": 3, "shading": "inner"}))
    cfg = load_config(str(p))
    assert cfg.max_crossings == 3 and cfg.shading == "inner"
    for bad in ({"colour": 1}, {"shading": "both"}, {"tolerance": -1}, [1]):
        p.write_text(json.dumps(bad))
        with pytest.raises(ValidationError):
            load_config(str(p))
    with pytest.raises(ValidationError):
        load_config(str(tmp_path / "missing.json"))


def test_config_from_environment(tmp_path, monkeypatch, capsys):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"max_crossings": 2}))
    monkeypatch.setenv(ENV_VAR, str(p))
    assert load_config().max_crossings == 2
    code, _, err = run(capsys, "bracket", X0)
    assert code == 1 and "GrowthError" in err
    # an explicit file wins over the environment
    q = tmp_path / "d.json"
    q.write_text("{}")
    assert run(capsys, "bracket", X0, "--config", str(q))[0] == 0


def test_tolerance_flag(capsys):
    assert run(capsys, "coeff", "--engine", "deformed", "--v", "0.6", "--w", "0.8000001", X0)[0] == 1
    code, _, _ = run(capsys, "coeff", "--engine", "deformed", "--v", "0.6", "--w", "0.8000001", "--tolerance", "1e-3", X0)
    assert code == 0
