import json
from fractions import Fraction

from hyperterm.bundled import annihilated_spec, binomial_spec, constant_spec, odd_product_spec
from hyperterm.cli import main
from hyperterm.geometry import HalfSpace, Hyperplane, LatticeBox, PolyhedralRegion
from hyperterm.jsonio import (
    box_from_json,
    box_to_json,
    factored_from_json,
    factored_to_json,
    factorial_from_json,
    factorial_to_json,
    form_from_json,
    form_to_json,
    halfspace_from_json,
    halfspace_to_json,
    hyperplane_from_json,
    hyperplane_to_json,
    pochhammer_from_json,
    pochhammer_to_json,
    region_from_json,
    region_to_json,
    spec_from_json,
    spec_to_json,
    structure_from_json,
    structure_to_json,
)
from hyperterm.oresato import decompose
from hyperterm.structure import build_structure, split_factorial, to_pochhammer
from hyperterm.termratio import FactoredRational


def write_spec(tmp_path, spec, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(spec_to_json(spec)), encoding="utf-8")
    return str(path)


# -- serialization round trips ---------------------------------------------------


def test_spec_round_trip():
    for spec in [constant_spec(), odd_product_spec(), binomial_spec(), annihilated_spec()]:
        assert spec_from_json(spec_to_json(spec)) == spec


def test_factored_round_trip():
    from hyperterm.parsing import parse_multipoly

    fr = FactoredRational.make(
        2,
        Fraction(-3, 2),
        [(parse_multipoly("z1 + 1", 2), 2), (parse_multipoly("z1*z2 + 1", 2), 1)],
    )
    assert factored_from_json(factored_to_json(fr), 2) == fr


def test_geometry_round_trips():
    h = Hyperplane.make((2, -4), 6)
    assert hyperplane_from_json(hyperplane_to_json(h)) == h
    hs = HalfSpace.make((1, -2), 3)
    assert halfspace_from_json(halfspace_to_json(hs)) == hs
    r = PolyhedralRegion.make(2, [hs, HalfSpace.make((0, 1), -1)])
    assert region_from_json(region_to_json(r)) == r
    b = LatticeBox((-1, 4), 3)
    assert box_from_json(box_to_json(b)) == b


def test_form_round_trip():
    for spec in [odd_product_spec(), binomial_spec()]:
        form = decompose(spec)
        assert form_from_json(form_to_json(form), spec.arity) == form


def test_structure_round_trip():
    for spec in [odd_product_spec(), binomial_spec()]:
        ps = build_structure(spec)
        assert structure_from_json(structure_to_json(ps)) == ps


def test_factorial_and_pochhammer_round_trips():
    ps = build_structure(odd_product_spec())
    for ff in split_factorial(ps):
        assert factorial_from_json(factorial_to_json(ff)) == ff
        pf = to_pochhammer(ff)
        assert pochhammer_from_json(pochhammer_to_json(pf)) == pf


# -- commands ----------------------------------------------------------------------


def test_check_compatible(tmp_path, capsys):
    path = write_spec(tmp_path, binomial_spec())
    assert main(["check", path]) == 0
    assert capsys.readouterr().out.strip() == "compatible"


def test_check_incompatible(tmp_path, capsys):
    obj = {
        "k": 2,
        "generators": [
            {"num": "z2", "den": "1"},
            {"num": "1", "den": "1"},
        ],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj), encoding="utf-8")
    assert main(["check", str(path)]) == 1
    assert capsys.readouterr().out.strip() == "incompatible"


def test_eval_paper_value(tmp_path, capsys):
    path = write_spec(tmp_path, odd_product_spec())
    assert main(["eval", path, "--at", "-2"]) == 0
    assert capsys.readouterr().out.strip() == "1/3"


def test_eval_at_positive(tmp_path, capsys):
    path = write_spec(tmp_path, odd_product_spec())
    assert main(["eval", path, "--at", "3"]) == 0
    assert capsys.readouterr().out.strip() == "15"


def test_compare_command(tmp_path, capsys):
    path = write_spec(tmp_path, binomial_spec())
    assert main(["compare", path, "--window", "-6:6,-6:6"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["mismatches"] == []
    assert report["checked"] > 0


def test_decompose_command_output_file(tmp_path):
    path = write_spec(tmp_path, binomial_spec())
    out = tmp_path / "form.json"
    assert main(["decompose", path, "-o", str(out)]) == 0
    obj = json.loads(out.read_text(encoding="utf-8"))
    assert obj["C"] == "1" and obj["D"] == "1"
    assert len(obj["chains"]) == 3


def test_structure_command(tmp_path, capsys):
    path = write_spec(tmp_path, odd_product_spec())
    assert main(["structure", path]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["H"] == []
    assert len(obj["pieces"]) == 1
    assert obj["pieces"][0]["f0"] == "1"


def test_factorial_command(tmp_path, capsys):
    path = write_spec(tmp_path, odd_product_spec())
    assert main(["factorial", path]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert len(obj["forms"]) == 2


def test_pochhammer_command(tmp_path, capsys):
    path = write_spec(tmp_path, odd_product_spec())
    assert main(["pochhammer", path]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert len(obj["forms"]) == 2


def test_seed_override(tmp_path, capsys):
    path = write_spec(tmp_path, odd_product_spec())
    assert main(["eval", path, "--at", "1", "--seed", "0=2"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_deterministic_output(tmp_path):
    path = write_spec(tmp_path, binomial_spec())
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["structure", path, "-o", str(out1)]) == 0
    assert main(["structure", path, "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_usage_errors(tmp_path, capsys):
    path = write_spec(tmp_path, odd_product_spec())
    assert main(["eval", path]) == 2  # missing --at
    assert main(["check", str(tmp_path / "missing.json")]) == 2
    assert main(["compare", path, "--window", "0:4:9"]) == 2
    bad = tmp_path / "zero.json"
    bad.write_text(json.dumps({"k": 1, "generators": [{"num": "0", "den": "1"}]}))
    assert main(["check", str(bad)]) == 2
    capsys.readouterr()


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "hyperterm" in capsys.readouterr().out


def test_eval_undefined_point(tmp_path, capsys):
    # the binomial piece behind the zero wall has no derivable value
    path = write_spec(tmp_path, binomial_spec())
    assert main(["eval", path, "--at", "-4,-4"]) == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("undefined:")


def test_structure_zero_divisor_spec(tmp_path, capsys):
    path = write_spec(tmp_path, annihilated_spec())
    assert main(["structure", path]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["form"]["D"] == "z1"
    assert obj["pieces"][0]["f0"] == "0"


def test_structure_error_exit_code(tmp_path, capsys):
    # an expanded two-factor product cannot be classified once the factor
    # structure is gone from both generators
    from hyperterm.parsing import format_multipoly, parse_multipoly

    c = parse_multipoly("(z1 + z2 + 1)*(z1*z2 + 1)", 2)
    obj = {
        "k": 2,
        "generators": [
            {"num": format_multipoly(c.shift((1, 0))), "den": format_multipoly(c)},
            {"num": format_multipoly(c.shift((0, 1))), "den": format_multipoly(c)},
        ],
    }
    path = tmp_path / "opaque.json"
    path.write_text(json.dumps(obj), encoding="utf-8")
    assert main(["decompose", str(path)]) == 1
    assert "error" in capsys.readouterr().err
