from __future__ import annotations

import json

import pytest
from sympy import Rational

from core.algebra.weyl import ProjectiveWeight
from core.errors import InputError
from core.fixtures import FIXTURES, fixture, fixture_names
from core.gkz.geom import l_umbrella
from core.gkz.hyper import a_discriminant
from core.serial import packer
from core.serial.parser import load_system, parse_system


def write(tmp_path, data) -> str:
    path = tmp_path / "system.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


# --- 解析 ---------------------------------------------------------------------

def test_every_fixture_parses():
    kinds = {name: parse_system(fixture(name), name).kind for name in fixture_names()}
    assert kinds["A2"] == "hypergeometric"
    assert kinds["example-x1"] == "weyl"
    assert kinds["truncated"] == "truncated"
    assert kinds["binomial"] == "binomial"


def test_fixture_is_a_copy():
    data = fixture("A2")
    data["beta"].append("9")
    assert FIXTURES["A2"]["beta"] == ["1/2", "1/3"]


def test_load_file_and_fixture(tmp_path):
    spec = load_system(write(tmp_path, {"A": [["1", "1", "1"], ["0", "1", "2"]], "beta": ["1/2", "1/3"]}))
    assert spec.matrix.ncols == 3
    assert spec.beta == (Rational(1, 2), Rational(1, 3))
    assert spec.weight_or_order() == ProjectiveWeight.order_filtration(3)
    assert load_system("A2").source == "fixture:A2"
    with pytest.raises(InputError, match="no such file"):
        load_system(str(tmp_path / "missing.json"))


def test_weight_from_file(tmp_path):
    spec = load_system(write(tmp_path, {"A": [[1, 1, 1], [0, 1, 2]], "L_x": ["1", "0", "1"], "L_d": ["0", "1", "0"]}))
    assert spec.weight == ProjectiveWeight((1, 0, 1), (0, 1, 0))


@pytest.mark.parametrize(
    "data, message",
    [
        ({"A": [[1, "a"]]}, "integers"),
        ({"A": [[1, 1], [1]]}, "different lengths"),
        ({"A": [[1, 1]], "beta": ["1", "2"]}, "beta"),
        ({"A": [[1, 1]], "L_x": ["0", "0"]}, "both"),
        ({"A": [[1, 1]], "L_x": ["0"], "L_d": ["1"]}, "entries"),
        ({"A": [[1, 1]], "colour": "red"}, "unknown keys"),
        ({"weyl": ["x1"]}, "positive integer"),
        ({"beta": ["1"]}, "missing 'A'"),
        ({"A": [[1, 1]], "ideal": ["d3"]}, "unknown variable"),
        ({"A": [[1, 1, 1]], "breve_A": [[1, 1]]}, "column counts"),
    ],
)
def test_parse_errors(data, message):
    with pytest.raises(InputError, match=message):
        parse_system(data, "bad.json")


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\"A\": [[1, 1]", encoding="utf-8")
    with pytest.raises(InputError, match="invalid JSON"):
        load_system(str(path))


def test_overrides():
    spec = load_system("A2").with_overrides(beta=(Rational(1), Rational(2)), theta=True)
    assert spec.beta == (1, 2)
    assert spec.theta
    assert load_system("A2").with_overrides().beta == (Rational(1, 2), Rational(1, 3))


def test_truncated_requires_matching_rows():
    data = {"A": [[0, 1, 2]], "breve_A": [[1, 1, 1], [0, 1, 2]], "beta": ["1"]}
    with pytest.raises(InputError, match="first rows"):
        parse_system(data, "t.json").truncated()


def test_binomial_defaults_to_toric_ideal():
    spec = parse_system({"A": [[1, 1, 1], [0, 1, 2]], "ideal": ["d1*d3 - d2^2"], "beta": ["0", "0"]})
    assert spec.binomial().n == 3
    assert len(load_system("truncated").binomial().ideal.gens) == 1


# --- 报告 ---------------------------------------------------------------------

def test_rational_format():
    assert packer.rational(Rational(-3, 4)) == "-3/4"
    assert packer.rational(5) == "5"
    assert packer.vector([Rational(1, 2), 0]) == ["1/2", "0"]


def test_umbrella_report():
    spec = load_system("A2")
    report = packer.umbrella(l_umbrella(spec.pointed(), spec.weight_or_order()))
    assert [f["members"] for f in report["faces"]] == [[], [1], [3], [1, 2, 3]]
    assert [f["facet"] for f in report["faces"]] == [False, False, False, True]
    assert report["faces"][1]["pyramid"] is True
    assert report["faces"][3]["core"] == [1, 2, 3]
    assert report["weight"] == {"L_x": ["0", "0", "0"], "L_d": ["1", "1", "1"]}


def test_dumps_is_stable():
    report = {"discriminant": packer.discriminant(a_discriminant(load_system("A2").matrix)), "b": [1, 2]}
    text = packer.dumps(report)
    assert text.endswith("\n")
    assert packer.dumps(packer.loads(text)) == text
    assert packer.loads(text)["discriminant"]["poly"] == "x2^2 - 4*x1*x3"
    assert packer.loads(text)["discriminant"]["columns"] == [1, 2, 3]
