from __future__ import annotations

import copy
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgeorbit.instance import (
    InstanceError,
    bundled_instances,
    instance_to_json,
    load_instance_data,
    parse_instance,
)
from hodgeorbit.scalars import Scalar, format_scalar

HALFPLANE = {
    "weight": 1,
    "hodge_numbers": {"1,0": 1, "0,1": 1},
    "form": [["0", "-1"], ["1", "0"]],
    "filtration": {"1": [["0", "1"]]},
    "nilpotents": [[["0", "1"], ["0", "0"]]],
}


def test_bundled_list():
    assert bundled_instances() == ["ggk_type3.json", "halfplane.json", "type1.json", "type2.json"]


def test_ggk_instance():
    doc = parse_instance("ggk_type3.json")
    assert doc.weight == 3 and doc.sqrt_d == 3
    assert doc.spec.hodge_type.rank == 4
    assert doc.cone.rank == 1
    assert doc.name == "ggk_type3"


@pytest.mark.parametrize("name", ["ggk_type3.json", "halfplane.json", "type1.json", "type2.json"])
def test_round_trip(name):
    doc = parse_instance(name)
    again = load_instance_data(json.loads(json.dumps(instance_to_json(doc))))
    assert again == doc
    assert again.flag == doc.flag


def test_parse_from_path(tmp_path):
    path = tmp_path / "hp.json"
    path.write_text(json.dumps(HALFPLANE))
    doc = parse_instance(path)
    assert doc.name == "hp" and doc.n == 2


def _error(raw) -> InstanceError:
    with pytest.raises(InstanceError) as info:
        load_instance_data(raw)
    return info.value


def test_symmetric_form_in_odd_weight_names_the_form():
    raw = copy.deepcopy(HALFPLANE)
    raw["form"] = [["0", "1"], ["1", "0"]]
    err = _error(raw)
    assert err.path == "$.form"
    assert "skew-symmetric" in str(err)


def test_asymmetric_hodge_numbers():
    raw = {
        "weight": 3,
        "hodge_numbers": {"3,0": 1, "2,1": 2, "1,2": 1, "0,3": 1},
        "form": [["0", "-1"], ["1", "0"]],
        "filtration": {},
    }
    err = _error(raw)
    assert err.path.startswith("$.hodge_numbers")
    assert "differs" in str(err)


def test_hodge_numbers_of_the_wrong_weight():
    raw = copy.deepcopy(HALFPLANE)
    raw["hodge_numbers"] = {"2,0": 1, "0,2": 1}
    assert _error(raw).path == "$.hodge_numbers.2,0"


@pytest.mark.parametrize(
    "mutate,path",
    [
        (lambda r: r["form"][0].__setitem__(1, -1), "$.form[0][1]"),
        (lambda r: r.pop("weight"), "$"),
        (lambda r: r.__setitem__("colour", "red"), "$"),
        (lambda r: r.__setitem__("sqrt_d", 4), "$.sqrt_d"),
        (lambda r: r["filtration"].__setitem__("x", []), "$.filtration"),
        (lambda r: r["filtration"]["1"][0].append("0"), "$.filtration.1[0]"),
        (lambda r: r["nilpotents"][0][0].__setitem__(0, "1/0"), "$.nilpotents[0][0][0]"),
        (lambda r: r["form"][1].__setitem__(0, "abc"), "$.form[1][0]"),
        (lambda r: r["form"][1].__setitem__(0, "(1 rt)"), "$.form[1][0]"),
        (lambda r: r["nilpotents"].append([["1", "0"], ["0", "0"]]), "$.nilpotents"),
    ],
)
def test_errors_name_the_field(mutate, path):
    raw = copy.deepcopy(HALFPLANE)
    mutate(raw)
    err = _error(raw)
    assert err.path == path


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        parse_instance("no_such_instance.json")


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    with pytest.raises(InstanceError):
        parse_instance(path)


gaussian = st.builds(
    lambda a, b: Scalar(a, 0, b),
    st.fractions(min_value=-4, max_value=4, max_denominator=9),
    st.fractions(min_value=-4, max_value=4, max_denominator=9),
)


@given(gaussian, gaussian)
def test_round_trip_property(a, b):
    if not (a or b):
        return
    raw = copy.deepcopy(HALFPLANE)
    raw["filtration"] = {"1": [[format_scalar(a), format_scalar(b)]]}
    doc = load_instance_data(raw)
    out = instance_to_json(doc)
    assert load_instance_data(out) == doc
    assert json.dumps(out, sort_keys=True) == json.dumps(instance_to_json(load_instance_data(out)), sort_keys=True)
