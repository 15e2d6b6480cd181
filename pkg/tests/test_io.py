import json

import pytest
from hypothesis import given

from lobbying.errors import NonMonotoneCost, ParseError
from lobbying.io import instance_to_dict, parse_instance, serialize_instance
from lobbying.model import VoterPlan, apply_bribery, example1

from conftest import small_instances


def example_doc():
    return instance_to_dict(example1())


def test_example_round_trip():
    text = serialize_instance(example1())
    assert parse_instance(text) == example1()
    assert json.loads(text)["threshold"] == {"num": 1, "den": 2}


@given(small_instances(weights=(1, 3)))
def test_round_trip_random(inst):
    assert parse_instance(serialize_instance(inst)) == inst


def test_fractional_prices_round_trip():
    inst = apply_bribery(example1(), VoterPlan((45, 0)))
    text = serialize_instance(inst)
    assert parse_instance(text) == inst


def test_missing_budget():
    doc = example_doc()
    del doc["budget"]
    with pytest.raises(ParseError, match="budget"):
        parse_instance(json.dumps(doc))


def test_unknown_key():
    doc = example_doc()
    doc["colour"] = "red"
    with pytest.raises(ParseError, match="colour"):
        parse_instance(json.dumps(doc))


def test_bad_json_reports_position():
    with pytest.raises(ParseError, match="line 1"):
        parse_instance('{"k": }')


def test_float_rejected_with_path():
    doc = example_doc()
    doc["probabilities"][1][2] = 0.4
    with pytest.raises(ParseError, match=r"probabilities\[1\]\[2\]"):
        parse_instance(json.dumps(doc))


def test_bad_threshold():
    doc = example_doc()
    doc["threshold"] = {"num": 1, "den": 0}
    with pytest.raises(ParseError, match="threshold.den"):
        parse_instance(json.dumps(doc))


def test_validation_errors_surface():
    doc = example_doc()
    doc["costs"][0][1][5] = 5
    with pytest.raises(NonMonotoneCost, match=r"costs\[0\]\[1\]"):
        parse_instance(json.dumps(doc))
