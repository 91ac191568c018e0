# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit tests for config module."""

from pathlib import Path

import pytest
import yaml

from src import config, exceptions, matroid, types_

from .. import factories
from .helpers import create_json


def test_load_matroid_missing(tmp_path: Path):
    """
    arrange: given empty directory
    act: when load_matroid is called with a file in that directory
    assert: then InputError is raised.
    """
    with pytest.raises(exceptions.InputError) as exc_info:
        config.load_matroid(tmp_path / "matroid.json")

    message = str(exc_info.value).lower()
    assert "could not find file" in message
    assert "matroid.json" in message


@pytest.mark.parametrize(
    "content, expected_error_msg_contents",
    [
        pytest.param("", ("empty",), id="empty"),
        pytest.param("malformed: yaml:", ("malformed",), id="malformed"),
        pytest.param("value 1", ("not", "mapping"), id="not dict"),
    ],
)
def test_load_matroid_malformed(
    content: str, expected_error_msg_contents: tuple[str, ...], tmp_path: Path
):
    """
    arrange: given a matroid file that is malformed
    act: when load_matroid is called
    assert: then InputError is raised.
    """
    path = tmp_path / "matroid.yaml"
    path.write_text(content, encoding="utf-8")

    with pytest.raises(exceptions.InputError) as exc_info:
        config.load_matroid(path)

    message = str(exc_info.value).lower()
    assert all(content in message for content in expected_error_msg_contents)
    assert "matroid.yaml" in message


@pytest.mark.parametrize(
    "content, expected_error_msg_contents",
    [
        pytest.param(
            {"ground": [0, 1], "basepoint": 0},
            ("could not find required key", "flats"),
            id="missing flats",
        ),
        pytest.param(
            {"ground": "01", "basepoint": 0, "flats": []},
            ("must be lists",),
            id="ground not a list",
        ),
        pytest.param(
            {"ground": [0, 1], "basepoint": 0, "flats": [0, 1]},
            ("every flat",),
            id="flat not a list",
        ),
        pytest.param(
            {"ground": [0, 1], "basepoint": 0, "flats": [[], [0, 1]]},
            ("not a loop",),
            id="basepoint not a loop",
        ),
        pytest.param(
            {"ground": [0, 1, 2], "basepoint": 0, "flats": [[0], [0, 1], [0, 2]]},
            ("not a matroid", "ground set"),
            id="ground not a flat",
        ),
        pytest.param(
            {"ground": [0, [1]], "basepoint": 0, "flats": [[0], [0, [1]]]},
            ("element names",),
            id="unhashable element",
        ),
    ],
)
def test_load_matroid_invalid(
    content: dict, expected_error_msg_contents: tuple[str, ...], tmp_path: Path
):
    """
    arrange: given a matroid file with a missing key or flats that fail the axioms
    act: when load_matroid is called
    assert: then InputError naming the problem and the file is raised.
    """
    path = create_json(content, tmp_path / "matroid.json")

    with pytest.raises(exceptions.InputError) as exc_info:
        config.load_matroid(path)

    message = str(exc_info.value).lower()
    assert all(content in message for content in expected_error_msg_contents)
    assert "matroid.json" in message


def test_load_matroid(data_directory: Path):
    """
    arrange: given the shipped uniform rank two matroid on four points
    act: when load_matroid is called
    assert: then the matroid is returned.
    """
    assert config.load_matroid(data_directory / "u24.json") == matroid.uniform_matroid(
        2, (1, 2, 3, 4)
    )


def test_load_matroid_yaml(tmp_path: Path):
    """
    arrange: given a free matroid written as YAML
    act: when load_matroid is called
    assert: then the free matroid is returned.
    """
    path = tmp_path / "matroid.yaml"
    path.write_text(yaml.safe_dump(factories.MatroidFileFactory()), encoding="utf-8")

    assert config.load_matroid(path) == matroid.free_matroid((1, 2))


def test_load_span_missing_member(tmp_path: Path):
    """
    arrange: given a span file without its second member
    act: when load_span is called
    assert: then InputError is raised.
    """
    content = factories.SpanFileFactory()
    del content["second"]
    path = create_json(content, tmp_path / "span.json")

    with pytest.raises(exceptions.InputError) as exc_info:
        config.load_span(path)

    assert "Could not find required key: second" in str(exc_info.value)


def test_load_span_without_base(tmp_path: Path):
    """
    arrange: given a span file without a base
    act: when load_span is called
    assert: then both members are returned with no base.
    """
    path = create_json(factories.SpanFileFactory(), tmp_path / "span.json")

    first, second, base = config.load_span(path)

    assert first == matroid.free_matroid((1, 2))
    assert second == matroid.free_matroid((3,))
    assert base is None


@pytest.mark.parametrize(
    "data_file",
    [
        pytest.param("free_span.json", id="free"),
        pytest.param("point_span.json", id="point"),
        pytest.param("rank2_parallel_extension.json", id="rank two"),
    ],
)
def test_load_span_shipped(data_directory: Path, data_file: str):
    """
    arrange: given a shipped span file
    act: when load_span is called
    assert: then every matroid read satisfies the flat axioms.
    """
    members = config.load_span(data_directory / data_file)

    assert all(
        matroid.is_matroid(member.flats, member.ground)
        for member in members
        if member is not None
    )


@pytest.mark.parametrize(
    "content, expected_error_msg_contents",
    [
        pytest.param({"instance": "finset"}, ("could not find required key", "command")),
        pytest.param(
            {"command": "k2", "budget": {"max_object_size": 2}},
            ("invalid value for command", "k2"),
        ),
        pytest.param(
            {"command": "k0", "instance": "groups", "budget": {"max_object_size": 2}},
            ("invalid value for instance", "groups"),
        ),
        pytest.param(
            {"command": "k1", "scheme": "quillen", "budget": {"max_object_size": 2}},
            ("invalid value for scheme", "quillen"),
        ),
        pytest.param(
            {"command": "k0", "budget": {"max_size": 2}},
            ("invalid configuration",),
        ),
        pytest.param(
            {"command": "enumerate", "dim": "one", "budget": {"max_object_size": 2}},
            ("invalid value for dim", "'one'"),
        ),
        pytest.param(
            {"command": "k1", "queries": "l_tau", "budget": {"max_object_size": 2}},
            ("invalid value for queries", "list of strings"),
        ),
        pytest.param(
            {"command": "k1", "queries": ["l_tau", 2], "budget": {"max_object_size": 2}},
            ("invalid value for queries",),
        ),
        pytest.param(
            {"command": "k0", "budget": {"max_object_size": "3"}},
            ("invalid value for budget.max_object_size", "'3'"),
        ),
        pytest.param(
            {"command": "k0", "budget": {"max_object_size": 2, "rng_seed": 1.5}},
            ("invalid value for budget.rng_seed",),
        ),
        pytest.param(
            {"command": "k0", "budget": {"sample_count": 5}},
            ("invalid configuration", "max_object_size"),
        ),
        pytest.param(
            {"command": "k0", "budget": [2]},
            ("invalid value for budget", "mapping"),
        ),
        pytest.param(
            {"command": "k0", "workers": 0, "budget": {"max_object_size": 2}},
            ("invalid value for workers", ">= 1"),
        ),
        pytest.param(
            {"command": "k0", "workers": True, "budget": {"max_object_size": 2}},
            ("invalid value for workers",),
        ),
        pytest.param(
            {"command": "k0", "out": 7, "budget": {"max_object_size": 2}},
            ("invalid value for out", "string"),
        ),
    ],
)
def test_from_mapping_invalid(content: dict, expected_error_msg_contents: tuple[str, ...]):
    """
    arrange: given configuration with missing required keys or invalid value
    act: when from_mapping is called
    assert: InputError is raised with the offending key.
    """
    with pytest.raises(exceptions.InputError) as exc_info:
        config.from_mapping(content)

    message = str(exc_info.value).lower()
    assert all(content in message for content in expected_error_msg_contents)


def test_from_mapping_defaults():
    """
    arrange: given configuration with only a command and a budget
    act: when from_mapping is called
    assert: then the remaining options take their defaults.
    """
    run_config = config.from_mapping({"command": "k0", "budget": {"max_object_size": 2}})

    assert run_config == types_.RunConfig(
        command=types_.Command.K0, budget=types_.CategoryBudget(max_object_size=2)
    )


def test_load_echoed_report(tmp_path: Path):
    """
    arrange: given a report echoing a configuration
    act: when load is called on the report
    assert: then the echoed configuration is returned.
    """
    run_config = types_.RunConfig(
        command=types_.Command.K1,
        budget=types_.CategoryBudget(max_object_size=2, sample_count=5, rng_seed=7),
        scheme=types_.Scheme.NENASHEV,
        queries=("l_tau", "2*l_tau"),
    )
    path = create_json(
        {"config": config.to_dict(run_config), "result": {}}, tmp_path / "report.json"
    )

    assert config.load(path) == run_config


def test_load_not_mapping(tmp_path: Path):
    """
    arrange: given a configuration file holding a list
    act: when load is called
    assert: then InputError is raised.
    """
    path = create_json(["k0"], tmp_path / "config.json")

    with pytest.raises(exceptions.InputError) as exc_info:
        config.load(path)

    assert "not a mapping" in str(exc_info.value)
    assert "config.json" in str(exc_info.value)
