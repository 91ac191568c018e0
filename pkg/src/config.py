# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Load run configurations, matroid files and span files."""

import typing
from pathlib import Path

import yaml

from . import matroid, types_
from .exceptions import InputError

CONFIG_KEY = "config"
BUDGET_KEY = "budget"
MATROID_KEYS = ("ground", "basepoint", "flats")
SPAN_KEYS = ("first", "second")
SPAN_BASE_KEY = "base"


def _read(path: Path) -> typing.Any:
    """Read a YAML or JSON file.

    Args:
        path: The file.

    Returns:
        The parsed content.

    Raises:
        InputError: if the file does not exist, is malformed or is empty.
    """
    if not path.is_file():
        raise InputError(f"Could not find file: {path}")
    try:
        content = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.error.YAMLError as exc:
        raise InputError(f"Malformed file: {path}") from exc
    if not content:
        raise InputError(f"File is empty: {path}")
    return content


def _mapping(content: typing.Any, path: Path, what: str) -> dict:
    """Check that parsed content is a mapping.

    Args:
        content: The parsed content.
        path: The file it came from.
        what: What the content describes.

    Returns:
        The mapping.

    Raises:
        InputError: if it is not a mapping.
    """
    if not isinstance(content, dict):
        raise InputError(f"{what} is not a mapping, read file: {path}, content: {content!r}")
    return content


def _matroid(content: typing.Any, path: Path) -> types_.Matroid:
    """Build a matroid from its file representation.

    Args:
        content: The parsed matroid.
        path: The file it came from.

    Returns:
        The checked matroid.

    Raises:
        InputError: if a key is missing or the flats are not those of a pointed matroid.
    """
    content = _mapping(content, path, "matroid")
    for key in MATROID_KEYS:
        if key not in content:
            raise InputError(
                f"Could not find required key: {key}, read file: {path}, content: {content!r}"
            )
    ground, flats = content["ground"], content["flats"]
    if not isinstance(ground, list) or not isinstance(flats, list):
        raise InputError(f"ground and flats must be lists, read file: {path}")
    if not all(isinstance(flat, list) for flat in flats):
        raise InputError(f"every flat must be a list of element names, read file: {path}")
    try:
        return matroid.make_matroid(ground, flats, content["basepoint"])
    except TypeError as exc:
        raise InputError(
            f"element names must be strings or integers, read file: {path}"
        ) from exc
    except InputError as exc:
        raise InputError(f"{exc}, read file: {path}") from exc


def load_matroid(path: Path) -> types_.Matroid:
    """Read a matroid file.

    Args:
        path: The file with ground, basepoint and flats.

    Returns:
        The matroid.
    """
    return _matroid(_read(path), path)


def load_span(path: Path) -> tuple[types_.Matroid, types_.Matroid, types_.Matroid | None]:
    """Read a span file.

    Args:
        path: The file with the matroids first and second and optionally their base.

    Returns:
        Both members and the base.

    Raises:
        InputError: if a member is missing.
    """
    content = _mapping(_read(path), path, "span")
    for key in SPAN_KEYS:
        if key not in content:
            raise InputError(f"Could not find required key: {key}, read file: {path}")
    base = content.get(SPAN_BASE_KEY)
    return (
        _matroid(content["first"], path),
        _matroid(content["second"], path),
        None if base is None else _matroid(base, path),
    )


def _enum(enum: type, value: typing.Any, key: str) -> typing.Any:
    """Parse an enum value.

    Args:
        enum: The enum.
        value: The value.
        key: The key it was read from.

    Returns:
        The member.

    Raises:
        InputError: if there is no such member.
    """
    try:
        return enum(value)
    except ValueError as exc:
        choices = ", ".join(member.value for member in enum)
        raise InputError(
            f"Invalid value for {key}: {value!r}, expected one of {choices}"
        ) from exc


def _integer(value: typing.Any, key: str, minimum: int = 0) -> int:
    """Check an integer value.

    Args:
        value: The value.
        key: The key it was read from.
        minimum: The least allowed value.

    Returns:
        The value.

    Raises:
        InputError: if the value is not an integer of at least minimum.
    """
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise InputError(f"Invalid value for {key}: {value!r}, expected an integer >= {minimum}")
    return value


def _optional_string(value: typing.Any, key: str) -> str | None:
    """Check an optional string value.

    Args:
        value: The value.
        key: The key it was read from.

    Returns:
        The value.

    Raises:
        InputError: if the value is neither a string nor missing.
    """
    if value is not None and not isinstance(value, str):
        raise InputError(f"Invalid value for {key}: {value!r}, expected a string")
    return value


def _budget(content: typing.Any) -> types_.CategoryBudget:
    """Parse a budget.

    Args:
        content: The budget mapping.

    Returns:
        The budget.

    Raises:
        InputError: if the budget is not a mapping of known integer fields.
    """
    if not isinstance(content, dict):
        raise InputError(f"Invalid value for {BUDGET_KEY}: {content!r}, expected a mapping")
    if unknown := set(content) - set(types_.CategoryBudget._fields):
        raise InputError(f"Invalid configuration, unknown budget keys: {sorted(unknown)!r}")
    if "max_object_size" not in content:
        raise InputError(f"Invalid configuration, {BUDGET_KEY} misses max_object_size")
    return types_.CategoryBudget(
        **{key: _integer(value, f"{BUDGET_KEY}.{key}") for key, value in content.items()}
    )


def _queries(content: typing.Any) -> tuple[str, ...]:
    """Parse the queries.

    Args:
        content: The list of query expressions.

    Returns:
        The queries.

    Raises:
        InputError: if the queries are not a list of strings.
    """
    if content is None:
        return ()
    if not isinstance(content, list) or not all(isinstance(query, str) for query in content):
        raise InputError(f"Invalid value for queries: {content!r}, expected a list of strings")
    return tuple(content)


def from_mapping(content: dict, source: str = "<mapping>") -> types_.RunConfig:
    """Build a run configuration from its echoed form.

    Args:
        content: The configuration, or a whole report containing it.
        source: Where the content came from.

    Returns:
        The configuration.

    Raises:
        InputError: if a key is missing or has a value of the wrong type.
    """
    content = content.get(CONFIG_KEY, content)
    if "command" not in content:
        raise InputError(f"Could not find required key: command, read: {source}")
    try:
        return types_.RunConfig(
            command=_enum(types_.Command, content["command"], "command"),
            instance=_enum(types_.InstanceName, content.get("instance", "finset"), "instance"),
            file=_optional_string(content.get("file"), "file"),
            budget=_budget(content.get(BUDGET_KEY) or {}),
            dim=_integer(content.get("dim", 1), "dim"),
            scheme=_enum(types_.Scheme, content.get("scheme", "baseline"), "scheme"),
            queries=_queries(content.get("queries")),
            workers=_integer(content.get("workers", 1), "workers", minimum=1),
            mutant=_optional_string(content.get("mutant"), "mutant"),
            out=_optional_string(content.get("out"), "out"),
        )
    except InputError as exc:
        raise InputError(f"{exc}, read: {source}") from exc


def load(path: Path) -> types_.RunConfig:
    """Read a configuration file or a report.

    Args:
        path: The YAML or JSON file.

    Returns:
        The configuration.
    """
    return from_mapping(_mapping(_read(path), path, "configuration"), str(path))


def to_dict(config: types_.RunConfig) -> dict:
    """Echo a configuration.

    Args:
        config: The configuration.

    Returns:
        The JSON ready configuration, readable by from_mapping.
    """
    return {
        "command": config.command.value,
        "instance": config.instance.value,
        "file": config.file,
        "budget": config.budget._asdict(),
        "dim": config.dim,
        "scheme": config.scheme.value,
        "queries": list(config.queries),
        "workers": config.workers,
        "mutant": config.mutant,
        "out": config.out,
    }
