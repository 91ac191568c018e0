# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Fixtures for all unit tests."""

# pylint: disable=redefined-outer-name

from pathlib import Path

import pytest

from src import types_
from src.finset import FinSetCategory
from src.matroid import MatroidCategory

from .. import factories

DATA_DIRECTORY = Path(__file__).parents[2] / "data"


@pytest.fixture()
def finset():
    """Get the finite set instance."""
    return FinSetCategory()


@pytest.fixture()
def matroids():
    """Get the pointed matroid instance."""
    return MatroidCategory()


@pytest.fixture()
def budget() -> types_.CategoryBudget:
    """Get a budget small enough for exhaustive checks."""
    return factories.CategoryBudgetFactory()


@pytest.fixture(scope="module")
def data_directory() -> Path:
    """Get the directory with the bundled matroid and span files."""
    return DATA_DIRECTORY
