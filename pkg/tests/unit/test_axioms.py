# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit tests for axioms module."""

from pathlib import Path
from unittest import mock

import pytest

from src import axioms, config, exceptions, types_
from src.finset import FinSetCategory, FinSetMutant
from src.matroid import MatroidCategory

from .. import factories

PCGW_AXIOMS = ("A", "PQ", "DS")


def test_distinguished_squares(finset: FinSetCategory):
    """
    arrange: given the finite set instance
    act: when distinguished_squares is called with size one
    assert: then every returned square is distinguished and the identity square is among them.
    """
    squares = axioms.distinguished_squares(finset, 1)

    assert squares
    assert all(finset.is_distinguished(square) for square in squares)
    assert all(square.tl in finset.representatives(1) for square in squares)


def test_verify_axioms_finset(finset: FinSetCategory):
    """
    arrange: given the finite set instance and a budget of size three
    act: when verify_axioms is called
    assert: then every axiom passes.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=3)

    report = axioms.verify_axioms(finset, budget)

    assert report.instance == "finset"
    assert not report.failed
    assert not report.skipped
    assert {verdict.axiom for verdict in report.verdicts} >= set(PCGW_AXIOMS)


@pytest.mark.slow
def test_verify_axioms_finset_size_four(finset: FinSetCategory):
    """
    arrange: given the finite set instance and a budget of size four
    act: when verify_axioms is called
    assert: then no axiom fails and the square checks report how far they reached.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=4)

    report = axioms.verify_axioms(finset, budget)

    assert not report.failed
    assert {verdict.axiom for verdict in report.skipped} == {
        "composition",
        "goodness",
        "PQ",
        "DS",
    }
    assert all("verified up to size 3" in verdict.detail for verdict in report.skipped)


def test_verify_axioms_truncated_checks_skipped(finset: FinSetCategory):
    """
    arrange: given square checks bounded below a budget of size two
    act: when verify_axioms is called
    assert: then the bounded checks are skipped with their reach and the others pass.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=2)

    with mock.patch.object(axioms, "SQUARE_SIZE", 1), mock.patch.object(
        axioms, "GOODNESS_SIZE", 1
    ):
        report = axioms.verify_axioms(finset, budget)

    skipped = {verdict.axiom: verdict.detail for verdict in report.skipped}
    assert not report.failed
    assert set(skipped) == {"composition", "goodness", "PQ", "DS"}
    assert skipped["DS"] == "verified up to size 1, budget is 2"


@pytest.mark.parametrize(
    "mutant",
    [pytest.param(mutant, id=mutant.value) for mutant in FinSetMutant],
)
def test_verify_axioms_mutants(mutant: FinSetMutant):
    """
    arrange: given a broken variant of the finite set instance
    act: when verify_axioms is called
    assert: then some axiom fails with a witness.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=2)

    report = axioms.verify_axioms(FinSetCategory(mutant), budget)

    assert report.failed
    assert all(verdict.witness for verdict in report.failed)


def test_verify_axioms_drop_union_fails_quotients():
    """
    arrange: given the mutant whose squares need not cover their corner
    act: when verify_axioms is called
    assert: then the quotient axiom fails.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=2)

    report = axioms.verify_axioms(FinSetCategory(FinSetMutant.DROP_UNION), budget)

    assert "K" in {verdict.axiom for verdict in report.failed}


def test_verify_axioms_matroids(data_directory: Path):
    """
    arrange: given the pointed matroid instance with the uniform rank two matroid on four points
    act: when verify_axioms is called
    assert: then the CGW axioms pass and the pCGW axioms are skipped.
    """
    u24 = config.load_matroid(data_directory / "u24.json")
    category = MatroidCategory(extra_objects=(u24,))
    budget = factories.CategoryBudgetFactory(max_object_size=2)

    report = axioms.verify_axioms(category, budget)

    assert not report.failed
    assert {verdict.axiom for verdict in report.skipped} == set(PCGW_AXIOMS)
    assert all(
        verdict.verdict == types_.Verdict.PASS
        for verdict in report.verdicts
        if verdict.axiom not in PCGW_AXIOMS
    )


def test_verify_axioms_budget_exhausted(finset: FinSetCategory):
    """
    arrange: given a budget beyond what can be enumerated
    act: when verify_axioms is called
    assert: then BudgetExhausted is raised.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=axioms.MAX_VERIFIED_SIZE + 1)

    with pytest.raises(exceptions.BudgetExhausted):
        axioms.verify_axioms(finset, budget)
