# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Library for computing K₀ and truncated K₁ of CGW categories."""

import logging
import typing
from pathlib import Path

from . import axioms, config, core, presentation, simplicial, types_
from .exceptions import (
    BaseError,
    BudgetExhausted,
    InputError,
    NotPCGW,
    SearchBudgetExceeded,
)
from .finset import FinSetCategory, FinSetMutant
from .matroid import MatroidCategory, amalgam_search

VERSION = "0.1.0"

SKIPPED_ERRORS = (BudgetExhausted, SearchBudgetExceeded, NotPCGW)


def instance(run_config: types_.RunConfig) -> core.CategoryInstance:
    """Build the category instance of a run.

    Args:
        run_config: The configuration.

    Returns:
        Finite sets, possibly a mutant, or pointed matroids with the matroid file as an object.

    Raises:
        InputError: if the mutant is unknown or given for matroids.
    """
    match run_config.instance:
        case types_.InstanceName.FINSET:
            if run_config.mutant is None:
                return FinSetCategory()
            try:
                return FinSetCategory(FinSetMutant(run_config.mutant))
            except ValueError as exc:
                choices = ", ".join(mutant.value for mutant in FinSetMutant)
                raise InputError(
                    f"Invalid value for mutant: {run_config.mutant!r}, expected one of {choices}"
                ) from exc
        case types_.InstanceName.MATROID:
            if run_config.mutant is not None:
                raise InputError(f"mutants are finite set instances, {run_config.mutant=!r}")
            extra = ()
            amalgam = run_config.command == types_.Command.MATROID_AMALGAM
            if run_config.file is not None and not amalgam:
                extra = (config.load_matroid(Path(run_config.file)),)
            return MatroidCategory(extra_objects=extra)


def _matroid_dict(matroid: types_.Matroid | None) -> dict | None:
    """Write a matroid in the file format.

    Args:
        matroid: The matroid.

    Returns:
        Its ground set, basepoint and flats.
    """
    if matroid is None:
        return None
    return {
        "ground": sorted(matroid.ground, key=str),
        "basepoint": matroid.basepoint,
        "flats": sorted((sorted(flat, key=str) for flat in matroid.flats), key=str),
    }


def _audit_dict(audit: types_.RelationAudit) -> dict:
    """Write an audit.

    Args:
        audit: The audit.

    Returns:
        Its counts and failures.
    """
    return {"checked": audit.checked, "failed": list(audit.failed), "outside": audit.outside}


def _axioms(
    cat: core.CategoryInstance, run_config: types_.RunConfig
) -> tuple[dict, types_.ExitCode]:
    """Verify the axioms.

    Args:
        cat: The category instance.
        run_config: The configuration.

    Returns:
        The verdicts and FAILURE on a failed axiom, BUDGET on a skipped one.
    """
    report = axioms.verify_axioms(cat, run_config.budget)
    for verdict in report.failed:
        logging.error("axiom %s fails on %s: %s", verdict.axiom, verdict.witness, verdict.detail)
    result = {
        "instance": report.instance,
        "verdicts": [
            {
                "axiom": verdict.axiom,
                "verdict": verdict.verdict.value,
                "witness": verdict.witness,
                "detail": verdict.detail,
            }
            for verdict in report.verdicts
        ],
    }
    if report.failed:
        return result, types_.ExitCode.FAILURE
    if report.skipped:
        return result, types_.ExitCode.BUDGET
    return result, types_.ExitCode.SUCCESS


def _k0(
    cat: core.CategoryInstance, run_config: types_.RunConfig
) -> tuple[dict, types_.ExitCode]:
    """Compute K₀.

    Args:
        cat: The category instance.
        run_config: The configuration.

    Returns:
        The presentation with its invariants and the direct sum audit.
    """
    k0 = presentation.k0_presentation(cat, run_config.budget)
    smith = presentation.smith_normal_form(k0)
    audit = presentation.k0_direct_sum_audit(cat, k0, smith)
    result = presentation.export(k0, smith) | {"direct_sums": _audit_dict(audit)}
    return result, types_.ExitCode.FAILURE if audit.failed else types_.ExitCode.SUCCESS


def _k1(
    cat: core.CategoryInstance, run_config: types_.RunConfig
) -> tuple[dict, types_.ExitCode]:
    """Compute truncated K₁ under the configured scheme.

    Args:
        cat: The category instance.
        run_config: The configuration.

    Returns:
        The presentation with its invariants, the sign audit, the query results and for the
        Nenashev scheme the audit of the laws its diagrams imply.
    """
    baseline = presentation.k1_presentation_baseline(cat, run_config.budget)
    result: dict[str, typing.Any] = {}
    failed = False
    match run_config.scheme:
        case types_.Scheme.BASELINE:
            k1 = baseline
        case types_.Scheme.NENASHEV:
            harvested = presentation.harvest_3x3(
                cat, run_config.budget, workers=run_config.workers
            )
            k1 = presentation.k1_presentation_nenashev(cat, run_config.budget, harvested)
            smith = presentation.smith_normal_form(k1)
            audit = presentation.relation_audit(cat, k1, harvested, smith)
            failed = bool(audit.failed)
            baseline_smith = presentation.smith_normal_form(baseline)
            result["diagrams"] = len(harvested)
            result["laws"] = _audit_dict(audit)
            result["agrees_with_baseline"] = (
                baseline_smith.invariant_factors,
                baseline_smith.free_rank,
            ) == (smith.invariant_factors, smith.free_rank)
    smith = presentation.smith_normal_form(k1)
    if run_config.instance == types_.InstanceName.FINSET:
        oracle = presentation.oracle_respects_relations(k1)
        failed = failed or not oracle.holds
        result["oracle"] = {"holds": oracle.holds, "violation": oracle.violation}
    result["queries"] = [
        presentation.evaluate_query(cat, k1, query, smith) for query in run_config.queries
    ]
    result = presentation.export(k1, smith) | result
    return result, types_.ExitCode.FAILURE if failed else types_.ExitCode.SUCCESS


def _relcheck(
    cat: core.CategoryInstance, run_config: types_.RunConfig
) -> tuple[dict, types_.ExitCode]:
    """Check the automorphism identities, the composition law and the lemma constructions.

    Args:
        cat: The category instance.
        run_config: The configuration.

    Returns:
        The checks and FAILURE if an identity or law fails.
    """
    k1 = presentation.k1_presentation_baseline(cat, run_config.budget)
    smith = presentation.smith_normal_form(k1)
    identities = presentation.corollary_identities(cat, run_config.budget, k1, smith)
    membership, signs = presentation.admissible_sweep(cat, run_config.budget, k1, smith)
    homotopies = presentation.permutation_homotopy_suite(cat, run_config.budget)
    pushouts = presentation.pushout_suite(cat, run_config.budget)
    result = {
        "identities": [
            {
                "identity": check.identity,
                "alpha": list(check.alpha),
                "beta": list(check.beta),
                "holds": check.holds,
            }
            for check in identities
        ],
        "composition": _audit_dict(membership),
        "composition_signs": _audit_dict(signs),
        "permutation_homotopies": _audit_dict(homotopies),
        "pushout_simplices": _audit_dict(pushouts),
    }
    failed = (
        any(check.holds is False for check in identities)
        or membership.failed
        or signs.failed
        or homotopies.failed
        or pushouts.failed
    )
    return result, types_.ExitCode.FAILURE if failed else types_.ExitCode.SUCCESS


def _amalgam(run_config: types_.RunConfig) -> tuple[dict, types_.ExitCode]:
    """Search for amalgams of the span in the configured file.

    Args:
        run_config: The configuration.

    Returns:
        The first amalgam, the universal one and the search statistics.

    Raises:
        InputError: if no span file is configured.
    """
    if run_config.file is None:
        raise InputError("matroid-amalgam needs a span file, pass --file")
    first, second, base = config.load_span(Path(run_config.file))
    search = amalgam_search(first, second, base, workers=run_config.workers)
    return {
        "found": search.amalgam is not None,
        "amalgam": _matroid_dict(search.amalgam),
        "universal": _matroid_dict(search.pushout),
        "amalgams": len(search.amalgams),
        "candidates": search.candidates,
    }, types_.ExitCode.SUCCESS


def _enumerate(
    cat: core.CategoryInstance, run_config: types_.RunConfig
) -> tuple[dict, types_.ExitCode]:
    """Count simplices.

    Args:
        cat: The category instance.
        run_config: The configuration.

    Returns:
        The numbers of S•-simplices, G-edges and G 2-simplices, the last None without
        restricted pushouts.
    """
    budget = run_config.budget
    return {
        "dim": run_config.dim,
        "s_simplices": len(simplicial.enumerate_s_simplices(cat, run_config.dim, budget)),
        "g_edges": len(simplicial.enumerate_g_edges(cat, budget)),
        "g_two_simplices": (
            len(simplicial.enumerate_g_two_simplices(cat, budget)) if cat.is_pcgw else None
        ),
    }, types_.ExitCode.SUCCESS


def _exit_code(exc: BaseError) -> types_.ExitCode:
    """Map an error to an exit code.

    Args:
        exc: The error.

    Returns:
        USAGE for bad input, BUDGET for exhausted budgets and skipped checks, FAILURE otherwise.
    """
    if isinstance(exc, InputError):
        return types_.ExitCode.USAGE
    if isinstance(exc, SKIPPED_ERRORS):
        return types_.ExitCode.BUDGET
    return types_.ExitCode.FAILURE


def run(run_config: types_.RunConfig) -> types_.Report:
    """Run one command.

    Args:
        run_config: The configuration.

    Returns:
        The report, with the error as the result if the command failed.
    """
    try:
        if run_config.command == types_.Command.MATROID_AMALGAM:
            result, exit_code = _amalgam(run_config)
        else:
            cat = instance(run_config)
            match run_config.command:
                case types_.Command.AXIOMS:
                    result, exit_code = _axioms(cat, run_config)
                case types_.Command.K0:
                    result, exit_code = _k0(cat, run_config)
                case types_.Command.K1:
                    result, exit_code = _k1(cat, run_config)
                case types_.Command.RELCHECK:
                    result, exit_code = _relcheck(cat, run_config)
                case types_.Command.ENUMERATE:
                    result, exit_code = _enumerate(cat, run_config)
    except BaseError as exc:
        logging.error("%s failed: %s", run_config.command.value, exc)
        exit_code = _exit_code(exc)
        result = {"error": type(exc).__name__, "message": str(exc)}
    return types_.Report(
        command=run_config.command.value,
        config=config.to_dict(run_config),
        result=result,
        version=VERSION,
        exit_code=exit_code,
    )
