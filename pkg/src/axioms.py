# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Certify the CGW and pCGW axioms of an instance at a budget."""

import collections
import itertools
import logging
import random
import typing

from . import core, types_
from .exceptions import AxiomFailure, BudgetExhausted, InstanceContractViolation

M = types_.Kind.M
E = types_.Kind.E

MAX_VERIFIED_SIZE = 5
SQUARE_SIZE = 3
GOODNESS_SIZE = 3


def _require(holds: bool, witness: typing.Any, detail: str) -> None:
    """Fail an axiom unless a condition holds.

    Args:
        holds: The condition.
        witness: The offending data.
        detail: What went wrong.

    Raises:
        AxiomFailure: if the condition does not hold.
    """
    if not holds:
        raise AxiomFailure(witness, detail)


def _representatives(
    cat: core.CategoryInstance, max_size: int
) -> tuple[types_.ObjId, ...]:
    """List class representatives small enough for square enumeration.

    Args:
        cat: The category instance.
        max_size: The largest size.

    Returns:
        The representatives of at most that size.
    """
    return tuple(obj for obj in cat.representatives(max_size) if cat.size(obj) <= max_size)


def _morphisms(
    cat: core.CategoryInstance, kind: types_.Kind, src: types_.ObjId, dst: types_.ObjId
) -> tuple[types_.Mor, ...]:
    """Enumerate the morphisms of a kind.

    Args:
        cat: The category instance.
        kind: The kind of morphism.
        src: The domain.
        dst: The codomain.

    Returns:
        The morphisms src → dst.
    """
    return cat.m_morphisms(src, dst) if kind == M else cat.e_morphisms(src, dst)


def distinguished_squares(
    cat: core.CategoryInstance, max_size: int
) -> tuple[types_.DistSquare, ...]:
    """Enumerate the distinguished squares on class representatives.

    Args:
        cat: The category instance.
        max_size: The largest corner size.

    Returns:
        Every distinguished square whose corners are representatives.
    """
    reps = _representatives(cat, max_size)
    found = []
    for tl, tr, bl, br in itertools.product(reps, repeat=4):
        for top, left, bottom, right in itertools.product(
            cat.m_morphisms(tl, tr),
            cat.e_morphisms(tl, bl),
            cat.m_morphisms(bl, br),
            cat.e_morphisms(tr, br),
        ):
            square = types_.DistSquare(
                tl=tl, tr=tr, bl=bl, br=br, top=top, left=left, bottom=bottom, right=right
            )
            if cat.is_distinguished(square):
                found.append(square)
    logging.info("distinguished squares up to size %s: %s", max_size, len(found))
    return tuple(found)


def check_initial(cat: core.CategoryInstance, budget: types_.CategoryBudget) -> None:
    """Check that the basepoint is initial for both kinds.

    Args:
        cat: The category instance.
        budget: The budget.
    """
    for obj in cat.objects(budget.max_object_size):
        for kind in (M, E):
            count = len(_morphisms(cat, kind, cat.basepoint, obj))
            _require(
                count == 1,
                obj,
                f"{count} {kind.value}-morphisms from the basepoint to {obj!r}",
            )


def check_isomorphisms(cat: core.CategoryInstance, budget: types_.CategoryBudget) -> None:
    """Check that ambient isomorphisms are M-morphisms and φ is a functor on samples.

    Args:
        cat: The category instance.
        budget: The budget.
    """
    rng = random.Random(budget.rng_seed)
    isos = []
    for obj in cat.representatives(budget.max_object_size):
        for iso in cat.ambient_isomorphisms(obj, obj):
            _require(cat.is_valid(iso), iso, "ambient isomorphism is not an M-morphism")
            _require(cat.is_valid(core.phi(cat, iso)), iso, "φ of isomorphism is not valid")
            isos.append(iso)
    by_object = collections.defaultdict(list)
    for iso in isos:
        by_object[iso.src].append(iso)
    objects = sorted(by_object, key=repr)
    for _ in range(budget.sample_count if objects else 0):
        candidates = by_object[rng.choice(objects)]
        first, second = rng.choice(candidates), rng.choice(candidates)
        composite = core.compose(cat, first, second)
        _require(
            core.phi(cat, composite)
            == core.compose(cat, core.phi(cat, first), core.phi(cat, second)),
            (first, second),
            "φ does not preserve composition",
        )
        _require(
            core.phi(cat, core.identity(cat, first.src, M)) == core.identity(cat, first.src, E),
            first.src,
            "φ does not preserve identities",
        )


def check_monic(cat: core.CategoryInstance, budget: types_.CategoryBudget) -> None:
    """Check cancellation on the left for both kinds over representatives.

    Args:
        cat: The category instance.
        budget: The budget.
    """
    reps = cat.representatives(budget.max_object_size)
    for kind in (M, E):
        for x, y in itertools.product(reps, repeat=2):
            for mor in _morphisms(cat, kind, x, y):
                for w in reps:
                    seen: dict[types_.Table, types_.Mor] = {}
                    for before in _morphisms(cat, kind, w, x):
                        composite = core.compose(cat, before, mor).table
                        other = seen.setdefault(composite, before)
                        _require(
                            other == before,
                            (other, before, mor),
                            f"{kind.value}-morphism {mor!r} does not cancel",
                        )


def check_quotients(cat: core.CategoryInstance, budget: types_.CategoryBudget) -> None:
    """Check formal cokernels and kernels exist and are unique up to isomorphism.

    Args:
        cat: The category instance.
        budget: The budget.
    """
    reps = cat.representatives(budget.max_object_size)
    for a, b in itertools.product(reps, repeat=2):
        for mor in cat.m_morphisms(a, b):
            canonical = core.formal_quotient(cat, mor)
            _require(core.is_exact(cat, canonical), canonical, "formal quotient is not exact")
            kernel = cat.formal_kernel(canonical.g)
            _require(core.is_exact(cat, kernel), kernel, "formal kernel is not exact")
            back = types_.Mor(
                kind=M,
                src=a,
                dst=kernel.a,
                table=core.table_of(core.factor_before(kernel.f.as_dict(), mor.as_dict())),
            )
            _require(core.is_iso(cat, back), back, "kernel of the cokernel is not the subobject")
            for c in reps:
                for g in cat.e_morphisms(c, b):
                    candidate = types_.ExactSquare(a=a, b=b, c=c, f=mor, g=g)
                    if core.is_exact(cat, candidate):
                        try:
                            core.comparison_iso(cat, candidate, canonical)
                        except InstanceContractViolation as exc:
                            raise AxiomFailure(candidate, str(exc)) from exc


def check_composition(cat: core.CategoryInstance, squares: typing.Sequence) -> None:
    """Check that pasted distinguished squares are distinguished.

    Args:
        cat: The category instance.
        squares: The distinguished squares to paste.
    """
    by_left = collections.defaultdict(list)
    by_top = collections.defaultdict(list)
    for square in squares:
        by_left[square.left].append(square)
        by_top[square.top].append(square)
    for first in squares:
        for direction, partners in (
            (types_.SquareDirection.HORIZONTAL, by_left[first.right]),
            (types_.SquareDirection.VERTICAL, by_top[first.bottom]),
        ):
            for second in partners:
                pasted = core.compose_squares(cat, first, second, direction)
                _require(
                    cat.is_distinguished(pasted),
                    (first, second),
                    f"{direction.value} composite is not distinguished",
                )


def check_goodness(cat: core.CategoryInstance, budget: types_.CategoryBudget) -> None:
    """Check squares with parallel isomorphisms are distinguished exactly when they commute.

    Args:
        cat: The category instance.
        budget: The budget.
    """
    reps = _representatives(cat, min(budget.max_object_size, GOODNESS_SIZE))
    for upper, lower in itertools.product(reps, repeat=2):
        horizontal = itertools.product(
            cat.ambient_isomorphisms(upper, upper),
            cat.e_morphisms(upper, lower),
            cat.ambient_isomorphisms(lower, lower),
            cat.e_morphisms(upper, lower),
        )
        vertical = itertools.product(
            cat.m_morphisms(upper, lower),
            [core.phi(cat, iso) for iso in cat.ambient_isomorphisms(upper, upper)],
            cat.m_morphisms(upper, lower),
            [core.phi(cat, iso) for iso in cat.ambient_isomorphisms(lower, lower)],
        )
        for corners, maps in (
            ((upper, upper, lower, lower), horizontal),
            ((upper, lower, upper, lower), vertical),
        ):
            tl, tr, bl, br = corners
            for top, left, bottom, right in maps:
                square = types_.DistSquare(
                    tl=tl, tr=tr, bl=bl, br=br, top=top, left=left, bottom=bottom, right=right
                )
                _require(
                    cat.is_distinguished(square) == core.ambient_commutes(cat, square),
                    square,
                    "square of isomorphisms is distinguished iff it commutes fails",
                )


def check_direct_sums(cat: core.CategoryInstance, budget: types_.CategoryBudget) -> None:
    """Check both direct sum squares and their canonical quotients.

    Args:
        cat: The category instance.
        budget: The budget.
    """
    reps = cat.representatives(budget.max_object_size)
    for x, y in itertools.product(reps, repeat=2):
        total = core.direct_sum(cat, x, y)
        for exact in (
            types_.ExactSquare(a=x, b=total.obj, c=y, f=total.p_x, g=total.q_y),
            types_.ExactSquare(a=y, b=total.obj, c=x, f=total.p_y, g=total.q_x),
        ):
            _require(core.is_exact(cat, exact), exact, "direct sum square is not exact")
            try:
                core.comparison_iso(cat, exact, core.formal_quotient(cat, exact.f))
            except InstanceContractViolation as exc:
                raise AxiomFailure(exact, str(exc)) from exc


def check_pushout_quotients(
    cat: core.CategoryInstance, budget: types_.CategoryBudget
) -> None:
    """Check that restricted pushouts preserve quotients.

    Args:
        cat: The category instance.
        budget: The budget.
    """
    reps = _representatives(cat, min(budget.max_object_size, GOODNESS_SIZE))
    for a, b, c in itertools.product(reps, repeat=3):
        for f, g in itertools.product(cat.m_morphisms(a, b), cat.m_morphisms(a, c)):
            try:
                core.pushout_quotient_iso(cat, g, f)
            except InstanceContractViolation as exc:
                raise AxiomFailure((g, f), str(exc)) from exc


def check_induced_pushouts(cat: core.CategoryInstance, squares: typing.Sequence) -> None:
    """Check the squares into induced pushout maps are distinguished.

    Args:
        cat: The category instance.
        squares: The distinguished squares to pair along their left edges.
    """
    by_left = collections.defaultdict(list)
    for square in squares:
        by_left[square.left].append(square)
    for group in by_left.values():
        for b_square, c_square in itertools.product(group, repeat=2):
            try:
                _, into_b, into_c = core.induced_pushout_map(cat, b_square, c_square)
            except InstanceContractViolation as exc:
                raise AxiomFailure((b_square, c_square), str(exc)) from exc
            _require(
                cat.is_distinguished(into_b) and cat.is_distinguished(into_c),
                (b_square, c_square),
                "induced pushout square is not distinguished",
            )


def _verdict(name: str, check: typing.Callable[[], None]) -> types_.AxiomVerdict:
    """Run one check.

    Args:
        name: The axiom.
        check: The check, raising AxiomFailure on a counterexample.

    Returns:
        The verdict, failing with a witness on a counterexample or a contract violation.
    """
    try:
        check()
    except AxiomFailure as exc:
        logging.info("axiom %s fails: %s", name, exc.detail)
        return types_.AxiomVerdict(
            axiom=name, verdict=types_.Verdict.FAIL, witness=repr(exc.witness), detail=exc.detail
        )
    except InstanceContractViolation as exc:
        logging.info("axiom %s fails on contract violation: %s", name, exc)
        return types_.AxiomVerdict(
            axiom=name, verdict=types_.Verdict.FAIL, witness=str(exc), detail="contract violation"
        )
    return types_.AxiomVerdict(axiom=name, verdict=types_.Verdict.PASS)


def _truncated(
    verdict: types_.AxiomVerdict, cap: int, budget: types_.CategoryBudget
) -> types_.AxiomVerdict:
    """Downgrade a passing verdict whose check stopped below the budget.

    Args:
        verdict: The verdict.
        cap: The largest size the check enumerated.
        budget: The budget.

    Returns:
        The verdict, skipped with the truncation as detail if it passed below the budget.
    """
    if verdict.verdict != types_.Verdict.PASS or budget.max_object_size <= cap:
        return verdict
    logging.info("axiom %s truncated to size %s", verdict.axiom, cap)
    return verdict._replace(
        verdict=types_.Verdict.SKIPPED,
        detail=f"verified up to size {cap}, budget is {budget.max_object_size}",
    )


def verify_axioms(
    cat: core.CategoryInstance, budget: types_.CategoryBudget
) -> types_.AxiomReport:
    """Certify every axiom of an instance at a budget.

    Args:
        cat: The category instance.
        budget: The budget.

    Returns:
        One verdict per axiom. pCGW axioms are skipped for instances without restricted
        pushouts, and checks that enumerate below the budget are skipped with their reach.

    Raises:
        BudgetExhausted: if the budget exceeds what can be enumerated.
    """
    if budget.max_object_size > MAX_VERIFIED_SIZE:
        raise BudgetExhausted(
            f"axioms are verified up to size {MAX_VERIFIED_SIZE}, {budget.max_object_size=}"
        )
    square_size = min(budget.max_object_size, SQUARE_SIZE)
    squares: list[types_.DistSquare] = []

    def composition() -> None:
        """Enumerate the small squares once and paste them."""
        squares.extend(distinguished_squares(cat, square_size))
        check_composition(cat, squares)

    checks: list[tuple[str, typing.Callable[[], None], int]] = [
        ("Z", lambda: check_initial(cat, budget), MAX_VERIFIED_SIZE),
        ("I", lambda: check_isomorphisms(cat, budget), MAX_VERIFIED_SIZE),
        ("M", lambda: check_monic(cat, budget), MAX_VERIFIED_SIZE),
        ("K", lambda: check_quotients(cat, budget), MAX_VERIFIED_SIZE),
        ("composition", composition, SQUARE_SIZE),
        ("goodness", lambda: check_goodness(cat, budget), GOODNESS_SIZE),
    ]
    pcgw_checks: list[tuple[str, typing.Callable[[], None], int]] = [
        ("A", lambda: check_direct_sums(cat, budget), MAX_VERIFIED_SIZE),
        ("PQ", lambda: check_pushout_quotients(cat, budget), GOODNESS_SIZE),
        ("DS", lambda: check_induced_pushouts(cat, squares), SQUARE_SIZE),
    ]
    verdicts = [_truncated(_verdict(name, check), cap, budget) for name, check, cap in checks]
    for name, check, cap in pcgw_checks:
        if cat.is_pcgw:
            verdicts.append(_truncated(_verdict(name, check), cap, budget))
        else:
            verdicts.append(
                types_.AxiomVerdict(
                    axiom=name,
                    verdict=types_.Verdict.SKIPPED,
                    detail=f"{cat.name} has no restricted pushouts",
                )
            )
    report = types_.AxiomReport(instance=cat.name, verdicts=tuple(verdicts))
    logging.info(
        "axioms of %s: %s failed, %s skipped", cat.name, len(report.failed), len(report.skipped)
    )
    return report
