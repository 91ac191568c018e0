# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Presentations of K₀ and truncated K₁, the sign homomorphism and π₁ of 2-complexes."""

import collections
import itertools
import logging
import random
import re
import typing

import networkx as nx
from sympy.combinatorics import Permutation

from . import axioms, core, diagrams, simplicial, snf, types_
from .exceptions import (
    DimensionMismatch,
    Disconnected,
    InputError,
    InstanceContractViolation,
    NotAdmissible,
)
from .finset import piecewise_bijection

M = types_.Kind.M

IDENTITY_SIZE = 3

QUERY_TERM = r"(?:\d+\*)?[a-z]+(?:_[a-z0-9]+)?"
QUERY_PATTERN = re.compile(rf"\s*[+-]?\s*{QUERY_TERM}(?:\s*[+-]\s*{QUERY_TERM})*\s*")
TERM_PATTERN = re.compile(r"([+-]?)\s*(?:(\d+)\*)?([a-z]+(?:_[a-z0-9]+)?)")
NAMED_SQUARE_PATTERN = re.compile(r"(l_tau|l_cycle3|e_(\d+)|id_(\d+))")


def _object_label(obj: types_.ObjId) -> str:
    """Label an object class.

    Args:
        obj: The representative.

    Returns:
        The elements of a set, or the sorted flats of a matroid.
    """
    if isinstance(obj, types_.Matroid):
        flats = sorted(sorted(map(repr, flat)) for flat in obj.flats)
        return "M" + str(flats).replace("'", "").replace(" ", "")
    return "[" + ",".join(map(str, typing.cast(tuple, obj))) + "]"


def _diagram_label(diagram: types_.Diagram) -> str:
    """Label a canonical diagram.

    Args:
        diagram: The canonical diagram.

    Returns:
        The node sizes followed by the images of every arrow.
    """
    sizes = "/".join(str(len(typing.cast(tuple, node))) for node in diagram.nodes)
    images = ";".join(
        ",".join(str(image) for _, image in table) for _, _, table in diagram.arrows
    )
    return f"l[{sizes}|{images}]"


def dexsq_label(cat: core.CategoryInstance, dexsq: types_.DoubleExactSquare) -> str:
    """Label the isomorphism class of a double exact square.

    Args:
        cat: The category instance.
        dexsq: The double exact square.

    Returns:
        The label of its canonical form.
    """
    return _diagram_label(cat.canonical_form(simplicial.dexsq_diagram(dexsq)))


class _Generators:
    """Generators of a presentation, indexed by label and collected as they are met."""

    def __init__(self, cat: core.CategoryInstance):
        """Construct.

        Args:
            cat: The category instance.
        """
        self.cat = cat
        self.representatives: dict[str, types_.DoubleExactSquare] = {}
        self.relations: list[dict[str, int]] = []

    def add(self, dexsq: types_.DoubleExactSquare) -> str:
        """Register a double exact square.

        Args:
            dexsq: The double exact square.

        Returns:
            The label of its class.
        """
        label = dexsq_label(self.cat, dexsq)
        self.representatives.setdefault(label, dexsq)
        return label

    def relate(self, terms: typing.Iterable[tuple[int, types_.DoubleExactSquare]]) -> None:
        """Record a relation.

        Args:
            terms: Coefficients with their double exact squares.
        """
        row: collections.Counter[str] = collections.Counter()
        for coefficient, dexsq in terms:
            row[self.add(dexsq)] += coefficient
        self.relations.append(row)

    def presentation(self) -> types_.Presentation:
        """Freeze the generators and relations in label order.

        Returns:
            The presentation with deduplicated nonzero rows.
        """
        labels = tuple(sorted(self.representatives))
        rows = (tuple(row.get(label, 0) for label in labels) for row in self.relations)
        relations = tuple(dict.fromkeys(row for row in rows if any(row)))
        return types_.Presentation(
            generators=labels,
            relations=relations,
            representatives=tuple(self.representatives[label] for label in labels),
        )


def smith_normal_form(presentation: types_.Presentation) -> types_.SnfResult:
    """Get the Smith normal form of the relations of a presentation.

    The relations are first reduced to a lattice basis, which spans the same row space.

    Args:
        presentation: The presentation.

    Returns:
        The Smith normal form with one column per generator.
    """
    columns = len(presentation.generators)
    basis = snf.lattice_basis(presentation.relations, columns)
    return snf.smith_normal_form(basis, columns=columns)


def element_is_zero(
    presentation: types_.Presentation,
    element: typing.Sequence[int],
    smith: types_.SnfResult | None = None,
) -> bool:
    """Check whether an element vanishes in a presented group.

    Args:
        presentation: The presentation.
        element: The coefficients over the generators.
        smith: The Smith normal form of the presentation, computed if not given.

    Returns:
        Whether the element lies in the row space of the relations.

    Raises:
        DimensionMismatch: if the element has the wrong length.
    """
    if len(element) != len(presentation.generators):
        raise DimensionMismatch(
            f"element has {len(element)} coefficients for {len(presentation.generators)} "
            f"generators, {element=!r}"
        )
    return snf.element_is_zero(smith or smith_normal_form(presentation), element)


def export(presentation: types_.Presentation, smith: types_.SnfResult) -> dict:
    """Export a presentation with its invariants.

    Args:
        presentation: The presentation.
        smith: Its Smith normal form.

    Returns:
        The JSON ready presentation.
    """
    return {
        "generators": list(presentation.generators),
        "relations": [list(row) for row in presentation.relations],
        "invariant_factors": list(smith.invariant_factors),
        "free_rank": smith.free_rank,
    }


def k0_presentation(
    cat: core.CategoryInstance, budget: types_.CategoryBudget
) -> types_.Presentation:
    """Present K₀ by object classes and distinguished squares.

    The basepoint class is zero and is left out of the generators.

    Args:
        cat: The category instance.
        budget: The budget.

    Returns:
        One generator per nonzero object class and [bl]+[tr]-[tl]-[br] per square.
    """
    reps = tuple(
        obj
        for obj in cat.representatives(budget.max_object_size)
        if obj != cat.basepoint and cat.size(obj) <= budget.max_object_size
    )
    index = {obj: position for position, obj in enumerate(reps)}
    rows = []
    for square in axioms.distinguished_squares(cat, budget.max_object_size):
        row = [0] * len(reps)
        for obj, sign in ((square.bl, 1), (square.tr, 1), (square.tl, -1), (square.br, -1)):
            obj = cat.object_class(obj)
            if obj != cat.basepoint:
                row[index[obj]] += sign
        rows.append(tuple(row))
    relations = tuple(dict.fromkeys(row for row in rows if any(row)))
    logging.info("K0 of %s: %s generators, %s relations", cat.name, len(reps), len(relations))
    return types_.Presentation(
        generators=tuple(_object_label(obj) for obj in reps),
        relations=relations,
        representatives=reps,
    )


def k0_direct_sum_audit(
    cat: core.CategoryInstance,
    presentation: types_.Presentation,
    smith: types_.SnfResult | None = None,
) -> types_.RelationAudit:
    """Check [x⊕y] = [x]+[y] for every pair of generators whose sum is enumerated.

    Args:
        cat: The category instance.
        presentation: The K₀ presentation.
        smith: Its Smith normal form.

    Returns:
        The audit, failures labelled by both summands.
    """
    smith = smith or smith_normal_form(presentation)
    index = {obj: position for position, obj in enumerate(presentation.representatives)}
    checked, failed, outside = 0, [], 0
    for x, y in itertools.combinations_with_replacement(presentation.representatives, 2):
        total = cat.object_class(cat.direct_sum(x, y).obj)
        if total not in index:
            outside += 1
            continue
        element = [0] * len(index)
        element[index[total]] += 1
        element[index[x]] -= 1
        element[index[y]] -= 1
        checked += 1
        if not element_is_zero(presentation, element, smith):
            failed.append(f"{_object_label(x)}+{_object_label(y)}")
    return types_.RelationAudit(checked=checked, failed=tuple(failed), outside=outside)


def _dexsq_generators(cat: core.CategoryInstance, budget: types_.CategoryBudget) -> _Generators:
    """Collect the double exact squares of a budget as generators.

    Args:
        cat: The category instance.
        budget: The budget.

    Returns:
        The generators without relations.
    """
    core.require_pcgw(cat)
    generators = _Generators(cat)
    for dexsq in simplicial.enumerate_double_exact_squares(cat, budget.max_object_size):
        generators.add(dexsq)
    return generators


def _edge_dexsq(edge: types_.GSimplex) -> types_.DoubleExactSquare:
    """Read an edge between diagonal vertices.

    Args:
        edge: The edge.

    Returns:
        Its double exact square.

    Raises:
        InstanceContractViolation: if the edge leaves the diagonal.
    """
    if (dexsq := simplicial.edge_dexsq(edge)) is None:
        raise InstanceContractViolation(f"edge between off-diagonal vertices, {edge=!r}")
    return dexsq


def k1_presentation_baseline(
    cat: core.CategoryInstance, budget: types_.CategoryBudget
) -> types_.Presentation:
    """Present truncated K₁ by standard edges, degenerate edges and 2-simplices.

    Args:
        cat: The category instance.
        budget: The budget.

    Returns:
        The presentation on classes of double exact squares.

    Raises:
        NotPCGW: unless the instance is pCGW.
    """
    generators = _dexsq_generators(cat, budget)
    for obj in cat.representatives(budget.max_object_size):
        generators.relate(((1, _edge_dexsq(simplicial.standard_edge(cat, obj))),))
        degenerate = simplicial.g_degeneracy(cat, simplicial.vertex(cat, obj, obj), 0)
        generators.relate(((1, _edge_dexsq(degenerate)),))
    for simplex in simplicial.enumerate_g_two_simplices(cat, budget):
        d0, d1, d2 = (_edge_dexsq(simplicial.g_face(cat, simplex, index)) for index in range(3))
        generators.relate(((1, d2), (1, d0), (-1, d1)))
    presentation = generators.presentation()
    logging.info(
        "baseline K1 of %s: %s generators, %s relations",
        cat.name,
        len(presentation.generators),
        len(presentation.relations),
    )
    return presentation


def six_term_relation(
    diagram: types_.Optimal3x3,
) -> tuple[tuple[int, types_.DoubleExactSquare], ...]:
    """Get the six term relation of a 3×3 diagram.

    Args:
        diagram: The diagram.

    Returns:
        ⟨l₀⟩+⟨l₂⟩-⟨l₁⟩-⟨l⁰⟩-⟨l²⟩+⟨l¹⟩ as coefficients with squares.
    """
    (l0, l1, l2), (c0, c1, c2) = diagrams.diagram_squares(diagram)
    return ((1, l0), (1, l2), (-1, l1), (-1, c0), (-1, c2), (1, c1))


def k1_presentation_nenashev(
    cat: core.CategoryInstance,
    budget: types_.CategoryBudget,
    diagrams_: typing.Iterable[types_.Optimal3x3] = (),
) -> types_.Presentation:
    """Present truncated K₁ by diagonal squares and optimal 3×3 diagrams.

    Args:
        cat: The category instance.
        budget: The budget.
        diagrams_: The 3×3 diagrams contributing six term relations.

    Returns:
        The presentation on classes of double exact squares.

    Raises:
        NotPCGW: unless the instance is pCGW.
        InvalidDiagram: if a diagram is not optimal.
    """
    generators = _dexsq_generators(cat, budget)
    count = 0
    for diagram in diagrams_:
        diagrams.validate_3x3(cat, diagram)
        generators.relate(six_term_relation(diagram))
        count += 1
    for dexsq in tuple(generators.representatives.values()):
        if dexsq.is_diagonal():
            generators.relate(((1, dexsq),))
    presentation = generators.presentation()
    logging.info(
        "Nenashev K1 of %s: %s generators, %s relations from %s diagrams",
        cat.name,
        len(presentation.generators),
        len(presentation.relations),
        count,
    )
    return presentation


def _sample(
    candidates: list, budget: types_.CategoryBudget, rng: random.Random | None = None
) -> list:
    """Keep at most the budgeted number of candidates.

    Args:
        candidates: The candidates in enumeration order.
        budget: The budget.
        rng: The random source, seeded from the budget if not given.

    Returns:
        All candidates, or a seeded sample of them.
    """
    if len(candidates) <= budget.sample_count:
        return candidates
    return (rng or random.Random(budget.rng_seed)).sample(candidates, budget.sample_count)


def harvest_3x3(
    cat: core.CategoryInstance,
    budget: types_.CategoryBudget,
    kinds: typing.Iterable[types_.ThreeByThreeKind] = tuple(types_.ThreeByThreeKind),
    workers: int = 1,
) -> tuple[types_.Optimal3x3, ...]:
    """Build 3×3 diagrams from pairs of enumerated double exact squares.

    Args:
        cat: The category instance.
        budget: The budget; pairs beyond its sample count are sampled with its seed.
        kinds: The families to build.
        workers: The number of worker threads building diagrams.

    Returns:
        The validated diagrams.
    """
    core.require_pcgw(cat)
    kinds = tuple(kinds)
    squares = simplicial.enumerate_double_exact_squares(cat, budget.max_object_size)
    pairs = []
    for first, second in itertools.product(squares, repeat=2):
        if (
            types_.ThreeByThreeKind.DIRECT_SUM in kinds
            and cat.size(first.first.b) + cat.size(second.first.b) <= budget.max_object_size
        ):
            pairs.append((types_.ThreeByThreeKind.DIRECT_SUM, first, second))
        if types_.ThreeByThreeKind.COMPOSITION in kinds and first.first.b == second.first.a:
            pairs.append((types_.ThreeByThreeKind.COMPOSITION, first, second))
    found = tuple(
        core.ordered_map(
            lambda pair: diagrams.build_3x3(cat, *pair), _sample(pairs, budget), workers
        )
    )
    logging.info("3×3 diagrams of %s: %s of %s pairs", cat.name, len(found), len(pairs))
    return found


def _vector(
    cat: core.CategoryInstance,
    presentation: types_.Presentation,
    terms: typing.Iterable[tuple[int, types_.DoubleExactSquare]],
) -> list[int] | None:
    """Write a combination of double exact squares over the generators.

    Args:
        cat: The category instance.
        presentation: The presentation.
        terms: Coefficients with their double exact squares.

    Returns:
        The coefficient vector, None if a square is not a generator.
    """
    index = {label: position for position, label in enumerate(presentation.generators)}
    vector = [0] * len(index)
    for coefficient, dexsq in terms:
        if (position := index.get(dexsq_label(cat, dexsq))) is None:
            return None
        vector[position] += coefficient
    return vector


def combination_is_zero(
    cat: core.CategoryInstance,
    presentation: types_.Presentation,
    terms: typing.Iterable[tuple[int, types_.DoubleExactSquare]],
    smith: types_.SnfResult | None = None,
) -> bool | None:
    """Check whether a combination of double exact squares vanishes.

    Args:
        cat: The category instance.
        presentation: The presentation.
        terms: Coefficients with their double exact squares.
        smith: The Smith normal form of the presentation.

    Returns:
        Whether it vanishes, None if a square lies outside the budget.
    """
    if (vector := _vector(cat, presentation, terms)) is None:
        return None
    return element_is_zero(presentation, vector, smith)


def sign_class(dexsq: types_.DoubleExactSquare) -> int:
    """Get the parity of the piecewise bijection of a double exact square of finite sets.

    Args:
        dexsq: The double exact square.

    Returns:
        0 for an even and 1 for an odd permutation.
    """
    bijection = piecewise_bijection(dexsq)
    position = {x: index for index, x in enumerate(sorted(bijection))}
    permutation = Permutation([position[bijection[x]] for x in sorted(bijection)])
    return permutation.parity()


def oracle_respects_relations(presentation: types_.Presentation) -> types_.OracleAudit:
    """Evaluate the sign homomorphism on every relation of a finite set presentation.

    Args:
        presentation: The presentation with double exact squares as representatives.

    Returns:
        Whether every relation maps to zero mod 2, with the first that does not.
    """
    signs = [sign_class(dexsq) for dexsq in presentation.representatives]
    for index, row in enumerate(presentation.relations):
        if sum(coefficient * sign for coefficient, sign in zip(row, signs)) % 2:
            logging.info("sign of relation %s is odd", index)
            return types_.OracleAudit(holds=False, violation=index)
    return types_.OracleAudit(holds=True)


def with_relation(
    presentation: types_.Presentation, row: typing.Sequence[int]
) -> types_.Presentation:
    """Add a relation to a presentation.

    Args:
        presentation: The presentation.
        row: The relation over its generators.

    Returns:
        The presentation with the relation appended.

    Raises:
        DimensionMismatch: if the row has the wrong length.
    """
    if len(row) != len(presentation.generators):
        raise DimensionMismatch(
            f"relation has {len(row)} entries for {len(presentation.generators)} generators"
        )
    return presentation._replace(relations=presentation.relations + (tuple(row),))


def automorphisms(cat: core.CategoryInstance, obj: types_.ObjId) -> tuple[types_.Mor, ...]:
    """Enumerate the M-automorphisms of an object.

    Args:
        cat: The category instance.
        obj: The object.

    Returns:
        The invertible M-morphisms obj → obj.
    """
    return tuple(mor for mor in cat.m_morphisms(obj, obj) if core.is_iso(cat, mor))


def _images(mor: types_.Mor) -> tuple[int, ...]:
    """List the images of a map in order of its domain.

    Args:
        mor: The morphism.

    Returns:
        The images.
    """
    return tuple(image for _, image in mor.table)  # type: ignore[misc]


def corollary_identities(
    cat: core.CategoryInstance,
    budget: types_.CategoryBudget,
    presentation: types_.Presentation | None = None,
    smith: types_.SnfResult | None = None,
) -> tuple[types_.IdentityCheck, ...]:
    """Check the automorphism identities in the baseline presentation.

    The identities are l(αβ) = l(α)+l(β), l(α, β) = l(β)-l(α) and l(α) = l̃(α⁻¹), where αβ
    applies β first.

    Args:
        cat: The category instance.
        budget: The budget, objects are taken up to size three.
        presentation: The baseline presentation, computed if not given.
        smith: Its Smith normal form.

    Returns:
        One check per identity and pair of automorphisms.
    """
    presentation = presentation or k1_presentation_baseline(cat, budget)
    smith = smith or smith_normal_form(presentation)
    size = min(budget.max_object_size, IDENTITY_SIZE)
    checks = []
    for obj in cat.representatives(size):
        autos = automorphisms(cat, obj)
        for alpha, beta in itertools.product(autos, repeat=2):
            product = diagrams.automorphism_square(cat, core.compose(cat, beta, alpha))
            terms = {
                "product": (
                    (1, product),
                    (-1, diagrams.automorphism_square(cat, alpha)),
                    (-1, diagrams.automorphism_square(cat, beta)),
                ),
                "pair": (
                    (1, diagrams.automorphism_pair(cat, alpha, beta)),
                    (-1, diagrams.automorphism_square(cat, beta)),
                    (1, diagrams.automorphism_square(cat, alpha)),
                ),
            }
            for identity, combination in terms.items():
                checks.append(
                    types_.IdentityCheck(
                        identity=identity,
                        alpha=_images(alpha),
                        beta=_images(beta),
                        holds=combination_is_zero(cat, presentation, combination, smith),
                    )
                )
        for alpha in autos:
            tilde = (
                (1, diagrams.automorphism_square(cat, alpha)),
                (-1, diagrams.automorphism_square_tilde(cat, core.inverse(alpha))),
            )
            checks.append(
                types_.IdentityCheck(
                    identity="tilde",
                    alpha=_images(alpha),
                    beta=_images(alpha),
                    holds=combination_is_zero(cat, presentation, tilde, smith),
                )
            )
    logging.info(
        "automorphism identities: %s checked, %s hold",
        len(checks),
        sum(check.holds is True for check in checks),
    )
    return tuple(checks)


def admissible_sweep(
    cat: core.CategoryInstance,
    budget: types_.CategoryBudget,
    presentation: types_.Presentation | None = None,
    smith: types_.SnfResult | None = None,
) -> tuple[types_.RelationAudit, types_.RelationAudit]:
    """Check ⟨f⟩+⟨g⟩ = ⟨g∘f⟩+⟨l₂⟩ on composable pairs of double exact squares.

    Args:
        cat: The category instance.
        budget: The budget; pairs beyond its sample count are sampled with its seed.
        presentation: The baseline presentation, computed if not given.
        smith: Its Smith normal form.

    Returns:
        The membership audit in the presentation and the sign audit.
    """
    presentation = presentation or k1_presentation_baseline(cat, budget)
    smith = smith or smith_normal_form(presentation)
    squares = simplicial.enumerate_double_exact_squares(cat, budget.max_object_size)
    pairs = [
        (first, second)
        for first, second in itertools.product(squares, repeat=2)
        if first.first.b == second.first.a
    ]
    membership: collections.Counter[str] = collections.Counter()
    signs: collections.Counter[str] = collections.Counter()
    failed_membership: list[str] = []
    failed_signs: list[str] = []
    for first, second in _sample(pairs, budget):
        composite = diagrams.compose_dexsq(cat, first, second)
        try:
            obstruction = diagrams.admissible_triple(
                cat,
                simplicial.dexsq_edge(cat, first),
                simplicial.dexsq_edge(cat, second),
                simplicial.dexsq_edge(cat, composite),
            ).obstruction
        except NotAdmissible:
            continue
        label = f"{dexsq_label(cat, first)}∘{dexsq_label(cat, second)}"
        terms = ((1, first), (1, second), (-1, composite), (-1, obstruction))
        holds = combination_is_zero(cat, presentation, terms, smith)
        membership["outside" if holds is None else "checked"] += 1
        if holds is False:
            failed_membership.append(label)
        signs["checked"] += 1
        if sum(coefficient * sign_class(dexsq) for coefficient, dexsq in terms) % 2:
            failed_signs.append(label)
    return (
        types_.RelationAudit(
            checked=membership["checked"],
            failed=tuple(failed_membership),
            outside=membership["outside"],
        ),
        types_.RelationAudit(checked=signs["checked"], failed=tuple(failed_signs)),
    )


def relation_audit(
    cat: core.CategoryInstance,
    presentation: types_.Presentation,
    diagrams_: typing.Iterable[types_.Optimal3x3],
    smith: types_.SnfResult | None = None,
) -> types_.RelationAudit:
    """Check the direct sum and composition laws implied by 3×3 diagrams.

    Args:
        cat: The category instance.
        presentation: The presentation.
        diagrams_: The diagrams.
        smith: The Smith normal form of the presentation.

    Returns:
        The audit of ⟨f⟩+⟨g⟩ = ⟨f⊕g⟩ for direct sum rows and ⟨f⟩+⟨g⟩ = ⟨g∘f⟩+⟨l₂⟩ for
        composition diagrams.
    """
    smith = smith or smith_normal_form(presentation)
    checked, failed, outside = 0, [], 0
    for diagram in diagrams_:
        (l0, l1, l2), (c0, c1, c2) = diagrams.diagram_squares(diagram)
        if all(column.is_diagonal() for column in (c0, c1, c2)):
            terms: tuple = ((1, l0), (1, l2), (-1, l1))
        else:
            terms = ((1, c0), (1, l1), (-1, c1), (-1, l2))
        holds = combination_is_zero(cat, presentation, terms, smith)
        if holds is None:
            outside += 1
            continue
        checked += 1
        if not holds:
            failed.append(dexsq_label(cat, l1))
    return types_.RelationAudit(checked=checked, failed=tuple(failed), outside=outside)


def _edge_size(cat: core.CategoryInstance, edge: types_.GSimplex) -> int:
    """Get the size of the larger target of an edge.

    Args:
        cat: The category instance.
        edge: The edge.

    Returns:
        The size of the larger of b and b′.
    """
    return max(cat.size(row.objects[-1]) for row in (edge.first, edge.second))


def permutation_homotopy_suite(
    cat: core.CategoryInstance, budget: types_.CategoryBudget
) -> types_.RelationAudit:
    """Evaluate the permutation homotopy on pairs of edges with a common quotient.

    Args:
        cat: The category instance.
        budget: The budget; pairs beyond its sample count are sampled with its seed.

    Returns:
        The number of pairs checked; a failing pair raises.
    """
    edges = simplicial.enumerate_g_edges(cat, budget)
    pairs = [
        (first, second)
        for first, second in itertools.product(edges, repeat=2)
        if first.quotients.rows[0][-1] == second.quotients.rows[0][-1]
        and _edge_size(cat, first) + _edge_size(cat, second) <= budget.max_object_size
    ]
    checked = 0
    for first, second in _sample(pairs, budget):
        simplicial.permutation_homotopy(cat, first, second)
        checked += 1
    return types_.RelationAudit(checked=checked)


def pushout_suite(
    cat: core.CategoryInstance, budget: types_.CategoryBudget
) -> types_.RelationAudit:
    """Build the 2-simplices through the pushout of every span of edges in budget.

    Args:
        cat: The category instance.
        budget: The budget; spans beyond its sample count are sampled with its seed.

    Returns:
        The number of spans checked; a failing span raises.
    """
    edges = simplicial.enumerate_g_edges(cat, budget)
    spans = [
        (first, second)
        for first, second in itertools.product(edges, repeat=2)
        if (first.first.objects[1], first.second.objects[1])
        == (second.first.objects[1], second.second.objects[1])
        and _edge_size(cat, first) + _edge_size(cat, second) <= budget.max_object_size
    ]
    checked = 0
    for first, second in _sample(spans, budget):
        simplicial.pushout_two_simplices(cat, first, second)
        checked += 1
    return types_.RelationAudit(checked=checked)


def named_square(cat: core.CategoryInstance, name: str) -> types_.DoubleExactSquare:
    """Build a named double exact square of finite sets.

    The names are l_tau (the transposition of a 2-set), l_cycle3 (a 3-cycle), e_n (the
    standard edge of an n-set) and id_n (the identity of an n-set).

    Args:
        cat: The finite set instance.
        name: The name.

    Returns:
        The double exact square.

    Raises:
        InputError: if the name is unknown.
    """
    if (match := NAMED_SQUARE_PATTERN.fullmatch(name)) is None:
        raise InputError(f"unknown square {name=!r}")
    if name == "l_tau":
        return diagrams.automorphism_square(
            cat, types_.Mor(kind=M, src=(0, 1), dst=(0, 1), table=((0, 1), (1, 0)))
        )
    if name == "l_cycle3":
        return diagrams.automorphism_square(
            cat,
            types_.Mor(kind=M, src=(0, 1, 2), dst=(0, 1, 2), table=((0, 1), (1, 2), (2, 0))),
        )
    if match.group(2) is not None:
        obj = tuple(range(int(match.group(2))))
        return _edge_dexsq(simplicial.standard_edge(cat, obj))
    obj = tuple(range(int(match.group(3))))
    return diagrams.automorphism_square(cat, core.identity(cat, obj, M))


def parse_query(text: str) -> tuple[tuple[int, str], ...]:
    """Parse a linear combination such as 2*l_tau-e_2.

    Args:
        text: The query.

    Returns:
        Coefficients with square names.

    Raises:
        InputError: if the query is malformed.
    """
    if not QUERY_PATTERN.fullmatch(text):
        raise InputError(f"malformed query {text=!r}")
    terms = []
    for match in TERM_PATTERN.finditer(text):
        sign = -1 if match.group(1) == "-" else 1
        terms.append((sign * int(match.group(2) or 1), match.group(3)))
    return tuple(terms)


def evaluate_query(
    cat: core.CategoryInstance,
    presentation: types_.Presentation,
    text: str,
    smith: types_.SnfResult | None = None,
) -> dict:
    """Decide whether a named element vanishes.

    Args:
        cat: The finite set instance.
        presentation: The K₁ presentation.
        text: The query.
        smith: The Smith normal form of the presentation.

    Returns:
        The query with whether it is zero (None outside the budget) and its sign.
    """
    terms = tuple(
        (coefficient, named_square(cat, name)) for coefficient, name in parse_query(text)
    )
    return {
        "query": text,
        "zero": combination_is_zero(cat, presentation, terms, smith),
        "sign": sum(coefficient * sign_class(dexsq) for coefficient, dexsq in terms) % 2,
    }


def pi1_abelianized(complex_: types_.TwoComplex) -> types_.SnfResult:
    """Abelianize the fundamental group of a 2-complex.

    The generators are the edges off a spanning tree; each 2-simplex gives d₂+d₀-d₁ and each
    degenerate edge is killed.

    Args:
        complex_: The 2-complex.

    Returns:
        The Smith normal form of the relations over the non-tree edges.

    Raises:
        Disconnected: if some vertex is not reachable from the basepoint.
    """
    graph = nx.MultiGraph()
    graph.add_nodes_from(complex_.vertices)
    for index, (source, target) in enumerate(complex_.edges):
        graph.add_edge(source, target, key=index)
    if nx.node_connected_component(graph, complex_.basepoint) != set(complex_.vertices):
        raise Disconnected(f"not every vertex is reachable from {complex_.basepoint!r}")
    tree = {key for _, _, key in nx.minimum_spanning_edges(graph, keys=True, data=False)}
    generators = [index for index in range(len(complex_.edges)) if index not in tree]
    column = {edge: position for position, edge in enumerate(generators)}

    rows = []
    for d0, d1, d2 in complex_.triangles:
        row = [0] * len(generators)
        for edge, sign in ((d2, 1), (d0, 1), (d1, -1)):
            if edge in column:
                row[column[edge]] += sign
        rows.append(row)
    for edge in sorted(complex_.degenerate):
        if edge in column:
            row = [0] * len(generators)
            row[column[edge]] = 1
            rows.append(row)
    logging.debug("π1 with %s generators and %s relations", len(generators), len(rows))
    return snf.smith_normal_form(rows, columns=len(generators))
