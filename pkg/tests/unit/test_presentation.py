# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit tests for presentation module."""

# pylint: disable=redefined-outer-name

import pytest

from src import exceptions, presentation, types_
from src.finset import FinSetCategory
from src.matroid import MatroidCategory

from .. import factories
from .helpers import swap_square


@pytest.fixture(scope="module")
def budget_two() -> types_.CategoryBudget:
    """Get a budget of size two."""
    return factories.CategoryBudgetFactory(max_object_size=2)


@pytest.fixture(scope="module")
def baseline(budget_two: types_.CategoryBudget) -> types_.Presentation:
    """Get the baseline K₁ presentation of finite sets up to size two."""
    return presentation.k1_presentation_baseline(FinSetCategory(), budget_two)


def test_k0_finset(finset: FinSetCategory):
    """
    arrange: given the finite set instance and a budget of size three
    act: when the K₀ presentation is reduced
    assert: then the group is free of rank one.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=3)

    k0 = presentation.k0_presentation(finset, budget)
    smith = presentation.smith_normal_form(k0)

    assert k0.generators == ("[0]", "[0,1]", "[0,1,2]")
    assert smith.free_rank == 1
    assert smith.invariant_factors == ()


def test_k0_direct_sum_audit(finset: FinSetCategory):
    """
    arrange: given the K₀ presentation of finite sets up to size three
    act: when k0_direct_sum_audit is called
    assert: then the sums within budget are checked and hold.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=3)
    k0 = presentation.k0_presentation(finset, budget)

    audit = presentation.k0_direct_sum_audit(finset, k0)

    assert audit == types_.RelationAudit(checked=2, failed=(), outside=4)


def test_k0_matroids(matroids: MatroidCategory):
    """
    arrange: given the matroid instance and a budget of size one
    act: when k0_presentation is called
    assert: then the loop and the coloop are the generators.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=1)

    k0 = presentation.k0_presentation(matroids, budget)

    assert len(k0.generators) == 2
    assert all(label.startswith("M") for label in k0.generators)


def test_export(finset: FinSetCategory):
    """
    arrange: given the K₀ presentation of finite sets up to size one
    act: when export is called
    assert: then the presentation is returned with its invariants.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=1)
    k0 = presentation.k0_presentation(finset, budget)

    exported = presentation.export(k0, presentation.smith_normal_form(k0))

    assert exported == {
        "generators": ["[0]"],
        "relations": [],
        "invariant_factors": [],
        "free_rank": 1,
    }


def test_k1_baseline_oracle(baseline: types_.Presentation):
    """
    arrange: given the baseline K₁ presentation of finite sets up to size two
    act: when the sign homomorphism is evaluated on its relations
    assert: then every relation has an even sign.
    """
    assert presentation.oracle_respects_relations(baseline) == types_.OracleAudit(holds=True)


@pytest.mark.parametrize(
    "query, expected_zero, expected_sign",
    [
        pytest.param("l_tau", False, 1, id="transposition"),
        pytest.param("2*l_tau", True, 0, id="twice the transposition"),
        pytest.param("e_2", True, 0, id="standard edge"),
        pytest.param("id_2", True, 0, id="identity"),
        pytest.param("l_tau - l_tau", True, 0, id="difference"),
        pytest.param("l_cycle3", None, 0, id="outside budget"),
    ],
)
def test_evaluate_query(
    baseline: types_.Presentation,
    query: str,
    expected_zero: bool | None,
    expected_sign: int,
):
    """
    arrange: given the baseline K₁ presentation of finite sets up to size two
    act: when a named element is queried
    assert: then its vanishing and its sign are reported.
    """
    result = presentation.evaluate_query(FinSetCategory(), baseline, query)

    assert result == {"query": query, "zero": expected_zero, "sign": expected_sign}


def test_bogus_relation_breaks_oracle(baseline: types_.Presentation):
    """
    arrange: given the baseline presentation with the relation ⟨l(τ)⟩ = 0 added
    act: when oracle_respects_relations is called
    assert: then the added relation is reported.
    """
    label = presentation.dexsq_label(FinSetCategory(), swap_square())
    row = [int(generator == label) for generator in baseline.generators]

    audit = presentation.oracle_respects_relations(presentation.with_relation(baseline, row))

    assert audit == types_.OracleAudit(holds=False, violation=len(baseline.relations))


def test_with_relation_wrong_length(baseline: types_.Presentation):
    """
    arrange: given a relation with one entry too many
    act: when with_relation is called
    assert: then DimensionMismatch is raised.
    """
    with pytest.raises(exceptions.DimensionMismatch):
        presentation.with_relation(baseline, [0] * (len(baseline.generators) + 1))


def test_element_is_zero_wrong_length(baseline: types_.Presentation):
    """
    arrange: given an element with no coefficients
    act: when element_is_zero is called
    assert: then DimensionMismatch is raised.
    """
    with pytest.raises(exceptions.DimensionMismatch):
        presentation.element_is_zero(baseline, [])


def test_k1_nenashev(budget_two: types_.CategoryBudget):
    """
    arrange: given the harvested 3×3 diagrams of finite sets up to size two
    act: when k1_presentation_nenashev is called
    assert: then it has relations and respects the sign homomorphism.
    """
    finset = FinSetCategory()
    diagrams_ = presentation.harvest_3x3(finset, budget_two)

    nenashev = presentation.k1_presentation_nenashev(finset, budget_two, diagrams_)

    assert diagrams_
    assert nenashev.generators
    assert nenashev.relations
    assert presentation.oracle_respects_relations(nenashev).holds


def test_relation_audit(baseline: types_.Presentation, budget_two: types_.CategoryBudget):
    """
    arrange: given the harvested 3×3 diagrams of finite sets up to size two
    act: when relation_audit is called against the baseline presentation
    assert: then every law implied by a diagram holds.
    """
    finset = FinSetCategory()
    diagrams_ = presentation.harvest_3x3(finset, budget_two)

    audit = presentation.relation_audit(finset, baseline, diagrams_)

    assert audit.checked
    assert audit.failed == ()


def test_k1_not_pcgw(matroids: MatroidCategory, budget_two: types_.CategoryBudget):
    """
    arrange: given the matroid instance
    act: when k1_presentation_baseline is called
    assert: then NotPCGW is raised.
    """
    with pytest.raises(exceptions.NotPCGW):
        presentation.k1_presentation_baseline(matroids, budget_two)


def test_corollary_identities(baseline: types_.Presentation, budget_two: types_.CategoryBudget):
    """
    arrange: given the baseline presentation up to size two
    act: when corollary_identities is called
    assert: then no identity fails and l(ττ) = 2l(τ) is decided.
    """
    checks = presentation.corollary_identities(FinSetCategory(), budget_two, baseline)

    assert checks
    assert all(check.holds is not False for check in checks)
    assert types_.IdentityCheck(
        identity="product", alpha=(1, 0), beta=(1, 0), holds=True
    ) in checks


def test_admissible_sweep(baseline: types_.Presentation, budget_two: types_.CategoryBudget):
    """
    arrange: given the baseline presentation up to size two
    act: when admissible_sweep is called
    assert: then the composition law holds in the group and under the sign.
    """
    membership, signs = presentation.admissible_sweep(FinSetCategory(), budget_two, baseline)

    assert membership.checked
    assert membership.failed == ()
    assert signs.failed == ()


def test_homotopy_and_pushout_suites(finset: FinSetCategory, budget_two: types_.CategoryBudget):
    """
    arrange: given the finite set instance and a budget of size two
    act: when the permutation homotopy and pushout suites run
    assert: then some pairs of edges are checked.
    """
    assert presentation.permutation_homotopy_suite(finset, budget_two).checked
    assert presentation.pushout_suite(finset, budget_two).checked


@pytest.mark.parametrize(
    "name, expected_sign",
    [
        pytest.param("l_tau", 1, id="transposition"),
        pytest.param("l_cycle3", 0, id="three cycle"),
        pytest.param("e_3", 0, id="standard edge"),
        pytest.param("id_1", 0, id="identity"),
    ],
)
def test_sign_class(finset: FinSetCategory, name: str, expected_sign: int):
    """
    arrange: given a named double exact square
    act: when sign_class is called
    assert: then the parity of its piecewise bijection is returned.
    """
    assert presentation.sign_class(presentation.named_square(finset, name)) == expected_sign


def test_named_square_unknown(finset: FinSetCategory):
    """
    arrange: given a name that is not a known square
    act: when named_square is called
    assert: then InputError is raised.
    """
    with pytest.raises(exceptions.InputError):
        presentation.named_square(finset, "l_sigma")


@pytest.mark.parametrize(
    "query, expected_terms",
    [
        pytest.param("l_tau", ((1, "l_tau"),), id="single"),
        pytest.param("2*l_tau-e_2", ((2, "l_tau"), (-1, "e_2")), id="combination"),
        pytest.param(" -3*id_1 + l_cycle3 ", ((-3, "id_1"), (1, "l_cycle3")), id="spaces"),
    ],
)
def test_parse_query(query: str, expected_terms: tuple):
    """
    arrange: given a linear combination of named squares
    act: when parse_query is called
    assert: then the coefficients and names are returned.
    """
    assert presentation.parse_query(query) == expected_terms


@pytest.mark.parametrize(
    "query",
    [
        pytest.param("", id="empty"),
        pytest.param("l_tau+", id="dangling sign"),
        pytest.param("2**l_tau", id="double star"),
    ],
)
def test_parse_query_malformed(query: str):
    """
    arrange: given a malformed query
    act: when parse_query is called
    assert: then InputError is raised.
    """
    with pytest.raises(exceptions.InputError):
        presentation.parse_query(query)


def _triangle_complex(
    edges: tuple, triangles: tuple = (), degenerate: frozenset = frozenset()
) -> types_.TwoComplex:
    """Build a 2-complex on the vertices of its edges.

    Args:
        edges: The edges.
        triangles: The 2-simplices.
        degenerate: The degenerate edges.

    Returns:
        The complex based at vertex 0.
    """
    vertices = tuple(sorted({vertex for edge in edges for vertex in edge}))
    return types_.TwoComplex(
        vertices=vertices,
        edges=edges,
        triangles=triangles,
        degenerate=degenerate,
        basepoint=0,
    )


@pytest.mark.parametrize(
    "complex_, expected_free_rank, expected_factors",
    [
        pytest.param(_triangle_complex(((0, 1), (1, 2), (0, 2))), 1, (), id="hollow triangle"),
        pytest.param(
            _triangle_complex(((0, 1), (1, 2), (0, 2)), triangles=((1, 2, 0),)),
            0,
            (),
            id="filled triangle",
        ),
        pytest.param(
            _triangle_complex(((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4))),
            2,
            (),
            id="wedge of triangles",
        ),
        pytest.param(_triangle_complex(((0, 0),)), 1, (), id="circle"),
        pytest.param(
            _triangle_complex(((0, 0),), degenerate=frozenset({0})), 0, (), id="degenerate loop"
        ),
        pytest.param(
            _triangle_complex(((0, 0), (0, 0)), triangles=((0, 1, 0),)),
            1,
            (),
            id="two loops glued",
        ),
    ],
)
def test_pi1_abelianized(
    complex_: types_.TwoComplex, expected_free_rank: int, expected_factors: tuple
):
    """
    arrange: given a 2-complex
    act: when pi1_abelianized is called
    assert: then the free rank and torsion of the abelianized fundamental group are returned.
    """
    result = presentation.pi1_abelianized(complex_)

    assert result.free_rank == expected_free_rank
    assert result.invariant_factors == expected_factors


def test_pi1_abelianized_disconnected():
    """
    arrange: given a complex with two vertices and no edges
    act: when pi1_abelianized is called
    assert: then Disconnected is raised.
    """
    complex_ = types_.TwoComplex(
        vertices=(0, 1), edges=(), triangles=(), degenerate=frozenset(), basepoint=0
    )

    with pytest.raises(exceptions.Disconnected):
        presentation.pi1_abelianized(complex_)


def test_nenashev_direct_sum_law():
    """
    arrange: given the direct sum 3×3 diagrams of finite sets up to size three
    act: when relation_audit is called against the presentation they generate
    assert: then ⟨f⟩ + ⟨g⟩ − ⟨f⊕g⟩ vanishes for every diagram.
    """
    finset = FinSetCategory()
    budget = factories.CategoryBudgetFactory(max_object_size=3)
    diagrams_ = presentation.harvest_3x3(
        finset, budget, kinds=(types_.ThreeByThreeKind.DIRECT_SUM,)
    )
    nenashev = presentation.k1_presentation_nenashev(finset, budget, diagrams_)

    audit = presentation.relation_audit(finset, nenashev, diagrams_)

    assert audit.checked
    assert audit.failed == ()


def test_harvest_3x3_workers_keep_order(budget_two: types_.CategoryBudget):
    """
    arrange: given the finite set instance up to size two
    act: when harvest_3x3 is called with one worker and with several
    assert: then the same diagrams are returned in the same order.
    """
    finset = FinSetCategory()

    serial = presentation.harvest_3x3(finset, budget_two)
    threaded = presentation.harvest_3x3(finset, budget_two, workers=4)

    assert threaded == serial
