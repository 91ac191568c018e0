# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit tests for simplicial module."""

import itertools

import pytest

from src import exceptions, simplicial, types_
from src.finset import FinSetCategory
from src.matroid import MatroidCategory

from .. import factories
from .helpers import swap_square


@pytest.mark.parametrize(
    "max_object_size, expected_count",
    [
        pytest.param(1, 2, id="size one"),
        pytest.param(2, 4, id="size two"),
    ],
)
def test_enumerate_s_simplices_edges(
    finset: FinSetCategory, max_object_size: int, expected_count: int
):
    """
    arrange: given the finite set instance
    act: when enumerate_s_simplices is called for dimension one
    assert: then one flag per object is returned and every flag is valid.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=max_object_size)

    flags = simplicial.enumerate_s_simplices(finset, 1, budget)

    assert len(flags) == expected_count
    assert all(simplicial.is_valid_flag(finset, flag) for flag in flags)


def test_enumerate_s_simplices_beyond_cap(finset: FinSetCategory):
    """
    arrange: given a budget whose filtration length is two
    act: when enumerate_s_simplices is called for dimension three
    assert: then BudgetExhausted is raised.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=1, max_filtration_length=2)

    with pytest.raises(exceptions.BudgetExhausted):
        simplicial.enumerate_s_simplices(finset, 3, budget)


def test_flag_faces_and_degeneracies_are_valid(finset: FinSetCategory):
    """
    arrange: given the 2-simplices of S•FinSet up to size two
    act: when every face and degeneracy is taken
    assert: then each is a valid flag.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=2)

    flags = simplicial.enumerate_s_simplices(finset, 2, budget)

    assert flags
    for flag in flags:
        for index in range(flag.dim + 1):
            assert simplicial.is_valid_flag(finset, simplicial.flag_face(finset, flag, index))
            assert simplicial.is_valid_flag(
                finset, simplicial.flag_degeneracy(finset, flag, index)
            )


def test_flag_simplicial_identities(finset: FinSetCategory):
    """
    arrange: given the 2-simplices of S•FinSet up to size two
    act: when faces of degeneracies are taken
    assert: then dᵢsᵢ and dᵢ₊₁sᵢ are the identity.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=2)

    for flag in simplicial.enumerate_s_simplices(finset, 2, budget):
        for index in range(flag.dim + 1):
            degenerate = simplicial.flag_degeneracy(finset, flag, index)
            assert simplicial.flag_face(finset, degenerate, index) == flag
            assert simplicial.flag_face(finset, degenerate, index + 1) == flag


def test_flag_face_out_of_range(finset: FinSetCategory):
    """
    arrange: given a 1-simplex
    act: when flag_face is called with index two
    assert: then InvalidDiagram is raised.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=1)
    flag = simplicial.enumerate_s_simplices(finset, 1, budget)[-1]

    with pytest.raises(exceptions.InvalidDiagram):
        simplicial.flag_face(finset, flag, 2)


def test_flag_from_filtration_not_based(finset: FinSetCategory):
    """
    arrange: given a filtration that starts away from the basepoint
    act: when flag_from_filtration is called
    assert: then NotComposable is raised.
    """
    start = finset.m_morphisms((0,), (0, 1))[0]

    with pytest.raises(exceptions.NotComposable):
        simplicial.flag_from_filtration(finset, (start,))


def test_split_flag_round_trip(finset: FinSetCategory):
    """
    arrange: given a 2-simplex of S•FinSet
    act: when it is split and stacked again
    assert: then the same flag is returned.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=2)
    flag = simplicial.enumerate_s_simplices(finset, 2, budget)[-1]

    assert simplicial.flag_of_row(*simplicial.split_flag(flag)) == flag


def test_standard_edge_is_diagonal(finset: FinSetCategory):
    """
    arrange: given the object {0, 1}
    act: when standard_edge is called
    assert: then the edge is valid and its double exact square is diagonal.
    """
    edge = simplicial.standard_edge(finset, (0, 1))

    dexsq = simplicial.edge_dexsq(edge)

    assert simplicial.is_valid_g_simplex(finset, edge)
    assert dexsq is not None
    assert dexsq.is_diagonal()


def test_edge_dexsq_round_trip(finset: FinSetCategory):
    """
    arrange: given l(τ) for the transposition of {0, 1}
    act: when it is turned into an edge and read back
    assert: then the same double exact square is returned.
    """
    square = swap_square()

    edge = simplicial.dexsq_edge(finset, square)

    assert simplicial.edge_dexsq(edge) == square
    assert simplicial.is_valid_g_simplex(finset, edge)


def test_edge_of_squares_quotient_mismatch(finset: FinSetCategory):
    """
    arrange: given exact squares with different quotients
    act: when edge_of_squares is called
    assert: then QuotientMismatch is raised.
    """
    first = simplicial.edge_squares(simplicial.standard_edge(finset, (0,)))[0]
    second = simplicial.edge_squares(simplicial.standard_edge(finset, (0, 1)))[0]

    with pytest.raises(exceptions.QuotientMismatch):
        simplicial.edge_of_squares(finset, first, second)


def test_dexsq_inverse(finset: FinSetCategory):
    """
    arrange: given l(τ)
    act: when dexsq_inverse is called
    assert: then the components are swapped.
    """
    square = swap_square()

    inverse = simplicial.dexsq_inverse(square)

    assert inverse.first == square.second
    assert inverse.second == square.first


def test_canonical_loop(finset: FinSetCategory):
    """
    arrange: given l(τ)
    act: when canonical_loop is called
    assert: then a closed loop of three edges through the base vertex is returned.
    """
    loop = simplicial.canonical_loop(finset, swap_square())

    assert len(loop.edges) == 3
    assert [orientation for _, orientation in loop.edges] == [1, 1, -1]


def test_validate_loop_open_path(finset: FinSetCategory):
    """
    arrange: given a single standard edge, which is not closed
    act: when validate_loop is called
    assert: then EdgeMismatch is raised.
    """
    loop = types_.LoopWord(edges=((simplicial.standard_edge(finset, (0,)), 1),))

    with pytest.raises(exceptions.EdgeMismatch):
        simplicial.validate_loop(finset, loop)


def test_enumerate_double_exact_squares(finset: FinSetCategory):
    """
    arrange: given the finite set instance
    act: when enumerate_double_exact_squares is called with size two
    assert: then l(τ) is among the classes and every component is exact.
    """
    squares = simplicial.enumerate_double_exact_squares(finset, 2)
    forms = {finset.canonical_form(simplicial.dexsq_diagram(dexsq)) for dexsq in squares}

    assert len(forms) == len(squares)
    assert finset.canonical_form(simplicial.dexsq_diagram(swap_square())) in forms
    assert any(not dexsq.is_diagonal() for dexsq in squares)


def test_enumerate_g_edges_valid(finset: FinSetCategory):
    """
    arrange: given the finite set instance and a budget of size two
    act: when enumerate_g_edges is called
    assert: then every edge is a valid G-simplex.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=2)

    edges = simplicial.enumerate_g_edges(finset, budget)

    assert edges
    assert all(simplicial.is_valid_g_simplex(finset, edge) for edge in edges)


def test_enumerate_g_two_simplices_faces(finset: FinSetCategory):
    """
    arrange: given the 2-simplices of GFinSet up to size two
    act: when their faces are taken
    assert: then every simplex and face is valid and every face is a double exact square.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=2)

    simplices = simplicial.enumerate_g_two_simplices(finset, budget)

    assert simplices
    for simplex in simplices:
        assert simplicial.is_valid_g_simplex(finset, simplex)
        for index in range(3):
            face = simplicial.g_face(finset, simplex, index)
            assert simplicial.is_valid_g_simplex(finset, face)
            assert simplicial.edge_dexsq(face) is not None


def test_g_face_identity(finset: FinSetCategory):
    """
    arrange: given the 2-simplices of GFinSet up to size two
    act: when faces of faces are taken
    assert: then dᵢdⱼ = dⱼ₋₁dᵢ for i < j.
    """
    budget = factories.CategoryBudgetFactory(max_object_size=2)

    for simplex in simplicial.enumerate_g_two_simplices(finset, budget):
        for i, j in itertools.combinations(range(3), 2):
            assert simplicial.g_face(
                finset, simplicial.g_face(finset, simplex, j), i
            ) == simplicial.g_face(finset, simplicial.g_face(finset, simplex, i), j - 1)


def test_h_add_edges(finset: FinSetCategory):
    """
    arrange: given l(τ) as an edge and the standard edge of {0}
    act: when h_add_edges is called
    assert: then the sum is a valid edge between diagonal vertices of size three.
    """
    total = simplicial.h_add_edges(
        finset,
        simplicial.dexsq_edge(finset, swap_square()),
        simplicial.standard_edge(finset, (0,)),
    )

    assert simplicial.is_valid_g_simplex(finset, total)
    dexsq = simplicial.edge_dexsq(total)
    assert dexsq is not None
    assert dexsq.first.b == (0, 1, 2)


def test_g_sum_dimension_mismatch(finset: FinSetCategory):
    """
    arrange: given an edge and a vertex
    act: when g_sum is called
    assert: then InvalidDiagram is raised.
    """
    with pytest.raises(exceptions.InvalidDiagram):
        simplicial.g_sum(
            finset,
            simplicial.standard_edge(finset, (0,)),
            simplicial.vertex(finset, (0,), (0,)),
        )


def test_swap_iso(finset: FinSetCategory):
    """
    arrange: given the sets {0} and {0, 1}
    act: when swap_iso is called
    assert: then the summands are exchanged.
    """
    iso = simplicial.swap_iso(finset, (0,), (0, 1), types_.Kind.M)

    assert iso.as_dict() == {0: 2, 1: 0, 2: 1}


def test_permutation_homotopy(finset: FinSetCategory):
    """
    arrange: given l(τ) and the standard edge of its quotient
    act: when permutation_homotopy is called
    assert: then one value per operator and cut is returned and each is valid.
    """
    values = simplicial.permutation_homotopy(
        finset,
        simplicial.dexsq_edge(finset, swap_square()),
        simplicial.standard_edge(finset, ()),
    )

    assert len(values) == 2 * 2 + 3 * 3 + 4 * 4
    assert all(simplicial.is_valid_g_simplex(finset, value.simplex) for value in values)


def test_permutation_homotopy_quotient_mismatch(finset: FinSetCategory):
    """
    arrange: given edges with quotients of different sizes
    act: when permutation_homotopy is called
    assert: then QuotientMismatch is raised.
    """
    with pytest.raises(exceptions.QuotientMismatch):
        simplicial.permutation_homotopy(
            finset,
            simplicial.standard_edge(finset, (0,)),
            simplicial.standard_edge(finset, (0, 1)),
        )


def test_pushout_two_simplices(finset: FinSetCategory):
    """
    arrange: given the span of standard edges of {0} and {0, 1} out of the base vertex
    act: when pushout_two_simplices is called
    assert: then both simplices extend the span and are valid.
    """
    first = simplicial.standard_edge(finset, (0,))
    second = simplicial.standard_edge(finset, (0, 1))

    through_b, through_d = simplicial.pushout_two_simplices(finset, first, second)

    assert simplicial.g_face(finset, through_b, 2) == first
    assert simplicial.g_face(finset, through_d, 2) == second
    assert simplicial.is_valid_g_simplex(finset, through_b)
    assert simplicial.is_valid_g_simplex(finset, through_d)


def test_pushout_two_simplices_not_pcgw(matroids: MatroidCategory):
    """
    arrange: given the matroid instance
    act: when pushout_two_simplices is called
    assert: then NotPCGW is raised.
    """
    edge = simplicial.standard_edge(matroids, matroids.basepoint)

    with pytest.raises(exceptions.NotPCGW):
        simplicial.pushout_two_simplices(matroids, edge, edge)
