# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit tests for finset module."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src import exceptions, finset, types_

from .helpers import mor, swap_square

M = types_.Kind.M
E = types_.Kind.E


def test_objects(finset: finset.FinSetCategory):
    """
    arrange: given the finite set instance
    act: when objects is called with size two
    assert: then every subset of {0, 1} is returned ordered by size.
    """
    assert finset.objects(2) == ((), (0,), (1,), (0, 1))


def test_representatives(finset: finset.FinSetCategory):
    """
    arrange: given the finite set instance
    act: when representatives is called
    assert: then one initial segment per cardinality is returned.
    """
    assert finset.representatives(3) == ((), (0,), (0, 1), (0, 1, 2))
    assert finset.object_class((5, 9)) == (0, 1)


@pytest.mark.parametrize(
    "mutant, src, dst, expected_count",
    [
        pytest.param(None, (0, 1), (0, 1, 2), 6, id="injections"),
        pytest.param(None, (0, 1), (0,), 0, id="no injection"),
        pytest.param(finset.FinSetMutant.NON_MONIC_E, (0, 1), (0,), 1, id="non monic mutant"),
    ],
)
def test_e_morphisms(
    mutant: finset.FinSetMutant | None, src: tuple, dst: tuple, expected_count: int
):
    """
    arrange: given a finite set instance, possibly a mutant
    act: when e_morphisms is called
    assert: then the expected number of morphisms is returned.
    """
    category = finset.FinSetCategory(mutant)

    assert len(category.e_morphisms(src, dst)) == expected_count


def _square(br: tuple) -> types_.DistSquare:
    """Build the square of inclusions {0} → {0,1}, {0,2} → br.

    Args:
        br: The bottom right corner.

    Returns:
        The square.
    """
    return types_.DistSquare(
        tl=(0,),
        tr=(0, 1),
        bl=(0, 2),
        br=br,
        top=mor(M, (0,), (0, 1), (0,)),
        left=mor(E, (0,), (0, 2), (0,)),
        bottom=mor(M, (0, 2), br, (0, 2)),
        right=mor(E, (0, 1), br, (0, 1)),
    )


@pytest.mark.parametrize(
    "mutant, br, expected",
    [
        pytest.param(None, (0, 1, 2), True, id="pushout"),
        pytest.param(None, (0, 1, 2, 3), False, id="union fails"),
        pytest.param(finset.FinSetMutant.DROP_UNION, (0, 1, 2, 3), True, id="drop union"),
    ],
)
def test_is_distinguished(mutant: finset.FinSetMutant | None, br: tuple, expected: bool):
    """
    arrange: given the square of inclusions over {0} with a bottom right corner
    act: when is_distinguished is called
    assert: then the square is distinguished iff the images cover the corner.
    """
    category = finset.FinSetCategory(mutant)

    assert category.is_distinguished(_square(br)) is expected


def test_is_distinguished_not_pullback(finset: finset.FinSetCategory):
    """
    arrange: given a commuting square whose bottom and right images meet outside the corner
    act: when is_distinguished is called
    assert: then False is returned.
    """
    square = types_.DistSquare(
        tl=(),
        tr=(0,),
        bl=(0,),
        br=(0,),
        top=mor(M, (), (0,), ()),
        left=mor(E, (), (0,), ()),
        bottom=mor(M, (0,), (0,), (0,)),
        right=mor(E, (0,), (0,), (0,)),
    )

    assert not finset.is_distinguished(square)


def test_is_pushout(finset: finset.FinSetCategory):
    """
    arrange: given the square of inclusions over {0} into {0, 1, 2}
    act: when is_pushout is called
    assert: then True is returned.
    """
    assert finset.is_pushout(_square((0, 1, 2)))
    assert not finset.is_pushout(_square((0, 1, 2, 3)))


@pytest.mark.parametrize(
    "mutant, mor_, expected_quotient",
    [
        pytest.param(None, mor(M, (0,), (0, 1, 2), (0,)), (1, 2), id="complement"),
        pytest.param(None, mor(M, (0, 1), (0, 1), (0, 1)), (), id="identity"),
        pytest.param(
            finset.FinSetMutant.WRONG_QUOTIENT,
            mor(M, (0,), (0, 1, 2), (0,)),
            (0,),
            id="wrong quotient mutant",
        ),
    ],
)
def test_formal_quotient(
    mutant: finset.FinSetMutant | None, mor_: types_.Mor, expected_quotient: tuple
):
    """
    arrange: given an injection
    act: when formal_quotient is called
    assert: then the quotient is the complement of the image included into the codomain.
    """
    category = finset.FinSetCategory(mutant)

    exact = category.formal_quotient(mor_)

    assert exact.c == expected_quotient
    assert exact.g == mor(E, expected_quotient, mor_.dst, expected_quotient)
    assert exact.f == mor_


def test_formal_kernel(finset: finset.FinSetCategory):
    """
    arrange: given an E-injection {0} ⊸ {0, 1, 2} hitting 1
    act: when formal_kernel is called
    assert: then the kernel is {0, 2}.
    """
    exact = finset.formal_kernel(mor(E, (0,), (0, 1, 2), (1,)))

    assert exact.a == (0, 2)
    assert exact.f == mor(M, (0, 2), (0, 1, 2), (0, 2))


def test_restricted_pushout(finset: finset.FinSetCategory):
    """
    arrange: given the span {0, 1} ↢ {0} ↣ {0, 2}
    act: when restricted_pushout is called
    assert: then the pushout has three elements with c placed first.
    """
    pushout = finset.restricted_pushout(
        mor(M, (0,), (0, 1), (0,)), mor(M, (0,), (0, 2), (0,))
    )

    assert pushout.obj == (0, 1, 2)
    assert pushout.in_c.as_dict() == {0: 0, 1: 1}
    assert pushout.in_b.as_dict() == {0: 0, 2: 2}


def test_restricted_pushout_disjoint(finset: finset.FinSetCategory):
    """
    arrange: given a span out of the empty set with legs of sizes two and three
    act: when restricted_pushout is called
    assert: then the pushout is the disjoint union of size five.
    """
    pushout = finset.restricted_pushout(
        finset.initial((0, 1), M), finset.initial((0, 1, 2), M)
    )

    assert pushout.obj == (0, 1, 2, 3, 4)
    assert pushout.in_c.as_dict() == {0: 0, 1: 1}
    assert pushout.in_b.as_dict() == {0: 2, 1: 3, 2: 4}


def test_direct_sum(finset: finset.FinSetCategory):
    """
    arrange: given the sets {0, 1} and {0}
    act: when direct_sum is called
    assert: then the sum places the first summand first.
    """
    total = finset.direct_sum((0, 1), (0,))

    assert total.obj == (0, 1, 2)
    assert total.p_x == mor(M, (0, 1), (0, 1, 2), (0, 1))
    assert total.p_y == mor(M, (0,), (0, 1, 2), (2,))
    assert total.q_y == mor(E, (0,), (0, 1, 2), (2,))


def test_standard_iso(finset: finset.FinSetCategory):
    """
    arrange: given two sets of size two and one of size one
    act: when standard_iso is called
    assert: then the order preserving bijection is returned or the sizes are rejected.
    """
    assert finset.standard_iso((3, 5), (0, 1)).as_dict() == {3: 0, 5: 1}

    with pytest.raises(exceptions.InstanceContractViolation):
        finset.standard_iso((3, 5), (0,))


def test_filtration_representatives(finset: finset.FinSetCategory):
    """
    arrange: given the finite set instance
    act: when filtration_representatives is called with size two
    assert: then one pair per size triple a ≤ b ≤ c ≤ 2 is returned.
    """
    pairs = finset.filtration_representatives(2)

    assert len(pairs) == 10
    assert all(first.dst == second.src for first, second in pairs)


def test_missing_initial_mutant():
    """
    arrange: given the mutant whose basepoint has one element
    act: when initial is called into a two-element set
    assert: then InstanceContractViolation is raised.
    """
    category = finset.FinSetCategory(finset.FinSetMutant.MISSING_INITIAL)

    with pytest.raises(exceptions.InstanceContractViolation):
        category.initial((0, 1), M)


@pytest.mark.parametrize(
    "diagram, expected",
    [
        pytest.param(
            types_.Diagram(nodes=((5, 9),), arrows=((0, 0, ((5, 5), (9, 9))),)),
            types_.Diagram(nodes=((0, 1),), arrows=((0, 0, ((0, 0), (1, 1))),)),
            id="identity loop",
        ),
        pytest.param(
            types_.Diagram(nodes=((5, 9), (5, 9)), arrows=((0, 1, ((5, 5), (9, 9))),)),
            types_.Diagram(nodes=((0, 1), (0, 1)), arrows=((0, 1, ((0, 0), (1, 1))),)),
            id="identity arrow",
        ),
        pytest.param(
            types_.Diagram(
                nodes=((3, 7), (0, 1)),
                arrows=((0, 1, ((3, 1), (7, 0))), (1, 0, ((0, 7), (1, 3)))),
            ),
            types_.Diagram(
                nodes=((0, 1), (0, 1)),
                arrows=((0, 1, ((0, 0), (1, 1))), (1, 0, ((0, 0), (1, 1)))),
            ),
            id="inverse pair",
        ),
    ],
)
def test_canonical_form(
    finset: finset.FinSetCategory, diagram: types_.Diagram, expected: types_.Diagram
):
    """
    arrange: given a diagram of identities or mutually inverse bijections
    act: when canonical_form is called
    assert: then the identities on initial segments are returned.
    """
    assert finset.canonical_form(diagram) == expected


@st.composite
def relabeled_diagrams(draw: st.DrawFn) -> tuple[types_.Diagram, types_.Diagram]:
    """Draw a diagram of injections, cycles included, with a copy on other labels."""
    sizes = draw(st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=3))
    node = st.integers(min_value=0, max_value=len(sizes) - 1)
    arrows = []
    for src, dst in draw(st.lists(st.tuples(node, node), max_size=4)):
        if sizes[src] <= sizes[dst]:
            images = draw(st.permutations(range(sizes[dst])))
            arrows.append((src, dst, tuple(zip(range(sizes[src]), images))))
    names = [
        draw(
            st.lists(
                st.integers(min_value=0, max_value=50), min_size=size, max_size=size, unique=True
            )
        )
        for size in sizes
    ]
    original = types_.Diagram(
        nodes=tuple(tuple(range(size)) for size in sizes), arrows=tuple(arrows)
    )
    relabeled = types_.Diagram(
        nodes=tuple(tuple(sorted(labels)) for labels in names),
        arrows=tuple(
            (src, dst, tuple(sorted((names[src][x], names[dst][y]) for x, y in table)))
            for src, dst, table in arrows
        ),
    )
    return original, relabeled


@settings(max_examples=1000, deadline=None)
@given(pair=relabeled_diagrams())
def test_canonical_form_relabeling(pair: tuple[types_.Diagram, types_.Diagram]):
    """
    arrange: given a random diagram of injections and the same diagram on other labels
    act: when canonical_form is called on both and again on the result
    assert: then both forms agree and canonicalizing again changes nothing.
    """
    category = finset.FinSetCategory()
    original, relabeled = pair

    canonical = category.canonical_form(original)

    assert category.canonical_form(relabeled) == canonical
    assert category.canonical_form(canonical) == canonical


@given(
    labels=st.lists(st.integers(min_value=0, max_value=50), min_size=3, max_size=3, unique=True),
    images=st.permutations([0, 1, 2]),
)
def test_canonical_form_invariance(labels: list[int], images: list[int]):
    """
    arrange: given an injection of two elements into three relabeled arbitrarily
    act: when canonical_form is called
    assert: then the form equals that of the standard inclusion.
    """
    category = finset.FinSetCategory()
    target = tuple(sorted(labels))
    source = (100, 101)
    relabeled = types_.Diagram(
        nodes=(source, target),
        arrows=((0, 1, ((100, target[images[0]]), (101, target[images[1]]))),),
    )
    standard = types_.Diagram(
        nodes=((0, 1), (0, 1, 2)), arrows=((0, 1, ((0, 0), (1, 1))),)
    )

    assert category.canonical_form(relabeled) == category.canonical_form(standard)


def test_piecewise_bijection():
    """
    arrange: given l(τ) for the transposition of {0, 1}
    act: when piecewise_bijection is called
    assert: then the transposition is returned.
    """
    assert finset.piecewise_bijection(swap_square()) == {0: 1, 1: 0}


def test_piecewise_bijection_diagonal():
    """
    arrange: given a diagonal double exact square
    act: when piecewise_bijection is called
    assert: then the identity is returned.
    """
    square = swap_square()
    diagonal = types_.DoubleExactSquare(first=square.first, second=square.first)

    assert finset.piecewise_bijection(diagonal) == {0: 0, 1: 1}


def test_piecewise_bijection_overlap():
    """
    arrange: given a component whose images overlap
    act: when piecewise_bijection is called
    assert: then ImagesDoNotPartition is raised.
    """
    square = swap_square()
    broken = square.first._replace(
        c=(0,), g=mor(E, (0,), (0, 1), (0,))
    )

    with pytest.raises(exceptions.ImagesDoNotPartition):
        finset.piecewise_bijection(types_.DoubleExactSquare(first=broken, second=broken))
