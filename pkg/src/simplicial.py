# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Truncated S• and G constructions: flags, G-simplices, edges, sums and loops."""

import collections
import itertools
import logging
import typing

from . import core, types_
from .exceptions import (
    BudgetExhausted,
    EdgeMismatch,
    InvalidDiagram,
    NotComposable,
    NotPCGW,
    QuotientMismatch,
)

M = types_.Kind.M
E = types_.Kind.E

MAX_DIMENSION = 3
HOMOTOPY_DIMENSION = 2


def _entry(flag: types_.FlagSimplex, row: int, column: int) -> types_.ObjId:
    """Get X[row][column] of a flag.

    Args:
        flag: The flag.
        row: The row.
        column: The column, at least the row.

    Returns:
        The object.
    """
    return flag.rows[row][column - row]


def _m_path(
    cat: core.CategoryInstance, flag: types_.FlagSimplex, row: int, start: int, stop: int
) -> types_.Mor:
    """Compose the M-morphisms of a row between two columns.

    Args:
        cat: The category instance.
        flag: The flag.
        row: The row.
        start: The first column.
        stop: The last column.

    Returns:
        X[row][start] ↣ X[row][stop].
    """
    if start == stop:
        return core.identity(cat, _entry(flag, row, start), M)
    return core.compose_all(cat, *(flag.m_maps[row][t - row] for t in range(start, stop)))


def _e_path(
    cat: core.CategoryInstance, flag: types_.FlagSimplex, column: int, upper: int, lower: int
) -> types_.Mor:
    """Compose the E-morphisms of a column between two rows.

    Args:
        cat: The category instance.
        flag: The flag.
        column: The column.
        upper: The higher row index.
        lower: The lower row index.

    Returns:
        X[upper][column] ⊸ X[lower][column].
    """
    if upper == lower:
        return core.identity(cat, _entry(flag, upper, column), E)
    return core.compose_all(
        cat, *(flag.e_maps[t][column - t - 1] for t in range(upper - 1, lower - 1, -1))
    )


def reindex_flag(
    cat: core.CategoryInstance, flag: types_.FlagSimplex, sigma: typing.Sequence[int]
) -> types_.FlagSimplex:
    """Apply a simplicial operator to a flag.

    Args:
        cat: The category instance.
        flag: The flag.
        sigma: The monotone map [m] → [n] as its images.

    Returns:
        The flag X′[i][j] = X[σ(i)][σ(j)] with composite or identity morphisms.
    """
    size = len(sigma) - 1
    return types_.FlagSimplex(
        dim=size,
        rows=tuple(
            tuple(_entry(flag, sigma[i], sigma[j]) for j in range(i, size + 1))
            for i in range(size + 1)
        ),
        m_maps=tuple(
            tuple(_m_path(cat, flag, sigma[i], sigma[j], sigma[j + 1]) for j in range(i, size))
            for i in range(size + 1)
        ),
        e_maps=tuple(
            tuple(
                _e_path(cat, flag, sigma[j], sigma[i + 1], sigma[i])
                for j in range(i + 1, size + 1)
            )
            for i in range(size)
        ),
    )


def _face_operator(dim: int, index: int) -> tuple[int, ...]:
    """Get the operator skipping one vertex.

    Args:
        dim: The dimension of the simplex.
        index: The vertex to skip.

    Returns:
        The images of the coface map.

    Raises:
        InvalidDiagram: if the index is out of range.
    """
    if not 0 <= index <= dim or dim == 0:
        raise InvalidDiagram(f"no face {index} of a {dim}-simplex")
    return tuple(t for t in range(dim + 1) if t != index)


def _degeneracy_operator(dim: int, index: int) -> tuple[int, ...]:
    """Get the operator repeating one vertex.

    Args:
        dim: The dimension of the simplex.
        index: The vertex to repeat.

    Returns:
        The images of the codegeneracy map.

    Raises:
        InvalidDiagram: if the index is out of range.
    """
    if not 0 <= index <= dim:
        raise InvalidDiagram(f"no degeneracy {index} of a {dim}-simplex")
    return (*range(index + 1), *range(index, dim + 1))


def flag_face(
    cat: core.CategoryInstance, flag: types_.FlagSimplex, index: int
) -> types_.FlagSimplex:
    """Forget one stage of a flag, d₀ passes to the quotient flag.

    Args:
        cat: The category instance.
        flag: The flag.
        index: The stage to forget.

    Returns:
        The face.
    """
    return reindex_flag(cat, flag, _face_operator(flag.dim, index))


def flag_degeneracy(
    cat: core.CategoryInstance, flag: types_.FlagSimplex, index: int
) -> types_.FlagSimplex:
    """Repeat one stage of a flag with identities.

    Args:
        cat: The category instance.
        flag: The flag.
        index: The stage to repeat.

    Returns:
        The degenerate flag.
    """
    return reindex_flag(cat, flag, _degeneracy_operator(flag.dim, index))


def flag_squares(flag: types_.FlagSimplex) -> tuple[types_.DistSquare, ...]:
    """List the unit squares of a flag.

    Args:
        flag: The flag.

    Returns:
        The squares (X[i+1][j], X[i+1][j+1], X[i][j], X[i][j+1]).
    """
    return tuple(
        types_.DistSquare(
            tl=_entry(flag, i + 1, j),
            tr=_entry(flag, i + 1, j + 1),
            bl=_entry(flag, i, j),
            br=_entry(flag, i, j + 1),
            top=flag.m_maps[i + 1][j - i - 1],
            left=flag.e_maps[i][j - i - 1],
            bottom=flag.m_maps[i][j - i],
            right=flag.e_maps[i][j - i],
        )
        for i in range(flag.dim)
        for j in range(i + 1, flag.dim)
    )


def is_valid_flag(cat: core.CategoryInstance, flag: types_.FlagSimplex) -> bool:
    """Check that the diagonal is O and every unit square is distinguished.

    Args:
        cat: The category instance.
        flag: The flag.

    Returns:
        Whether the flag is an S•-simplex.
    """
    return all(row[0] == cat.basepoint for row in flag.rows) and all(
        cat.is_distinguished(square) for square in flag_squares(flag)
    )


def flag_from_filtration(
    cat: core.CategoryInstance, mors: typing.Sequence[types_.Mor]
) -> types_.FlagSimplex:
    """Complete a filtration O ↣ X₁ ↣ … ↣ Xₙ with the canonical quotients.

    Args:
        cat: The category instance.
        mors: The M-morphisms of the filtration, starting at the basepoint.

    Returns:
        The flag with X[i][j] the canonical quotient of Xᵢ ↣ Xⱼ.

    Raises:
        NotComposable: if the filtration does not start at the basepoint.
    """
    if mors and mors[0].src != cat.basepoint:
        raise NotComposable(f"filtration does not start at the basepoint, {mors[0]!r}")
    size = len(mors)
    stages = (cat.basepoint, *(mor.dst for mor in mors))

    def path(start: int, stop: int) -> types_.Mor:
        """Compose the filtration between two stages.

        Args:
            start: The first stage.
            stop: The last stage.

        Returns:
            The composite.
        """
        if start == stop:
            return core.identity(cat, stages[start], M)
        return core.compose_all(cat, *mors[start:stop])

    rows = [stages]
    for i in range(1, size + 1):
        rows.append(
            (
                cat.basepoint,
                *(core.formal_quotient(cat, path(i, j)).c for j in range(i + 1, size + 1)),
            )
        )

    m_maps = [tuple(mors)]
    for i in range(1, size + 1):
        m_maps.append(
            tuple(
                cat.initial(rows[i][1], M)
                if j == i
                else core.quotient_filtration(cat, path(i, j), mors[j]).quotient.f
                for j in range(i, size)
            )
        )

    e_maps = []
    for i in range(size):
        row = []
        for j in range(i + 1, size + 1):
            if j == i + 1:
                row.append(cat.initial(rows[i][1], E))
            elif i == 0:
                row.append(core.formal_quotient(cat, path(1, j)).g)
            else:
                staircase = core.quotient_filtration(cat, path(i, i + 1), path(i + 1, j))
                row.append(staircase.quotient.g)
        e_maps.append(tuple(row))

    return types_.FlagSimplex(
        dim=size, rows=tuple(rows), m_maps=tuple(m_maps), e_maps=tuple(e_maps)
    )


def enumerate_s_simplices(
    cat: core.CategoryInstance, dim: int, budget: types_.CategoryBudget
) -> tuple[types_.FlagSimplex, ...]:
    """Enumerate the flags of a dimension over the enumerated objects.

    Args:
        cat: The category instance.
        dim: The dimension.
        budget: The budget.

    Returns:
        One flag per filtration, completed with canonical quotients.

    Raises:
        BudgetExhausted: if the dimension exceeds the cap.
    """
    cap = min(MAX_DIMENSION, budget.max_filtration_length)
    if dim > cap:
        raise BudgetExhausted(f"simplices are enumerated up to dimension {cap}, {dim=}")
    objects = cat.objects(budget.max_object_size)
    chains: list[tuple[types_.Mor, ...]] = [()]
    for _ in range(dim):
        chains = [
            (*chain, mor)
            for chain in chains
            for target in objects
            for mor in cat.m_morphisms(chain[-1].dst if chain else cat.basepoint, target)
        ]
    flags = tuple(flag_from_filtration(cat, chain) for chain in chains)
    logging.info("%s-simplices of S•%s: %s", dim, cat.name, len(flags))
    return flags


def flag_of_row(row: types_.FlagRow, quotients: types_.FlagSimplex) -> types_.FlagSimplex:
    """Stack a top row on its quotient flag.

    Args:
        row: The top row.
        quotients: The quotient flag.

    Returns:
        The flag one dimension up whose d₀ face is the quotient flag.
    """
    return types_.FlagSimplex(
        dim=quotients.dim + 1,
        rows=(row.objects, *quotients.rows),
        m_maps=(row.m_maps, *quotients.m_maps),
        e_maps=(row.e_maps, *quotients.e_maps),
    )


def split_flag(flag: types_.FlagSimplex) -> tuple[types_.FlagRow, types_.FlagSimplex]:
    """Split a flag into its top row and its quotient flag.

    Args:
        flag: The flag.

    Returns:
        The top row and the d₀ face.
    """
    return (
        types_.FlagRow(objects=flag.rows[0], m_maps=flag.m_maps[0], e_maps=flag.e_maps[0]),
        types_.FlagSimplex(
            dim=flag.dim - 1, rows=flag.rows[1:], m_maps=flag.m_maps[1:], e_maps=flag.e_maps[1:]
        ),
    )


def g_flags(simplex: types_.GSimplex) -> tuple[types_.FlagSimplex, types_.FlagSimplex]:
    """Get both flags of a G-simplex.

    Args:
        simplex: The G-simplex.

    Returns:
        The first and the second flag.
    """
    return flag_of_row(simplex.first, simplex.quotients), flag_of_row(
        simplex.second, simplex.quotients
    )


def g_from_flags(first: types_.FlagSimplex, second: types_.FlagSimplex) -> types_.GSimplex:
    """Pair two flags with the same quotient flag.

    Args:
        first: The first flag.
        second: The second flag.

    Returns:
        The G-simplex.

    Raises:
        QuotientMismatch: if the d₀ faces differ.
    """
    first_row, first_quotients = split_flag(first)
    second_row, second_quotients = split_flag(second)
    if first_quotients != second_quotients:
        raise QuotientMismatch(
            f"flags have different quotients, {first_quotients!r}, {second_quotients!r}"
        )
    return types_.GSimplex(
        dim=first_quotients.dim, quotients=first_quotients, first=first_row, second=second_row
    )


def reindex_g(
    cat: core.CategoryInstance, simplex: types_.GSimplex, sigma: typing.Sequence[int]
) -> types_.GSimplex:
    """Apply a simplicial operator to a G-simplex.

    Args:
        cat: The category instance.
        simplex: The G-simplex.
        sigma: The monotone map [m] → [n] as its images.

    Returns:
        The reindexed G-simplex, computed on both flags with the basepoint stage fixed.
    """
    shifted = (0, *(s + 1 for s in sigma))
    first, second = g_flags(simplex)
    return g_from_flags(
        reindex_flag(cat, first, shifted), reindex_flag(cat, second, shifted)
    )


def g_face(cat: core.CategoryInstance, simplex: types_.GSimplex, index: int) -> types_.GSimplex:
    """Get a face of a G-simplex.

    Args:
        cat: The category instance.
        simplex: The G-simplex.
        index: The stage to forget.

    Returns:
        The face.
    """
    return reindex_g(cat, simplex, _face_operator(simplex.dim, index))


def g_degeneracy(
    cat: core.CategoryInstance, simplex: types_.GSimplex, index: int
) -> types_.GSimplex:
    """Get a degeneracy of a G-simplex.

    Args:
        cat: The category instance.
        simplex: The G-simplex.
        index: The stage to repeat.

    Returns:
        The degenerate simplex.
    """
    return reindex_g(cat, simplex, _degeneracy_operator(simplex.dim, index))


def is_valid_g_simplex(cat: core.CategoryInstance, simplex: types_.GSimplex) -> bool:
    """Check both flags of a G-simplex.

    Args:
        cat: The category instance.
        simplex: The G-simplex.

    Returns:
        Whether both flags are S•-simplices.
    """
    return all(is_valid_flag(cat, flag) for flag in g_flags(simplex))


def vertex(
    cat: core.CategoryInstance, first: types_.ObjId, second: types_.ObjId
) -> types_.GSimplex:
    """Get the vertex (first, second) of the G-construction.

    Args:
        cat: The category instance.
        first: The first object.
        second: The second object.

    Returns:
        The 0-simplex.
    """
    quotients = flag_from_filtration(cat, ())
    return types_.GSimplex(
        dim=0,
        quotients=quotients,
        first=types_.FlagRow(
            objects=(cat.basepoint, first),
            m_maps=(cat.initial(first, M),),
            e_maps=(cat.initial(first, E),),
        ),
        second=types_.FlagRow(
            objects=(cat.basepoint, second),
            m_maps=(cat.initial(second, M),),
            e_maps=(cat.initial(second, E),),
        ),
    )


def _edge_row(cat: core.CategoryInstance, exact: types_.ExactSquare) -> types_.FlagRow:
    """Get the top row of an edge from an exact square.

    Args:
        cat: The category instance.
        exact: The exact square a ↣ b ⊸ c.

    Returns:
        The row O ↣ a ↣ b.
    """
    return types_.FlagRow(
        objects=(cat.basepoint, exact.a, exact.b),
        m_maps=(cat.initial(exact.a, M), exact.f),
        e_maps=(cat.initial(exact.a, E), exact.g),
    )


def edge_of_squares(
    cat: core.CategoryInstance, first: types_.ExactSquare, second: types_.ExactSquare
) -> types_.GSimplex:
    """Get the edge (a, a′) → (b, b′) of two exact squares with a common quotient.

    Args:
        cat: The category instance.
        first: The exact square a ↣ b ⊸ c.
        second: The exact square a′ ↣ b′ ⊸ c.

    Returns:
        The 1-simplex.

    Raises:
        QuotientMismatch: if the quotients differ.
    """
    if first.c != second.c:
        raise QuotientMismatch(f"edges need one quotient, {first.c!r}, {second.c!r}")
    return types_.GSimplex(
        dim=1,
        quotients=flag_from_filtration(cat, (cat.initial(first.c, M),)),
        first=_edge_row(cat, first),
        second=_edge_row(cat, second),
    )


def edge_squares(edge: types_.GSimplex) -> tuple[types_.ExactSquare, types_.ExactSquare]:
    """Get the two exact squares of an edge.

    Args:
        edge: The 1-simplex.

    Returns:
        The exact squares of the first and the second row.
    """
    quotient = edge.quotients.rows[0][1]
    return tuple(  # type: ignore[return-value]
        types_.ExactSquare(
            a=row.objects[1], b=row.objects[2], c=quotient, f=row.m_maps[1], g=row.e_maps[1]
        )
        for row in (edge.first, edge.second)
    )


def dexsq_edge(cat: core.CategoryInstance, dexsq: types_.DoubleExactSquare) -> types_.GSimplex:
    """Get the edge (a, a) → (b, b) of a double exact square.

    Args:
        cat: The category instance.
        dexsq: The double exact square.

    Returns:
        The 1-simplex.
    """
    return edge_of_squares(cat, dexsq.first, dexsq.second)


def edge_dexsq(edge: types_.GSimplex) -> types_.DoubleExactSquare | None:
    """Read an edge between diagonal vertices as a double exact square.

    Args:
        edge: The 1-simplex.

    Returns:
        The double exact square, None if the rows have different objects.
    """
    first, second = edge_squares(edge)
    if (first.a, first.b) != (second.a, second.b):
        return None
    return types_.DoubleExactSquare(first=first, second=second)


def dexsq_inverse(dexsq: types_.DoubleExactSquare) -> types_.DoubleExactSquare:
    """Swap the components of a double exact square.

    Args:
        dexsq: The double exact square.

    Returns:
        The inverse in K₁.
    """
    return types_.DoubleExactSquare(first=dexsq.second, second=dexsq.first)


def standard_edge(cat: core.CategoryInstance, obj: types_.ObjId) -> types_.GSimplex:
    """Get the standard edge e(A) from (O, O) to (A, A).

    Args:
        cat: The category instance.
        obj: The object A.

    Returns:
        The edge of the diagonal square O ↣ A ⊸ A.
    """
    exact = types_.ExactSquare(
        a=cat.basepoint,
        b=obj,
        c=obj,
        f=cat.initial(obj, M),
        g=core.identity(cat, obj, E),
    )
    return edge_of_squares(cat, exact, exact)


def edge_vertices(
    cat: core.CategoryInstance, edge: types_.GSimplex
) -> tuple[types_.GSimplex, types_.GSimplex]:
    """Get the endpoints of an edge.

    Args:
        cat: The category instance.
        edge: The 1-simplex.

    Returns:
        The source d₁ and the target d₀.
    """
    return g_face(cat, edge, 1), g_face(cat, edge, 0)


def validate_loop(cat: core.CategoryInstance, loop: types_.LoopWord) -> None:
    """Check that a word of edges is a closed path.

    Args:
        cat: The category instance.
        loop: The loop.

    Raises:
        InvalidDiagram: if an edge is not a valid 1-simplex.
        EdgeMismatch: if consecutive edges do not chain or the path is not closed.
    """
    ends = []
    for edge, orientation in loop.edges:
        if edge.dim != 1 or orientation not in (1, -1) or not is_valid_g_simplex(cat, edge):
            raise InvalidDiagram(f"not an oriented edge, {orientation=}, {edge=!r}")
        source, target = edge_vertices(cat, edge)
        ends.append((source, target) if orientation == 1 else (target, source))
    for position, ((_, end), (start, _)) in enumerate(zip(ends, ends[1:] + ends[:1])):
        if end != start:
            raise EdgeMismatch(f"edge {position} of the loop does not reach the next edge")


def canonical_loop(
    cat: core.CategoryInstance, dexsq: types_.DoubleExactSquare
) -> types_.LoopWord:
    """Get the loop e(A)·l·e(B)⁻¹ through (O, O).

    Args:
        cat: The category instance.
        dexsq: The double exact square l on a ↣ b.

    Returns:
        The validated loop.
    """
    loop = types_.LoopWord(
        edges=(
            (standard_edge(cat, dexsq.first.a), 1),
            (dexsq_edge(cat, dexsq), 1),
            (standard_edge(cat, dexsq.first.b), -1),
        )
    )
    validate_loop(cat, loop)
    return loop


def enumerate_exact_squares(
    cat: core.CategoryInstance, max_size: int
) -> tuple[types_.ExactSquare, ...]:
    """Enumerate the exact squares on class representatives.

    Args:
        cat: The category instance.
        max_size: The largest size.

    Returns:
        Every exact square whose nodes are representatives.
    """
    reps = cat.representatives(max_size)
    found = []
    for a, b, c in itertools.product(reps, repeat=3):
        for f in cat.m_morphisms(a, b):
            for g in cat.e_morphisms(c, b):
                exact = types_.ExactSquare(a=a, b=b, c=c, f=f, g=g)
                if core.is_exact(cat, exact):
                    found.append(exact)
    return tuple(found)


def edge_diagram(edge: types_.GSimplex) -> types_.Diagram:
    """Draw an edge as a diagram on (a, b, c, a′, b′).

    Args:
        edge: The 1-simplex.

    Returns:
        The diagram with arrows f, g, f′, g′.
    """
    first, second = edge_squares(edge)
    return types_.Diagram(
        nodes=(first.a, first.b, first.c, second.a, second.b),
        arrows=(
            (0, 1, first.f.table),
            (2, 1, first.g.table),
            (3, 4, second.f.table),
            (2, 4, second.g.table),
        ),
    )


def dexsq_diagram(dexsq: types_.DoubleExactSquare) -> types_.Diagram:
    """Draw a double exact square as a diagram on (a, b, c).

    Args:
        dexsq: The double exact square.

    Returns:
        The diagram with arrows f, g, f′, g′.
    """
    first, second = dexsq
    return types_.Diagram(
        nodes=(first.a, first.b, first.c),
        arrows=(
            (0, 1, first.f.table),
            (2, 1, first.g.table),
            (0, 1, second.f.table),
            (2, 1, second.g.table),
        ),
    )


def enumerate_g_edges(
    cat: core.CategoryInstance, budget: types_.CategoryBudget
) -> tuple[types_.GSimplex, ...]:
    """Enumerate the edges of the G-construction over representatives.

    Args:
        cat: The category instance.
        budget: The budget.

    Returns:
        One edge per canonical form, or every edge if the instance has no canonical forms.
    """
    by_quotient = collections.defaultdict(list)
    for exact in enumerate_exact_squares(cat, budget.max_object_size):
        by_quotient[exact.c].append(exact)
    edges: dict[typing.Any, types_.GSimplex] = {}
    for squares in by_quotient.values():
        for first, second in itertools.product(squares, repeat=2):
            edge = edge_of_squares(cat, first, second)
            key = cat.canonical_form(edge_diagram(edge)) if cat.is_pcgw else edge
            edges.setdefault(key, edge)
    logging.info("edges of G%s: %s", cat.name, len(edges))
    return tuple(edges.values())


def enumerate_double_exact_squares(
    cat: core.CategoryInstance, max_size: int
) -> tuple[types_.DoubleExactSquare, ...]:
    """Enumerate double exact squares on representatives up to isomorphism.

    Args:
        cat: The category instance.
        max_size: The largest size.

    Returns:
        One double exact square per canonical form.

    Raises:
        NotPCGW: if the instance has no canonical forms.
    """
    by_nodes = collections.defaultdict(list)
    for exact in enumerate_exact_squares(cat, max_size):
        by_nodes[exact.a, exact.b, exact.c].append(exact)
    found: dict[types_.Diagram, types_.DoubleExactSquare] = {}
    for squares in by_nodes.values():
        for first, second in itertools.product(squares, repeat=2):
            dexsq = types_.DoubleExactSquare(first=first, second=second)
            found.setdefault(cat.canonical_form(dexsq_diagram(dexsq)), dexsq)
    logging.info("double exact squares of %s: %s", cat.name, len(found))
    return tuple(found.values())


def enumerate_g_two_simplices(
    cat: core.CategoryInstance, budget: types_.CategoryBudget
) -> tuple[types_.GSimplex, ...]:
    """Enumerate the 2-simplices between diagonal vertices.

    The first flag runs over standard filtrations, the second over every filtration of the
    same objects completing the shared quotient flag.

    Args:
        cat: The category instance.
        budget: The budget.

    Returns:
        The 2-simplices, whose faces are double exact squares.
    """
    simplices = []
    for f1, g1 in cat.filtration_representatives(budget.max_object_size):
        row, quotients = split_flag(
            flag_from_filtration(cat, (cat.initial(f1.src, M), f1, g1))
        )
        q1, q2 = quotients.rows[0][1], quotients.rows[0][2]
        between = quotients.m_maps[0][1]
        p0, p1, p2 = f1.src, f1.dst, g1.dst
        for f, e1 in itertools.product(cat.m_morphisms(p0, p1), cat.e_morphisms(q1, p1)):
            if not core.is_exact(cat, types_.ExactSquare(a=p0, b=p1, c=q1, f=f, g=e1)):
                continue
            for g, e2 in itertools.product(cat.m_morphisms(p1, p2), cat.e_morphisms(q2, p2)):
                square = types_.DistSquare(
                    tl=q1, tr=q2, bl=p1, br=p2, top=between, left=e1, bottom=g, right=e2
                )
                if cat.is_distinguished(square):
                    second = types_.FlagRow(
                        objects=row.objects,
                        m_maps=(row.m_maps[0], f, g),
                        e_maps=(row.e_maps[0], e1, e2),
                    )
                    simplices.append(
                        types_.GSimplex(dim=2, quotients=quotients, first=row, second=second)
                    )
    logging.info("2-simplices of G%s: %s", cat.name, len(simplices))
    return tuple(simplices)


def _flag_sum(
    cat: core.CategoryInstance, first: types_.FlagSimplex, second: types_.FlagSimplex
) -> types_.FlagSimplex:
    """Sum two flags entry by entry.

    Args:
        cat: The category instance.
        first: The first flag.
        second: The second flag.

    Returns:
        The summed flag.
    """
    return types_.FlagSimplex(
        dim=first.dim,
        rows=tuple(
            tuple(core.direct_sum(cat, x, y).obj for x, y in zip(*rows))
            for rows in zip(first.rows, second.rows)
        ),
        m_maps=tuple(
            tuple(core.morphism_sum(cat, f, g) for f, g in zip(*maps))
            for maps in zip(first.m_maps, second.m_maps)
        ),
        e_maps=tuple(
            tuple(core.morphism_sum(cat, f, g) for f, g in zip(*maps))
            for maps in zip(first.e_maps, second.e_maps)
        ),
    )


def _row_sum(
    cat: core.CategoryInstance, first: types_.FlagRow, second: types_.FlagRow
) -> types_.FlagRow:
    """Sum two top rows entry by entry.

    Args:
        cat: The category instance.
        first: The first row.
        second: The second row.

    Returns:
        The summed row.
    """
    return types_.FlagRow(
        objects=tuple(
            core.direct_sum(cat, x, y).obj for x, y in zip(first.objects, second.objects)
        ),
        m_maps=tuple(core.morphism_sum(cat, f, g) for f, g in zip(first.m_maps, second.m_maps)),
        e_maps=tuple(core.morphism_sum(cat, f, g) for f, g in zip(first.e_maps, second.e_maps)),
    )


def g_sum(
    cat: core.CategoryInstance, first: types_.GSimplex, second: types_.GSimplex
) -> types_.GSimplex:
    """Add two G-simplices of one dimension, quotients J⊕J′.

    Args:
        cat: The category instance.
        first: The first simplex.
        second: The second simplex.

    Returns:
        The componentwise direct sum.

    Raises:
        InvalidDiagram: if the dimensions differ.
    """
    core.require_pcgw(cat)
    if first.dim != second.dim:
        raise InvalidDiagram(f"cannot add simplices of dimensions {first.dim}, {second.dim}")
    return types_.GSimplex(
        dim=first.dim,
        quotients=_flag_sum(cat, first.quotients, second.quotients),
        first=_row_sum(cat, first.first, second.first),
        second=_row_sum(cat, first.second, second.second),
    )


def h_add_edges(
    cat: core.CategoryInstance, first: types_.GSimplex, second: types_.GSimplex
) -> types_.GSimplex:
    """Add two edges with the H-space structure.

    Args:
        cat: The category instance.
        first: The first edge.
        second: The second edge.

    Returns:
        The edge of componentwise sums.

    Raises:
        InvalidDiagram: unless both are edges.
    """
    if first.dim != 1 or second.dim != 1:
        raise InvalidDiagram("only edges are added")
    return g_sum(cat, first, second)


def swap_iso(
    cat: core.CategoryInstance, x: types_.ObjId, y: types_.ObjId, kind: types_.Kind
) -> types_.Mor:
    """Get the symmetry x⊕y → y⊕x.

    Args:
        cat: The category instance.
        x: The first summand.
        y: The second summand.
        kind: The kind of morphism.

    Returns:
        The isomorphism exchanging the summands.
    """
    xy, yx = core.direct_sum(cat, x, y), core.direct_sum(cat, y, x)
    table = {}
    for leg, image in ((xy.p_x, yx.p_y), (xy.p_y, yx.p_x)):
        target = image.as_dict()
        table.update({z: target[w] for w, z in leg.table})
    iso = types_.Mor(kind=M, src=xy.obj, dst=yx.obj, table=core.table_of(table))
    return iso if kind == M else core.phi(cat, iso)


def homotopy_simplex(
    cat: core.CategoryInstance, first: types_.GSimplex, second: types_.GSimplex, cut: int
) -> types_.GSimplex:
    """Evaluate the permutation homotopy on a pair of simplices.

    The second row of the sum is swapped to P′₂⊕P′₁ up to the cut stage, crossing back with
    τ∘(α′₂⊕α′₁) and twisting the E-morphisms by the swap of the quotients.

    Args:
        cat: The category instance.
        first: The first simplex.
        second: The second simplex.
        cut: The last swapped stage, -1 for none.

    Returns:
        The simplex of the sum with the second row swapped up to the cut.
    """
    base = g_sum(cat, first, second)
    swapped = _row_sum(cat, second.second, first.second)
    first_quotients, second_quotients = first.quotients.rows[0], second.quotients.rows[0]
    objects = tuple(
        swapped.objects[index] if index <= cut + 1 else base.second.objects[index]
        for index in range(len(base.second.objects))
    )
    m_maps = []
    for index in range(first.dim + 1):
        if index <= cut:
            m_maps.append(swapped.m_maps[index])
        elif index == cut + 1:
            crossing = swap_iso(
                cat, second.second.objects[index + 1], first.second.objects[index + 1], M
            )
            m_maps.append(core.compose(cat, swapped.m_maps[index], crossing))
        else:
            m_maps.append(base.second.m_maps[index])
    e_maps = tuple(
        core.compose(
            cat,
            swap_iso(cat, first_quotients[index], second_quotients[index], E),
            swapped.e_maps[index],
        )
        if index <= cut
        else base.second.e_maps[index]
        for index in range(first.dim + 1)
    )
    return base._replace(
        second=types_.FlagRow(objects=objects, m_maps=tuple(m_maps), e_maps=e_maps)
    )


def _monotone_maps(dim: int) -> tuple[tuple[int, ...], ...]:
    """Enumerate the monotone maps [dim] → [1].

    Args:
        dim: The dimension of the source.

    Returns:
        The maps as their images.
    """
    return tuple((0,) * (dim + 1 - ones) + (1,) * ones for ones in range(dim + 2))


def permutation_homotopy(
    cat: core.CategoryInstance, first: types_.GSimplex, second: types_.GSimplex
) -> tuple[types_.HomotopyValue, ...]:
    """Evaluate and check the homotopy from X₁+X₂ to the sum with its second row swapped.

    Every value is computed on every simplex generated by the pair of edges up to dimension
    two and every homotopy coordinate.

    Args:
        cat: The category instance.
        first: The edge X₁.
        second: The edge X₂.

    Returns:
        The values of the homotopy.

    Raises:
        QuotientMismatch: if the edges have different quotients.
        InvalidDiagram: if a value is not a G-simplex or the homotopy is not simplicial.
    """
    core.require_pcgw(cat)
    if first.dim != 1 or second.dim != 1:
        raise InvalidDiagram("the permutation homotopy is evaluated on edges")
    if first.quotients.rows[0][-1] != second.quotients.rows[0][-1]:
        raise QuotientMismatch(
            f"edges have different quotients, {first.quotients.rows[0][-1]!r}, "
            f"{second.quotients.rows[0][-1]!r}"
        )
    values: dict[tuple[tuple[int, ...], int], types_.GSimplex] = {}
    for dim in range(HOMOTOPY_DIMENSION + 1):
        for operator in _monotone_maps(dim):
            pair = reindex_g(cat, first, operator), reindex_g(cat, second, operator)
            for cut in range(-1, dim + 1):
                simplex = homotopy_simplex(cat, *pair, cut)
                if not is_valid_g_simplex(cat, simplex):
                    raise InvalidDiagram(f"homotopy value is not a simplex, {operator=}, {cut=}")
                values[operator, cut] = simplex

    for (operator, cut), simplex in values.items():
        dim = len(operator) - 1
        for index in range(dim + 1):
            if dim > 0:
                face = values[operator[:index] + operator[index + 1 :], cut - (index <= cut)]
                if g_face(cat, simplex, index) != face:
                    raise InvalidDiagram(f"homotopy does not commute with d{index}, {operator=}")
            if dim < HOMOTOPY_DIMENSION:
                degenerate = values[operator[: index + 1] + operator[index:], cut + (index <= cut)]
                if g_degeneracy(cat, simplex, index) != degenerate:
                    raise InvalidDiagram(f"homotopy does not commute with s{index}, {operator=}")
    logging.info("permutation homotopy checked on %s values", len(values))
    return tuple(
        types_.HomotopyValue(operator=operator, cut=cut, simplex=simplex)
        for (operator, cut), simplex in values.items()
    )


def _pushout_row(
    cat: core.CategoryInstance,
    lower: types_.ExactSquare,
    other: types_.ExactSquare,
    pushout: types_.RestrictedPushout,
    lower_leg: types_.Mor,
    other_leg: types_.Mor,
    total: types_.DirectSum,
) -> types_.FlagRow:
    """Build the row O ↣ a ↣ b ↣ b⋆ₐd of a pushout 2-simplex.

    Args:
        cat: The category instance.
        lower: The exact square a ↣ b ⊸ c.
        other: The exact square a ↣ d ⊸ e.
        pushout: The restricted pushout of b and d.
        lower_leg: The pushout leg from b.
        other_leg: The pushout leg from d.
        total: The sum c⊕e.

    Returns:
        The row with the E-morphism c⊕e ⊸ b⋆ₐd assembled from both quotients.
    """
    table = {}
    for sum_leg, quotient, leg in (
        (total.p_x, lower.g, lower_leg),
        (total.p_y, other.g, other_leg),
    ):
        quotient_map, leg_map = quotient.as_dict(), leg.as_dict()
        table.update({z: leg_map[quotient_map[w]] for w, z in sum_leg.table})
    assembled = types_.Mor(kind=E, src=total.obj, dst=pushout.obj, table=core.table_of(table))
    return types_.FlagRow(
        objects=(cat.basepoint, lower.a, lower.b, pushout.obj),
        m_maps=(cat.initial(lower.a, M), lower.f, lower_leg),
        e_maps=(cat.initial(lower.a, E), lower.g, assembled),
    )


def pushout_two_simplices(
    cat: core.CategoryInstance, first: types_.GSimplex, second: types_.GSimplex
) -> tuple[types_.GSimplex, types_.GSimplex]:
    """Build the two 2-simplices through the pushout vertex of a span of edges.

    Args:
        cat: The category instance.
        first: The edge (a, a′) → (b, b′) with quotient c.
        second: The edge (a, a′) → (d, d′) with quotient e.

    Returns:
        The 2-simplex through (b, b′) and the one through (d, d′), with d₂ faces the given edges
        and d₁ faces ending at the pushout vertex.

    Raises:
        EdgeMismatch: if the edges do not share their source.
        InvalidDiagram: if a constructed simplex is not valid.
    """
    core.require_pcgw(cat)
    if cat.e_contravariant:
        raise NotPCGW(f"{cat.name} has contravariant E-morphisms")
    (b_first, b_second), (d_first, d_second) = edge_squares(first), edge_squares(second)
    if (b_first.a, b_second.a) != (d_first.a, d_second.a):
        raise EdgeMismatch("edges of the span do not share their source")
    pushouts = (
        core.restricted_pushout(cat, d_first.f, b_first.f),
        core.restricted_pushout(cat, d_second.f, b_second.f),
    )
    simplices = []
    for through_b in (True, False):
        lowers = (b_first, b_second) if through_b else (d_first, d_second)
        others = (d_first, d_second) if through_b else (b_first, b_second)
        total = core.direct_sum(cat, lowers[0].c, others[0].c)
        quotients = flag_from_filtration(cat, (cat.initial(lowers[0].c, M), total.p_x))
        built = [
            _pushout_row(
                cat,
                lower,
                other,
                pushout,
                pushout.in_b if through_b else pushout.in_c,
                pushout.in_c if through_b else pushout.in_b,
                total,
            )
            for lower, other, pushout in zip(lowers, others, pushouts)
        ]
        simplex = types_.GSimplex(dim=2, quotients=quotients, first=built[0], second=built[1])
        if not is_valid_g_simplex(cat, simplex):
            raise InvalidDiagram(f"pushout 2-simplex is not valid, {simplex=!r}")
        simplices.append(simplex)
    through_b, through_d = simplices
    if g_face(cat, through_b, 2) != first or g_face(cat, through_d, 2) != second:
        raise InvalidDiagram("pushout 2-simplices do not extend the span")
    if edge_vertices(cat, g_face(cat, through_b, 1))[1] != edge_vertices(
        cat, g_face(cat, through_d, 1)
    )[1]:
        raise EdgeMismatch("pushout 2-simplices end at different vertices")
    return through_b, through_d
