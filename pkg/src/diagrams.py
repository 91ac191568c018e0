# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Double exact squares built from automorphisms, Sherman triples, admissible triples and
optimal 3×3 diagrams."""

import logging
import typing

from . import core, simplicial, types_
from .exceptions import (
    InstanceContractViolation,
    InvalidDiagram,
    InvalidTheta,
    NotAdmissible,
    NotComposable,
)

M = types_.Kind.M
E = types_.Kind.E


def _require_automorphism(cat: core.CategoryInstance, alpha: types_.Mor) -> None:
    """Check that a morphism is an M-automorphism.

    Args:
        cat: The category instance.
        alpha: The morphism.

    Raises:
        InvalidDiagram: if it is not an automorphism.
    """
    if alpha.kind != M or alpha.src != alpha.dst or not core.is_iso(cat, alpha):
        raise InvalidDiagram(f"not an automorphism, {alpha=!r}")


def diagonal(exact: types_.ExactSquare) -> types_.DoubleExactSquare:
    """Pair an exact square with itself.

    Args:
        exact: The exact square.

    Returns:
        The diagonal double exact square.
    """
    return types_.DoubleExactSquare(first=exact, second=exact)


def automorphism_square(cat: core.CategoryInstance, alpha: types_.Mor) -> types_.DoubleExactSquare:
    """Get l(α), the identity and α on A ↣ A with quotient O.

    Args:
        cat: The category instance.
        alpha: The automorphism.

    Returns:
        The double exact square.
    """
    _require_automorphism(cat, alpha)
    obj = alpha.src
    base = types_.ExactSquare(
        a=obj,
        b=obj,
        c=cat.basepoint,
        f=core.identity(cat, obj, M),
        g=cat.initial(obj, E),
    )
    return types_.DoubleExactSquare(first=base, second=base._replace(f=alpha))


def automorphism_square_tilde(
    cat: core.CategoryInstance, alpha: types_.Mor
) -> types_.DoubleExactSquare:
    """Get l̃(α), the identity and φ(α) on the quotient of O ↣ A.

    Args:
        cat: The category instance.
        alpha: The automorphism.

    Returns:
        The double exact square.
    """
    _require_automorphism(cat, alpha)
    obj = alpha.src
    base = types_.ExactSquare(
        a=cat.basepoint,
        b=obj,
        c=obj,
        f=cat.initial(obj, M),
        g=core.identity(cat, obj, E),
    )
    return types_.DoubleExactSquare(first=base, second=base._replace(g=core.phi(cat, alpha)))


def automorphism_pair(
    cat: core.CategoryInstance, alpha: types_.Mor, beta: types_.Mor
) -> types_.DoubleExactSquare:
    """Get l(α, β), the automorphisms α and β of one object with quotient O.

    Args:
        cat: The category instance.
        alpha: The first automorphism.
        beta: The second automorphism.

    Returns:
        The double exact square.

    Raises:
        InvalidDiagram: if the automorphisms act on different objects.
    """
    _require_automorphism(cat, alpha)
    _require_automorphism(cat, beta)
    if alpha.src != beta.src:
        raise InvalidDiagram(f"automorphisms of different objects, {alpha=!r}, {beta=!r}")
    base = automorphism_square(cat, alpha).second
    return types_.DoubleExactSquare(first=base, second=base._replace(f=beta))


def compose_dexsq(
    cat: core.CategoryInstance,
    first: types_.DoubleExactSquare,
    second: types_.DoubleExactSquare,
) -> types_.DoubleExactSquare:
    """Compose double exact squares a ↣ b and b ↣ d.

    Both components take the canonical quotient of their composite, the second one moved onto
    the quotient object of the first by the standard isomorphism.

    Args:
        cat: The category instance.
        first: The double exact square on a ↣ b.
        second: The double exact square on b ↣ d.

    Returns:
        The double exact square on a ↣ d.

    Raises:
        NotComposable: if the squares do not meet at b.
    """
    core.require_pcgw(cat)
    if first.first.b != second.first.a:
        raise NotComposable(f"squares do not meet, {first.first.b!r}, {second.first.a!r}")
    one = core.formal_quotient(cat, core.compose(cat, first.first.f, second.first.f))
    two = core.formal_quotient(cat, core.compose(cat, first.second.f, second.second.f))
    iso = cat.standard_iso(one.c, two.c)
    return types_.DoubleExactSquare(
        first=one, second=two._replace(c=one.c, g=core.compose(cat, core.phi(cat, iso), two.g))
    )


class _Summands(typing.NamedTuple):
    """A sum of three objects with the legs of its summands.

    Attrs:
        obj: The sum (x⊕y)⊕z.
        legs: The M-morphisms from x, y and z.
    """

    obj: types_.ObjId
    legs: tuple[types_.Mor, types_.Mor, types_.Mor]


def _triple_sum(
    cat: core.CategoryInstance, x: types_.ObjId, y: types_.ObjId, z: types_.ObjId
) -> _Summands:
    """Sum three objects.

    Args:
        cat: The category instance.
        x: The first summand.
        y: The second summand.
        z: The third summand.

    Returns:
        The sum with its legs.
    """
    inner = cat.direct_sum(x, y)
    outer = cat.direct_sum(inner.obj, z)
    return _Summands(
        obj=outer.obj,
        legs=(
            core.compose(cat, inner.p_x, outer.p_x),
            core.compose(cat, inner.p_y, outer.p_x),
            outer.p_y,
        ),
    )


def _assemble(
    kind: types_.Kind,
    src: types_.ObjId,
    dst: types_.ObjId,
    legs: typing.Iterable[types_.Mor],
    parts: typing.Iterable[types_.Mor],
) -> types_.Mor:
    """Assemble a morphism out of a sum from one morphism per summand.

    Args:
        kind: The kind of the result.
        src: The sum.
        dst: The codomain.
        legs: The legs of the summands into the sum.
        parts: One morphism per summand into the codomain.

    Returns:
        The morphism agreeing with each part on its summand.
    """
    table = {}
    for leg, part in zip(legs, parts):
        image = part.as_dict()
        table.update({z: image[w] for w, z in leg.table})
    return types_.Mor(kind=kind, src=src, dst=dst, table=core.table_of(table))


def _as_kind(mor: types_.Mor, kind: types_.Kind) -> types_.Mor:
    """Read a covariant table as a morphism of another kind.

    Args:
        mor: The morphism.
        kind: The kind.

    Returns:
        The same map of the given kind.
    """
    return mor._replace(kind=kind)


def validate_sherman_triple(cat: core.CategoryInstance, triple: types_.ShermanTriple) -> None:
    """Check a Sherman triple.

    Args:
        cat: The category instance.
        triple: The triple.

    Raises:
        InvalidDiagram: if a square is not exact.
        InvalidTheta: if θ is not an isomorphism (A⊕C)⊕B′ → (A′⊕C′)⊕B.
    """
    core.require_pcgw(cat)
    for exact in (triple.alpha, triple.beta):
        if not core.is_exact(cat, exact):
            raise InvalidDiagram(f"square of a Sherman triple is not exact, {exact=!r}")
    alpha, beta = triple.alpha, triple.beta
    src = _triple_sum(cat, alpha.a, alpha.c, beta.b).obj
    dst = _triple_sum(cat, beta.a, beta.c, alpha.b).obj
    theta = triple.theta
    if theta.kind != M or theta.src != src or theta.dst != dst or not core.is_iso(cat, theta):
        raise InvalidTheta(f"θ is not an isomorphism {src!r} → {dst!r}, {theta=!r}")


def automorphism_sherman_triple(
    cat: core.CategoryInstance, alpha: types_.Mor
) -> types_.ShermanTriple:
    """Realize the automorphism loop of α as the Sherman triple (α, 0, τ).

    Args:
        cat: The category instance.
        alpha: The automorphism of A.

    Returns:
        The triple with β: O ↣ A and θ the swap of A⊕A.
    """
    core.require_pcgw(cat)
    _require_automorphism(cat, alpha)
    obj, basepoint = alpha.src, cat.basepoint
    source = _triple_sum(cat, obj, basepoint, obj)
    target = _triple_sum(cat, basepoint, obj, obj)
    theta = _assemble(
        M,
        source.obj,
        target.obj,
        source.legs,
        (target.legs[2], cat.initial(target.obj, M), target.legs[1]),
    )
    return types_.ShermanTriple(
        alpha=types_.ExactSquare(
            a=obj, b=obj, c=basepoint, f=alpha, g=cat.initial(obj, E)
        ),
        beta=types_.ExactSquare(
            a=basepoint,
            b=obj,
            c=obj,
            f=cat.initial(obj, M),
            g=core.identity(cat, obj, E),
        ),
        theta=theta,
    )


def _sherman_leg(
    cat: core.CategoryInstance,
    exact: types_.ExactSquare,
    other: types_.ExactSquare,
    vertex: _Summands,
) -> types_.GSimplex:
    """Build the edge (a, a) → (a⊕c⊕b″, b⊕b″) of a Sherman loop.

    Args:
        cat: The category instance.
        exact: The exact square a ↣ b ⊸ c.
        other: The exact square whose whole object b″ is added.
        vertex: The sum a⊕c⊕b″.

    Returns:
        The edge with quotient c⊕b″ in both components.
    """
    quotient = cat.direct_sum(exact.c, other.b)
    whole = cat.direct_sum(exact.b, other.b)
    top = types_.ExactSquare(
        a=exact.a,
        b=vertex.obj,
        c=quotient.obj,
        f=vertex.legs[0],
        g=_assemble(
            E,
            quotient.obj,
            vertex.obj,
            (quotient.p_x, quotient.p_y),
            (_as_kind(vertex.legs[1], E), _as_kind(vertex.legs[2], E)),
        ),
    )
    bottom = types_.ExactSquare(
        a=exact.a,
        b=whole.obj,
        c=quotient.obj,
        f=core.compose(cat, exact.f, whole.p_x),
        g=core.morphism_sum(cat, exact.g, core.identity(cat, other.b, E)),
    )
    return simplicial.edge_of_squares(cat, top, bottom)


def sherman_loop(cat: core.CategoryInstance, triple: types_.ShermanTriple) -> types_.LoopWord:
    """Build the five edge loop of a Sherman triple.

    The loop runs (O, O) → (A, A) → (P, B⊕B′) → (Q, B′⊕B) ← (A′, A′) ← (O, O) with
    P = A⊕C⊕B′ and Q = A′⊕C′⊕B; the middle edge applies θ on top and the swap below.

    Args:
        cat: The category instance.
        triple: The Sherman triple.

    Returns:
        The validated loop.
    """
    validate_sherman_triple(cat, triple)
    alpha, beta = triple.alpha, triple.beta
    source = _triple_sum(cat, alpha.a, alpha.c, beta.b)
    target = _triple_sum(cat, beta.a, beta.c, alpha.b)
    swapped = simplicial.swap_iso(cat, alpha.b, beta.b, M)
    middle = simplicial.edge_of_squares(
        cat,
        types_.ExactSquare(
            a=source.obj,
            b=target.obj,
            c=cat.basepoint,
            f=triple.theta,
            g=cat.initial(target.obj, E),
        ),
        types_.ExactSquare(
            a=swapped.src,
            b=swapped.dst,
            c=cat.basepoint,
            f=swapped,
            g=cat.initial(swapped.dst, E),
        ),
    )
    loop = types_.LoopWord(
        edges=(
            (simplicial.standard_edge(cat, alpha.a), 1),
            (_sherman_leg(cat, alpha, beta, source), 1),
            (middle, 1),
            (_sherman_leg(cat, beta, alpha, target), -1),
            (simplicial.standard_edge(cat, beta.a), -1),
        )
    )
    simplicial.validate_loop(cat, loop)
    return loop


def sherman_to_dexsq(
    cat: core.CategoryInstance, triple: types_.ShermanTriple
) -> types_.DoubleExactSquare:
    """Turn a Sherman triple into a double exact square on (A⊕A′, Q, C⊕C′).

    The components are (θ∘f₀, φ(θ)∘g₀) and (f₁, g₁), where f₀ and g₀ include A, C and send
    A′, C′ into B′ by β and its quotient, and f₁ and g₁ include A′, C′ and send A, C into B.

    Args:
        cat: The category instance.
        triple: The Sherman triple.

    Returns:
        The double exact square.

    Raises:
        InvalidDiagram: if a component is not exact.
    """
    validate_sherman_triple(cat, triple)
    alpha, beta = triple.alpha, triple.beta
    source = _triple_sum(cat, alpha.a, alpha.c, beta.b)
    target = _triple_sum(cat, beta.a, beta.c, alpha.b)
    subs = cat.direct_sum(alpha.a, beta.a)
    quotients = cat.direct_sum(alpha.c, beta.c)
    sub_legs, quotient_legs = (subs.p_x, subs.p_y), (quotients.p_x, quotients.p_y)

    f0 = _assemble(
        M,
        subs.obj,
        source.obj,
        sub_legs,
        (source.legs[0], core.compose(cat, beta.f, source.legs[2])),
    )
    g0 = _assemble(
        E,
        quotients.obj,
        source.obj,
        quotient_legs,
        (_as_kind(source.legs[1], E), core.compose(cat, beta.g, _as_kind(source.legs[2], E))),
    )
    f1 = _assemble(
        M,
        subs.obj,
        target.obj,
        sub_legs,
        (core.compose(cat, alpha.f, target.legs[2]), target.legs[0]),
    )
    g1 = _assemble(
        E,
        quotients.obj,
        target.obj,
        quotient_legs,
        (core.compose(cat, alpha.g, _as_kind(target.legs[2], E)), _as_kind(target.legs[1], E)),
    )
    dexsq = types_.DoubleExactSquare(
        first=types_.ExactSquare(
            a=subs.obj,
            b=target.obj,
            c=quotients.obj,
            f=core.compose(cat, f0, triple.theta),
            g=core.compose(cat, g0, core.phi(cat, triple.theta)),
        ),
        second=types_.ExactSquare(a=subs.obj, b=target.obj, c=quotients.obj, f=f1, g=g1),
    )
    for component in dexsq:
        if not core.is_exact(cat, component):
            raise InvalidDiagram(f"Sherman square is not exact, {component=!r}")
    return dexsq


def _three_flag(
    cat: core.CategoryInstance,
    objects: tuple[tuple[types_.ObjId, ...], ...],
    m_maps: tuple[tuple[types_.Mor, ...], ...],
    e_maps: tuple[tuple[types_.Mor, ...], ...],
) -> types_.FlagSimplex:
    """Pad a 3-dimensional staircase with the basepoint and its initial morphisms.

    Args:
        cat: The category instance.
        objects: The objects of each row after the basepoint.
        m_maps: The M-morphisms of each row after the initial one.
        e_maps: The E-morphisms of each row after the initial one.

    Returns:
        The flag.
    """
    basepoint = cat.basepoint
    return types_.FlagSimplex(
        dim=3,
        rows=tuple((basepoint, *row) for row in objects) + ((basepoint,),),
        m_maps=tuple(
            (cat.initial(row[0], M), *maps) for row, maps in zip(objects, m_maps)
        )
        + ((),),
        e_maps=tuple((cat.initial(row[0], E), *maps) for row, maps in zip(objects, e_maps)),
    )


def admissible_triple(
    cat: core.CategoryInstance,
    e0: types_.GSimplex,
    e1: types_.GSimplex,
    e2: types_.GSimplex,
) -> types_.AdmissibleCompletion:
    """Complete a triangle of edges whose M-morphisms compose on the nose.

    Args:
        cat: The category instance.
        e0: The edge (P₀, P′₀) → (P₁, P′₁).
        e1: The edge (P₁, P′₁) → (P₂, P′₂).
        e2: The edge (P₀, P′₀) → (P₂, P′₂).

    Returns:
        The double exact square on the quotients (P₁/₀, P₂/₀, P₂/₁) and both staircases.

    Raises:
        NotAdmissible: if the edges do not form a triangle or the compositions disagree.
        InvalidDiagram: if a completed staircase is not a flag.
    """
    components = tuple(zip(*(simplicial.edge_squares(edge) for edge in (e0, e1, e2))))
    for lower, upper, composite in components:
        if lower.b != upper.a or (lower.a, upper.b) != (composite.a, composite.b):
            raise NotAdmissible(f"edges do not form a triangle, {lower=!r}, {upper=!r}")
        if core.compose(cat, lower.f, upper.f) != composite.f:
            raise NotAdmissible(f"composition differs from the third edge, {composite.f=!r}")

    squares = []
    flags = []
    for lower, upper, composite in components:
        staircase = core.quotient_filtration(cat, lower.f, upper.f)
        gamma_lower = core.comparison_iso(cat, lower, staircase.lower)
        gamma_upper = core.comparison_iso(cat, upper, staircase.upper)
        gamma_back = core.inverse(core.comparison_iso(cat, composite, staircase.composite))
        top = core.compose_all(cat, gamma_lower, staircase.quotient.f, gamma_back)
        right = core.compose_all(
            cat,
            core.phi(cat, gamma_upper),
            staircase.quotient.g,
            core.phi(cat, gamma_back),
        )
        squares.append(types_.ExactSquare(a=lower.c, b=composite.c, c=upper.c, f=top, g=right))
        flag = _three_flag(
            cat,
            ((lower.a, lower.b, upper.b), (lower.c, composite.c), (upper.c,)),
            ((lower.f, upper.f), (top,), ()),
            ((lower.g, composite.g), (right,), ()),
        )
        if not simplicial.is_valid_flag(cat, flag):
            raise InvalidDiagram(f"admissible triple does not complete, {flag=!r}")
        flags.append(flag)
    return types_.AdmissibleCompletion(
        obstruction=types_.DoubleExactSquare(first=squares[0], second=squares[1]),
        flags=(flags[0], flags[1]),
    )


def key_example_triple(
    cat: core.CategoryInstance, a: types_.ObjId, b: types_.ObjId, alpha: types_.Mor
) -> tuple[types_.GSimplex, types_.GSimplex, types_.GSimplex]:
    """Build the triangle of coproduct inclusions followed by 1⊕1 and 1⊕α.

    Its obstruction is l(α) although both sides compose to the same inclusion.

    Args:
        cat: The category instance.
        a: The object A.
        b: The object B.
        alpha: An automorphism of B.

    Returns:
        The edges (A, A) → (A⊕B, A⊕B), the automorphism edge and the composite edge.
    """
    core.require_pcgw(cat)
    _require_automorphism(cat, alpha)
    total = cat.direct_sum(a, b)
    inclusion = types_.ExactSquare(a=a, b=total.obj, c=b, f=total.p_x, g=total.q_y)
    twisted = core.morphism_sum(cat, core.identity(cat, a, M), alpha)
    automorphism = automorphism_pair(cat, core.identity(cat, total.obj, M), twisted)
    return (
        simplicial.edge_of_squares(cat, inclusion, inclusion),
        simplicial.dexsq_edge(cat, automorphism),
        simplicial.edge_of_squares(cat, inclusion, inclusion),
    )


def _rows(diagram: types_.Optimal3x3, grid: types_.Grid3x3) -> tuple[types_.ExactSquare, ...]:
    """Read the rows of one component as exact squares.

    Args:
        diagram: The diagram.
        grid: The component.

    Returns:
        The squares X[i][0] ↣ X[i][1] ⊸ X[i][2].
    """
    return tuple(
        types_.ExactSquare(a=x0, b=x1, c=x2, f=f, g=g)
        for (x0, x1, x2), f, g in zip(diagram.objects, grid.row_m, grid.row_e)
    )


def _columns(
    diagram: types_.Optimal3x3, grid: types_.Grid3x3
) -> tuple[types_.ExactSquare, ...]:
    """Read the columns of one component as exact squares.

    Args:
        diagram: The diagram.
        grid: The component.

    Returns:
        The squares X[0][j] ↣ X[1][j] ⊸ X[2][j].
    """
    return tuple(
        types_.ExactSquare(a=x0, b=x1, c=x2, f=h, g=j)
        for (x0, x1, x2), h, j in zip(zip(*diagram.objects), grid.col_m, grid.col_e)
    )


def diagram_squares(
    diagram: types_.Optimal3x3,
) -> tuple[tuple[types_.DoubleExactSquare, ...], tuple[types_.DoubleExactSquare, ...]]:
    """Get the six double exact squares of a 3×3 diagram.

    Args:
        diagram: The diagram.

    Returns:
        The rows l₀, l₁, l₂ and the columns l⁰, l¹, l².
    """
    rows = tuple(
        types_.DoubleExactSquare(first=first, second=second)
        for first, second in zip(_rows(diagram, diagram.first), _rows(diagram, diagram.second))
    )
    columns = tuple(
        types_.DoubleExactSquare(first=first, second=second)
        for first, second in zip(
            _columns(diagram, diagram.first), _columns(diagram, diagram.second)
        )
    )
    return rows, columns


def _fits(exact: types_.ExactSquare) -> bool:
    """Check that the morphisms of an exact square meet its nodes.

    Args:
        exact: The exact square.

    Returns:
        Whether f: a ↣ b and g: c ⊸ b.
    """
    return (exact.f.src, exact.f.dst, exact.g.src, exact.g.dst) == (
        exact.a,
        exact.b,
        exact.c,
        exact.b,
    )


def _lift(v: types_.Mor, first: types_.Mor, second: types_.Mor) -> dict:
    """Factor a two step map through the witness v.

    Args:
        v: The M-morphism z ↣ X₁₁.
        first: The first step.
        second: The second step, landing in X₁₁.

    Returns:
        The map r with v∘r = second∘first.

    Raises:
        InvalidDiagram: if the map does not land in the image of v.
    """
    second_map = second.as_dict()
    try:
        return core.factor_before(v.as_dict(), {x: second_map[y] for x, y in first.table})
    except InstanceContractViolation as exc:
        raise InvalidDiagram(f"map does not factor through the witness {v!r}") from exc


def optimality_flags(
    cat: core.CategoryInstance, diagram: types_.Optimal3x3
) -> tuple[types_.FlagSimplex, ...]:
    """Build the four flags that witness optimality, for both components.

    Args:
        cat: The category instance.
        diagram: The diagram.

    Returns:
        Per component, the flags through u, w and the two through z along f₀ and h₀.
    """
    core.require_pcgw(cat)
    (x00, x01, x02), (x10, x11, x12), (x20, x21, x22) = diagram.objects
    z = diagram.z
    pair = cat.direct_sum(x02, x20)
    flags = []
    for grid, witness in zip((diagram.first, diagram.second), diagram.witnesses):
        from_x20 = types_.Mor(
            kind=E,
            src=x20,
            dst=z,
            table=core.table_of(_lift(witness.v, grid.row_m[2], grid.col_e[1])),
        )
        from_x02 = types_.Mor(
            kind=E,
            src=x02,
            dst=z,
            table=core.table_of(_lift(witness.v, grid.col_m[2], grid.row_e[1])),
        )
        through_u = _assemble(
            E,
            pair.obj,
            z,
            (pair.p_x, pair.p_y),
            (core.compose(cat, grid.row_e[0], _as_kind(witness.u, E)), from_x20),
        )
        through_w = _assemble(
            E,
            pair.obj,
            z,
            (pair.p_x, pair.p_y),
            (from_x02, core.compose(cat, grid.col_e[0], _as_kind(witness.w, E))),
        )
        flags.extend(
            (
                _three_flag(
                    cat,
                    ((x01, z, x11), (x20, x21), (x22,)),
                    ((witness.u, witness.v), (grid.row_m[2],), ()),
                    ((from_x20, grid.col_e[1]), (grid.row_e[2],), ()),
                ),
                _three_flag(
                    cat,
                    ((x10, z, x11), (x02, x12), (x22,)),
                    ((witness.w, witness.v), (grid.col_m[2],), ()),
                    ((from_x02, grid.row_e[1]), (grid.col_e[2],), ()),
                ),
                _three_flag(
                    cat,
                    ((x00, x01, z), (x02, pair.obj), (x20,)),
                    ((grid.row_m[0], witness.u), (pair.p_x,), ()),
                    ((grid.row_e[0], through_u), (pair.q_y,), ()),
                ),
                _three_flag(
                    cat,
                    ((x00, x10, z), (x20, pair.obj), (x02,)),
                    ((grid.col_m[0], witness.w), (pair.p_y,), ()),
                    ((grid.col_e[0], through_w), (pair.q_x,), ()),
                ),
            )
        )
    return tuple(flags)


def validate_3x3(cat: core.CategoryInstance, diagram: types_.Optimal3x3) -> None:
    """Run the optimality checklist of a 3×3 diagram.

    Args:
        cat: The category instance.
        diagram: The diagram.

    Raises:
        InvalidDiagram: naming the first failed check.
    """
    core.require_pcgw(cat)
    for grid, witness in zip((diagram.first, diagram.second), diagram.witnesses):
        for exact in _rows(diagram, grid) + _columns(diagram, grid):
            if not _fits(exact) or not core.is_exact(cat, exact):
                raise InvalidDiagram(f"row or column is not exact, {exact=!r}")
        if core.compose(cat, grid.row_e[2], grid.col_e[1]) != core.compose(
            cat, grid.col_e[2], grid.row_e[1]
        ):
            raise InvalidDiagram("the bottom right E-square does not commute")
        identities = (
            core.compose(cat, grid.row_m[0], witness.u)
            == core.compose(cat, grid.col_m[0], witness.w),
            core.compose(cat, witness.u, witness.v) == grid.col_m[1],
            core.compose(cat, witness.w, witness.v) == grid.row_m[1],
        )
        if not all(identities):
            raise InvalidDiagram(f"optimality identities fail, {identities=}")
    for index, flag in enumerate(optimality_flags(cat, diagram)):
        if not simplicial.is_valid_flag(cat, flag):
            raise InvalidDiagram(f"optimality flag {index % 4 + 1} is not distinguished")


def _grid(
    rows: typing.Sequence[types_.ExactSquare], columns: typing.Sequence[types_.ExactSquare]
) -> types_.Grid3x3:
    """Assemble one component from its rows and columns.

    Args:
        rows: The three row squares.
        columns: The three column squares.

    Returns:
        The component.
    """
    first, middle, last = rows
    left, centre, right = columns
    return types_.Grid3x3(
        row_m=(first.f, middle.f, last.f),
        row_e=(first.g, middle.g, last.g),
        col_m=(left.f, centre.f, right.f),
        col_e=(left.g, centre.g, right.g),
    )


def _direct_sum_3x3(
    cat: core.CategoryInstance,
    first: types_.DoubleExactSquare,
    second: types_.DoubleExactSquare,
) -> types_.Optimal3x3:
    """Build the diagram with rows f, f⊕g, g and direct sum columns.

    Args:
        cat: The category instance.
        first: The double exact square f on a ↣ b.
        second: The double exact square g on c ↣ d.

    Returns:
        The diagram with z = b⊕c.
    """
    f, g = first.first, second.first
    columns = []
    for top, bottom in ((f.a, g.a), (f.b, g.b), (f.c, g.c)):
        total = cat.direct_sum(top, bottom)
        columns.append(types_.ExactSquare(a=top, b=total.obj, c=bottom, f=total.p_x, g=total.q_y))
    z = cat.direct_sum(f.b, g.a)
    grids, witnesses = [], []
    middle = core.direct_sum_of_squares(cat, f, g)
    for f_part, g_part in zip(first, second):
        rows = (f_part, core.direct_sum_of_squares(cat, f_part, g_part), g_part)
        grids.append(_grid(rows, columns))
        witnesses.append(
            types_.OptimalityWitness(
                u=z.p_x,
                v=core.morphism_sum(cat, core.identity(cat, f.b, M), g_part.f),
                w=core.morphism_sum(cat, f_part.f, core.identity(cat, g.a, M)),
            )
        )
    return types_.Optimal3x3(
        objects=tuple((row.a, row.b, row.c) for row in (f, middle, g)),
        first=grids[0],
        second=grids[1],
        z=z.obj,
        witnesses=(witnesses[0], witnesses[1]),
    )


def _composition_3x3(
    cat: core.CategoryInstance,
    first: types_.DoubleExactSquare,
    second: types_.DoubleExactSquare,
) -> types_.Optimal3x3:
    """Build the diagram with columns f, g∘f and rows g and the composition obstruction.

    Args:
        cat: The category instance.
        first: The double exact square f on a ↣ b.
        second: The double exact square g on b ↣ d.

    Returns:
        The diagram with z = b.
    """
    composite = compose_dexsq(cat, first, second)
    obstruction = admissible_triple(
        cat,
        simplicial.dexsq_edge(cat, first),
        simplicial.dexsq_edge(cat, second),
        simplicial.dexsq_edge(cat, composite),
    ).obstruction
    a, b, y = first.first.a, first.first.b, second.first.c
    top = types_.ExactSquare(
        a=a, b=a, c=cat.basepoint, f=core.identity(cat, a, M), g=cat.initial(a, E)
    )
    last = types_.ExactSquare(
        a=cat.basepoint, b=y, c=y, f=cat.initial(y, M), g=core.identity(cat, y, E)
    )
    grids, witnesses = [], []
    for f_part, g_part, composite_part, obstruction_part in zip(
        first, second, composite, obstruction
    ):
        grids.append(
            _grid((top, g_part, obstruction_part), (f_part, composite_part, last))
        )
        witnesses.append(
            types_.OptimalityWitness(u=f_part.f, v=g_part.f, w=core.identity(cat, b, M))
        )
    return types_.Optimal3x3(
        objects=(
            (a, a, cat.basepoint),
            (b, second.first.b, y),
            (first.first.c, composite.first.c, y),
        ),
        first=grids[0],
        second=grids[1],
        z=b,
        witnesses=(witnesses[0], witnesses[1]),
    )


def build_3x3(
    cat: core.CategoryInstance,
    kind: types_.ThreeByThreeKind,
    first: types_.DoubleExactSquare,
    second: types_.DoubleExactSquare,
) -> types_.Optimal3x3:
    """Build and validate an optimal 3×3 diagram from two double exact squares.

    Args:
        cat: The category instance.
        kind: The family of the diagram.
        first: The double exact square f.
        second: The double exact square g.

    Returns:
        The validated diagram with its witnesses.

    Raises:
        NotComposable: if a composition diagram is asked for squares that do not meet.
    """
    core.require_pcgw(cat)
    match kind:
        case types_.ThreeByThreeKind.DIRECT_SUM:
            diagram = _direct_sum_3x3(cat, first, second)
        case types_.ThreeByThreeKind.COMPOSITION:
            if first.first.b != second.first.a:
                raise NotComposable(
                    f"cannot compose, {first.first.b=!r}, {second.first.a=!r}"
                )
            diagram = _composition_3x3(cat, first, second)
    validate_3x3(cat, diagram)
    logging.debug("built %s 3×3 diagram on %s", kind.value, diagram.objects)
    return diagram
