# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""The contract of a CGW category instance and the algebra of its squares."""

import abc
import concurrent.futures
import logging
import typing

from . import types_
from .exceptions import EdgeMismatch, InstanceContractViolation, NotComposable, NotPCGW

M = types_.Kind.M
E = types_.Kind.E


class CategoryInstance(abc.ABC):
    """An enumerable realization of a CGW category.

    Morphisms carry their underlying map in the ambient category. Instances whose E-morphisms
    are contravariant in the ambient category store E-tables from codomain to domain.

    Attrs:
        name: The name of the instance.
        is_pcgw: Whether the instance provides restricted pushouts.
        e_contravariant: Whether E-morphisms reverse direction in the ambient category.
        basepoint: The initial object O.
    """

    name: str = ""
    is_pcgw: bool = False
    e_contravariant: bool = False
    basepoint: types_.ObjId

    @abc.abstractmethod
    def objects(self, max_size: int) -> tuple[types_.ObjId, ...]:
        """Enumerate the objects up to a size.

        Args:
            max_size: The largest object size.
        """

    def representatives(self, max_size: int) -> tuple[types_.ObjId, ...]:
        """Enumerate one object per isomorphism class up to a size.

        Args:
            max_size: The largest object size.

        Returns:
            The class representatives in enumeration order.
        """
        seen: dict[types_.ObjId, None] = {}
        for obj in self.objects(max_size):
            seen.setdefault(self.object_class(obj), None)
        return tuple(seen)

    @abc.abstractmethod
    def elements(self, obj: types_.ObjId) -> tuple[types_.Element, ...]:
        """Get the elements of the underlying ambient object.

        Args:
            obj: The object.
        """

    def size(self, obj: types_.ObjId) -> int:
        """Get the size of an object, the basepoint counts zero.

        Args:
            obj: The object.

        Returns:
            The number of elements.
        """
        return len(self.elements(obj))

    @abc.abstractmethod
    def m_morphisms(self, src: types_.ObjId, dst: types_.ObjId) -> tuple[types_.Mor, ...]:
        """Enumerate the M-morphisms between two objects.

        Args:
            src: The domain.
            dst: The codomain.
        """

    @abc.abstractmethod
    def e_morphisms(self, src: types_.ObjId, dst: types_.ObjId) -> tuple[types_.Mor, ...]:
        """Enumerate the E-morphisms between two objects.

        Args:
            src: The domain.
            dst: The codomain.
        """

    @abc.abstractmethod
    def ambient_isomorphisms(
        self, src: types_.ObjId, dst: types_.ObjId
    ) -> tuple[types_.Mor, ...]:
        """Enumerate the isomorphisms of the ambient category as M-morphisms.

        Args:
            src: The domain.
            dst: The codomain.
        """

    @abc.abstractmethod
    def is_distinguished(self, square: types_.DistSquare) -> bool:
        """Check whether a square is distinguished.

        Args:
            square: The square to check.
        """

    @abc.abstractmethod
    def formal_quotient(self, mor: types_.Mor) -> types_.ExactSquare:
        """Get the canonical exact square with a given M-morphism at the bottom.

        Args:
            mor: The M-morphism.
        """

    @abc.abstractmethod
    def formal_kernel(self, mor: types_.Mor) -> types_.ExactSquare:
        """Get the canonical exact square with a given E-morphism on the right.

        Args:
            mor: The E-morphism.
        """

    def object_class(self, obj: types_.ObjId) -> types_.ObjId:
        """Get the representative of the isomorphism class of an object.

        Args:
            obj: The object.

        Returns:
            The object itself unless the instance identifies isomorphic objects.
        """
        return obj

    def is_valid(self, mor: types_.Mor) -> bool:
        """Check whether a morphism belongs to the instance.

        Args:
            mor: The morphism.

        Returns:
            Whether the morphism is enumerated between its endpoints.
        """
        match mor.kind:
            case types_.Kind.M:
                return mor in self.m_morphisms(mor.src, mor.dst)
            case types_.Kind.E:
                return mor in self.e_morphisms(mor.src, mor.dst)

    def initial(self, obj: types_.ObjId, kind: types_.Kind) -> types_.Mor:
        """Get the unique morphism out of the basepoint.

        Args:
            obj: The codomain.
            kind: The kind of morphism.

        Returns:
            The morphism O → obj.

        Raises:
            InstanceContractViolation: if there is not exactly one such morphism.
        """
        enumerate_ = self.m_morphisms if kind == M else self.e_morphisms
        candidates = enumerate_(self.basepoint, obj)
        if len(candidates) != 1:
            raise InstanceContractViolation(
                f"expected one {kind.value}-morphism out of the basepoint, {obj=!r}, "
                f"found {len(candidates)}"
            )
        return candidates[0]

    def restricted_pushout(self, g: types_.Mor, f: types_.Mor) -> types_.RestrictedPushout:
        """Get the restricted pushout of a span c ↢ a ↣ b.

        Args:
            g: The leg a ↣ c.
            f: The leg a ↣ b.

        Raises:
            NotPCGW: unless the instance is pCGW.
        """
        raise NotPCGW(f"{self.name} has no restricted pushouts")

    def direct_sum(self, x: types_.ObjId, y: types_.ObjId) -> types_.DirectSum:
        """Get the formal direct sum of two objects.

        Args:
            x: The first summand.
            y: The second summand.

        Raises:
            NotPCGW: unless the instance provides sums.
        """
        raise NotPCGW(f"{self.name} has no formal direct sums")

    def standard_iso(self, src: types_.ObjId, dst: types_.ObjId) -> types_.Mor:
        """Get the standard isomorphism between two isomorphic objects.

        Args:
            src: The domain.
            dst: The codomain.

        Raises:
            NotPCGW: unless the instance is pCGW.
        """
        raise NotPCGW(f"{self.name} has no standard isomorphisms")

    def canonical_form(self, diagram: types_.Diagram) -> types_.Diagram:
        """Get the canonical relabeling of a diagram.

        Args:
            diagram: The diagram.

        Raises:
            NotPCGW: unless the instance is pCGW.
        """
        raise NotPCGW(f"{self.name} has no diagram canonical forms")

    def filtration_representatives(
        self, max_size: int
    ) -> tuple[tuple[types_.Mor, types_.Mor], ...]:
        """Enumerate composable M-pairs p0 ↣ p1 ↣ p2 up to isomorphism of filtrations.

        Args:
            max_size: The largest size of p2.

        Raises:
            NotPCGW: unless the instance is pCGW.
        """
        raise NotPCGW(f"{self.name} has no filtration representatives")


def require_pcgw(cat: CategoryInstance) -> None:
    """Check that an instance has restricted pushouts and direct sums.

    Args:
        cat: The category instance.

    Raises:
        NotPCGW: unless the instance is pCGW.
    """
    if not cat.is_pcgw:
        raise NotPCGW(f"{cat.name} has no restricted pushouts")


def ordered_map(
    function: typing.Callable[[typing.Any], typing.Any],
    items: typing.Iterable,
    workers: int = 1,
) -> list:
    """Apply a function to every item across a pool of workers.

    Args:
        function: A pure function of one item.
        items: The items in enumeration order.
        workers: The number of worker threads, 1 runs in the calling thread.

    Returns:
        The results in the order of the items.
    """
    if workers <= 1:
        return [function(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items))


def table_of(mapping: typing.Mapping[types_.Element, types_.Element]) -> types_.Table:
    """Freeze a mapping as a sorted table.

    Args:
        mapping: The mapping.

    Returns:
        The pairs sorted by key.
    """
    return tuple(sorted(mapping.items()))


def identity(cat: CategoryInstance, obj: types_.ObjId, kind: types_.Kind) -> types_.Mor:
    """Get an identity morphism.

    Args:
        cat: The category instance.
        obj: The object.
        kind: The kind of morphism.

    Returns:
        The identity of obj.
    """
    return types_.Mor(
        kind=kind, src=obj, dst=obj, table=table_of({x: x for x in cat.elements(obj)})
    )


def _reversed(cat: CategoryInstance, kind: types_.Kind) -> bool:
    """Check whether tables of a kind run from codomain to domain.

    Args:
        cat: The category instance.
        kind: The kind of morphism.

    Returns:
        Whether the kind is contravariant in the ambient category.
    """
    return kind == E and cat.e_contravariant


def compose(cat: CategoryInstance, first: types_.Mor, second: types_.Mor) -> types_.Mor:
    """Compose two morphisms of the same kind, first then second.

    Args:
        cat: The category instance.
        first: The morphism applied first.
        second: The morphism applied second.

    Returns:
        The composite first.src → second.dst.

    Raises:
        NotComposable: if the kinds or the endpoints do not match.
    """
    if first.kind != second.kind or first.dst != second.src:
        raise NotComposable(f"cannot compose, {first=!r}, {second=!r}")
    first_map, second_map = first.as_dict(), second.as_dict()
    if _reversed(cat, first.kind):
        composite = {x: first_map[y] for x, y in second_map.items()}
    else:
        composite = {x: second_map[y] for x, y in first_map.items()}
    return types_.Mor(kind=first.kind, src=first.src, dst=second.dst, table=table_of(composite))


def compose_all(cat: CategoryInstance, *mors: types_.Mor) -> types_.Mor:
    """Compose a chain of morphisms from left to right.

    Args:
        cat: The category instance.
        mors: The morphisms in order of application.

    Returns:
        The composite.
    """
    result = mors[0]
    for mor in mors[1:]:
        result = compose(cat, result, mor)
    return result


def is_iso(cat: CategoryInstance, mor: types_.Mor) -> bool:
    """Check whether the underlying ambient map is a bijection.

    Args:
        cat: The category instance.
        mor: The morphism.

    Returns:
        Whether the table is a bijection between the element sets.
    """
    images = [y for _, y in mor.table]
    src, dst = (mor.dst, mor.src) if _reversed(cat, mor.kind) else (mor.src, mor.dst)
    return (
        len(set(images)) == len(images)
        and set(images) == set(cat.elements(dst))
        and len(mor.table) == len(cat.elements(src))
    )


def inverse(mor: types_.Mor) -> types_.Mor:
    """Invert an isomorphism.

    Args:
        mor: The isomorphism.

    Returns:
        The inverse with swapped endpoints.
    """
    return types_.Mor(
        kind=mor.kind,
        src=mor.dst,
        dst=mor.src,
        table=table_of({y: x for x, y in mor.table}),
    )


def phi(cat: CategoryInstance, iso: types_.Mor) -> types_.Mor:
    """Send an M-isomorphism to the E-isomorphism with the same underlying map.

    Args:
        cat: The category instance.
        iso: The M-isomorphism.

    Returns:
        The E-isomorphism iso.src ⊸ iso.dst.
    """
    table = inverse(iso).table if cat.e_contravariant else iso.table
    return types_.Mor(kind=E, src=iso.src, dst=iso.dst, table=table)


def factor_before(
    mono: typing.Mapping[types_.Element, types_.Element],
    target: typing.Mapping[types_.Element, types_.Element],
) -> dict[types_.Element, types_.Element]:
    """Find r with mono∘r = target for an injective map.

    Args:
        mono: The injective map.
        target: The map to factor.

    Returns:
        The factor r.

    Raises:
        InstanceContractViolation: if target does not land in the image of mono.
    """
    preimage = {y: x for x, y in mono.items()}
    try:
        return {x: preimage[y] for x, y in target.items()}
    except KeyError as exc:
        raise InstanceContractViolation(
            f"map does not factor through injection, {mono=!r}, {target=!r}"
        ) from exc


def factor_after(
    epi: typing.Mapping[types_.Element, types_.Element],
    target: typing.Mapping[types_.Element, types_.Element],
) -> dict[types_.Element, types_.Element]:
    """Find r with r∘epi = target for a surjective map.

    Args:
        epi: The surjective map.
        target: The map to factor.

    Returns:
        The factor r on the image of epi.

    Raises:
        InstanceContractViolation: if target is not constant on the fibres of epi.
    """
    factor: dict[types_.Element, types_.Element] = {}
    for x, y in epi.items():
        if factor.setdefault(y, target[x]) != target[x]:
            raise InstanceContractViolation(
                f"map does not factor through surjection, {epi=!r}, {target=!r}"
            )
    return factor


def ambient_commutes(cat: CategoryInstance, square: types_.DistSquare) -> bool:
    """Check whether a square commutes in the ambient category.

    Args:
        cat: The category instance.
        square: The square.

    Returns:
        Whether both paths agree.
    """
    top, left = square.top.as_dict(), square.left.as_dict()
    bottom, right = square.bottom.as_dict(), square.right.as_dict()
    try:
        if cat.e_contravariant:
            return all(top[left[x]] == right[bottom[x]] for x in cat.elements(square.bl))
        return all(right[top[x]] == bottom[left[x]] for x in cat.elements(square.tl))
    except KeyError:
        return False


def exact_as_square(cat: CategoryInstance, exact: types_.ExactSquare) -> types_.DistSquare:
    """Draw an exact square with the basepoint at the top-left.

    Args:
        cat: The category instance.
        exact: The exact square.

    Returns:
        The square (O, c, a, b).
    """
    return types_.DistSquare(
        tl=cat.basepoint,
        tr=exact.c,
        bl=exact.a,
        br=exact.b,
        top=cat.initial(exact.c, M),
        left=cat.initial(exact.a, E),
        bottom=exact.f,
        right=exact.g,
    )


def is_exact(cat: CategoryInstance, exact: types_.ExactSquare) -> bool:
    """Check whether an exact square is distinguished.

    Args:
        cat: The category instance.
        exact: The exact square.

    Returns:
        Whether its drawn square is distinguished.
    """
    return cat.is_distinguished(exact_as_square(cat, exact))


def compose_squares(
    cat: CategoryInstance,
    first: types_.DistSquare,
    second: types_.DistSquare,
    direction: types_.SquareDirection,
) -> types_.DistSquare:
    """Paste two squares along a shared edge.

    Horizontally the first square sits left of the second and they share an E-morphism,
    vertically the first sits above the second and they share an M-morphism.

    Args:
        cat: The category instance.
        first: The left or upper square.
        second: The right or lower square.
        direction: The direction of pasting.

    Returns:
        The pasted square.

    Raises:
        EdgeMismatch: if the shared edge differs.
    """
    match direction:
        case types_.SquareDirection.HORIZONTAL:
            if first.right != second.left:
                raise EdgeMismatch(
                    f"right edge {first.right!r} does not match left edge {second.left!r}"
                )
            return types_.DistSquare(
                tl=first.tl,
                tr=second.tr,
                bl=first.bl,
                br=second.br,
                top=compose(cat, first.top, second.top),
                left=first.left,
                bottom=compose(cat, first.bottom, second.bottom),
                right=second.right,
            )
        case types_.SquareDirection.VERTICAL:
            if first.bottom != second.top:
                raise EdgeMismatch(
                    f"bottom edge {first.bottom!r} does not match top edge {second.top!r}"
                )
            return types_.DistSquare(
                tl=first.tl,
                tr=first.tr,
                bl=second.bl,
                br=second.br,
                top=first.top,
                left=compose(cat, first.left, second.left),
                bottom=second.bottom,
                right=compose(cat, first.right, second.right),
            )


def formal_quotient(cat: CategoryInstance, mor: types_.Mor) -> types_.ExactSquare:
    """Get the canonical exact square of an M-morphism.

    Args:
        cat: The category instance.
        mor: The M-morphism.

    Returns:
        The exact square with bottom mor and its formal cokernel on the right.

    Raises:
        InstanceContractViolation: if the instance returns a square with another bottom.
    """
    exact = cat.formal_quotient(mor)
    if exact.f != mor or exact.g.dst != mor.dst:
        raise InstanceContractViolation(f"formal quotient does not fit, {mor=!r}, {exact=!r}")
    return exact


def comparison_iso(
    cat: CategoryInstance, exact: types_.ExactSquare, canonical: types_.ExactSquare
) -> types_.Mor:
    """Find the isomorphism between the quotients of two exact squares with the same bottom.

    Args:
        cat: The category instance.
        exact: An exact square.
        canonical: The canonical exact square with the same bottom.

    Returns:
        The M-isomorphism γ: exact.c → canonical.c with g = c(f)∘φ(γ).

    Raises:
        InstanceContractViolation: if the quotients are not related by an isomorphism.
    """
    if cat.e_contravariant:
        gamma_inverse = factor_after(canonical.g.as_dict(), exact.g.as_dict())
        table = table_of({y: x for x, y in gamma_inverse.items()})
    else:
        table = table_of(factor_before(canonical.g.as_dict(), exact.g.as_dict()))
    gamma = types_.Mor(kind=M, src=exact.c, dst=canonical.c, table=table)
    if not is_iso(cat, gamma):
        raise InstanceContractViolation(
            f"quotients are not isomorphic, {exact=!r}, {canonical=!r}"
        )
    return gamma


def quotient_filtration(
    cat: CategoryInstance, f1: types_.Mor, g1: types_.Mor
) -> types_.FiltrationDiagram:
    """Build the staircase of quotients of a composable pair of M-morphisms.

    Args:
        cat: The category instance.
        f1: The M-morphism p0 ↣ p1.
        g1: The M-morphism p1 ↣ p2.

    Returns:
        The five squares of the staircase, with h2 = g2∘j2.
    """
    lower = formal_quotient(cat, f1)
    composite = formal_quotient(cat, compose(cat, f1, g1))
    upper = formal_quotient(cat, g1)
    f2, g2, h2 = lower.g.as_dict(), composite.g.as_dict(), upper.g.as_dict()
    g1_map = g1.as_dict()
    if cat.e_contravariant:
        j1 = factor_after(f2, {x: g2[g1_map[x]] for x in cat.elements(f1.dst)})
        j2 = factor_after(g2, h2)
    else:
        j1 = factor_before(g2, {x: g1_map[y] for x, y in f2.items()})
        j2 = factor_before(g2, h2)

    j1_mor = types_.Mor(kind=M, src=lower.c, dst=composite.c, table=table_of(j1))
    j2_mor = types_.Mor(kind=E, src=upper.c, dst=composite.c, table=table_of(j2))
    middle = types_.DistSquare(
        tl=lower.c,
        tr=composite.c,
        bl=f1.dst,
        br=g1.dst,
        top=j1_mor,
        left=lower.g,
        bottom=g1,
        right=composite.g,
    )
    quotient = types_.ExactSquare(a=lower.c, b=composite.c, c=upper.c, f=j1_mor, g=j2_mor)
    logging.debug("quotient filtration of %s then %s", f1, g1)
    return types_.FiltrationDiagram(
        lower=lower, composite=composite, upper=upper, middle=middle, quotient=quotient
    )


def filtration_squares(
    cat: CategoryInstance, diagram: types_.FiltrationDiagram
) -> tuple[types_.DistSquare, ...]:
    """List the five drawn squares of a staircase.

    Args:
        cat: The category instance.
        diagram: The staircase.

    Returns:
        The squares in the order lower, composite, upper, middle, quotient.
    """
    return (
        exact_as_square(cat, diagram.lower),
        exact_as_square(cat, diagram.composite),
        exact_as_square(cat, diagram.upper),
        diagram.middle,
        exact_as_square(cat, diagram.quotient),
    )


def restricted_pushout(
    cat: CategoryInstance, g: types_.Mor, f: types_.Mor
) -> types_.RestrictedPushout:
    """Get the restricted pushout of a span c ↢ a ↣ b.

    Args:
        cat: The category instance.
        g: The leg a ↣ c.
        f: The leg a ↣ b.

    Returns:
        The pushout object with its legs from b and c.

    Raises:
        NotComposable: if the legs are not M-morphisms out of one object.
    """
    if g.kind != M or f.kind != M or g.src != f.src:
        raise NotComposable(f"not a span of M-morphisms, {g=!r}, {f=!r}")
    return cat.restricted_pushout(g, f)


def direct_sum(cat: CategoryInstance, x: types_.ObjId, y: types_.ObjId) -> types_.DirectSum:
    """Get the formal direct sum of two objects.

    Args:
        cat: The category instance.
        x: The first summand.
        y: The second summand.

    Returns:
        The sum with its canonical legs.
    """
    return cat.direct_sum(x, y)


def morphism_sum(cat: CategoryInstance, first: types_.Mor, second: types_.Mor) -> types_.Mor:
    """Sum two morphisms of the same kind.

    Args:
        cat: The category instance.
        first: The morphism x → x′.
        second: The morphism y → y′.

    Returns:
        The morphism x⊕y → x′⊕y′.

    Raises:
        NotComposable: if the kinds differ.
    """
    if first.kind != second.kind:
        raise NotComposable(f"cannot sum different kinds, {first=!r}, {second=!r}")
    src_sum = cat.direct_sum(first.src, second.src)
    dst_sum = cat.direct_sum(first.dst, second.dst)
    table: dict[types_.Element, types_.Element] = {}
    for mor, src_leg, dst_leg in (
        (first, src_sum.p_x, dst_sum.p_x),
        (second, src_sum.p_y, dst_sum.p_y),
    ):
        src_map, dst_map = src_leg.as_dict(), dst_leg.as_dict()
        if _reversed(cat, mor.kind):
            src_map, dst_map = dst_map, src_map
        for x, y in mor.table:
            table[src_map[x]] = dst_map[y]
    return types_.Mor(kind=first.kind, src=src_sum.obj, dst=dst_sum.obj, table=table_of(table))


def square_sum(
    cat: CategoryInstance, first: types_.DistSquare, second: types_.DistSquare
) -> types_.DistSquare:
    """Sum two squares node by node.

    Args:
        cat: The category instance.
        first: The first square.
        second: The second square.

    Returns:
        The square of componentwise sums.
    """
    return types_.DistSquare(
        tl=cat.direct_sum(first.tl, second.tl).obj,
        tr=cat.direct_sum(first.tr, second.tr).obj,
        bl=cat.direct_sum(first.bl, second.bl).obj,
        br=cat.direct_sum(first.br, second.br).obj,
        top=morphism_sum(cat, first.top, second.top),
        left=morphism_sum(cat, first.left, second.left),
        bottom=morphism_sum(cat, first.bottom, second.bottom),
        right=morphism_sum(cat, first.right, second.right),
    )


def add_object_to_square(
    cat: CategoryInstance, exact: types_.ExactSquare, obj: types_.ObjId
) -> types_.AddObjectSquares:
    """Add a fixed object to an exact square a ↣ b ⊸ c.

    Args:
        cat: The category instance.
        exact: The exact square.
        obj: The object d to add.

    Returns:
        The four squares with d added, the variants with d first and the quotient isomorphism.
    """
    b_d = cat.direct_sum(exact.b, obj)
    c_d = cat.direct_sum(exact.c, obj)
    a_d = cat.direct_sum(exact.a, obj)
    g_plus = morphism_sum(cat, exact.g, identity(cat, obj, E))
    f_plus = morphism_sum(cat, exact.f, identity(cat, obj, M))
    sum_quotient = types_.ExactSquare(
        a=exact.a, b=b_d.obj, c=c_d.obj, f=compose(cat, exact.f, b_d.p_x), g=g_plus
    )
    sum_sub = types_.ExactSquare(
        a=a_d.obj, b=b_d.obj, c=exact.c, f=f_plus, g=compose(cat, exact.g, b_d.q_x)
    )
    mixed_quotient = types_.DistSquare(
        tl=exact.c,
        tr=c_d.obj,
        bl=exact.b,
        br=b_d.obj,
        top=c_d.p_x,
        left=exact.g,
        bottom=b_d.p_x,
        right=g_plus,
    )
    mixed_sub = types_.DistSquare(
        tl=obj,
        tr=c_d.obj,
        bl=a_d.obj,
        br=b_d.obj,
        top=c_d.p_y,
        left=a_d.q_y,
        bottom=f_plus,
        right=g_plus,
    )

    d_b = cat.direct_sum(obj, exact.b)
    d_c = cat.direct_sum(obj, exact.c)
    d_a = cat.direct_sum(obj, exact.a)
    permuted = (
        types_.ExactSquare(
            a=exact.a,
            b=d_b.obj,
            c=d_c.obj,
            f=compose(cat, exact.f, d_b.p_y),
            g=morphism_sum(cat, identity(cat, obj, E), exact.g),
        ),
        types_.ExactSquare(
            a=d_a.obj,
            b=d_b.obj,
            c=exact.c,
            f=morphism_sum(cat, identity(cat, obj, M), exact.f),
            g=compose(cat, exact.g, d_b.q_y),
        ),
    )
    quotient_iso = comparison_iso(
        cat, sum_quotient, formal_quotient(cat, sum_quotient.f)
    )
    return types_.AddObjectSquares(
        sum_quotient=sum_quotient,
        sum_sub=sum_sub,
        mixed_quotient=mixed_quotient,
        mixed_sub=mixed_sub,
        permuted=permuted,
        quotient_iso=quotient_iso,
    )


def direct_sum_of_squares(
    cat: CategoryInstance, first: types_.ExactSquare, second: types_.ExactSquare
) -> types_.ExactSquare:
    """Sum two exact squares.

    The bottom is (1⊕f′)∘(f⊕1), which agrees with the componentwise sum.

    Args:
        cat: The category instance.
        first: The exact square a ↣ b ⊸ c.
        second: The exact square a′ ↣ b′ ⊸ c′.

    Returns:
        The exact square a⊕a′ ↣ b⊕b′ ⊸ c⊕c′.
    """
    bottom = compose(
        cat,
        morphism_sum(cat, first.f, identity(cat, second.a, M)),
        morphism_sum(cat, identity(cat, first.b, M), second.f),
    )
    return types_.ExactSquare(
        a=cat.direct_sum(first.a, second.a).obj,
        b=cat.direct_sum(first.b, second.b).obj,
        c=cat.direct_sum(first.c, second.c).obj,
        f=bottom,
        g=morphism_sum(cat, first.g, second.g),
    )


def direct_sum_quotient_square(
    cat: CategoryInstance, first: types_.FiltrationDiagram, second: types_.FiltrationDiagram
) -> types_.DistSquare:
    """Sum the middle squares of two staircases.

    Args:
        cat: The category instance.
        first: The first staircase.
        second: The second staircase.

    Returns:
        The square on quotients of the summed filtration.
    """
    return square_sum(cat, first.middle, second.middle)


def pushout_quotient_iso(cat: CategoryInstance, g: types_.Mor, f: types_.Mor) -> types_.Mor:
    """Compare the quotient of a span leg with the quotient of the opposite pushout leg.

    Args:
        cat: The category instance.
        g: The leg a ↣ c.
        f: The leg a ↣ b.

    Returns:
        The isomorphism b/a → (b⋆_a c)/c induced by the pushout leg from b.

    Raises:
        InstanceContractViolation: if the induced map is not an isomorphism.
    """
    pushout = restricted_pushout(cat, g, f)
    b_over_a = formal_quotient(cat, f)
    p_over_c = formal_quotient(cat, pushout.in_c)
    in_b = pushout.in_b.as_dict()
    if cat.e_contravariant:
        target = {x: p_over_c.g.as_dict()[in_b[x]] for x in cat.elements(f.dst)}
        table = factor_after(b_over_a.g.as_dict(), target)
    else:
        table = factor_before(
            p_over_c.g.as_dict(), {x: in_b[y] for x, y in b_over_a.g.table}
        )
    iso = types_.Mor(kind=M, src=b_over_a.c, dst=p_over_c.c, table=table_of(table))
    if not is_iso(cat, iso):
        raise InstanceContractViolation(f"pushout does not preserve quotient, {g=!r}, {f=!r}")
    return iso


def induced_pushout_map(
    cat: CategoryInstance, b_square: types_.DistSquare, c_square: types_.DistSquare
) -> tuple[types_.Mor, types_.DistSquare, types_.DistSquare]:
    """Get the E-morphism between restricted pushouts induced by two squares.

    The squares run from the span c ↢ a ↣ b on their top rows to the span c′ ↢ a′ ↣ b′ on their
    bottom rows and share the left edge a ⊸ a′.

    Args:
        cat: The category instance.
        b_square: The square (a, b, a′, b′).
        c_square: The square (a, c, a′, c′).

    Returns:
        The E-morphism p ⊸ p′ and the two squares from b and c into it.

    Raises:
        EdgeMismatch: if the squares do not share their left edge.
        InstanceContractViolation: if the legs do not glue to one map.
    """
    if b_square.left != c_square.left:
        raise EdgeMismatch(f"left edges differ, {b_square.left!r}, {c_square.left!r}")
    upper = restricted_pushout(cat, c_square.top, b_square.top)
    lower = restricted_pushout(cat, c_square.bottom, b_square.bottom)
    table: dict[types_.Element, types_.Element] = {}
    for upper_leg, lower_leg, square in (
        (upper.in_b, lower.in_b, b_square),
        (upper.in_c, lower.in_c, c_square),
    ):
        if cat.e_contravariant:
            leg, values = lower_leg.as_dict(), square.right.as_dict()
            target = {x: upper_leg.as_dict()[values[x]] for x in leg}
            part = factor_after(leg, target)
        else:
            leg, values = upper_leg.as_dict(), square.right.as_dict()
            target = {x: lower_leg.as_dict()[values[x]] for x in leg}
            part = factor_after(leg, target)
        for key, value in part.items():
            if table.setdefault(key, value) != value:
                raise InstanceContractViolation(
                    f"legs do not glue, {b_square=!r}, {c_square=!r}"
                )
    induced = types_.Mor(kind=E, src=upper.obj, dst=lower.obj, table=table_of(table))
    return (
        induced,
        types_.DistSquare(
            tl=b_square.tr,
            tr=upper.obj,
            bl=b_square.br,
            br=lower.obj,
            top=upper.in_b,
            left=b_square.right,
            bottom=lower.in_b,
            right=induced,
        ),
        types_.DistSquare(
            tl=c_square.tr,
            tr=upper.obj,
            bl=c_square.br,
            br=lower.obj,
            top=upper.in_c,
            left=c_square.right,
            bottom=lower.in_c,
            right=induced,
        ),
    )
