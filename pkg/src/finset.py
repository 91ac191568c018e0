# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Finite sets with injections, a pCGW category with pushout squares as distinguished squares."""

import functools
import itertools
import logging
from enum import Enum

import networkx as nx

from . import core, types_
from .exceptions import ImagesDoNotPartition, InstanceContractViolation, InvalidDiagram

FinSetObj = tuple[int, ...]


class FinSetMutant(str, Enum):
    """Deliberately broken variants of the finite set instance.

    Attrs:
        DROP_UNION: Distinguished squares need not cover the bottom-right set.
        NON_MONIC_E: E-morphisms are all functions.
        MISSING_INITIAL: The basepoint is a one-element set.
        WRONG_QUOTIENT: The formal quotient is the image instead of the complement.
        NON_CLOSED_SQUARES: Squares with a nonempty corner and an identity bottom are rejected.
    """

    DROP_UNION = "drop-union"
    NON_MONIC_E = "non-monic-e"
    MISSING_INITIAL = "missing-initial"
    WRONG_QUOTIENT = "wrong-quotient"
    NON_CLOSED_SQUARES = "non-closed-squares"


@functools.cache
def _injections(src: FinSetObj, dst: FinSetObj) -> tuple[types_.Table, ...]:
    """Enumerate the injections between two sets.

    Args:
        src: The domain.
        dst: The codomain.

    Returns:
        The tables of all injections.
    """
    return tuple(
        tuple(zip(src, image)) for image in itertools.permutations(dst, len(src))
    )


@functools.cache
def _functions(src: FinSetObj, dst: FinSetObj) -> tuple[types_.Table, ...]:
    """Enumerate all functions between two sets.

    Args:
        src: The domain.
        dst: The codomain.

    Returns:
        The tables of all functions.
    """
    return tuple(tuple(zip(src, image)) for image in itertools.product(dst, repeat=len(src)))


def _is_identity(mor: types_.Mor) -> bool:
    """Check whether a morphism is an identity.

    Args:
        mor: The morphism.

    Returns:
        Whether it is the identity of its domain.
    """
    return mor.src == mor.dst and all(x == y for x, y in mor.table)


def _inclusion(kind: types_.Kind, src: FinSetObj, dst: FinSetObj) -> types_.Mor:
    """Get the inclusion of a subset.

    Args:
        kind: The kind of morphism.
        src: The subset.
        dst: The superset.

    Returns:
        The inclusion src ↪ dst.
    """
    return types_.Mor(kind=kind, src=src, dst=dst, table=tuple((x, x) for x in src))


class FinSetCategory(core.CategoryInstance):
    """Finite subsets of ℕ with injections as both M- and E-morphisms.

    Attrs:
        mutant: The broken variant, None for the genuine instance.
    """

    name = "finset"
    is_pcgw = True
    e_contravariant = False

    def __init__(self, mutant: FinSetMutant | None = None):
        """Construct.

        Args:
            mutant: The broken variant to realize, if any.
        """
        self.mutant = mutant
        self.basepoint: FinSetObj = (0,) if mutant == FinSetMutant.MISSING_INITIAL else ()
        if mutant is not None:
            logging.info("finite set mutant: %s", mutant.value)

    def objects(self, max_size: int) -> tuple[FinSetObj, ...]:
        """Enumerate the subsets of {0..max_size-1}.

        Args:
            max_size: The size of the universe.

        Returns:
            All subsets ordered by size and then lexicographically.
        """
        universe = range(max_size)
        return tuple(
            subset
            for size in range(max_size + 1)
            for subset in itertools.combinations(universe, size)
        )

    def representatives(self, max_size: int) -> tuple[FinSetObj, ...]:
        """Enumerate the initial segments {0..n-1}.

        Args:
            max_size: The largest n.

        Returns:
            One set per cardinality.
        """
        return tuple(tuple(range(size)) for size in range(max_size + 1))

    def object_class(self, obj: FinSetObj) -> FinSetObj:
        """Get the initial segment of the same cardinality.

        Args:
            obj: The set.

        Returns:
            The initial segment.
        """
        return tuple(range(len(obj)))

    def elements(self, obj: FinSetObj) -> FinSetObj:
        """Get the elements of a set.

        Args:
            obj: The set.

        Returns:
            The set itself.
        """
        return obj

    def m_morphisms(self, src: FinSetObj, dst: FinSetObj) -> tuple[types_.Mor, ...]:
        """Enumerate the injections src ↣ dst.

        Args:
            src: The domain.
            dst: The codomain.

        Returns:
            The injections as M-morphisms.
        """
        return tuple(
            types_.Mor(kind=types_.Kind.M, src=src, dst=dst, table=table)
            for table in _injections(src, dst)
        )

    def e_morphisms(self, src: FinSetObj, dst: FinSetObj) -> tuple[types_.Mor, ...]:
        """Enumerate the injections src ⊸ dst.

        Args:
            src: The domain.
            dst: The codomain.

        Returns:
            The injections as E-morphisms.
        """
        tables = (
            _functions(src, dst)
            if self.mutant == FinSetMutant.NON_MONIC_E
            else _injections(src, dst)
        )
        return tuple(
            types_.Mor(kind=types_.Kind.E, src=src, dst=dst, table=table) for table in tables
        )

    def ambient_isomorphisms(self, src: FinSetObj, dst: FinSetObj) -> tuple[types_.Mor, ...]:
        """Enumerate the bijections src → dst.

        Args:
            src: The domain.
            dst: The codomain.

        Returns:
            The bijections as M-morphisms.
        """
        if len(src) != len(dst):
            return ()
        return self.m_morphisms(src, dst)

    def is_valid(self, mor: types_.Mor) -> bool:
        """Check that a morphism is an injection between its endpoints.

        Args:
            mor: The morphism.

        Returns:
            Whether the table is a total injection into the codomain.
        """
        domain = [x for x, _ in mor.table]
        images = [y for _, y in mor.table]
        injective = len(set(images)) == len(images)
        if mor.kind == types_.Kind.E and self.mutant == FinSetMutant.NON_MONIC_E:
            injective = True
        return injective and tuple(domain) == mor.src and set(images) <= set(mor.dst)

    def initial(self, obj: FinSetObj, kind: types_.Kind) -> types_.Mor:
        """Get the empty map out of the empty set.

        Args:
            obj: The codomain.
            kind: The kind of morphism.

        Returns:
            The morphism O → obj.
        """
        if self.mutant == FinSetMutant.MISSING_INITIAL:
            return super().initial(obj, kind)
        return types_.Mor(kind=kind, src=(), dst=obj, table=())

    def _well_formed(self, square: types_.DistSquare) -> bool:
        """Check the endpoints and kinds of a square.

        Args:
            square: The square.

        Returns:
            Whether every morphism runs between the right corners.
        """
        expected = (
            (square.top, types_.Kind.M, square.tl, square.tr),
            (square.left, types_.Kind.E, square.tl, square.bl),
            (square.bottom, types_.Kind.M, square.bl, square.br),
            (square.right, types_.Kind.E, square.tr, square.br),
        )
        return all(
            mor.kind == kind and mor.src == src and mor.dst == dst and self.is_valid(mor)
            for mor, kind, src, dst in expected
        )

    def is_distinguished(self, square: types_.DistSquare) -> bool:
        """Check that a square commutes, is a pullback and its images cover the corner.

        Args:
            square: The square.

        Returns:
            Whether the square is distinguished.
        """
        if not self._well_formed(square) or not core.ambient_commutes(self, square):
            return False
        if (
            self.mutant == FinSetMutant.NON_CLOSED_SQUARES
            and square.tl
            and _is_identity(square.bottom)
        ):
            return False
        bottom_image = {y for _, y in square.bottom.table}
        right_image = {y for _, y in square.right.table}
        bottom, left = square.bottom.as_dict(), square.left.as_dict()
        corner = {bottom[left[x]] for x in square.tl}
        if bottom_image & right_image != corner or len(corner) != len(square.tl):
            return False
        if self.mutant == FinSetMutant.DROP_UNION:
            return True
        return bottom_image | right_image == set(square.br)

    def is_pushout(self, square: types_.DistSquare) -> bool:
        """Check that a square is a pushout of sets.

        Args:
            square: The square.

        Returns:
            Whether the induced map from the glued set to the corner is a bijection.
        """
        if not self._well_formed(square) or not core.ambient_commutes(self, square):
            return False
        parent: dict[tuple[str, int], tuple[str, int]] = {}

        def find(node: tuple[str, int]) -> tuple[str, int]:
            """Find the root of a class.

            Args:
                node: The element.

            Returns:
                The class root.
            """
            while parent.setdefault(node, node) != node:
                node = parent[node]
            return node

        left, top = square.left.as_dict(), square.top.as_dict()
        for x in square.tl:
            parent[find(("bl", left[x]))] = find(("tr", top[x]))
        bottom, right = square.bottom.as_dict(), square.right.as_dict()
        classes: dict[tuple[str, int], int] = {}
        for tag, mapping in (("bl", bottom), ("tr", right)):
            for x, y in mapping.items():
                if classes.setdefault(find((tag, x)), y) != y:
                    return False
        images = list(classes.values())
        return len(set(images)) == len(images) and set(images) == set(square.br)

    def formal_quotient(self, mor: types_.Mor) -> types_.ExactSquare:
        """Get the complement of the image as the formal cokernel.

        Args:
            mor: The injection a ↣ b.

        Returns:
            The exact square with quotient b∖f(a) included into b.
        """
        image = {y for _, y in mor.table}
        if self.mutant == FinSetMutant.WRONG_QUOTIENT:
            quotient = tuple(sorted(image))
        else:
            quotient = tuple(x for x in mor.dst if x not in image)
        return types_.ExactSquare(
            a=mor.src,
            b=mor.dst,
            c=quotient,
            f=mor,
            g=_inclusion(types_.Kind.E, quotient, mor.dst),
        )

    def formal_kernel(self, mor: types_.Mor) -> types_.ExactSquare:
        """Get the complement of the image as the formal kernel.

        Args:
            mor: The injection c ⊸ b.

        Returns:
            The exact square with subobject b∖g(c) included into b.
        """
        image = {y for _, y in mor.table}
        kernel = tuple(x for x in mor.dst if x not in image)
        return types_.ExactSquare(
            a=kernel,
            b=mor.dst,
            c=mor.src,
            f=_inclusion(types_.Kind.M, kernel, mor.dst),
            g=mor,
        )

    def restricted_pushout(self, g: types_.Mor, f: types_.Mor) -> types_.RestrictedPushout:
        """Glue b onto c along a.

        c comes first: c ↦ its rank in c, then b∖f(a) ↦ |c| + its rank in b∖f(a).

        Args:
            g: The injection a ↣ c.
            f: The injection a ↣ b.

        Returns:
            The pushout {0..|b|+|c|-|a|-1} with its legs.
        """
        c_obj, b_obj = g.dst, f.dst
        in_c = {x: rank for rank, x in enumerate(c_obj)}
        g_map = g.as_dict()
        f_inverse = {y: x for x, y in f.table}
        fresh = (x for x in b_obj if x not in f_inverse)
        in_b = {x: len(c_obj) + rank for rank, x in enumerate(fresh)}
        in_b.update({y: in_c[g_map[x]] for y, x in f_inverse.items()})
        pushout = tuple(range(len(b_obj) + len(c_obj) - len(f.src)))
        return types_.RestrictedPushout(
            obj=pushout,
            in_b=types_.Mor(
                kind=types_.Kind.M, src=b_obj, dst=pushout, table=core.table_of(in_b)
            ),
            in_c=types_.Mor(
                kind=types_.Kind.M, src=c_obj, dst=pushout, table=core.table_of(in_c)
            ),
        )

    def direct_sum(self, x: FinSetObj, y: FinSetObj) -> types_.DirectSum:
        """Place x before y in an initial segment.

        Args:
            x: The first summand.
            y: The second summand.

        Returns:
            The sum {0..|x|+|y|-1} with its legs.
        """
        pushout = self.restricted_pushout(
            self.initial(x, types_.Kind.M), self.initial(y, types_.Kind.M)
        )
        return types_.DirectSum(
            obj=pushout.obj,
            p_x=pushout.in_c,
            p_y=pushout.in_b,
            q_x=pushout.in_c._replace(kind=types_.Kind.E),
            q_y=pushout.in_b._replace(kind=types_.Kind.E),
        )

    def standard_iso(self, src: FinSetObj, dst: FinSetObj) -> types_.Mor:
        """Get the order preserving bijection.

        Args:
            src: The domain.
            dst: The codomain of the same size.

        Returns:
            The bijection as an M-morphism.

        Raises:
            InstanceContractViolation: if the sizes differ.
        """
        if len(src) != len(dst):
            raise InstanceContractViolation(f"sets of different size, {src=!r}, {dst=!r}")
        return types_.Mor(kind=types_.Kind.M, src=src, dst=dst, table=tuple(zip(src, dst)))

    def filtration_representatives(
        self, max_size: int
    ) -> tuple[tuple[types_.Mor, types_.Mor], ...]:
        """Enumerate the standard inclusions {0..a-1} ⊆ {0..b-1} ⊆ {0..c-1}.

        Args:
            max_size: The largest c.

        Returns:
            One composable pair per size triple.
        """
        segments = self.representatives(max_size)
        return tuple(
            (
                _inclusion(types_.Kind.M, first, second),
                _inclusion(types_.Kind.M, second, third),
            )
            for third in segments
            for second in segments[: len(third) + 1]
            for first in segments[: len(second) + 1]
        )

    def canonical_form(self, diagram: types_.Diagram) -> types_.Diagram:
        """Relabel a diagram onto initial segments.

        One node of every strongly connected component that no arrow leaves is labeled in
        every possible way; other nodes are labeled by the order of their images along their
        first outgoing arrow to a labeled node. The least encoding wins, so isomorphic diagrams
        get equal forms.

        Args:
            diagram: The diagram.

        Returns:
            The canonical diagram.

        Raises:
            InvalidDiagram: if an arrow is not injective.
        """
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(diagram.nodes)))
        graph.add_edges_from((src, dst) for src, dst, _ in diagram.arrows)
        condensed = nx.condensation(graph)
        tops = sorted(
            min(condensed.nodes[component]["members"])
            for component in condensed
            if condensed.out_degree(component) == 0
        )
        best: tuple | None = None
        for orders in itertools.product(
            *(itertools.permutations(diagram.nodes[index]) for index in tops)
        ):
            labels = {
                index: {x: rank for rank, x in enumerate(order)}
                for index, order in zip(tops, orders)
            }
            _derive_labels(diagram, labels)
            encoding = tuple(
                (src, dst, _relabel(table, labels[src], labels[dst]))
                for src, dst, table in diagram.arrows
            )
            if best is None or encoding < best:
                best = encoding
        assert best is not None  # nosec
        return types_.Diagram(
            nodes=tuple(tuple(range(len(node))) for node in diagram.nodes),
            arrows=tuple(
                (src, dst, tuple(enumerate(images))) for src, dst, images in best
            ),
        )


def _relabel(
    table: types_.Table, source: dict[int, int], target: dict[int, int]
) -> tuple[int, ...]:
    """Rewrite a table in new labels.

    Args:
        table: The table.
        source: The labels of the domain.
        target: The labels of the codomain.

    Returns:
        The image labels listed by domain label.
    """
    images = [0] * len(table)
    for x, y in table:
        images[source[x]] = target[y]
    return tuple(images)


def _derive_labels(diagram: types_.Diagram, labels: dict[int, dict[int, int]]) -> None:
    """Label every node from the labels of the targets of its outgoing arrows.

    Args:
        diagram: The diagram.
        labels: The labels known so far, extended in place.

    Raises:
        InvalidDiagram: if some node stays unlabeled or an arrow is not injective.
    """
    progress = True
    while progress and len(labels) < len(diagram.nodes):
        progress = False
        for index in range(len(diagram.nodes)):
            if index in labels:
                continue
            outgoing = next(
                (
                    (dst, table)
                    for src, dst, table in diagram.arrows
                    if src == index and dst in labels
                ),
                None,
            )
            if outgoing is None:
                continue
            dst, table = outgoing
            if len({y for _, y in table}) != len(table):
                raise InvalidDiagram(f"arrow out of node {index} is not injective, {table=!r}")
            ordered = sorted(table, key=lambda pair: labels[dst][pair[1]])
            labels[index] = {x: rank for rank, (x, _) in enumerate(ordered)}
            progress = True
    if len(labels) < len(diagram.nodes):
        raise InvalidDiagram(f"nodes cannot be labeled, {diagram=!r}")


def piecewise_bijection(dexsq: types_.DoubleExactSquare) -> dict[int, int]:
    """Get the permutation of b given by f′∘f⁻¹ on im f and g′∘g⁻¹ on im g.

    Args:
        dexsq: The double exact square.

    Returns:
        The permutation of the whole object.

    Raises:
        ImagesDoNotPartition: if a component's images do not partition the whole object.
    """
    for component in dexsq:
        f_image = [y for _, y in component.f.table]
        g_image = [y for _, y in component.g.table]
        if sorted(f_image + g_image) != sorted(component.b):
            raise ImagesDoNotPartition(
                f"images do not partition {component.b!r}, {f_image=!r}, {g_image=!r}"
            )
    first, second = dexsq
    bijection = {y: second.f.as_dict()[x] for x, y in first.f.table}
    bijection.update({y: second.g.as_dict()[x] for x, y in first.g.table})
    return bijection
