# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Pointed matroids with strong maps, a CGW category without restricted pushouts."""

import functools
import itertools
import logging
import typing

from . import core, types_
from .exceptions import InputError, InvalidSubset, SearchBudgetExceeded

DEFAULT_MAX_GROUND = 7
MAX_CANDIDATE_FLATS = 22
MAX_ENUMERATED_SIZE = 4

Flats = frozenset[frozenset]


def _to_masks(flats: typing.Iterable[frozenset], order: typing.Sequence) -> frozenset[int]:
    """Encode flats as bitmasks.

    Args:
        flats: The flats.
        order: The elements, bit i stands for order[i].

    Returns:
        The flats as integers.
    """
    bit = {x: 1 << index for index, x in enumerate(order)}
    return frozenset(sum(bit[x] for x in flat) for flat in flats)


def _from_mask(mask: int, order: typing.Sequence) -> frozenset:
    """Decode a bitmask.

    Args:
        mask: The bitmask.
        order: The elements, bit i stands for order[i].

    Returns:
        The encoded set.
    """
    return frozenset(x for index, x in enumerate(order) if mask >> index & 1)


def _covers(masks: frozenset[int], flat: int) -> list[int]:
    """Find the flats covering a flat.

    Args:
        masks: All flats.
        flat: The flat.

    Returns:
        The minimal flats strictly containing it.
    """
    above = [other for other in masks if other != flat and other & flat == flat]
    return [
        other
        for other in above
        if not any(middle != other and middle & other == middle for middle in above)
    ]


def _mask_violation(masks: frozenset[int], full: int) -> tuple[str, tuple[int, ...]] | None:
    """Find the first violated flat axiom of a family of bitmasks.

    Args:
        masks: The family.
        full: The ground set.

    Returns:
        The axiom name and the offending flats, or None.
    """
    if full not in masks:
        return "ground", ()
    for first, second in itertools.combinations(sorted(masks), 2):
        if first & second not in masks:
            return "intersection", (first, second)
    for flat in sorted(masks):
        union = 0
        for cover in _covers(masks, flat):
            difference = cover & ~flat
            if union & difference:
                return "partition", (flat, cover)
            union |= difference
        if union != full & ~flat:
            return "partition", (flat,)
    return None


def flat_axiom_violation(flats: typing.Iterable[frozenset], ground: frozenset) -> str | None:
    """Describe the first flat axiom a family violates.

    Args:
        flats: The family of subsets.
        ground: The ground set.

    Returns:
        A description naming the axiom and the offending flats, or None if all axioms hold.
    """
    order = sorted(ground)
    masks = _to_masks(flats, order)
    if (violation := _mask_violation(masks, (1 << len(order)) - 1)) is None:
        return None
    axiom, witnesses = violation
    named = [sorted(_from_mask(mask, order)) for mask in witnesses]
    match axiom:
        case "ground":
            return f"ground set {order!r} is not a flat"
        case "intersection":
            return f"intersection of flats {named!r} is not a flat"
        case _:
            return f"covers of flat {named[0]!r} do not partition its complement, {named!r}"


def is_matroid(flats: typing.Iterable[frozenset], ground: frozenset) -> bool:
    """Check the flat axioms.

    Args:
        flats: The family of subsets.
        ground: The ground set.

    Returns:
        Whether the family is the set of flats of a matroid on ground.
    """
    return flat_axiom_violation(flats, ground) is None


def make_matroid(
    ground: typing.Iterable, flats: typing.Iterable[typing.Iterable], basepoint: typing.Hashable
) -> types_.Matroid:
    """Build a pointed matroid and check it.

    Args:
        ground: The ground set.
        flats: The flats.
        basepoint: The basepoint, a loop.

    Returns:
        The matroid.

    Raises:
        InputError: if the flats violate an axiom or miss the basepoint.
    """
    ground_set = frozenset(ground)
    flat_sets = frozenset(frozenset(flat) for flat in flats)
    if basepoint not in ground_set or not all(basepoint in flat for flat in flat_sets):
        raise InputError(f"basepoint {basepoint!r} is not a loop, {flat_sets=!r}")
    if not all(flat <= ground_set for flat in flat_sets):
        raise InputError(f"flats leave the ground set {ground_set!r}")
    if (violation := flat_axiom_violation(flat_sets, ground_set)) is not None:
        raise InputError(f"not a matroid: {violation}")
    return types_.Matroid(ground=ground_set, flats=flat_sets, basepoint=basepoint)


def _check_subset(matroid: types_.Matroid, subset: frozenset) -> None:
    """Check that a subset avoids the basepoint and lies in the ground set.

    Args:
        matroid: The matroid.
        subset: The subset.

    Raises:
        InvalidSubset: otherwise.
    """
    if matroid.basepoint in subset or not subset <= matroid.ground:
        raise InvalidSubset(
            f"subset must lie in the ground set without the basepoint, {subset=!r}, "
            f"ground={sorted(matroid.ground)!r}"
        )


def restriction(matroid: types_.Matroid, subset: typing.Iterable) -> types_.Matroid:
    """Restrict to a subset, keeping the basepoint.

    Args:
        matroid: The matroid.
        subset: The subset, without the basepoint.

    Returns:
        The restriction with flats F ∩ (subset ∪ {•}).
    """
    kept = frozenset(subset)
    _check_subset(matroid, kept)
    kept |= {matroid.basepoint}
    return types_.Matroid(
        ground=kept,
        flats=frozenset(flat & kept for flat in matroid.flats),
        basepoint=matroid.basepoint,
    )


def contraction(matroid: types_.Matroid, subset: typing.Iterable) -> types_.Matroid:
    """Contract a subset, keeping the remaining labels.

    Args:
        matroid: The matroid.
        subset: The subset, without the basepoint.

    Returns:
        The contraction with flats F ∖ subset for flats F containing subset.
    """
    removed = frozenset(subset)
    _check_subset(matroid, removed)
    return types_.Matroid(
        ground=matroid.ground - removed,
        flats=frozenset(flat - removed for flat in matroid.flats if removed <= flat),
        basepoint=matroid.basepoint,
    )


def closure(matroid: types_.Matroid, subset: typing.Iterable) -> frozenset:
    """Get the smallest flat containing a subset.

    Args:
        matroid: The matroid.
        subset: The subset.

    Returns:
        The closure.
    """
    needed = frozenset(subset)
    return functools.reduce(
        frozenset.intersection,
        (flat for flat in matroid.flats if needed <= flat),
        matroid.ground,
    )


def rank(matroid: types_.Matroid, subset: typing.Iterable | None = None) -> int:
    """Get the rank of a subset, the height of its closure in the lattice of flats.

    Args:
        matroid: The matroid.
        subset: The subset, the whole ground set if None.

    Returns:
        The rank.
    """
    target = closure(matroid, matroid.ground if subset is None else subset)
    heights: dict[frozenset, int] = {}
    for flat in sorted(matroid.flats, key=len):
        below = [heights[other] for other in heights if other < flat]
        heights[flat] = max(below, default=-1) + 1
    return heights[target]


def direct_sum(first: types_.Matroid, second: types_.Matroid) -> types_.DirectSum:
    """Sum two pointed matroids on relabeled disjoint copies glued at the basepoint.

    Args:
        first: The first summand.
        second: The second summand.

    Returns:
        The sum with flats F₁ ⊔ F₂, labeled 0 for the basepoint, then first, then second.
    """
    first_elements = sorted(first.ground - {first.basepoint})
    second_elements = sorted(second.ground - {second.basepoint})
    first_label = {x: index + 1 for index, x in enumerate(first_elements)}
    second_label = {x: index + 1 + len(first_elements) for index, x in enumerate(second_elements)}
    first_label[first.basepoint] = second_label[second.basepoint] = 0
    total = types_.Matroid(
        ground=frozenset(range(len(first_elements) + len(second_elements) + 1)),
        flats=frozenset(
            frozenset(first_label[x] for x in first_flat)
            | frozenset(second_label[x] for x in second_flat)
            for first_flat in first.flats
            for second_flat in second.flats
        ),
        basepoint=0,
    )
    legs = []
    for summand, label in ((first, first_label), (second, second_label)):
        back = {y: x for x, y in label.items()}
        legs.append(
            (
                types_.Mor(
                    kind=types_.Kind.M, src=summand, dst=total, table=core.table_of(label)
                ),
                types_.Mor(
                    kind=types_.Kind.E,
                    src=summand,
                    dst=total,
                    table=core.table_of(
                        {y: back.get(y, summand.basepoint) for y in total.ground}
                    ),
                ),
            )
        )
    (p_x, q_x), (p_y, q_y) = legs
    return types_.DirectSum(obj=total, p_x=p_x, p_y=p_y, q_x=q_x, q_y=q_y)


def _preimages(
    table: typing.Mapping, src: types_.Matroid, dst: types_.Matroid
) -> frozenset[frozenset]:
    """Pull back the flats of the codomain.

    Args:
        table: The map src → dst.
        src: The domain.
        dst: The codomain.

    Returns:
        The preimages of all flats of dst.
    """
    return frozenset(
        frozenset(x for x in src.ground if table[x] in flat) for flat in dst.flats
    )


def is_strong_map(mor: types_.StrongMap) -> bool:
    """Check that a map preserves the basepoint and pulls flats back to flats.

    Args:
        mor: The map.

    Returns:
        Whether it is a strong map.
    """
    table = dict(mor.table)
    return (
        set(table) == set(mor.src.ground)
        and set(table.values()) <= set(mor.dst.ground)
        and table[mor.src.basepoint] == mor.dst.basepoint
        and _preimages(table, mor.src, mor.dst) <= mor.src.flats
    )


def strong_maps(src: types_.Matroid, dst: types_.Matroid) -> tuple[types_.StrongMap, ...]:
    """Enumerate the strong maps between two matroids.

    Args:
        src: The domain.
        dst: The codomain.

    Returns:
        All strong maps src → dst.
    """
    moving = sorted(src.ground - {src.basepoint})
    found = []
    for images in itertools.product(sorted(dst.ground), repeat=len(moving)):
        table = dict(zip(moving, images))
        table[src.basepoint] = dst.basepoint
        candidate = types_.StrongMap(src=src, dst=dst, table=core.table_of(table))
        if is_strong_map(candidate):
            found.append(candidate)
    return tuple(found)


def _restriction_witness(
    table: typing.Mapping, src: types_.Matroid, dst: types_.Matroid
) -> frozenset | None:
    """Find S with the map an isomorphism onto the restriction of dst to S.

    Args:
        table: The map src → dst.
        src: The domain.
        dst: The codomain.

    Returns:
        S or None if the map is not a restriction.
    """
    images = [table[x] for x in src.ground]
    if len(set(images)) != len(images) or table.get(src.basepoint) != dst.basepoint:
        return None
    if _preimages(table, src, dst) != src.flats:
        return None
    return frozenset(images) - {dst.basepoint}


def _contraction_witness(
    table: typing.Mapping, src: types_.Matroid, dst: types_.Matroid
) -> frozenset | None:
    """Find S with the map the quotient of src onto the contraction src/S ≅ dst.

    Args:
        table: The map src → dst.
        src: The domain.
        dst: The codomain.

    Returns:
        S or None if the map is not a contraction.
    """
    if table.get(src.basepoint) != dst.basepoint:
        return None
    kernel = frozenset(x for x in src.ground if table[x] == dst.basepoint)
    rest = [table[x] for x in src.ground - kernel]
    if len(set(rest)) != len(rest) or set(rest) != set(dst.ground - {dst.basepoint}):
        return None
    above = frozenset(flat for flat in src.flats if kernel <= flat)
    if _preimages(table, src, dst) != above:
        return None
    return kernel - {src.basepoint}


def classify_morphism(mor: types_.StrongMap) -> types_.MorphismClass:
    """Decide whether a strong map is a restriction, a contraction, both or neither.

    Args:
        mor: The strong map.

    Returns:
        The witnesses S of either factorization.
    """
    table = dict(mor.table)
    return types_.MorphismClass(
        m_witness=_restriction_witness(table, mor.src, mor.dst),
        e_witness=_contraction_witness(table, mor.src, mor.dst),
    )


def is_monic(mor: types_.StrongMap, max_test_size: int = 1) -> bool:
    """Check that a strong map cancels on the left against maps out of small matroids.

    Args:
        mor: The strong map f.
        max_test_size: The largest test matroid T, counted without its basepoint.

    Returns:
        Whether f∘g = f∘h implies g = h for all strong maps g, h: T → src.
    """
    after = dict(mor.table)
    for size in range(max_test_size + 1):
        for test in all_matroids(size):
            composites: dict[types_.Table, types_.Table] = {}
            for before in strong_maps(test, mor.src):
                composite = tuple((x, after[y]) for x, y in before.table)
                if composites.setdefault(composite, before.table) != before.table:
                    logging.debug("strong map %s is not monic", mor.table)
                    return False
    return True


def point_matroid(label: typing.Hashable = 0) -> types_.Matroid:
    """Get the matroid with only the basepoint.

    Args:
        label: The basepoint label.

    Returns:
        The initial object O.
    """
    return types_.Matroid(
        ground=frozenset({label}), flats=frozenset({frozenset({label})}), basepoint=label
    )


def free_matroid(elements: typing.Iterable, basepoint: typing.Hashable = 0) -> types_.Matroid:
    """Get the free matroid, every subset containing the basepoint is a flat.

    Args:
        elements: The non-basepoint elements.
        basepoint: The basepoint.

    Returns:
        The free matroid.
    """
    rest = sorted(elements)
    return types_.Matroid(
        ground=frozenset(rest) | {basepoint},
        flats=frozenset(
            frozenset(chosen) | {basepoint}
            for size in range(len(rest) + 1)
            for chosen in itertools.combinations(rest, size)
        ),
        basepoint=basepoint,
    )


def uniform_matroid(
    rank_: int, elements: typing.Iterable, basepoint: typing.Hashable = 0
) -> types_.Matroid:
    """Get the uniform matroid with a loop basepoint.

    Args:
        rank_: The rank.
        elements: The non-basepoint elements.
        basepoint: The basepoint.

    Returns:
        The matroid whose flats are the subsets smaller than the rank and the ground set.
    """
    rest = sorted(elements)
    flats = {frozenset(rest) | {basepoint}}
    for size in range(min(rank_, len(rest) + 1)):
        flats.update(
            frozenset(chosen) | {basepoint} for chosen in itertools.combinations(rest, size)
        )
    return types_.Matroid(
        ground=frozenset(rest) | {basepoint}, flats=frozenset(flats), basepoint=basepoint
    )


def canonical_matroid(matroid: types_.Matroid) -> types_.Matroid:
    """Relabel onto {0..n} with the basepoint 0 by the least flat encoding.

    Args:
        matroid: The matroid.

    Returns:
        The canonical representative of its isomorphism class.
    """
    return _canonical(matroid.ground, matroid.flats, matroid.basepoint)


@functools.cache
def _canonical(ground: frozenset, flats: Flats, basepoint: typing.Hashable) -> types_.Matroid:
    """Relabel a matroid canonically.

    Args:
        ground: The ground set.
        flats: The flats.
        basepoint: The basepoint.

    Returns:
        The canonical matroid.
    """
    rest = sorted(ground - {basepoint})
    best: tuple[int, ...] | None = None
    for order in itertools.permutations(rest):
        encoding = tuple(sorted(_to_masks(flats, (basepoint, *order))))
        if best is None or encoding < best:
            best = encoding
    assert best is not None  # nosec
    labels = range(len(rest) + 1)
    return types_.Matroid(
        ground=frozenset(labels),
        flats=frozenset(_from_mask(mask, labels) for mask in best),
        basepoint=0,
    )


@functools.cache
def _labelled_families(size: int) -> tuple[frozenset[int], ...]:
    """Enumerate the flat families of matroids on {1..size} as bitmasks over bits 1..size.

    Every flat of a single-element extension is G or G ∪ {e} for a flat G of the deletion, so
    each family extends a family on one element fewer.

    Args:
        size: The number of non-basepoint elements.

    Returns:
        All labelled families.
    """
    if size == 0:
        return (frozenset({0}),)
    bit = 1 << size
    full = (1 << (size + 1)) - 2
    found = set()
    for smaller in _labelled_families(size - 1):
        options = [((flat,), (flat | bit,), (flat, flat | bit)) for flat in sorted(smaller)]
        for choice in itertools.product(*options):
            family = frozenset(itertools.chain.from_iterable(choice))
            if _mask_violation(frozenset(mask >> 1 for mask in family), full >> 1) is None:
                found.add(family)
    return tuple(sorted(found, key=sorted))


def all_matroids(size: int) -> tuple[types_.Matroid, ...]:
    """Enumerate pointed matroids with a given number of non-basepoint elements.

    Args:
        size: The number of non-basepoint elements.

    Returns:
        One canonical matroid per isomorphism class.

    Raises:
        SearchBudgetExceeded: if size exceeds the enumeration bound.
    """
    if size > MAX_ENUMERATED_SIZE:
        raise SearchBudgetExceeded(
            f"matroid enumeration is bounded by {MAX_ENUMERATED_SIZE} elements, {size=}"
        )
    labels = range(size + 1)
    classes: dict[types_.Matroid, None] = {}
    for family in _labelled_families(size):
        flats = frozenset(_from_mask(mask | 1, labels) for mask in family)
        classes.setdefault(_canonical(frozenset(labels), flats, 0), None)
    logging.info("matroids with %s elements: %s classes", size, len(classes))
    return tuple(classes)


def _e_table(table: typing.Mapping, src: types_.Matroid, dst: types_.Matroid) -> bool:
    """Check that a table dst → src is the quotient map of a contraction.

    Args:
        table: The map from dst to src.
        src: The contracted matroid.
        dst: The matroid being contracted.

    Returns:
        Whether the map is a contraction dst → dst/S ≅ src.
    """
    return _contraction_witness(table, dst, src) is not None


class MatroidCategory(core.CategoryInstance):
    """Pointed matroids with restrictions as M- and contractions as E-morphisms.

    E-morphisms x ⊸ y are stored as their quotient maps y → x.

    Attrs:
        extra_objects: Objects enumerated in addition to all small matroids.
    """

    name = "matroid"
    is_pcgw = False
    e_contravariant = True

    def __init__(self, extra_objects: typing.Iterable[types_.Matroid] = ()):
        """Construct.

        Args:
            extra_objects: Matroids to enumerate regardless of size, canonicalized.
        """
        self.basepoint = point_matroid()
        self.extra_objects = tuple(canonical_matroid(matroid) for matroid in extra_objects)

    def objects(self, max_size: int) -> tuple[types_.Matroid, ...]:
        """Enumerate canonical matroids up to a size and the extra objects.

        Args:
            max_size: The largest number of non-basepoint elements.

        Returns:
            The matroids, smallest first.
        """
        found = {
            matroid: None
            for size in range(min(max_size, MAX_ENUMERATED_SIZE) + 1)
            for matroid in all_matroids(size)
        }
        found.update((matroid, None) for matroid in self.extra_objects)
        return tuple(found)

    def representatives(self, max_size: int) -> tuple[types_.Matroid, ...]:
        """Enumerate canonical matroids, already one per class.

        Args:
            max_size: The largest number of non-basepoint elements.

        Returns:
            The same matroids as objects.
        """
        return self.objects(max_size)

    def object_class(self, obj: types_.Matroid) -> types_.Matroid:
        """Get the canonical relabeling.

        Args:
            obj: The matroid.

        Returns:
            The canonical matroid.
        """
        return canonical_matroid(obj)

    def elements(self, obj: types_.Matroid) -> tuple:
        """Get the ground set in order.

        Args:
            obj: The matroid.

        Returns:
            The sorted ground set.
        """
        return tuple(sorted(obj.ground))

    def size(self, obj: types_.Matroid) -> int:
        """Count the elements other than the basepoint.

        Args:
            obj: The matroid.

        Returns:
            The number of non-basepoint elements.
        """
        return len(obj.ground) - 1

    def m_morphisms(
        self, src: types_.Matroid, dst: types_.Matroid
    ) -> tuple[types_.Mor, ...]:
        """Enumerate the restriction maps src ↣ dst.

        Args:
            src: The domain.
            dst: The codomain.

        Returns:
            The injective maps identifying src with a restriction of dst.
        """
        return _m_morphisms(src, dst)

    def e_morphisms(
        self, src: types_.Matroid, dst: types_.Matroid
    ) -> tuple[types_.Mor, ...]:
        """Enumerate the contractions src ⊸ dst.

        Args:
            src: The domain, a contraction of dst.
            dst: The codomain.

        Returns:
            The quotient maps dst → src identifying src with a contraction of dst.
        """
        return _e_morphisms(src, dst)

    def ambient_isomorphisms(
        self, src: types_.Matroid, dst: types_.Matroid
    ) -> tuple[types_.Mor, ...]:
        """Enumerate the matroid isomorphisms.

        Args:
            src: The domain.
            dst: The codomain.

        Returns:
            The bijections matching flats and basepoints, as M-morphisms.
        """
        if len(src.ground) != len(dst.ground):
            return ()
        return _m_morphisms(src, dst)

    def is_valid(self, mor: types_.Mor) -> bool:
        """Check a restriction or contraction map directly.

        Args:
            mor: The morphism.

        Returns:
            Whether it belongs to the instance.
        """
        table = mor.as_dict()
        match mor.kind:
            case types_.Kind.M:
                if set(table) != set(mor.src.ground):
                    return False
                return _restriction_witness(table, mor.src, mor.dst) is not None
            case types_.Kind.E:
                if set(table) != set(mor.dst.ground):
                    return False
                return _e_table(table, mor.src, mor.dst)

    def initial(self, obj: types_.Matroid, kind: types_.Kind) -> types_.Mor:
        """Get the map out of the point matroid.

        Args:
            obj: The codomain.
            kind: The kind of morphism.

        Returns:
            The basepoint inclusion, or the contraction of everything.
        """
        if kind == types_.Kind.M:
            table = ((0, obj.basepoint),)
        else:
            table = core.table_of({x: 0 for x in obj.ground})
        return types_.Mor(kind=kind, src=self.basepoint, dst=obj, table=table)

    def is_distinguished(self, square: types_.DistSquare) -> bool:
        """Recognize the squares of the form (P|S)/T → P/T over P|S → P with T ⊆ S.

        Args:
            square: The square.

        Returns:
            Whether all morphisms are valid, the square commutes, the contracted set lies in
            the restricted image, the top image equals the image of the restricted part and
            the left kernel is the preimage of the contracted set.
        """
        kinds = (
            (square.top, types_.Kind.M, square.tl, square.tr),
            (square.left, types_.Kind.E, square.tl, square.bl),
            (square.bottom, types_.Kind.M, square.bl, square.br),
            (square.right, types_.Kind.E, square.tr, square.br),
        )
        if not all(
            mor.kind == kind and mor.src == src and mor.dst == dst and self.is_valid(mor)
            for mor, kind, src, dst in kinds
        ):
            return False
        if not core.ambient_commutes(self, square):
            return False
        bottom, right = square.bottom.as_dict(), square.right.as_dict()
        left, top = square.left.as_dict(), square.top.as_dict()
        restricted = frozenset(bottom.values())
        contracted = frozenset(x for x, y in right.items() if y == square.tr.basepoint)
        if not contracted <= restricted:
            return False
        left_kernel = frozenset(x for x, y in left.items() if y == square.tl.basepoint)
        if left_kernel != frozenset(x for x, y in bottom.items() if y in contracted):
            return False
        return frozenset(top.values()) == frozenset(right[y] for y in restricted)

    def formal_quotient(self, mor: types_.Mor) -> types_.ExactSquare:
        """Contract the image of a restriction.

        Args:
            mor: The restriction a ↣ b.

        Returns:
            The exact square with quotient b/f(a) and its quotient map.
        """
        image = frozenset(y for _, y in mor.table) - {mor.dst.basepoint}
        quotient = contraction(mor.dst, image)
        table = {y: (mor.dst.basepoint if y in image else y) for y in mor.dst.ground}
        return types_.ExactSquare(
            a=mor.src,
            b=mor.dst,
            c=quotient,
            f=mor,
            g=types_.Mor(
                kind=types_.Kind.E, src=quotient, dst=mor.dst, table=core.table_of(table)
            ),
        )

    def formal_kernel(self, mor: types_.Mor) -> types_.ExactSquare:
        """Restrict to the contracted set of a contraction.

        Args:
            mor: The contraction c ⊸ b.

        Returns:
            The exact square with subobject b restricted to the contracted set.
        """
        whole = mor.dst
        contracted = frozenset(
            x for x, y in mor.table if y == mor.src.basepoint
        ) - {whole.basepoint}
        kernel = restriction(whole, contracted)
        return types_.ExactSquare(
            a=kernel,
            b=whole,
            c=mor.src,
            f=types_.Mor(
                kind=types_.Kind.M,
                src=kernel,
                dst=whole,
                table=core.table_of({x: x for x in kernel.ground}),
            ),
            g=mor,
        )

    def direct_sum(self, x: types_.Matroid, y: types_.Matroid) -> types_.DirectSum:
        """Sum two matroids.

        Args:
            x: The first summand.
            y: The second summand.

        Returns:
            The sum with flats F₁ ⊔ F₂.
        """
        return direct_sum(x, y)


@functools.cache
def _m_morphisms(src: types_.Matroid, dst: types_.Matroid) -> tuple[types_.Mor, ...]:
    """Enumerate restriction maps.

    Args:
        src: The domain.
        dst: The codomain.

    Returns:
        The M-morphisms src ↣ dst.
    """
    moving = sorted(src.ground - {src.basepoint})
    targets = sorted(dst.ground - {dst.basepoint})
    found = []
    for images in itertools.permutations(targets, len(moving)):
        table = dict(zip(moving, images))
        table[src.basepoint] = dst.basepoint
        if _preimages(table, src, dst) == src.flats:
            found.append(
                types_.Mor(kind=types_.Kind.M, src=src, dst=dst, table=core.table_of(table))
            )
    return tuple(found)


@functools.cache
def _e_morphisms(src: types_.Matroid, dst: types_.Matroid) -> tuple[types_.Mor, ...]:
    """Enumerate contraction maps, stored from dst to src.

    Args:
        src: The contracted matroid.
        dst: The matroid being contracted.

    Returns:
        The E-morphisms src ⊸ dst.
    """
    rest = sorted(dst.ground - {dst.basepoint})
    targets = sorted(src.ground - {src.basepoint})
    if len(targets) > len(rest):
        return ()
    found = []
    for kernel in itertools.combinations(rest, len(rest) - len(targets)):
        remaining = [x for x in rest if x not in kernel]
        for images in itertools.permutations(targets):
            table = dict(zip(remaining, images))
            table.update({x: src.basepoint for x in (*kernel, dst.basepoint)})
            if _e_table(table, src, dst):
                found.append(
                    types_.Mor(
                        kind=types_.Kind.E, src=src, dst=dst, table=core.table_of(table)
                    )
                )
    return tuple(found)


def _amalgam_candidates(
    first: types_.Matroid, second: types_.Matroid, ground: typing.Sequence
) -> list[int]:
    """List the subsets meeting both members of a span in flats.

    Args:
        first: One member of the span.
        second: The other member of the span.
        ground: The union of the ground sets, basepoint first.

    Returns:
        The candidate flats as bitmasks, largest first.
    """
    candidates = []
    rest = ground[1:]
    for size in range(len(rest), -1, -1):
        for chosen in itertools.combinations(rest, size):
            subset = frozenset(chosen) | {ground[0]}
            if subset & first.ground in first.flats and subset & second.ground in second.flats:
                candidates.append(sum(1 << ground.index(x) for x in subset))
    return candidates


def _closure_systems(candidates: list[int]) -> typing.Iterator[frozenset[int]]:
    """Enumerate the intersection closed subfamilies containing the first candidate.

    Args:
        candidates: Bitmasks ordered so that no set precedes a superset.

    Yields:
        Every intersection closed family of candidates that contains candidates[0].
    """
    position = {mask: index for index, mask in enumerate(candidates)}

    def extend(index: int, chosen: frozenset[int], required: frozenset[int]):
        """Decide the candidate at index.

        Args:
            index: The candidate to decide.
            chosen: The candidates included so far.
            required: Intersections that must be included later.

        Yields:
            The completed families.
        """
        if index == len(candidates):
            yield chosen
            return
        mask = candidates[index]
        meets = {mask & other for other in chosen}
        if all(meet in position for meet in meets):
            yield from extend(index + 1, chosen | {mask}, required | meets)
        if mask not in required:
            yield from extend(index + 1, chosen, required)

    yield from extend(1, frozenset({candidates[0]}), frozenset())


def _restricts_to(masks: frozenset[int], member: types_.Matroid, ground: typing.Sequence) -> bool:
    """Check that a family of flats restricts to a member of the span.

    Args:
        masks: The flats on the union.
        member: The member.
        ground: The union, bit i stands for ground[i].

    Returns:
        Whether the restricted flats are exactly the member's flats.
    """
    member_mask = sum(1 << ground.index(x) for x in member.ground)
    return {mask & member_mask for mask in masks} == _to_masks(member.flats, ground)


def _fold_maps(
    first: types_.Matroid, second: types_.Matroid, shared: frozenset
) -> typing.Iterator[dict]:
    """Enumerate maps of the union onto one member fixing it, strong on the other member.

    Args:
        first: The member mapped onto.
        second: The member folded onto first.
        shared: The common elements.

    Yields:
        Maps from the union to the ground of first.
    """
    moving = sorted(second.ground - shared)
    for images in itertools.product(sorted(first.ground), repeat=len(moving)):
        fold = {x: x for x in first.ground}
        fold.update(zip(moving, images))
        restricted = {x: fold[x] for x in second.ground}
        if _preimages(restricted, second, first) <= second.flats:
            yield fold


def _is_universal(
    candidate: types_.Matroid,
    amalgams: typing.Sequence[types_.Matroid],
    first: types_.Matroid,
    second: types_.Matroid,
) -> bool:
    """Test an amalgam against every cocone of the catalog.

    Args:
        candidate: The amalgam.
        amalgams: All amalgams, each a cocone through the identity of the union.
        first: One member of the span.
        second: The other member.

    Returns:
        Whether every cocone factors through the candidate by a strong map.
    """
    if not all(other.flats <= candidate.flats for other in amalgams):
        return False
    shared = first.ground & second.ground
    for target, folded in ((first, second), (second, first)):
        for fold in _fold_maps(target, folded, shared):
            if not _preimages(fold, candidate, target) <= candidate.flats:
                return False
    return True


def amalgam_search(
    first: types_.Matroid,
    second: types_.Matroid,
    base: types_.Matroid | None = None,
    max_ground: int = DEFAULT_MAX_GROUND,
    workers: int = 1,
) -> types_.AmalgamSearch:
    """Search all matroids on the union of a span for amalgams and a universal amalgam.

    Amalgams are ranked by their number of flats, so when the whole candidate family is a
    matroid it is the first amalgam tested for universality. Every amalgam is certified
    against the same cocone catalog.

    Args:
        first: The matroid M0.
        second: The matroid M1.
        base: The common restriction N, checked against both members if given.
        max_ground: The largest union ground set searched, basepoint included.
        workers: The number of worker threads testing candidate families.

    Returns:
        The amalgams found, the first one and the universal one if certified.

    Raises:
        InputError: if the members do not restrict to a common matroid.
        SearchBudgetExceeded: if the union or the candidate family is too large.
    """
    if first.basepoint != second.basepoint:
        raise InputError(
            f"span members have different basepoints, {first.basepoint!r}, {second.basepoint!r}"
        )
    shared = (first.ground & second.ground) - {first.basepoint}
    common = restriction(first, shared)
    if restriction(second, shared) != common or (base is not None and base != common):
        raise InputError(
            f"span members do not restrict to a common matroid on {sorted(shared)!r}"
        )
    union = first.ground | second.ground
    if len(union) > max_ground:
        raise SearchBudgetExceeded(
            f"union ground set has {len(union)} elements, bound is {max_ground}"
        )
    ground = [first.basepoint, *sorted(union - {first.basepoint})]
    candidates = _amalgam_candidates(first, second, ground)
    if len(candidates) > MAX_CANDIDATE_FLATS:
        raise SearchBudgetExceeded(
            f"{len(candidates)} candidate flats, bound is {MAX_CANDIDATE_FLATS}"
        )
    logging.info("amalgam search over %s candidate flats on %s", len(candidates), ground)

    full = (1 << len(ground)) - 1

    def amalgam_of(family: frozenset[int]) -> types_.Matroid | None:
        """Turn a candidate family into an amalgam.

        Args:
            family: The candidate flats.

        Returns:
            The amalgam, None if the family is not a matroid restricting to both members.
        """
        if (
            _mask_violation(family, full) is None
            and _restricts_to(family, first, ground)
            and _restricts_to(family, second, ground)
        ):
            return types_.Matroid(
                ground=frozenset(union),
                flats=frozenset(_from_mask(mask, ground) for mask in family),
                basepoint=first.basepoint,
            )
        return None

    found = core.ordered_map(amalgam_of, _closure_systems(candidates), workers)
    amalgams = sorted(
        (amalgam for amalgam in found if amalgam is not None),
        key=lambda matroid: -len(matroid.flats),
    )
    universal = core.ordered_map(
        lambda amalgam: _is_universal(amalgam, amalgams, first, second), amalgams, workers
    )
    pushout = next(
        (amalgam for amalgam, certified in zip(amalgams, universal) if certified), None
    )
    logging.info("amalgams found: %s, universal: %s", len(amalgams), pushout is not None)
    return types_.AmalgamSearch(
        amalgam=amalgams[0] if amalgams else None,
        pushout=pushout,
        amalgams=tuple(amalgams),
        candidates=len(candidates),
    )
