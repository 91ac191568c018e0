# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Helper functions for tests."""

import json
import typing
from pathlib import Path

from src import types_


def create_json(content: typing.Any, path: Path) -> Path:
    """Write content as a JSON file.

    Args:
        content: The content to be written to the file.
        path: The file to create.

    Returns:
        The path of the file.
    """
    path.write_text(json.dumps(content), encoding="utf-8")
    return path


def matmul(
    first: typing.Sequence[typing.Sequence[int]], second: typing.Sequence[typing.Sequence[int]]
) -> list[list[int]]:
    """Multiply two integer matrices.

    Args:
        first: The left factor.
        second: The right factor.

    Returns:
        The product.
    """
    return [
        [
            sum(row[k] * second[k][column] for k in range(len(row)))
            for column in range(len(second[0]))
        ]
        for row in first
    ]


def mor(kind: types_.Kind, src: tuple, dst: tuple, images: typing.Iterable[int]) -> types_.Mor:
    """Build a finite set morphism from its images.

    Args:
        kind: The kind of morphism.
        src: The domain.
        dst: The codomain.
        images: The image of each element of the domain in order.

    Returns:
        The morphism.
    """
    return types_.Mor(kind=kind, src=src, dst=dst, table=tuple(zip(src, images)))


def swap_square() -> types_.DoubleExactSquare:
    """Build l(τ) for the transposition τ of {0, 1}.

    Returns:
        The double exact square O ↣ {0, 1} ⊸ {0, 1} twisted by the transposition.
    """
    base = ()
    whole = (0, 1)
    first = types_.ExactSquare(
        a=whole,
        b=whole,
        c=base,
        f=mor(types_.Kind.M, whole, whole, (0, 1)),
        g=mor(types_.Kind.E, base, whole, ()),
    )
    second = first._replace(f=mor(types_.Kind.M, whole, whole, (1, 0)))
    return types_.DoubleExactSquare(first=first, second=second)
