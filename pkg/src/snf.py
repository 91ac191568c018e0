# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Exact integer linear algebra: Smith normal form and lattice bases."""

import bisect
import typing

from . import types_
from .exceptions import DimensionMismatch


def _identity(size: int) -> list[list[int]]:
    """Get an identity matrix.

    Args:
        size: The number of rows and columns.

    Returns:
        The identity matrix as nested lists.
    """
    return [[int(row == column) for column in range(size)] for row in range(size)]


def _freeze(matrix: list[list[int]]) -> types_.IntMatrix:
    """Convert nested lists to nested tuples.

    Args:
        matrix: The matrix to convert.

    Returns:
        The matrix as nested tuples.
    """
    return tuple(tuple(row) for row in matrix)


def _check_rectangular(matrix: typing.Sequence[typing.Sequence[int]], columns: int) -> None:
    """Check that every row has the expected length.

    Args:
        matrix: The matrix to check.
        columns: The expected row length.

    Raises:
        DimensionMismatch: if a row has a different length.
    """
    for index, row in enumerate(matrix):
        if len(row) != columns:
            raise DimensionMismatch(
                f"row {index} has length {len(row)}, expected {columns}, {row=!r}"
            )


def _swap_columns(matrix: list[list[int]], first: int, second: int) -> None:
    """Swap two columns in place.

    Args:
        matrix: The matrix to change.
        first: The index of one column.
        second: The index of the other column.
    """
    for row in matrix:
        row[first], row[second] = row[second], row[first]


def _add_row(matrix: list[list[int]], target: int, source: int, factor: int) -> None:
    """Add a multiple of one row to another in place.

    Args:
        matrix: The matrix to change.
        target: The row that changes.
        source: The row that is added.
        factor: The multiple of the source row to add.
    """
    source_row = matrix[source]
    target_row = matrix[target]
    for column, value in enumerate(source_row):
        if value:
            target_row[column] += factor * value


def _add_column(matrix: list[list[int]], target: int, source: int, factor: int) -> None:
    """Add a multiple of one column to another in place.

    Args:
        matrix: The matrix to change.
        target: The column that changes.
        source: The column that is added.
        factor: The multiple of the source column to add.
    """
    for row in matrix:
        if row[source]:
            row[target] += factor * row[source]


def _smallest_entry(matrix: list[list[int]], start: int) -> tuple[int, int] | None:
    """Find the nonzero entry of least absolute value in the trailing block.

    Args:
        matrix: The matrix to search.
        start: The first row and column of the trailing block.

    Returns:
        The position of the entry or None if the block is zero.
    """
    best: tuple[int, int] | None = None
    best_value = 0
    for row_index in range(start, len(matrix)):
        row = matrix[row_index]
        for column in range(start, len(row)):
            value = abs(row[column])
            if value and (not best_value or value < best_value):
                best, best_value = (row_index, column), value
                if value == 1:
                    return best
    return best


class _Elimination:
    """Row and column operations applied simultaneously to a matrix and its transforms.

    Attrs:
        d: The matrix being reduced.
        u: The accumulated row transform.
        v: The accumulated column transform.
    """

    def __init__(self, matrix: list[list[int]], rows: int, columns: int):
        """Construct.

        Args:
            matrix: The matrix to reduce, changed in place.
            rows: The number of rows.
            columns: The number of columns.
        """
        self.d = matrix
        self.u = _identity(rows)
        self.v = _identity(columns)

    def swap_rows(self, first: int, second: int) -> None:
        """Swap two rows.

        Args:
            first: The index of one row.
            second: The index of the other row.
        """
        if first != second:
            self.d[first], self.d[second] = self.d[second], self.d[first]
            self.u[first], self.u[second] = self.u[second], self.u[first]

    def swap_columns(self, first: int, second: int) -> None:
        """Swap two columns.

        Args:
            first: The index of one column.
            second: The index of the other column.
        """
        if first != second:
            _swap_columns(self.d, first, second)
            _swap_columns(self.v, first, second)

    def add_row(self, target: int, source: int, factor: int) -> None:
        """Add a multiple of one row to another.

        Args:
            target: The row that changes.
            source: The row that is added.
            factor: The multiple to add.
        """
        _add_row(self.d, target, source, factor)
        _add_row(self.u, target, source, factor)

    def add_column(self, target: int, source: int, factor: int) -> None:
        """Add a multiple of one column to another.

        Args:
            target: The column that changes.
            source: The column that is added.
            factor: The multiple to add.
        """
        _add_column(self.d, target, source, factor)
        _add_column(self.v, target, source, factor)

    def negate_row(self, index: int) -> None:
        """Negate a row.

        Args:
            index: The row to negate.
        """
        self.d[index] = [-value for value in self.d[index]]
        self.u[index] = [-value for value in self.u[index]]

    def clear_column(self, pivot: int) -> bool:
        """Reduce the entries below the pivot.

        Args:
            pivot: The pivot row and column.

        Returns:
            Whether the column below the pivot is now zero.
        """
        clear = True
        for row in range(pivot + 1, len(self.d)):
            if value := self.d[row][pivot]:
                self.add_row(row, pivot, -(value // self.d[pivot][pivot]))
                if self.d[row][pivot]:
                    clear = False
        if not clear:
            smallest = min(
                (row for row in range(pivot, len(self.d)) if self.d[row][pivot]),
                key=lambda row: abs(self.d[row][pivot]),
            )
            self.swap_rows(pivot, smallest)
        return clear

    def clear_row(self, pivot: int) -> bool:
        """Reduce the entries to the right of the pivot.

        Args:
            pivot: The pivot row and column.

        Returns:
            Whether the row right of the pivot is now zero.
        """
        clear = True
        pivot_row = self.d[pivot]
        for column in range(pivot + 1, len(pivot_row)):
            if value := pivot_row[column]:
                self.add_column(column, pivot, -(value // pivot_row[pivot]))
                if pivot_row[column]:
                    clear = False
        if not clear:
            smallest = min(
                (column for column in range(pivot, len(pivot_row)) if pivot_row[column]),
                key=lambda column: abs(pivot_row[column]),
            )
            self.swap_columns(pivot, smallest)
        return clear

    def non_divisible_row(self, pivot: int) -> int | None:
        """Find a row of the trailing block with an entry the pivot does not divide.

        Args:
            pivot: The pivot row and column.

        Returns:
            The row index or None if the pivot divides the whole trailing block.
        """
        divisor = self.d[pivot][pivot]
        for row in range(pivot + 1, len(self.d)):
            if any(value % divisor for value in self.d[row][pivot + 1 :]):
                return row
        return None


def smith_normal_form(
    matrix: typing.Sequence[typing.Sequence[int]], columns: int | None = None
) -> types_.SnfResult:
    """Compute the Smith normal form of an integer matrix.

    Pivots are chosen by least absolute value and the divisibility chain is restored by adding
    an offending row onto the pivot row.

    Args:
        matrix: The matrix as a sequence of rows.
        columns: The number of columns, required when the matrix has no rows.

    Returns:
        The diagonal form with unimodular transforms such that u·matrix·v = d.

    Raises:
        DimensionMismatch: if the rows have different lengths.
    """
    rows = len(matrix)
    if columns is None:
        columns = len(matrix[0]) if rows else 0
    _check_rectangular(matrix, columns)

    elimination = _Elimination([list(row) for row in matrix], rows=rows, columns=columns)
    rank = 0
    while rank < min(rows, columns):
        if (position := _smallest_entry(elimination.d, rank)) is None:
            break
        elimination.swap_rows(rank, position[0])
        elimination.swap_columns(rank, position[1])
        while True:
            if not elimination.clear_column(rank):
                continue
            if not elimination.clear_row(rank):
                continue
            if (offending := elimination.non_divisible_row(rank)) is None:
                break
            elimination.add_row(rank, offending, 1)
        if elimination.d[rank][rank] < 0:
            elimination.negate_row(rank)
        rank += 1

    diagonal = tuple(elimination.d[index][index] for index in range(rank))
    return types_.SnfResult(
        d=_freeze(elimination.d),
        u=_freeze(elimination.u),
        v=_freeze(elimination.v),
        diagonal=diagonal,
        free_rank=columns - rank,
    )


def _xgcd(first: int, second: int) -> tuple[int, int, int]:
    """Run the extended Euclidean algorithm.

    Args:
        first: One integer.
        second: The other integer.

    Returns:
        Coefficients x, y and the gcd g with x·first + y·second = g.
    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = first, second
    while next_g:
        quotient = g // next_g
        x, next_x = next_x, x - quotient * next_x
        y, next_y = next_y, y - quotient * next_y
        g, next_g = next_g, g - quotient * next_g
    return x, y, g


class Lattice:
    """A sublattice of ℤⁿ kept in row echelon form.

    Attrs:
        dimension: The ambient dimension n.
        basis: The echelon basis, ordered by pivot column.
    """

    def __init__(self, dimension: int):
        """Construct.

        Args:
            dimension: The ambient dimension.
        """
        self.dimension = dimension
        self.basis: list[list[int]] = []
        self._pivots: list[int] = []
        self._row_of_pivot: dict[int, int] = {}

    def _reindex(self) -> None:
        """Rebuild the pivot lookup after an insertion."""
        self._row_of_pivot = {pivot: index for index, pivot in enumerate(self._pivots)}

    def _reduce(self, vector: list[int], insert: bool) -> bool:
        """Reduce a vector against the basis, optionally inserting what remains.

        Args:
            vector: The vector, changed in place.
            insert: Whether to insert a nonzero remainder and merge gcd steps into the basis.

        Returns:
            Whether the vector reduced to zero.
        """
        for column in range(self.dimension):
            if not (value := vector[column]):
                continue
            if (index := self._row_of_pivot.get(column)) is None:
                if insert:
                    where = bisect.bisect_left(self._pivots, column)
                    self.basis.insert(where, vector)
                    self._pivots.insert(where, column)
                    self._reindex()
                return False
            row = self.basis[index]
            pivot = row[column]
            if value % pivot == 0:
                factor = value // pivot
                for position in range(column, self.dimension):
                    vector[position] -= factor * row[position]
                continue
            if not insert:
                return False
            x, y, gcd = _xgcd(pivot, value)
            pivot_over_gcd, value_over_gcd = pivot // gcd, value // gcd
            for position in range(column, self.dimension):
                old_row, old_vector = row[position], vector[position]
                row[position] = x * old_row + y * old_vector
                vector[position] = pivot_over_gcd * old_vector - value_over_gcd * old_row
        return True

    def add(self, vector: typing.Sequence[int]) -> None:
        """Add a vector to the lattice.

        Args:
            vector: The vector to add.

        Raises:
            DimensionMismatch: if the vector has the wrong length.
        """
        if len(vector) != self.dimension:
            raise DimensionMismatch(
                f"vector has length {len(vector)}, expected {self.dimension}, {vector=!r}"
            )
        self._reduce(list(vector), insert=True)

    def __contains__(self, vector: typing.Sequence[int]) -> bool:
        """Check whether a vector lies in the lattice.

        Args:
            vector: The vector to check.

        Returns:
            Whether the vector is an integer combination of the basis.

        Raises:
            DimensionMismatch: if the vector has the wrong length.
        """
        if len(vector) != self.dimension:
            raise DimensionMismatch(
                f"vector has length {len(vector)}, expected {self.dimension}, {vector=!r}"
            )
        return self._reduce(list(vector), insert=False)


def lattice_basis(rows: typing.Iterable[typing.Sequence[int]], dimension: int) -> types_.IntMatrix:
    """Reduce a spanning set of a lattice to an echelon basis.

    Args:
        rows: Vectors spanning the lattice.
        dimension: The ambient dimension.

    Returns:
        The echelon basis, at most dimension rows.
    """
    lattice = Lattice(dimension)
    for row in rows:
        lattice.add(row)
    return _freeze(lattice.basis)


def element_is_zero(snf: types_.SnfResult, vector: typing.Sequence[int]) -> bool:
    """Check whether a vector lies in the row space of the matrix of a Smith normal form.

    With u·m·v = d, x·m = e is solvable over ℤ iff e·v is divisible entrywise by the diagonal and
    vanishes beyond the rank.

    Args:
        snf: The Smith normal form of the relation matrix.
        vector: The coefficient vector over the columns.

    Returns:
        Whether the vector is an integer combination of the rows.

    Raises:
        DimensionMismatch: if the vector does not match the number of columns.
    """
    columns = len(snf.v)
    if len(vector) != columns:
        raise DimensionMismatch(
            f"element has {len(vector)} coefficients, expected {columns}, {vector=!r}"
        )
    transformed = [
        sum(vector[row] * snf.v[row][column] for row in range(columns) if vector[row])
        for column in range(columns)
    ]
    rank = len(snf.diagonal)
    return all(
        transformed[index] % snf.diagonal[index] == 0 for index in range(rank)
    ) and not any(transformed[rank:])
