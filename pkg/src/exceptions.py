# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Exceptions for computing K-theory of CGW categories."""


class BaseError(Exception):
    """All raised exceptions inherit from this one."""


class InputError(BaseError):
    """A problem with the user input occurred."""


class InstanceContractViolation(BaseError):
    """A category instance returned data that does not fit the instance contract."""


class BudgetExhausted(BaseError):
    """An enumeration was truncated by the budget before a verdict was reached."""


class EdgeMismatch(BaseError):
    """Two squares do not share the edge they are pasted along."""


class NotComposable(BaseError):
    """Morphisms or diagrams that were expected to compose do not."""


class NotPCGW(BaseError):
    """A pCGW construction was requested from a CGW-only instance."""


class ImagesDoNotPartition(BaseError):
    """The images of an exact square do not partition its bottom-right object."""


class InvalidSubset(BaseError):
    """A subset is not admissible for a matroid operation."""


class SearchBudgetExceeded(BaseError):
    """An exhaustive search exceeded its configured size bound."""


class QuotientMismatch(BaseError):
    """One-simplices that should share a quotient object do not."""


class InvalidTheta(BaseError):
    """The isomorphism of a Sherman triple is not an isomorphism of the stated sums."""


class NotAdmissible(BaseError):
    """A triple of edges does not compose on the nose."""


class InvalidDiagram(BaseError):
    """A diagram fails a structural or optimality check."""


class DimensionMismatch(BaseError):
    """A vector does not match the dimension of a presentation."""


class Disconnected(BaseError):
    """A simplicial set is not connected at its basepoint."""


class AxiomFailure(BaseError):
    """A counterexample to an axiom was found.

    Attrs:
        witness: The offending data.
        detail: What went wrong.
    """

    def __init__(self, witness: object, detail: str):
        """Construct.

        Args:
            witness: The offending data.
            detail: What went wrong.
        """
        super().__init__(detail)
        self.witness = witness
        self.detail = detail
