# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Types for computing K-theory of CGW categories."""

import typing
from enum import Enum

ObjId = typing.Hashable
Element = typing.Hashable
Table = tuple[tuple[Element, Element], ...]
GroupElt = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]


class Kind(str, Enum):
    """The two classes of morphisms of a CGW category.

    Attrs:
        M: The M-morphisms, drawn horizontally.
        E: The E-morphisms, drawn vertically.
    """

    M = "M"
    E = "E"


class Mor(typing.NamedTuple):
    """A morphism of a category instance.

    The table is the underlying map in the ambient category. When the instance declares that
    E-morphisms are contravariant in the ambient category, the table of an E-morphism runs from
    dst to src.

    Attrs:
        kind: Whether this is an M- or an E-morphism.
        src: The domain.
        dst: The codomain.
        table: The underlying map as sorted pairs.
    """

    kind: Kind
    src: ObjId
    dst: ObjId
    table: Table

    def as_dict(self) -> dict[Element, Element]:
        """Get the underlying map.

        Returns:
            The table as a mapping.
        """
        return dict(self.table)


class DistSquare(typing.NamedTuple):
    """A square of M- and E-morphisms.

    top: tl ↣ tr and bottom: bl ↣ br are M-morphisms, left: tl ⊸ bl and right: tr ⊸ br are
    E-morphisms.

    Attrs:
        tl: The top-left object.
        tr: The top-right object.
        bl: The bottom-left object.
        br: The bottom-right object.
        top: The top M-morphism.
        left: The left E-morphism.
        bottom: The bottom M-morphism.
        right: The right E-morphism.
    """

    tl: ObjId
    tr: ObjId
    bl: ObjId
    br: ObjId
    top: Mor
    left: Mor
    bottom: Mor
    right: Mor


class Diagram(typing.NamedTuple):
    """A finite diagram of objects and morphisms.

    Attrs:
        nodes: The objects.
        arrows: The morphisms as (source index, target index, table).
    """

    nodes: tuple[ObjId, ...]
    arrows: tuple[tuple[int, int, Table], ...]


class SquareDirection(str, Enum):
    """The direction in which two squares are pasted.

    Attrs:
        HORIZONTAL: Paste along a shared E-morphism.
        VERTICAL: Paste along a shared M-morphism.
    """

    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class ExactSquare(typing.NamedTuple):
    """A distinguished square with the basepoint at the top-left.

    Attrs:
        a: The subobject, bottom-left.
        b: The whole object, bottom-right.
        c: The quotient object, top-right.
        f: The M-morphism a ↣ b.
        g: The E-morphism c ⊸ b.
    """

    a: ObjId
    b: ObjId
    c: ObjId
    f: Mor
    g: Mor


class DoubleExactSquare(typing.NamedTuple):
    """A pair of exact squares on identical nodes.

    Attrs:
        first: The first component.
        second: The second component.
    """

    first: ExactSquare
    second: ExactSquare

    def is_diagonal(self) -> bool:
        """Check whether both components are equal.

        Returns:
            Whether the square is diagonal.
        """
        return self.first == self.second


class FiltrationDiagram(typing.NamedTuple):
    """The staircase of quotients of a composable pair p0 ↣ p1 ↣ p2.

    Attrs:
        lower: The exact square of f1 with quotient p10 (E-morphism f2).
        composite: The exact square of g1∘f1 with quotient p20 (E-morphism g2).
        upper: The exact square of g1 with quotient p21 (E-morphism h2).
        middle: The square (p10, p20, p1, p2) with top j1.
        quotient: The exact square of j1 with E-morphism j2, where h2 = g2∘j2.
    """

    lower: ExactSquare
    composite: ExactSquare
    upper: ExactSquare
    middle: DistSquare
    quotient: ExactSquare


class DirectSum(typing.NamedTuple):
    """A formal direct sum with its canonical M- and E-legs.

    Attrs:
        obj: The sum x⊕y.
        p_x: The M-morphism x ↣ x⊕y.
        p_y: The M-morphism y ↣ x⊕y.
        q_x: The E-morphism x ⊸ x⊕y.
        q_y: The E-morphism y ⊸ x⊕y.
    """

    obj: ObjId
    p_x: Mor
    p_y: Mor
    q_x: Mor
    q_y: Mor


class RestrictedPushout(typing.NamedTuple):
    """The restricted pushout of a span c ↢ a ↣ b.

    Attrs:
        obj: The object b⋆_a c.
        in_b: The M-morphism b ↣ b⋆_a c.
        in_c: The M-morphism c ↣ b⋆_a c.
    """

    obj: ObjId
    in_b: Mor
    in_c: Mor


class AddObjectSquares(typing.NamedTuple):
    """The squares obtained by adding a fixed object to an exact square a ↣ b ⊸ c.

    Attrs:
        sum_quotient: The exact square a ↣ b⊕d with quotient c⊕d.
        sum_sub: The exact square a⊕d ↣ b⊕d with quotient c.
        mixed_quotient: The square (c, c⊕d, b, b⊕d).
        mixed_sub: The square (d, c⊕d, a⊕d, b⊕d).
        permuted: The same two exact squares with the summand d placed first.
        quotient_iso: The isomorphism c⊕d → (b⊕d)/a between quotient objects.
    """

    sum_quotient: ExactSquare
    sum_sub: ExactSquare
    mixed_quotient: DistSquare
    mixed_sub: DistSquare
    permuted: tuple[ExactSquare, ExactSquare]
    quotient_iso: Mor


class Verdict(str, Enum):
    """The outcome of checking one axiom.

    Attrs:
        PASS: The axiom holds on everything enumerated.
        FAIL: The axiom fails, a witness is attached.
        SKIPPED: The axiom was not checked.
    """

    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class AxiomVerdict(typing.NamedTuple):
    """The verdict for one axiom.

    Attrs:
        axiom: The name of the axiom.
        verdict: Whether the axiom passed, failed or was skipped.
        witness: A replayable description of the falsifying data, only set on failure.
        detail: Counts or the reason for skipping.
    """

    axiom: str
    verdict: Verdict
    witness: str | None = None
    detail: str = ""


class AxiomReport(typing.NamedTuple):
    """The verdicts of all axioms for an instance.

    Attrs:
        instance: The name of the instance.
        verdicts: One verdict per axiom in check order.
    """

    instance: str
    verdicts: tuple[AxiomVerdict, ...]

    @property
    def failed(self) -> tuple[AxiomVerdict, ...]:
        """The verdicts that failed."""
        return tuple(v for v in self.verdicts if v.verdict == Verdict.FAIL)

    @property
    def skipped(self) -> tuple[AxiomVerdict, ...]:
        """The verdicts that were skipped."""
        return tuple(v for v in self.verdicts if v.verdict == Verdict.SKIPPED)


class CategoryBudget(typing.NamedTuple):
    """Bounds for enumerating a category instance.

    Attrs:
        max_object_size: The largest object size to enumerate.
        max_filtration_length: The longest filtration to enumerate.
        sample_count: The number of random samples for sampled checks.
        rng_seed: The seed for all sampling.
    """

    max_object_size: int
    max_filtration_length: int = 3
    sample_count: int = 100
    rng_seed: int = 0


class FlagRow(typing.NamedTuple):
    """The top row of a flag: a filtration together with its quotient E-morphisms.

    Attrs:
        objects: O, P_0, ..., P_n.
        m_maps: The M-morphisms between consecutive objects.
        e_maps: The E-morphisms from the quotient row into each object, starting with O ⊸ P_0.
    """

    objects: tuple[ObjId, ...]
    m_maps: tuple[Mor, ...]
    e_maps: tuple[Mor, ...]


class FlagSimplex(typing.NamedTuple):
    """An n-simplex of the S•-construction as a staircase grid.

    Row i holds the objects X[i][j] for i ≤ j ≤ n with X[i][i] = O, so X[0][j] is the filtration
    and X[i][j] for i ≥ 1 is the quotient of the i-th filtration stage in the j-th.

    Attrs:
        dim: The dimension n.
        rows: The rows of the grid.
        m_maps: Row i holds X[i][j] ↣ X[i][j+1] for i ≤ j < n.
        e_maps: Row i holds X[i+1][j] ⊸ X[i][j] for i < j ≤ n.
    """

    dim: int
    rows: tuple[tuple[ObjId, ...], ...]
    m_maps: tuple[tuple[Mor, ...], ...]
    e_maps: tuple[tuple[Mor, ...], ...]


class GSimplex(typing.NamedTuple):
    """An n-simplex of the G-construction.

    The quotient flag is stored once and shared by both filtrations.

    Attrs:
        dim: The dimension n.
        quotients: The shared quotient flag of dimension n.
        first: The top row of the first flag.
        second: The top row of the second flag.
    """

    dim: int
    quotients: FlagSimplex
    first: FlagRow
    second: FlagRow


class LoopWord(typing.NamedTuple):
    """A closed path of G-edges.

    Attrs:
        edges: The edges with orientation +1 (forwards) or -1 (backwards).
    """

    edges: tuple[tuple[GSimplex, int], ...]


class HomotopyValue(typing.NamedTuple):
    """One value of a simplicial homotopy.

    Attrs:
        operator: The monotone map [m] → [1] applied to the input edges, as its images.
        cut: The last vertex sent to 0 by the homotopy coordinate, -1 if none.
        simplex: The resulting m-simplex.
    """

    operator: tuple[int, ...]
    cut: int
    simplex: GSimplex


class ShermanTriple(typing.NamedTuple):
    """The data of a Sherman loop.

    Attrs:
        alpha: The exact square of α: A ↣ B with quotient C.
        beta: The exact square of β: A′ ↣ B′ with quotient C′.
        theta: An isomorphism (A⊕C)⊕B′ → (A′⊕C′)⊕B.
    """

    alpha: ExactSquare
    beta: ExactSquare
    theta: Mor


class AdmissibleCompletion(typing.NamedTuple):
    """The completion of an admissible triple.

    Attrs:
        obstruction: The double exact square l(T) on the quotient triangle.
        flags: The two completed staircases O ↣ P0 ↣ P1 ↣ P2.
    """

    obstruction: DoubleExactSquare
    flags: tuple[FlagSimplex, FlagSimplex]


class Grid3x3(typing.NamedTuple):
    """One component of a 3×3 diagram.

    Row i is X[i][0] ↣ X[i][1] ⊸ X[i][2], column j is X[0][j] ↣ X[1][j] ⊸ X[2][j].

    Attrs:
        row_m: The row M-morphisms.
        row_e: The row E-morphisms.
        col_m: The column M-morphisms.
        col_e: The column E-morphisms.
    """

    row_m: tuple[Mor, Mor, Mor]
    row_e: tuple[Mor, Mor, Mor]
    col_m: tuple[Mor, Mor, Mor]
    col_e: tuple[Mor, Mor, Mor]


class OptimalityWitness(typing.NamedTuple):
    """The witnesses of optimality of a 3×3 diagram, for one component.

    Attrs:
        u: X[0][1] ↣ z.
        v: z ↣ X[1][1].
        w: X[1][0] ↣ z.
    """

    u: Mor
    v: Mor
    w: Mor


class Optimal3x3(typing.NamedTuple):
    """A pair of 3×3 diagrams on shared objects with its optimality witnesses.

    Attrs:
        objects: The nine objects X[i][j].
        first: The first component.
        second: The second component.
        z: The witness object.
        witnesses: The witnesses for the first and second components.
    """

    objects: tuple[tuple[ObjId, ObjId, ObjId], ...]
    first: Grid3x3
    second: Grid3x3
    z: ObjId
    witnesses: tuple[OptimalityWitness, OptimalityWitness]


class ThreeByThreeKind(str, Enum):
    """The constructive families of optimal 3×3 diagrams.

    Attrs:
        DIRECT_SUM: Rows f, f⊕g, g.
        COMPOSITION: Columns f, g∘f and rows g and the composition obstruction.
    """

    DIRECT_SUM = "direct-sum"
    COMPOSITION = "composition"


class Matroid(typing.NamedTuple):
    """A pointed matroid given by its flats.

    Attrs:
        ground: The ground set, containing the basepoint.
        flats: The flats, each containing the basepoint.
        basepoint: The basepoint.
    """

    ground: frozenset
    flats: frozenset[frozenset]
    basepoint: Element = 0


class StrongMap(typing.NamedTuple):
    """A basepoint-preserving map of matroids whose flat preimages are flats.

    Attrs:
        src: The domain.
        dst: The codomain.
        table: The map on ground sets as sorted pairs.
    """

    src: Matroid
    dst: Matroid
    table: Table


class MorphismClass(typing.NamedTuple):
    """The classification of a strong map.

    Attrs:
        m_witness: The set S with the map a restriction to S, if any.
        e_witness: The set S with the map a contraction by S, if any.
    """

    m_witness: frozenset | None
    e_witness: frozenset | None


class AmalgamSearch(typing.NamedTuple):
    """The outcome of an amalgam search.

    Attrs:
        amalgam: The first amalgam found in search order.
        pushout: The amalgam certified universal, if any.
        amalgams: All amalgams found.
        candidates: The number of candidate flats searched over.
    """

    amalgam: Matroid | None
    pushout: Matroid | None
    amalgams: tuple[Matroid, ...]
    candidates: int


class Presentation(typing.NamedTuple):
    """A finitely presented abelian group.

    Attrs:
        generators: The generator labels.
        relations: One integer row per relation over the generators.
        representatives: A representative diagram or object per generator.
    """

    generators: tuple[str, ...]
    relations: IntMatrix
    representatives: tuple[typing.Any, ...] = ()


class SnfResult(typing.NamedTuple):
    """A Smith normal form U·M·V = D.

    Attrs:
        d: The diagonal matrix.
        u: The unimodular row transform.
        v: The unimodular column transform.
        diagonal: The nonzero diagonal entries in order.
        free_rank: The rank of the free part of the cokernel.
    """

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix
    diagonal: tuple[int, ...]
    free_rank: int

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """The diagonal entries greater than one."""
        return tuple(entry for entry in self.diagonal if entry > 1)


class OracleAudit(typing.NamedTuple):
    """The outcome of evaluating the sign homomorphism on every relation.

    Attrs:
        holds: Whether every relation maps to zero.
        violation: The index of the first offending relation.
    """

    holds: bool
    violation: int | None = None


class RelationAudit(typing.NamedTuple):
    """The outcome of checking a family of group identities.

    Attrs:
        checked: The number of identities decided.
        failed: Labels of the identities that fail.
        outside: The number of identities involving generators outside the budget.
    """

    checked: int
    failed: tuple[str, ...] = ()
    outside: int = 0


class IdentityCheck(typing.NamedTuple):
    """The outcome of checking one automorphism identity.

    Attrs:
        identity: The name of the identity.
        alpha: The first automorphism as a tuple of images.
        beta: The second automorphism as a tuple of images.
        holds: Whether it holds, None if the presentation lacks a generator.
    """

    identity: str
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    holds: bool | None


class TwoComplex(typing.NamedTuple):
    """A 2-truncated simplicial set.

    Attrs:
        vertices: The vertex labels.
        edges: The edges as (source, target) pairs.
        triangles: The 2-simplices as (d0, d1, d2) edge indices.
        degenerate: Indices of degenerate edges.
        basepoint: The base vertex.
    """

    vertices: tuple[typing.Hashable, ...]
    edges: tuple[tuple[typing.Hashable, typing.Hashable], ...]
    triangles: tuple[tuple[int, int, int], ...]
    degenerate: frozenset[int]
    basepoint: typing.Hashable


class Command(str, Enum):
    """The commands of the command line.

    Attrs:
        AXIOMS: Verify the axioms of an instance.
        K0: Compute K₀.
        K1: Compute truncated K₁.
        RELCHECK: Check the relation identities and lemma constructions.
        MATROID_AMALGAM: Search for matroid amalgams.
        ENUMERATE: Count simplices.
    """

    AXIOMS = "axioms"
    K0 = "k0"
    K1 = "k1"
    RELCHECK = "relcheck"
    MATROID_AMALGAM = "matroid-amalgam"
    ENUMERATE = "enumerate"


class InstanceName(str, Enum):
    """The category instances.

    Attrs:
        FINSET: Finite sets and injections.
        MATROID: Pointed matroids and strong maps.
    """

    FINSET = "finset"
    MATROID = "matroid"


class Scheme(str, Enum):
    """The relation schemes for K₁.

    Attrs:
        BASELINE: Standard edges, degenerate edges and 2-simplices.
        NENASHEV: Diagonal squares and optimal 3×3 diagrams.
    """

    BASELINE = "baseline"
    NENASHEV = "nenashev"


class RunConfig(typing.NamedTuple):
    """The configuration of one command line run.

    Attrs:
        command: The command to run.
        instance: The category instance.
        file: A matroid or span file.
        budget: The enumeration budget.
        dim: The simplex dimension for enumerate.
        scheme: The K₁ relation scheme.
        queries: Named element queries for k1.
        workers: The echoed worker count.
        mutant: A FinSet mutant name.
        out: The output path, standard output if None.
    """

    command: Command
    instance: InstanceName = InstanceName.FINSET
    file: str | None = None
    budget: CategoryBudget = CategoryBudget(max_object_size=3)
    dim: int = 1
    scheme: Scheme = Scheme.BASELINE
    queries: tuple[str, ...] = ()
    workers: int = 1
    mutant: str | None = None
    out: str | None = None


class ExitCode(int, Enum):
    """The exit codes of the command line.

    Attrs:
        SUCCESS: The run succeeded.
        FAILURE: A property failed, a witness was reported.
        BUDGET: A budget bound was hit or a check was skipped.
        USAGE: The command line or an input file was malformed.
    """

    SUCCESS = 0
    FAILURE = 2
    BUDGET = 3
    USAGE = 64


class Report(typing.NamedTuple):
    """The JSON report of one run.

    Attrs:
        command: The command that ran.
        config: The echoed configuration.
        result: The result payload.
        version: The version of the tool.
        exit_code: The exit code of the run.
    """

    command: str
    config: dict
    result: dict
    version: str
    exit_code: ExitCode
