"""Finite point sets, function families, level classes, and their incidence matrix.

A family h_1,...,h_r of rational-valued functions on a finite point set X
induces, for each function index i, a partition of X into level classes
(maximal sets of points sharing one value of h_i). Classes are keyed by the
pair (i, value): classes of different function indices never merge even when
their values coincide. The zero-one incidence matrix of classes against
points is the central object of the package: a coefficient vector lambda
annihilates every sum g_1(h_1(x)) + ... + g_r(h_r(x)) exactly when it lies
in the kernel of this matrix.

Equality of values is exact rational equality. There is no implicit
tolerance anywhere; the only value-merging facility is the explicit
quantize_family pass, which reports every merge it performs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputValidationError, InternalInvariantError
from .linalg import RationalMatrix

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Point:
    """A labeled point: stable integer id, optional rational coordinates."""

    id: int
    coords: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class PointSet:
    """Ordered finite point set; the order fixes the matrix column order."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for p in self.points:
            if p.id in seen:
                raise InputValidationError(f"duplicate point id {p.id}")
            seen.add(p.id)
        dims = {len(p.coords) for p in self.points if p.coords is not None}
        if len(dims) > 1:
            raise InputValidationError(f"points carry coordinates of mixed dimensions {sorted(dims)}")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(p.id for p in self.points)

    @property
    def dimension(self) -> int | None:
        for p in self.points:
            if p.coords is not None:
                return len(p.coords)
        return None

    def require_coordinates(self) -> int:
        """Return the shared coordinate dimension; error if any point lacks coords."""
        missing = [p.id for p in self.points if p.coords is None]
        if missing:
            raise InputValidationError(f"points without coordinates: {missing}")
        dim = self.dimension
        if dim is None:
            raise InputValidationError("point set is empty or carries no coordinates")
        return dim


def abstract_points(ids: list[int] | tuple[int, ...]) -> PointSet:
    return PointSet(tuple(Point(i) for i in ids))


def coordinate_points(coords: list[tuple[Fraction, ...]], first_id: int = 1) -> PointSet:
    return PointSet(tuple(Point(first_id + k, tuple(c)) for k, c in enumerate(coords)))


@dataclass(frozen=True)
class FunctionFamily:
    """Tabulated values h_i(x_j): one table per function, point id -> value."""

    tables: tuple[dict[int, Fraction], ...]
    provenance: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.tables:
            raise InputValidationError("a function family needs at least one function")
        if self.provenance and len(self.provenance) != len(self.tables):
            raise InputValidationError("provenance tags do not match the number of functions")
        if not self.provenance:
            object.__setattr__(self, "provenance", ("tabulated",) * len(self.tables))

    @property
    def r(self) -> int:
        return len(self.tables)

    def value_at(self, i: int, point_id: int) -> Fraction:
        try:
            return self.tables[i][point_id]
        except KeyError:
            raise InputValidationError(
                f"function {i} has no value for point id {point_id}"
            ) from None
        except IndexError:
            raise InputValidationError(f"function index {i} out of range (r={self.r})") from None


def coordinate_functions(ps: PointSet) -> FunctionFamily:
    """The family h_i = i-th coordinate, one function per dimension."""
    dim = ps.require_coordinates()
    tables = tuple({p.id: p.coords[i] for p in ps.points} for i in range(dim))
    return FunctionFamily(tables, ("tabulated",) * dim)


@dataclass(frozen=True)
class LevelClass:
    """All points on which one function takes one value; keyed by (index, value)."""

    function_index: int
    value: Fraction
    members: frozenset[int]

    def __post_init__(self) -> None:
        if not self.members:
            raise InputValidationError("a level class cannot be empty")


def build_level_classes(ps: PointSet, ff: FunctionFamily) -> tuple[LevelClass, ...]:
    """All level classes, ordered by (function index, value).

    For each i the classes with index i partition the point ids; the number
    of classes with index i equals the number of distinct values of h_i on X.
    """
    classes: list[LevelClass] = []
    for i in range(ff.r):
        by_value: dict[Fraction, set[int]] = {}
        for p in ps.points:
            by_value.setdefault(ff.value_at(i, p.id), set()).add(p.id)
        for value in sorted(by_value):
            classes.append(LevelClass(i, value, frozenset(by_value[value])))
    return tuple(classes)


@dataclass(frozen=True)
class IncidenceMatrix:
    """Zero-one matrix of level classes (rows) against points (columns).

    Row k corresponds to classes[k]; column j to point_ids[j], in point-set
    order. A vector lambda over the points annihilates all superpositions
    of the family exactly when matrix . lambda = 0.
    """

    matrix: RationalMatrix
    classes: tuple[LevelClass, ...]
    point_ids: tuple[int, ...]
    _index: dict[int, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self._index:
            object.__setattr__(self, "_index", {pid: j for j, pid in enumerate(self.point_ids)})

    @property
    def n_points(self) -> int:
        return len(self.point_ids)

    def column_index(self, point_id: int) -> int:
        try:
            return self._index[point_id]
        except KeyError:
            raise InputValidationError(f"unknown point id {point_id}") from None

    def sorted_support(self, point_ids) -> tuple[int, ...]:
        """Deduplicate and order ids by column position; validate them."""
        cols = sorted({self.column_index(pid) for pid in point_ids})
        return tuple(self.point_ids[c] for c in cols)

    def restricted(self, support: tuple[int, ...]) -> RationalMatrix:
        """Columns restricted to the given support ids (in the given order)."""
        return self.matrix.restrict_columns([self.column_index(pid) for pid in support])


def build_incidence(ps: PointSet, ff: FunctionFamily) -> IncidenceMatrix:
    classes = build_level_classes(ps, ff)
    ids = ps.ids
    rows = [
        [(_ONE if pid in cls.members else _ZERO) for pid in ids]
        for cls in classes
    ]
    matrix = RationalMatrix.from_rows(rows, cols=len(ids))
    for j in range(matrix.cols):
        ones = sum(1 for i in range(matrix.rows) if matrix.at(i, j))
        if ones != ff.r:  # pragma: no cover - construction guarantees this
            raise InternalInvariantError(f"column {j} lies in {ones} classes, expected {ff.r}")
    return IncidenceMatrix(matrix, classes, ids)


@dataclass(frozen=True)
class QuantizeMerge:
    """Record of one value replaced by its cluster representative."""

    function_index: int
    original: Fraction
    replacement: Fraction


def quantize_family(
    ff: FunctionFamily, eps: Fraction
) -> tuple[FunctionFamily, tuple[QuantizeMerge, ...]]:
    """Cluster values of each function that sit within eps of their neighbor.

    Single-linkage along the sorted distinct values of one function:
    consecutive values with gap <= eps join one cluster, and every member is
    replaced by the cluster minimum. Every replacement is reported; the
    caller is expected to surface the merges prominently. eps = 0 is a no-op.
    """
    if eps < 0:
        raise InputValidationError("quantize epsilon must be nonnegative")
    merges: list[QuantizeMerge] = []
    new_tables: list[dict[int, Fraction]] = []
    for i, table in enumerate(ff.tables):
        values = sorted(set(table.values()))
        replacement: dict[Fraction, Fraction] = {}
        cluster_min: Fraction | None = None
        previous: Fraction | None = None
        for v in values:
            if cluster_min is None or previous is None or v - previous > eps:
                cluster_min = v
            previous = v
            replacement[v] = cluster_min
            if cluster_min != v:
                merges.append(QuantizeMerge(i, v, cluster_min))
        new_tables.append({pid: replacement[v] for pid, v in table.items()})
    return FunctionFamily(tuple(new_tables), ff.provenance), tuple(merges)
