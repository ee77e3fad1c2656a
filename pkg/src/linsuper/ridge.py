"""Ridge instantiation: inner functions of the form h_i(x) = a_i . x.

Fixing directions a_1,...,a_r turns the abstract machinery into statements
about sums of ridge functions g_i(a_i . x). A finite point set fails some
interpolation problem for these sums (the NI property) exactly when it
contains a closed path with respect to the induced level structure, and
fails minimally (MNI) exactly when the whole set is a minimal closed path.

This module also constructs the classic combinatorial obstructions and
non-obstructions: the hypercube path around an interior point (which shows
that sets with interior points are never fully representable) and several
families of point configurations that provably carry no closed paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor
from typing import Literal, Sequence

from .errors import ConstraintError, InputValidationError, InternalInvariantError
from .linalg import RationalMatrix, Vector, dot, integer_primitive, solve
from .model import FunctionFamily, IncidenceMatrix, Point, PointSet, build_incidence
from .paths import ClosedPathCertificate, certify_minimal, detect, is_closed_path

_ZERO = Fraction(0)
_ONE = Fraction(1)

_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151,
)


@dataclass(frozen=True)
class Direction:
    """A nonzero rational direction vector."""

    vector: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.vector or all(x == 0 for x in self.vector):
            raise InputValidationError("a direction must be a nonzero vector")

    @property
    def dimension(self) -> int:
        return len(self.vector)


def direction(components: Sequence[Fraction | int]) -> Direction:
    return Direction(tuple(Fraction(c) for c in components))


@dataclass(frozen=True)
class RidgeInstance:
    """Directions plus coordinate points plus the induced value tables."""

    directions: tuple[Direction, ...]
    points: PointSet
    family: FunctionFamily


def _dot_coords(a: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return dot(tuple(a), tuple(x))


def ridge_instance(directions: Sequence[Direction], points: PointSet) -> RidgeInstance:
    """Tabulate h_i(x_j) = a_i . x_j exactly and wrap it as an instance."""
    if not directions:
        raise InputValidationError("at least one direction is required")
    dims = {d.dimension for d in directions}
    if len(dims) != 1:
        raise InputValidationError(f"directions of mixed dimensions {sorted(dims)}")
    dim = dims.pop()
    if len(points):
        if points.require_coordinates() != dim:
            raise InputValidationError(
                f"points have dimension {points.dimension}, directions have {dim}"
            )
    tables = tuple(
        {p.id: _dot_coords(d.vector, p.coords) for p in points.points} for d in directions
    )
    provenance = tuple(
        "ridge(" + ",".join(str(c) for c in d.vector) + ")" for d in directions
    )
    return RidgeInstance(tuple(directions), points, FunctionFamily(tables, provenance))


def instance_incidence(instance: RidgeInstance) -> IncidenceMatrix:
    return build_incidence(instance.points, instance.family)


@dataclass(frozen=True)
class NIClassification:
    """Interpolation verdict for a finite point set against fixed directions.

    kind "interpolable": every data vector on the points is matched by some
    sum of ridge functions. kind "NI": some data is unreachable; `m` is an
    integer vector (over all points, zeros allowed) whose level-class sums
    all vanish. kind "MNI": additionally the whole set is a minimal closed
    path, so `m` has no zero entries and is unique up to scale.
    """

    kind: Literal["interpolable", "NI", "MNI"]
    m: Vector | None = None
    certificate: ClosedPathCertificate | None = None


def classify_ni(instance: RidgeInstance) -> NIClassification:
    inc = instance_incidence(instance)
    cert = detect(inc)
    if cert is None:
        return NIClassification("interpolable")
    full = is_closed_path(inc, inc.point_ids) if inc.point_ids else None
    if full is not None:
        result = certify_minimal(inc, inc.point_ids)
        if result.is_minimal:
            m = integer_primitive(result.certificate.lam)
            return NIClassification("MNI", m, result.certificate)
    table = cert.as_table()
    m = tuple(table.get(pid, _ZERO) for pid in inc.point_ids)
    return NIClassification("NI", integer_primitive(m), cert)


@dataclass(frozen=True)
class HypercubePath:
    """The 2^r points y + sum(eps_i * b_i) with signs (-1)^|eps|.

    Each offset b_i is orthogonal to direction a_i, so flipping eps_i does
    not change a_i . x; the points pair up inside every level class and the
    signs cancel, which makes the pair (points, lambda) a closed path.
    """

    center: tuple[Fraction, ...]
    offsets: tuple[tuple[Fraction, ...], ...]
    epsilons: tuple[tuple[int, ...], ...]
    instance: RidgeInstance
    lam: tuple[Fraction, ...]

    def certificate(self) -> ClosedPathCertificate:
        return ClosedPathCertificate(self.instance.points.ids, self.lam, False, None)


def _orthogonal_candidates(a: tuple[Fraction, ...]) -> list[tuple[Fraction, ...]]:
    """Deterministic nonzero vectors orthogonal to a, most canonical first.

    Coordinate vectors for every zero coordinate of a, then swap-negate
    vectors for every pair of nonzero coordinates.
    """
    d = len(a)
    candidates: list[tuple[Fraction, ...]] = []
    for z in range(d):
        if a[z] == 0:
            candidates.append(tuple(_ONE if k == z else _ZERO for k in range(d)))
    nonzero = [k for k in range(d) if a[k] != 0]
    for p_idx in range(len(nonzero)):
        for q_idx in range(p_idx + 1, len(nonzero)):
            p, q = nonzero[p_idx], nonzero[q_idx]
            vec = [_ZERO] * d
            vec[p] = a[q]
            vec[q] = -a[p]
            candidates.append(tuple(vec))
    return candidates


def _parallel(x: tuple[Fraction, ...], y: tuple[Fraction, ...]) -> bool:
    """Nonzero vectors are parallel iff every 2x2 minor vanishes."""
    return all(
        x[p] * y[q] == x[q] * y[p]
        for p in range(len(x))
        for q in range(p + 1, len(x))
    )


def _pairwise_independent(chosen: Sequence[tuple[Fraction, ...]], candidate: tuple[Fraction, ...]) -> bool:
    return not any(_parallel(candidate, other) for other in chosen)


def _offset_candidates(a: tuple[Fraction, ...], count: int) -> list[tuple[Fraction, ...]]:
    """Up to `count` pairwise-nonparallel vectors orthogonal to a.

    When the orthogonal complement of a has dimension >= 2 the sequence
    u, v, u+v, u+2v, ... provides as many distinct lines as requested; a
    one-dimensional complement (only possible for d = 2) yields a single
    candidate.
    """
    pool = _orthogonal_candidates(a)
    if not pool:
        return []
    u = pool[0]
    v = next((c for c in pool[1:] if not _parallel(u, c)), None)
    if v is None:
        return [u]
    candidates = [u, v]
    t = 1
    while len(candidates) < count:
        candidates.append(tuple(uc + t * vc for uc, vc in zip(u, v)))
        t += 1
    return candidates


def hypercube_path(
    directions: Sequence[Direction],
    center: Sequence[Fraction | int],
    scale: Fraction | int = 1,
) -> HypercubePath:
    """Construct the hypercube closed path around a center point.

    Offsets are chosen deterministically (orthogonal candidates scaled by
    distinct primes times `scale`) and must be pairwise linearly
    independent; if the 2^r resulting points collide the prime scalings are
    shifted and the construction retried. The output is verified exactly
    before it is returned.
    """
    directions = tuple(directions)
    if not directions:
        raise InputValidationError("at least one direction is required")
    dims = {d.dimension for d in directions}
    if len(dims) != 1:
        raise InputValidationError(f"directions of mixed dimensions {sorted(dims)}")
    d = dims.pop()
    if d < 2:
        raise ConstraintError(
            "dimension 1 admits no nonzero vector orthogonal to a direction; need d >= 2"
        )
    center_vec = tuple(Fraction(c) for c in center)
    if len(center_vec) != d:
        raise InputValidationError(f"center has dimension {len(center_vec)}, directions have {d}")
    scale = Fraction(scale)
    if scale == 0:
        raise ConstraintError("scale must be nonzero; zero would collapse all points")

    r = len(directions)
    base: list[tuple[Fraction, ...]] = []
    for idx, dirn in enumerate(directions):
        candidates = _offset_candidates(dirn.vector, r + 2)
        picked = next((c for c in candidates if _pairwise_independent(base, c)), None)
        if picked is None:
            raise ConstraintError(
                f"no offset orthogonal to direction {idx} is independent of the earlier "
                "offsets (parallel directions in the plane leave a single orthogonal line)"
            )
        base.append(picked)
    for shift in range(len(_PRIMES) - r + 1):
        offsets = [
            tuple(scale * _PRIMES[shift + i] * c for c in base[i]) for i in range(r)
        ]
        epsilons = tuple(product((0, 1), repeat=r))
        coords = []
        for eps in epsilons:
            point = list(center_vec)
            for i, bit in enumerate(eps):
                if bit:
                    point = [pc + oc for pc, oc in zip(point, offsets[i])]
            coords.append(tuple(point))
        if len(set(coords)) == len(coords):
            points = PointSet(tuple(Point(k + 1, c) for k, c in enumerate(coords)))
            lam = tuple(Fraction((-1) ** sum(eps)) for eps in epsilons)
            instance = ridge_instance(directions, points)
            path = HypercubePath(center_vec, tuple(offsets), epsilons, instance, lam)
            _verify_hypercube(path)
            return path
    raise InternalInvariantError("could not separate the hypercube points")  # pragma: no cover


def _verify_hypercube(path: HypercubePath) -> None:
    inc = instance_incidence(path.instance)
    vec = is_closed_path(inc, inc.point_ids)
    if vec is None:
        raise InternalInvariantError("hypercube points are not a closed path")
    product_check = inc.matrix.mul_vector(path.lam)
    if any(product_check):
        raise InternalInvariantError("hypercube signs do not annihilate the level classes")


ExampleKind = Literal["parallel-lines", "zigzag", "staircase", "transversal-curve"]


@dataclass(frozen=True)
class GeneratedExample:
    """A generated point configuration plus the machine check that it carries
    no closed paths. `note` records whether path-freeness was verified on the
    emitted sample only (infinite configurations) or on the whole set."""

    kind: str
    instance: RidgeInstance
    path_free: bool
    note: str


@dataclass(frozen=True)
class ParallelLinesParams:
    """Two parallel lines base_k + t * line_direction, sampled at
    t = start, start+step, ... The lines must not be perpendicular to
    either ridge direction, and must be distinct."""

    directions: tuple[Direction, Direction]
    line_direction: tuple[Fraction, ...]
    base_first: tuple[Fraction, ...]
    base_second: tuple[Fraction, ...]
    samples_per_line: int = 6
    start: Fraction = Fraction(0)
    step: Fraction = Fraction(1)


@dataclass(frozen=True)
class ZigzagParams:
    """Samples of the unit triangle wave (period 4, slopes +-1) against the
    diagonal directions (1,1) and (1,-1)."""

    count: int = 8
    start: Fraction = Fraction(0)
    step: Fraction = Fraction(1, 2)


@dataclass(frozen=True)
class StaircaseParams:
    """The r+1 chain points for the given directions: point 1 at the origin,
    point k+1 moved off the common a_k level while staying on all others."""

    directions: tuple[Direction, ...]


@dataclass(frozen=True)
class TransversalCurveParams:
    """A polynomial curve gamma(t), one coefficient list per coordinate
    (low degree first), sampled at t = start, start+step, ... Some
    direction must meet every level at most once on the sample."""

    directions: tuple[Direction, ...]
    coefficients: tuple[tuple[Fraction, ...], ...]
    count: int = 8
    start: Fraction = Fraction(0)
    step: Fraction = Fraction(1)


def generate_pathfree_example(
    kind: ExampleKind,
    params: ParallelLinesParams | ZigzagParams | StaircaseParams | TransversalCurveParams,
) -> GeneratedExample:
    """Emit a sample of the named configuration and confirm it is path-free.

    Defining constraints are validated before emission and a ConstraintError
    names any violated clause. The emitted sample is always re-checked with
    detect; a failure of that check is an internal error.
    """
    builders = {
        "parallel-lines": _build_parallel_lines,
        "zigzag": _build_zigzag,
        "staircase": _build_staircase,
        "transversal-curve": _build_transversal_curve,
    }
    if kind not in builders:
        raise InputValidationError(f"unknown example kind {kind!r}")
    instance, note = builders[kind](params)
    inc = instance_incidence(instance)
    if detect(inc) is not None:  # pragma: no cover - the constructions forbid this
        raise InternalInvariantError(f"generated {kind} sample contains a closed path")
    return GeneratedExample(kind, instance, True, note)


def _build_parallel_lines(params: ParallelLinesParams) -> tuple[RidgeInstance, str]:
    if len(params.directions) != 2:
        raise ConstraintError("parallel-lines requires exactly two directions")
    w = params.line_direction
    if all(x == 0 for x in w):
        raise ConstraintError("line direction must be nonzero")
    for idx, dirn in enumerate(params.directions):
        if _dot_coords(dirn.vector, w) == 0:
            raise ConstraintError(
                f"line is perpendicular to direction {idx}: the level sets of that "
                "direction contain whole line segments"
            )
    gap = tuple(b - a for a, b in zip(params.base_first, params.base_second))
    if not _pairwise_independent([tuple(w)], tuple(gap)) or all(x == 0 for x in gap):
        raise ConstraintError("the two base points lie on one line; the lines coincide")
    coords = []
    for base in (params.base_first, params.base_second):
        for k in range(params.samples_per_line):
            t = params.start + k * params.step
            coords.append(tuple(b + t * c for b, c in zip(base, w)))
    points = PointSet(tuple(Point(k + 1, c) for k, c in enumerate(coords)))
    instance = ridge_instance(params.directions, points)
    return instance, "path-freeness verified on the emitted sample; the full lines are asserted"


def triangle_wave(x: Fraction) -> Fraction:
    """Piecewise-linear wave with slopes +-1, peaks (1+4k, 1), valleys (3+4k, -1)."""
    u = x - 4 * floor(x / 4)
    if u <= 1:
        return u
    if u <= 3:
        return 2 - u
    return u - 4


def _build_zigzag(params: ZigzagParams) -> tuple[RidgeInstance, str]:
    dirs = (direction((1, 1)), direction((1, -1)))
    if params.count < 0:
        raise ConstraintError("sample count must be nonnegative")
    if params.count and params.step == 0:
        raise ConstraintError("step must be nonzero: repeated abscissas repeat points")
    coords = []
    for k in range(params.count):
        x = params.start + k * params.step
        coords.append((x, triangle_wave(x)))
    points = PointSet(tuple(Point(k + 1, c) for k, c in enumerate(coords)))
    instance = ridge_instance(dirs, points)
    return instance, "path-freeness verified on the emitted sample; the full zigzag is asserted"


def _build_staircase(params: StaircaseParams) -> tuple[RidgeInstance, str]:
    directions = tuple(params.directions)
    r = len(directions)
    if r == 0:
        raise ConstraintError("staircase requires at least one direction")
    d = directions[0].dimension
    matrix = RationalMatrix.from_rows([list(dirn.vector) for dirn in directions], cols=d)
    coords: list[tuple[Fraction, ...]] = [tuple([_ZERO] * d)]
    for k in range(r):
        rhs = [_ONE if i == k else _ZERO for i in range(r)]
        outcome = solve(matrix, rhs)
        if outcome.solution is None:
            raise ConstraintError(
                f"directions are linearly dependent: no point can leave the level of "
                f"direction {k} while staying on all the others"
            )
        coords.append(outcome.solution)
    points = PointSet(tuple(Point(k + 1, c) for k, c in enumerate(coords)))
    instance = ridge_instance(directions, points)
    _validate_staircase_chain(instance)
    return instance, "path-freeness verified on the whole configuration"


def _validate_staircase_chain(instance: RidgeInstance) -> None:
    """Check the defining chain: for each k, every point except the (k+1)-th
    shares the a_k value, and the (k+1)-th differs from it."""
    ids = instance.points.ids
    r = len(instance.directions)
    for k in range(r):
        values = [instance.family.value_at(k, pid) for pid in ids]
        others = [v for idx, v in enumerate(values) if idx != k + 1]
        if len(set(others)) != 1:
            raise ConstraintError(f"chain broken: direction {k} separates points other than {k + 1}")
        if values[k + 1] == others[0]:
            raise ConstraintError(f"chain broken: point {k + 1} does not leave the level of direction {k}")


def _poly_eval(coeffs: Sequence[Fraction], t: Fraction) -> Fraction:
    acc = _ZERO
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _build_transversal_curve(params: TransversalCurveParams) -> tuple[RidgeInstance, str]:
    directions = tuple(params.directions)
    if not directions:
        raise ConstraintError("transversal-curve requires at least one direction")
    d = directions[0].dimension
    if len(params.coefficients) != d:
        raise ConstraintError(
            f"curve has {len(params.coefficients)} coordinate polynomials, directions have dimension {d}"
        )
    if params.count and params.step == 0:
        raise ConstraintError("step must be nonzero: repeated parameters repeat points")
    coords = []
    for k in range(params.count):
        t = params.start + k * params.step
        coords.append(tuple(_poly_eval(c, t) for c in params.coefficients))
    if len(set(coords)) != len(coords):
        raise ConstraintError("curve samples collide; distinct parameters must give distinct points")
    points = PointSet(tuple(Point(k + 1, c) for k, c in enumerate(coords)))
    instance = ridge_instance(directions, points)
    _validate_transversal_condition(instance)
    return instance, "transversality and path-freeness verified on the emitted sample only"


def _validate_transversal_condition(instance: RidgeInstance) -> None:
    """For every observed level value c, some direction meets it at most once."""
    ids = instance.points.ids
    r = len(instance.directions)
    counts: list[dict[Fraction, int]] = []
    observed: set[Fraction] = set()
    for i in range(r):
        table: dict[Fraction, int] = {}
        for pid in ids:
            v = instance.family.value_at(i, pid)
            table[v] = table.get(v, 0) + 1
        counts.append(table)
        observed.update(table)
    for c in sorted(observed):
        if all(counts[i].get(c, 0) > 1 for i in range(r)):
            raise ConstraintError(
                f"every direction meets level {c} in two or more sample points; "
                "the curve is not transversal on this sample"
            )
