"""Deciding whether a function is a sum of univariate pieces of the family.

A function f on X lies in the span {g_1(h_1(x)) + ... + g_r(h_r(x))} exactly
when the transposed incidence system has a solution: one unknown g-value per
level class, one equation per point. Equivalently, f must be orthogonal to
the kernel of the incidence matrix, which is spanned by closed-path
coefficient vectors; a kernel vector with nonzero inner product against f is
therefore a self-contained proof of non-representability.

Both routes are implemented (the solver here, the orthogonality test as an
independent cross-check) and must always agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputValidationError, InternalInvariantError
from .linalg import dot, kernel_basis, solve
from .model import IncidenceMatrix, PointSet
from .paths import (
    ClosedPathCertificate,
    certificate_from_kernel_vector,
    detect,
    evaluate_certificate,
)

_ZERO = Fraction(0)

FunctionTable = Mapping[int, Fraction]


def _column_values(inc: IncidenceMatrix, f: FunctionTable) -> list[Fraction]:
    """Values of f in column order; reject missing or unknown point ids."""
    unknown = [pid for pid in f if pid not in inc.point_ids]
    if unknown:
        raise InputValidationError(f"function table mentions unknown point ids {sorted(unknown)}")
    values = []
    for pid in inc.point_ids:
        if pid not in f:
            raise InputValidationError(f"function table misses a value for point id {pid}")
        values.append(Fraction(f[pid]))
    return values


@dataclass(frozen=True)
class Decomposition:
    """Univariate tables g_i on the observed values of h_i, plus the implied
    reconstruction. Off the observed values the g_i are taken to be zero.

    `freedom` is the dimension of the affine space of all valid g-tables;
    the decomposition with every free unknown zeroed is the canonical one.
    """

    tables: tuple[dict[Fraction, Fraction], ...]
    freedom: int
    reconstruction: dict[int, Fraction]


@dataclass(frozen=True)
class RepresentationResult:
    representable: bool
    decomposition: Decomposition | None = None
    violation: ClosedPathCertificate | None = None
    violation_value: Fraction | None = None


def is_representable(inc: IncidenceMatrix, f: FunctionTable) -> RepresentationResult:
    """Decide membership of f in the superposition span; construct a witness.

    On success the returned decomposition reconstructs f exactly (rational
    equality, no tolerance). On failure the result carries a closed-path
    certificate whose functional evaluates to a nonzero value on f.
    """
    values = _column_values(inc, f)
    transposed = inc.matrix.transpose()
    outcome = solve(transposed, values)
    if outcome.solution is not None:
        g = outcome.solution
        tables: tuple[dict[Fraction, Fraction], ...] = tuple(
            {} for _ in range(max(cls.function_index for cls in inc.classes) + 1)
        ) if inc.classes else ()
        for row_idx, cls in enumerate(inc.classes):
            tables[cls.function_index][cls.value] = g[row_idx]
        reconstruction = dict(zip(inc.point_ids, transposed.mul_vector(g)))
        for pid, expected in zip(inc.point_ids, values):
            if reconstruction[pid] != expected:  # pragma: no cover - solve is exact
                raise InternalInvariantError(f"reconstruction differs from f at point {pid}")
        freedom = transposed.cols - outcome.rank
        return RepresentationResult(True, decomposition=Decomposition(tables, freedom, reconstruction))
    for vec in kernel_basis(inc.matrix):
        value = dot(vec, values)
        if value:
            cert = certificate_from_kernel_vector(inc, vec)
            return RepresentationResult(False, violation=cert, violation_value=value)
    raise InternalInvariantError(  # pragma: no cover - duality guarantees a violator
        "transpose solve failed but f is orthogonal to the kernel"
    )


def representable_by_orthogonality(inc: IncidenceMatrix, f: FunctionTable) -> bool:
    """Membership via orthogonality to the kernel basis.

    Independent of the solver route in is_representable; the two must agree
    on every input.
    """
    values = _column_values(inc, f)
    return all(dot(vec, values) == 0 for vec in kernel_basis(inc.matrix))


@dataclass(frozen=True)
class Witness:
    """The sign function of a closed path: +1 where lambda > 0, -1 where
    lambda < 0, 0 off the path. Its path functional evaluates to
    sum(|lambda_j|) > 0, so no superposition can equal it."""

    certificate: ClosedPathCertificate
    f0: dict[int, Fraction]
    value: Fraction


def witness_table(cert: ClosedPathCertificate, point_ids: Sequence[int]) -> dict[int, Fraction]:
    table = {pid: _ZERO for pid in point_ids}
    for pid, lam in zip(cert.support, cert.lam):
        table[pid] = Fraction(1) if lam > 0 else Fraction(-1)
    return table


def make_witness(cert: ClosedPathCertificate, points: PointSet | Sequence[int]) -> Witness:
    """Build the non-representable sign function for a certificate.

    `points` may be the point set itself or just its ids; the witness is 0
    on every point outside the certificate support.
    """
    point_ids = points.ids if isinstance(points, PointSet) else tuple(points)
    missing = [pid for pid in cert.support if pid not in point_ids]
    if missing:
        raise InputValidationError(f"certificate support {missing} is not part of the point set")
    f0 = witness_table(cert, point_ids)
    value = evaluate_certificate(cert, f0)
    if value != sum(abs(x) for x in cert.lam):  # pragma: no cover - identity by construction
        raise InternalInvariantError("witness value is not the l1 norm of the certificate")
    return Witness(cert, f0, value)


@dataclass(frozen=True)
class PermissibilityReport:
    """Outcome of the finite-fixture check that a span equal to a permissive
    function class forces the span to be everything.

    branch is "closed path exists" (the witness, which is bounded and
    continuous on a finite discrete set, is rejected) or "no closed paths"
    (every probe is representable). The check covers the given finite
    instance only.
    """

    branch: str
    witness_rejected: bool | None
    probes_total: int
    probes_representable: int

    @property
    def holds(self) -> bool:
        if self.branch == "closed path exists":
            return bool(self.witness_rejected)
        return self.probes_representable == self.probes_total


def verify_permissible_implication(
    inc: IncidenceMatrix, probes: Sequence[FunctionTable]
) -> PermissibilityReport:
    cert = detect(inc)
    if cert is not None:
        witness = make_witness(cert, inc.point_ids)
        rejected = not is_representable(inc, witness.f0).representable
        return PermissibilityReport("closed path exists", rejected, 0, 0)
    ok = sum(1 for probe in probes if is_representable(inc, probe).representable)
    return PermissibilityReport("no closed paths", None, len(probes), ok)
