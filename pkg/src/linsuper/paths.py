"""Closed paths: detection, certification, enumeration, and functional algebra.

A closed path is a point subset admitting a coefficient vector with all
entries nonzero that sums to zero over every level class of every function,
i.e. a full-support kernel vector of the support-restricted incidence
matrix. A minimal closed path contains no closed path as a proper subset;
minimal paths are exactly the circuits of the column matroid of the
incidence matrix, and are characterized by a one-dimensional restricted
kernel whose generator has full support.

Everything here is exact. A certificate is a self-contained proof object:
its vector can be re-verified against the matrix by anyone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Mapping

from .errors import ContractViolationError, InputValidationError, InternalInvariantError
from .linalg import Vector, dot, integer_primitive, kernel_basis, l1_normalized
from .model import IncidenceMatrix

_ZERO = Fraction(0)


@dataclass(frozen=True)
class ClosedPathCertificate:
    """A point subset plus the coefficient vector witnessing its closed path.

    `support` lists point ids in column order and `lam` is aligned with it;
    every entry of `lam` is nonzero. When `normalized` is set the absolute
    values of `lam` sum to 1 and the first entry is positive. `minimal` is
    None when minimality has not been decided.
    """

    support: tuple[int, ...]
    lam: tuple[Fraction, ...]
    normalized: bool = False
    minimal: bool | None = None

    def __post_init__(self) -> None:
        if not self.support:
            raise InputValidationError("a certificate needs a nonempty support")
        if len(self.support) != len(self.lam):
            raise InputValidationError("support and coefficient vector lengths differ")
        if any(x == 0 for x in self.lam):
            raise InputValidationError("certificate coefficients must all be nonzero")
        if self.normalized and sum(abs(x) for x in self.lam) != 1:
            raise InputValidationError("normalized certificate must have unit l1 norm")

    def integer_lambda(self) -> Vector:
        """Integer content-1 form of the coefficients, first entry positive."""
        return integer_primitive(self.lam)

    def normalized_lambda(self) -> Vector:
        """Unit-l1 form of the coefficients, first entry positive."""
        return l1_normalized(self.lam)

    def normalized_copy(self) -> "ClosedPathCertificate":
        return ClosedPathCertificate(self.support, self.normalized_lambda(), True, self.minimal)

    def as_table(self) -> dict[int, Fraction]:
        return dict(zip(self.support, self.lam))


def verify_certificate(inc: IncidenceMatrix, cert: ClosedPathCertificate) -> None:
    """Re-verify a certificate against the instance; raise if it fails.

    Checks the support ids, that all coefficients are nonzero, and that the
    restricted matrix times the coefficient vector is exactly zero.
    """
    ordered = inc.sorted_support(cert.support)
    if ordered != cert.support:
        raise InternalInvariantError(f"certificate support {cert.support} is not in column order")
    if any(x == 0 for x in cert.lam):
        raise InternalInvariantError("certificate carries a zero coefficient")
    product = inc.restricted(cert.support).mul_vector(cert.lam)
    if any(product):
        raise InternalInvariantError("certificate vector does not annihilate the level classes")


@dataclass(frozen=True)
class PathFunctional:
    """The linear functional f -> sum(lam_j * f(x_j)) attached to a certificate."""

    certificate: ClosedPathCertificate

    def evaluate(self, values: Mapping[int, Fraction]) -> Fraction:
        return evaluate_certificate(self.certificate, values)


def evaluate_certificate(cert: ClosedPathCertificate, values: Mapping[int, Fraction]) -> Fraction:
    acc = _ZERO
    for pid, lam in zip(cert.support, cert.lam):
        try:
            acc += lam * values[pid]
        except KeyError:
            raise InputValidationError(f"function table has no value for point id {pid}") from None
    return acc


def certificate_from_kernel_vector(
    inc: IncidenceMatrix, vec: Vector, *, minimal: bool | None = None
) -> ClosedPathCertificate:
    """Restrict a full-length kernel vector to its support."""
    support = tuple(inc.point_ids[j] for j, x in enumerate(vec) if x)
    lam = tuple(x for x in vec if x)
    return ClosedPathCertificate(support, lam, False, minimal)


def detect(inc: IncidenceMatrix) -> ClosedPathCertificate | None:
    """Find one closed path, or None when no subset of X is a closed path.

    The kernel of the incidence matrix is trivial exactly when the matrix
    has full column rank; any nonzero kernel vector, restricted to its
    support, is a closed-path certificate.
    """
    basis = kernel_basis(inc.matrix)
    if not basis:
        return None
    return certificate_from_kernel_vector(inc, basis[0])


def _restricted_kernel(inc: IncidenceMatrix, support: Iterable[int]) -> tuple[tuple[int, ...], list[Vector]]:
    ordered = inc.sorted_support(support)
    if not ordered:
        raise InputValidationError("support must be nonempty")
    return ordered, kernel_basis(inc.restricted(ordered))


def _full_support_vector(basis: list[Vector], size: int) -> Vector | None:
    """A full-support vector in the span of `basis`, or None when impossible.

    If some coordinate vanishes on every basis vector it vanishes on the
    whole span, so no full-support vector exists. Otherwise a combination
    with coefficients 1, B, B^2, ... has, in each coordinate, a nonzero
    polynomial in B of degree < len(basis); walking B upward from size+1
    must escape all roots within size*(len(basis)-1)+1 attempts.
    """
    if not basis:
        return None
    k = len(basis)
    for j in range(size):
        if all(vec[j] == 0 for vec in basis):
            return None
    if k == 1:
        return basis[0]
    attempts = size * (k - 1) + 1
    for b in range(size + 1, size + 1 + attempts):
        combo = [_ZERO] * size
        weight = Fraction(1)
        for vec in basis:
            for j, x in enumerate(vec):
                if x:
                    combo[j] += weight * x
            weight *= b
        if all(combo):
            return integer_primitive(combo)
    raise InternalInvariantError("full-support search exhausted its root bound")  # pragma: no cover


def is_closed_path(inc: IncidenceMatrix, support: Iterable[int]) -> Vector | None:
    """Coefficient vector making `support` a closed path, or None.

    The returned vector is aligned with the support ids in column order,
    has integer content-1 entries, all nonzero, and annihilates every level
    class restricted to the support.
    """
    ordered, basis = _restricted_kernel(inc, support)
    return _full_support_vector(basis, len(ordered))


@dataclass(frozen=True)
class MinimalityResult:
    """Outcome of a minimality check on a closed path.

    Exactly one of `certificate` (minimal: the normalized certificate) and
    `counterexample` (not minimal: a proper subset that is itself a closed
    path) is set.
    """

    is_minimal: bool
    certificate: ClosedPathCertificate | None = None
    counterexample: tuple[int, ...] | None = None


def certify_minimal(inc: IncidenceMatrix, support: Iterable[int]) -> MinimalityResult:
    """Decide whether a closed path is minimal.

    A closed path is minimal iff the restricted kernel is one-dimensional
    (its generator then has full support): a proper-subset path would embed
    a second, independent kernel vector. Raises ContractViolationError when
    the support is not a closed path at all.
    """
    ordered, basis = _restricted_kernel(inc, support)
    if not basis:
        raise ContractViolationError(f"support {ordered} is not a closed path (trivial kernel)")
    if len(basis) == 1:
        generator = basis[0]
        if any(x == 0 for x in generator):
            raise ContractViolationError(
                f"support {ordered} is not a closed path (kernel generator has zero entries)"
            )
        cert = ClosedPathCertificate(ordered, l1_normalized(generator), True, True)
        return MinimalityResult(True, certificate=cert)
    if _full_support_vector(basis, len(ordered)) is None:
        raise ContractViolationError(
            f"support {ordered} is not a closed path (no full-support kernel vector)"
        )
    first = basis[0]
    counterexample = tuple(pid for pid, x in zip(ordered, first) if x)
    return MinimalityResult(False, counterexample=counterexample)


def find_minimal_within(inc: IncidenceMatrix, support: Iterable[int]) -> ClosedPathCertificate:
    """Shrink a closed path to a minimal one by counterexample descent."""
    current = tuple(support)
    while True:
        result = certify_minimal(inc, current)
        if result.is_minimal:
            return result.certificate
        current = result.counterexample


@dataclass(frozen=True)
class FunctionalDecomposition:
    """A path functional written as a combination of minimal-path functionals.

    Each term is (coefficient, normalized minimal certificate); summing
    coefficient * lambda over the terms, as vectors over point ids,
    reproduces the input functional exactly. `residual` is empty on
    success (termination of the peeling guarantees it).
    """

    terms: tuple[tuple[Fraction, ClosedPathCertificate], ...]
    residual: tuple[tuple[int, Fraction], ...] = ()

    def recombined(self) -> dict[int, Fraction]:
        table: dict[int, Fraction] = {}
        for coeff, cert in self.terms:
            for pid, lam in zip(cert.support, cert.lam):
                table[pid] = table.get(pid, _ZERO) + coeff * lam
        return {pid: v for pid, v in table.items() if v}


def decompose_functional(
    inc: IncidenceMatrix, cert: ClosedPathCertificate
) -> FunctionalDecomposition:
    """Peel a closed-path functional into minimal-path functionals.

    Repeatedly find a minimal path inside the current support, align at its
    lowest point id x1, subtract (theta(x1)/nu(x1)) times its functional,
    and continue on the residual. The aligned point drops out at every
    step, so the support shrinks strictly and the loop terminates with a
    zero residual.
    """
    verify_certificate(inc, cert)
    theta = {pid: lam for pid, lam in zip(cert.support, cert.lam)}
    terms: list[tuple[Fraction, ClosedPathCertificate]] = []
    while theta:
        support = inc.sorted_support(theta)
        minimal = find_minimal_within(inc, support)
        x1 = minimal.support[0]
        coeff = theta[x1] / minimal.as_table()[x1]
        for pid, nu in zip(minimal.support, minimal.lam):
            new = theta.get(pid, _ZERO) - coeff * nu
            if new:
                theta[pid] = new
            else:
                theta.pop(pid, None)
        if x1 in theta:  # pragma: no cover - alignment removes x1 by construction
            raise InternalInvariantError("peeling failed to remove the alignment point")
        terms.append((coeff, minimal))
    return FunctionalDecomposition(tuple(terms))


EnumerationMode = Literal["fundamental", "exhaustive"]


def enumerate_minimal(
    inc: IncidenceMatrix, max_support: int | None = None, mode: EnumerationMode = "fundamental"
) -> list[ClosedPathCertificate]:
    """Enumerate minimal closed paths.

    fundamental: peel every fundamental kernel vector into minimal-path
    terms and collect the distinct paths. The result spans the kernel of
    the incidence matrix, which suffices for every representability
    decision; its size is polynomial. max_support is ignored here.

    exhaustive: every minimal closed path with support size <= max_support,
    found by depth-first search over independent column sets; adding one
    column to an independent set either stays independent (extend) or
    closes exactly one circuit (record, do not extend, since any superset
    would contain it properly). Exponential; intended for small instances.

    Results are sorted by (support size, support) and deduplicated.
    """
    if mode not in ("fundamental", "exhaustive"):
        raise InputValidationError(f"unknown enumeration mode {mode!r}")
    if mode == "exhaustive":
        if max_support is None or max_support < 2:
            raise InputValidationError("exhaustive enumeration needs max_support >= 2")
        found = _enumerate_circuits(inc, max_support)
    else:
        found = {}
        for vec in kernel_basis(inc.matrix):
            seed = certificate_from_kernel_vector(inc, vec)
            for _, cert in decompose_functional(inc, seed).terms:
                found.setdefault(cert.support, cert)
    ordered = sorted(found.items(), key=lambda item: (len(item[0]), item[0]))
    return [cert for _, cert in ordered]


def _enumerate_circuits(
    inc: IncidenceMatrix, max_support: int
) -> dict[tuple[int, ...], ClosedPathCertificate]:
    n = inc.n_points
    found: dict[tuple[int, ...], ClosedPathCertificate] = {}

    def visit(columns: list[int], start: int) -> None:
        for j in range(start, n):
            candidate = columns + [j]
            basis = kernel_basis(inc.matrix.restrict_columns(candidate))
            if not basis:
                if len(candidate) < max_support:
                    visit(candidate, j + 1)
                continue
            # candidate was independent before j, so the kernel is a line and
            # its generator's support is the unique circuit through j.
            generator = basis[0]
            support = tuple(inc.point_ids[candidate[k]] for k, x in enumerate(generator) if x)
            if support not in found:
                lam = l1_normalized([x for x in generator if x])
                found[support] = ClosedPathCertificate(support, lam, True, True)

    visit([], 0)
    return found
