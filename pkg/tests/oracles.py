"""Brute-force reference implementations, independent of the library code.

The closed-path oracle never searches for a full-support kernel vector.
It uses its own integer row reduction and the rank characterization
instead: a column subset S is a closed path iff its columns are dependent
and dropping any single column leaves the rank unchanged (every column then
lies in the span of the others, so a generic kernel combination touches all
of them). Keeping the criterion and the elimination code separate from the
package is what makes the cross-checks in the test suite meaningful.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from linsuper import FunctionFamily, IncidenceMatrix, PointSet, abstract_points


def integer_rows(inc: IncidenceMatrix) -> list[list[int]]:
    return [[int(x) for x in inc.matrix.row(i)] for i in range(inc.matrix.rows)]


def oracle_rank(rows: list[list[int]], cols: list[int]) -> int:
    """Rank of the selected columns, by fraction-free forward elimination."""
    work = [[row[c] for c in cols] for row in rows]
    rank = 0
    width = len(cols)
    for c in range(width):
        pivot = None
        for i in range(rank, len(work)):
            if work[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank]
        for i in range(rank + 1, len(work)):
            if work[i][c]:
                a, b = lead[c], work[i][c]
                work[i] = [a * x - b * y for x, y in zip(work[i], lead)]
        rank += 1
    return rank


def oracle_is_closed(rows: list[list[int]], cols: list[int]) -> bool:
    full = oracle_rank(rows, cols)
    if full == len(cols):
        return False
    return all(
        oracle_rank(rows, cols[:k] + cols[k + 1 :]) == full for k in range(len(cols))
    )


def oracle_closed_subsets(inc: IncidenceMatrix) -> list[frozenset[int]]:
    """Every closed-path subset, as sets of point ids, by exhaustive search."""
    rows = integer_rows(inc)
    n = inc.n_points
    closed = []
    for size in range(2, n + 1):
        for cols in combinations(range(n), size):
            if oracle_is_closed(rows, list(cols)):
                closed.append(frozenset(inc.point_ids[c] for c in cols))
    return closed


def oracle_minimal_paths(inc: IncidenceMatrix) -> set[frozenset[int]]:
    closed = oracle_closed_subsets(inc)
    return {s for s in closed if not any(t < s for t in closed)}


def random_instance(
    rng: random.Random, max_points: int = 9, max_functions: int = 3, values: tuple[int, ...] = (0, 1, 2)
) -> tuple[PointSet, FunctionFamily]:
    n = rng.randint(2, max_points)
    r = rng.randint(1, max_functions)
    ps = abstract_points(list(range(1, n + 1)))
    tables = tuple(
        {pid: Fraction(rng.choice(values)) for pid in ps.ids} for _ in range(r)
    )
    return ps, FunctionFamily(tables)


def random_table(rng: random.Random, ids: tuple[int, ...]) -> dict[int, Fraction]:
    return {pid: Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for pid in ids}


def random_superposition(
    rng: random.Random, ps: PointSet, ff: FunctionFamily
) -> dict[int, Fraction]:
    """f = sum of random univariate tables applied to the family values."""
    outer = []
    for table in ff.tables:
        outer.append({v: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for v in set(table.values())})
    return {
        pid: sum(outer[i][ff.value_at(i, pid)] for i in range(ff.r))
        for pid in ps.ids
    }
