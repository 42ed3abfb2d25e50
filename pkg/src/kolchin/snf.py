"""Smith normal form over the integers, for small relation matrices."""

from __future__ import annotations

from typing import Sequence


def smith_invariant_factors(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix.

    Plain elementary row/column reduction with the usual fix-up step
    that folds a non-divisible entry into the pivot row.  Exact integer
    arithmetic throughout.
    """
    a = [[int(x) for x in row] for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    factors: list[int] = []
    t = 0
    while t < m and t < n:
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            # clear the pivot column
            dirty = False
            for i in range(m):
                if i == t or a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                for j in range(n):
                    a[i][j] -= q * a[t][j]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]  # smaller remainder becomes pivot
                    dirty = True
            if dirty:
                continue
            # clear the pivot row
            for j in range(n):
                if j == t or a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                for i in range(m):
                    a[i][j] -= q * a[i][t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(n):
                a[t][j] += a[offender][j]
        factors.append(abs(a[t][t]))
        t += 1
    return tuple(factors)
