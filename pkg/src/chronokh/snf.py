"""Smith normal form invariants of sparse integer matrices.

Only the invariant factors are needed (free rank and torsion of homology),
so no transformation matrices are tracked.  Unit pivots are eliminated
sparsely first; whatever is left is usually tiny and goes through a dense
gcd-based reduction.
"""

from __future__ import annotations

import heapq
from math import gcd
from typing import Iterable


def invariant_factors(entries: Iterable[tuple[int, int, int]], nrows: int | None = None,
                      ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors (positive, divisibility chain) of a sparse matrix.

    ``entries`` yields ``(row, col, value)``; repeated positions are summed.
    """
    rows: dict[int, dict[int, int]] = {}
    for r, c, v in entries:
        if not v:
            continue
        row = rows.setdefault(r, {})
        nv = row.get(c, 0) + v
        if nv:
            row[c] = nv
        else:
            del row[c]
    rows = {r: row for r, row in rows.items() if row}
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    # Markowitz pivoting on unit entries with a lazily updated heap
    heap: list[tuple[int, int, int]] = []

    def push_row(r):
        row = rows[r]
        lr = len(row) - 1
        for c, v in row.items():
            if v == 1 or v == -1:
                heapq.heappush(heap, (lr * (len(cols[c]) - 1), r, c))

    for r in rows:
        push_row(r)
    units = 0
    while heap:
        cost, pr, pc = heapq.heappop(heap)
        row = rows.get(pr)
        if row is None or row.get(pc) not in (1, -1):
            continue
        now = (len(row) - 1) * (len(cols[pc]) - 1)
        if now != cost:
            heapq.heappush(heap, (now, pr, pc))
            continue
        prow = rows.pop(pr)
        pv = prow[pc]
        for c in prow:
            cols[c].discard(pr)
        for r in list(cols[pc]):
            row = rows[r]
            f = row[pc] * pv  # pv = +-1, so row[pc]/pv == row[pc]*pv
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    if c not in row:
                        cols.setdefault(c, set()).add(r)
                    row[c] = nv
                else:
                    if c in row:
                        del row[c]
                        cols[c].discard(r)
            if row:
                push_row(r)
            else:
                del rows[r]
        del cols[pc]
        units += 1

    rest = _dense_invariants(rows)
    return [1] * units + rest


def _dense_invariants(rows: dict[int, dict[int, int]]) -> list[int]:
    if not rows:
        return []
    rlist = sorted(rows)
    clist = sorted({c for row in rows.values() for c in row})
    cidx = {c: i for i, c in enumerate(clist)}
    M = [[0] * len(clist) for _ in rlist]
    for i, r in enumerate(rlist):
        for c, v in rows[r].items():
            M[i][cidx[c]] = v
    return smith_diagonal(M)


def smith_diagonal(M: list[list[int]]) -> list[int]:
    """Invariant factors of a dense integer matrix (rows of Python ints)."""
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        # pick the smallest nonzero entry in the remaining block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (piv is None or abs(v) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                # pivot must divide the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    # normalize to a divisibility chain
    diag = [d for d in diag if d]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a:
                g = gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
        diag.sort()
    return diag


def rank_mod_p(invariants: list[int], p: int | None) -> int:
    """Rank over Q (``p=None``) or F_p from the invariant factors."""
    if p is None:
        return len(invariants)
    return sum(1 for d in invariants if d % p)
