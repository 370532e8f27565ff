"""Integer Smith normal form, enough for coloring-space bookkeeping.

Matrices here are tiny (one row per crossing), so this favors clarity over
asymptotics: repeatedly pick the smallest pivot, clear its row and column,
and force the divisibility chain by folding offending rows into the pivot
row.
"""

from __future__ import annotations

from typing import Sequence


def smith_normal_form(rows: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors (positive, each dividing the next) of an integer
    matrix.  The length of the result is the rank."""
    M = [list(map(int, r)) for r in rows]
    if not M or not M[0]:
        return []
    rm, cn = len(M), len(M[0])
    if any(len(r) != cn for r in M):
        raise ValueError("ragged matrix")

    divisors: list[int] = []
    t = 0
    while t < min(rm, cn):
        best = None
        for i in range(t, rm):
            for j in range(t, cn):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        M[t], M[bi] = M[bi], M[t]
        for row in M:
            row[t], row[bj] = row[bj], row[t]

        dirty = False
        for i in range(t + 1, rm):
            if M[i][t]:
                q = M[i][t] // M[t][t]
                for j in range(t, cn):
                    M[i][j] -= q * M[t][j]
                dirty = dirty or M[i][t] != 0
        for j in range(t + 1, cn):
            if M[t][j]:
                q = M[t][j] // M[t][t]
                for i in range(t, rm):
                    M[i][j] -= q * M[i][t]
                dirty = dirty or M[t][j] != 0
        if dirty:
            continue

        fixed = True
        for i in range(t + 1, rm):
            if any(M[i][j] % M[t][t] for j in range(t + 1, cn)):
                for j in range(t, cn):
                    M[t][j] += M[i][j]
                fixed = False
                break
        if not fixed:
            continue

        divisors.append(abs(M[t][t]))
        t += 1
    return divisors
