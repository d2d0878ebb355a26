"""Sparse Gaussian elimination over Q(q)."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from .scalars import Scalar


def solve(rows: Sequence[Dict[int, Scalar]], rhs: Sequence[Scalar],
          nvars: int) -> Optional[List[Scalar]]:
    """One solution of M x = b (free variables set to zero), or None.

    Rows are sparse dicts column -> coefficient.
    """
    pivots: Dict[int, tuple] = {}  # pivot column -> (row, rhs), row monic at pivot
    for row, b in zip(rows, rhs):
        row = {j: c for j, c in row.items() if c}
        # reduce against existing pivots
        changed = True
        while changed:
            changed = False
            for col in list(row):
                if col in pivots and row.get(col):
                    prow, pb = pivots[col]
                    f = row[col]
                    for j, c in prow.items():
                        v = row.get(j, Scalar()) - f * c
                        if v:
                            row[j] = v
                        else:
                            row.pop(j, None)
                    b = b - f * pb
                    changed = True
        if not row:
            if b:
                return None
            continue
        col = min(row)
        inv = row[col].inverse()
        prow = {j: c * inv for j, c in row.items()}
        pb = b * inv
        # keep pivots fully reduced
        for other, (orow, ob) in list(pivots.items()):
            f = orow.get(col)
            if f:
                nrow = dict(orow)
                for j, c in prow.items():
                    v = nrow.get(j, Scalar()) - f * c
                    if v:
                        nrow[j] = v
                    else:
                        nrow.pop(j, None)
                pivots[other] = (nrow, ob - f * pb)
        pivots[col] = (prow, pb)
    x = [Scalar() for _ in range(nvars)]
    for col, (_, pb) in pivots.items():
        x[col] = pb
    return x


def rank(rows: Sequence[Dict[int, Scalar]]) -> int:
    pivots: Dict[int, Dict[int, Scalar]] = {}
    for row in rows:
        row = {j: c for j, c in row.items() if c}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                inv = row[col].inverse()
                pivots[col] = {j: c * inv for j, c in row.items()}
                break
            f = row[col]
            for j, c in prow.items():
                v = row.get(j, Scalar()) - f * c
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
    return len(pivots)
