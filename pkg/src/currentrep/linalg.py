"""Exact linear algebra over the rationals.

Rank and independence tests run fraction-free: every row is scaled to a
primitive integer vector and elimination uses integer cross-multiplication
followed by content removal, so no rational arithmetic happens in the inner
loop.  Rows are sparse ``{column: value}`` dicts.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Sequence, Union

Row = Dict[int, int]
RowLike = Union[Mapping[int, object], Sequence[object]]


def _items(row: RowLike):
    return row.items() if isinstance(row, Mapping) else enumerate(row)


def _primitive(row: Row) -> Row:
    g = gcd(*row.values())
    if g == 1:
        return row
    return {j: v // g for j, v in row.items()}


def integer_row(row: RowLike) -> Row:
    """Scale a rational row to a primitive integer row (zero entries dropped)."""
    nz = {j: Fraction(v) for j, v in _items(row) if v}
    if not nz:
        return {}
    den = lcm(*(v.denominator for v in nz.values()))
    return _primitive({j: int(v * den) for j, v in nz.items()})


class Echelon:
    """Incrementally maintained integer row echelon form.

    >>> e = Echelon()
    >>> e.add([1, 2]), e.add([2, 4]), e.add([0, 1])
    (True, False, True)
    """

    def __init__(self):
        self.pivots: Dict[int, Row] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row: Row) -> Row:
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            a, b = piv[lead], row[lead]
            new = {j: a * v for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new) if new else {}
        return row

    def add(self, row: RowLike) -> bool:
        """Insert ``row``; return whether it was independent of the rows so far."""
        r = self.reduce(integer_row(row))
        if not r:
            return False
        self.pivots[min(r)] = r
        return True


def rank(rows: Iterable[RowLike]) -> int:
    e = Echelon()
    for row in rows:
        e.add(row)
    return len(e)


def row_basis(rows: Sequence[RowLike]) -> List[int]:
    """Indices of the greedy (first-come) maximal independent subset of rows."""
    e = Echelon()
    return [i for i, row in enumerate(rows) if e.add(row)]


def inverse(mat: Sequence[Sequence[object]]) -> List[List[Fraction]]:
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def nullspace(mat: Sequence[Sequence[object]], ncols: int = None) -> List[List[Fraction]]:
    """Basis of {x : mat x = 0} via reduced row echelon form."""
    rows = [[Fraction(x) for x in row] for row in mat]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def coordinates(basis: Sequence[RowLike], targets: Sequence[RowLike]) -> List[List[Fraction]]:
    """Coefficients c with ``sum_k c[k] * basis[k] == target`` for each target.

    ``basis`` must be linearly independent and every target must lie in its
    span (unchecked beyond the pivot columns).
    """
    if not basis:
        return [[] for _ in targets]
    e = Echelon()
    for row in basis:
        if not e.add(row):
            raise ValueError("basis rows are dependent")
    cols = sorted(e.pivots)
    sub = []
    for row in basis:
        d = dict((j, Fraction(v)) for j, v in _items(row))
        sub.append([d.get(c, Fraction(0)) for c in cols])
    inv = inverse(sub)
    k = len(cols)
    out = []
    for t in targets:
        d = dict((j, Fraction(v)) for j, v in _items(t))
        tv = [d.get(c, Fraction(0)) for c in cols]
        out.append([sum((tv[i] * inv[i][j] for i in range(k)), Fraction(0)) for j in range(k)])
    return out
