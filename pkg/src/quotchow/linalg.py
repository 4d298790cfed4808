"""Exact sparse linear algebra over Q by fraction-free integer elimination.

Rows are dicts column -> coefficient (int or Fraction).  Each incoming row is
cleared of denominators, reduced against the current pivots and divided by
the gcd of its entries, so all stored rows are primitive integer vectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _integral(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    for k, v in row.items():
        v = v * den
        if v:
            out[k] = int(v)
    return out


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {k: v // g for k, v in row.items()}
    return row


class Echelon:
    """Incrementally maintained row echelon form; pivot = smallest column of a row."""

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = _integral(row)
        while row:
            lead = min(row)
            prow = self.pivots.get(lead)
            if prow is None:
                return _primitive(row)
            a, b = prow[lead], row[lead]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new = {k: ma * v for k, v in row.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - mb * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when it increased the rank."""
        red = self.reduce(row)
        if not red:
            return False
        self.pivots[min(red)] = red
        return True

    def extend(self, rows) -> None:
        for r in rows:
            self.add(r)

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def reduced_rows(self) -> dict[int, dict]:
        """Fully reduced echelon form (each pivot column is zero in every other row)."""
        rows = {c: dict(r) for c, r in self.pivots.items()}
        for c in sorted(rows, reverse=True):
            pr = rows[c]
            for c2 in sorted(rows):
                if c2 >= c:
                    break
                r = rows[c2]
                b = r.get(c)
                if not b:
                    continue
                a = pr[c]
                g = gcd(a, b)
                ma, mb = a // g, b // g
                new = {k: ma * v for k, v in r.items()}
                for k, v in pr.items():
                    s = new.get(k, 0) - mb * v
                    if s:
                        new[k] = s
                    else:
                        new.pop(k, None)
                rows[c2] = _primitive(new)
        return rows


def rank(rows) -> int:
    ech = Echelon()
    ech.extend(rows)
    return ech.rank


def nullspace(rows, ncols: int) -> list[dict]:
    """Basis of {x in Q^ncols : r . x = 0 for all rows r}, one vector per free column."""
    ech = Echelon()
    ech.extend(rows)
    red = ech.reduced_rows()
    for c in red:
        if c >= ncols:
            raise ValueError("row has a column outside the declared range")
    basis = []
    for free in range(ncols):
        if free in red:
            continue
        vec = {free: Fraction(1)}
        for pc, r in red.items():
            v = r.get(free)
            if v:
                vec[pc] = Fraction(-v, r[pc])
        basis.append(vec)
    return basis


class Inconsistent(ValueError):
    pass


def solve(rows, ncols: int, fixed: dict[int, Fraction]) -> dict[int, Fraction]:
    """A solution of r . x = 0 for all rows with the given variables fixed.

    Free variables are set to zero.  Raises ``Inconsistent`` when no solution exists.
    """
    rhs = ncols  # column index of the constant term
    ech = Echelon()
    for r in rows:
        row = {}
        const = Fraction(0)
        for k, v in r.items():
            if k in fixed:
                const += v * fixed[k]
            else:
                row[k] = v
        if const:
            row[rhs] = const
        ech.add(row)
    if rhs in ech.pivots:
        raise Inconsistent("linear system has no solution")
    red = ech.reduced_rows()
    sol = {k: Fraction(v) for k, v in fixed.items() if v}
    for pc, r in red.items():
        c = r.get(rhs, 0)
        if c:
            sol[pc] = Fraction(-c, r[pc])
    return sol
