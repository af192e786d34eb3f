"""Exact linear algebra over the rational and cyclotomic fields.

Matrices are sequences of row tuples over one field.  Rank over the
rationals goes through fraction-free (Bareiss) elimination on integerized
rows to keep intermediate entries small; cyclotomic matrices use plain
exact elimination.  Reduced row echelon form with leading entries 1 is
the canonical key for row spaces (flats hash on it).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .fields import CyclotomicNumber


def _integerize(row):
    "Scale a Fraction row to a primitive integer row."
    denom = 1
    for x in row:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _bareiss_rank(rows):
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, len(m)):
            head = m[i][col]
            for j in range(col, ncols):
                m[i][j] = (pivot * m[i][j] - head * m[rank][j]) // prev
        prev = pivot
        rank += 1
        if rank == len(m):
            break
    return rank


def matrix_rank(rows) -> int:
    "Rank of a matrix given as an iterable of row tuples."
    rows = [tuple(r) for r in rows]
    if not rows:
        return 0
    if isinstance(rows[0][0], CyclotomicNumber):
        return len(rref(rows))
    return _bareiss_rank([_integerize(r) for r in rows])


def rref(rows):
    """Reduced row echelon form: tuple of row tuples, pivots 1, zero rows
    dropped.  Canonical for the row space regardless of input order."""
    basis = []  # kept sorted by pivot column
    for row in rows:
        basis = _insert(basis, row)
    return tuple(basis)


def _pivot(row):
    for i, x in enumerate(row):
        if x:
            return i
    return None


def _insert(basis, row):
    "Insert one row into an rref basis; returns a new basis list."
    row = list(row)
    for b in basis:
        p = _pivot(b)
        if row[p]:
            c = row[p]
            row = [x - c * y for x, y in zip(row, b)]
    p = _pivot(row)
    if p is None:
        return basis
    lead = row[p]
    row = tuple(x / lead for x in row)
    new = []
    for b in basis:
        if b[p]:
            c = b[p]
            b = tuple(x - c * y for x, y in zip(b, row))
        new.append(b)
    new.append(row)
    new.sort(key=_pivot)
    return new


def rref_insert(basis, row):
    """Extend an rref basis (tuple) by one row.  Returns the same tuple if
    the row is dependent, else the enlarged canonical basis."""
    extended = _insert(list(basis), row)
    if len(extended) == len(basis):
        return basis
    return tuple(extended)


def reduce_vector(vector, basis):
    "Residual of a vector after elimination by an rref basis."
    row = list(vector)
    for b in basis:
        p = _pivot(b)
        if row[p]:
            c = row[p]
            row = [x - c * y for x, y in zip(row, b)]
    return tuple(row)


def in_row_space(vector, basis) -> bool:
    return not any(reduce_vector(vector, basis))


def pivot_columns(basis):
    return tuple(_pivot(b) for b in basis)
