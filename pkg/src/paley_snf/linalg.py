"""Exact integer linear algebra on dense list-of-lists matrices.

Matrices are plain ``list[list[int]]`` (any sequence of integer sequences is
accepted as input); entries are Python ints, so there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import isprime

from .errors import InvalidInputError
from .groups import AbelianGroup

__all__ = [
    "SmithForm",
    "cokernel",
    "det_bareiss",
    "identity",
    "local_divisors",
    "matmul",
    "smith_normal_form",
]


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b) -> list:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _shape(m):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(row) != cols for row in m):
        raise InvalidInputError("matrix rows have unequal lengths")
    return rows, cols


def det_bareiss(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, cols = _shape(m)
    if n != cols:
        raise InvalidInputError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [[int(v) for v in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            ri[k + 1:] = [(akk * x - aik * y) // prev for x, y in zip(ri[k + 1:], rk[k + 1:])]
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """Nonzero diagonal entries (a divisibility chain, units included) plus zero count."""

    divisors: tuple
    zero_count: int = 0

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def nontrivial(self) -> tuple:
        return tuple(d for d in self.divisors if d != 1)

    def to_json(self) -> list:
        """Divisor/multiplicity pairs in chain order; 0 stands for the zero slots."""
        pairs = []
        for d in self.divisors:
            if pairs and pairs[-1][0] == d:
                pairs[-1][1] += 1
            else:
                pairs.append([d, 1])
        if self.zero_count:
            pairs.append([0, self.zero_count])
        return pairs


def _min_entry(a):
    best = None
    where = None
    for i, row in enumerate(a):
        for j, v in enumerate(row):
            if v:
                av = v if v > 0 else -v
                if best is None or av < best:
                    best, where = av, (i, j)
                    if av == 1:
                        return where
    return where


def _diagonalize(a) -> list:
    """Reduce a (destroyed) to diagonal form; return the nonzero pivots."""
    pivots = []
    while a and a[0]:
        where = _min_entry(a)
        if where is None:
            break
        while True:
            i, j = where
            a[0], a[i] = a[i], a[0]
            if j:
                for row in a:
                    row[0], row[j] = row[j], row[0]
            if a[0][0] < 0:
                a[0] = [-v for v in a[0]]
            top = a[0]
            piv = top[0]
            half = piv // 2
            clean = True
            for r in range(1, len(a)):
                row = a[r]
                v = row[0]
                if v:
                    quo = (v + half) // piv
                    if quo:
                        a[r] = row = [x - quo * y for x, y in zip(row, top)]
                    if row[0]:
                        clean = False
            if clean:
                # column 0 is clear below the pivot, so column ops only touch row 0
                top[1:] = [x - ((x + half) // piv) * piv for x in top[1:]]
                if not any(top[1:]):
                    break
            where = _min_entry(a)
        pivots.append(piv)
        a = [row[1:] for row in a[1:]]
    return pivots


def _chain(values) -> list:
    """Pairwise gcd/lcm merging into a divisibility chain."""
    d = sorted(values)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            if d[j] % d[i]:
                g = gcd(d[i], d[j])
                d[i], d[j] = g, d[i] // g * d[j]
    return d


def smith_normal_form(m) -> SmithForm:
    """Smith normal form of an integer matrix (diagonal only, no transforms)."""
    rows, cols = _shape(m)
    work = [[int(v) for v in row] for row in m]
    pivots = _diagonalize(work)
    return SmithForm(tuple(_chain(pivots)), min(rows, cols) - len(pivots))


def cokernel(m) -> AbelianGroup:
    """Z^rows / (column span of m)."""
    rows, _ = _shape(m)
    snf = smith_normal_form(m)
    return AbelianGroup.from_invariant_factors(snf.nontrivial(), free_rank=rows - snf.rank)


def local_divisors(m, ell: int) -> tuple:
    """Sorted exponents of ell in the nonzero Smith divisors of m."""
    if not isprime(ell):
        raise InvalidInputError(f"{ell} is not prime")
    rows, cols = _shape(m)
    if rows != cols:
        raise InvalidInputError("local divisors need a square matrix")
    out = []
    for d in smith_normal_form(m).divisors:
        e = 0
        while d % ell == 0:
            d //= ell
            e += 1
        out.append(e)
    return tuple(sorted(out))
