"""Paley graphs on GF(q), their integer adjacency/Laplacian matrices and checks."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError
from .fields import FiniteField, PrimePowerParams, find_field, nonzero_squares, paley_params
from .linalg import det_bareiss, matmul

__all__ = [
    "Graph",
    "SrgParams",
    "build_paley",
    "format_matrix",
    "laplacian",
    "parse_matrix",
    "spanning_tree_count",
    "srg_check",
    "srg_params",
]


@dataclass(frozen=True)
class Graph:
    """Vertex i is ``field.index_element(i)``; adjacency is a 0/1 list of lists."""

    q: int
    field: FiniteField
    adjacency: list

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def params(self) -> PrimePowerParams:
        return self.field.params

    @property
    def degree(self) -> int:
        return sum(self.adjacency[0]) if self.adjacency else 0

    def neighbours(self, v: int) -> list:
        return [u for u, a in enumerate(self.adjacency[v]) if a]


@dataclass(frozen=True)
class SrgParams:
    """Parameters of srg(n, k, lambda, mu); eigenvalues r, s as (a, b) meaning (a + b*sqrt(q))/2."""

    n: int
    k: int
    lam: int
    mu: int
    r: tuple
    s: tuple


def srg_params(q: int) -> SrgParams:
    paley_params(q)
    return SrgParams(q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4, (-1, 1), (-1, -1))


def build_paley(q: int) -> Graph:
    params = paley_params(q)
    field = find_field(params.p, params.t)
    elements = field.elements()
    squares = nonzero_squares(field)
    adjacency = [[int(x - y in squares) for y in elements] for x in elements]
    return Graph(q, field, adjacency)


def laplacian(g: Graph) -> list:
    k = g.degree
    if any(sum(row) != k for row in g.adjacency):
        raise InvalidInputError("laplacian here expects a regular graph")
    return [
        [(k if i == j else 0) - a for j, a in enumerate(row)]
        for i, row in enumerate(g.adjacency)
    ]


def srg_check(g: Graph) -> bool:
    """A^2 = kI + lam*A + mu*(J - I - A) exactly."""
    srg = srg_params(g.q)
    a = g.adjacency
    a2 = matmul(a, a)
    for i, row in enumerate(a2):
        for j, v in enumerate(row):
            if i == j:
                want = srg.k
            else:
                want = srg.lam if a[i][j] else srg.mu
            if v != want:
                return False
    return True


def spanning_tree_count(g: Graph) -> int:
    """Matrix-tree theorem: delete row and column 0 of the Laplacian."""
    lap = laplacian(g)
    return det_bareiss([row[1:] for row in lap[1:]])


def format_matrix(m) -> str:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    lines = [f"{rows} {cols}"]
    lines += [" ".join(str(v) for v in row) for row in m]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> list:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidInputError("empty matrix file")
    try:
        rows, cols = (int(v) for v in lines[0].split())
        m = [[int(v) for v in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise InvalidInputError(f"malformed matrix file: {exc}") from None
    if len(m) != rows or any(len(r) != cols for r in m):
        raise InvalidInputError(f"matrix file header says {rows}x{cols}, body disagrees")
    return m
