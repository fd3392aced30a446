"""Transfer-matrix enumeration of carry patterns.

The digraph lives on [p] x [2]: an arc (alpha, gamma) -> (alpha', gamma')
exists when alpha + (p-1)/2 + gamma = beta + p*gamma' for some digit beta,
and it carries weight gamma'.  Closed walks of length t encode additions of
(q-1)/2 modulo q-1 digit by digit, with the walk weight counting carries.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .carries import carry_profile
from .errors import InvalidInputError

__all__ = [
    "BivarPoly",
    "TransferMatrix",
    "Z",
    "X",
    "build_transfer_matrix",
    "char_poly_Q",
    "closed_walk_poly",
    "expected_Q",
    "f_closed_form",
    "series_check_F",
    "series_F",
    "walk_traces",
    "special_walk_audit",
    "WalkAudit",
]


class BivarPoly:
    """Integer polynomial in z and x, stored as ``{(deg_z, deg_x): coeff}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if isinstance(terms, int):
            terms = {(0, 0): terms}
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_x(cls, coeffs) -> "BivarPoly":
        return cls({(0, m): c for m, c in enumerate(coeffs)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = BivarPoly(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = BivarPoly(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = BivarPoly(other)
        return self + (-other)

    def __rsub__(self, other):
        return BivarPoly(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return BivarPoly({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + u * v
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BivarPoly(1)
        for _ in range(e):
            out = out * self
        return out

    def leading(self):
        key = max(self.terms)
        return key, self.terms[key]

    def exact_div(self, other: "BivarPoly") -> "BivarPoly":
        """Quotient of an exact division in Z[z, x] (lex order, z > x)."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        (dz, dx), lc = other.leading()
        rem = BivarPoly(self.terms)
        quo: dict = {}
        while rem:
            (rz, rx), rc = rem.leading()
            if rz < dz or rx < dx or rc % lc:
                raise ArithmeticError("division is not exact")
            term = BivarPoly({(rz - dz, rx - dx): rc // lc})
            quo[(rz - dz, rx - dx)] = rc // lc
            rem = rem - term * other
        return BivarPoly(quo)

    def coeff(self, dz: int = 0, dx: int = 0) -> int:
        return self.terms.get((dz, dx), 0)

    def z_coeff(self, n: int) -> "BivarPoly":
        """Coefficient of z^n as a polynomial in x."""
        return BivarPoly({(0, b): v for (a, b), v in self.terms.items() if a == n})

    def z_degree(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def x_coeffs(self) -> list:
        """Coefficients in x, low to high, of a z-free polynomial."""
        if any(a for a, _ in self.terms):
            raise InvalidInputError("polynomial depends on z")
        deg = max((b for _, b in self.terms), default=-1)
        return [self.terms.get((0, m), 0) for m in range(deg + 1)]

    def evaluate(self, z: int = 0, x: int = 0) -> int:
        return sum(v * z**a * x**b for (a, b), v in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), v in sorted(self.terms.items()):
            mono = "*".join(
                s for s in ((f"z^{a}" if a > 1 else "z" if a else ""),
                            (f"x^{b}" if b > 1 else "x" if b else "")) if s
            )
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


Z = BivarPoly({(1, 0): 1})
X = BivarPoly({(0, 1): 1})


@dataclass(frozen=True)
class TransferMatrix:
    """Rows/columns indexed by (alpha, gamma) -> alpha + p*gamma."""

    p: int
    entries: tuple

    @staticmethod
    def vertex(p: int, alpha: int, gamma: int) -> int:
        return alpha + p * gamma

    def rows(self) -> list:
        return [list(r) for r in self.entries]


def _arc(p, alpha, gamma, gamma_next):
    beta = alpha + (p - 1) // 2 + gamma - p * gamma_next
    return 0 <= beta < p


def build_transfer_matrix(p: int) -> TransferMatrix:
    if p < 3 or p % 2 == 0:
        raise InvalidInputError(f"p must be odd and >= 3, got {p}")
    zero, one = BivarPoly(), BivarPoly(1)
    entries = []
    for gamma in (0, 1):
        for alpha in range(p):
            row = []
            for gamma_next in (0, 1):
                label = (X if gamma_next else one) if _arc(p, alpha, gamma, gamma_next) else zero
                row += [label] * p
            entries.append(tuple(row))
    distinct = {r for r in entries}
    assert len(distinct) == 2
    return TransferMatrix(p, tuple(entries))


def _det_poly(m) -> BivarPoly:
    """Fraction-free (Bareiss) determinant over Z[z, x]."""
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    prev = BivarPoly(1)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return BivarPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]).exact_div(prev)
            a[i][k] = BivarPoly()
        prev = akk
    return a[n - 1][n - 1] * sign if n else BivarPoly(1)


def expected_Q(p: int) -> BivarPoly:
    """1 - ((p+1)/2)(1+x)z + p*x*z^2."""
    return 1 - (1 + X) * Z * ((p + 1) // 2) + X * Z * Z * p


def char_poly_Q(p: int) -> BivarPoly:
    """det(I - zB), computed from the materialised transfer matrix."""
    b = build_transfer_matrix(p).entries
    n = len(b)
    m = [[(1 if i == j else 0) - Z * b[i][j] for j in range(n)] for i in range(n)]
    return _det_poly(m)


def _xpoly(entry: BivarPoly) -> list:
    return entry.x_coeffs()


def _xmul_add(acc: list, u: list, v: list) -> None:
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                acc[i + j] += a * b


def walk_traces(p: int, n_max: int) -> list:
    """trace(B^n) for n = 1..n_max, as polynomials in x."""
    if n_max < 1:
        raise InvalidInputError(f"walk length must be >= 1, got {n_max}")
    b = [[_xpoly(e) for e in row] for row in build_transfer_matrix(p).entries]
    size = len(b)
    power = b
    traces = []
    for n in range(1, n_max + 1):
        if n > 1:
            nxt = []
            for i in range(size):
                row = []
                for j in range(size):
                    acc = [0] * (n + 1)
                    for k in range(size):
                        if power[i][k] and b[k][j]:
                            _xmul_add(acc, power[i][k], b[k][j])
                    row.append(acc)
                nxt.append(row)
            power = nxt
        trace = [0] * (n + 1)
        for i in range(size):
            for m, c in enumerate(power[i][i]):
                trace[m] += c
        traces.append(BivarPoly.from_x(trace))
    return traces


def closed_walk_poly(p: int, n: int) -> BivarPoly:
    """trace(B^n): coefficient of x^m counts closed walks of length n and weight m."""
    if n < 1:
        raise InvalidInputError(f"walk length must be >= 1, got {n}")
    return walk_traces(p, n)[-1]


def series_F(p: int, n_max: int) -> list:
    """Coefficients F_1..F_n_max (polynomials in x) of -z Q_z / Q."""
    q_poly = char_poly_Q(p)
    qc = [q_poly.z_coeff(j) for j in range(n_max + 1)]
    assert qc[0] == 1
    # reciprocal series 1/Q: r_0 = 1, r_n = -sum_{j>=1} Q_j r_{n-j}
    recip = [BivarPoly(1)]
    for n in range(1, n_max + 1):
        acc = BivarPoly()
        for j in range(1, n + 1):
            acc = acc + qc[j] * recip[n - j]
        recip.append(-acc)
    numer = [BivarPoly()] + [qc[j] * (-j) for j in range(1, n_max + 1)]
    out = []
    for n in range(1, n_max + 1):
        acc = BivarPoly()
        for j in range(1, n + 1):
            acc = acc + numer[j] * recip[n - j]
        out.append(acc)
    return out


def series_check_F(p: int, n_max: int) -> bool:
    if n_max < 2:
        raise InvalidInputError(f"n_max must be >= 2, got {n_max}")
    return series_F(p, n_max) == walk_traces(p, n_max)


def f_closed_form(p: int, t: int, lam: int) -> int:
    """Number of closed walks of length t and weight lam, in closed form."""
    if t < 1 or not 0 <= lam <= t:
        raise InvalidInputError(f"need t >= 1 and 0 <= lambda <= t, got lambda={lam}, t={t}")
    half = (p + 1) // 2
    total = 0
    for i in range(min(lam, t - lam) + 1):
        lead = t * comb(t - i, i)
        assert lead % (t - i) == 0
        total += lead // (t - i) * comb(t - 2 * i, lam - i) * (-p) ** i * half ** (t - 2 * i)
    return total


@dataclass(frozen=True)
class WalkAudit:
    """Closed walks of length t not accounted for by an admissible index i."""

    p: int
    t: int
    walks: BivarPoly
    profile: BivarPoly
    difference: BivarPoly
    expected: BivarPoly

    @property
    def ok(self) -> bool:
        return self.difference == self.expected


def special_walk_audit(p: int, t: int) -> WalkAudit:
    """trace(B^t) minus the carry profile should be 2 + 2x^t.

    The four extra walks come from a = 0 (weight 0), a = q-1 (weight t) and
    a = (q-1)/2 (one walk of each weight).
    """
    if t < 1:
        raise InvalidInputError(f"t must be >= 1, got {t}")
    walks = closed_walk_poly(p, t)
    profile = BivarPoly.from_x(carry_profile(p**t).counts)
    difference = walks - profile
    expected = 2 + 2 * X**t
    return WalkAudit(p, t, walks, profile, difference, expected)
