"""Exact lattice arithmetic for grids with turn unit 2*pi/n.

Positions and displacements are integer vectors over the power basis
{zeta^0, ..., zeta^(phi(n)-1)} of the ring Z[zeta], zeta = exp(2*pi*i/n).
Equality of points, and hence of directed edges, is decided exactly;
floating point enters only when exporting coordinates for drawing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of integer polynomials (ascending coefficients), exact."""
    num = list(num)
    dlead = den[-1]
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % dlead != 0:
            raise ArithmeticError("non-exact polynomial division")
        q[i] = c // dlead
        for j, dc in enumerate(den):
            num[i + j] -= q[i] * dc
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending, monic."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            poly = _poly_div_exact(poly, list(cyclotomic(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    return len(cyclotomic(n)) - 1


@lru_cache(maxsize=None)
def _power_reps(n: int) -> tuple[tuple[int, ...], ...]:
    """zeta^j reduced to the power basis, for j in range(2n)."""
    deg = phi(n)
    top = cyclotomic(n)  # x^deg = -(top[0] + top[1] x + ...)
    reps: list[tuple[int, ...]] = []
    for j in range(2 * n):
        if j < deg:
            vec = [0] * deg
            vec[j] = 1
        else:
            prev = reps[j - 1]
            shifted = [0] + list(prev[:-1])
            lead = prev[-1]
            if lead:
                for i in range(deg):
                    shifted[i] -= lead * top[i]
            vec = shifted
        reps.append(tuple(vec))
    return tuple(reps)


@lru_cache(maxsize=None)
def _embed_basis(n: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / n) for k in range(phi(n)))


def canonicalize(coeffs: Sequence[int], n: int) -> tuple[int, ...]:
    """Fold an integer vector over powers of zeta into the power basis."""
    deg = phi(n)
    reps = _power_reps(n)
    out = [0] * deg
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        rep = reps[j % (2 * n)] if j >= deg else None
        if rep is None:
            out[j] += c
        else:
            for i in range(deg):
                out[i] += c * rep[i]
    return tuple(out)


@lru_cache(maxsize=None)
def unit_coeffs(n: int) -> tuple[tuple[int, ...], ...]:
    """Canonical coefficient vectors of zeta^k for k in range(n)."""
    reps = _power_reps(n)
    return tuple(reps[k] for k in range(n))


def add_vec(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def sub_vec(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def mul_vec(a: tuple[int, ...], b: tuple[int, ...], n: int) -> tuple[int, ...]:
    conv = [0] * (2 * len(a) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                conv[i + j] += x * y
    return canonicalize(conv, n)


def conj_vec(a: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Complex conjugate: zeta^j maps to zeta^(n-j)."""
    reps = _power_reps(n)
    deg = phi(n)
    out = [0] * deg
    for j, c in enumerate(a):
        if c == 0:
            continue
        rep = reps[(n - j) % n]
        for i in range(deg):
            out[i] += c * rep[i]
    return tuple(out)


def rotate_vec(a: tuple[int, ...], k: int, n: int) -> tuple[int, ...]:
    """Multiply by zeta^k."""
    k %= n
    if k == 0:
        return tuple(a)
    return mul_vec(a, unit_coeffs(n)[k], n)


def embed_vec(a: Sequence[int], n: int) -> complex:
    basis = _embed_basis(n)
    return sum(c * z for c, z in zip(a, basis)) if any(a) else 0j


def galois_apply(a: tuple[int, ...], k: int, n: int) -> tuple[int, ...]:
    """Image of a under zeta -> zeta^k (k coprime to n)."""
    reps = _power_reps(n)
    deg = phi(n)
    out = [0] * deg
    for j, c in enumerate(a):
        if c == 0:
            continue
        rep = reps[(j * k) % n]
        for i in range(deg):
            out[i] += c * rep[i]
    return tuple(out)


def ring_div_exact(num: tuple[int, ...], den: tuple[int, ...], n: int) -> tuple[int, ...]:
    """num / den in Z[zeta_n] when the quotient lies in the ring.

    Multiplies by the product of the other Galois conjugates of den, then
    divides by the rational field norm.  Raises on inexact division.
    """
    if not any(den):
        raise ZeroDivisionError("division by zero in Z[zeta]")
    adj = None
    for k in range(2, n + 1):
        if math.gcd(k, n) != 1:
            continue
        conj = galois_apply(den, k, n)
        adj = conj if adj is None else mul_vec(adj, conj, n)
    if adj is None:  # n = 1 or 2 never occurs (n >= 3)
        adj = unit_coeffs(n)[0]
    norm_vec = mul_vec(den, adj, n)
    if any(norm_vec[1:]):
        raise ArithmeticError("field norm did not come out rational")
    norm = norm_vec[0]
    prod = mul_vec(num, adj, n)
    if any(c % norm for c in prod):
        raise ArithmeticError("non-exact division in Z[zeta]")
    return tuple(c // norm for c in prod)


@dataclass(frozen=True)
class Direction:
    """Direction k*2*pi/n on a grid with turn resolution n."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"turn resolution must be >= 3, got {self.n}")
        object.__setattr__(self, "k", self.k % self.n)

    def turned(self, t: int) -> "Direction":
        return Direction(self.n, (self.k + t) % self.n)

    def reversed(self) -> "Direction":
        if self.n % 2:
            raise ValueError("reversal needs even turn resolution")
        return Direction(self.n, (self.k + self.n // 2) % self.n)

    def angle(self) -> float:
        return 2 * math.pi * self.k / self.n


@dataclass(frozen=True)
class Point:
    """Exact lattice point: integer coordinates over the power basis of zeta_n."""

    n: int
    coeffs: tuple[int, ...]

    @staticmethod
    def zero(n: int) -> "Point":
        return Point(n, (0,) * phi(n))

    @staticmethod
    def unit(direction: Direction) -> "Point":
        return Point(direction.n, unit_coeffs(direction.n)[direction.k])

    def _check(self, other: "Point") -> None:
        if self.n != other.n:
            raise ValueError(f"mixed turn resolutions {self.n} and {other.n}")

    def __add__(self, other: "Point") -> "Point":
        self._check(other)
        return Point(self.n, add_vec(self.coeffs, other.coeffs))

    def __sub__(self, other: "Point") -> "Point":
        self._check(other)
        return Point(self.n, sub_vec(self.coeffs, other.coeffs))

    def __neg__(self) -> "Point":
        return Point(self.n, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Point") -> "Point":
        self._check(other)
        return Point(self.n, mul_vec(self.coeffs, other.coeffs, self.n))

    def conjugate(self) -> "Point":
        return Point(self.n, conj_vec(self.coeffs, self.n))

    def rotated(self, k: int) -> "Point":
        return Point(self.n, rotate_vec(self.coeffs, k, self.n))

    def scaled(self, m: int) -> "Point":
        return Point(self.n, tuple(m * c for c in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def norm2(self) -> "Point":
        """|self|^2 as an exact (real) ring element."""
        return self * self.conjugate()

    def norm2_int(self) -> int | None:
        """|self|^2 when it is a rational integer, else None."""
        v = self.norm2().coeffs
        if any(v[1:]):
            return None
        return v[0]

    def to_complex(self) -> complex:
        return embed_vec(self.coeffs, self.n)

    def __abs__(self) -> float:
        return abs(self.to_complex())


@dataclass(frozen=True)
class DirectedEdge:
    """Unit edge from tail in the given direction; head = tail + unit(dir)."""

    tail: Point
    dir: Direction

    def head(self) -> Point:
        return self.tail + Point.unit(self.dir)

    def reversed(self) -> "DirectedEdge":
        return DirectedEdge(self.head(), self.dir.reversed())

    def midpoint(self) -> complex:
        return self.tail.to_complex() + Point.unit(self.dir).to_complex() / 2


def trace_tokens(
    tokens: Iterable[str | int],
    n: int,
    start: tuple[int, ...] | None = None,
    start_dir: int = 0,
) -> tuple[tuple[int, ...], int, list[tuple[tuple[int, ...], int, str]]]:
    """Turtle-walk a token sequence; raw form used by the heavier checks.

    Letters draw a unit edge, integers turn.  Returns the end position,
    end direction, and one (tail, dir, letter) triple per edge.
    """
    units = unit_coeffs(n)
    pos = start if start is not None else (0,) * phi(n)
    d = start_dir % n
    edges: list[tuple[tuple[int, ...], int, str]] = []
    for tok in tokens:
        if isinstance(tok, int):
            d = (d + tok) % n
        else:
            edges.append((pos, d, tok))
            pos = add_vec(pos, units[d])
    return pos, d, edges


def trace(word, start: Point, start_dir: Direction):
    """Trace a word into DirectedEdges; see trace_tokens for the raw variant."""
    n = start.n
    if start_dir.n != n:
        raise ValueError("direction and start point disagree on n")
    pos, d, raw = trace_tokens(word.tokens, n, start.coeffs, start_dir.k)
    edges = [DirectedEdge(Point(n, p), Direction(n, k)) for p, k, _ in raw]
    return Point(n, pos), Direction(n, d), edges


def normalize_turn(t: int, n: int) -> int:
    """Reduce a turn mod n into (-n/2, n/2]; U-turns come out as +n/2."""
    t %= n
    if 2 * t > n:
        t -= n
    return t


class LatticeSolver:
    """Integer membership tests for the lattice spanned by two exact vectors."""

    def __init__(self, v1: Point, v2: Point):
        if v1.n != v2.n:
            raise ValueError("mixed turn resolutions")
        self.n = v1.n
        self.v1 = v1
        self.v2 = v2
        rows = list(zip(v1.coeffs, v2.coeffs))
        self._rows = rows
        self._pair = None
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
                if det != 0:
                    self._pair = (i, j, det)
                    break
            if self._pair:
                break
        if self._pair is None:
            raise ValueError("lattice vectors are collinear")

    def decompose(self, p: Point) -> tuple[int, int] | None:
        """Integers (a, b) with p = a*v1 + b*v2, or None."""
        i, j, det = self._pair
        pi, pj = p.coeffs[i], p.coeffs[j]
        ri, rj = self._rows[i], self._rows[j]
        a_num = pi * rj[1] - pj * ri[1]
        b_num = ri[0] * pj - rj[0] * pi
        if a_num % det or b_num % det:
            return None
        a, b = a_num // det, b_num // det
        check = self.v1.scaled(a) + self.v2.scaled(b)
        if check.coeffs != p.coeffs:
            return None
        return a, b
