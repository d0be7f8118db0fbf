import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridcurve.exactgeom import (
    DirectedEdge,
    Direction,
    LatticeSolver,
    Point,
    canonicalize,
    cyclotomic,
    embed_vec,
    normalize_turn,
    phi,
    ring_div_exact,
    trace_tokens,
    unit_coeffs,
)
from gridcurve.words import parse_word

NS = [3, 4, 6, 8, 12]


def test_cyclotomic_polynomials():
    assert cyclotomic(4) == (1, 0, 1)  # x^2 + 1
    assert cyclotomic(6) == (1, -1, 1)  # x^2 - x + 1
    assert cyclotomic(8) == (1, 0, 0, 0, 1)
    assert cyclotomic(12) == (1, 0, -1, 0, 1)
    assert phi(3) == 2 and phi(12) == 4


def test_unit_examples():
    assert Point.unit(Direction(4, 0)).coeffs == (1, 0)
    assert Point.unit(Direction(4, 2)).coeffs == (-1, 0)
    # zeta_6^4 = -zeta_6; the float oracle pins the coefficients
    p = Point.unit(Direction(6, 4))
    assert p.coeffs == (0, -1)
    assert abs(p.to_complex() - cmath.exp(2j * cmath.pi * 4 / 6)) < 1e-12


@pytest.mark.parametrize("n", NS)
def test_full_polygon_closes(n):
    s = Point.zero(n)
    for k in range(n):
        s = s + Point.unit(Direction(n, k))
    assert s.is_zero()


def test_add_identities():
    p = Point.unit(Direction(12, 5))
    assert (p + Point.zero(12)).coeffs == p.coeffs
    q = Point.unit(Direction(12, 0)) + Point.unit(Direction(12, 6))
    assert q.is_zero()


def test_mixed_n_rejected():
    with pytest.raises(ValueError):
        Point.zero(4) + Point.zero(6)


@settings(max_examples=200)
@given(
    st.sampled_from(NS),
    st.lists(st.integers(-9, 9), min_size=1, max_size=20),
)
def test_canonicalize_idempotent(n, vec):
    once = canonicalize(tuple(vec), n)
    assert canonicalize(once, n) == once


@settings(max_examples=150)
@given(
    st.sampled_from(NS),
    st.lists(st.integers(-30, 30), min_size=1, max_size=24),
)
def test_canonicalize_preserves_value(n, vec):
    z_raw = sum(c * cmath.exp(2j * cmath.pi * j / n) for j, c in enumerate(vec))
    z_canon = embed_vec(canonicalize(tuple(vec), n), n)
    assert abs(z_raw - z_canon) < 1e-9 * max(1.0, abs(z_raw))


def test_embedding_fidelity_bulk():
    rng = random.Random(1)
    for _ in range(10_000):
        n = rng.choice(NS)
        coeffs = tuple(rng.randint(-50, 50) for _ in range(phi(n)))
        direct = sum(
            c * complex(math.cos(2 * math.pi * j / n), math.sin(2 * math.pi * j / n))
            for j, c in enumerate(coeffs)
        )
        assert abs(Point(n, coeffs).to_complex() - direct) < 1e-9


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_reversal_involution(n):
    rng = random.Random(n)
    for _ in range(50):
        tail = Point(n, tuple(rng.randint(-5, 5) for _ in range(phi(n))))
        e = DirectedEdge(tail, Direction(n, rng.randrange(n)))
        back = e.reversed().reversed()
        assert back.tail.coeffs == e.tail.coeffs
        assert back.dir == e.dir


def test_reversal_needs_even_n():
    e = DirectedEdge(Point.zero(3), Direction(3, 0))
    with pytest.raises(ValueError):
        e.reversed()


def test_trace_terdragon():
    w = parse_word("F+F-F")
    end, d, edges = trace_tokens(w.tokens, 3)
    assert len(edges) == 3
    assert d == 0
    assert Point(3, end).norm2_int() == 3


def test_trace_empty():
    end, d, edges = trace_tokens((), 5)
    assert not any(end) and d == 0 and edges == []


def test_trace_dsquare_r4():
    w = parse_word("A+A!A+A", 4)
    end, d, edges = trace_tokens(w.tokens, 4)
    assert len(edges) == 4
    assert end == (2, 0)  # twice the unit in direction 0
    # edges 2 and 3 are anti-parallel on one segment
    (p2, d2, _), (p3, d3, _) = edges[1], edges[2]
    assert (d2 + 2) % 4 == d3
    from gridcurve.exactgeom import add_vec

    assert add_vec(p2, unit_coeffs(4)[d2]) == p3


def test_closed_walk_agrees_with_floats():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.choice(NS)
        tokens = []
        for _ in range(rng.randint(1, 30)):
            tokens.append("F")
            tokens.append(rng.randint(-(n // 2), n // 2))
        end, _, _ = trace_tokens(tuple(tokens), n)
        z = embed_vec(end, n)
        assert (not any(end)) == (abs(z) < 1e-9)


def test_normalize_turn():
    assert normalize_turn(7, 12) == -5
    assert normalize_turn(-6, 12) == 6
    assert normalize_turn(6, 12) == 6
    assert normalize_turn(2, 4) == 2
    assert normalize_turn(-2, 4) == 2
    assert normalize_turn(0, 6) == 0


def test_norm2_values():
    lam = Point(12, (3, 0, 2, 0))  # 3 + 2*zeta12^2 = 4 + sqrt(3) i
    assert lam.norm2_int() == 19
    assert Point(12, (0, 1, 0, 0)).norm2_int() == 1
    assert Point(12, (1, 1, 0, 0)).norm2_int() is None  # 2 + sqrt(3)


def test_ring_division_exact():
    n = 12
    a = Point(n, (2, 1, -1, 3))
    b = Point(n, (1, 1, 0, -2))
    prod = (a * b).coeffs
    assert ring_div_exact(prod, b.coeffs, n) == a.coeffs
    with pytest.raises(ArithmeticError):
        ring_div_exact((1, 0, 0, 0), (2, 0, 0, 0), n)


def test_lattice_solver_roundtrip():
    v1 = Point(4, (1, 1))
    v2 = Point(4, (1, -1))
    solver = LatticeSolver(v1, v2)
    assert solver.decompose(v1.scaled(3) + v2.scaled(-2)) == (3, -2)
    assert solver.decompose(Point(4, (1, 0))) is None
