import random

import pytest

from gridcurve.numsys import (
    EISENSTEIN,
    GAUSSIAN,
    Expansion,
    LatticeElem,
    NumerationSystem,
    builtin_systems,
    check_residue_system,
    divide_exact,
    expand_integer,
    fundamental_region_count,
    fundamental_region_points,
    parse_elem,
    reconstruct,
)


def G(a, b):
    return LatticeElem(a, b, GAUSSIAN)


def E(a, b):
    return LatticeElem(a, b, EISENSTEIN)


def test_norms():
    assert G(3, 4).norm() == 25
    assert E(-1, 3).norm() == 7
    assert E(1, 1).norm() == 3
    assert G(-2, 1).norm() == 5


def test_arithmetic_against_complex():
    rng = random.Random(3)
    for ring in (GAUSSIAN, EISENSTEIN):
        for _ in range(200):
            x = LatticeElem(rng.randint(-9, 9), rng.randint(-9, 9), ring)
            y = LatticeElem(rng.randint(-9, 9), rng.randint(-9, 9), ring)
            assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-9
            assert abs((x + y).to_complex() - x.to_complex() - y.to_complex()) < 1e-9
            assert abs(x.norm() - abs(x.to_complex()) ** 2) < 1e-9


def test_crs_radix3():
    ns = builtin_systems()["radix3"]
    rep = check_residue_system(ns)
    assert rep.ok and rep.expected == 9 and len(ns.digits) == 9


def test_crs_radix_eisenstein7():
    ns = builtin_systems()["radix-1+3w"]
    assert check_residue_system(ns).ok
    assert len(ns.digits) == 7 == ns.radix.norm()
    # digit set includes 2*omega_3 = -2+2w and 1+omega_6
    assert E(-2, 2) in ns.digits and E(1, 1) in ns.digits


def test_crs_radix_minus2():
    ns = builtin_systems()["radix-2"]
    assert check_residue_system(ns).ok
    assert len(ns.digits) == 4 == ns.radix.norm()


def test_non_crs_radix_minus2_plus_i():
    ns = builtin_systems()["radix-2+i"]
    rep = check_residue_system(ns)
    assert not rep.ok
    # the witnesses: 1 = -1+i and -1 = 1-i modulo -2+i
    pairs = {frozenset(((a.a, a.b), (b.a, b.b))) for a, b in rep.duplicates}
    assert frozenset(((1, 0), (-1, 1))) in pairs
    assert frozenset(((-1, 0), (1, -1))) in pairs


def test_expand_zero():
    ns = builtin_systems()["radix3"]
    assert expand_integer(ns, G(0, 0)).digits == []


def test_expand_restricted_negabinary():
    ns = NumerationSystem.make(EISENSTEIN, E(-2, 0), [E(0, 0), E(1, 0)])
    ex = expand_integer(ns, E(-1, 0))
    assert ex.terminated and ex.digits == [1, 1]


def test_expand_spec_example():
    ns = builtin_systems()["radix-1+3w"]
    ex = expand_integer(ns, E(1, 0))
    assert ex.terminated
    assert [ns.digits[i] for i in ex.digits] == [E(-2, 2), E(0, -1)]
    # verify 1 = 2w3 + (-1+3w)(-w)
    assert reconstruct(ns, ex.digits) == E(1, 0)


def test_expand_cycle_is_value():
    ns = builtin_systems()["radix3"]
    ex = expand_integer(ns, G(-1, 0))
    assert not ex.terminated
    assert ex.cycle  # a genuine repeating state
    # partial digits plus the cycle entry reconstruct the input
    power = G(1, 0)
    for _ in ex.digits:
        power = power * ns.radix
    assert reconstruct(ns, ex.digits) + ex.cycle[0] * power == G(-1, 0)


@pytest.mark.parametrize("name", ["radix3", "radix-1+3w", "radix-2"])
def test_reconstruction_random(name):
    ns = builtin_systems()[name]
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(1000):
        z = LatticeElem(rng.randint(-50, 50), rng.randint(-50, 50), ns.ring)
        ex = expand_integer(ns, z)
        if ex.terminated:
            assert reconstruct(ns, ex.digits) == z
        else:
            power = LatticeElem(1, 0, ns.ring)
            for _ in ex.digits:
                power = power * ns.radix
            assert reconstruct(ns, ex.digits) + ex.cycle[0] * power == z


def test_region_depth1_is_digit_set():
    ns = builtin_systems()["radix-2"]
    pts = fundamental_region_points(ns, 1)
    assert {(p.a, p.b) for p in pts} == {(d.a, d.b) for d in ns.digits}


def test_region_counts_crs():
    ns = builtin_systems()["radix3"]
    assert fundamental_region_count(ns, 2) == 81


def test_region_collisions_non_crs():
    ns = builtin_systems()["radix-2+i"]
    assert fundamental_region_count(ns, 2) < 25


@pytest.mark.parametrize("name", ["radix3", "radix-1+3w", "radix-2", "radix-2+i"])
def test_crs_iff_injective(name):
    ns = builtin_systems()[name]
    crs = check_residue_system(ns).ok
    m = len(ns.digits)
    for k in (1, 2, 3, 4):
        distinct = fundamental_region_count(ns, k)
        if crs:
            assert distinct == m ** k
        elif k >= 2:
            assert distinct < m ** k


def test_divide_exact():
    assert divide_exact(G(1, 0), G(-2, 1)) is None
    assert divide_exact(G(5, 0), G(-2, 1)) == G(-2, -1)  # 5 = (-2+i)(-2-i)
    assert divide_exact(G(-7, 1), G(-2, 1)) == G(3, 1)


def test_parse_elem():
    assert parse_elem("-1,3", EISENSTEIN) == E(-1, 3)
    with pytest.raises(ValueError):
        parse_elem("1", GAUSSIAN)
