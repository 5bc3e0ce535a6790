import cmath
from fractions import Fraction

import pytest

from levikit.utils.cyclotomic import CyclotomicNumber, canonical_key, one, total, zero


def z(e, k=1):
    return CyclotomicNumber.root_of_unity(e, k)


def test_roots_of_unity_sum_to_zero():
    for e in (2, 3, 4, 5, 6, 8, 12):
        assert total([z(e, k) for k in range(e)]) == 0


def test_order_of_a_root():
    w = z(6)
    power = one()
    for _ in range(6):
        power = power * w
    assert power == 1
    assert z(6, 2) == z(3)


def test_mixed_conductors_lift_to_lcm():
    s = z(3) + z(4)
    assert s.conductor == 12
    assert complex(s) == pytest.approx(cmath.exp(2j * cmath.pi / 3) + 1j)


def test_conjugate_and_galois():
    w = z(3)
    assert w.conjugate() == z(3, 2)
    assert (w + w.conjugate()) == -1
    assert w.galois(2) == z(3, 2)
    with pytest.raises(ValueError):
        w.galois(3)


def test_rational_queries():
    half = CyclotomicNumber.rational(Fraction(1, 2), 5)
    assert half.is_rational()
    assert half.to_rational() == Fraction(1, 2)
    assert not half.is_integral()
    assert (z(5) * 2).is_integral()
    assert zero(7).is_zero()
    with pytest.raises(ValueError):
        z(4).to_rational()


def test_hash_agrees_with_equality():
    assert hash(CyclotomicNumber.rational(3, 4)) == hash(CyclotomicNumber.rational(3))
    assert len({z(6, 2), z(3)}) == 1


def test_division_by_rationals_only():
    assert (z(4) * 4) / 2 == z(4) * 2
    with pytest.raises(ValueError):
        one() / z(4)


def test_string_form():
    assert str(CyclotomicNumber.rational(-2)) == "-2"
    assert str(z(4)) == "ζ4"
    assert str(-z(4) + 1) == "1-ζ4"
    assert str(z(5, 2) * 3) == "3*ζ5^2"
    assert canonical_key([one(), z(3)]) == ["1", "ζ3"]


@pytest.mark.parametrize("value,conductor", [
    (z(4), 12), (z(3), 12), (z(3, 2) - z(3), 6), (z(5), 10), (z(8) + z(8, 7), 24),
])
def test_lifted_values_print_and_hash_alike(value, conductor):
    lifted = value.lift(conductor)
    assert lifted.conductor == conductor
    assert lifted == value
    assert str(lifted) == str(value)
    assert canonical_key([lifted]) == canonical_key([value])
    assert hash(lifted) == hash(value)


@pytest.mark.parametrize("value,conductor", [
    (z(6), 3), (z(12, 4), 3), (z(12, 3), 4), (z(8) + z(8, 7), 8), (z(8, 2), 4), (z(10, 2), 5),
])
def test_reduced_finds_the_least_conductor(value, conductor):
    r = value.reduced()
    assert r.conductor == conductor
    assert r == value


def test_sixth_root_prints_over_cube_roots():
    assert str(z(6)) == "1+ζ3"
    assert len({z(4), z(4).lift(12), z(3), z(3).lift(6)}) == 2
