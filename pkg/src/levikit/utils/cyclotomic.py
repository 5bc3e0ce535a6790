"""
Exact arithmetic in cyclotomic fields Q(z_e).

A number is stored by its conductor e and its rational coordinates in the
power basis 1, z, ..., z^(phi(e)-1), reduced modulo the e-th cyclotomic
polynomial. Numbers with different conductors are lifted to the lcm.
"""

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Dict, List, Sequence, Tuple

from sympy import Matrix, Poly, Rational, Symbol, cyclotomic_poly, divisors, totient

_x = Symbol("x")


@lru_cache(maxsize=None)
def _power_table(e: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Coordinates of z^k, 0 <= k < e, in the power basis of Q(z_e)."""
    phi = int(totient(e))
    # monic: x^phi + c_{phi-1} x^{phi-1} + ... + c_0
    coeffs = [Fraction(int(c)) for c in reversed(Poly(cyclotomic_poly(e, _x), _x).all_coeffs())]
    table = []
    current = [Fraction(0)] * phi
    current[0] = Fraction(1)
    for _ in range(e):
        table.append(tuple(current))
        top = current[-1]
        shifted = [Fraction(0)] + current[:-1]
        current = [shifted[i] - top * coeffs[i] for i in range(phi)]
    return tuple(table)


@lru_cache(maxsize=4096)
def _reduce(conductor: int, coeffs: Tuple[Fraction, ...]) -> Tuple[int, Tuple[Fraction, ...]]:
    """The least d | conductor with the number in Q(z_d), and its coordinates there."""
    if not any(coeffs[1:]):
        return 1, coeffs[:1]
    table = _power_table(conductor)
    target = Matrix([Rational(c.numerator, c.denominator) for c in coeffs])
    for d in divisors(conductor)[1:-1]:
        step = conductor // d
        lifted = Matrix([[Rational(table[j * step][i].numerator, table[j * step][i].denominator)
                          for j in range(int(totient(d)))] for i in range(len(coeffs))])
        try:
            solution, _ = lifted.gauss_jordan_solve(target)
        except ValueError:
            continue
        return d, tuple(Fraction(int(x.p), int(x.q)) for x in solution)
    return conductor, coeffs


class CyclotomicNumber:
    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence):
        self.conductor = conductor
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    # -- construction ---------------------------------------------------------
    @classmethod
    def rational(cls, value, conductor: int = 1) -> "CyclotomicNumber":
        phi = int(totient(conductor))
        return cls(conductor, [Fraction(value)] + [Fraction(0)] * (phi - 1))

    @classmethod
    def from_powers(cls, conductor: int, powers: Dict[int, object]) -> "CyclotomicNumber":
        """sum of c * z^k over the mapping k -> c."""
        table = _power_table(conductor)
        acc = [Fraction(0)] * len(table[0])
        for k, c in powers.items():
            c = Fraction(c)
            if c:
                row = table[k % conductor]
                for i, x in enumerate(row):
                    if x:
                        acc[i] += c * x
        return cls(conductor, acc)

    @classmethod
    def root_of_unity(cls, conductor: int, k: int = 1) -> "CyclotomicNumber":
        return cls.from_powers(conductor, {k: 1})

    def lift(self, conductor: int) -> "CyclotomicNumber":
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"cannot lift from conductor {self.conductor} to {conductor}")
        step = conductor // self.conductor
        return CyclotomicNumber.from_powers(conductor, {i * step: c for i, c in enumerate(self.coeffs) if c})

    def reduced(self) -> "CyclotomicNumber":
        """The same number over the least conductor that holds it."""
        conductor, coeffs = _reduce(self.conductor, self.coeffs)
        return self if conductor == self.conductor else CyclotomicNumber(conductor, coeffs)

    def _common(self, other):
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.rational(other, self.conductor)
        e = lcm(self.conductor, other.conductor)
        return self.lift(e), other.lift(e), e

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        a, b, e = self._common(other)
        return CyclotomicNumber(e, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CyclotomicNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CyclotomicNumber):
            c = Fraction(other)
            return CyclotomicNumber(self.conductor, [c * x for x in self.coeffs])
        a, b, e = self._common(other)
        powers: Dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    powers[i + j] = powers.get(i + j, Fraction(0)) + x * y
        return CyclotomicNumber.from_powers(e, powers)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CyclotomicNumber):
            if not other.is_rational():
                raise ValueError("division only by rationals")
            other = other.to_rational()
        return self * (Fraction(1) / Fraction(other))

    def galois(self, k: int) -> "CyclotomicNumber":
        """The automorphism z -> z^k, k prime to the conductor."""
        if gcd(k, self.conductor) != 1:
            raise ValueError(f"{k} is not prime to {self.conductor}")
        return CyclotomicNumber.from_powers(self.conductor, {i * k: c for i, c in enumerate(self.coeffs) if c})

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois(-1 % self.conductor if self.conductor > 1 else 1)

    # -- queries ----------------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, CyclotomicNumber):
            try:
                other = CyclotomicNumber.rational(other, self.conductor)
            except (TypeError, ValueError):
                return NotImplemented
        a, b, _ = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        r = self.reduced()
        return hash((r.conductor, r.coeffs))

    def __complex__(self):
        return sum((complex(c) * cmath.exp(2j * cmath.pi * i / self.conductor)
                    for i, c in enumerate(self.coeffs) if c), 0j)

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        r = self.reduced()
        terms = []
        for i, c in enumerate(r.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            power = f"ζ{r.conductor}" + (f"^{i}" if i > 1 else "")
            if c == 1:
                terms.append(power)
            elif c == -1:
                terms.append("-" + power)
            else:
                terms.append(f"{c}*{power}")
        return "+".join(terms).replace("+-", "-")

    def __repr__(self):
        return f"CyclotomicNumber({self})"


def zero(conductor: int = 1) -> CyclotomicNumber:
    return CyclotomicNumber.rational(0, conductor)


def one(conductor: int = 1) -> CyclotomicNumber:
    return CyclotomicNumber.rational(1, conductor)


def total(values: Sequence[CyclotomicNumber], conductor: int = 1) -> CyclotomicNumber:
    acc = zero(conductor)
    for v in values:
        acc = acc + v
    return acc


def canonical_key(values: Sequence[CyclotomicNumber]) -> List[str]:
    return [str(v) for v in values]
