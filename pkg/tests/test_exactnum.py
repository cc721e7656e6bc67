"""Exact-arithmetic substrate: polynomials, falling factorials, quadratic
extensions."""

import math
import random
from fractions import Fraction

import mpmath as mp
import pytest

from chromroots.exactnum import (FallingFactorialCombo, GOLDEN_RATIO,
                                 InexactDivisionError, IntPolynomial,
                                 MixedRadicandError, QuadExt, falling_factorial,
                                 falling_factorial_at, ff_to_power, power_to_ff,
                                 quad_sign, sqrt_rational, stirling_first_signed,
                                 stirling_second)


def test_ff_small_cases():
    assert ff_to_power(FallingFactorialCombo({2: 1})) == IntPolynomial([0, -1, 1])
    assert ff_to_power(FallingFactorialCombo({0: 1})) == IntPolynomial([1])
    assert power_to_ff(IntPolynomial([0, 0, 0, 1])).terms == {1: 1, 2: 3, 3: 1}
    assert power_to_ff(IntPolynomial([0, -1, 1])).terms == {2: 1}


def test_ff_corner_entry_expansion():
    # The degree-8 corner entry of the layer matrix.
    combo = FallingFactorialCombo({4: 2, 5: 16, 6: 20, 7: 8, 8: 1})
    p = combo.to_power()
    assert p.degree == 8
    assert p.leading_coefficient() == 1
    assert p(0) == 0
    # Counts must match a direct product evaluation at integers.
    for x in range(0, 12):
        direct = sum(m * math.prod(x - i for i in range(k))
                     for k, m in combo.terms.items())
        assert p(x) == direct


def test_wheel_partition_sum_in_ff_basis():
    # ff3 + 2 ff4 + ff5 is the chromatic polynomial of the 4-wheel.
    total = ff_to_power(FallingFactorialCombo({3: 1, 4: 2, 5: 1}))
    assert total == IntPolynomial([0, 14, -31, 24, -8, 1])
    assert power_to_ff(total).terms == {3: 1, 4: 2, 5: 1}


def test_ff_roundtrip_randomised():
    rng = random.Random(20240811)
    for _ in range(300):
        degree = rng.randint(0, 12)
        p = IntPolynomial([rng.randint(-10 ** 6, 10 ** 6)
                           for _ in range(degree + 1)])
        assert ff_to_power(power_to_ff(p)) == p


def test_ff_vanishes_below_index():
    for k in range(11):
        p = falling_factorial(k)
        for j in range(k):
            assert p(j) == 0
        assert p(k) == math.factorial(k)
        assert falling_factorial_at(k, Fraction(k)) == math.factorial(k)


def test_stirling_rows():
    assert stirling_first_signed(4, 2) == 11
    assert stirling_second(4, 2) == 7
    with pytest.raises(ValueError):
        stirling_first_signed(65, 1)


def test_polynomial_arithmetic_and_division():
    p = IntPolynomial([-2, 0, 1])
    q = IntPolynomial([5, -3, 2])
    assert (p * q).divide_exact(p) == q
    assert (p * q).divide_exact(q) == p
    with pytest.raises(InexactDivisionError):
        (p * q + IntPolynomial([1])).divide_exact(p)
    assert (p - p).is_zero()
    assert (p ** 3) == p * p * p
    assert p.derivative() == IntPolynomial([0, 2])


def test_polynomial_rational_evaluation():
    p = IntPolynomial([-2, 0, 1])
    assert p.eval_fraction(Fraction(3, 2)) == Fraction(1, 4)
    assert p.sign_at(Fraction(3, 2)) == 1
    assert p.sign_at(Fraction(7, 5)) == -1
    assert p.sign_at(Fraction(0)) == -1
    assert IntPolynomial([]).eval_fraction(Fraction(1, 3)) == 0


def test_polynomial_serialization_roundtrip():
    p = IntPolynomial([-124884, 258889, 0, 1])
    assert IntPolynomial.from_decimal_strings(p.to_decimal_strings()) == p
    combo = FallingFactorialCombo({3: 1, 5: -2})
    assert FallingFactorialCombo.from_json_dict(combo.to_json_dict()) == combo


def test_quad_sign_cases():
    assert quad_sign(QuadExt(1, 1, 5)) == 1
    assert quad_sign(QuadExt(-2, 1, 5)) == 1          # sqrt 5 > 2
    assert quad_sign(QuadExt(Fraction(-9, 4), 1, 5)) == -1
    assert quad_sign(QuadExt(0, 0, 5)) == 0
    assert quad_sign(QuadExt(2, -1, 5)) == -1
    assert quad_sign(QuadExt(3, -1, 5)) == 1
    assert quad_sign(QuadExt(Fraction(5), Fraction(-1), 25)) == 0  # 5 - sqrt(25)


def test_quad_field_axioms_randomised():
    rng = random.Random(7)

    def rand_elem():
        return QuadExt(Fraction(rng.randint(-40, 40), rng.randint(1, 9)),
                       Fraction(rng.randint(-40, 40), rng.randint(1, 9)), 13)

    for _ in range(200):
        s, t, u = rand_elem(), rand_elem(), rand_elem()
        assert ((s * t) * u - s * (t * u)).is_zero()
        assert ((s + t) * u - (s * u + t * u)).is_zero()
        if not s.is_zero():
            assert (s * s.inverse() - 1).is_zero()
            assert ((t / s) * s - t).is_zero()


def test_quad_sign_matches_high_precision_float():
    rng = random.Random(99)
    with mp.workprec(160):
        for _ in range(300):
            s = QuadExt(Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 999)),
                        Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 999)),
                        rng.choice([2, 3, 5, 7, 11]))
            approx = (mp.mpf(s.a.numerator) / s.a.denominator
                      + mp.mpf(s.b.numerator) / s.b.denominator * mp.sqrt(s.d))
            if abs(approx) > mp.mpf(2) ** -120:
                assert quad_sign(s) == (1 if approx > 0 else -1)


def test_quad_radicand_mixing_rules():
    a = QuadExt(1, 1, 5)
    b = QuadExt(1, 1, 7)
    with pytest.raises(MixedRadicandError):
        _ = a + b
    # Rational values coerce across radicands.
    c = QuadExt(3, 0, 7)
    assert (a + c).d == 5
    assert (a + c).a == 4


def test_quad_perfect_square_degenerates():
    s = QuadExt(1, 2, 9)   # 1 + 2*3
    assert s.is_rational() and s.rational_value() == 7


def test_quad_powers_and_golden_ratio():
    t = GOLDEN_RATIO
    assert (t * t - t - 1).is_zero()
    assert (t ** 10) * (t ** -10) == QuadExt(1, 0, 5)
    # Fibonacci via powers: tau^n = F(n) tau + F(n-1)
    fib = [0, 1]
    for _ in range(20):
        fib.append(fib[-1] + fib[-2])
    p = t ** 15
    assert p.b * 2 == fib[15]


def test_sqrt_rational():
    r = sqrt_rational(Fraction(50, 9))
    assert r.d == 2 and (r * r - Fraction(50, 9)).is_zero()
    assert sqrt_rational(Fraction(49, 4)).rational_value() == Fraction(7, 2)
    with pytest.raises(ValueError):
        sqrt_rational(Fraction(-1))
