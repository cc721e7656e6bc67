"""Exact arithmetic substrate: integer polynomials, falling-factorial
basis conversion, and real quadratic extension fields.

Everything here is exact.  Rationals are `fractions.Fraction`, integers are
Python ints, and quadratic irrationals a + b*sqrt(d) carry their radicand
with them so values from different extensions can never be mixed silently.
No floating point is used anywhere in this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

# Exact rational scalar used throughout the package.
Rational = Fraction

#: Largest n for which Stirling-number rows are generated.  The transfer
#: matrix only ever needs falling factorials up to ff_8 per layer; 64 leaves
#: ample headroom for hand experiments.
MAX_STIRLING = 64


class InexactDivisionError(ArithmeticError):
    """Polynomial division that was required to be exact left a remainder."""


class MixedRadicandError(ArithmeticError):
    """Arithmetic attempted between elements of different quadratic fields."""


# ----------------------------------------------------------------------------
# Integer polynomials (dense, power basis, constant term first)
# ----------------------------------------------------------------------------

class IntPolynomial:
    """Dense univariate polynomial with exact integer coefficients.

    Coefficients are stored constant-term first with no trailing zeros, so
    ``degree == len(coefficients) - 1`` (the zero polynomial has degree -1).
    Instances are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable[int] = ()):
        c = [int(v) for v in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # -- construction helpers

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def constant(cls, value: int) -> "IntPolynomial":
        return cls((value,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, power: int, coefficient: int = 1) -> "IntPolynomial":
        return cls((0,) * power + (coefficient,))

    # -- basic queries

    @property
    def coefficients(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def coefficient(self, power: int) -> int:
        if 0 <= power < len(self._c):
            return self._c[power]
        return 0

    def leading_coefficient(self) -> int:
        return self._c[-1] if self._c else 0

    # -- ring operations

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPolynomial(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self._c, other._c
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, v in enumerate(b):
            out[i] -= v
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-v for v in self._c))

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(v * other for v in self._c))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    # -- evaluation

    def __call__(self, x):
        """Horner evaluation; exact for int, Fraction and QuadExt arguments."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        """Exact value at a rational point, via an integer Horner pass.

        Avoids per-step Fraction normalisation: computes the integer
        p(a/b) * b^deg first and divides once at the end.
        """
        if not self._c:
            return Fraction(0)
        a, b = x.numerator, x.denominator
        if b == 1:
            return Fraction(self(a))
        d = len(self._c) - 1
        return Fraction(self.scaled_value(a, b), b ** d)

    def sign_at(self, x: Fraction) -> int:
        """Exact sign of the value at a rational point (-1, 0 or +1)."""
        num = self.scaled_value(x.numerator, x.denominator)
        return (num > 0) - (num < 0)

    def scaled_value(self, a: int, b: int, min_degree: int | None = None) -> int:
        """Integer b^k * p(a/b) with k = max(degree, min_degree).

        `min_degree` lets callers fix a common scaling across several
        polynomials evaluated at the same point.
        """
        d = len(self._c) - 1
        if d < 0:
            return 0
        # Scaled Horner: after processing c_i the accumulator holds
        # sum_{j>=i} c_j a^(j-i) b^(d-j).
        acc = 0
        bp = 1
        for c in reversed(self._c):
            acc = acc * a + c * bp
            bp *= b
        if min_degree is not None and min_degree > d:
            acc *= b ** (min_degree - d)
        return acc

    # -- calculus / structure

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self._c) if i > 0)
                             if len(self._c) > 1 else ())

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._c:
            g = math.gcd(g, c)
        return g

    def primitive_part(self) -> "IntPolynomial":
        """self / content, keeping the sign of the leading coefficient."""
        g = self.content()
        if g <= 1:
            return self
        return IntPolynomial(tuple(c // g for c in self._c))

    def divide_exact(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Exact quotient self / divisor over the integers.

        Raises InexactDivisionError if the division leaves a remainder or a
        non-integer coefficient would arise.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return IntPolynomial(())
        rem = list(self._c)
        dc = divisor._c
        lead = dc[-1]
        dd = len(dc) - 1
        if len(rem) - 1 < dd:
            raise InexactDivisionError("degree of divisor exceeds dividend")
        q = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            if c % lead != 0:
                raise InexactDivisionError("non-integer quotient coefficient")
            f = c // lead
            q[k - dd] = f
            for j, dj in enumerate(dc):
                rem[k - dd + j] -= f * dj
        if any(rem):
            raise InexactDivisionError("polynomial division left a remainder")
        return IntPolynomial(q)

    # -- serialization (JSON-facing: decimal strings, constant term first)

    def to_decimal_strings(self) -> list:
        return [str(c) for c in self._c]

    @classmethod
    def from_decimal_strings(cls, items: Iterable[str]) -> "IntPolynomial":
        return cls(int(s) for s in items)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self._c)!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                term = f"{mag}x" if i == 1 else f"{mag}x^{i}"
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append((" - " if c < 0 else " + ") + term)
        return "".join(parts)


# ----------------------------------------------------------------------------
# Stirling numbers and the falling-factorial basis
# ----------------------------------------------------------------------------

_stirling1_rows = [[1]]  # signed, s(n, k) = row n, index k
_stirling2_rows = [[1]]  # S(n, k)


def _extend_stirling(rows, n, kind: int) -> None:
    while len(rows) <= n:
        m = len(rows) - 1
        prev = rows[-1]
        new = [0] * (m + 2)
        for k in range(m + 2):
            left = prev[k - 1] if 1 <= k <= m + 1 else 0
            mid = prev[k] if k <= m else 0
            if kind == 1:
                new[k] = left - m * mid
            else:
                new[k] = left + k * mid
        rows.append(new)


def stirling_first_signed(n: int, k: int) -> int:
    """Signed Stirling number of the first kind s(n, k)."""
    if n > MAX_STIRLING:
        raise ValueError(f"stirling row {n} exceeds supported bound {MAX_STIRLING}")
    if k < 0 or k > n:
        return 0
    _extend_stirling(_stirling1_rows, n, 1)
    return _stirling1_rows[n][k]


def stirling_second(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k)."""
    if n > MAX_STIRLING:
        raise ValueError(f"stirling row {n} exceeds supported bound {MAX_STIRLING}")
    if k < 0 or k > n:
        return 0
    _extend_stirling(_stirling2_rows, n, 2)
    return _stirling2_rows[n][k]


_ff_cache: dict = {}


def falling_factorial(k: int) -> IntPolynomial:
    """ff_k = x(x-1)...(x-k+1) as a power-basis polynomial (ff_0 = 1)."""
    if k < 0:
        raise ValueError("falling factorial index must be >= 0")
    poly = _ff_cache.get(k)
    if poly is None:
        poly = IntPolynomial([stirling_first_signed(k, j) for j in range(k + 1)])
        _ff_cache[k] = poly
    return poly


def falling_factorial_at(k: int, x: Fraction) -> Fraction:
    """Exact value of ff_k at a rational point."""
    acc = Fraction(1)
    for i in range(k):
        acc *= x - i
    return acc


class FallingFactorialCombo:
    """Integer combination sum_k mult_k * ff_k of falling factorials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] = ()):
        clean = {}
        for k, m in dict(terms).items():
            k, m = int(k), int(m)
            if k < 0:
                raise ValueError("falling factorial index must be >= 0")
            if m:
                clean[k] = m
        self._terms = dict(sorted(clean.items()))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def to_power(self) -> IntPolynomial:
        """Expand into the power basis via signed Stirling numbers."""
        acc = IntPolynomial(())
        for k, m in self._terms.items():
            acc = acc + falling_factorial(k) * m
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, FallingFactorialCombo) and self._terms == other._terms

    def __repr__(self) -> str:
        return f"FallingFactorialCombo({self._terms!r})"

    # JSON object {"k": multiplicity}
    def to_json_dict(self) -> dict:
        return {str(k): m for k, m in self._terms.items()}

    @classmethod
    def from_json_dict(cls, obj: Mapping[str, int]) -> "FallingFactorialCombo":
        return cls({int(k): int(m) for k, m in obj.items()})


def ff_to_power(combo: FallingFactorialCombo) -> IntPolynomial:
    return combo.to_power()


def power_to_ff(p: IntPolynomial) -> FallingFactorialCombo:
    """Rewrite a power-basis polynomial in the falling-factorial basis.

    Uses x^n = sum_k S(n, k) ff_k; exact inverse of ff_to_power.
    """
    terms: dict = {}
    for n, c in enumerate(p.coefficients):
        if not c:
            continue
        for k in range(n + 1):
            s = stirling_second(n, k)
            if s:
                terms[k] = terms.get(k, 0) + c * s
    return FallingFactorialCombo(terms)


# ----------------------------------------------------------------------------
# Real quadratic extensions  a + b*sqrt(d)
# ----------------------------------------------------------------------------

def squarefree_split(n: int) -> tuple:
    """Write n = m^2 * d with d free of square factors below 10^8.

    Small square factors are removed by trial division (primes <= 10^4);
    a residual perfect-square cofactor is also detected exactly.  A square
    factor made of primes above 10^4 is left in place, which affects only
    the canonical form of the radicand, never correctness of arithmetic.
    """
    if n <= 0:
        raise ValueError("radicand must be positive")
    m = 1
    d = n
    for p in range(2, 10001):
        if p * p > d:
            break
        while d % (p * p) == 0:
            d //= p * p
            m *= p
    r = math.isqrt(d)
    if r * r == d:
        return m * r, 1
    return m, d


class QuadExt:
    """Element a + b*sqrt(d) of a real quadratic extension of the rationals.

    `d` is a positive non-square integer shared by all values of one
    context.  Arithmetic between two values with different radicands (both
    with nonzero irrational part) raises MixedRadicandError; purely rational
    values coerce freely.  Sign determination is exact.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 5):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d <= 0:
            raise ValueError("radicand must be a positive integer")
        r = math.isqrt(d)
        if r * r == d:
            # Degenerate extension: sqrt(d) is an integer, fold it in.
            a += b * r
            b = Fraction(0)
        self.a = a
        self.b = b
        self.d = d

    # -- coercion helpers

    def _match(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.b == 0:
                return QuadExt(other.a, 0, self.d)
            if self.b == 0:
                return other  # caller re-dispatches in our frame via _lift
            if other.d != self.d:
                raise MixedRadicandError(
                    f"cannot combine sqrt({self.d}) with sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        raise TypeError(f"cannot combine QuadExt with {type(other).__name__}")

    def _pair(self, other) -> tuple:
        """Return (self', other') in a common field."""
        o = self._match(other)
        if o.d == self.d:
            return self, o
        # self is rational, adopt the other radicand
        return QuadExt(self.a, 0, o.d), o

    # -- ring / field operations

    def __add__(self, other):
        s, o = self._pair(other)
        return QuadExt(s.a + o.a, s.b + o.b, s.d)

    __radd__ = __add__

    def __sub__(self, other):
        s, o = self._pair(other)
        return QuadExt(s.a - o.a, s.b - o.b, s.d)

    def __rsub__(self, other):
        s, o = self._pair(other)
        return QuadExt(o.a - s.a, o.b - s.b, s.d)

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __mul__(self, other):
        s, o = self._pair(other)
        return QuadExt(s.a * o.a + s.b * o.b * s.d,
                       s.a * o.b + s.b * o.a, s.d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - b^2 d (rational)."""
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero quadratic element")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        s, o = self._pair(other)
        return s * o.inverse()

    def __rtruediv__(self, other):
        s, o = self._pair(other)
        return o * s.inverse()

    def __pow__(self, n: int) -> "QuadExt":
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExt(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- exact comparisons

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_value(self) -> Fraction:
        if self.b != 0:
            raise ValueError("value is irrational")
        return self.a

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d), by comparing a^2 against b^2 d."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Opposite signs: |a| vs |b| sqrt(d) decides.
        lhs = a * a
        rhs = b * b * self.d
        if lhs == rhs:
            return 0
        bigger_rational = lhs > rhs
        if a > 0:  # b < 0
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def __eq__(self, other) -> bool:
        try:
            s, o = self._pair(other)
        except (MixedRadicandError, TypeError):
            return NotImplemented
        return s.a == o.a and s.b == o.b

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self) -> "QuadExt":
        return -self if self.sign() < 0 else self

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a} + {self.b}*sqrt({self.d}))"


def quad_sign(s: QuadExt) -> int:
    """Exact sign (-1, 0, +1) of a quadratic-extension element."""
    return s.sign()


def sqrt_rational(q: Fraction) -> QuadExt:
    """Exact square root of a nonnegative rational as a QuadExt.

    sqrt(u/v) = sqrt(u*v)/v; the radicand is reduced by square extraction.
    A rational result comes back with b = 0 (and a placeholder radicand).
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return QuadExt(0, 0, 5)
    u, v = q.numerator, q.denominator
    m, d = squarefree_split(u * v)
    if d == 1:
        return QuadExt(Fraction(m, v), 0, 5)
    return QuadExt(0, Fraction(m, v), d)


#: The golden ratio (1 + sqrt(5)) / 2 as an exact element of Q(sqrt 5).
GOLDEN_RATIO = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
