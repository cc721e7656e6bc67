"""The width-4 cylindrical transfer matrix: the layer-count matrix M, the
diagonal gluing weight D, the transfer matrix MD, gluing of partitioned
chromatic polynomials, strip-family polynomials and their pointwise exact
evaluation, a brute-force oracle for M, and the golden-ratio identity check
for planar triangulations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .chromatic import PartitionVector, partitioned_chromatic
from .exactnum import (FallingFactorialCombo, GOLDEN_RATIO, IntPolynomial,
                       QuadExt, falling_factorial, falling_factorial_at)
from .graphs import FramedGraph

#: Number of colours used on the frame by each colouring type.
TYPE_COLOUR_COUNTS = (2, 3, 3, 4)

#: Default cap on strip length for symbolic family polynomials; longer
#: strips are served pointwise by family_value_at.
SYMBOLIC_LIMIT = 128


class SingularWeightError(ZeroDivisionError):
    """The gluing weight D is singular at x in {0, 1, 2, 3}."""


@dataclass(frozen=True)
class TransferMatrix:
    """4x4 matrix of integer polynomials with a tag naming what it is."""

    entries: tuple  # 4 rows of 4 IntPolynomial
    tag: str

    def __getitem__(self, i: int) -> tuple:
        return self.entries[i]

    def apply(self, vec: Sequence[IntPolynomial]) -> tuple:
        return tuple(sum((self.entries[i][j] * vec[j] for j in range(4)),
                         IntPolynomial.zero()) for i in range(4))

    def matmul(self, other: "TransferMatrix") -> "TransferMatrix":
        rows = []
        for i in range(4):
            row = []
            for j in range(4):
                acc = IntPolynomial.zero()
                for k in range(4):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return TransferMatrix(tuple(rows), f"({self.tag})*({other.tag})")

    def power(self, k: int) -> "TransferMatrix":
        if k < 0:
            raise ValueError("negative matrix power")
        result = identity_matrix()
        base = self
        while k:
            if k & 1:
                result = result.matmul(base)
            base = base.matmul(base)
            k >>= 1
        return TransferMatrix(result.entries, f"({self.tag})^k")

    def evaluate(self, x: Fraction) -> tuple:
        """Entry-wise exact rational evaluation."""
        return tuple(tuple(e.eval_fraction(x) for e in row) for row in self.entries)


def identity_matrix() -> TransferMatrix:
    one, zero = IntPolynomial((1,)), IntPolynomial.zero()
    return TransferMatrix(tuple(tuple(one if i == j else zero for j in range(4))
                                for i in range(4)), "I")


#: Layer-count matrix M in the falling-factorial basis: entry (i, j) counts
#: colourings of one lattice layer that are type i+1 on the outer ring and
#: type j+1 on the inner ring.  Every partition of the 8 layer vertices into
#: s independent sets contributes one ff_s term.
_M_FF = (
    ({4: 1}, {5: 1}, {5: 1}, {6: 1}),
    ({5: 1}, {4: 1, 5: 2, 6: 1}, {4: 1, 5: 2, 6: 1}, {5: 4, 6: 4, 7: 1}),
    ({5: 1}, {4: 1, 5: 2, 6: 1}, {4: 1, 5: 2, 6: 1}, {5: 4, 6: 4, 7: 1}),
    ({6: 1}, {5: 4, 6: 4, 7: 1}, {5: 4, 6: 4, 7: 1},
     {4: 2, 5: 16, 6: 20, 7: 8, 8: 1}),
)


@lru_cache(maxsize=None)
def build_M() -> TransferMatrix:
    """The 4x4 layer-count matrix M, expanded into the power basis."""
    rows = tuple(tuple(FallingFactorialCombo(c).to_power() for c in row)
                 for row in _M_FF)
    return TransferMatrix(rows, "M")


def build_M_ff() -> tuple:
    """M with entries as falling-factorial combinations."""
    return tuple(tuple(FallingFactorialCombo(c) for c in row) for row in _M_FF)


def gluing_weights() -> tuple:
    """The diagonal of D: (ff2, ff3, ff3, ff4) whose reciprocals weight the
    four colouring types when gluing."""
    return tuple(falling_factorial(s) for s in TYPE_COLOUR_COUNTS)


@lru_cache(maxsize=None)
def build_MD() -> TransferMatrix:
    """The transfer matrix MD = M * diag(1/ff2, 1/ff3, 1/ff3, 1/ff4).

    Each column j of M is exactly divisible by the corresponding falling
    factorial, so MD is a genuine polynomial matrix; the divisions are
    checked exactly here.
    """
    m = build_M()
    weights = gluing_weights()
    rows = []
    for i in range(4):
        rows.append(tuple(m.entries[i][j].divide_exact(weights[j])
                          for j in range(4)))
    return TransferMatrix(tuple(rows), "MD")


# ----------------------------------------------------------------------------
# Gluing and strip families
# ----------------------------------------------------------------------------

def glue(qa: PartitionVector, qb: PartitionVector) -> IntPolynomial:
    """Chromatic polynomial of the graph glued from two framed graphs,
    as the scalar Q(A)^T D Q(B).

    The sum is brought over the common denominator ff2*ff3*ff4 and the final
    division is required to be exact; InexactDivisionError signals invalid
    partition vectors.
    """
    ff2, ff3, _, ff4 = gluing_weights()
    numerator = (qa.p1 * qb.p1 * (ff3 * ff4)
                 + (qa.p2 * qb.p2 + qa.p3 * qb.p3) * (ff2 * ff4)
                 + qa.p4 * qb.p4 * (ff2 * ff3))
    return numerator.divide_exact(ff2 * ff3 * ff4)


def extend_one_layer(q: PartitionVector) -> PartitionVector:
    """Partitioned chromatic polynomial after gluing one lattice layer onto
    the frame: Q' = MD Q."""
    return PartitionVector(*build_MD().apply(tuple(q)))


def family_polynomial(qa: PartitionVector, qb: PartitionVector, n: int, *,
                      symbolic_limit: int = SYMBOLIC_LIMIT) -> IntPolynomial:
    """Exact chromatic polynomial of the n-layer strip with end graphs A
    and B: the scalar Q(A)^T D (MD)^(n-1) Q(B)."""
    if n < 1:
        raise ValueError("strip length must be >= 1")
    if n > symbolic_limit:
        raise ValueError(
            f"n={n} exceeds the symbolic limit {symbolic_limit}; "
            "use family_value_at for pointwise values")
    grown = qb
    for _ in range(n - 1):
        grown = extend_one_layer(grown)
    return glue(qa, grown)


def _int_mat_mul(a: Sequence, b: Sequence) -> tuple:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(4))
                       for j in range(4)) for i in range(4))


def _int_mat_pow(m: Sequence, k: int) -> tuple:
    result = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))
    base = tuple(tuple(row) for row in m)
    while k:
        if k & 1:
            result = _int_mat_mul(result, base)
        base = _int_mat_mul(base, base)
        k >>= 1
    return result


def family_value_at(qa: PartitionVector, qb: PartitionVector, n: int,
                    x: Fraction) -> Fraction:
    """Exact value of the strip-family chromatic polynomial at a rational
    point, via repeated squaring of the evaluated transfer matrix.

    Everything is cleared to integers first: with x = a/b, the matrix
    b^4 * MD(x) is integral (MD entries have degree <= 4), so the O(log n)
    squarings run over plain integers.
    """
    if n < 1:
        raise ValueError("strip length must be >= 1")
    x = Fraction(x)
    if x in (0, 1, 2, 3):
        raise SingularWeightError(f"gluing weight D is singular at x = {x}")
    a, b = x.numerator, x.denominator
    md = build_MD()
    scaled = tuple(tuple(e.scaled_value(a, b, min_degree=4) for e in row)
                   for row in md.entries)
    power = _int_mat_pow(scaled, n - 1)
    denom = b ** (4 * (n - 1))
    vb = [p.eval_fraction(x) for p in qb]
    va = [p.eval_fraction(x) for p in qa]
    u = []
    for i in range(4):
        acc = Fraction(0)
        for j in range(4):
            acc += Fraction(power[i][j]) * vb[j]
        u.append(acc / denom)
    total = Fraction(0)
    for i in range(4):
        w = falling_factorial_at(TYPE_COLOUR_COUNTS[i], x)
        total += va[i] * u[i] / w
    return total


def family_sign_at(qa: PartitionVector, qb: PartitionVector, n: int,
                   x: Fraction) -> int:
    """Exact sign of the strip-family polynomial at a rational point."""
    v = family_value_at(qa, qb, n, x)
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class StripFamily:
    """A double-ended strip family: partitioned polynomials of both ends."""

    qa: PartitionVector
    qb: PartitionVector
    label: str = ""

    @classmethod
    def from_framed(cls, a: FramedGraph, b: FramedGraph, label: str = "") -> "StripFamily":
        return cls(partitioned_chromatic(a), partitioned_chromatic(b), label)

    def polynomial(self, n: int, **kw) -> IntPolynomial:
        return family_polynomial(self.qa, self.qb, n, **kw)

    def value_at(self, n: int, x: Fraction) -> Fraction:
        return family_value_at(self.qa, self.qb, n, x)

    def sign_at(self, n: int, x: Fraction) -> int:
        return family_sign_at(self.qa, self.qb, n, x)


# ----------------------------------------------------------------------------
# Golden-ratio identity for planar triangulations
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class GoldenIdentityResult:
    """Outcome of the golden-ratio evaluation identity check."""

    passed: bool
    lhs: QuadExt
    rhs: QuadExt

    @property
    def residual(self) -> QuadExt:
        return self.lhs - self.rhs


def golden_identity_check(p: IntPolynomial, n_vertices: int) -> GoldenIdentityResult:
    """Check P(tau+2) = (tau+2) * tau^(3n-10) * P(tau+1)^2 exactly in
    Q(sqrt 5), with tau the golden ratio and n the vertex count.

    Holds for chromatic polynomials of planar triangulations; failure is a
    result, not an error.
    """
    tau = GOLDEN_RATIO
    lhs = p(tau + 2)
    rhs = (tau + 2) * tau ** (3 * n_vertices - 10) * (p(tau + 1) ** 2)
    return GoldenIdentityResult((lhs - rhs).is_zero(), lhs, rhs)


# ----------------------------------------------------------------------------
# Brute-force verification of M
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class MOracleReport:
    """Per-entry outcome of checking M against exhaustive layer counts."""

    entry_ok: dict            # (i, j) -> bool
    counts: dict              # x -> 4x4 list of exhaustive counts
    interpolated: dict        # (i, j) -> IntPolynomial from the counts

    @property
    def passed(self) -> bool:
        return all(self.entry_ok.values())

    def failures(self) -> list:
        return sorted(k for k, ok in self.entry_ok.items() if not ok)


def _type_codes(cols) -> "object":
    import numpy as np
    eq13 = cols[:, 0] == cols[:, 2]
    eq24 = cols[:, 1] == cols[:, 3]
    return np.where(eq13, np.where(eq24, 0, 1), np.where(eq24, 2, 3))


def _proper_ring_colourings(x: int):
    import numpy as np
    grids = np.indices((x, x, x, x)).reshape(4, -1).T
    ok = ((grids[:, 0] != grids[:, 1]) & (grids[:, 1] != grids[:, 2])
          & (grids[:, 2] != grids[:, 3]) & (grids[:, 3] != grids[:, 0]))
    return grids[ok]


def layer_type_counts(x: int) -> list:
    """Exhaustive 4x4 table: colourings of one lattice layer by (outer type,
    inner type).  Enumerates all proper colouring pairs of the two rings and
    checks the eight spoke constraints; exact integer counts."""
    import numpy as np
    ring = _proper_ring_colourings(x)
    types = _type_codes(ring)
    counts = [[0] * 4 for _ in range(4)]
    if len(ring) == 0:
        return counts
    inner = ring
    for outer_row, outer_t in zip(ring, types):
        o0, o1, o2, o3 = (int(c) for c in outer_row)
        # Spokes: inner j is adjacent to outer j and outer j+1 (mod 4).
        mask = ((inner[:, 0] != o0) & (inner[:, 0] != o1)
                & (inner[:, 1] != o1) & (inner[:, 1] != o2)
                & (inner[:, 2] != o2) & (inner[:, 2] != o3)
                & (inner[:, 3] != o3) & (inner[:, 3] != o0))
        binned = np.bincount(types[mask], minlength=4)
        row = counts[int(outer_t)]
        for j in range(4):
            row[j] += int(binned[j])
    return counts


def _interpolate_ff(values: dict) -> IntPolynomial:
    """Exact polynomial through (x, value) for x = 1..k, solved in the
    falling-factorial basis (triangular because ff_s(x) = 0 for s > x)."""
    xs = sorted(values)
    coeffs = {}
    for x in xs:
        acc = values[x]
        for s, c in coeffs.items():
            acc -= c * falling_factorial(s)(x)
        ffx = falling_factorial(x)(x)  # = x!
        if acc % ffx:
            raise ArithmeticError("interpolation values are not polynomial "
                                  "in the falling-factorial basis")
        c = acc // ffx
        if c:
            coeffs[x] = c
    return FallingFactorialCombo(coeffs).to_power()


def verify_M_against_oracle(x_range: Sequence[int] = range(1, 10)) -> MOracleReport:
    """Check every entry of M against exhaustive colouring counts of one
    lattice layer at x in `x_range`, then compare the exact interpolation
    through those counts with the symbolic entry."""
    m = build_M()
    counts = {x: layer_type_counts(x) for x in x_range}
    entry_ok = {}
    interpolated = {}
    for i in range(4):
        for j in range(4):
            vals = {x: counts[x][i][j] for x in x_range}
            poly = _interpolate_ff(vals)
            interpolated[(i, j)] = poly
            entry_ok[(i, j)] = (poly == m.entries[i][j])
    return MOracleReport(entry_ok, counts, interpolated)
