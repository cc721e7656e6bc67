"""Real-root isolation near 4 (exact rational bisection with sign probes,
Sturm certification) and a desk-scale multiprecision complex-root finder
(Aberth-Ehrlich simultaneous iteration on the squarefree part).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

import mpmath as mp

from .exactnum import IntPolynomial
from .transfer import StripFamily

BRACKET_MAX_K = 48
DEFAULT_WIDTH = Fraction(1, 10 ** 11)


class NoSignChangeError(RuntimeError):
    """No negative probe value was found below 4 down to the probe limit."""


class NonPositiveAtFourError(RuntimeError):
    """The family polynomial is not positive at 4 (non-planar or bad input)."""


class RootConvergenceError(RuntimeError):
    """The simultaneous iteration failed to converge within its caps."""


@dataclass(frozen=True)
class RootBracket:
    """Interval with a guaranteed sign change of the probed function."""

    lo: Fraction
    hi: Fraction
    sign_lo: int
    sign_hi: int

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise ValueError("bracket requires lo < hi")
        if self.sign_lo == self.sign_hi or 0 in (self.sign_lo, self.sign_hi):
            raise ValueError("bracket requires opposite nonzero endpoint signs")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def bracket_near_four(family: StripFamily, n: int, *,
                      max_k: int = BRACKET_MAX_K) -> RootBracket:
    """Bracket the largest sign change of the strip polynomial below 4.

    Probes x = 4 - 2^-k for k = 1..max_k (plus x = 4 itself, which must be
    positive) and pairs the negative probe closest to 4 with the next
    positive point above it.  All probes are exact rational signs.
    """
    sign_at_four = family.sign_at(n, Fraction(4))
    if sign_at_four <= 0:
        raise NonPositiveAtFourError(
            f"family value at 4 has sign {sign_at_four}; expected positive")
    signs = {}
    for k in range(1, max_k + 1):
        x = Fraction(4) - Fraction(1, 2 ** k)
        signs[k] = family.sign_at(n, x)
    negative_ks = [k for k, s in signs.items() if s < 0]
    if not negative_ks:
        raise NoSignChangeError(
            f"no negative probe down to 4 - 2^-{max_k}; "
            "the family may have no real root that close to 4")
    k = max(negative_ks)
    lo = Fraction(4) - Fraction(1, 2 ** k)
    if k + 1 in signs and signs[k + 1] > 0:
        hi, sign_hi = Fraction(4) - Fraction(1, 2 ** (k + 1)), signs[k + 1]
    else:
        hi, sign_hi = Fraction(4), sign_at_four
    return RootBracket(lo, hi, signs[k], sign_hi)


def bisect(bracket: RootBracket, evaluator: Callable[[Fraction], int],
           width: Fraction = DEFAULT_WIDTH) -> RootBracket:
    """Shrink a sign-change bracket below `width` by exact bisection.

    `evaluator` must return the exact sign of the probed function at a
    rational point.  The endpoint sign invariant is maintained at every
    step; an exact zero at a midpoint collapses to a degenerate hit,
    returned as a minimal bracket around it.
    """
    lo, hi = bracket.lo, bracket.hi
    sign_lo, sign_hi = bracket.sign_lo, bracket.sign_hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = evaluator(mid)
        if s == 0:
            half = width / 2
            return RootBracket(mid - half, mid + half, sign_lo, sign_hi)
        if s == sign_lo:
            lo = mid
        else:
            hi = mid
    return RootBracket(lo, hi, sign_lo, sign_hi)


def fraction_to_decimal(value: Fraction, digits: int) -> str:
    """Round a rational to `digits` decimals (half away from zero)."""
    if value < 0:
        return "-" + fraction_to_decimal(-value, digits)
    scaled = value * 10 ** digits
    units = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    text = str(units).rjust(digits + 1, "0")
    return text[:-digits] + "." + text[-digits:] if digits else text


@dataclass(frozen=True)
class RootNearFour:
    """Isolated largest real root below 4 of one strip polynomial."""

    n: int
    bracket: RootBracket
    digits: int

    @property
    def midpoint(self) -> Fraction:
        return self.bracket.midpoint

    @property
    def decimal(self) -> str:
        return fraction_to_decimal(self.bracket.midpoint, self.digits)


def largest_root_near_four(family: StripFamily, n: int, *,
                           width: Fraction = DEFAULT_WIDTH,
                           digits: int = 10) -> RootNearFour:
    """Bracket and bisect the real root of the n-layer strip closest to 4."""
    coarse = bracket_near_four(family, n)
    fine = bisect(coarse, lambda x: family.sign_at(n, x), width)
    return RootNearFour(n, fine, digits)


# ----------------------------------------------------------------------------
# Polynomial gcd / Sturm machinery (integer primitive remainder sequences)
# ----------------------------------------------------------------------------

def _pseudo_rem_tracked(a: IntPolynomial, b: IntPolynomial) -> Tuple[IntPolynomial, int]:
    """(r, mult) with mult * a = q * b + r, deg r < deg b; mult is a power
    of b's leading coefficient, so its sign is known exactly."""
    db = b.degree
    bc = b.coefficients
    lc = bc[-1]
    r = list(a.coefficients)
    mult = 1
    while len(r) - 1 >= db:
        if r[-1] == 0:
            r.pop()
            continue
        shift = len(r) - 1 - db
        head = r[-1]
        r = [c * lc for c in r]
        mult *= lc
        for i, c in enumerate(bc):
            r[shift + i] -= head * c
        while r and r[-1] == 0:
            r.pop()
    return IntPolynomial(r), mult


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over the integers (positive leading coefficient)."""
    a = a.primitive_part()
    b = b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r, _ = _pseudo_rem_tracked(a, b)
        a, b = b, r.primitive_part()
    if a.is_zero():
        return a
    return a if a.leading_coefficient() > 0 else -a


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p with repeated factors collapsed to multiplicity one."""
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p
    return p.primitive_part().divide_exact(g)


def squarefree_factors(p: IntPolynomial) -> List[Tuple[IntPolynomial, int]]:
    """Yun decomposition: [(factor_i, multiplicity i)] with each factor
    squarefree and pairwise coprime; the product of factor^mult recovers the
    primitive part of p."""
    p = p.primitive_part()
    if p.degree <= 0:
        return []
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    if a0.degree == 0:
        return [(p if p.leading_coefficient() > 0 else -p, 1)]
    b = p.divide_exact(a0)
    c = dp.divide_exact(a0)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        ai = poly_gcd(b, d)
        if ai.degree > 0:
            out.append((ai, i))
        b = b.divide_exact(ai) if ai.degree > 0 else b
        c = d.divide_exact(ai) if ai.degree > 0 else d
        d = c - b.derivative()
        i += 1
    return out


def sturm_sequence(p: IntPolynomial) -> List[IntPolynomial]:
    """Sturm chain of a squarefree polynomial, each member reduced to its
    primitive part (positive rescaling never changes sign variations)."""
    seq = [p.primitive_part()]
    dp = p.derivative().primitive_part()
    if dp.is_zero():
        return seq
    seq.append(dp)
    while seq[-1].degree > 0:
        r, mult = _pseudo_rem_tracked(seq[-2], seq[-1])
        if r.is_zero():
            break
        if mult < 0:
            r = -r
        seq.append((-r).primitive_part())
    return seq


def _sign_variations(seq: Sequence[IntPolynomial], at: Fraction) -> int:
    signs = [s for s in (q.sign_at(at) for q in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(p: IntPolynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in (lo, hi].

    Repeated factors are divided out first, so multiple roots count once.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    q = squarefree_part(p)
    if q.degree <= 0:
        return 0
    seq = sturm_sequence(q)
    return _sign_variations(seq, lo) - _sign_variations(seq, hi)


# ----------------------------------------------------------------------------
# Complex roots (Aberth-Ehrlich, mpmath multiprecision)
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexRootSet:
    """All complex roots of an integer polynomial, with residuals.

    `roots` are (re, im) mpmath float pairs, conjugate-closed and sorted;
    `residuals` are |p(z)| / max|coeff| evaluated at doubled precision.
    """

    roots: tuple
    residuals: tuple
    precision_bits: int

    @property
    def max_residual(self):
        return max(self.residuals) if self.residuals else mp.mpf(0)

    def real_roots(self, imag_tol=None) -> list:
        tol = imag_tol if imag_tol is not None else mp.mpf(2) ** (-self.precision_bits // 3)
        return sorted(re for re, im in self.roots if abs(im) <= tol)


def _aberth_iterate(monic: Sequence, prec: int, max_iter: int) -> list:
    """Aberth-Ehrlich simultaneous iteration on a monic squarefree
    polynomial given by mp-float coefficients (constant first).

    A root approximation counts as settled once |p(z)| drops below the
    round-off floor of the Horner evaluation itself; beyond that point the
    computed correction is pure noise, so iterating further cannot help.
    """
    d = len(monic) - 1
    deriv = [i * monic[i] for i in range(1, d + 1)]
    absc = [abs(c) for c in monic]
    # Root-magnitude bound: the Cauchy bound 1 + max|c_i| explodes for the
    # huge coefficients seen here, so cap it with the Fujiwara-type bound
    # 2 max_k |c_(d-k)|^(1/k), which tracks the actual root radius.
    cauchy = 1 + max(abs(c) for c in monic[:-1])
    fujiwara = 2 * max(abs(monic[d - k]) ** (mp.mpf(1) / k)
                       for k in range(1, d + 1))
    radius = min(cauchy, fujiwara) / 2
    z = [radius * mp.expjpi(2 * (mp.mpf(k) / d) + mp.mpf(1) / (2 * d))
         for k in range(d)]
    unit = mp.mpf(2) ** (-(prec + 8))  # working precision is prec + 32

    def horner(cs, t):
        acc = cs[-1]
        for c in reversed(cs[:-1]):
            acc = acc * t + c
        return acc

    for _ in range(max_iter):
        settled = 0
        for j in range(d):
            pj = horner(monic, z[j])
            noise_floor = horner(absc, abs(z[j])) * (d + 1) * unit
            if abs(pj) <= noise_floor:
                settled += 1
                continue
            dj = horner(deriv, z[j])
            if dj == 0:
                z[j] += mp.mpf(1) / 1024 + mp.mpc(0, 1) / 512
                continue
            w = pj / dj
            s = mp.mpc(0)
            for k in range(d):
                if k != j:
                    s += 1 / (z[j] - z[k])
            denom = 1 - w * s
            corr = w if denom == 0 else w / denom
            z[j] -= corr
        if settled == d:
            return z
    raise RootConvergenceError(f"no convergence after {max_iter} iterations")


def complex_roots(p: IntPolynomial, precision_bits: int = 256, *,
                  max_iter: int = 400) -> ComplexRootSet:
    """All complex roots of p at the requested working precision.

    Multiple roots are handled by Yun squarefree decomposition: each
    squarefree factor is solved by Aberth-Ehrlich iteration and its roots
    are emitted with the right multiplicity.  One retry at doubled
    precision on non-convergence.  Residuals are evaluated against the
    original coefficients at doubled precision, scaled by max|coeff|.
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    if p.degree > 600:
        raise ValueError("desk-scale solver is capped at degree 600")

    collected = []
    for factor, mult in squarefree_factors(p):
        froots: list = []
        for attempt, prec in enumerate((precision_bits, 2 * precision_bits)):
            with mp.workprec(prec + 32):
                lead = mp.mpf(factor.leading_coefficient())
                monic = [mp.mpf(c) / lead for c in factor.coefficients]
                try:
                    froots = _aberth_iterate(monic, prec, max_iter)
                    break
                except RootConvergenceError:
                    if attempt:
                        raise
        collected.extend((z, mult) for z in froots)

    with mp.workprec(2 * precision_bits):
        imag_tol = mp.mpf(2) ** (-precision_bits // 3)
        cleaned = []
        for z, mult in collected:
            re, im = mp.re(z), mp.im(z)
            if abs(im) <= imag_tol * (1 + abs(re)):
                im = mp.mpf(0)
            cleaned.extend([(re, im)] * mult)
        # Enforce conjugate closure: pair strictly-complex roots greedily.
        upper = sorted((r for r in cleaned if r[1] > 0), key=lambda t: (t[0], t[1]))
        lower = sorted((r for r in cleaned if r[1] < 0), key=lambda t: (t[0], -t[1]))
        reals = [r for r in cleaned if r[1] == 0]
        paired = []
        used = [False] * len(lower)
        for re, im in upper:
            best, best_dist = None, None
            for idx, (re2, im2) in enumerate(lower):
                if used[idx]:
                    continue
                dist = abs(re - re2) + abs(im + im2)
                if best_dist is None or dist < best_dist:
                    best, best_dist = idx, dist
            if best is None:
                paired.append((re, im))
                continue
            used[best] = True
            re2, im2 = lower[best]
            mre = (re + re2) / 2
            mim = (im - im2) / 2
            paired.append((mre, mim))
            paired.append((mre, -mim))
        paired.extend((re2, im2) for idx, (re2, im2) in enumerate(lower)
                      if not used[idx])
        allroots = sorted(reals + paired, key=lambda t: (t[0], t[1]))

        norm = mp.mpf(max(abs(c) for c in p.coefficients))
        residuals = []
        for re, im in allroots:
            z = mp.mpc(re, im)
            acc = mp.mpc(p.coefficients[-1])
            for c in reversed(p.coefficients[:-1]):
                acc = acc * z + c
            residuals.append(abs(acc) / norm)

    return ComplexRootSet(tuple(allroots), tuple(residuals), precision_bits)
