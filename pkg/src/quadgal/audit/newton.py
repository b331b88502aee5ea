"""p-adic Newton polygons and the Dedekind index criterion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core import finite_field as ff
from ..core.integers import valuation
from ..core.polynomial import IntPolynomial


@dataclass(frozen=True)
class Segment:
    """A hull edge; ``slope`` is the common p-adic valuation of its roots."""

    slope: Fraction
    length: int

    def as_list(self) -> list:
        return [str(self.slope), self.length]


def newton_polygon(f: IntPolynomial, p: int) -> list[Segment]:
    """Lower convex hull of (i, v_p(a_i)), as segments ordered by decreasing root valuation."""
    if f.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    if f.coeffs[0] == 0:
        raise ValueError("zero constant term: divide out the power of x first")
    pts = [(i, valuation(c, p)) for i, c in enumerate(f.coeffs) if c]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append(Segment(Fraction(y1 - y2, x2 - x1), x2 - x1))
    return segs


@dataclass(frozen=True)
class RamificationEvidence:
    segments: tuple[Segment, ...]
    certified_e: int | None
    consistent: bool

    def as_dict(self) -> dict:
        return {
            "segments": [s.as_list() for s in self.segments],
            "certified_total_ramification": self.certified_e,
            "consistent": self.consistent,
        }


def ramification_evidence(f: IntPolynomial, p: int, claimed_e: int) -> RamificationEvidence:
    """Newton-polygon evidence about the ramification index of a field with one prime over p.

    Every root of f in the completion has valuation in (1/e)Z, so each slope
    denominator must divide the claimed e. A single slope with denominator
    deg f certifies total ramification.
    """
    segs = tuple(newton_polygon(f, p))
    consistent = all(claimed_e % s.slope.denominator == 0 for s in segs)
    certified = f.degree if len(segs) == 1 and segs[0].slope.denominator == f.degree else None
    return RamificationEvidence(segs, certified, consistent)


@dataclass(frozen=True)
class DedekindResult:
    p: int
    maximal: bool
    defect_degree: int

    @property
    def verdict(self) -> str:
        return "maximal_at_p" if self.maximal else "not_maximal_at_p"


def _lift(a: list[int]) -> IntPolynomial:
    return IntPolynomial(a)


def dedekind_index_check(f: IntPolynomial, p: int) -> DedekindResult:
    """Dedekind's criterion for p dividing the index of Z[x]/(f) in the maximal order.

    With f = prod pi_i^e_i mod p, g = prod pi_i and h = f/g mod p, put
    F = (f - g h)/p. The defect U = gcd(F, g, h) mod p is trivial iff p does
    not divide the index; otherwise the index is divisible by p^deg(U).
    """
    if f.lc != 1:
        raise ValueError("f must be monic")
    fbar = f.reduce_mod(p)
    facs = ff.factor_gfp(fbar, p)
    g, h = [1], [1]
    for pi, e in facs:
        g = ff.mul(g, pi, p)
        for _ in range(e - 1):
            h = ff.mul(h, pi, p)
    G, H = _lift(g), _lift(h)
    diff = f - G * H
    if any(c % p for c in diff.coeffs):
        raise ArithmeticError("lifted factorization is not congruent to f")
    F = IntPolynomial(c // p for c in diff.coeffs)
    U = ff.gcd(ff.gcd(F.reduce_mod(p), g, p), h, p)
    deg = len(U) - 1 if U else 0
    return DedekindResult(p, deg == 0, deg)
