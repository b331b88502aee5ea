"""Elliptic curves over quadratic fields: invariants, odd reduction, 2-torsion.

Elements of K = Q(sqrt d) are kept as exact rational coordinates over the
integral basis (1, omega). Everything here is exact; nothing is floating point.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from pathlib import Path

from .core.factor import factor_over_Q
from .core.integers import factor_integer, kronecker_symbol, squarefree_core, valuation
from .core.polynomial import IntPolynomial
from .data import load as load_data
from .quadratic.field import DomainError, QuadraticField, fundamental_unit, splitting_of_prime

RATIONALITY_FIELDS = (6, 5, 3, 2, -1, -2, -3, -5, -6)


class SingularCurve(ValueError):
    pass


@dataclass(frozen=True)
class QuadElement:
    """a + b*omega with a, b rational."""

    d: int
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def of(cls, K: QuadraticField, x) -> "QuadElement":
        if isinstance(x, QuadElement):
            return x
        if isinstance(x, (list, tuple)):
            return cls(K.d, Fraction(x[0]), Fraction(x[1]))
        return cls(K.d, Fraction(x))

    def _tc(self) -> tuple[int, int]:
        if self.d % 4 == 1:
            return 1, (self.d - 1) // 4
        return 0, self.d

    def _coerce(self, o) -> "QuadElement":
        return o if isinstance(o, QuadElement) else QuadElement(self.d, Fraction(o))

    def __add__(self, o):
        o = self._coerce(o)
        return QuadElement(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.d, -self.a, -self.b)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        t, c = self._tc()
        return QuadElement(
            self.d,
            self.a * o.a + c * self.b * o.b,
            self.a * o.b + o.a * self.b + t * self.b * o.b,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return (QuadElement(self.d, 1) / self) ** (-n)
        out, base = QuadElement(self.d, 1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "QuadElement":
        t, _ = self._tc()
        return QuadElement(self.d, self.a + t * self.b, -self.b)

    def norm(self) -> Fraction:
        t, c = self._tc()
        return self.a * self.a + t * self.a * self.b - c * self.b * self.b

    def trace(self) -> Fraction:
        t, _ = self._tc()
        return 2 * self.a + t * self.b

    def __truediv__(self, o):
        o = self._coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in K")
        num = self * o.conj()
        return QuadElement(self.d, num.a / n, num.b / n)

    def __rtruediv__(self, o):
        return self._coerce(o) / self

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_p_integral(self, p: int) -> bool:
        return self.a.denominator % p != 0 and self.b.denominator % p != 0

    def surd(self) -> tuple[Fraction, Fraction]:
        """(u, v) with self = u + v sqrt d."""
        if self.d % 4 == 1:
            return self.a + self.b / 2, self.b / 2
        return self.a, self.b

    @classmethod
    def from_surd(cls, d: int, u: Fraction, v: Fraction) -> "QuadElement":
        if d % 4 == 1:
            return cls(d, u - v, 2 * v)
        return cls(d, u, v)

    def sqrt(self) -> "QuadElement | None":
        """A square root in K, or None."""
        if self.is_zero():
            return self
        u, v = self.surd()
        d = self.d
        if v == 0:
            r = _rational_sqrt(u)
            if r is not None:
                return QuadElement.from_surd(d, r, Fraction(0))
            r = _rational_sqrt(u / d)
            return QuadElement.from_surd(d, Fraction(0), r) if r is not None else None
        # (x + y sqrt d)^2 = u + v sqrt d  =>  x^2 = (u +- sqrt(u^2 - d v^2)) / 2
        n = _rational_sqrt(u * u - d * v * v)
        if n is None:
            return None
        for cand in ((u + n) / 2, (u - n) / 2):
            x = _rational_sqrt(cand)
            if x:
                root = QuadElement.from_surd(d, x, v / (2 * x))
                if root * root == self:
                    return root
        return None

    def is_square(self) -> bool:
        return self.sqrt() is not None

    def coords(self) -> list[str]:
        return [str(self.a), str(self.b)]

    def __str__(self) -> str:
        w = "w" if self.d % 4 == 1 else f"sqrt({self.d})"
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*{w}" if self.a else f"{self.b}*{w}"


def _rational_sqrt(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    n, m = q.numerator, q.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    return Fraction(rn, rm) if rn * rn == n and rm * rm == m else None


# ---------------------------------------------------------------------------
# Weierstrass models


@dataclass(frozen=True)
class Invariants:
    b2: QuadElement
    b4: QuadElement
    b6: QuadElement
    b8: QuadElement
    c4: QuadElement
    c6: QuadElement
    disc: QuadElement

    def as_dict(self) -> dict:
        return {k: getattr(self, k).coords() for k in ("b2", "b4", "b6", "b8", "c4", "c6", "disc")}


def curve_invariants(a1, a2, a3, a4, a6) -> Invariants:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if c4 ** 3 - c6 * c6 != 1728 * disc:
        raise ArithmeticError("Weierstrass identity c4^3 - c6^2 = 1728 disc failed")
    return Invariants(b2, b4, b6, b8, c4, c6, disc)


@dataclass(frozen=True)
class CurveModel:
    K: QuadraticField
    a1: QuadElement
    a2: QuadElement
    a3: QuadElement
    a4: QuadElement
    a6: QuadElement

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, QuadElement.of(self.K, getattr(self, name)))
        if self.invariants.disc.is_zero():
            raise SingularCurve("discriminant is zero")

    @classmethod
    def from_coeffs(cls, d: int, a1=0, a2=0, a3=0, a4=0, a6=0) -> "CurveModel":
        return cls(QuadraticField(d), a1, a2, a3, a4, a6)

    @classmethod
    def short(cls, d: int, A, B) -> "CurveModel":
        return cls.from_coeffs(d, 0, 0, 0, A, B)

    @classmethod
    def from_json(cls, obj: dict) -> "CurveModel":
        """``{"d": d, "a1": [q0, q1], ...}`` with q0 + q1*omega; rationals may be strings."""
        K = QuadraticField(int(obj["d"]))
        vals = []
        for k in ("a1", "a2", "a3", "a4", "a6"):
            v = obj.get(k, [0, 0])
            if not isinstance(v, (list, tuple)):
                v = [v, 0]
            vals.append(QuadElement(K.d, Fraction(str(v[0])), Fraction(str(v[1]))))
        return cls(K, *vals)

    @classmethod
    def load(cls, path: str | Path) -> "CurveModel":
        return cls.from_json(json.loads(Path(path).read_text()))

    @property
    def coefficients(self) -> tuple[QuadElement, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def invariants(self) -> Invariants:
        return curve_invariants(*self.coefficients)

    @property
    def disc(self) -> QuadElement:
        return self.invariants.disc

    def is_integral(self) -> bool:
        return all(a.is_integral() for a in self.coefficients)

    def is_p_integral(self, p: int) -> bool:
        return all(a.is_p_integral(p) for a in self.coefficients)

    def is_defined_over_Q(self) -> bool:
        return all(a.is_rational() for a in self.coefficients)

    def change(self, u, r=0, s=0, t=0) -> "CurveModel":
        """Model for x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        K = self.K
        u, r, s, t = (QuadElement.of(K, z) for z in (u, r, s, t))
        a1, a2, a3, a4, a6 = self.coefficients
        return CurveModel(
            K,
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u ** 2,
            (a3 + r * a1 + 2 * t) / u ** 3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4,
            (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6,
        )

    def as_dict(self) -> dict:
        out = {"d": self.K.d}
        for k, v in zip(("a1", "a2", "a3", "a4", "a6"), self.coefficients):
            out[k] = v.coords()
        return out

    def __str__(self) -> str:
        return "[" + ", ".join(str(a) for a in self.coefficients) + f"] over {self.K}"


# ---------------------------------------------------------------------------
# odd reduction


@dataclass
class PrimeVerdict:
    p: int
    norm_valuation: int
    verdict: str
    scalings: list[str] = field(default_factory=list)
    final_model: dict | None = None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "norm_disc_valuation": self.norm_valuation,
            "verdict": self.verdict,
            "scalings": self.scalings,
            "final_model": self.final_model,
        }


@dataclass
class ReductionReport:
    norm_disc: int
    primes: list[PrimeVerdict]

    @property
    def good_away_from_2(self) -> bool:
        return all(v.verdict == "good_after_model_change" for v in self.primes)

    def as_dict(self) -> dict:
        return {
            "norm_disc": str(self.norm_disc),
            "odd_primes": [v.as_dict() for v in self.primes],
            "good_away_from_2": self.good_away_from_2,
        }


def _norm_int(z: QuadElement) -> int:
    n = z.norm()
    if n.denominator != 1:
        raise ValueError("element is not integral")
    return n.numerator


def _element_of_norm(K: QuadraticField, target: int, bound: int = 60) -> QuadElement | None:
    """Some a + b*omega with |norm| = target and |a|, |b| <= bound."""
    for size in range(bound + 1):
        for b in range(0, size + 1):
            for a in (size, -size) if b < size else range(-size, size + 1):
                z = QuadElement(K.d, a, b)
                if z.is_zero():
                    continue
                if abs(z.norm()) == target:
                    return z
    return None


def _local_uniformizers(K: QuadraticField, p: int) -> list[QuadElement]:
    """Candidate scalings at p, smallest norm first."""
    out = []
    if splitting_of_prime(K, p).kind != "inert":
        pi = _element_of_norm(K, p)
        if pi is not None:
            out.append(pi)
            ratio = pi.conj() / pi
            if not (ratio.is_integral() and abs(ratio.norm()) == 1):
                out.append(pi.conj())
    out.append(QuadElement(K.d, p))
    return out


def _residue_reps(u: QuadElement) -> list[QuadElement]:
    """Representatives of O_K / u^2 O_K, as a + b*omega on an HNF box."""
    d = u.d
    m = u * u
    omega = QuadElement(d, 0, 1)
    v1, v2 = m, m * omega
    x1, y1, x2, y2 = int(v1.a), int(v1.b), int(v2.a), int(v2.b)
    g = math.gcd(x1, x2)
    # lattice basis (g, *), (0, c)
    c = abs(x1 * y2 - x2 * y1) // g
    return [QuadElement(d, a, b) for a in range(g) for b in range(c)]


def _try_scaling(E: CurveModel, p: int, u: QuadElement, budget: int) -> CurveModel | None:
    """A p-integral model E' = E scaled by u, if the search finds one."""
    a1, a2, a3 = E.a1, E.a2, E.a3
    s = -a1 / 2
    if p != 3:
        rs = [(s * s + s * a1 - a2) / 3]
    else:
        rs = _residue_reps(u)
        if len(rs) > budget:
            rs = rs[:budget]
    for r in rs:
        t = -(a3 + r * a1) / 2
        E2 = E.change(u, r, s, t)
        if E2.is_p_integral(p):
            return E2
    return None


def _reduce_at(E: CurveModel, p: int, budget: int) -> PrimeVerdict:
    v0 = valuation(_norm_int(E.disc), p)
    scalings = []
    cur = E
    while True:
        v = valuation(_norm_int(cur.disc), p)
        if v == 0:
            return PrimeVerdict(p, v0, "good_after_model_change", scalings, cur.as_dict() if scalings else None)
        moved = False
        for u in _local_uniformizers(E.K, p):
            if v < 12 * valuation(_norm_int(u), p):
                continue
            E2 = _try_scaling(cur, p, u, budget)
            if E2 is not None:
                scalings.append(str(u))
                cur = E2
                moved = True
                break
        if not moved:
            return PrimeVerdict(p, v0, "bad_unresolved", scalings, cur.as_dict() if scalings else None)


def odd_reduction_audit(E: CurveModel, budget: int = 20000) -> ReductionReport:
    """Search for models with discriminant prime to each odd p dividing N(disc).

    ``bad_unresolved`` means the bounded search found no such model; it is
    not a proof of bad reduction.
    """
    if not E.is_integral():
        raise ValueError("odd_reduction_audit needs an integral model")
    n = abs(_norm_int(E.disc))
    fac = factor_integer(n)
    if not fac.complete:
        raise ArithmeticError("could not factor the discriminant norm")
    verdicts = [_reduce_at(E, p, budget) for p in fac.support if p != 2]
    return ReductionReport(n, verdicts)


# ---------------------------------------------------------------------------
# 2-torsion


IMAGES = ("trivial", "C2", "C3", "S3")
_SUBGROUPS = {
    "trivial": {"trivial"},
    "C2": {"trivial", "C2"},
    "C3": {"trivial", "C3"},
    "S3": {"trivial", "C2", "C3", "S3"},
}


def is_subgroup_image(small: str, big: str) -> bool:
    """Whether ``small`` embeds in ``big`` as subgroups of GL2(F2)."""
    return small in _SUBGROUPS[big]


@dataclass
class TwoTorsionReport:
    factorization_type: tuple[int, ...]
    image: str
    roots: list[QuadElement]
    cubic_disc_is_square: bool

    @property
    def has_rational_two_torsion(self) -> bool:
        return len(self.roots) > 0

    def as_dict(self) -> dict:
        return {
            "factorization_type": list(self.factorization_type),
            "image": self.image,
            "roots_in_K": [r.coords() for r in self.roots],
            "cubic_disc_is_square": self.cubic_disc_is_square,
        }


def two_division_cubic(E: CurveModel) -> tuple[QuadElement, QuadElement, QuadElement]:
    """(A, B, C) with x^3 + A x^2 + B x + C = (4x^3 + b2 x^2 + 2 b4 x + b6) / 4."""
    inv = E.invariants
    return inv.b2 / 4, inv.b4 / 2, inv.b6 / 4


def _cubic_disc(A, B, C):
    return A * A * B * B - 4 * B ** 3 - 4 * A ** 3 * C - 27 * C * C + 18 * A * B * C


def _poly_mul(f: list, g: list) -> list:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return out


def _norm_polynomial(coeffs: list[QuadElement]) -> IntPolynomial:
    """Primitive integer multiple of g * conj(g) for g with coefficients in K (low first)."""
    prod = _poly_mul(coeffs, [c.conj() for c in coeffs])
    if any(c.b != 0 for c in prod):
        raise ArithmeticError("norm polynomial is not rational")
    rat = [c.a for c in prod]
    den = reduce(math.lcm, (c.denominator for c in rat), 1)
    return IntPolynomial(int(c * den) for c in rat).primitive_part()


def _roots_from_factor(K: QuadraticField, q: IntPolynomial) -> list[QuadElement]:
    if q.degree == 1:
        return [QuadElement(K.d, Fraction(-q.coeffs[0], q.coeffs[1]))]
    if q.degree != 2:
        return []
    c, b, a = q.coeffs
    disc = QuadElement(K.d, Fraction(b * b - 4 * a * c))
    r = disc.sqrt()
    if r is None:
        return []
    return [(-b + r) / (2 * a), (-b - r) / (2 * a)]


def cubic_roots_in_K(K: QuadraticField, A, B, C) -> list[QuadElement]:
    """Roots in K of x^3 + A x^2 + B x + C, via linear and quadratic factors of its norm."""
    coeffs = [QuadElement.of(K, z) for z in (C, B, A, 1)]
    N = _norm_polynomial(coeffs)
    roots: list[QuadElement] = []
    for q, _ in factor_over_Q(N):
        for z in _roots_from_factor(K, q):
            val = ((z + coeffs[2]) * z + coeffs[1]) * z + coeffs[0]
            if val.is_zero() and z not in roots:
                roots.append(z)
    roots.sort(key=lambda z: (z.a, z.b))
    return roots


def _image(n_roots: int, disc_square: bool) -> tuple[tuple[int, ...], str]:
    if n_roots == 3:
        return (1, 1, 1), "trivial"
    if n_roots == 1:
        return (1, 2), "C2"
    return (3,), "C3" if disc_square else "S3"


def two_torsion_field(E: CurveModel, K: QuadraticField | None = None) -> TwoTorsionReport:
    K = K or E.K
    A, B, C = two_division_cubic(E)
    roots = cubic_roots_in_K(K, A, B, C)
    square = _cubic_disc(A, B, C).is_square()
    ftype, image = _image(len(roots), square)
    if image == "trivial" and not square:
        raise ArithmeticError("split cubic with nonsquare discriminant")
    return TwoTorsionReport(ftype, image, roots, square)


def two_torsion_image_over_Q(E: CurveModel) -> str:
    """Image of Gal(Q(E[2])/Q) for a model with rational coefficients."""
    if not E.is_defined_over_Q():
        raise DomainError("model is not defined over Q")
    A, B, C = (z.a for z in two_division_cubic(E))
    rat = [C, B, A, Fraction(1)]
    den = reduce(math.lcm, (c.denominator for c in rat), 1)
    f = IntPolynomial(int(c * den) for c in rat)
    n_roots = sum(e for q, e in factor_over_Q(f) if q.degree == 1)
    disc = _cubic_disc(A, B, C)
    square = disc >= 0 and _rational_sqrt(disc) is not None
    return _image(n_roots, square)[1]


# ---------------------------------------------------------------------------
# rational 2-torsion for curves good away from 2


@dataclass
class RationalityAudit:
    d: int
    verdict: str
    reduction: ReductionReport
    two_torsion: TwoTorsionReport | None

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "verdict": self.verdict,
            "reduction": self.reduction.as_dict(),
            "two_torsion": self.two_torsion.as_dict() if self.two_torsion else None,
        }


def two_torsion_rationality_audit(E: CurveModel, d: int | None = None) -> RationalityAudit:
    """Over the listed fields, good reduction away from 2 forces a K-rational point of order 2.

    ``not_applicable``: good reduction away from 2 was not established.
    ``consistent``: the image is trivial or C2.
    ``inconsistent``: a verified counterexample, a hard failure of the chain.
    """
    d = E.K.d if d is None else d
    if d not in RATIONALITY_FIELDS:
        raise DomainError(f"d must be one of {RATIONALITY_FIELDS}")
    if d != E.K.d:
        raise DomainError("curve is defined over a different field")
    red = odd_reduction_audit(E)
    if not red.good_away_from_2:
        return RationalityAudit(d, "not_applicable", red, None)
    tt = two_torsion_field(E)
    verdict = "consistent" if tt.image in ("trivial", "C2") else "inconsistent"
    return RationalityAudit(d, verdict, red, tt)


# ---------------------------------------------------------------------------
# admissibility data and nonexistence


def _is_qr(a: int, m: int) -> bool:
    """a is a nonzero square modulo the odd prime m."""
    return kronecker_symbol(a, m) == 1


def setzer_admissible(d: int) -> dict:
    """The imaginary-field rule: d = 65*d1, d1 a square mod 5 and mod 13, 65 a square mod d1."""
    if d >= 0:
        raise DomainError("the rule covers d < 0 only")
    ev: dict = {"d": d, "divisible_by_65": d % 65 == 0}
    if d % 65:
        ev["admissible"] = False
        return ev
    d1 = d // 65
    m = abs(d1)
    ev["d1"] = d1
    ev["d1_square_mod_5"] = _is_qr(d1, 5)
    ev["d1_square_mod_13"] = _is_qr(d1, 13)
    ev["65_square_mod_d1"] = all(kronecker_symbol(65, q) == 1 for q in factor_integer(m).support) if m > 1 else True
    ev["admissible"] = ev["d1_square_mod_5"] and ev["d1_square_mod_13"] and ev["65_square_mod_d1"]
    return ev


def admissibility_lookup(d: int) -> dict:
    data = load_data()["admissibility"]
    com = data["comalada"]
    lo, hi = com["range"]
    if 0 < d and lo <= d <= hi:
        return {
            "rule": "comalada",
            "source": com["source"],
            "admissible": d in com["admissible_d"],
            "covered": True,
        }
    if d < 0:
        ev = setzer_admissible(d)
        return {"rule": "setzer", "source": data["setzer"]["source"], "admissible": ev["admissible"], "covered": True, "evidence": ev}
    return {"rule": None, "admissible": None, "covered": False}


def nonexistence_report(d: int) -> dict:
    """Chain: rational 2-torsion forced + no admissible curve => no curve with good reduction everywhere."""
    if squarefree_core(d) != d or d in (0, 1):
        raise DomainError("d must be squarefree, not 0 or 1")
    look = admissibility_lookup(d)
    out = {"d": d, "admissibility": look}
    if d in RATIONALITY_FIELDS and look["covered"] and look["admissible"] is False:
        out["conclusion"] = "nonexistence"
        out["chain"] = [
            "a curve with good reduction everywhere has good reduction away from 2",
            "over this field such a curve has a K-rational point of order 2, so it is admissible",
            f"{look['rule']} data: no admissible curve over Q(sqrt({d}))",
        ]
        out["provenance"] = "derived from embedded external data plus the rational 2-torsion result"
    elif look["admissible"]:
        out["conclusion"] = "admissible_curve_exists"
        out["provenance"] = f"{look['rule']} data"
    else:
        out["conclusion"] = "no_claim"
        out["provenance"] = "admissibility lookup only"
    return out


# ---------------------------------------------------------------------------
# randomized model changes and fuzzing


def random_unimodular_change(E: CurveModel, rng: random.Random, size: int = 3) -> CurveModel:
    """An isomorphic integral model: u a unit, r, s, t small integers of K."""
    K = E.K
    if K.is_real:
        eps = fundamental_unit(K)
        u = QuadElement(K.d, eps.a, eps.b) ** rng.randint(-2, 2)
    else:
        units = [QuadElement(K.d, 1), QuadElement(K.d, -1)]
        if K.d == -1:
            units.append(QuadElement(K.d, 0, 1))
        if K.d == -3:
            units.append(QuadElement(K.d, 0, 1))
        u = rng.choice(units)
    if rng.random() < 0.5:
        u = -u

    def small():
        return QuadElement(K.d, rng.randint(-size, size), rng.randint(-size, size))

    return E.change(u, small(), small(), small())


def good_away_from_two_samples(d: int, rng: random.Random, count: int) -> list[CurveModel]:
    """Curves y^2 = x(x^2 + a x + b) with b and a^2 - 4b of norm +-2^k, then scrambled."""
    K = QuadraticField(d)
    if K.is_real:
        e = fundamental_unit(K)
        eps = QuadElement(d, e.a, e.b)
        units = [eps ** k for k in range(-2, 3)]
    else:
        units = [QuadElement(d, 1)]
        if d == -1:
            units.append(QuadElement(d, 0, 1))
    out = []
    tries = 0
    while len(out) < count and tries < 200000:
        tries += 1
        b = rng.choice([1, -1]) * rng.choice(units) * 2 ** rng.randint(0, 6)
        a = QuadElement(d, rng.randint(-12, 12), rng.randint(-6, 6))
        disc = a * a - 4 * b
        if disc.is_zero():
            continue
        n = abs(disc.norm())
        if n.denominator != 1 or n.numerator & (n.numerator - 1):
            continue
        E = CurveModel(K, 0, a, 0, b, 0)
        out.append(random_unimodular_change(E, rng))
    return out
