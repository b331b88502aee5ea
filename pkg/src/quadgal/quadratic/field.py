"""Quadratic fields Q(sqrt d): integers, prime splitting and units."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ..core.integers import is_squarefree, kronecker_symbol


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class QuadraticField:
    d: int

    def __post_init__(self):
        if self.d in (0, 1) or not is_squarefree(self.d):
            raise DomainError(f"d must be squarefree and not 0 or 1, got {self.d}")

    @property
    def disc(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def signature(self) -> tuple[int, int]:
        return (2, 0) if self.d > 0 else (0, 1)

    @property
    def is_real(self) -> bool:
        return self.d > 0

    @property
    def omega_trace(self) -> int:
        """t in omega^2 = t*omega + c."""
        return 1 if self.d % 4 == 1 else 0

    @property
    def omega_const(self) -> int:
        """c in omega^2 = t*omega + c."""
        return (self.d - 1) // 4 if self.d % 4 == 1 else self.d

    def omega_minpoly(self) -> tuple[int, int, int]:
        """(c0, c1, c2) with c0 + c1 x + c2 x^2 the minimal polynomial of omega."""
        return (-self.omega_const, -self.omega_trace, 1)

    def element(self, a: int, b: int = 0) -> "QuadInteger":
        return QuadInteger(self.d, a, b)

    @property
    def omega(self) -> "QuadInteger":
        return QuadInteger(self.d, 0, 1)

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"


def make_field(d: int) -> QuadraticField:
    return QuadraticField(d)


@dataclass(frozen=True)
class QuadInteger:
    """a + b*omega in the ring of integers of Q(sqrt d)."""

    d: int
    a: int
    b: int

    @property
    def field(self) -> QuadraticField:
        return QuadraticField(self.d)

    def _tc(self):
        if self.d % 4 == 1:
            return 1, (self.d - 1) // 4
        return 0, self.d

    def __add__(self, other: "QuadInteger") -> "QuadInteger":
        return QuadInteger(self.d, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QuadInteger") -> "QuadInteger":
        return QuadInteger(self.d, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QuadInteger":
        return QuadInteger(self.d, -self.a, -self.b)

    def __mul__(self, other) -> "QuadInteger":
        if isinstance(other, int):
            return QuadInteger(self.d, self.a * other, self.b * other)
        t, c = self._tc()
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return QuadInteger(self.d, a1 * a2 + c * b1 * b2, a1 * b2 + a2 * b1 + t * b1 * b2)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QuadInteger":
        out, base = QuadInteger(self.d, 1, 0), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "QuadInteger":
        t, _ = self._tc()
        # omega + conj(omega) = t
        return QuadInteger(self.d, self.a + t * self.b, -self.b)

    def norm(self) -> int:
        t, c = self._tc()
        return self.a * self.a + t * self.a * self.b - c * self.b * self.b

    def trace(self) -> int:
        t, _ = self._tc()
        return 2 * self.a + t * self.b

    def half_coords(self) -> tuple[int, int]:
        """(u, v) with self = (u + v sqrt d) / 2."""
        if self.d % 4 == 1:
            return 2 * self.a + self.b, self.b
        return 2 * self.a, 2 * self.b

    def sign_at(self, place: int) -> int:
        """Sign under the real embedding sqrt d -> +sqrt d (place 0) or -sqrt d (place 1)."""
        if self.d < 0:
            raise DomainError("no real places")
        u, v = self.half_coords()
        if place == 1:
            v = -v
        return sign_of_surd(u, v, self.d)

    def __float__(self) -> float:
        u, v = self.half_coords()
        return (u + v * math.sqrt(self.d)) / 2 if self.d > 0 else float("nan")

    def __str__(self) -> str:
        w = "sqrt(%d)" % self.d if self.d % 4 != 1 else "w"
        return f"{self.a} + {self.b}*{w}" if self.b else str(self.a)


def sign_of_surd(u: int, v: int, d: int) -> int:
    """Exact sign of u + v sqrt(d) for d > 0 nonsquare."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return 1 if v > 0 else -1
    if (u > 0) == (v > 0):
        return 1 if u > 0 else -1
    # opposite signs: compare u^2 with v^2 d
    return (1 if u > 0 else -1) if u * u > v * v * d else (1 if v > 0 else -1)


@dataclass(frozen=True)
class Splitting:
    kind: str
    e: int
    f: int
    g: int


def splitting_of_prime(K: QuadraticField, p: int) -> Splitting:
    s = kronecker_symbol(K.disc, p)
    if s == 0:
        return Splitting("ramified", 2, 1, 1)
    if s == -1:
        return Splitting("inert", 1, 2, 1)
    return Splitting("split", 1, 1, 2)


def _cf_quadratic(P: int, Q: int, D: int):
    """Partial quotients of (P + sqrt D) / Q, with Q | D - P^2 and Q > 0."""
    s = math.isqrt(D)
    while True:
        if Q <= 0:
            raise ArithmeticError("continued fraction left the positive range")
        a = (P + s) // Q
        yield a
        P = a * Q - P
        Q = (D - P * P) // Q


@lru_cache(maxsize=None)
def fundamental_unit(K: QuadraticField) -> QuadInteger:
    """Smallest unit > 1, read off the convergents of sqrt d or (sqrt d - 1)/2."""
    if not K.is_real:
        raise DomainError("fundamental unit only exists for real quadratic fields")
    d = K.d
    cf = _cf_quadratic(0, 1, d) if d % 4 != 1 else _cf_quadratic(-1, 2, d)
    # convergents h/k; candidate unit h + k*omega
    h_prev, h = 1, next(cf)
    k_prev, k = 0, 1
    for _ in range(10_000):
        eps = QuadInteger(d, h, k)
        if abs(eps.norm()) == 1 and eps.sign_at(0) > 0 and (eps - QuadInteger(d, 1, 0)).sign_at(0) > 0:
            return eps
        a = next(cf)
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    raise ArithmeticError("period too long")


@dataclass(frozen=True)
class UnitGroup:
    torsion_order: int
    torsion_generator: QuadInteger
    fundamental: QuadInteger | None

    def generators(self) -> list[QuadInteger]:
        gens = [self.torsion_generator]
        if self.fundamental is not None:
            gens.append(self.fundamental)
        return gens


def unit_group(K: QuadraticField) -> UnitGroup:
    if K.d == -1:
        return UnitGroup(4, K.omega, None)
    if K.d == -3:
        # omega = (1 + sqrt -3)/2 is a primitive 6th root of unity
        return UnitGroup(6, K.omega, None)
    minus_one = K.element(-1)
    if K.is_real:
        return UnitGroup(2, minus_one, fundamental_unit(K))
    return UnitGroup(2, minus_one, None)
