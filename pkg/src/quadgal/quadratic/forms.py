"""Binary quadratic forms: reduction, composition, and form class groups.

Definite forms are reduced in the usual Gauss sense. Indefinite forms are
reduced by the rho operator, and proper classes are the cycles of reduced
forms, giving the narrow class group. The wide class group is the quotient
by the class of the form representing -1 times the principal form.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache

from ..core.integers import egcd, factor_integer
from .field import QuadraticField, fundamental_unit

MAX_ABS_DISC = 10**7


@dataclass(frozen=True, order=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def opposite(self) -> "BinaryQuadraticForm":
        return BinaryQuadraticForm(self.a, -self.b, self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_reduced(self) -> bool:
        D = self.disc
        if D < 0:
            a, b, c = self.a, self.b, self.c
            if not (abs(b) <= a <= c):
                return False
            return b >= 0 if (abs(b) == a or a == c) else True
        return _below_sqrt(self.b, D) and self.b > 0 and _between(abs(self.a), self.b, D)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def _below_sqrt(x: int, D: int) -> bool:
    """x < sqrt(D) for nonsquare D > 0."""
    return x < 0 or x * x < D


def _above_sqrt(x: int, D: int) -> bool:
    return x > 0 and x * x > D


def _between(abs_a: int, b: int, D: int) -> bool:
    # sqrt D - b < 2|a| < sqrt D + b
    return _above_sqrt(2 * abs_a + b, D) and _below_sqrt(2 * abs_a - b, D)


def principal_form(D: int) -> BinaryQuadraticForm:
    b = D % 2
    return BinaryQuadraticForm(1, b, (b * b - D) // 4)


def reduce_definite(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    a, b, c = f.a, f.b, f.c
    if a <= 0:
        raise ValueError("only positive definite forms are handled")
    while True:
        if not (-a < b <= a):
            # translate b into (-a, a]
            k = (a - b) // (2 * a)
            b, c = b + 2 * k * a, a * k * k + b * k + c
            continue
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return BinaryQuadraticForm(a, b, c)


def _rho(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    a, b, c = f.a, f.b, f.c
    D = f.disc
    m = 2 * abs(c)
    # normalize -b modulo 2|c| into the standard window
    if _above_sqrt(abs(c), D) or abs(c) * abs(c) == D:
        r = (-b) % m
        if r > abs(c):
            r -= m
    else:
        s = math.isqrt(D)
        # largest r = -b mod m with r < sqrt D
        r = s - ((s + b) % m)
        if r == s and s * s == D:
            r -= m
    return BinaryQuadraticForm(c, r, (r * r - D) // (4 * c))


def reduce_indefinite(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    g = f
    for _ in range(100_000):
        if g.is_reduced():
            return g
        g = _rho(g)
    raise ArithmeticError("rho reduction did not terminate")


def reduce_form(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    return reduce_definite(f) if f.disc < 0 else reduce_indefinite(f)


def compose(f1: BinaryQuadraticForm, f2: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """Gauss composition (unreduced result)."""
    D = f1.disc
    if f2.disc != D:
        raise ValueError("forms of different discriminants")
    a1, b1, a2, b2 = f1.a, f1.b, f2.a, f2.b
    beta = (b1 + b2) // 2
    g1, u1, v1 = egcd(a1, a2)
    e, x, w = egcd(g1, beta)
    u, v = x * u1, x * v1
    A = a1 * a2 // (e * e)
    B = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + D) // 2) // e
    B %= 2 * A
    C = (B * B - D) // (4 * A)
    return BinaryQuadraticForm(A, B, C)


def reduced_forms_definite(D: int) -> list[BinaryQuadraticForm]:
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = BinaryQuadraticForm(a, b, c)
            if c >= a and f.is_reduced() and f.is_primitive():
                out.append(f)
        a += 1
    return sorted(out)


def reduced_forms_indefinite(D: int) -> list[BinaryQuadraticForm]:
    out = []
    s = math.isqrt(D)
    for b in range(1, s + 1):
        if (b - D) % 2 or not _below_sqrt(b, D):
            continue
        n = (D - b * b) // 4
        for a in _divisors(n):
            for sa in (a, -a):
                f = BinaryQuadraticForm(sa, b, -(n // sa))
                if f.is_reduced() and f.is_primitive():
                    out.append(f)
    return sorted(set(out))


def _divisors(n: int) -> list[int]:
    fac = factor_integer(n)
    divs = [1]
    for p, e in fac.factors:
        divs = [x * p**k for x in divs for k in range(e + 1)]
    return sorted(divs)


class FormClassGroup:
    """Form class group of a fundamental discriminant.

    Elements are canonical representatives: reduced forms (definite case) or
    the minimum of the rho cycle (indefinite case). ``narrow`` selects proper
    equivalence; otherwise the wide group is modelled as a quotient.
    """

    def __init__(self, D: int):
        if abs(D) > MAX_ABS_DISC:
            raise ValueError(f"|disc| exceeds {MAX_ABS_DISC}")
        self.D = D
        if D < 0:
            self.narrow_elements = reduced_forms_definite(D)
            self._canon = {f: f for f in self.narrow_elements}
        else:
            self._canon = {}
            reps = []
            for f in reduced_forms_indefinite(D):
                if f in self._canon:
                    continue
                cycle = [f]
                g = _rho(f)
                while g != f:
                    cycle.append(g)
                    g = _rho(g)
                rep = min(cycle)
                for g in cycle:
                    self._canon[g] = rep
                reps.append(rep)
            self.narrow_elements = sorted(reps)
        self.identity = self.canonical(principal_form(D))

    def canonical(self, f: BinaryQuadraticForm) -> BinaryQuadraticForm:
        return self._canon[reduce_form(f)]

    def mul(self, f: BinaryQuadraticForm, g: BinaryQuadraticForm) -> BinaryQuadraticForm:
        return self.canonical(compose(f, g))

    def inverse(self, f: BinaryQuadraticForm) -> BinaryQuadraticForm:
        return self.canonical(f.opposite())

    def power(self, f: BinaryQuadraticForm, n: int) -> BinaryQuadraticForm:
        out, base = self.identity, f
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    @property
    def narrow_order(self) -> int:
        return len(self.narrow_elements)

    @cached_property
    def negative_principal(self) -> BinaryQuadraticForm:
        """Class of -1 times the principal form (trivial when D < 0 by convention)."""
        if self.D < 0:
            return self.identity
        p = principal_form(self.D)
        return self.canonical(BinaryQuadraticForm(-p.a, p.b, -p.c))

    @cached_property
    def wide_kernel(self) -> frozenset:
        k = {self.identity, self.negative_principal}
        return frozenset(k)

    @cached_property
    def wide_elements(self) -> list[BinaryQuadraticForm]:
        """One representative per coset of the kernel of narrow -> wide."""
        seen, reps = set(), []
        for f in self.narrow_elements:
            if f in seen:
                continue
            reps.append(f)
            seen.update(self.mul(f, k) for k in self.wide_kernel)
        return reps

    @property
    def order(self) -> int:
        return len(self.wide_elements)

    def wide_element_order(self, f: BinaryQuadraticForm) -> int:
        g, n = f, 1
        while g not in self.wide_kernel:
            g = self.mul(g, f)
            n += 1
        return n

    def narrow_element_order(self, f: BinaryQuadraticForm) -> int:
        g, n = f, 1
        while g != self.identity:
            g = self.mul(g, f)
            n += 1
        return n

    def structure(self, narrow: bool = False) -> list[int]:
        """Invariant factors d1 | d2 | ... (empty list for the trivial group)."""
        elems = self.narrow_elements if narrow else self.wide_elements
        order_of = self.narrow_element_order if narrow else self.wide_element_order
        counts = Counter(order_of(f) for f in elems)
        return invariant_factors_from_order_counts(counts)

    def is_cyclic(self) -> bool:
        return len(self.structure()) <= 1

    def q_rank(self, q: int) -> int:
        return sum(1 for n in self.structure() if n % q == 0)


def invariant_factors_from_order_counts(counts: Counter) -> list[int]:
    """Invariant factors of a finite abelian group from its element-order census."""
    total = sum(counts.values())
    if total == 1:
        return []
    primes = sorted(factor_integer(total).support)
    per_prime: dict[int, list[int]] = {}
    for q in primes:
        # |G[q^j]| = number of elements whose order's q-part divides q^j
        qpart = Counter()
        for n, c in counts.items():
            a = 0
            while n % q == 0:
                n //= q
                a += 1
            qpart[a] += c
        top = max(qpart)
        sizes = [sum(c for a, c in qpart.items() if a <= j) for j in range(top + 1)]
        exps = q_exponents_from_torsion_sizes(q, sizes)
        per_prime[q] = exps
    return combine_primary(per_prime)


def q_exponents_from_torsion_sizes(q: int, sizes: list[int]) -> list[int]:
    """Cyclic factor exponents (descending) of a q-group from |G[q^j]|, j = 0..top.

    |G[q^j]| / |G[q^(j-1)]| = q^(number of cyclic factors of order >= q^j).
    """
    ge = []
    for j in range(1, len(sizes)):
        ratio = sizes[j] // sizes[j - 1]
        r = round(math.log(ratio, q)) if ratio > 1 else 0
        if q**r != ratio or sizes[j] % sizes[j - 1]:
            raise ArithmeticError("torsion counts are not those of an abelian group")
        ge.append(r)
    exps = []
    for j, r in enumerate(ge, start=1):
        nxt = ge[j] if j < len(ge) else 0
        exps.extend([j] * (r - nxt))
    return sorted(exps, reverse=True)


def combine_primary(per_prime: dict[int, list[int]]) -> list[int]:
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = [1] * width
    for q, exps in per_prime.items():
        for i, a in enumerate(exps):
            factors[i] *= q**a
    return sorted(factors)


@lru_cache(maxsize=None)
def class_group(K: QuadraticField) -> FormClassGroup:
    return FormClassGroup(K.disc)


def narrow_wide_consistent(K: QuadraticField) -> bool:
    """Narrow order = wide order * (2 if N(eps) = +1 else 1) for real K."""
    G = class_group(K)
    if not K.is_real:
        return G.narrow_order == G.order
    factor = 2 if fundamental_unit(K).norm() == 1 else 1
    return G.narrow_order == factor * G.order
