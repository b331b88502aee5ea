"""Dense integer polynomials: arithmetic, resultants, discriminants, Sturm counts."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


class IntPolynomial:
    """Polynomial with integer coefficients, stored low degree first.

    Invariant: ``coeffs`` has no trailing zeros; the zero polynomial is ``()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def from_high(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        """Build from coefficients listed high degree first."""
        return cls(reversed(list(coeffs)))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [c])

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse expressions like ``x^6 - 8x^5 + 23*x^4 - 4``."""
        s = text.replace(" ", "").replace("**", "^").replace("*", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        out: dict[int, int] = {}
        for t in terms:
            m = re.fullmatch(r"([+-])(\d*)(x(?:\^(\d+))?)?", t)
            if not m or (not m.group(2) and not m.group(3)):
                raise ValueError(f"bad term {t!r} in {text!r}")
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(1) == "-":
                c = -c
            deg = 0 if not m.group(3) else int(m.group(4) or 1)
            out[deg] = out.get(deg, 0) + c
        top = max(out)
        return cls(out.get(i, 0) for i in range(top + 1))

    # -- basic protocol -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = reduce(math.gcd, self.coeffs, 0)
        return -g if self.lc < 0 else g

    def primitive_part(self) -> "IntPolynomial":
        g = self.content()
        return IntPolynomial(c // g for c in self.coeffs) if g else self

    def compose(self, other: "IntPolynomial") -> "IntPolynomial":
        acc = IntPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + IntPolynomial([c])
        return acc

    def reduce_mod(self, p: int) -> list[int]:
        """Coefficients mod p, low first, trailing zeros stripped."""
        cs = [c % p for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cs

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial | None":
        """Quotient if ``other`` divides ``self`` in Z[x], else None."""
        q, r = divmod_rational(self, other)
        if any(c for c in r) or any(c.denominator != 1 for c in q):
            return None
        return IntPolynomial(int(c) for c in q)


# -- rational polynomial helpers (lists of Fraction, low first) ---------

def _strip(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def divmod_rational(f, g) -> tuple[list[Fraction], list[Fraction]]:
    a = [Fraction(c) for c in (f.coeffs if isinstance(f, IntPolynomial) else f)]
    b = _strip([Fraction(c) for c in (g.coeffs if isinstance(g, IntPolynomial) else g)])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _strip(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a.pop()
        _strip(a)
    return _strip(q), a


def _rat_primitive(cs: list[Fraction]) -> list[Fraction]:
    """Scale a nonzero rational polynomial by a positive rational to primitive integers."""
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in cs), 1)
    ints = [int(c * den) for c in cs]
    g = reduce(math.gcd, ints, 0)
    return [Fraction(c // g) for c in ints]


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Primitive gcd in Z[x] with positive leading coefficient."""
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]
    while b:
        _, r = divmod_rational(a, b)
        a, b = b, (_rat_primitive(r) if r else r)
    if not a:
        return IntPolynomial()
    out = IntPolynomial(int(c) for c in _rat_primitive(a)).primitive_part()
    return out


def is_squarefree(f: IntPolynomial) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    g = poly_gcd(f, f.derivative())
    q = f.exact_div(g)
    if q is None:  # content of g absorbed; fall back to rational division
        q = IntPolynomial(int(c) for c in _rat_primitive(divmod_rational(f, g)[0]))
    return q.primitive_part()


# -- resultants ----------------------------------------------------------

def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> list[list[int]]:
    m, n = f.degree, g.degree
    size = m + n
    fh, gh = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - n - 1 - i))
    return rows


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) as the determinant of the Sylvester matrix."""
    if f.is_zero() or g.is_zero():
        return 0
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    return _bareiss_det(sylvester_matrix(f, g))


def poly_discriminant(f: IntPolynomial) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant of a constant polynomial is undefined")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    q, rem = divmod(r, f.lc)
    assert rem == 0
    return -q if (n * (n - 1) // 2) % 2 else q


# -- real roots -------------------------------------------------------------

def _sign_at_infinity(cs: list[Fraction], positive: bool) -> int:
    lead = cs[-1]
    s = 1 if lead > 0 else -1
    if not positive and (len(cs) - 1) % 2:
        s = -s
    return s


def sturm_sequence(f: IntPolynomial) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in f.coeffs], [Fraction(c) for c in f.derivative().coeffs]]
    while True:
        _, r = divmod_rational(seq[-2], seq[-1])
        if not r:
            break
        # rescale by a positive constant to keep coefficients small
        r = [-c for c in r]
        scale = abs(_rat_primitive(r)[-1] / r[-1])
        seq.append([c * scale for c in r])
    return seq


def _variations(signs: list[int]) -> int:
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_root_count(f: IntPolynomial) -> tuple[int, int]:
    """Return the signature (r1, r2) of a squarefree polynomial via Sturm's theorem."""
    if f.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    if not is_squarefree(f):
        raise ValueError("real_root_count requires a squarefree polynomial")
    seq = sturm_sequence(f)
    neg = [_sign_at_infinity(p, False) for p in seq]
    pos = [_sign_at_infinity(p, True) for p in seq]
    r1 = _variations(neg) - _variations(pos)
    return r1, (f.degree - r1) // 2
