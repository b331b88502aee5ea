"""Independent reference computations used by the tests.

These are deliberately naive: plain loops over residues, brute-force
searches and sympy, sharing no code paths with the package beyond the
field discriminant convention.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy
from sympy import Poly, symbols

X = symbols("x")


# -- quadratic rings, naively ----------------------------------------------


def omega_tc(d: int) -> tuple[int, int]:
    """omega^2 = t*omega + c."""
    return (1, (d - 1) // 4) if d % 4 == 1 else (0, d)


def qmul(d, x, y):
    t, c = omega_tc(d)
    a1, b1 = x
    a2, b2 = y
    return (a1 * a2 + c * b1 * b2, a1 * b2 + a2 * b1 + t * b1 * b2)


def qnorm(d, x):
    t, c = omega_tc(d)
    a, b = x
    return a * a + t * a * b - c * b * b


def kind_of(d: int, p: int) -> str:
    D = d if d % 4 == 1 else 4 * d
    s = sympy.jacobi_symbol(D % p, p) if p > 2 else None
    if D % p == 0:
        return "ramified"
    if p == 2:
        return "split" if D % 8 == 1 else "inert"
    return "split" if s == 1 else "inert"


def _v_prime_over_p(d, p, x, kind):
    """Valuation at the unique prime over p (p inert or ramified)."""
    if x == (0, 0):
        return 10**9
    n = qnorm(d, x)
    vn = 0
    while n % p == 0:
        n //= p
        vn += 1
    return vn if kind == "ramified" else vn // 2


def residue_sample(d, p, k):
    """(reps of O/p^j, j, kind) with p^j O contained in P^k."""
    kind = kind_of(d, p)
    j = k if kind == "inert" else (k + 1) // 2
    m = p**j
    return [(a, b) for a in range(m) for b in range(m)], j, kind


def brute_unit_p_rank(d: int, p: int, k: int) -> int:
    """log_p #{x in (O/P^k)^* : x^p = 1}."""
    reps, j, kind = residue_sample(d, p, k)
    cover = p ** (2 * j - (2 * k if kind == "inert" else k))
    count = 0
    for x in reps:
        if _v_prime_over_p(d, p, x, kind) != 0:
            continue
        y = (1, 0)
        for _ in range(p):
            y = qmul(d, y, x)
        if _v_prime_over_p(d, p, (y[0] - 1, y[1]), kind) >= k:
            count += 1
    assert count % cover == 0
    n = count // cover
    r = round(math.log(n, p))
    assert p**r == n
    return r


def brute_unit_count(d: int, p: int, k: int) -> int:
    reps, j, kind = residue_sample(d, p, k)
    cover = p ** (2 * j - (2 * k if kind == "inert" else k))
    return sum(1 for x in reps if _v_prime_over_p(d, p, x, kind) == 0) // cover


# -- class numbers and units -----------------------------------------------


def brute_class_number_imaginary(D: int) -> int:
    """Number of reduced primitive positive definite forms of discriminant D < 0."""
    assert D < 0
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or math.gcd(math.gcd(a, b), c) != 1:
                continue
            if b < 0 and a == c:
                continue
            h += 1
        a += 1
    return h


def brute_fundamental_unit(d: int) -> tuple[Fraction, Fraction, int]:
    """Smallest unit > 1 as (u, v, norm) with unit = u + v sqrt d, by a Pell search."""
    four = d % 4 == 1
    y = 1
    while True:
        for sign in (-1, 1):
            target = d * y * y + sign * (4 if four else 1)
            if target > 0:
                x = math.isqrt(target)
                if x * x == target:
                    den = 2 if four else 1
                    return Fraction(x, den), Fraction(y, den), sign
        y += 1


# -- bounds ------------------------------------------------------------------


def closed_form_minimum(C: float, A: float, B: float) -> tuple[float, float]:
    """Minimizer and value of C + (A - B x^(1/3))/x: x0 = (3A/2B)^3, value C - A/(2 x0)."""
    x0 = (3 * A / (2 * B)) ** 3
    return x0, C - A / (2 * x0)


# -- polynomials via sympy ---------------------------------------------------


def sym_poly(coeffs_low_first) -> Poly:
    return Poly(list(reversed(list(coeffs_low_first))), X, domain="ZZ")


def sympy_discriminant(coeffs) -> int:
    return int(sympy.discriminant(sym_poly(coeffs)))


def sympy_factor_pattern(coeffs) -> list[tuple[int, int]]:
    """Sorted (degree, multiplicity) of irreducible factors over Q."""
    _, facs = sym_poly(coeffs).factor_list()
    return sorted((f.degree(), e) for f, e in facs if f.degree() > 0)


def sympy_mod_p_pattern(coeffs, p: int) -> list[tuple[int, int]]:
    P = Poly(list(reversed(list(coeffs))), X, modulus=p)
    _, facs = P.factor_list()
    return sorted((f.degree(), e) for f, e in facs if f.degree() > 0)


def sympy_real_roots(coeffs) -> int:
    return len(sympy.real_roots(sym_poly(coeffs)))


def sympy_roots_in_K(d: int, coeffs_K) -> int:
    """Number of distinct roots in Q(sqrt d) of a polynomial with coefficients
    given as (u, v) pairs meaning u + v sqrt d, low degree first."""
    s = sympy.sqrt(d)
    expr = sum((sympy.Rational(u) + sympy.Rational(v) * s) * X**i for i, (u, v) in enumerate(coeffs_K))
    facs = sympy.factor_list(sympy.expand(expr), X, extension=s)[1]
    return sum(1 for f, _ in facs if sympy.degree(f, X) == 1)


def sympy_is_square_in_K(d: int, u: Fraction, v: Fraction) -> bool:
    if u == 0 and v == 0:
        return True
    return sympy_roots_in_K(d, [(-u, -v), (0, 0), (1, 0)]) > 0


# -- elliptic curves -----------------------------------------------------------


def short_weierstrass_disc(a, b):
    return -16 * (4 * a**3 + 27 * b**2)


def pure_cubic_field_disc(m: int) -> int:
    """Discriminant of Q(m^(1/3)) for cube-free m = a b^2, a and b squarefree coprime."""
    a, b = 1, 1
    for q, e in sympy.factorint(abs(m)).items():
        if e == 1:
            a *= q
        elif e == 2:
            b *= q
        else:
            raise ValueError("m must be cube-free")
    return -3 * (a * b) ** 2 if (m * m) % 9 == 1 else -27 * (a * b) ** 2
