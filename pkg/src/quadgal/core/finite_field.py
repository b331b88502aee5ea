"""Polynomials over GF(p) as coefficient lists (low degree first).

The zero polynomial is ``[]``; all nonzero lists have a nonzero last entry.
Factorization is squarefree decomposition, distinct-degree factorization and
Cantor-Zassenhaus equal-degree splitting with a seeded generator.
"""

from __future__ import annotations

import random

from .integers import is_prime
from .polynomial import IntPolynomial

Poly = list[int]


def trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, [(-c) % p for c in b], p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def scale(a: Poly, c: int, p: int) -> Poly:
    return trim([x * c % p for x in a])


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return []
    return scale(a, pow(a[-1], -1, p), p)


def poly_divmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1] * inv % p
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = (r[i + shift] - c * y) % p
        trim(r)
    return trim(q), r


def rem(a: Poly, b: Poly, p: int) -> Poly:
    return poly_divmod(a, b, p)[1]


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def ext_gcd(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(base: Poly, e: int, mod: Poly, p: int) -> Poly:
    out: Poly = [1]
    base = rem(base, mod, p)
    while e:
        if e & 1:
            out = rem(mul(out, base, p), mod, p)
        base = rem(mul(base, base, p), mod, p)
        e >>= 1
    return rem(out, mod, p)


def derivative(a: Poly, p: int) -> Poly:
    return trim([i * c % p for i, c in enumerate(a)][1:])


def _pth_root(a: Poly, p: int) -> Poly:
    # a(x) = b(x^p) over GF(p); coefficients are fixed by Frobenius
    return trim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic f -> [(g_i, i)] with f = prod g_i^i, g_i squarefree and coprime."""
    out: list[tuple[Poly, int]] = []
    if len(f) <= 1:
        return out
    d = derivative(f, p)
    if not d:
        return [(g, i * p) for g, i in squarefree_decomposition(_pth_root(f, p), p)]
    c = gcd(f, d, p)
    w = poly_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = poly_divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((monic(z, p), i))
        i += 1
        w = y
        c = poly_divmod(c, y, p)[0]
    if len(c) > 1:
        out.extend((g, i * p) for g, i in squarefree_decomposition(_pth_root(c, p), p))
    return out


def distinct_degree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Squarefree monic f -> [(product of all irreducible factors of degree k, k)]."""
    out = []
    h = [0, 1]
    k = 0
    g = list(f)
    while len(g) - 1 >= 2 * (k + 1):
        k += 1
        h = powmod(h, p, g, p)
        fac = gcd(g, sub(h, [0, 1], p), p)
        if len(fac) > 1:
            out.append((fac, k))
            g = poly_divmod(g, fac, p)[0]
            h = rem(h, g, p)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def equal_degree(f: Poly, k: int, p: int, rng: random.Random) -> list[Poly]:
    """Split a squarefree monic product of degree-k irreducibles."""
    n = len(f) - 1
    if n == k:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(k-1))
            t, acc = a, a
            for _ in range(k - 1):
                t = rem(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            b = acc
        else:
            b = sub(powmod(a, (p**k - 1) // 2, f, p), [1], p)
        g = gcd(f, b, p)
        if 0 < len(g) - 1 < n:
            q = poly_divmod(f, g, p)[0]
            return equal_degree(g, k, p, rng) + equal_degree(monic(q, p), k, p, rng)


def factor_squarefree(f: Poly, p: int, rng: random.Random) -> list[Poly]:
    out = []
    for g, k in distinct_degree(f, p):
        out.extend(equal_degree(g, k, p, rng))
    return out


def factor_gfp(f: Poly, p: int, seed: int = 0) -> list[tuple[Poly, int]]:
    """Full factorization of a monic polynomial over GF(p), sorted canonically."""
    rng = random.Random(hash((tuple(f), p, seed)))
    out = []
    for g, mult in squarefree_decomposition(f, p):
        out.extend((h, mult) for h in factor_squarefree(g, p, rng))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return out


def degree_pattern(f: IntPolynomial, p: int) -> tuple[int, ...]:
    """Sorted degrees of the irreducible factors of f mod p (f squarefree mod p)."""
    g = monic(f.reduce_mod(p), p)
    degs: list[int] = []
    for h, k in distinct_degree(g, p):
        degs.extend([k] * ((len(h) - 1) // k))
    return tuple(sorted(degs))


def factor_mod_p(f: IntPolynomial, p: int) -> list[tuple[IntPolynomial, int]]:
    """Factor f mod p into monic irreducibles with multiplicities.

    The leading coefficient must be a unit mod p; the returned product equals
    f / lc(f) mod p.
    """
    if not is_prime(p) or p > 2**16:
        raise ValueError(f"p must be a prime <= 2^16, got {p}")
    if f.lc % p == 0:
        raise ValueError("leading coefficient divisible by p; normalize first")
    g = monic(f.reduce_mod(p), p)
    return [(IntPolynomial(h), m) for h, m in factor_gfp(g, p)]


def expand_mod_p(factors: list[tuple[IntPolynomial, int]], p: int) -> Poly:
    out: Poly = [1]
    for h, m in factors:
        for _ in range(m):
            out = mul(out, h.reduce_mod(p), p)
    return out
