"""Factorization of integer polynomials over Q (Zassenhaus).

Pipeline: squarefree part, a good small prime with few modular factors,
quadratic Hensel lifting past the Mignotte bound, then exhaustive subset
recombination. Degrees here stay at or below ~20, so the exponential
recombination step is affordable.
"""

from __future__ import annotations

import itertools
import math

from . import finite_field as ff
from .integers import primes_up_to
from .polynomial import IntPolynomial, poly_discriminant, poly_gcd

_CANDIDATE_PRIMES = [p for p in primes_up_to(600) if p > 2]


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _pmod(a: list[int], m: int) -> list[int]:
    return ff.trim([c % m for c in a])


def _hensel_step(f, g, h, s, t, m):
    """One quadratic lift (von zur Gathen-Gerhard 15.10): m -> m^2.

    Requires f = g*h, s*g + t*h = 1 (mod m) and h monic.
    """
    m2 = m * m
    e = _pmod(ff.sub(f, ff.mul(g, h, m2), m2), m2)
    q, r = ff.poly_divmod(ff.mul(s, e, m2), h, m2)
    g2 = _pmod(ff.add(g, ff.add(ff.mul(t, e, m2), ff.mul(q, g, m2), m2), m2), m2)
    h2 = _pmod(ff.add(h, r, m2), m2)
    b = ff.sub(ff.add(ff.mul(s, g2, m2), ff.mul(t, h2, m2), m2), [1], m2)
    c, d = ff.poly_divmod(ff.mul(s, b, m2), h2, m2)
    s2 = ff.sub(s, d, m2)
    t2 = ff.sub(t, ff.add(ff.mul(t, b, m2), ff.mul(c, g2, m2), m2), m2)
    return g2, h2, s2, t2


def _lift_pair(f, g, h, p, target):
    """Lift f = g*h (mod p) to mod >= target. h monic; returns (g, h, modulus)."""
    _, s, t = ff.ext_gcd(g, h, p)
    m = p
    while m < target:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m *= m
    return g, h, m


def _multifactor_lift(f: list[int], lc: int, factors: list[list[int]], p: int, target: int):
    """Lift monic modular factors of f (lc * prod factors) to a common modulus."""
    if len(factors) == 1:
        m = p
        while m < target:
            m *= m
        inv = pow(lc, -1, m)
        return [_pmod([c * inv for c in f], m)], m
    k = len(factors) // 2
    left, right = factors[:k], factors[k:]
    g = [lc % p]
    for a in left:
        g = ff.mul(g, a, p)
    h = [1]
    for a in right:
        h = ff.mul(h, a, p)
    G, H, m = _lift_pair(f, g, h, p, target)
    # G carries the leading coefficient; make it monic before recursing
    inv = pow(G[-1], -1, m)
    G_monic = _pmod([c * inv for c in G], m)
    left_l, m1 = _multifactor_lift(G_monic, 1, left, p, m)
    right_l, m2 = _multifactor_lift(H, 1, right, p, m)
    assert m1 == m2 == m
    return left_l + right_l, m


def _mignotte_bound(f: IntPolynomial) -> int:
    n = f.degree
    norm2 = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    return (2**n) * norm2 * abs(f.lc)


def _choose_prime(f: IntPolynomial) -> tuple[int, list[list[int]]]:
    disc = poly_discriminant(f)
    best = None
    tried = 0
    for p in _CANDIDATE_PRIMES:
        if f.lc % p == 0 or disc % p == 0:
            continue
        facs = [h for h, _ in ff.factor_gfp(ff.monic(f.reduce_mod(p), p), p)]
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 12:
            break
    if best is None:
        raise RuntimeError("no good prime found")
    return best


def _factor_squarefree_primitive(f: IntPolynomial) -> list[IntPolynomial]:
    if f.degree <= 1:
        return [f]
    p, modfacs = _choose_prime(f)
    if len(modfacs) == 1:
        return [f]
    bound = 2 * _mignotte_bound(f) + 1
    lifted, m = _multifactor_lift(list(f.coeffs), f.lc, modfacs, p, bound)
    remaining = list(range(len(lifted)))
    out = []
    g = f
    k = 1
    while 2 * k <= len(remaining):
        found = False
        for subset in itertools.combinations(remaining, k):
            cand = [g.lc % m]
            for i in subset:
                cand = ff.mul(cand, lifted[i], m)
            cand_poly = IntPolynomial(_symmetric(c, m) for c in cand).primitive_part()
            q = g.exact_div(cand_poly)
            if q is not None:
                out.append(cand_poly)
                g = q
                remaining = [i for i in remaining if i not in subset]
                found = True
                break
        if not found:
            k += 1
    out.append(g.primitive_part())
    return out


def factor_over_Q(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Irreducible factors over Q (primitive, positive lc) with multiplicities."""
    if f.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    f = f.primitive_part()
    result: list[tuple[IntPolynomial, int]] = []
    # x-power factors first (keeps the squarefree part coprime to x cheaply)
    k = 0
    while f.coeffs[0] == 0:
        f = IntPolynomial(f.coeffs[1:])
        k += 1
    if k:
        result.append((IntPolynomial([0, 1]), k))
    mult = 1
    cur = f
    while cur.degree > 0:
        g = poly_gcd(cur, cur.derivative())
        sqf = cur.exact_div(g) if g.degree > 0 else cur
        sqf = sqf.primitive_part()
        # sqf holds the factors of multiplicity >= mult; peel off those of exactly mult
        nxt = g
        if g.degree > 0:
            h = poly_gcd(sqf, g)
            exact = sqf.exact_div(h) if h.degree > 0 else sqf
        else:
            h = IntPolynomial([1])
            exact = sqf
        if exact.degree > 0:
            result.extend((q, mult) for q in _factor_squarefree_primitive(exact.primitive_part()))
        cur = nxt
        mult += 1
    result = [(q if q.lc > 0 else -q, e) for q, e in result]
    result.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return result


def is_irreducible_over_Q(f: IntPolynomial) -> bool:
    """True iff f (degree >= 1) is irreducible over Q."""
    if f.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    if f.degree == 1:
        return True
    facs = factor_over_Q(f)
    return len(facs) == 1 and facs[0][1] == 1
