"""Integer utilities: primality, factorization, Kronecker symbol, valuations."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

TRIAL_BOUND = 10**6

# Miller-Rabin with these bases is deterministic below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> tuple[int, ...]:
    """Sieve of Eratosthenes; returns all primes <= n."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality; exact below 3.3e24, strong probable-prime above."""
    return is_probable_prime(n)


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integers a, n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class PrimeFactorization:
    """Factorization ``sign * prod(p**e) * cofactor``.

    ``cofactor`` is 1 when the factorization is complete; otherwise it is a
    composite number whose factors were not found within the budget.
    """

    sign: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        out = self.sign * self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def as_dict(self) -> dict:
        return {
            "sign": self.sign,
            "factors": [[p, e] for p, e in self.factors],
            "cofactor": self.cofactor,
            "complete": self.complete,
        }

    def __str__(self) -> str:
        parts = ["-1"] if self.sign < 0 else []
        parts += [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if not self.complete:
            parts.append(f"[{self.cofactor}]")
        return "*".join(parts) or "1"


def _pollard_brent(n: int, rng: random.Random, budget: int) -> int | None:
    """Return a nontrivial factor of composite odd n, or None if budget runs out."""
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factor_integer(
    n: int, trial_bound: int = TRIAL_BOUND, rho_budget: int = 200_000
) -> PrimeFactorization:
    """Factor n by trial division up to ``trial_bound`` then Pollard-Brent rho.

    The rho phase is capped at ``rho_budget`` iterations per composite; what
    cannot be split is returned as ``cofactor`` rather than raising.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    sign = -1 if n < 0 else 1
    n = abs(n)
    found: dict[int, int] = {}
    for p in primes_up_to(trial_bound):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    cofactor = 1
    stack = [n] if n > 1 else []
    rng = random.Random(n)
    while stack:
        m = stack.pop()
        if m <= trial_bound**2 or is_probable_prime(m):
            # below trial_bound**2 with no small factor means prime
            found[m] = found.get(m, 0) + 1
            continue
        g = _pollard_brent(m, rng, rho_budget)
        if g is None:
            cofactor *= m
        else:
            stack.extend((g, m // g))
    return PrimeFactorization(sign, tuple(sorted(found.items())), cofactor)


def squarefree_core(n: int) -> int:
    """Signed squarefree part of n (n = core * square)."""
    fac = factor_integer(n)
    if not fac.complete:
        raise ValueError(f"could not fully factor {n}")
    core = fac.sign
    for p, e in fac.factors:
        if e % 2:
            core *= p
    return core


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    fac = factor_integer(n)
    if not fac.complete:
        raise ValueError(f"could not fully factor {n}")
    return all(e == 1 for _, e in fac.factors)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
