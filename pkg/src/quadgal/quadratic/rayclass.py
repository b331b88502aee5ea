"""Residue-ring unit groups, ray class groups and p-rank formulas.

Everything is enumerated. A unit group (O/P^k)^* times a sign group is
stored as integer codes with vectorized multiplication; group structure is
read off from torsion counts |G[q^j]|, so no discrete logarithms are needed.
The ray class group comes from the exact sequence

    units -> (O/P^k)^* x {+-1}^r -> Cl(K, P^k oo) -> Cl(K) -> 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..core.integers import factor_integer, is_prime, primes_up_to, valuation
from .field import DomainError, QuadInteger, QuadraticField, splitting_of_prime, unit_group
from .forms import (
    BinaryQuadraticForm,
    class_group,
    combine_primary,
    q_exponents_from_torsion_sizes,
)

ENUMERATION_BUDGET = 2**20


class UnsupportedPrime(ValueError):
    """The prime splits in K; the sequence is only set up for one prime above p."""


class BudgetExceeded(ValueError):
    pass


# ---------------------------------------------------------------------------
# generic enumerated abelian group


class EnumeratedGroup:
    """Finite abelian group on integer codes with a vectorized product.

    ``elements`` lists the valid codes; ``mul`` maps two int64 arrays to one.
    Subgroups are boolean masks over the code space.
    """

    def __init__(self, space: int, elements: np.ndarray, mul, identity: int):
        self.space = space
        self.elements = elements
        self.mul = mul
        self.identity = identity

    @property
    def order(self) -> int:
        return len(self.elements)

    def power(self, x: np.ndarray, n: int) -> np.ndarray:
        out = np.full_like(x, self.identity)
        base = x.copy()
        while n:
            if n & 1:
                out = self.mul(out, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return out

    def trivial_mask(self) -> np.ndarray:
        m = np.zeros(self.space, dtype=bool)
        m[self.identity] = True
        return m

    def subgroup_mask(self, gens: list[int], base: np.ndarray | None = None) -> np.ndarray:
        mask = self.trivial_mask() if base is None else base.copy()
        for g in gens:
            members = np.flatnonzero(mask)
            step = np.array([g], dtype=np.int64)
            cur = step.copy()
            while not mask[cur[0]]:
                mask[self.mul(members, np.full_like(members, cur[0]))] = True
                cur = self.mul(cur, step)
        return mask

    def torsion_count(self, n: int, sub: np.ndarray | None = None) -> int:
        """Size of (G/S)[n] where S is the subgroup mask ``sub``."""
        if sub is None:
            sub = self.trivial_mask()
        hits = int(np.count_nonzero(sub[self.power(self.elements, n)]))
        return hits // int(np.count_nonzero(sub))

    def quotient_order(self, sub: np.ndarray | None = None) -> int:
        if sub is None:
            return self.order
        return self.order // int(np.count_nonzero(sub))

    def q_exponents(self, q: int, sub: np.ndarray | None = None) -> list[int]:
        order = self.quotient_order(sub)
        top = valuation(order, q)
        sizes = [1]
        for j in range(1, top + 1):
            sizes.append(self.torsion_count(q**j, sub))
            if sizes[-1] == q ** top:
                break
        return q_exponents_from_torsion_sizes(q, sizes)

    def q_rank(self, q: int, sub: np.ndarray | None = None) -> int:
        if self.quotient_order(sub) % q:
            return 0
        n = self.torsion_count(q, sub)
        return round(math.log(n, q))

    def invariant_factors(self, sub: np.ndarray | None = None) -> list[int]:
        order = self.quotient_order(sub)
        if order == 1:
            return []
        return combine_primary({q: self.q_exponents(q, sub) for q in factor_integer(order).support})

    def element_order(self, x: int) -> int:
        arr = np.array([x], dtype=np.int64)
        n = 1
        cur = arr.copy()
        while cur[0] != self.identity:
            cur = self.mul(cur, arr)
            n += 1
        return n

    def basis(self) -> list[tuple[int, int]]:
        """Independent generators with orders, invariant-factor form."""
        order = self.order
        if order == 1:
            return []
        per_prime: dict[int, list[tuple[int, int]]] = {}
        for q in factor_integer(order).support:
            per_prime[q] = self._sylow_basis(q)
        width = max(len(v) for v in per_prime.values())
        gens = []
        for i in range(width):
            g = np.array([self.identity], dtype=np.int64)
            n = 1
            for q, b in per_prime.items():
                if i < len(b):
                    g = self.mul(g, np.array([b[i][0]], dtype=np.int64))
                    n *= b[i][1]
            gens.append((int(g[0]), n))
        return sorted(gens, key=lambda t: t[1])

    def _one(self, x: int) -> np.ndarray:
        return np.array([x], dtype=np.int64)

    def _sylow_basis(self, q: int) -> list[tuple[int, int]]:
        """Greedy basis of the Sylow q-subgroup.

        Repeatedly take y of maximal order q^m modulo the span S of the chosen
        generators; y^(q^m) = prod g_i^(t_i) with q^m | t_i, so dividing those
        exponents out makes the new generator independent of S.
        """
        a = valuation(self.order, q)
        sylow = np.unique(self.power(self.elements, self.order // q**a))
        span_codes = self._one(self.identity)
        span_exps = np.zeros((1, 0), dtype=np.int64)
        chosen: list[tuple[int, int]] = []
        covered = self.trivial_mask()
        while len(span_codes) < q**a:
            ords = np.zeros(len(sylow), dtype=np.int64)
            cur = sylow.copy()
            e = 0
            alive = ~covered[cur]
            while alive.any():
                e += 1
                ords[alive] = e
                cur = self.power(cur, q)
                alive = ~covered[cur]
            i = int(np.argmax(ords))
            m = int(ords[i])
            qm = q**m
            y = self._one(int(sylow[i]))
            ym = int(self.power(y, qm)[0])
            exps = span_exps[int(np.flatnonzero(span_codes == ym)[0])]
            for (g, og), t in zip(chosen, exps):
                if t % qm:
                    raise ArithmeticError("basis extension failed")
                y = self.mul(y, self.power(self._one(g), (-(int(t) // qm)) % og))
            codes, rows = [], []
            yp = self._one(self.identity)
            for j in range(qm):
                codes.append(self.mul(span_codes, np.full_like(span_codes, yp[0])))
                rows.append(np.column_stack([span_exps, np.full(len(span_codes), j, dtype=np.int64)]))
                yp = self.mul(yp, y)
            span_codes = np.concatenate(codes)
            span_exps = np.concatenate(rows)
            chosen.append((int(y[0]), qm))
            covered[span_codes] = True
        return sorted(chosen, key=lambda t: -t[1])


# ---------------------------------------------------------------------------
# residue rings O / P^k


@dataclass(frozen=True)
class PrimePower:
    """P^k for the unique prime P over p, as the lattice
    {x + y w : y = 0 mod ycol, x = xshift * (y / ycol) mod xmod}."""

    p: int
    k: int
    kind: str
    f: int
    xmod: int
    ycol: int
    xshift: int
    root: int | None  # image of omega in O/P when ramified

    @property
    def norm(self) -> int:
        return self.xmod * self.ycol


def prime_power(K: QuadraticField, p: int, k: int) -> PrimePower:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if k < 1:
        raise DomainError("exponent k must be >= 1")
    sp = splitting_of_prime(K, p)
    if sp.kind == "split":
        raise UnsupportedPrime(f"{p} splits in {K}")
    if sp.kind == "inert":
        return PrimePower(p, k, "inert", 2, p**k, p**k, 0, None)
    c0, c1, _ = K.omega_minpoly()
    rho = next(r for r in range(p) if (r * r + c1 * r + c0) % p == 0)
    j, odd = divmod(k, 2)
    if not odd:
        return PrimePower(p, k, "ramified", 1, p**j, p**j, 0, rho)
    return PrimePower(p, k, "ramified", 1, p ** (j + 1), p**j, (-rho * p**j) % p ** (j + 1), rho)


class ResidueArithmetic:
    """Vectorized arithmetic in O/P^k on codes x + xmod * y."""

    def __init__(self, K: QuadraticField, P: PrimePower):
        self.K, self.P = K, P
        self.t, self.c = K.omega_trace, K.omega_const

    def reduce(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        P = self.P
        q = np.floor_divide(y, P.ycol)
        y = y - q * P.ycol
        x = np.mod(x - q * P.xshift, P.xmod)
        return x + P.xmod * y

    def decode(self, code: np.ndarray):
        return np.mod(code, self.P.xmod), np.floor_divide(code, self.P.xmod)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        x1, y1 = self.decode(a)
        x2, y2 = self.decode(b)
        x = x1 * x2 + self.c * y1 * y2
        y = x1 * y2 + x2 * y1 + self.t * y1 * y2
        return self.reduce(x, y)

    def encode(self, z: QuadInteger) -> int:
        # exact Python ints: unit coordinates can exceed int64
        P = self.P
        qy, y = divmod(z.b, P.ycol)
        x = (z.a - qy * P.xshift) % P.xmod
        return x + P.xmod * y

    def is_unit(self, codes: np.ndarray) -> np.ndarray:
        x, y = self.decode(codes)
        p = self.P.p
        if self.P.kind == "inert":
            return (np.mod(x, p) != 0) | (np.mod(y, p) != 0)
        return np.mod(x + y * self.P.root, p) != 0


@dataclass
class ResidueRingUnits:
    modulus: tuple[int, int]
    kind: str
    order: int
    group: list[int]
    generators: list[QuadInteger]

    def q_rank(self, q: int) -> int:
        return sum(1 for n in self.group if n % q == 0)

    def as_dict(self) -> dict:
        return {
            "modulus": {"p": self.modulus[0], "k": self.modulus[1]},
            "kind": self.kind,
            "order": self.order,
            "invariant_factors": self.group,
            "generators": [[g.a, g.b] for g in self.generators],
        }


class MiddleGroup(EnumeratedGroup):
    """(O/P^k)^* x {+-1}^r with r real places; sign bits are the low code bits."""

    def __init__(self, K: QuadraticField, p: int, k: int, signs: int, budget: int = ENUMERATION_BUDGET):
        P = prime_power(K, p, k)
        if P.norm > budget:
            raise BudgetExceeded(f"|O/P^k| = {P.norm} exceeds budget {budget}")
        self.K, self.P, self.signs = K, P, signs
        self.arith = ResidueArithmetic(K, P)
        ring = np.arange(P.norm, dtype=np.int64)
        units = ring[self.arith.is_unit(ring)]
        shift = 1 << signs
        elements = (units[:, None] * shift + np.arange(shift, dtype=np.int64)[None, :]).ravel()
        super().__init__(P.norm * shift, np.sort(elements), self._mul, self.arith.encode(K.element(1)) * shift)

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        shift = 1 << self.signs
        ra, sa = np.divmod(a, shift)
        rb, sb = np.divmod(b, shift)
        return self.arith.mul(ra, rb) * shift + np.bitwise_xor(sa, sb)

    def image(self, z: QuadInteger) -> int:
        """Code of an integer prime to P, with its signs at the real places."""
        bits = 0
        if self.signs:
            for place in range(2):
                if z.sign_at(place) < 0:
                    bits |= 1 << place
        return self.arith.encode(z) * (1 << self.signs) + bits

    def to_quad(self, code: int) -> QuadInteger:
        ring = code >> self.signs
        x, y = ring % self.P.xmod, ring // self.P.xmod
        return self.K.element(int(x), int(y))


def residue_ring_units(K: QuadraticField, p: int, k: int, budget: int = ENUMERATION_BUDGET) -> ResidueRingUnits:
    if p not in (2, 3):
        raise DomainError("residue rings are supported for p in {2, 3}")
    G = MiddleGroup(K, p, k, 0, budget)
    basis = G.basis()
    return ResidueRingUnits(
        modulus=(p, k),
        kind=G.P.kind,
        order=G.order,
        group=[n for _, n in basis],
        generators=[G.to_quad(c) for c, _ in basis],
    )


def expected_unit_count(p: int, f: int, k: int) -> int:
    return p ** (f * (k - 1)) * (p**f - 1)


# ---------------------------------------------------------------------------
# p-rank formula for (O/P^(n+1))^*


def nakagoshi_rank(p: int, e: int, f: int, n: int, zeta_p_present: bool) -> int:
    """p-rank of (O/P^(n+1))^* in a local field with ramification e and residue degree f."""
    if e < 1 or f < 1 or n < 0:
        raise ValueError("need e, f >= 1 and n >= 0")
    e1 = e // (p - 1)
    if n < e + e1:
        return (n - n // p) * f
    return e * f + (1 if zeta_p_present else 0)


def zeta_p_in_completion(K: QuadraticField, p: int) -> bool:
    """Whether the p-th roots of unity lie in the completion of K at P."""
    if p == 2:
        return True
    if p != 3:
        raise DomainError("only p in {2, 3}")
    sp = splitting_of_prime(K, 3)
    if sp.kind != "ramified":
        # the unramified quadratic extension of Q_3 does not contain sqrt(-3)
        return False
    # K_P = Q_3(sqrt d) = Q_3(sqrt -3) iff -d/3 is a 3-adic unit square
    return (-K.d // 3) % 3 == 1


def local_degrees(K: QuadraticField, p: int) -> tuple[int, int]:
    sp = splitting_of_prime(K, p)
    return sp.e, sp.f


# ---------------------------------------------------------------------------
# ray class groups


@dataclass
class RayClassReport:
    d: int
    p: int
    k: int
    include_infinity: bool
    class_number: int
    middle_order: int
    unit_image_order: int
    order: int
    invariant_factors: list[int] | None
    q_ranks: dict[int, int]
    q_rank_bounds: dict[int, list[int]]
    exact: bool
    method: str

    @property
    def exactness_holds(self) -> bool:
        return self.order * self.unit_image_order == self.class_number * self.middle_order

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "modulus": {"p": self.p, "k": self.k, "infinite_places": self.include_infinity},
            "class_number": self.class_number,
            "middle_order": self.middle_order,
            "unit_image_order": self.unit_image_order,
            "order": self.order,
            "invariant_factors": self.invariant_factors,
            "q_ranks": {str(q): r for q, r in sorted(self.q_ranks.items())},
            "q_rank_bounds": {str(q): b for q, b in sorted(self.q_rank_bounds.items())},
            "exact": self.exact,
            "method": self.method,
        }


class CyclicExtension(EnumeratedGroup):
    """Pairs (x, i), x in M, i in Z/h, with (x,i)(y,j) = (x y a^[i+j>=h], i+j mod h).

    Models ray classes of l^i (beta) where the ideal l generates a cyclic class
    group of order h and l^h = (alpha), a = image of alpha in M.
    """

    def __init__(self, M: MiddleGroup, h: int, alpha_code: int):
        self.M, self.h, self.alpha = M, h, alpha_code
        idx = np.arange(h, dtype=np.int64)
        elements = (idx[:, None] * M.space + M.elements[None, :]).ravel()
        super().__init__(M.space * h, elements, self._mul, M.identity)

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ia, xa = np.divmod(a, self.M.space)
        ib, xb = np.divmod(b, self.M.space)
        x = self.M.mul(xa, xb)
        s = ia + ib
        carry = s >= self.h
        if carry.any():
            x[carry] = self.M.mul(x[carry], np.full(int(carry.sum()), self.alpha, dtype=np.int64))
        return np.mod(s, self.h) * self.M.space + x

    def lift_mask(self, mask: np.ndarray) -> np.ndarray:
        out = np.zeros(self.space, dtype=bool)
        out[: self.M.space] = mask
        return out


def _class_generator_prime(K: QuadraticField, avoid: int, h: int):
    """A prime l != avoid and a form of order h lying over it."""
    G = class_group(K)
    D = K.disc
    for l in primes_up_to(10_000):
        if l == avoid:
            continue
        for b in range(0, 2 * l):
            if (b * b - D) % (4 * l) == 0:
                f = BinaryQuadraticForm(l, b, (b * b - D) // (4 * l))
                if G.wide_element_order(G.canonical(f)) == h:
                    return l, f
                break
    raise ArithmeticError("no generating prime found")


def _generator_of_power(K: QuadraticField, l: int, h: int, search: int = 2000) -> QuadInteger | None:
    """alpha with (alpha) = L^h for a prime L over l, L^h not a power of (l)."""
    target = l**h
    if K.disc % l == 0:
        # ramified: L^2 = (l); only even h reach a principal power this way
        return K.element(l ** (h // 2)) if h % 2 == 0 and h == 2 else None
    for y in range(1, search):
        # solve N(x + y w) = +-target for integer x
        t, c = K.omega_trace, K.omega_const
        for sign in (1, -1) if K.is_real else (1,):
            disc = (t * y) ** 2 + 4 * (c * y * y + sign * target)
            if disc < 0:
                continue
            r = math.isqrt(disc)
            if r * r != disc:
                continue
            for num in (-t * y + r, -t * y - r):
                if num % 2 == 0:
                    z = K.element(num // 2, y)
                    if z.a % l or z.b % l:
                        return z
        if not K.is_real and (y * y) * abs(K.disc) > 4 * target * 4:
            break
    return None


def ray_class_group(K: QuadraticField, p: int, k: int, include_infinity: bool = True, budget: int = ENUMERATION_BUDGET) -> RayClassReport:
    if p not in (2, 3):
        raise DomainError("ray class groups are supported for p in {2, 3}")
    signs = 2 if (include_infinity and K.is_real) else 0
    M = MiddleGroup(K, p, k, signs, budget)
    U = unit_group(K)
    H = M.subgroup_mask([M.image(u) for u in U.generators()] + [M.image(K.element(-1))])
    unit_image = int(np.count_nonzero(H))
    Cl = class_group(K)
    h = Cl.order
    order = h * M.order // unit_image
    qs = (2, 3)
    if h == 1:
        inv = M.invariant_factors(H)
        ranks = {q: M.q_rank(q, H) for q in qs}
        return RayClassReport(K.d, p, k, include_infinity, h, M.order, unit_image, order, inv, ranks, {q: [r, r] for q, r in ranks.items()}, True, "quotient")
    if Cl.is_cyclic():
        l, _ = _class_generator_prime(K, p, h)
        alpha = _generator_of_power(K, l, h)
        if alpha is not None:
            E = CyclicExtension(M, h, M.image(alpha))
            HE = E.lift_mask(H)
            inv = E.invariant_factors(HE)
            if E.quotient_order(HE) != order:
                raise ArithmeticError("extension order mismatch")
            ranks = {q: E.q_rank(q, HE) for q in qs}
            return RayClassReport(K.d, p, k, include_infinity, h, M.order, unit_image, order, inv, ranks, {q: [r, r] for q, r in ranks.items()}, True, f"cyclic extension via prime {l}")
    # bounds from the two ends of the sequence
    ranks, bounds = {}, {}
    exact = True
    for q in qs:
        rb, rc = M.q_rank(q, H), Cl.q_rank(q)
        bounds[q] = [max(rb, rc), rb + rc]
        if rb == 0 or rc == 0:
            ranks[q] = rb + rc
        else:
            exact = False
    return RayClassReport(K.d, p, k, include_infinity, h, M.order, unit_image, order, None, ranks, bounds, exact, "bounds")


def is_power_of(n: int, q: int) -> bool:
    while n % q == 0:
        n //= q
    return n == 1


@dataclass
class PowerGroupCheck:
    d: int
    p: int
    q: int
    per_k: dict[int, dict] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(v["is_q_group"] for v in self.per_k.values())

    def as_dict(self) -> dict:
        return {"d": self.d, "p": self.p, "q": self.q, "holds": self.holds, "per_k": {str(k): v for k, v in self.per_k.items()}}


def verify_q_group_rays(d: int, p: int = 2, k_max: int = 5, q: int | None = None) -> PowerGroupCheck:
    """Check that Cl(K, P^k oo) is a q-group for k = 1..k_max (q defaults to p)."""
    q = p if q is None else q
    K = QuadraticField(d)
    out = PowerGroupCheck(d, p, q)
    for k in range(1, k_max + 1):
        r = ray_class_group(K, p, k, True)
        out.per_k[k] = {"order": r.order, "is_q_group": is_power_of(r.order, q)}
    return out


def check_rank_stabilization(K: QuadraticField, p: int, k_limit: int = 5, window: int = 3) -> dict:
    """Smallest k0 with constant p-rank of the ray class group on [k0, k0 + window]."""
    ranks = {}
    for k in range(1, k_limit + window + 1):
        r = ray_class_group(K, p, k, True)
        if p not in r.q_ranks:
            raise ArithmeticError(f"p-rank not determined at k={k}")
        ranks[k] = r.q_ranks[p]
    k0 = None
    for start in range(1, k_limit + 1):
        vals = {ranks[j] for j in range(start, start + window + 1)}
        if len(vals) == 1:
            k0 = start
            break
    e, f = local_degrees(K, p)
    e_abs = e  # base is Q_p
    predicted = e_abs + e_abs // (p - 1) + 1
    return {
        "d": K.d,
        "p": p,
        "ranks": {str(k): v for k, v in ranks.items()},
        "stabilization_index": k0,
        "within_limit": k0 is not None and k0 <= k_limit,
        "residue_ring_stable_from": predicted,
    }
