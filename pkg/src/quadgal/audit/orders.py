"""Orders of Q[x]/(f) grown by Dedekind enlargements at a single prime.

Starting from Z[theta], each pass takes a few elements w of the current
order, applies Dedekind's criterion at q to the minimal polynomial h of w,
and adjoins the integral element V(w)/q that the criterion produces. Every
adjoined element is integral, so v_q(disc O) is always an upper bound for
v_q of the field discriminant; reaching 0 proves q unramified.

This is deliberately weaker than a full maximal-order algorithm: when no
candidate enlarges the order the result is only an upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core import finite_field as ff
from ..core.integers import egcd, valuation
from ..core.polynomial import IntPolynomial, poly_discriminant, squarefree_part


def _mulmod(a: list[int], b: list[int], f: IntPolynomial) -> list[int]:
    """Product of integer coordinate vectors in Z[x]/(f), f monic."""
    n = f.degree
    c = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    fc = f.coeffs
    for k in range(len(c) - 1, n - 1, -1):
        t = c[k]
        if t:
            for i in range(n + 1):
                c[k - n + i] -= t * fc[i]
    return c[:n]


def hnf_mod(rows: list[list[int]], n: int, D: int) -> list[list[int]]:
    """Upper-triangular HNF basis of span(rows) + D*Z^n."""
    pending = [[x % D for x in r] for r in rows]
    H = []
    for col in range(n):
        piv = [0] * n
        piv[col] = D
        rest = []
        for r in pending:
            if r[col] == 0:
                rest.append(r)
                continue
            a, b = piv[col], r[col]
            g, x, y = egcd(a, b)
            new_piv = [x * u + y * v for u, v in zip(piv, r)]
            other = [(b // g) * u - (a // g) * v for u, v in zip(piv, r)]
            piv = new_piv
            rest.append([t % D for t in other])
        if piv[col] < 0:
            piv = [-t for t in piv]
        piv = [t if i <= col else t % D for i, t in enumerate(piv)]
        H.append(piv)
        pending = [r for r in rest if any(r)]
    for i in range(n):
        for j in range(i):
            q = H[j][i] // H[i][i]
            if q:
                H[j] = [u - q * v for u, v in zip(H[j], H[i])]
    return H


def _charpoly(M: list[list[int]]) -> list[Fraction]:
    """Characteristic polynomial (low degree first) by Faddeev-LeVerrier."""
    n = len(M)
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        Mk = [[sum(M[i][l] * Mk[l][j] for l in range(n)) + (c[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        tr = sum(sum(M[i][l] * Mk[l][i] for l in range(n)) for i in range(n))
        c[n - k] = -tr / k
    return c


@dataclass
class Order:
    f: IntPolynomial
    den: int
    rows: list[list[int]]

    @classmethod
    def equation_order(cls, f: IntPolynomial) -> "Order":
        n = f.degree
        return cls(f, 1, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return self.f.degree

    def index(self) -> Fraction:
        """[O : Z[theta]]."""
        vol = Fraction(1)
        for i in range(self.n):
            vol *= Fraction(self.rows[i][i], self.den)
        return 1 / vol

    def disc_valuation(self, q: int, disc_f: int | None = None) -> int:
        disc_f = poly_discriminant(self.f) if disc_f is None else disc_f
        idx = self.index()
        return valuation(disc_f, q) - 2 * (valuation(idx.numerator, q) - valuation(idx.denominator, q))

    def basis_elements(self) -> list[tuple[list[int], int]]:
        return [(list(r), self.den) for r in self.rows]

    def adjoin(self, vec: list[int], den: int) -> "Order":
        """Ring generated by the order and vec/den."""
        from math import lcm

        D = lcm(self.den, den)
        cur = [[x * (D // self.den) for x in r] for r in self.rows]
        elt = [x * (D // den) for x in vec]
        n = self.n
        while True:
            prods = [[x // D for x in _mulmod(elt, r, self.f)] if all(x % D == 0 for x in _mulmod(elt, r, self.f)) else None for r in cur]
            if any(p is None for p in prods):
                # products need a bigger denominator: scale everything up
                D2 = D * D
                cur = [[x * D for x in r] for r in cur]
                elt = [x * D for x in elt]
                D = D2
                continue
            new = hnf_mod(cur + [elt] + prods, n, D * D)
            # new basis must still contain D * Z^n in these coordinates; check stability
            if new == hnf_mod(cur, n, D * D):
                break
            cur = new
        return Order._normalized(self.f, D, cur)

    @staticmethod
    def _normalized(f: IntPolynomial, D: int, rows: list[list[int]]) -> "Order":
        from math import gcd
        from functools import reduce

        g = reduce(gcd, (x for r in rows for x in r), D)
        return Order(f, D // g, [[x // g for x in r] for r in rows])


def _element_minpoly(f: IntPolynomial, vec: list[int], den: int) -> IntPolynomial:
    n = f.degree
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cols.append(_mulmod(vec, e, f))
    M = [[Fraction(cols[j][i], den) for j in range(n)] for i in range(n)]
    cp = _charpoly(M)
    if any(c.denominator != 1 for c in cp):
        raise ArithmeticError("element is not integral")
    h = IntPolynomial(int(c) for c in cp)
    return squarefree_part(h) if h.degree > 1 else h


def _dedekind_element(h: IntPolynomial, q: int) -> list[int] | None:
    """Coefficients of V with V(w)/q integral and outside Z[w], or None if q is tame for Z[w]."""
    hbar = h.reduce_mod(q)
    facs = ff.factor_gfp(hbar, q)
    g, t = [1], [1]
    for pi, e in facs:
        g = ff.mul(g, pi, q)
        for _ in range(e - 1):
            t = ff.mul(t, pi, q)
    F = IntPolynomial(c // q for c in (h - IntPolynomial(g) * IntPolynomial(t)).coeffs)
    U = ff.gcd(ff.gcd(F.reduce_mod(q), g, q), t, q)
    if len(U) <= 1:
        return None
    return ff.poly_divmod(hbar, U, q)[0]


def _eval_element(V: list[int], vec: list[int], den: int, f: IntPolynomial) -> tuple[list[int], int]:
    """V(vec/den) as (integer vector, denominator)."""
    n = f.degree
    acc = [0] * n
    acc_den = 1
    for coef in reversed(V):
        # acc <- acc * (vec/den) + coef
        acc = _mulmod(acc, vec, f)
        acc_den *= den
        acc[0] += coef * acc_den
    return acc, acc_den


@dataclass
class EnlargementResult:
    q: int
    start_valuation: int
    final_valuation: int
    steps: int

    @property
    def unramified(self) -> bool:
        return self.final_valuation == 0

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "disc_f_valuation": self.start_valuation,
            "order_disc_valuation": self.final_valuation,
            "enlargements": self.steps,
            "proves_unramified": self.unramified,
        }


def _candidates(O: Order, theta):
    """theta, the basis, then two-term combinations with coefficients 1 and 2."""
    basis = O.basis_elements()
    yield theta
    yield from basis
    n = len(basis)
    den = O.den
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for c in (1, 2):
                yield [a + c * b for a, b in zip(basis[i][0], basis[j][0])], den


def enlarge_at(f: IntPolynomial, q: int, max_steps: int = 40) -> EnlargementResult:
    """Grow Z[theta] at q and report the best upper bound on v_q(d_field)."""
    disc_f = poly_discriminant(f)
    O = Order.equation_order(f)
    v0 = O.disc_valuation(q, disc_f)
    steps = 0
    theta = ([0, 1] + [0] * (f.degree - 2), 1)
    while O.disc_valuation(q, disc_f) > 0 and steps < max_steps:
        grew = False
        for vec, den in _candidates(O, theta):
            h = _element_minpoly(f, vec, den)
            if h.degree < 1:
                continue
            V = _dedekind_element(h, q)
            if V is None:
                continue
            num, d2 = _eval_element(V, vec, den, f)
            O2 = O.adjoin(num, d2 * q)
            if O2.disc_valuation(q, disc_f) < O.disc_valuation(q, disc_f):
                O = O2
                steps += 1
                grew = True
                break
        if not grew:
            break
    return EnlargementResult(q, v0, O.disc_valuation(q, disc_f), steps)
