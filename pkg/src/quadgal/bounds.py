"""Different-exponent upper bounds, Odlyzko-Poitou lower bounds, and the
discriminant exclusion thresholds obtained by comparing them.

Exponents of differents are exact ``Fraction`` values, normalized so that
``v(p) = 1``. The analytic side uses mpmath at a caller-chosen working
precision; thresholds also come with an outward-rounded interval enclosure
computed with ``mpmath.iv``.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from mpmath import iv, mp, mpf

from .core.integers import is_squarefree, kronecker_symbol
from .data import load as load_data

DEFAULT_PRECISION = 30
ODLYZKO_COEFF = "6.860404"


class UnsupportedScenario(ValueError):
    """Raised for scenarios whose local bound is not available (e.g. p split in K)."""


# ---------------------------------------------------------------------------
# local different bounds


@dataclass(frozen=True)
class LocalRamification:
    p: int
    e: int
    m: int
    base_e: int = 1

    def __post_init__(self):
        if math.gcd(self.e, self.p) != 1:
            raise ValueError("tame index must be coprime to p")
        if self.m < 0 or self.e < 1:
            raise ValueError("need e >= 1 and m >= 0")
        if self.base_e not in (1, 2):
            raise ValueError("base ramification index must be 1 or 2")


@dataclass(frozen=True)
class DifferentBound:
    """The different divides (p)^c; ``c`` is exact."""

    c: Fraction
    provenance: str

    def __add__(self, other: "DifferentBound") -> "DifferentBound":
        return DifferentBound(self.c + other.c, f"{self.provenance} + {other.provenance}")


def wild_layer_different(p: int, e: int, m: int, base_e: int = 1) -> DifferentBound:
    """Bound for an elementary abelian p-extension of degree p^m.

    The base of the wild layer has absolute ramification E = base_e * e, and
    the bound is (1 + a/E)(1 - p^-m) with a = floor(E/(p-1)) + 1.
    """
    if m < 1:
        raise ValueError("wild layer needs m >= 1; use tame_different for m = 0")
    if e < 1:
        raise ValueError("e must be positive")
    E = base_e * e
    alpha = E // (p - 1) + 1
    c = (1 + Fraction(alpha, E)) * (1 - Fraction(1, p**m))
    return DifferentBound(c, f"wild layer p={p} E={E} m={m}")


def tame_different(e: int, base_e: int = 1) -> DifferentBound:
    """Exact different exponent (e-1)/(base_e*e) of a tame layer of index e."""
    if e < 1:
        raise ValueError("e must be positive")
    return DifferentBound(Fraction(e - 1, base_e * e), f"tame layer e={e}")


def unramified_base_different(e: int, m: int) -> DifferentBound:
    """p = 2 over the unramified quadratic extension of Q_2: 3 - 2^(1-m) - 1/(e 2^m)."""
    if e % 2 == 0:
        raise ValueError("tame index e must be odd")
    if m < 1:
        raise ValueError("m >= 1 required")
    c = 3 - Fraction(2, 2**m) - Fraction(1, e * 2**m)
    return DifferentBound(c, f"p=2 unramified base e={e} m={m}")


def ramified_base_different(m: int) -> DifferentBound:
    """p = 2 over a ramified quadratic extension of Q_2: 9/4 - 2^(1-m).

    The bound does not depend on the tame index.
    """
    if m < 1:
        raise ValueError("m >= 1 required")
    return DifferentBound(Fraction(9, 4) - Fraction(2, 2**m), f"p=2 ramified base m={m}")


def p3_ramified_different(e: int, m: int) -> DifferentBound:
    """p = 3 over a ramified quadratic base: 2 - 1/(2*3^(m-1)) - 1/(2e*3^m)."""
    if e % 3 == 0:
        raise ValueError("tame index must be prime to 3")
    if m < 1:
        raise ValueError("m >= 1 required")
    c = 2 - Fraction(1, 2 * 3 ** (m - 1)) - Fraction(1, 2 * e * 3**m)
    return DifferentBound(c, f"p=3 ramified base e={e} m={m}")


def global_disc_bound(K_disc: int, n: int, c: DifferentBound | Fraction, p: int):
    """Upper bound n*log|d_K| + 2*c*n*log p for log|d_L| (residue norm p^2)."""
    if n < 1:
        raise ValueError("n >= 1 required")
    cval = c.c if isinstance(c, DifferentBound) else Fraction(c)
    return n * mp.log(abs(K_disc)) + 2 * _mpf(cval) * n * mp.log(p)


def tame_global_disc_bound(K_disc: int, n: int, p: int, residue_norm_exp: int = 1):
    """Tame case: d_{L/K} divides P^n, so log|d_L| <= n log|d_K| + n log N(P)."""
    return n * mp.log(abs(K_disc)) + n * residue_norm_exp * mp.log(p)


# ---------------------------------------------------------------------------
# analytic side


@dataclass(frozen=True)
class BoundConstants:
    """Constants of the lower bound; ``None`` means full working precision."""

    euler_gamma: str | None = None
    log_4pi: str | None = None
    odlyzko_coeff: str = ODLYZKO_COEFF

    def values(self):
        g = mp.euler if self.euler_gamma is None else mpf(self.euler_gamma)
        l4 = mp.log(4 * mp.pi) if self.log_4pi is None else mpf(self.log_4pi)
        return g, l4, mpf(self.odlyzko_coeff)

    def intervals(self):
        g = iv.euler if self.euler_gamma is None else iv.mpf(self.euler_gamma)
        l4 = iv.log(4 * iv.pi) if self.log_4pi is None else iv.mpf(self.log_4pi)
        return g, l4, iv.mpf(self.odlyzko_coeff)

    def as_dict(self) -> dict:
        return {
            "euler_gamma": self.euler_gamma or "full",
            "log_4pi": self.log_4pi or "full",
            "odlyzko_coeff": self.odlyzko_coeff,
        }


FULL_CONSTANTS = BoundConstants()


def literal_constants() -> BoundConstants:
    c = load_data()["literal_constants"]
    return BoundConstants(c["euler_gamma"], c["log_4pi"], c["odlyzko_coeff"])


@contextmanager
def _iv_precision(dps: int):
    old = iv.dps
    iv.dps = dps
    try:
        yield
    finally:
        iv.dps = old


def _mpf(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return mpf(x)
    return mpf(x)


def odlyzko_lower(degree: int, constants: BoundConstants = FULL_CONSTANTS, precision: int = DEFAULT_PRECISION):
    """Lower bound gamma + log(4 pi) - coeff * m^(-2/3) for (1/m) log|d| of a degree-m field."""
    if degree < 1:
        raise ValueError("degree must be positive")
    with mp.workdps(precision):
        g, l4, k = constants.values()
        return +(g + l4 - k * mpf(degree) ** (-mpf(2) / 3))


@dataclass(frozen=True)
class RatioMinimum:
    x0: mpf
    f_min: mpf
    interior: bool
    argmin: mpf


def minimize_ratio(A, B, x_min=0, precision: int = DEFAULT_PRECISION) -> RatioMinimum:
    """Minimize f(x) = (A - B x^(1/3)) / x over x >= x_min.

    f decreases up to x0 = (3A / 2B)^3, where f(x0) = -A / (2 x0), and then
    increases toward 0.
    """
    with mp.workdps(precision):
        A, B, x_min = _mpf(A), _mpf(B), _mpf(x_min)
        if A <= 0 or B <= 0:
            raise ValueError("A and B must be positive")
        x0 = (3 * A / (2 * B)) ** 3
        if x0 >= x_min:
            return RatioMinimum(x0, -A / (2 * x0), True, x0)
        fx = (A - B * mp.cbrt(x_min)) / x_min
        return RatioMinimum(x0, fx, False, x_min)


def ratio_function(A, B) -> Callable:
    A, B = _mpf(A), _mpf(B)
    return lambda x: (A - B * mp.cbrt(_mpf(x))) / _mpf(x)


@dataclass(frozen=True)
class BoundScenario:
    p: int = 2
    base_split_type: str = "ramified"
    wildness: str = "wild"
    n_min: int = 60
    tate_ratio: Fraction = Fraction(30)
    inertia_index: Fraction = Fraction(3)
    constants: BoundConstants = FULL_CONSTANTS
    different_sup: Fraction | None = None

    def __post_init__(self):
        if self.base_split_type not in ("ramified", "inert", "split"):
            raise ValueError(f"unknown split type {self.base_split_type!r}")
        if self.wildness not in ("tame", "wild"):
            raise ValueError(f"unknown wildness {self.wildness!r}")
        if self.n_min < 1:
            raise ValueError("n_min must be positive")
        object.__setattr__(self, "tate_ratio", Fraction(self.tate_ratio))
        object.__setattr__(self, "inertia_index", Fraction(self.inertia_index))

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "base": self.base_split_type,
            "wildness": self.wildness,
            "n_min": self.n_min,
            "tate_ratio": str(self.tate_ratio),
            "inertia_index": str(self.inertia_index),
            "constants": self.constants.as_dict(),
            "different_sup": None if self.different_sup is None else str(self.different_sup),
        }


def different_in_terms_of_n(s: BoundScenario) -> tuple[Fraction, Fraction]:
    """Return (sup, slope) with c <= sup - slope/n under the group constraints.

    The constraints n/p^(m-1) >= tate_ratio and n/(e p^m) >= inertia_index
    turn the m- and e-dependent terms of the local bound into multiples of 1/n.
    """
    R, I = s.tate_ratio, s.inertia_index
    if s.base_split_type == "split":
        raise UnsupportedScenario("p split in K is not covered by the local bounds")
    if s.p == 2 and s.base_split_type == "ramified":
        sup, slope = Fraction(9, 4), R
    elif s.p == 2 and s.base_split_type == "inert":
        sup, slope = Fraction(3), R + I
    elif s.p == 3 and s.base_split_type == "ramified":
        sup, slope = Fraction(2), R / 2 + I / 2
    else:
        raise UnsupportedScenario(f"no local bound for p={s.p}, base {s.base_split_type}")
    if s.different_sup is not None:
        sup = Fraction(s.different_sup)
    return sup, slope


def residue_norm_exponent(split_type: str) -> int:
    return 2 if split_type == "inert" else 1


@dataclass
class ExclusionResult:
    variant: str
    scenario: dict
    constant: mpf
    A: mpf
    B: mpf
    minimizer_x0: mpf
    min_value: mpf
    interior: bool
    log_threshold: mpf
    abs_threshold: mpf
    excluded_d: list[int]
    log_threshold_interval: tuple[mpf, mpf] | None = None
    evaluator: Callable | None = field(default=None, repr=False)
    integer_scan: dict | None = None
    precision: int = DEFAULT_PRECISION

    def to_dict(self) -> dict:
        digits = self.precision
        out = {
            "variant": self.variant,
            "scenario": self.scenario,
            "constant": fmt(self.constant, digits),
            "A": fmt(self.A, digits) if self.A is not None else None,
            "B": fmt(self.B, digits) if self.B is not None else None,
            "minimizer_x0": fmt(self.minimizer_x0, digits) if self.minimizer_x0 is not None else None,
            "min_value": fmt(self.min_value, digits) if self.min_value is not None else None,
            "interior_minimum": self.interior,
            "log_threshold": fmt(self.log_threshold, digits),
            "abs_threshold": fmt(self.abs_threshold, digits),
            "excluded_fundamental_discriminants": self.excluded_d,
        }
        if self.log_threshold_interval is not None:
            lo, hi = self.log_threshold_interval
            out["log_threshold_enclosure"] = [fmt_directed(lo, digits, False), fmt_directed(hi, digits, True)]
        if self.integer_scan is not None:
            out["integer_scan"] = self.integer_scan
        return out


def fmt(x, digits: int = DEFAULT_PRECISION) -> str:
    return mp.nstr(x, digits, strip_zeros=False)


def fmt_directed(x, digits: int, up: bool) -> str:
    """Format with ``digits`` significant digits, rounding toward +inf if ``up``."""
    with mp.workdps(digits + 20):
        x = mpf(x)
        if x == 0:
            return "0"
        places = digits - 1 - int(mp.floor(mp.log10(abs(x))))
        scaled = x * mpf(10) ** places
        n = int(mp.ceil(scaled) if up else mp.floor(scaled))
    sign = "-" if n < 0 else ""
    s = str(abs(n))
    if places <= 0:
        return sign + s + "0" * (-places)
    s = s.rjust(places + 1, "0")
    return f"{sign}{s[:-places]}.{s[-places:]}"


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminants_below(bound, p: int, split_type: str) -> list[int]:
    """Fundamental discriminants D with |D| < bound and the given behaviour of p."""
    target = {"ramified": 0, "inert": -1, "split": 1}[split_type]
    limit = int(mp.ceil(bound))
    out = []
    for a in range(3, limit + 1):
        if a >= bound:
            break
        for D in (-a, a):
            if is_fundamental_discriminant(D) and kronecker_symbol(D, p) == target:
                out.append(D)
    return sorted(out, key=lambda D: (abs(D), D))


def _threshold_interval(C_iv, A_iv, B_iv, x_min: int):
    x0 = (3 * A_iv / (2 * B_iv)) ** 3
    if x0.a >= x_min:
        return C_iv - A_iv / (2 * x0)
    # minimum on the boundary
    xm = iv.mpf(x_min)
    return C_iv + (A_iv - B_iv * xm ** (iv.mpf(1) / 3)) / xm


def integer_scan(result: ExclusionResult, n_min: int, n_max: int = 10**6) -> dict:
    """Evaluate the per-n lower bound on log|d_K| at every integer n in [n_min, n_max].

    numpy locates the integer minimizer; mpmath re-evaluates a window around
    it. ``all_at_or_above_threshold`` certifies that log|d_K| <= threshold
    contradicts the inequality for every scanned n.
    """
    A, B, C = float(result.A), float(result.B), float(result.constant)
    n = np.arange(n_min, n_max + 1, dtype=np.float64)
    vals = C + (A - B * np.cbrt(n)) / n
    i = int(np.argmin(vals))
    with mp.workdps(result.precision):
        ev = result.evaluator
        window = range(max(n_min, n_min + i - 5), min(n_max, n_min + i + 5) + 1)
        best = min(window, key=lambda k: ev(k))
        best_val = ev(best)
        slack = float(best_val - result.log_threshold)
    # float-level check across the whole range; the tolerance only covers
    # double rounding, the exact minimum is checked above at full precision
    floor_ok = bool(np.all(vals >= float(result.log_threshold) - 1e-12))
    return {
        "n_range": [n_min, n_max],
        "integer_minimizer": best,
        "integer_min_value": fmt(best_val, result.precision),
        "slack_over_threshold": f"{slack:.3e}",
        "all_at_or_above_threshold": floor_ok and best_val >= result.log_threshold,
    }


def _assemble(variant, scenario_dict, C, A, B, n_min, p, split_type, precision, interval=None):
    mn = minimize_ratio(A, B, n_min, precision)
    with mp.workdps(precision):
        log_thr = C + mn.f_min
        abs_thr = mp.exp(log_thr)
        f = ratio_function(A, B)
        evaluator = lambda n, C=C, f=f: C + f(n)
        excluded = fundamental_discriminants_below(abs_thr, p, split_type)
    return ExclusionResult(
        variant=variant,
        scenario=scenario_dict,
        constant=C,
        A=A,
        B=B,
        minimizer_x0=mn.x0,
        min_value=mn.f_min,
        interior=mn.interior,
        log_threshold=log_thr,
        abs_threshold=abs_thr,
        excluded_d=excluded,
        log_threshold_interval=interval,
        evaluator=evaluator,
        precision=precision,
    )


def exclusion_threshold(s: BoundScenario, precision: int = DEFAULT_PRECISION, scan_to: int | None = None) -> ExclusionResult:
    """Recompute the wild-case exclusion threshold from the local bounds.

    Inequality per n: 2*L(2n) <= log|d_K| + 2 c(n) log p, with L the lower
    bound per degree and c(n) = sup - slope/n. Rearranged as
    C + (A - B n^(1/3))/n <= log|d_K| and minimized over real n >= n_min.
    """
    if s.wildness != "wild":
        return tame_exclusion(s, precision)
    sup, slope = different_in_terms_of_n(s)
    with mp.workdps(precision):
        g, l4, k = s.constants.values()
        two_log_p = 2 * mp.log(s.p)
        C = 2 * (g + l4) - two_log_p * _mpf(sup)
        A = two_log_p * _mpf(slope)
        B = 2 * k / mpf(2) ** (mpf(2) / 3)
    with _iv_precision(precision):
        gi, l4i, ki = s.constants.intervals()
        tlp = 2 * iv.log(s.p)
        Ci = 2 * (gi + l4i) - tlp * iv.mpf(sup.numerator) / sup.denominator
        Ai = tlp * iv.mpf(slope.numerator) / slope.denominator
        Bi = 2 * ki / iv.mpf(2) ** (iv.mpf(2) / 3)
        enc = _threshold_interval(Ci, Ai, Bi, s.n_min)
        interval = (enc.a, enc.b)
    res = _assemble("recomputed", s.as_dict(), C, A, B, s.n_min, s.p, s.base_split_type, precision, interval)
    if scan_to:
        res.integer_scan = integer_scan(res, s.n_min, scan_to)
    return res


def tame_exclusion(s: BoundScenario, precision: int = DEFAULT_PRECISION) -> ExclusionResult:
    """Tame case: 2*L(2n) <= log|d_K| + log N(P); the left side increases in n,
    so the binding case is n = n_min."""
    if s.base_split_type == "split":
        raise UnsupportedScenario("p split in K is not covered")
    log_norm_exp = residue_norm_exponent(s.base_split_type)
    with mp.workdps(precision):
        lower = odlyzko_lower(2 * s.n_min, s.constants, precision)
        log_thr = 2 * lower - log_norm_exp * mp.log(s.p)
        abs_thr = mp.exp(log_thr)
        excluded = fundamental_discriminants_below(abs_thr, s.p, s.base_split_type)
        constants = s.constants

        def evaluator(n):
            return 2 * odlyzko_lower(2 * int(n), constants, precision) - log_norm_exp * mp.log(s.p)

    with _iv_precision(precision):
        gi, l4i, ki = s.constants.intervals()
        enc = 2 * (gi + l4i - ki * iv.mpf(2 * s.n_min) ** (-iv.mpf(2) / 3)) - log_norm_exp * iv.log(s.p)
        interval = (enc.a, enc.b)
    return ExclusionResult(
        variant="recomputed",
        scenario=s.as_dict(),
        constant=log_thr,
        A=None,
        B=None,
        minimizer_x0=None,
        min_value=None,
        interior=False,
        log_threshold=log_thr,
        abs_threshold=abs_thr,
        excluded_d=excluded,
        log_threshold_interval=interval,
        evaluator=evaluator,
        precision=precision,
    )


LITERAL_CHAINS = ("p2_ramified_wild", "p2_inert_wild", "p3_ramified_wild")


def literal_threshold(chain: str, precision: int = DEFAULT_PRECISION, n_min: int = 60, scan_to: int | None = None) -> ExclusionResult:
    """Re-run a chain with its printed constants (C, A, B) taken verbatim.

    When the printed A is unusable it is rebuilt from the printed factors
    (``A_derivation``: factor * ratio).
    """
    rec = load_data()["bound_chains"][chain]
    with mp.workdps(precision):
        C = mpf(rec["constant"])
        if rec.get("A") is not None:
            A = mpf(rec["A"])
        else:
            der = rec["A_derivation"]
            A = mpf(der["factor"]) * mpf(der["ratio"])
        B = mpf(rec["B"])
    with _iv_precision(precision):
        Ai = iv.mpf(rec["A"]) if rec.get("A") is not None else iv.mpf(rec["A_derivation"]["factor"]) * iv.mpf(rec["A_derivation"]["ratio"])
        enc = _threshold_interval(iv.mpf(rec["constant"]), Ai, iv.mpf(rec["B"]), n_min)
        interval = (enc.a, enc.b)
    scen = {"chain": chain, "p": rec["p"], "base": rec["base"], "wildness": "wild", "n_min": n_min}
    res = _assemble("literal", scen, C, A, B, n_min, rec["p"], rec["base"], precision, interval)
    if scan_to:
        res.integer_scan = integer_scan(res, n_min, scan_to)
    return res


def literal_scenario(chain: str) -> BoundScenario:
    """Scenario whose recomputation mirrors a printed chain's inputs.

    Uses the truncated constants and the printed different supremum; the
    printed A, B, C are still rounded further than this reproduces.
    """
    rec = load_data()["bound_chains"][chain]
    return BoundScenario(
        p=rec["p"],
        base_split_type=rec["base"],
        wildness="wild",
        constants=literal_constants(),
        different_sup=Fraction(rec["different_sup"]),
    )


def discrepancy_notes(precision: int = DEFAULT_PRECISION) -> list[dict]:
    """Checks of printed constants against recomputation, one entry per finding."""
    data = load_data()["bound_chains"]
    notes = []

    ram = exclusion_threshold(BoundScenario(2, "ramified", "wild"), precision)
    ram_lit = literal_threshold("p2_ramified_wild", precision)
    notes.append({
        "id": "ramified-p2-different-sup",
        "literal": data["p2_ramified_wild"]["different_sup"],
        "recomputed": "9/4",
        "text": (
            "literal p=2 ramified chain multiplies 2*log 2 by 2.125, while the local bound "
            "9/4 - 2^(1-m) has supremum 2.25; with 2.25 the threshold is |d_K| < "
            f"{fmt(ram.abs_threshold, 6)} (log {fmt(ram.log_threshold, 7)}), versus "
            f"{fmt(ram_lit.abs_threshold, 6)} with 2.125; discriminants {sorted(set(ram_lit.excluded_d) - set(ram.excluded_d))} "
            "are excluded only by the 2.125 variant"
        ),
    })

    tame = tame_exclusion(BoundScenario(2, "ramified", "tame"), precision)
    notes.append({
        "id": "ramified-p2-tame-range",
        "literal": data["p2_ramified_tame"]["printed"]["abs_threshold"],
        "recomputed": fmt(tame.abs_threshold, 7),
        "text": (
            "tame case: 2*L(2n) - log 2 at n = 60 gives log|d_K| threshold "
            f"{fmt(tame.log_threshold, 7)}, i.e. |d_K| < {fmt(tame.abs_threshold, 7)}; "
            "the stated range |d_K| <= 2^128 is not supported by this inequality "
            "(all nine fields have |d_K| <= 24 and remain excluded)"
        ),
    })

    p3 = literal_threshold("p3_ramified_wild", precision)
    der = data["p3_ramified_wild"]["A_derivation"]
    notes.append({
        "id": "p3-malformed-A",
        "literal": data["p3_ramified_wild"]["A_printed_raw"],
        "recomputed": fmt(p3.A, 8),
        "text": (
            f"printed A '{data['p3_ramified_wild']['A_printed_raw']}' is malformed; rebuilt as "
            f"{der['factor']} * {der['ratio']} = {fmt(p3.A, 8)}, giving x0 = {fmt(p3.minimizer_x0, 7)} "
            f"against printed {data['p3_ramified_wild']['printed']['x0']}"
        ),
    })
    notes.append({
        "id": "p3-threshold-rounding",
        "literal": data["p3_ramified_wild"]["printed"]["abs_threshold"],
        "recomputed": fmt(p3.abs_threshold, 6),
        "text": (
            f"p=3 chain gives |d_K| < {fmt(p3.abs_threshold, 6)}; printed bound 5.7 is a "
            "rounding down and excludes the same discriminants"
        ),
    })

    with mp.workdps(precision):
        lim = odlyzko_lower(10**30, FULL_CONSTANTS, precision)
        g, l4, _ = FULL_CONSTANTS.values()
        full = 2 * (g + l4)
    notes.append({
        "id": "lower-bound-constant",
        "literal": data["p2_ramified_wild"]["lower_constant"],
        "recomputed": fmt(full, 9),
        "text": (
            "2*(gamma + log 4pi) is " + fmt(full, 9) + "; the literal constant 6.216448 comes "
            "from the truncations gamma = .5772 and log 4pi = 2.53102"
        ),
    })
    inert = literal_threshold("p2_inert_wild", precision)
    notes.append({
        "id": "inert-p2-log-threshold",
        "literal": data["p2_inert_wild"]["printed"]["log_threshold"],
        "recomputed": fmt(inert.log_threshold, 7),
        "text": (
            f"inert p=2 chain: constant + g_min evaluates to {fmt(inert.log_threshold, 7)} "
            "from the printed A, B and constant (printed 2.011863)"
        ),
    })
    return notes
