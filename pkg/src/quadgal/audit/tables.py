"""Audits of embedded number-field records.

Verdicts are ``pass``, ``fail`` or ``inconclusive``. A ``fail`` means a
necessary condition is violated; ``pass`` means consistent, which is not a
certificate of the claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core.factor import is_irreducible_over_Q
from ..core.finite_field import factor_mod_p
from ..core.integers import factor_integer, is_square, squarefree_core, valuation
from ..core.polynomial import IntPolynomial, poly_discriminant, real_root_count
from ..data import load as load_data
from .census import cycle_type_census, group_consistency, order12_with_normal_order6
from .newton import dedekind_index_check, ramification_evidence
from .orders import enlarge_at

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
DEFAULT_CENSUS_BOUND = 2000


@dataclass(frozen=True)
class TableFieldRecord:
    d: int
    polynomial: IntPolynomial
    claimed_h: int
    claimed_efg: tuple[int, int, int]
    p: int = 2

    def __post_init__(self):
        e, f, g = self.claimed_efg
        if min(e, f, g, self.claimed_h) < 1:
            raise ValueError("claimed values must be positive")
        if self.polynomial.degree != e * f * g:
            raise ValueError("degree must equal e*f*g")


@dataclass(frozen=True)
class SexticRecord:
    d: int
    polynomial: IntPolynomial
    claimed_ramification: str

    def __post_init__(self):
        if self.polynomial.degree != 6:
            raise ValueError("sextic records need degree 6")
        if self.claimed_ramification not in ("only_over_2", "unramified"):
            raise ValueError(f"unknown ramification class {self.claimed_ramification!r}")


@dataclass
class Check:
    name: str
    verdict: str
    evidence: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"verdict": self.verdict, "evidence": self.evidence}


@dataclass
class AuditReport:
    subject: dict
    checks: list[Check]
    trusted: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        vs = {c.verdict for c in self.checks}
        if FAIL in vs:
            return FAIL
        return INCONCLUSIVE if INCONCLUSIVE in vs else PASS

    @property
    def hard_fails(self) -> list[str]:
        return [c.name for c in self.checks if c.verdict == FAIL]

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def as_dict(self) -> dict:
        return {
            "subject": self.subject,
            "verdict": self.verdict,
            "checks": {c.name: c.as_dict() for c in self.checks},
            "trusted_inputs": self.trusted,
        }


def field_disc(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def _poly_str(f: IntPolynomial) -> str:
    return str(f)


def _irreducibility_check(f: IntPolynomial) -> Check:
    ok = is_irreducible_over_Q(f)
    return Check("irreducible", PASS if ok else FAIL, {"irreducible_over_Q": ok})


# ---------------------------------------------------------------------------
# fields with one prime over p


def mod_p_shape(f: IntPolynomial, p: int, claimed_f: int) -> Check:
    """One prime over p makes f irreducible over Q_p, so f mod p is a power
    pi^M of one irreducible, and pi's roots lie in the residue field:
    deg pi divides the residue degree."""
    facs = factor_mod_p(f, p)
    shape = [[str(h), m] for h, m in facs]
    ev = {"factorization_mod_p": shape}
    if len(facs) != 1:
        ev["reason"] = "several distinct irreducible factors mod p"
        return Check("mod_p_shape", FAIL, ev)
    pi, M = facs[0]
    ev.update({
        "irreducible_degree": pi.degree,
        "multiplicity": M,
        "irreducible_degree_equals_claimed_f": pi.degree == claimed_f,
        "degenerate": pi == IntPolynomial([0, 1]),
    })
    if claimed_f % pi.degree:
        ev["reason"] = "degree of the irreducible does not divide the claimed residue degree"
        return Check("mod_p_shape", FAIL, ev)
    return Check("mod_p_shape", PASS, ev)


def _newton_check(f: IntPolynomial, p: int, e: int) -> Check:
    if f.coeffs[0] == 0:
        return Check("newton_polygon", INCONCLUSIVE, {"reason": "zero constant term"})
    ev = ramification_evidence(f, p, e)
    return Check("newton_polygon", PASS if ev.consistent else FAIL, ev.as_dict())


def _odd_prime_support(f: IntPolynomial, d: int, min_exponent_at_K: int, disc: int | None = None) -> Check:
    """Odd primes of disc f outside disc K must not ramify in the field.

    v_q(disc f) = v_q(d_field) + 2 v_q(index); Dedekind's defect m gives
    v_q(index) >= m, so v_q(d_field) <= v_q(disc f) - 2m. Primes of disc K
    must appear to at least ``min_exponent_at_K``. When that bound is not
    zero, an explicit enlargement of Z[theta] at q may still reach 0.
    """
    disc = poly_discriminant(f) if disc is None else disc
    dK = field_disc(d)
    fac = factor_integer(disc)
    if not fac.complete:
        return Check("odd_prime_support", INCONCLUSIVE, {"reason": "discriminant not fully factored"})
    per = {}
    verdicts = []
    for q, v in fac.factors:
        if q == 2:
            continue
        if dK % q == 0:
            ok = v >= min_exponent_at_K
            per[str(q)] = {"exponent": v, "divides_disc_K": True, "verdict": PASS if ok else FAIL}
            verdicts.append(PASS if ok else FAIL)
            continue
        dk = dedekind_index_check(f, q)
        bound = v - 2 * dk.defect_degree
        enlargement = None
        if bound > 0 and not dk.maximal:
            enlargement = enlarge_at(f, q)
            bound = min(bound, enlargement.final_valuation)
        if bound <= 0:
            vd = PASS
        elif dk.maximal:
            vd = FAIL
        else:
            vd = INCONCLUSIVE
        per[str(q)] = {
            "exponent": v,
            "divides_disc_K": False,
            "dedekind": dk.verdict,
            "defect_degree": dk.defect_degree,
            "field_exponent_upper_bound": max(bound, 0),
            "verdict": vd,
        }
        if enlargement is not None:
            per[str(q)]["enlargement"] = enlargement.as_dict()
        verdicts.append(vd)
    overall = FAIL if FAIL in verdicts else INCONCLUSIVE if INCONCLUSIVE in verdicts else PASS
    return Check("odd_prime_support", overall, {"discriminant": str(fac), "primes": per})


def audit_table_field(r: TableFieldRecord) -> AuditReport:
    f = r.polynomial
    e, fdeg, g = r.claimed_efg
    checks = [_irreducibility_check(f)]
    checks.append(Check("degree", PASS if f.degree == e * fdeg * g else FAIL, {"degree": f.degree, "efg": list(r.claimed_efg)}))
    r1, r2 = real_root_count(f)
    sig_ev = {"signature": [r1, r2]}
    if r.d < 0:
        sig_ev["requirement"] = "totally imaginary over an imaginary quadratic field"
        checks.append(Check("signature", PASS if r1 == 0 else FAIL, sig_ev))
    else:
        sig_ev["requirement"] = "none for a real quadratic base"
        checks.append(Check("signature", PASS, sig_ev))
    if g == 1:
        checks.append(mod_p_shape(f, r.p, fdeg))
        checks.append(_newton_check(f, r.p, e))
    else:
        checks.append(Check("mod_p_shape", INCONCLUSIVE, {"reason": "only g = 1 is audited"}))
    # every odd prime of disc K ramifies in K, hence to exponent >= [field:K] in the field
    checks.append(_odd_prime_support(f, r.d, f.degree // 2))
    trusted = {"class_number": {"value": r.claimed_h, "status": "asserted by the source table, not verified"}}
    subject = {"d": r.d, "polynomial": _poly_str(f), "p": r.p, "claimed_efg": list(r.claimed_efg)}
    return AuditReport(subject, checks, trusted)


# ---------------------------------------------------------------------------
# sextics


def audit_sextic(r: SexticRecord, census_bound: int = DEFAULT_CENSUS_BOUND) -> AuditReport:
    f = r.polynomial
    subject = {"d": r.d, "polynomial": _poly_str(f), "claimed_ramification": r.claimed_ramification}
    irr = _irreducibility_check(f)
    checks = [irr]
    if irr.verdict == FAIL:
        return AuditReport(subject, checks)
    disc = poly_discriminant(f)
    dK = field_disc(r.d)
    checks.append(_odd_prime_support(f, r.d, 1, disc))

    core = squarefree_core(disc)
    checks.append(Check(
        "quadratic_subfield",
        PASS if core == r.d else INCONCLUSIVE,
        {"squarefree_core_of_disc": core, "claimed_d": r.d},
    ))

    census = cycle_type_census(f, census_bound)
    gc = group_consistency(census, "6T3")
    ev = gc.as_dict()
    ev["census_prime_bound"] = census_bound
    ev["order12_candidates_with_normal_order6"] = order12_with_normal_order6()
    checks.append(Check("galois_census", gc.verdict, ev))

    # with core = d and the group 6T3, the stem field contains K, so
    # disc f = d_K^3 * N(relative disc) * index^2
    num, den = disc, dK**3
    if num % den:
        checks.append(Check("relative_discriminant", FAIL, {"reason": "d_K^3 does not divide disc f"}))
        return AuditReport(subject, checks)
    ratio = num // den
    odd = ratio >> valuation(ratio, 2) if ratio else 0
    v2 = valuation(ratio, 2)
    rel_ev = {"disc_over_dK_cubed": str(factor_integer(ratio)), "odd_part_is_square": is_square(odd) and odd > 0}
    if r.claimed_ramification == "only_over_2":
        checks.append(Check("relative_discriminant", PASS if rel_ev["odd_part_is_square"] else FAIL, rel_ev))
    else:
        square = ratio > 0 and is_square(ratio)
        rel_ev["is_square"] = square
        checks.append(Check("relative_discriminant", PASS if square else FAIL, rel_ev))
        # the 2-part of the ratio may all be index; the desk method cannot separate them
        at2 = {"v2_disc_f": valuation(disc, 2), "v2_disc_K_times_3": 3 * valuation(dK, 2), "v2_excess": v2}
        checks.append(Check("unramified_at_2", PASS if v2 == 0 else INCONCLUSIVE, at2))
    return AuditReport(subject, checks)


# ---------------------------------------------------------------------------
# embedded records


def table1_records() -> list[TableFieldRecord]:
    return [
        TableFieldRecord(row["d"], IntPolynomial.parse(row["polynomial"]), row["h"], tuple(row["efg"]), 2)
        for row in load_data()["table1"]
    ]


def p3field_record() -> TableFieldRecord:
    row = load_data()["p3field"]
    return TableFieldRecord(row["d"], IntPolynomial.parse(row["polynomial"]), row["h"], tuple(row["efg"]), 3)


def table2_records() -> list[SexticRecord]:
    return [
        SexticRecord(row["d"], IntPolynomial.parse(row["polynomial"]), row["ramification"])
        for row in load_data()["table2"]
    ]
