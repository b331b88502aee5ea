import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import short_weierstrass_disc, sympy_is_square_in_K, sympy_roots_in_K
from quadgal.curves import (
    RATIONALITY_FIELDS,
    CurveModel,
    QuadElement,
    SingularCurve,
    admissibility_lookup,
    cubic_roots_in_K,
    good_away_from_two_samples,
    is_subgroup_image,
    nonexistence_report,
    odd_reduction_audit,
    random_unimodular_change,
    setzer_admissible,
    two_division_cubic,
    two_torsion_field,
    two_torsion_image_over_Q,
    two_torsion_rationality_audit,
)
from quadgal.quadratic import QuadraticField
from quadgal.quadratic.field import DomainError

FIELDS = list(RATIONALITY_FIELDS)
small = st.integers(-6, 6)
elements = st.tuples(small, small)


def Q(d, a, b=0):
    return QuadElement(d, a, b)


# -- field arithmetic --------------------------------------------------------------------


@given(st.sampled_from(FIELDS + [7, -7, 13]), elements, elements.filter(lambda x: x != (0, 0)))
def test_division_inverts_multiplication(d, x, y):
    a, b = Q(d, *x), Q(d, *y)
    assert (a * b) / b == a
    assert (a * b).norm() == a.norm() * b.norm()
    assert b ** -2 * b ** 2 == Q(d, 1)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FIELDS + [7, -7, 13]), elements)
def test_square_detection_matches_sympy(d, x):
    z = Q(d, *x)
    u, v = z.surd()
    assert z.is_square() == sympy_is_square_in_K(d, u, v)
    sq = z * z
    r = sq.sqrt()
    assert r is not None and r * r == sq


def test_surd_round_trip():
    z = Q(5, 3, 7)
    assert QuadElement.from_surd(5, *z.surd()) == z


# -- invariants ------------------------------------------------------------------------------


def test_known_discriminants():
    assert CurveModel.short(-1, -1, 0).disc == Q(-1, 64)
    assert CurveModel.short(-1, 0, -1).disc == Q(-1, -432)
    assert CurveModel.short(2, 1, 1).disc == Q(2, -496)


@given(st.sampled_from(FIELDS), elements, elements)
def test_short_disc_matches_formula(d, A, B):
    a, b = Q(d, *A), Q(d, *B)
    want = -16 * (4 * a ** 3 + 27 * b * b)
    if want.is_zero():
        with pytest.raises(SingularCurve):
            CurveModel.short(d, a, b)
        return
    assert CurveModel.short(d, a, b).disc == want
    if A[1] == 0 and B[1] == 0:
        assert want == Q(d, short_weierstrass_disc(A[0], B[0]))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.lists(elements, min_size=5, max_size=5), st.lists(elements, min_size=3, max_size=3), elements.filter(lambda x: x != (0, 0)))
def test_model_change_scales_the_invariants(d, coeffs, rst, u):
    try:
        E = CurveModel.from_coeffs(d, *(Q(d, *c) for c in coeffs))
    except SingularCurve:
        return
    uu = Q(d, *u)
    E2 = E.change(uu, *(Q(d, *c) for c in rst))
    assert E2.disc * uu ** 12 == E.disc
    assert E2.invariants.c4 * uu ** 4 == E.invariants.c4
    assert E2.invariants.c6 * uu ** 6 == E.invariants.c6


def test_singular_curve_is_rejected():
    with pytest.raises(SingularCurve):
        CurveModel.short(-1, 0, 0)


def test_json_round_trip():
    E = CurveModel.from_coeffs(5, Q(5, 1, 1), 0, Q(5, 0, 1), -1, Q(5, 2))
    assert CurveModel.from_json(E.as_dict()) == E


# -- odd reduction ---------------------------------------------------------------------------


def test_congruent_number_curve_over_gaussian_field():
    rep = odd_reduction_audit(CurveModel.short(-1, -1, 0))
    assert rep.norm_disc == 64**2 and rep.primes == [] and rep.good_away_from_2


def test_scaled_model_is_recovered():
    rep = odd_reduction_audit(CurveModel.short(-1, -81, 0))
    (v,) = rep.primes
    assert v.p == 3 and v.verdict == "good_after_model_change" and v.scalings == ["3"]


def test_a_bad_prime_stays_bad():
    rep = odd_reduction_audit(CurveModel.short(2, 1, 1))
    assert [(v.p, v.verdict) for v in rep.primes] == [(31, "bad_unresolved")]
    assert not rep.good_away_from_2


def test_mordell_curve_is_bad_at_three():
    # y^2 = x^3 - 729 rescales to y^2 = x^3 - 1, whose discriminant is still divisible by 3
    rep = odd_reduction_audit(CurveModel.short(-1, 0, -729))
    assert not rep.good_away_from_2


@pytest.mark.parametrize("d", FIELDS)
def test_verdicts_invariant_under_model_changes(d):
    rng = random.Random(1000 + d)
    base = [CurveModel.short(d, -1, 0), CurveModel.short(d, 1, 1), CurveModel.from_coeffs(d, 1, -1, 0, -1, 0)]
    for E in base:
        ref = two_torsion_rationality_audit(E)
        for _ in range(50 // len(FIELDS) + 1):
            E2 = random_unimodular_change(E, rng)
            got = two_torsion_rationality_audit(E2)
            assert got.verdict == ref.verdict
            assert got.reduction.good_away_from_2 == ref.reduction.good_away_from_2
            if ref.two_torsion:
                assert got.two_torsion.image == ref.two_torsion.image


# -- two-torsion ------------------------------------------------------------------------------


def _cubic_surd_coeffs(E):
    A, B, C = two_division_cubic(E)
    return [C.surd(), B.surd(), A.surd(), (1, 0)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS + [7, -7]), elements, elements)
def test_roots_in_K_match_sympy(d, A, B):
    try:
        E = CurveModel.short(d, Q(d, *A), Q(d, *B))
    except SingularCurve:
        return
    tt = two_torsion_field(E)
    assert len(tt.roots) == sympy_roots_in_K(d, _cubic_surd_coeffs(E))


def test_named_images():
    assert two_torsion_field(CurveModel.short(2, 0, -2)).image == "S3"
    assert two_torsion_field(CurveModel.from_coeffs(5, 0, 1, 0, 1, 0)).image == "C2"
    assert two_torsion_field(CurveModel.short(-1, -1, 0)).image == "trivial"
    # y^2 = x^3 - 3x + 1: cyclic cubic, discriminant 81
    assert two_torsion_image_over_Q(CurveModel.short(2, -3, 1)) == "C3"


def test_cubic_roots_over_real_field():
    roots = cubic_roots_in_K(QuadraticField(5), 0, -5, 0)
    # x^3 - 5x = x (x - sqrt 5)(x + sqrt 5)
    assert len(roots) == 3


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_image_over_K_embeds_in_image_over_Q(d, a2, a4, a6):
    try:
        E = CurveModel.from_coeffs(d, 0, a2, 0, a4, a6)
    except SingularCurve:
        return
    assert is_subgroup_image(two_torsion_field(E).image, two_torsion_image_over_Q(E))


def test_audit_examples():
    assert two_torsion_rationality_audit(CurveModel.short(-1, -1, 0)).verdict == "consistent"
    assert two_torsion_rationality_audit(CurveModel.short(-1, -81, 0)).verdict == "consistent"
    assert two_torsion_rationality_audit(CurveModel.short(2, 1, 1)).verdict == "not_applicable"


def test_audit_domain():
    with pytest.raises(DomainError):
        two_torsion_rationality_audit(CurveModel.short(7, -1, 0))
    with pytest.raises(DomainError):
        two_torsion_rationality_audit(CurveModel.short(-1, -1, 0), d=2)


@pytest.mark.parametrize("d", FIELDS)
def test_fuzz_campaign_finds_no_inconsistency(d):
    rng = random.Random(d)
    curves = good_away_from_two_samples(d, rng, 6)
    assert curves
    for E in curves:
        # also hide the good model behind an odd-prime scaling
        for scaled in (E, E.change(Fraction(1, 3)), E.change(Fraction(1, 5))):
            audit = two_torsion_rationality_audit(scaled)
            assert audit.reduction.good_away_from_2
            assert audit.verdict == "consistent"


# -- admissibility and nonexistence ------------------------------------------------------------


def test_nonexistence_holds_exactly_for_eight_fields():
    got = {d for d in FIELDS if nonexistence_report(d)["conclusion"] == "nonexistence"}
    assert got == {5, 3, 2, -1, -2, -3, -5, -6}


@pytest.mark.parametrize("d,conclusion", [(6, "admissible_curve_exists"), (7, "admissible_curve_exists"), (65, "admissible_curve_exists"), (-65, "admissible_curve_exists"), (-455, "no_claim"), (101, "no_claim")])
def test_other_conclusions(d, conclusion):
    assert nonexistence_report(d)["conclusion"] == conclusion


def test_setzer_rule_by_hand():
    assert setzer_admissible(-65)["admissible"]
    assert not setzer_admissible(-1)["admissible"]
    # -455 = 65 * -7 and -7 is not a square mod 5
    ev = setzer_admissible(-455)
    assert ev["d1"] == -7 and not ev["d1_square_mod_5"] and not ev["admissible"]
    with pytest.raises(DomainError):
        setzer_admissible(5)


def test_lookup_outside_tabulated_range():
    assert admissibility_lookup(101)["covered"] is False


def test_nonexistence_domain():
    with pytest.raises(DomainError):
        nonexistence_report(12)
    with pytest.raises(DomainError):
        nonexistence_report(1)
