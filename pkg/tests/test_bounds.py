from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from oracles import closed_form_minimum, kind_of
from quadgal import bounds as B

CHAINS = B.LITERAL_CHAINS

# printed values, copied from the published chains
PRINTED = {
    "p2_ramified_wild": {"x0": 375.923, "log": 3.21525, "abs": 24.9},
    "p2_inert_wild": {"x0": 500.385, "log": 2.011863, "abs": 7.477},
    "p3_ramified_wild": {"x0": 249.041, "log": 1.749, "abs": 5.7},
}


# -- exact local bounds ------------------------------------------------------


@pytest.mark.parametrize("e", range(1, 100, 2))
def test_unramified_base_equals_tame_plus_wild(e):
    for m in range(1, 21):
        composed = B.tame_different(e) + B.wild_layer_different(2, e, m)
        assert B.unramified_base_different(e, m).c == composed.c


@pytest.mark.parametrize("e", [e for e in range(1, 99) if e % 3])
def test_p3_bound_equals_tame_plus_wild_over_ramified_base(e):
    for m in range(1, 11):
        composed = B.tame_different(e, base_e=2) + B.wild_layer_different(3, e, m, base_e=2)
        assert B.p3_ramified_different(e, m).c == composed.c


def test_small_cases_by_hand():
    # e = 1, m = 1: 3 - 1 - 1/2
    assert B.unramified_base_different(1, 1).c == Fraction(3, 2)
    # 9/4 - 1
    assert B.ramified_base_different(1).c == Fraction(5, 4)
    # e = 1, m = 1: 2 - 1/2 - 1/6
    assert B.p3_ramified_different(1, 1).c == Fraction(4, 3)


@given(st.integers(1, 200).filter(lambda e: e % 2), st.integers(1, 40))
def test_local_bounds_increase_to_their_suprema(e, m):
    u = B.unramified_base_different(e, m).c
    assert u < B.unramified_base_different(e, m + 1).c < 3
    r = B.ramified_base_different(m).c
    assert r < B.ramified_base_different(m + 1).c < Fraction(9, 4)


@given(st.integers(1, 200).filter(lambda e: e % 3), st.integers(1, 30))
def test_p3_bound_below_two(e, m):
    assert B.p3_ramified_different(e, m).c < 2


def test_invalid_local_inputs():
    with pytest.raises(ValueError):
        B.unramified_base_different(2, 1)
    with pytest.raises(ValueError):
        B.p3_ramified_different(3, 1)
    with pytest.raises(ValueError):
        B.wild_layer_different(2, 1, 0)


# -- analytic side -------------------------------------------------------------


@pytest.mark.parametrize("chain", CHAINS)
def test_literal_minimizer_matches_closed_form(chain):
    r = B.literal_threshold(chain)
    x0, fmin = closed_form_minimum(float(r.constant), float(r.A), float(r.B))
    assert float(r.minimizer_x0) == pytest.approx(x0, rel=1e-12)
    assert float(r.log_threshold) == pytest.approx(fmin, rel=1e-12)


@pytest.mark.parametrize("chain", CHAINS)
def test_literal_chain_against_printed_values(chain):
    r = B.literal_threshold(chain)
    pr = PRINTED[chain]
    assert float(r.minimizer_x0) == pytest.approx(pr["x0"], abs=0.5 if chain.startswith("p3") else 0.01)
    assert float(r.abs_threshold) >= pr["abs"]  # printed thresholds are rounded down or truncated


@pytest.mark.parametrize("chain", CHAINS)
def test_enclosure_contains_point_value(chain):
    r = B.literal_threshold(chain)
    lo, hi = r.log_threshold_interval
    assert lo <= r.log_threshold <= hi
    assert float(hi - lo) < 1e-20


@pytest.mark.parametrize("chain", CHAINS)
def test_integer_scan_stays_above_threshold(chain):
    r = B.literal_threshold(chain, scan_to=200_000)
    assert r.integer_scan["all_at_or_above_threshold"]


def test_recomputed_ramified_threshold_uses_sup_nine_quarters():
    r = B.exclusion_threshold(B.BoundScenario(2, "ramified", "wild"))
    assert float(r.abs_threshold) == pytest.approx(20.947204, abs=1e-5)
    assert r.excluded_d == [-4, -8, 8, 12, -20]


def test_recomputed_inert_and_p3_thresholds():
    inert = B.exclusion_threshold(B.BoundScenario(2, "inert", "wild"))
    assert float(inert.abs_threshold) == pytest.approx(7.4773921, abs=1e-6)
    p3 = B.exclusion_threshold(B.BoundScenario(3, "ramified", "wild"))
    assert float(p3.abs_threshold) == pytest.approx(5.7502474, abs=1e-6)


def test_tame_threshold():
    r = B.tame_exclusion(B.BoundScenario(2, "ramified", "tame"))
    assert float(r.log_threshold) == pytest.approx(4.9593589, abs=1e-6)
    # every ramified-at-2 field of the list is far inside the tame range
    assert {-4, -8, 8, 12, -20, -24, 24} <= set(r.excluded_d)


def test_split_scenario_is_unsupported():
    with pytest.raises(B.UnsupportedScenario):
        B.exclusion_threshold(B.BoundScenario(2, "split", "wild"))


def test_precision_refines_without_changing_the_value():
    lo = B.literal_threshold("p2_ramified_wild", precision=30)
    hi = B.literal_threshold("p2_ramified_wild", precision=60)
    with mp.workdps(60):
        assert abs(hi.log_threshold - lo.log_threshold) < mpf(10) ** -27
    assert lo.excluded_d == hi.excluded_d


def test_odlyzko_lower_increases_with_degree():
    vals = [B.odlyzko_lower(n) for n in (10, 100, 1000, 10**6)]
    assert vals == sorted(vals)
    with mp.workdps(30):
        assert vals[-1] < mp.euler + mp.log(4 * mp.pi)


def _is_fundamental(D):
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return all(e == 1 for e in sympy.factorint(abs(D)).values())
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and all(e == 1 for e in sympy.factorint(abs(m)).values())
    return False


@pytest.mark.parametrize("p,kind", [(2, "ramified"), (2, "inert"), (3, "ramified")])
def test_fundamental_discriminants_below_brute_force(p, kind):
    bound = 60
    got = B.fundamental_discriminants_below(bound, p, kind)  # strict |D| < bound
    want = [D for D in range(-bound + 1, bound) if _is_fundamental(D)]
    want = [D for D in want if kind_of(D if D % 4 == 1 else D // 4, p) == kind]
    assert sorted(got, key=lambda D: (abs(D), D)) == sorted(want, key=lambda D: (abs(D), D))


def test_discrepancy_notes_cover_the_known_items():
    ids = {n["id"] for n in B.discrepancy_notes()}
    assert {
        "ramified-p2-different-sup",
        "ramified-p2-tame-range",
        "p3-malformed-A",
        "p3-threshold-rounding",
        "lower-bound-constant",
        "inert-p2-log-threshold",
    } <= ids


@settings(max_examples=30, deadline=None)
@given(st.floats(1, 200), st.floats(1, 20))
def test_minimize_ratio_is_a_minimum(A, Bc):
    m = B.minimize_ratio(A, Bc, 1)
    f = B.ratio_function(A, Bc)
    x = float(m.argmin)
    for t in (0.5, 0.9, 1.1, 2.0):
        if x * t >= 1:
            assert f(x * t) >= m.f_min - mpf(10) ** -20


def test_odlyzko_lower_at_120_against_direct_evaluation():
    import math

    direct = 0.5772156649015329 + math.log(4 * math.pi) - 6.860404 / 120 ** (2 / 3)
    assert float(B.odlyzko_lower(120)) == pytest.approx(direct, abs=1e-12)


def test_minimize_ratio_trivial_and_domain():
    m = B.minimize_ratio(1, 1, 0)
    assert m.x0 == mpf("3.375") and m.interior
    with pytest.raises(ValueError):
        B.minimize_ratio(-1, 1, 0)
    with pytest.raises(ValueError):
        B.minimize_ratio(1, 0, 0)
