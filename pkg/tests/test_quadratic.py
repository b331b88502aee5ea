from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    brute_class_number_imaginary,
    brute_fundamental_unit,
    brute_unit_count,
    brute_unit_p_rank,
    kind_of,
    qmul,
    qnorm,
)
from quadgal.quadratic import NINE_FIELDS, QuadraticField, class_group, fundamental_unit, unit_group
from quadgal.quadratic.field import DomainError, splitting_of_prime
from quadgal.quadratic.forms import BinaryQuadraticForm, compose, narrow_wide_consistent, reduce_form
from quadgal.quadratic.rayclass import (
    UnsupportedPrime,
    check_rank_stabilization,
    expected_unit_count,
    is_power_of,
    local_degrees,
    nakagoshi_rank,
    ray_class_group,
    residue_ring_units,
    verify_q_group_rays,
    zeta_p_in_completion,
)

squarefree_d = st.integers(-300, 300).filter(lambda d: d not in (0, 1) and sympy.factorint(abs(d)) and all(e == 1 for e in sympy.factorint(abs(d)).values()))


def nonsplit(d, p):
    return kind_of(d, p) != "split"


# -- fields and units ------------------------------------------------------------


def test_field_basics():
    K = QuadraticField(-1)
    assert K.disc == -4 and K.signature == (0, 1)
    assert QuadraticField(5).disc == 5
    with pytest.raises(DomainError):
        QuadraticField(12)
    with pytest.raises(DomainError):
        QuadraticField(1)


@given(squarefree_d, st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_splitting_matches_oracle(d, p):
    assert splitting_of_prime(QuadraticField(d), p).kind == kind_of(d, p)


@given(squarefree_d, st.tuples(st.integers(-20, 20), st.integers(-20, 20)), st.tuples(st.integers(-20, 20), st.integers(-20, 20)))
def test_norm_is_multiplicative(d, x, y):
    K = QuadraticField(d)
    a, b = K.element(*x), K.element(*y)
    assert (a * b).norm() == a.norm() * b.norm()
    assert ((a * b).a, (a * b).b) == qmul(d, x, y)
    assert a.norm() == qnorm(d, x)


@pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 13, 19, 21, 29, 34, 46, 61, 94])
def test_fundamental_unit_matches_pell_search(d):
    eps = fundamental_unit(QuadraticField(d))
    u, v = eps.half_coords()
    bu, bv, sign = brute_fundamental_unit(d)
    assert (Fraction(u, 2), Fraction(v, 2)) == (bu, bv)
    assert eps.norm() == sign


def test_fundamental_unit_of_61():
    assert fundamental_unit(QuadraticField(61)) == QuadraticField(61).element(17, 5)


def test_torsion_units():
    assert unit_group(QuadraticField(-1)).torsion_order == 4
    assert unit_group(QuadraticField(-3)).torsion_order == 6
    assert unit_group(QuadraticField(-5)).torsion_order == 2
    w = QuadraticField(-3).omega
    assert w**6 == QuadraticField(-3).element(1) and w**3 != QuadraticField(-3).element(1)


# -- forms and class groups --------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(squarefree_d.filter(lambda d: d < 0))
def test_imaginary_class_numbers_match_form_count(d):
    K = QuadraticField(d)
    assert class_group(K).order == brute_class_number_imaginary(K.disc)


@pytest.mark.parametrize(
    "d,h,h_narrow",
    # class numbers of real quadratic fields from standard tables
    [(2, 1, 1), (3, 1, 2), (5, 1, 1), (6, 1, 2), (10, 2, 2), (15, 2, 4), (34, 2, 4), (79, 3, 6), (82, 4, 4)],
)
def test_real_class_numbers(d, h, h_narrow):
    G = class_group(QuadraticField(d))
    assert G.order == h
    assert G.narrow_order == h_narrow


def test_class_number_of_minus_455():
    assert class_group(QuadraticField(-455)).order == 20


@settings(max_examples=40, deadline=None)
@given(squarefree_d)
def test_narrow_and_wide_groups_agree_with_the_unit_norm(d):
    assert narrow_wide_consistent(QuadraticField(d))


@settings(max_examples=40, deadline=None)
@given(squarefree_d, st.randoms())
def test_composition_is_associative_and_commutative(d, rng):
    G = class_group(QuadraticField(d))
    f, g, h = (rng.choice(G.narrow_elements) for _ in range(3))
    assert G.mul(f, g) == G.mul(g, f)
    assert G.mul(G.mul(f, g), h) == G.mul(f, G.mul(g, h))
    assert G.mul(f, G.inverse(f)) == G.identity
    assert G.mul(f, G.identity) == f


def test_compose_preserves_discriminant():
    f = BinaryQuadraticForm(2, 2, 3)  # disc -20
    g = compose(f, f)
    assert g.disc == -20
    assert reduce_form(g) == BinaryQuadraticForm(1, 0, 5)


# -- residue rings ----------------------------------------------------------------


def _nonsplit_cases(kmax):
    for d in NINE_FIELDS:
        for p in (2, 3):
            if nonsplit(d, p):
                for k in range(1, kmax + 1):
                    yield d, p, k


@pytest.mark.parametrize("d,p,k", list(_nonsplit_cases(4)))
def test_residue_units_match_brute_force(d, p, k):
    R = residue_ring_units(QuadraticField(d), p, k)
    assert R.order == brute_unit_count(d, p, k)
    assert R.q_rank(p) == brute_unit_p_rank(d, p, k)
    e, f = local_degrees(QuadraticField(d), p)
    assert R.order == expected_unit_count(p, f, k)


@pytest.mark.parametrize("d,p,n", [(d, p, k - 1) for d, p, k in _nonsplit_cases(6)])
def test_rank_formula_matches_enumeration(d, p, n):
    K = QuadraticField(d)
    e, f = local_degrees(K, p)
    formula = nakagoshi_rank(p, e, f, n, zeta_p_in_completion(K, p))
    assert formula == residue_ring_units(K, p, n + 1).q_rank(p)


def test_split_prime_is_unsupported():
    with pytest.raises(UnsupportedPrime):
        residue_ring_units(QuadraticField(-7), 2, 1)


def test_zeta_3_in_completion():
    assert zeta_p_in_completion(QuadraticField(-3), 3)
    assert not zeta_p_in_completion(QuadraticField(3), 3)
    assert zeta_p_in_completion(QuadraticField(6), 3)  # -6/3 = -2 is 1 mod 3


# -- ray class groups ---------------------------------------------------------------


def _brute_ray_order(d, p, k):
    """h * |(O/P^k)^*| * 2^r / |image of the units|, image counted by brute force."""
    from quadgal.quadratic.rayclass import MiddleGroup

    K = QuadraticField(d)
    r = 2 if K.is_real else 0
    M = MiddleGroup(K, p, k, r, 10**6)
    U = unit_group(K)
    torsion = [U.torsion_generator**i for i in range(U.torsion_order)]
    tors = {M.image(t) for t in torsion}
    n = 1
    if U.fundamental is not None:
        # smallest n with eps^n landing in the torsion image
        x = U.fundamental
        while M.image(x) not in tors:
            x = x * U.fundamental
            n += 1
    return class_group(K).order * brute_unit_count(d, p, k) * 2**r // (len(tors) * n)


@pytest.mark.parametrize("d,p,k", [c for c in _nonsplit_cases(5) if c[1] == 2 or c[0] == -3])
def test_ray_class_orders_match_exact_sequence(d, p, k):
    R = ray_class_group(QuadraticField(d), p, k)
    assert R.exactness_holds
    assert R.order == _brute_ray_order(d, p, k)
    if R.invariant_factors is not None:
        prod = 1
        for n in R.invariant_factors:
            prod *= n
        assert prod == R.order


@pytest.mark.parametrize("d", NINE_FIELDS)
def test_two_power_orders_over_the_nine_fields(d):
    chk = verify_q_group_rays(d, 2, 5)
    assert all(v["is_q_group"] for v in chk.per_k.values())


def test_three_power_orders_at_three_over_minus_three():
    chk = verify_q_group_rays(-3, 3, 5)
    assert [v["order"] for v in chk.per_k.values()] == [1, 1, 3, 9, 27]


@pytest.mark.parametrize("d", [5, -3])
def test_no_three_torsion_at_two(d):
    assert ray_class_group(QuadraticField(d), 2, 1, True).q_ranks[3] == 0


@pytest.mark.parametrize("d", NINE_FIELDS)
def test_rank_stabilizes_by_five(d):
    res = check_rank_stabilization(QuadraticField(d), 2)
    assert res["within_limit"]


def test_class_group_extension_for_nontrivial_class_group():
    R = ray_class_group(QuadraticField(-5), 2, 3)
    assert R.method.startswith("cyclic extension")
    assert R.class_number == 2


def test_is_power_of():
    assert is_power_of(1, 2) and is_power_of(64, 2) and not is_power_of(12, 2)
