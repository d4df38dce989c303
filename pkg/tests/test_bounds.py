"""Tests for exact progression sums and the rigorous bound checkers."""

import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffprog.arithfun import d_k, mobius, vonmangoldt
from ffprog.bounds import (
    bound_estimate,
    constant_class_weight,
    coprime_mean,
    holds_up_to_sqrt,
    odd_character_weight_identity,
    one_level_density,
    progression_sum,
    verify_main_bound,
    verify_moment_bound,
    verify_named_bounds,
    vonmangoldt_total,
    _class_sum_eft,
    _scaled_pair,
)
from ffprog.dirichlet import characters, euler_phi, unit_group
from ffprog.field import make_field
from ffprog.polyring import Poly, enumerate_monic, factor, poly_from_string
from ffprog.symrep import (
    irreducible_character,
    partitions,
    sign_rep,
    tensor_power_rep,
    trivial_rep,
)

F2 = make_field(2)
F3 = make_field(3)
F5 = make_field(5)


def P(field, text):
    return poly_from_string(field, text)


def squarefree_monic(field, degree):
    return [
        g
        for g in enumerate_monic(field, degree)
        if all(e == 1 for _, e in factor(g))
    ]


# -- exact sqrt comparison ------------------------------------------------------


def test_holds_up_to_sqrt_exact_edges():
    # sqrt(4) = 2 exactly: 2 <= 0 + 1*sqrt(4) is tight
    assert holds_up_to_sqrt(2, 0, 1, 4)
    assert not holds_up_to_sqrt(Fraction(201, 100), 0, 1, 4)
    # 3 <= 1 + sqrt(3) is false: (3-1)^2 = 4 > 3
    assert not holds_up_to_sqrt(3, 1, 1, 3)
    # 2.7 <= 1 + sqrt(3) ~ 2.732: (1.7)^2 = 2.89 <= 3
    assert holds_up_to_sqrt(Fraction(27, 10), 1, 1, 3)
    assert holds_up_to_sqrt(-5, 0, 0, 7)
    with pytest.raises(ValueError):
        holds_up_to_sqrt(1, 0, -1, 2)


@settings(max_examples=200, deadline=None)
@given(
    lhs=st.fractions(min_value=0, max_value=1000),
    a=st.fractions(min_value=0, max_value=1000),
    b=st.fractions(min_value=0, max_value=100),
    q=st.integers(min_value=2, max_value=97),
)
def test_holds_up_to_sqrt_against_high_precision(lhs, a, b, q):
    getcontext().prec = 60
    rhs = Decimal(a.numerator) / Decimal(a.denominator) + (
        Decimal(b.numerator) / Decimal(b.denominator)
    ) * Decimal(q).sqrt()
    margin = Decimal("1e-40")
    lhs_dec = Decimal(lhs.numerator) / Decimal(lhs.denominator)
    if lhs_dec <= rhs - margin:
        assert holds_up_to_sqrt(lhs, a, b, q)
    elif lhs_dec >= rhs + margin:
        assert not holds_up_to_sqrt(lhs, a, b, q)


def test_scaled_pair_matches_float():
    for q in (2, 3, 5):
        for half in (-3, -2, -1, 0, 1, 2, 5):
            a, b = _scaled_pair(3, 2, q, half)
            expect = (3 + 2 * math.sqrt(q)) * q ** (half / 2)
            assert math.isclose(float(a) + float(b) * math.sqrt(q), expect, rel_tol=1e-12)
            assert a >= 0 and b >= 0


def test_bound_estimate_never_below_float_value():
    for q in (2, 3, 5, 7):
        v = bound_estimate(Fraction(7, 3), Fraction(5, 2), q)
        assert v >= float(Fraction(7, 3)) + float(Fraction(5, 2)) * math.sqrt(q)


# -- exact progression sums -----------------------------------------------------


def test_progression_sum_mobius_frozen_example():
    # monic quadratics over F_2 with f(0) = 1: t^2+1 = (t+1)^2 has mu = 0,
    # t^2+t+1 is prime with mu = -1
    assert progression_sum(mobius, 2, Poly.x(F2), Poly.one(F2)) == -1


def test_progression_sum_frozen_grid_values():
    g = P(F3, "0,1") * P(F3, "1,1")
    expected = {
        "1": (-1, 19, 28),
        "2": (-2, 20, 28),
        "1,2": (-2, 20, 28),
        "2,1": (-2, 20, 28),
    }
    for a_text, (mu_sum, lam_sum, d2_sum) in expected.items():
        a = P(F3, a_text)
        assert progression_sum(mobius, 4, g, a) == mu_sum
        assert progression_sum(vonmangoldt, 4, g, a) == lam_sum
        assert progression_sum(lambda f: d_k(f, 2), 4, g, a) == d2_sum
    assert coprime_mean(mobius, 4, g) == Fraction(-7, 4)
    assert coprime_mean(lambda f: d_k(f, 2), 4, g) == 28


def test_progression_sum_preconditions():
    with pytest.raises(ValueError):
        progression_sum(mobius, 2, P(F3, "0,0,1"), Poly.one(F3))  # t^2 not squarefree
    with pytest.raises(ValueError):
        progression_sum(mobius, 1, P(F3, "0,1") * P(F3, "1,1"), Poly.one(F3))  # n < m
    with pytest.raises(ValueError):
        progression_sum(mobius, 3, P(F3, "0,1"), Poly.x(F3))  # a not coprime
    with pytest.raises(ValueError):
        progression_sum(mobius, 2, P(F3, "1,2"), Poly.one(F3))  # not monic
    with pytest.raises(ValueError):
        coprime_mean(mobius, 2, Poly.one(F3))  # constant modulus


def test_partition_of_coprime_set():
    g = P(F3, "1,0,1")
    for F in (mobius, vonmangoldt, lambda f: d_k(f, 2)):
        total = sum(progression_sum(F, 3, g, a) for a in unit_group(g).units())
        assert Fraction(total, euler_phi(g)) == coprime_mean(F, 3, g)


def test_fast_class_sums_match_brute_enumeration():
    from ffprog.arithfun import d_k_eft, mobius_eft, vonmangoldt_eft

    for field in (F2, F3):
        for m in (1, 2):
            for g in squarefree_monic(field, m):
                for a in unit_group(g).units():
                    for n in range(m, 5):
                        assert _class_sum_eft(mobius_eft, n, g, a) == progression_sum(
                            mobius, n, g, a
                        )
                        assert _class_sum_eft(
                            vonmangoldt_eft, n, g, a
                        ) == progression_sum(vonmangoldt, n, g, a)
                        assert _class_sum_eft(
                            lambda w: d_k_eft(w, 2), n, g, a
                        ) == progression_sum(lambda f: d_k(f, 2), n, g, a)


def test_vonmangoldt_total_is_q_power():
    for field in (F2, F3, make_field(2, 2), F5):
        for n in range(1, 6):
            assert vonmangoldt_total(field, n) == field.q**n


# -- main progression bound -----------------------------------------------------


def test_trivial_representation_report():
    for field, n, g_text in ((F2, 4, "0,1"), (F3, 3, "1,1"), (F3, 4, "1,0,1")):
        g = P(field, g_text)
        rep = verify_main_bound(trivial_rep(n), n, g, Poly.one(field))
        assert rep.class_sum == field.q ** (n - g.degree)
        assert rep.coprime_mean == rep.class_sum
        assert rep.error == 0
        assert rep.constant_case
        assert rep.main_ok and rep.refined_ok and rep.all_ok


def test_part_at_least_m_gives_exact_equidistribution():
    # any irreducible with some part >= deg g: C1 = C2 = 0 and the class sum
    # is literally independent of the class
    g = P(F3, "1,0,1")
    m = g.degree
    n = 5
    for mu in partitions(n):
        if max(mu) < m:
            continue
        rho = irreducible_character(mu)
        sums = set()
        for a in unit_group(g).units():
            rep = verify_main_bound(rho, n, g, a)
            assert rep.c1 == 0 and rep.c2 == 0
            assert rep.constant_case
            assert rep.error == 0
            assert rep.main_ok
            sums.add(rep.class_sum)
        assert len(sums) == 1


def test_alt_bound_applicability():
    g = P(F3, "1,0,1")  # m = 2
    n = 5
    rep = verify_main_bound(irreducible_character((1,) * n), n, g, Poly.one(F3))
    assert rep.alt_bound is not None and rep.alt_ok
    assert rep.mean_ok is True
    rep = verify_main_bound(trivial_rep(n), n, g, Poly.one(F3))
    assert rep.alt_bound is None and rep.alt_ok is None
    assert rep.mean_ok is None  # has a part >= m: offset bound not claimed
    # genuine but reducible with all parts < m: no alt bound, mean bound holds
    rho = irreducible_character((1, 1)) + irreducible_character((1, 1))
    rep = verify_main_bound(rho, 2, g, Poly.one(F3))
    assert rep.alt_bound is None
    assert rep.mean_ok is True


def test_main_bound_exhaustive_small_grid():
    for field in (F2, F3):
        for m in (1, 2):
            for g in squarefree_monic(field, m):
                grp = unit_group(g)
                for n in range(m, 6):
                    for mu in partitions(n):
                        rho = irreducible_character(mu)
                        for a in grp.units():
                            rep = verify_main_bound(rho, n, g, a)
                            assert rep.all_ok, rep


def test_main_bound_rejects_bad_input():
    g = P(F3, "1,0,1")
    with pytest.raises(ValueError):
        verify_main_bound(trivial_rep(3), 4, g, Poly.one(F3))  # degree mismatch
    with pytest.raises(ValueError):
        verify_main_bound(
            irreducible_character((2,)) - irreducible_character((1, 1)),
            2,
            g,
            Poly.one(F3),
        )  # virtual
    with pytest.raises(ValueError):
        verify_main_bound(trivial_rep(1), 1, g, Poly.one(F3))  # n < m


def test_report_serialization_round_trip():
    import json

    rep = verify_main_bound(sign_rep(4), 4, P(F3, "1,0,1"), Poly.one(F3))
    data = rep.to_dict()
    blob = json.loads(json.dumps(data, sort_keys=True))
    assert blob["q"] == 3 and blob["n"] == 4 and blob["m"] == 2
    assert blob["function"] == "irrep[1,1,1,1]"
    assert isinstance(blob["main_ok"], bool)


# -- named closed-form bounds ---------------------------------------------------


def test_named_bounds_hold_on_reference_grid():
    g = P(F3, "0,1") * P(F3, "1,1")
    units = list(unit_group(g).units())
    for kind in ("mobius", "primes", "divisor"):
        for n in range(4, 7):
            for a in units:
                rep = verify_named_bounds(kind, 3, n, g, a)
                assert rep.ok, rep
                assert rep.cross_check_ok, rep


def test_named_bound_frozen_values():
    g = P(F3, "0,1") * P(F3, "1,1")
    rep = verify_named_bounds("mobius", 3, 4, g, Poly.one(F3))
    assert rep.class_sum == -1 and rep.reference == 0 and rep.error == 1
    rep = verify_named_bounds("primes", 3, 4, g, Poly.one(F3))
    assert rep.class_sum == 19
    assert rep.reference == Fraction(81, 4)
    assert rep.error == Fraction(5, 4)
    rep = verify_named_bounds("divisor", 3, 4, g, Poly.one(F3), k=2)
    assert rep.class_sum == 28 and rep.error == 0


def test_named_bound_errors():
    with pytest.raises(ValueError):
        verify_named_bounds("mobius", 3, 3, P(F3, "0,1"), Poly.one(F3))  # m = 1
    with pytest.raises(ValueError):
        verify_named_bounds("primes", 3, 3, P(F3, "0,1"), Poly.one(F3))  # m = 1
    g = P(F3, "1,0,1")
    with pytest.raises(ValueError):
        verify_named_bounds("divisor", 3, 3, g, Poly.one(F3), k=0)
    with pytest.raises(ValueError):
        verify_named_bounds("unknown", 3, 3, g, Poly.one(F3))
    with pytest.raises(ValueError):
        verify_named_bounds("mobius", 5, 3, g, Poly.one(F3))  # wrong q


def test_divisor_bound_m1_and_k1_degenerate_cases():
    # k = 1: d_1 = 1 distributes exactly uniformly; bound reduces to 0
    g = P(F3, "1,0,1")
    for n in (2, 3, 4):
        rep = verify_named_bounds("divisor", 3, n, g, Poly.one(F3), k=1)
        assert rep.error == 0 and rep.ok
    # m = 1 divisor bound is allowed and must hold
    for n in (1, 2, 3, 4):
        rep = verify_named_bounds("divisor", 3, n, P(F3, "0,1"), Poly.one(F3), k=2)
        assert rep.ok, rep


# -- moment inequality ----------------------------------------------------------


def test_moment_bound_reference_cases():
    g = P(F3, "1,0,1")
    rep = verify_moment_bound(g, Poly.one(F3), 0.5, 2)
    assert rep.ok and rep.lhs <= rep.rhs
    assert rep.main_term == euler_phi(g)  # a = 1: phi * q^0 * d_k(1)
    a = P(F3, "2,1")
    rep = verify_moment_bound(g, a, 0.5, 3)
    assert rep.ok
    # d_3(t+2) = 3, deg a = 1
    assert math.isclose(rep.main_term, euler_phi(g) * 3 ** (-0.5) * 3)


def test_moment_bound_errors():
    g = P(F3, "1,0,1")
    with pytest.raises(ValueError):
        verify_moment_bound(g, P(F3, "0,0,1"), 0.5, 2)  # deg a >= m
    with pytest.raises(ValueError):
        verify_moment_bound(g, Poly.one(F3), 0.25, 2)  # s < 1/2
    with pytest.raises(ValueError):
        verify_moment_bound(g, Poly.one(F3), 0.5, 0)  # k < 1
    with pytest.raises(ValueError):
        verify_moment_bound(P(F3, "0,1") * P(F3, "1,1"), Poly.x(F3), 0.5, 2)  # gcd


def test_moment_bound_small_grid():
    for field in (F3, F5):
        for m in (1, 2):
            for g in squarefree_monic(field, m):
                for a in unit_group(g).units():
                    for k in (2, 3):
                        rep = verify_moment_bound(g, a, 0.5, k)
                        assert rep.ok, rep


# -- density identity -----------------------------------------------------------


def test_density_reference_example():
    rep = one_level_density(P(F3, "1,0,1"), 2.0)
    assert rep.odd_primitive_count == 4
    assert rep.main_term == 4.0
    assert rep.agree
    assert abs(rep.zero_side - rep.decomposition_side) <= rep.tolerance


def test_density_no_odd_characters_is_reported_not_fatal():
    rep = one_level_density(P(F2, "1,1,1"), 2.0)
    assert rep.odd_primitive_count == 0
    assert rep.zero_side == 0.0 and rep.decomposition_side == 0.0
    assert rep.agree


def test_density_zero_frequency_structure():
    # with the frequency window shrunk below 1, both sides consist of the
    # frequency-zero term alone: count * (m-1)/m * psi_hat(0)
    g = P(F3, "1,0,1")
    rep = one_level_density(g, 0.4)
    expect = rep.odd_primitive_count * (g.degree - 1) / g.degree
    assert rep.frequency_cap == 0
    assert math.isclose(rep.zero_side, expect, abs_tol=1e-12)
    assert math.isclose(rep.decomposition_side, expect, abs_tol=1e-12)


def test_density_zero_side_matches_literal_kernel_sum():
    # third, fully independent path: evaluate the Fejer kernel directly on
    # the zero angles over many periods (the lattice sum converges ~ 1/K)
    from ffprog.dirichlet import gammas, odd_primitive_characters

    g = P(F3, "1,0,1")
    lam = 1.5
    q, m = 3, g.degree
    rep = one_level_density(g, lam)

    def fejer(x):
        if x == 0:
            return lam
        z = math.pi * lam * x
        return lam * (math.sin(z) / z) ** 2

    K = 4000
    period = 2 * math.pi / math.log(q)
    literal = 0.0
    for chi in odd_primitive_characters(g):
        for gamma in gammas(chi):
            for k in range(-K, K + 1):
                y = m * math.log(q) * (gamma + k * period) / (2 * math.pi)
                literal += fejer(y)
    assert abs(literal - rep.zero_side) < 5e-3


def test_density_lambda_grid_small():
    for field in (F3, F5):
        for g in squarefree_monic(field, 2):
            for lam in (1.5, 2.0, 3.0):
                rep = one_level_density(g, lam)
                assert rep.agree, rep


def test_density_rejects_bad_lambda():
    with pytest.raises(ValueError):
        one_level_density(P(F3, "1,0,1"), 0.0)


# -- odd-character weight identity ----------------------------------------------


def test_constant_class_weights_sum_to_zero():
    for q in (3, 4, 5, 7, 9):
        weights = [constant_class_weight(q, alpha) for alpha in range(1, q)]
        assert sum(weights) == 0
        assert weights[0] == 1 - Fraction(1, q - 1)
        assert all(w == Fraction(-1, q - 1) for w in weights[1:])
    with pytest.raises(ValueError):
        constant_class_weight(3, 0)
    with pytest.raises(ValueError):
        constant_class_weight(3, 3)


def test_odd_kernel_oracle():
    # sum of chi(f) over all odd characters mod h equals w_alpha * phi(h) on
    # constant classes, 0 elsewhere
    h = P(F3, "1,0,1")
    grp = unit_group(h)
    odd = [chi for chi in characters(h) if chi.is_odd()]
    phi = euler_phi(h)
    for f in grp.units():
        total = sum(chi.value(f) for chi in odd)
        if f.degree == 0:
            alpha = f.coeffs[0]
            expect = float(constant_class_weight(3, alpha)) * phi
        else:
            expect = 0.0
        assert abs(total.real - expect) < 1e-9
        assert abs(total.imag) < 1e-9


def test_weight_identity_frozen_values():
    g = P(F3, "1,0,1")
    rep = odd_character_weight_identity(g, 4)
    assert rep.scaled_integer == 56
    assert rep.progression_side == 28
    assert rep.agree
    rep = odd_character_weight_identity(g, 3)
    assert rep.progression_side == 0 and rep.agree


def test_weight_identity_grid():
    for field in (F3, F5):
        for m in (1, 2):
            for g in squarefree_monic(field, m):
                for n in range(1, 5):
                    rep = odd_character_weight_identity(g, n)
                    assert rep.agree, rep
                    assert (rep.progression_side * (field.q - 1)).denominator == 1


def test_weight_identity_trivial_over_f2():
    # F_2 has a single nonzero constant with weight 0 and no odd characters
    rep = odd_character_weight_identity(P(F2, "1,1,1"), 3)
    assert rep.progression_side == 0
    assert abs(rep.character_side) < 1e-12
    assert rep.agree
