import math
from fractions import Fraction

import pytest

from ffprog.symrep import (
    MAX_N,
    C1,
    C2,
    C2_via_e_formula,
    C2_via_w_formula,
    M_rho,
    MultiPoly,
    VirtualCharacter,
    binomial_bound,
    binomial_bound_floor,
    character_value,
    closed_form_constants,
    conjugate_partition,
    dim_V,
    dim_Vd,
    divisor_dim_Vd,
    exterior_standard_rep,
    hook_dimension,
    induced_product,
    irreducible_character,
    named_rep,
    parse_rep_spec,
    partitions,
    power_sum_product,
    sgn_of,
    sign_rep,
    standard_rep,
    tensor_power_rep,
    trace_V,
    trace_Vd,
    trivial_rep,
    vonmangoldt_rep,
    young_induced_rep,
    young_invariant_dim,
    z_of,
)

# partition counts p(0)..p(10)
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partition_generation():
    for n, want in enumerate(PARTITION_COUNTS):
        ps = partitions(n)
        assert len(ps) == want
        assert len(set(ps)) == want
        for lam in ps:
            assert sum(lam) == n
            assert all(a >= b for a, b in zip(lam, lam[1:]))
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_class_sizes_sum_to_group_order():
    for n in range(1, 9):
        assert sum(math.factorial(n) // z_of(lam) for lam in partitions(n)) == math.factorial(n)


def test_sgn_and_conjugate():
    assert sgn_of((5,)) == 1
    assert sgn_of((2,)) == -1
    assert sgn_of((2, 2)) == 1
    assert conjugate_partition((3, 1)) == (2, 1, 1)
    assert conjugate_partition(()) == ()
    for n in range(1, 8):
        for lam in partitions(n):
            assert conjugate_partition(conjugate_partition(lam)) == lam


def test_hook_dimension_squares_sum_to_group_order():
    for n in range(1, 9):
        assert sum(hook_dimension(mu) ** 2 for mu in partitions(n)) == math.factorial(n)


# -- character values ---------------------------------------------------------


def test_s3_character_table():
    # classes ordered (3), (2,1), (1,1,1)
    assert [character_value((3,), lam) for lam in partitions(3)] == [1, 1, 1]
    assert [character_value((2, 1), lam) for lam in partitions(3)] == [-1, 0, 2]
    assert [character_value((1, 1, 1), lam) for lam in partitions(3)] == [1, -1, 1]


def test_s4_character_table():
    # classes ordered (4), (3,1), (2,2), (2,1,1), (1^4)
    table = {
        (4,): [1, 1, 1, 1, 1],
        (3, 1): [-1, 0, -1, 1, 3],
        (2, 2): [0, -1, 2, 0, 2],
        (2, 1, 1): [1, 0, -1, -1, 3],
        (1, 1, 1, 1): [-1, 1, 1, -1, 1],
    }
    for mu, row in table.items():
        assert [character_value(mu, lam) for lam in partitions(4)] == row


def test_s5_spot_values():
    assert character_value((3, 2), (5,)) == 0
    assert character_value((3, 2), (1, 1, 1, 1, 1)) == 5
    assert character_value((2, 2, 1), (2, 2, 1)) == 1
    assert character_value((4, 1), (2, 1, 1, 1)) == 2


@pytest.mark.parametrize("n", range(1, 9))
def test_row_orthogonality(n):
    chars = [irreducible_character(mu) for mu in partitions(n)]
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            assert a.inner(b) == (1 if i == j else 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_column_orthogonality(n):
    # independent check of the table: sum over irreducibles of
    # chi(lam) chi(nu) equals z(lam) on the diagonal and 0 off it
    ps = partitions(n)
    for lam in ps:
        for nu in ps:
            s = sum(character_value(mu, lam) * character_value(mu, nu) for mu in ps)
            assert s == (z_of(lam) if lam == nu else 0)


def test_conjugate_is_sgn_twist():
    for n in range(1, 8):
        for mu in partitions(n):
            twisted = irreducible_character(mu).tensor_sgn()
            assert twisted == irreducible_character(conjugate_partition(mu))


# -- class function algebra -----------------------------------------------------


def test_virtual_character_ring_ops():
    a = irreducible_character((3, 1))
    b = irreducible_character((2, 2))
    s = a + b
    assert s.dim == a.dim + b.dim
    assert (s - b) == a
    assert (-a).dim == -3
    assert a.scale(2).dim == 6
    prod = a * b
    assert prod.dim == a.dim * b.dim
    with pytest.raises(ValueError):
        _ = a + irreducible_character((3,))


def test_decompose_and_genuine():
    reg = young_induced_rep([1, 1, 1])  # regular representation of S_3
    dec = reg.decompose()
    assert dec == {(3,): 1, (2, 1): 2, (1, 1, 1): 1}
    assert reg.is_genuine
    virt = trivial_rep(3) - sign_rep(3)
    assert not virt.is_genuine
    assert virt.decompose() == {(3,): 1, (1, 1, 1): -1}


def test_degree_cap():
    with pytest.raises(ValueError):
        trivial_rep(MAX_N + 1)


# -- named representations -------------------------------------------------------


def test_standard_rep_is_perm_minus_trivial():
    for n in range(2, 8):
        std = standard_rep(n)
        assert std.dim == n - 1
        assert std.decompose() == {(n - 1, 1): 1}
        for lam in partitions(n):
            assert std.value(lam) == lam.count(1) - 1


def test_exterior_powers_are_hooks():
    for n in range(2, 8):
        for i in range(n):
            hook = irreducible_character((n - i,) + (1,) * i)
            assert exterior_standard_rep(n, i) == hook
    with pytest.raises(ValueError):
        exterior_standard_rep(4, 4)


def test_vonmangoldt_rep_closed_values():
    # sum over i of the exterior-power values collapses to 2^(cycles-1) on
    # all-odd cycle types and 0 otherwise
    for n in range(1, 9):
        vm = vonmangoldt_rep(n)
        for lam in partitions(n):
            want = 2 ** (len(lam) - 1) if all(p % 2 for p in lam) else 0
            assert vm.value(lam) == want
        assert vm.dim == 2 ** (n - 1)
        assert vm == sum(
            (exterior_standard_rep(n, i) for i in range(1, n)),
            exterior_standard_rep(n, 0),
        )


def test_tensor_power_rep():
    t = tensor_power_rep(3, 2)
    assert t.dim == 8
    assert t.value((3,)) == 2
    assert t.value((2, 1)) == 4
    # (C^1)^(tensor n) is the trivial character
    assert tensor_power_rep(5, 1) == trivial_rep(5)
    with pytest.raises(ValueError):
        tensor_power_rep(3, 0)


def test_young_induced_examples():
    reg = young_induced_rep([1, 1])
    assert reg.value((1, 1)) == 2 and reg.value((2,)) == 0
    # inducing trivial from S_{n-1} x S_1 gives the n-point permutation module
    for n in range(2, 7):
        perm = young_induced_rep([n - 1, 1])
        assert perm == standard_rep(n) + trivial_rep(n)
    # dimension is the multinomial coefficient
    y = young_induced_rep([2, 2, 1])
    assert y.dim == math.factorial(5) // (2 * 2 * 1)
    assert y.is_genuine


def test_induced_product_dimension():
    a = irreducible_character((2, 1))
    b = irreducible_character((2,))
    ind = induced_product([a, b])
    assert ind.n == 5
    assert ind.dim == math.comb(5, 3) * a.dim * b.dim
    assert ind.is_genuine


def test_named_rep_dispatch_and_parse():
    assert named_rep("sgn", 4) == sign_rep(4)
    assert named_rep("tensor", 3, k=2) == tensor_power_rep(3, 2)
    assert named_rep("young", 4, blocks=[2, 2]) == young_induced_rep([2, 2])
    assert named_rep("irr", 4, mu=[2, 2]) == irreducible_character((2, 2))
    with pytest.raises(ValueError):
        named_rep("nope", 3)
    with pytest.raises(ValueError):
        named_rep("young", 4, blocks=[2, 1])
    assert parse_rep_spec("std", 5) == standard_rep(5)
    assert parse_rep_spec("ext:2", 5) == exterior_standard_rep(5, 2)
    assert parse_rep_spec("tensor:3", 4) == tensor_power_rep(4, 3)
    assert parse_rep_spec("young:2,3", 5) == young_induced_rep([2, 3])
    assert parse_rep_spec("irr:3,1,1", 5) == irreducible_character((3, 1, 1))
    with pytest.raises(ValueError):
        parse_rep_spec("wat:3", 5)


# -- torus traces ------------------------------------------------------------------


def test_trace_V_sign_is_complete_homogeneous():
    # invariants of sgn tensor sgn tensor (C^{m-1})^n are Sym^n(C^{m-1})
    for n in (2, 3, 4):
        for m in (2, 3, 4):
            tv = trace_V(sign_rep(n), m)
            want = {
                exps: 1
                for exps in _monomials_of_degree(n, m - 1)
            }
            assert tv.terms == want


def _monomials_of_degree(n, v):
    if v == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(n + 1):
        for rest in _monomials_of_degree(n - first, v - 1):
            out.append((first,) + rest)
    return out


def test_trace_V_vonmangoldt_small_case():
    # two letters, one variable: the invariant trace is the square monomial
    tv = trace_V(vonmangoldt_rep(2), 2)
    assert tv.terms == {(2,): 1}


def test_trace_coefficients_nonnegative_for_genuine():
    for n in range(1, 7):
        for mu in partitions(n):
            rho = irreducible_character(mu)
            for m in (1, 2, 3):
                assert all(c > 0 for c in trace_V(rho, m).terms.values())
                for d in (0, 1, n):
                    assert all(c > 0 for c in trace_Vd(rho, d, m).terms.values())


def test_trace_Vd_sign_examples():
    # for the sign representation: d=0 gives Sym^n(C^m), d=1 gives
    # Sym^{n-1}(C^m), and everything above vanishes
    for n in (3, 4):
        for m in (2, 3):
            sg = sign_rep(n)
            assert dim_Vd(sg, 0, m) == math.comb(n + m - 1, m - 1)
            assert dim_Vd(sg, 1, m) == math.comb(n - 1 + m - 1, m - 1)
            for d in range(2, n + 1):
                assert dim_Vd(sg, d, m) == 0


def test_trace_Vd_full_d_degenerate():
    assert dim_Vd(trivial_rep(4), 4, 2) == 1


def test_divisor_dim_Vd_closed_form():
    for n in range(1, 8):
        for m in (1, 2, 3):
            for k in (1, 2, 3):
                tp = tensor_power_rep(n, k)
                for d in range(n + 1):
                    assert dim_Vd(tp, d, m) == divisor_dim_Vd(n, m, k, d)


def test_trace_errors():
    with pytest.raises(ValueError):
        trace_V(sign_rep(3), 0)
    with pytest.raises(ValueError):
        trace_Vd(sign_rep(3), 4, 2)
    with pytest.raises(ValueError):
        trace_Vd(sign_rep(3), -1, 2)


# -- vanishing lemmas ------------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 9))
def test_vanishing_big_part(n):
    for mu in partitions(n):
        for m in range(1, 5):
            if mu[0] >= m:
                assert trace_V(irreducible_character(mu), m).is_zero


@pytest.mark.parametrize("n", range(1, 9))
def test_vanishing_high_d(n):
    for mu in partitions(n):
        if not mu:
            continue
        for m in range(1, 5):
            if all(p < m for p in mu):
                rho = irreducible_character(mu)
                for d in range(m, n + 1):
                    assert dim_Vd(rho, d, m) == 0


# -- bound constants --------------------------------------------------------------------


def test_c_constants_spec_values():
    assert C1(sign_rep(4), 4, 2) == 6
    assert C2(sign_rep(4), 4, 2) == 4
    assert C2(tensor_power_rep(2, 2), 2, 2) == 2


def test_closed_forms_match_generic():
    for n in range(1, 7):
        for m in range(2, 5):
            assert (C1(sign_rep(n), n, m), C2(sign_rep(n), n, m)) == closed_form_constants(
                "mobius", n, m
            )
            vm = vonmangoldt_rep(n)
            assert (C1(vm, n, m), C2(vm, n, m)) == closed_form_constants(
                "vonmangoldt", n, m
            )
        for m in range(1, 5):
            for k in (1, 2, 3):
                tp = tensor_power_rep(n, k)
                assert (C1(tp, n, m), C2(tp, n, m)) == closed_form_constants(
                    "divisor", n, m, k=k
                )


def test_closed_form_preconditions():
    with pytest.raises(ValueError):
        closed_form_constants("mobius", 4, 1)
    with pytest.raises(ValueError):
        closed_form_constants("vonmangoldt", 4, 1)
    with pytest.raises(ValueError):
        closed_form_constants("divisor", 4, 2)
    with pytest.raises(ValueError):
        closed_form_constants("wat", 4, 2)


def test_c2_cross_formulas():
    for n in range(1, 7):
        for mu in partitions(n):
            rho = irreducible_character(mu)
            for m in range(1, 5):
                c2 = C2(rho, n, m)
                assert c2 == C2_via_e_formula(rho, n, m)
                assert c2 == C2_via_w_formula(rho, n, m)


def test_c2_m1_vanishes():
    for n in range(1, 6):
        for mu in partitions(n):
            assert C2(irreducible_character(mu), n, 1) == 0


def test_constants_additive():
    a = irreducible_character((3, 1))
    b = irreducible_character((2, 2))
    for m in (1, 2, 3):
        assert C1(a + b, 4, m) == C1(a, 4, m) + C1(b, 4, m)
        assert C2(a + b, 4, m) == C2(a, 4, m) + C2(b, 4, m)


def test_constants_nonnegative_for_small_part_irreducibles():
    for n in range(1, 8):
        for mu in partitions(n):
            rho = irreducible_character(mu)
            for m in range(1, 5):
                if all(p < m for p in mu):
                    assert C1(rho, n, m) >= 0
                    assert C2(rho, n, m) >= 0


def test_constants_zero_for_big_part_irreducibles():
    for n in range(1, 8):
        for mu in partitions(n):
            if mu[0] < 2:
                continue
            rho = irreducible_character(mu)
            for m in range(1, mu[0] + 1):
                if mu[0] >= m:
                    assert C2(rho, n, m) == 0


def test_constants_degree_mismatch():
    with pytest.raises(ValueError):
        C1(sign_rep(4), 5, 2)
    with pytest.raises(ValueError):
        C2(sign_rep(4), 5, 2)


# -- M_rho -------------------------------------------------------------------------------


def test_M_rho_sign_rep():
    # rho (x) sgn is trivial, whose invariants are one-dimensional always
    for n in range(1, 7):
        for lam in partitions(n):
            w = {}
            for part in lam:
                w[part] = w.get(part, 0) + 1
            assert M_rho(sign_rep(n), w) == (-1) ** n


def test_M_rho_trivial_rep():
    assert M_rho(trivial_rep(4), {2: 1, 1: 2}) == 0
    assert M_rho(trivial_rep(4), {1: 4}) == 1
    assert M_rho(trivial_rep(3), {3: 1}) == 0


def test_M_rho_regular_rep_s2():
    reg = young_induced_rep([1, 1])
    # invariants under the full S_2 pick out the sign multiplicity
    assert M_rho(reg, {2: 1}) == 1
    # under the trivial subgroup, everything is invariant
    assert M_rho(reg, {1: 2}) == 2


def test_M_rho_weight_mismatch():
    with pytest.raises(ValueError):
        M_rho(sign_rep(4), {2: 1})


def test_young_invariant_dim_reciprocity():
    # invariant dimension equals the multiplicity of chi in the induced
    # permutation module (Frobenius reciprocity), spot-checked
    for blocks in ([2, 2], [3, 1], [2, 1, 1]):
        n = sum(blocks)
        ind = young_induced_rep(blocks)
        for mu in partitions(n):
            chi = irreducible_character(mu)
            assert young_invariant_dim(chi, blocks) == chi.inner(ind)


# -- binomial coefficient bound ------------------------------------------------------------


def test_binomial_bound_spec_examples():
    val = binomial_bound(4, 2, 0, 0, 2)
    assert abs(val - (3 * math.e / 2) ** 4) < 1e-9
    assert val >= math.comb(6, 4)
    assert binomial_bound(0, 0, 0, 0, 1) == 1.0


def test_binomial_bound_preconditions():
    with pytest.raises(ValueError):
        binomial_bound(1, 2, 0, 0, 1)  # alpha*b > a
    with pytest.raises(ValueError):
        binomial_bound(2, 1, 0, 0, 0)  # alpha <= 0
    with pytest.raises(ValueError):
        binomial_bound(2, 1, -3, 0, 1)  # a + x < 0
    with pytest.raises(ValueError):
        binomial_bound(2, 1, 0, -2, 1)  # b + y < 0


def test_binomial_bound_rational_floor_dominates():
    for a in range(0, 13, 3):
        for b in range(0, 13, 3):
            for x in (-2, 0, 2):
                for y in (-2, 0, 2):
                    if a + x < 0 or b + y < 0:
                        continue
                    for alpha in (Fraction(1, 2), Fraction(2)):
                        if alpha * b > a:
                            continue
                        lhs = math.comb(a + b + x + y, a + x) if a + b + x + y >= a + x >= 0 else 0
                        assert lhs <= binomial_bound_floor(a, b, x, y, alpha)


# -- MultiPoly internals --------------------------------------------------------------------


def test_multipoly_mixed_partial():
    # d^2/dxdy of 3x^2y + 5xy at (1,1) is 6 + 5
    p = MultiPoly(2, {(2, 1): 3, (1, 1): 5, (4, 0): 9})
    assert p.mixed_partial_all_ones() == 3 * 2 * 1 + 5 * 1 * 1
    assert p.eval_all_ones() == 17
    q = MultiPoly(2, {(1, 0): 1})
    assert (p * q).terms == {(3, 1): 3, (2, 1): 5, (5, 0): 9}


def test_power_sum_product_cached():
    a = power_sum_product((3, 2), 2)
    assert a is power_sum_product((3, 2), 2)
    # p_3 * p_2 in 2 vars evaluated at ones: 2 * 2
    assert a.eval_all_ones() == 4
