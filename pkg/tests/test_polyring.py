import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffprog.field import make_field
from ffprog.polyring import (
    Poly,
    count_irreducible,
    enumerate_irreducible,
    enumerate_monic,
    enumerate_monic_in_class,
    enumerate_squarefree_monic,
    factor,
    irreducibles,
    is_irreducible,
    is_squarefree,
    monic_by_index,
    poly_ext_gcd,
    poly_from_string,
    poly_gcd,
    poly_inverse_mod,
    poly_pow_mod,
    squarefree_decomposition,
)

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)
F5 = make_field(5)


def polys(field, max_deg=6):
    return st.lists(
        st.integers(min_value=0, max_value=field.q - 1), min_size=0, max_size=max_deg + 1
    ).map(lambda cs: Poly(field, cs))


# -- construction and serialization ------------------------------------------


def test_trailing_zeros_trimmed():
    f = Poly(F3, [1, 2, 0, 0])
    assert f.coeffs == (1, 2) and f.degree == 1
    assert Poly(F3, [0, 0]).is_zero
    assert Poly(F3, []).degree == -1


def test_parse_comma_and_human_forms():
    assert poly_from_string(F3, "1,0,1") == poly_from_string(F3, "t^2+1")
    assert poly_from_string(F3, "t^2 + 1").coeffs == (1, 0, 1)
    assert poly_from_string(F5, "2t^3 - t + 1").coeffs == (1, 4, 0, 2)
    assert poly_from_string(F5, "3*t").coeffs == (0, 3)
    assert poly_from_string(F2, "t").coeffs == (0, 1)
    assert poly_from_string(F3, "0").is_zero
    assert poly_from_string(F3, "t - 1").coeffs == (2, 1)


def test_parse_rejects_garbage():
    # comma entries are strict element indices: "3" and "-1" are out of range
    for bad in ("", "1,,2", "t^", "q^2", "1;2", "3", "-1", "t^-1"):
        with pytest.raises(ValueError):
            poly_from_string(F2, bad)


def test_to_string_roundtrip():
    for f in enumerate_monic(F4, 3):
        assert poly_from_string(F4, f.to_string()) == f
    assert Poly.zero(F3).to_string() == "0"


def test_pretty():
    assert poly_from_string(F5, "1,4,0,2").pretty() == "2t^3 + 4t + 1"
    assert Poly.zero(F5).pretty() == "0"
    assert Poly.one(F5).pretty() == "1"


# -- ring laws -----------------------------------------------------------------


@settings(max_examples=200)
@given(polys(F5), polys(F5), polys(F5))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(F5)
    assert a + Poly.zero(F5) == a
    assert a * Poly.one(F5) == a


@settings(max_examples=200)
@given(polys(F5), polys(F5))
def test_divmod_invariant(a, b):
    if b.is_zero:
        with pytest.raises(ZeroDivisionError):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@settings(max_examples=150)
@given(polys(F4), polys(F4), polys(F4))
def test_gcd_properties(a, b, m):
    g = poly_gcd(a, b)
    if g.is_zero:
        assert a.is_zero and b.is_zero
    else:
        assert g.is_monic
        assert (a % g).is_zero and (b % g).is_zero
    gg, u, v = poly_ext_gcd(a, b)
    assert gg == g
    assert u * a + v * b == g
    if not m.is_zero and not a.is_zero:
        gm = poly_gcd(a * m, b * m)
        assert gm == (g * m).monic()


def test_eval_matches_direct_sum():
    f = poly_from_string(F5, "1, 2, 0, 3")
    for a in F5.elements():
        direct = 0
        for i, c in enumerate(f.coeffs):
            direct = F5.add(direct, F5.mul(c, F5.pow(a, i)))
        assert f.eval(a) == direct


def test_t_to_the_q_minus_t_vanishes_everywhere():
    for F in (F2, F3, F4, F5):
        f = Poly.monomial(F, 1, F.q) - Poly.x(F)
        assert all(f.eval(a) == 0 for a in F.elements())


def test_pow_mod_matches_naive():
    m = poly_from_string(F3, "t^3 + 2t + 1")
    b = poly_from_string(F3, "t + 2")
    for e in range(0, 12):
        assert poly_pow_mod(b, e, m) == (b**e) % m


def test_inverse_mod():
    m = poly_from_string(F5, "t^2 + 2")  # irreducible over F_5? 3 is not a square mod 5
    assert is_irreducible(m)
    for f in enumerate_monic(F5, 1):
        inv = poly_inverse_mod(f, m)
        assert (inv * f) % m == Poly.one(F5)
    with pytest.raises(ValueError):
        poly_inverse_mod(m, m)


# -- enumeration ----------------------------------------------------------------


@pytest.mark.parametrize("F,n", [(F2, 5), (F3, 3), (F4, 2), (F5, 2)])
def test_enumerate_monic_complete_and_ordered(F, n):
    seen = list(enumerate_monic(F, n))
    assert len(seen) == F.q**n
    assert len(set(seen)) == F.q**n
    assert all(f.is_monic and f.degree == n for f in seen)
    for i, f in enumerate(seen):
        assert monic_by_index(F, n, i) == f
    # ascending index sorts by high-order coefficients first
    keys = [tuple(reversed(f.coeffs[:-1])) for f in seen]
    assert keys == sorted(keys)


def test_enumerate_monic_degree_zero():
    assert list(enumerate_monic(F3, 0)) == [Poly.one(F3)]


def test_monic_by_index_bounds():
    with pytest.raises(ValueError):
        monic_by_index(F3, 2, 9)
    with pytest.raises(ValueError):
        monic_by_index(F3, 2, -1)


def test_residue_class_enumeration_matches_filter():
    g = poly_from_string(F3, "t^2 + t + 2")
    for a in enumerate_monic(F3, 1):
        a_red = a % g
        by_class = set(enumerate_monic_in_class(g, a_red, 4))
        by_filter = {f for f in enumerate_monic(F3, 4) if f % g == a_red}
        assert by_class == by_filter
        assert len(by_class) == 3 ** (4 - 2)


def test_residue_class_preconditions():
    g = poly_from_string(F3, "t^2+1")
    with pytest.raises(ValueError):
        list(enumerate_monic_in_class(g, poly_from_string(F3, "t^2"), 4))
    with pytest.raises(ValueError):
        list(enumerate_monic_in_class(g, Poly.x(F3), 1))


# -- irreducibility and counting -------------------------------------------------


def brute_force_irreducible(f):
    if f.degree < 1:
        return False
    for d in range(1, f.degree // 2 + 1):
        for g in enumerate_monic(f.field, d):
            if (f % g).is_zero:
                return False
    return True


@pytest.mark.parametrize("F,maxn", [(F2, 6), (F3, 4), (F4, 3), (F5, 3)])
def test_is_irreducible_matches_brute_force(F, maxn):
    for n in range(1, maxn + 1):
        for f in enumerate_monic(F, n):
            assert is_irreducible(f) == brute_force_irreducible(f), f


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_irreducible_count_formula(q):
    p, k = {4: (2, 2), 9: (3, 2)}.get(q, (q, 1))
    F = make_field(p, k)
    for d in range(1, 5):
        assert sum(1 for _ in enumerate_irreducible(F, d)) == count_irreducible(q, d)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9, 25])
def test_prime_degree_mass_identity(q):
    # sum over d | n of d * (number of monic primes of degree d) = q^n
    for n in range(1, 9):
        total = sum(d * count_irreducible(q, d) for d in range(1, n + 1) if n % d == 0)
        assert total == q**n


def test_irreducibles_cached_identity():
    assert irreducibles(F3, 2) is irreducibles(F3, 2)
    assert all(is_irreducible(f) for f in irreducibles(F3, 3))


# -- squarefree structure ---------------------------------------------------------


@pytest.mark.parametrize("F,maxn", [(F2, 6), (F3, 5), (F4, 4), (F5, 4)])
def test_is_squarefree_matches_factorization(F, maxn):
    for n in range(1, maxn + 1):
        for f in enumerate_monic(F, n):
            by_factor = all(e == 1 for _, e in factor(f))
            assert is_squarefree(f) == by_factor, f


def test_squarefree_decomposition_reconstructs():
    for F, maxn in ((F2, 6), (F3, 5), (F4, 4)):
        for n in range(1, maxn + 1):
            for f in enumerate_monic(F, n):
                sfd = squarefree_decomposition(f)
                prod = Poly.one(F)
                for e, g in sfd.items():
                    assert is_squarefree(g) and g.is_monic
                    prod = prod * g**e
                assert prod == f
                # parts are pairwise coprime
                parts = list(sfd.values())
                for i in range(len(parts)):
                    for j in range(i + 1, len(parts)):
                        assert poly_gcd(parts[i], parts[j]).is_one


def test_squarefree_decomposition_pth_powers():
    t = Poly.x(F3)
    assert squarefree_decomposition(t**3) == {3: t}
    assert squarefree_decomposition(t**9) == {9: t}
    f = poly_from_string(F2, "t^2+1")  # (t+1)^2 over F_2
    assert squarefree_decomposition(f) == {2: poly_from_string(F2, "t+1")}


def test_enumerate_squarefree_count():
    # over F_q there are q^n - q^(n-1) squarefree monics of degree n >= 2
    for F in (F2, F3, F5):
        for n in (2, 3, 4):
            got = sum(1 for _ in enumerate_squarefree_monic(F, n))
            assert got == F.q**n - F.q ** (n - 1)


# -- factorization ------------------------------------------------------------------


@pytest.mark.parametrize("F,maxn", [(F2, 7), (F3, 5), (F4, 4), (F5, 4)])
def test_factor_roundtrip_exhaustive(F, maxn):
    for n in range(1, maxn + 1):
        for f in enumerate_monic(F, n):
            pairs = factor(f)
            prod = Poly.one(F)
            for prime, e in pairs:
                assert prime.is_monic and is_irreducible(prime)
                assert e >= 1
                prod = prod * prime**e
            assert prod == f
            keys = [prime.sort_key() for prime, _ in pairs]
            assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_factor_is_deterministic():
    f = poly_from_string(F5, "t^6 + 2t^4 + 3t + 4")
    first = factor(f)
    for _ in range(3):
        assert factor(f) == first


def test_factor_units_and_errors():
    assert factor(Poly.one(F3)) == []
    with pytest.raises(ValueError):
        factor(Poly.zero(F3))
    with pytest.raises(ValueError):
        factor(poly_from_string(F3, "1,2"))  # leading coefficient 2: not monic


def test_factor_large_single_prime():
    # a degree-12 prime over F_2 exercises the deep equal-degree path
    f = None
    for cand in enumerate_monic(F2, 12):
        if is_irreducible(cand):
            f = cand
            break
    assert f is not None
    assert factor(f) == [(f, 1)]


def test_factor_equal_degree_blocks():
    # product of all monic quadratic primes over F_3 (there are 3)
    primes = list(irreducibles(F3, 2))
    assert len(primes) == 3
    f = Poly.one(F3)
    for p in primes:
        f = f * p
    assert factor(f) == sorted(
        [(p, 1) for p in primes], key=lambda pair: pair[0].sort_key()
    )
