"""Progression sums of factorization functions and rigorous error bounds.

Left-hand sides are exact: class sums and coprime means are integers or
rationals computed from cached residue-by-factorization-type histograms.
Right-hand sides all have the shape A + B*sqrt(q) with A, B nonnegative
rationals, and every pass/fail decision is made by an exact comparison that
never evaluates the square root numerically:

    L <= A + B*sqrt(q)   iff   L - A <= 0   or   (L - A)^2 <= B^2 * q.

Floating point appears only in reported bound values (nudged upward so the
printed number is never below the true bound) and in the L-function based
checks (zero counting, moment inequalities), which carry explicit numerical
tolerances scaled by the number of summands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arithfun import (
    EFT,
    F_rho_eft,
    d_k,
    d_k_eft,
    eft_histogram,
    eft_sequence,
    mobius,
    mobius_eft,
    vonmangoldt_eft,
)
from .dirichlet import (
    _character_class_sum,
    _lambda_class_sums,
    _monic_divisors,
    euler_phi,
    L_poly,
    moment_M,
    odd_primitive_characters,
    unit_group,
)
from .polyring import Poly, enumerate_monic, factor, poly_gcd
from .symrep import (
    C1,
    C2,
    VirtualCharacter,
    _comb0,
    dim_Vd,
    exterior_standard_rep,
    sign_rep,
    tensor_power_rep,
)

__all__ = [
    "ProgressionReport",
    "NamedBoundReport",
    "MomentBoundReport",
    "DensityReport",
    "WeightIdentityReport",
    "progression_sum",
    "coprime_mean",
    "verify_main_bound",
    "verify_named_bounds",
    "verify_moment_bound",
    "one_level_density",
    "odd_character_weight_identity",
    "vonmangoldt_total",
    "constant_class_weight",
    "holds_up_to_sqrt",
    "bound_estimate",
]


# ---------------------------------------------------------------------------
# Exact comparison against A + B*sqrt(q)
# ---------------------------------------------------------------------------


def holds_up_to_sqrt(lhs, a, b, q: int) -> bool:
    """Exact truth value of ``lhs <= a + b*sqrt(q)`` for rationals with b >= 0."""
    lhs, a, b = Fraction(lhs), Fraction(a), Fraction(b)
    if b < 0:
        raise ValueError("sqrt coefficient must be nonnegative")
    diff = lhs - a
    if diff <= 0:
        return True
    return diff * diff <= b * b * q


def bound_estimate(a, b, q: int) -> float:
    """Float value of a + b*sqrt(q), nudged upward a few ulps for display.

    Pass/fail flags never use this; they use holds_up_to_sqrt.
    """
    v = float(a) + float(b) * math.sqrt(q)
    for _ in range(4):
        v = math.nextafter(v, math.inf)
    return v


def _scaled_pair(c_plain, c_sqrt, q: int, half_exponent: int) -> tuple[Fraction, Fraction]:
    """(c_plain + c_sqrt*sqrt(q)) * q**(half_exponent/2) as an exact pair
    (A, B) with value A + B*sqrt(q)."""
    c_plain, c_sqrt = Fraction(c_plain), Fraction(c_sqrt)
    if half_exponent % 2 == 0:
        s = Fraction(q) ** (half_exponent // 2)
        return c_plain * s, c_sqrt * s
    s = Fraction(q) ** ((half_exponent - 1) // 2)
    return c_sqrt * q * s, c_plain * s


# ---------------------------------------------------------------------------
# Exact progression sums
# ---------------------------------------------------------------------------


def _check_progression_args(n: int, g: Poly, a: Poly | None) -> None:
    if g.degree < 1 or not g.is_monic:
        raise ValueError("modulus must be monic of degree at least 1")
    if any(mult > 1 for _, mult in factor(g)):
        raise ValueError("modulus must be squarefree")
    if n < g.degree:
        raise ValueError("degree n must be at least deg g")
    if a is not None and not poly_gcd(a, g).is_one:
        raise ValueError("residue class must be coprime to the modulus")


def progression_sum(F: Callable[[Poly], int], n: int, g: Poly, a: Poly):
    """Exact sum of F(f) over monic f of degree n with f = a (mod g)."""
    _check_progression_args(n, g, a)
    a = a % g
    return sum(F(f) for f in enumerate_monic(g.field, n) if f % g == a)


def coprime_mean(F: Callable[[Poly], int], n: int, g: Poly) -> Fraction:
    """Exact average of F over monic degree-n polynomials coprime to g,
    normalized by the number of invertible residue classes."""
    _check_progression_args(n, g, None)
    total = sum(
        F(f) for f in enumerate_monic(g.field, n) if poly_gcd(f, g).is_one
    )
    return Fraction(total, euler_phi(g))


def _class_sum_eft(weight: Callable[[EFT], int], n: int, g: Poly, a: Poly) -> int:
    row = eft_histogram(g, n).get(a % g, {})
    return sum(weight(w) * cnt for w, cnt in row.items())


def _coprime_total_eft(weight: Callable[[EFT], int], n: int, g: Poly) -> int:
    grp = unit_group(g)
    hist = eft_histogram(g, n)
    total = 0
    for r in grp.units():
        row = hist.get(r)
        if row:
            total += sum(weight(w) * cnt for w, cnt in row.items())
    return total


def vonmangoldt_total(field, n: int) -> int:
    """Sum of the prime-power degree weight over all monic degree-n
    polynomials; checked against the exact value q**n before use."""
    total = sum(vonmangoldt_eft(w) for w in eft_sequence(field, n))
    if total != field.q**n:
        raise AssertionError(
            f"prime-power weight total {total} != {field.q}^{n} over {field!r}"
        )
    return total


# ---------------------------------------------------------------------------
# Main progression bound
# ---------------------------------------------------------------------------


def _rep_label(rho: VirtualCharacter) -> str:
    dec = rho.decompose()
    if len(dec) == 1:
        ((mu, coeff),) = dec.items()
        if coeff == 1:
            return "irrep[" + ",".join(str(p) for p in mu) + "]"
    inner = ", ".join(
        f"[{','.join(str(p) for p in mu)}]x{c}" for mu, c in sorted(dec.items())
    )
    return "virtual{" + inner + "}"


@dataclass(frozen=True)
class ProgressionReport:
    """Outcome of checking one (representation, degree, modulus, class)."""

    q: int
    n: int
    m: int
    g: str
    a: str
    function: str
    class_sum: int
    coprime_mean: Fraction
    error: Fraction
    c1: int
    c2: int
    main_bound: float
    main_ok: bool
    alt_bound: float | None
    alt_ok: bool | None
    refined_offset: Fraction
    refined_bound: float
    refined_ok: bool
    mean_ok: bool | None
    constant_case: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.main_ok
            and self.refined_ok
            and (self.mean_ok is None or self.mean_ok)
            and (self.alt_ok is None or self.alt_ok)
        )

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "g": self.g,
            "a": self.a,
            "function": self.function,
            "class_sum": self.class_sum,
            "coprime_mean": _rat_json(self.coprime_mean),
            "error": _rat_json(self.error),
            "C1": self.c1,
            "C2": self.c2,
            "main_bound": self.main_bound,
            "main_ok": self.main_ok,
            "alt_bound": self.alt_bound,
            "alt_ok": self.alt_ok,
            "refined_offset": _rat_json(self.refined_offset),
            "refined_bound": self.refined_bound,
            "refined_ok": self.refined_ok,
            "mean_ok": self.mean_ok,
            "constant_case": self.constant_case,
        }


def _rat_json(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def verify_main_bound(rho: VirtualCharacter, n: int, g: Poly, a: Poly) -> ProgressionReport:
    """Check the progression estimate for one representation and class.

    The class sum and coprime mean are exact; the error is compared exactly
    against 2*(C1 + C2*sqrt(q))*q^((n-m)/2), against the refined variant with
    the low-degree dimension offset, and (for irreducible representations
    with all parts below deg g) against the one-sided variant without the
    factor 2.  When C1 = C2 = 0 the bound forces the error to be exactly 0.
    """
    if rho.n != n:
        raise ValueError("representation degree must match n")
    if not rho.is_genuine:
        raise ValueError("requires a genuine (non-virtual) representation")
    _check_progression_args(n, g, a)
    q = g.field.q
    m = g.degree
    phi = euler_phi(g)

    weight = lambda w: F_rho_eft(rho, w)
    class_sum = _class_sum_eft(weight, n, g, a)
    mean = Fraction(_coprime_total_eft(weight, n, g), phi)
    error = abs(Fraction(class_sum) - mean)

    c1 = C1(rho, n, m)
    c2 = C2(rho, n, m)
    main_a, main_b = _scaled_pair(2 * c1, 2 * c2, q, n - m)
    main_ok = holds_up_to_sqrt(error, main_a, main_b, q)

    dec = rho.decompose()
    low_parts = all(max(mu) < m for mu in dec)
    alt_applies = low_parts and len(dec) == 1 and next(iter(dec.values())) == 1
    alt_bound = None
    alt_ok = None
    if alt_applies:
        alt_a, alt_b = _scaled_pair(c1, c2, q, n - m)
        alt_bound = bound_estimate(alt_a, alt_b, q)
        alt_ok = holds_up_to_sqrt(abs(Fraction(class_sum)), alt_a, alt_b, q)

    offset = sum(
        Fraction(q**d * dim_Vd(rho, d, m), phi) for d in range(m)
    )
    ref_a, ref_b = _scaled_pair(c1, c2, q, n - m)
    refined_ok = holds_up_to_sqrt(error, ref_a + offset, ref_b, q)
    # the low-degree offset bounds the coprime mean whenever every
    # component's parts stay below deg g; elsewhere it is not claimed
    mean_ok = abs(mean) <= offset if low_parts else None
    return ProgressionReport(
        q=q,
        n=n,
        m=m,
        g=g.to_string(),
        a=(a % g).to_string(),
        function=_rep_label(rho),
        class_sum=class_sum,
        coprime_mean=mean,
        error=error,
        c1=c1,
        c2=c2,
        main_bound=bound_estimate(main_a, main_b, q),
        main_ok=main_ok,
        alt_bound=alt_bound,
        alt_ok=alt_ok,
        refined_offset=offset,
        refined_bound=bound_estimate(ref_a + offset, ref_b, q),
        refined_ok=refined_ok,
        mean_ok=mean_ok,
        constant_case=(c1 == 0 and c2 == 0),
    )


# ---------------------------------------------------------------------------
# Named closed-form bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NamedBoundReport:
    kind: str
    q: int
    n: int
    m: int
    g: str
    a: str
    k: int | None
    class_sum: int
    reference: Fraction
    error: Fraction
    bound: float
    ok: bool
    cross_check_ok: bool

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "g": self.g,
            "a": self.a,
            "k": self.k,
            "class_sum": self.class_sum,
            "reference": _rat_json(self.reference),
            "error": _rat_json(self.error),
            "bound": self.bound,
            "ok": self.ok,
            "cross_check_ok": self.cross_check_ok,
        }


def verify_named_bounds(
    kind: str, q: int, n: int, g: Poly, a: Poly, *, k: int = 2
) -> NamedBoundReport:
    """Check one of the closed-form progression inequalities.

    kind "mobius"      — |class sum of mu|, no mean subtracted (needs m >= 2)
    kind "primes"      — class sum of the prime-power degree weight against
                         the mean over all monic degree-n polynomials
                         (needs m >= 2)
    kind "divisor"     — class sum of d_k against the coprime mean

    Each left side is evaluated twice (direct factorization-type weight and
    the trace formula of the matching representation) and must agree exactly;
    the right side is compared exactly as A + B*sqrt(q).
    """
    _check_progression_args(n, g, a)
    if q != g.field.q:
        raise ValueError("q does not match the field of g")
    m = g.degree
    phi = euler_phi(g)

    if kind == "mobius":
        if m < 2:
            raise ValueError("mobius bound requires deg g >= 2")
        rho = sign_rep(n)
        direct = _class_sum_eft(mobius_eft, n, g, a)
        via_rep = (-1) ** n * _class_sum_eft(lambda w: F_rho_eft(rho, w), n, g, a)
        reference = Fraction(0)
        error = abs(Fraction(direct))
        a1, b1 = _scaled_pair(_comb0(n + m - 2, 2 * m - 2), 0, q, n - m)
        a2, b2 = _scaled_pair(_comb0(n + m - 2, 2 * m - 3), 0, q, n + 1 - m)
        kk = None
    elif kind == "primes":
        if m < 2:
            raise ValueError("primes bound requires deg g >= 2")
        exteriors = [exterior_standard_rep(n, i) for i in range(n)]
        vonmangoldt_total(g.field, n)
        direct = _class_sum_eft(vonmangoldt_eft, n, g, a)
        via_rep = _class_sum_eft(
            lambda w: sum((-1) ** i * F_rho_eft(r, w) for i, r in enumerate(exteriors)),
            n,
            g,
            a,
        )
        reference = Fraction(q**n, phi)
        error = abs(Fraction(direct) - reference)
        first = sum(
            2 ** (m - 1 - r) * _comb0(n + m - r, 2 * m - r) for r in range(m - 1)
        )
        a1, b1 = _scaled_pair(first, 0, q, n - m)
        a2, b2 = _scaled_pair(2 ** (m - 1) * _comb0(n + m, 2 * m - 1), 0, q, n + 1 - m)
        kk = None
    elif kind == "divisor":
        if k < 1:
            raise ValueError("divisor bound needs k >= 1")
        rho = tensor_power_rep(n, k)
        direct = _class_sum_eft(lambda w: d_k_eft(w, k), n, g, a)
        via_rep = _class_sum_eft(lambda w: F_rho_eft(rho, w), n, g, a)
        reference = Fraction(
            _coprime_total_eft(lambda w: d_k_eft(w, k), n, g), phi
        )
        error = abs(Fraction(direct) - reference)
        first = 2 * (k**m - _comb0(m + k - 1, m)) * _comb0(m * k - m - k, n - m)
        a1, b1 = _scaled_pair(first, 0, q, n - m)
        second = 2 * k ** (m - 1) * _comb0(m * k - k - m + 1, n + 1 - m)
        a2, b2 = _scaled_pair(second, 0, q, n + 1 - m)
        kk = k
    else:
        raise ValueError(f"unknown bound kind {kind!r}")

    bound_a, bound_b = a1 + a2, b1 + b2
    return NamedBoundReport(
        kind=kind,
        q=q,
        n=n,
        m=m,
        g=g.to_string(),
        a=(a % g).to_string(),
        k=kk,
        class_sum=direct,
        reference=reference,
        error=error,
        bound=bound_estimate(bound_a, bound_b, q),
        ok=holds_up_to_sqrt(error, bound_a, bound_b, q),
        cross_check_ok=(direct == via_rep),
    )


# ---------------------------------------------------------------------------
# Moment inequality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentBoundReport:
    q: int
    m: int
    g: str
    a: str
    k: int
    s: float
    moment: complex
    main_term: float
    lhs: float
    rhs: float
    ok: bool

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "g": self.g,
            "a": self.a,
            "k": self.k,
            "s": self.s,
            "moment": [self.moment.real, self.moment.imag],
            "main_term": self.main_term,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ok": self.ok,
        }


def verify_moment_bound(g: Poly, a: Poly, s: float, k: int) -> MomentBoundReport:
    """Check that the averaged k-th L-moment sits near its predicted main
    term phi(g) * q^(-s*deg a) * d_k(a), within the explicit error bound
    phi(g)*(2^(1-k) + sqrt(q)/(k*2^(k-2))) * q^(-m/2) * k^m * 2^(m(k-1))
      + binom(m+k-1, k) * q^((m-1)/2).

    Requires deg a < deg g, gcd(a, g) = 1, s >= 1/2, k >= 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if s < 0.5:
        raise ValueError("requires s >= 1/2")
    m = g.degree
    if a.degree >= m:
        raise ValueError("requires deg a < deg g")
    _check_progression_args(m, g, a)
    q = g.field.q
    phi = euler_phi(g)

    lead = a.coeffs[-1]
    a_monic = a * Poly.constant(g.field, g.field.inv(lead))
    main = phi * q ** (-a.degree * s) * d_k(a_monic, k)
    value = moment_M(g, a, s, k)
    lhs = abs(value - main)
    rhs = (
        phi
        * (1.0 / 2 ** (k - 1) + math.sqrt(q) / (k * 2 ** (k - 2)))
        * q ** (-m / 2)
        * k**m
        * 2 ** (m * (k - 1))
        + math.comb(m + k - 1, k) * q ** ((m - 1) / 2)
    )
    return MomentBoundReport(
        q=q,
        m=m,
        g=g.to_string(),
        a=(a % g).to_string(),
        k=k,
        s=s,
        moment=value,
        main_term=main,
        lhs=lhs,
        rhs=rhs,
        ok=lhs <= rhs * (1 + 1e-9) + 1e-9,
    )


# ---------------------------------------------------------------------------
# Zero statistics: density identity and the odd-character weight identity
# ---------------------------------------------------------------------------


def _fejer_hat(lam: float) -> Callable[[float], float]:
    def hat(x: float) -> float:
        return max(0.0, 1.0 - abs(x) / lam)

    return hat


@dataclass(frozen=True)
class DensityReport:
    q: int
    m: int
    g: str
    lam: float
    odd_primitive_count: int
    frequency_cap: int
    zero_side: float
    decomposition_side: float
    main_term: float
    tolerance: float
    agree: bool

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "g": self.g,
            "lambda": self.lam,
            "odd_primitive_count": self.odd_primitive_count,
            "frequency_cap": self.frequency_cap,
            "zero_side": self.zero_side,
            "decomposition_side": self.decomposition_side,
            "main_term": self.main_term,
            "tolerance": self.tolerance,
            "agree": self.agree,
        }


def one_level_density(
    g: Poly,
    lam: float = 2.0,
    *,
    max_frequency: int | None = None,
    psi_hat: Callable[[float], float] | None = None,
) -> DensityReport:
    """Low-lying zero statistic for the odd primitive characters mod g,
    computed two independent ways.

    The zero side evaluates, for each character, the test function's Fourier
    expansion at the zero angles (read off the inverse roots of the
    L-polynomial).  The decomposition side replaces each frequency-n term by
    the matching prime-power progression sum scaled by q^(-n/2), with a
    minus sign, plus the frequency-zero term (m-1)/m per character.  Both
    sides share the same frequency truncation: by default the full support of
    the Fourier transform (|n| <= lam*m), optionally capped by max_frequency
    (cost grows like q^cap).  With no odd primitive characters both sides are
    zero and the report simply records the empty case.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    grp = unit_group(g)
    q = g.field.q
    m = g.degree
    hat = psi_hat if psi_hat is not None else _fejer_hat(lam)
    cap = int(math.floor(lam * m + 1e-9))
    if max_frequency is not None:
        cap = min(cap, max_frequency)

    chars = odd_primitive_characters(g)
    count = len(chars)
    tol = 1e-6 * max(1, m * count)
    if count == 0:
        return DensityReport(
            q=q,
            m=m,
            g=g.to_string(),
            lam=lam,
            odd_primitive_count=0,
            frequency_cap=cap,
            zero_side=0.0,
            decomposition_side=0.0,
            main_term=0.0,
            tolerance=tol,
            agree=True,
        )

    hat0 = hat(0.0)
    weights = [hat(n / m) / m for n in range(1, cap + 1)]

    zero_side = 0.0
    for chi in chars:
        units = []
        for alpha in L_poly(chi).inverse_roots():
            w = alpha / math.sqrt(q)
            w /= abs(w)
            units.append(w)
        acc = len(units) * hat0 / m
        for w in units:
            pw = 1.0 + 0.0j
            for wt in weights:
                pw *= w
                acc += wt * 2.0 * pw.real
        zero_side += acc

    decomposition_side = 0.0
    for chi in chars:
        acc = (m - 1) / m * hat0
        for n, wt in enumerate(weights, start=1):
            if wt == 0.0:
                continue
            s_n = _character_class_sum(chi, _lambda_class_sums(g, n))
            acc -= wt * q ** (-n / 2) * 2.0 * s_n.real
        decomposition_side += acc

    return DensityReport(
        q=q,
        m=m,
        g=g.to_string(),
        lam=lam,
        odd_primitive_count=count,
        frequency_cap=cap,
        zero_side=zero_side,
        decomposition_side=decomposition_side,
        main_term=hat0 * count,
        tolerance=tol,
        agree=abs(zero_side - decomposition_side) <= tol,
    )


@dataclass(frozen=True)
class WeightIdentityReport:
    q: int
    m: int
    g: str
    n: int
    character_side: complex
    progression_side: Fraction
    scaled_integer: int
    tolerance: float
    agree: bool

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "g": self.g,
            "n": self.n,
            "character_side": [self.character_side.real, self.character_side.imag],
            "progression_side": _rat_json(self.progression_side),
            "scaled_integer": self.scaled_integer,
            "tolerance": self.tolerance,
            "agree": self.agree,
        }


def constant_class_weight(q: int, alpha: int) -> Fraction:
    """Weight attached to the constant residue class alpha in the
    odd-character kernel: 1 - 1/(q-1) at alpha = 1, else -1/(q-1).
    The weights over all nonzero constants sum to zero."""
    if not 1 <= alpha < q:
        raise ValueError("alpha must index a nonzero constant")
    if alpha == 1:
        return Fraction(q - 2, q - 1)
    return Fraction(-1, q - 1)


def odd_character_weight_identity(g: Poly, n: int) -> WeightIdentityReport:
    """Two evaluations of the prime-power sum against all odd primitive
    characters mod g.

    The character side sums prime-power degree weights against each odd
    primitive character directly.  The progression side uses only weighted
    progression counts: for every divisor h != 1 of g, with sign mu(g/h) and
    scale phi(h), it adds the constant-class weights times the prime-power
    sums in constant classes mod h, minus the same sums restricted to
    polynomials sharing a factor with g.  The progression side is an exact
    rational whose multiple by (q-1) is an integer.
    """
    grp = unit_group(g)
    q = g.field.q
    m = g.degree
    if n < 1:
        raise ValueError("n must be >= 1")

    lhs = 0j
    for chi in odd_primitive_characters(g):
        lhs += _character_class_sum(chi, _lambda_class_sums(g, n))

    g_primes = [p for p, _ in factor(g)]
    rhs = Fraction(0)
    for h in _monic_divisors(g):
        if h.is_one:
            continue
        sign = mobius(g // h)
        if sign == 0:
            continue
        phi_h = euler_phi(h)
        lam_h = _lambda_class_sums(h, n)
        for alpha in range(1, q):
            w = constant_class_weight(q, alpha)
            residue = Poly.constant(g.field, alpha)
            full = lam_h.get(residue, 0)
            shared = 0
            for p in g_primes:
                d = p.degree
                if n % d == 0 and (p ** (n // d)) % h == residue:
                    shared += d
            rhs += phi_h * sign * w * (full - shared)

    scaled = rhs * (q - 1)
    if scaled.denominator != 1:
        raise AssertionError("progression side times (q-1) must be an integer")
    tol = 1e-8 * max(1, n * q ** max(n // 2, 1) * max(1, m))
    agree = abs(lhs.real - float(rhs)) <= tol and abs(lhs.imag) <= tol
    return WeightIdentityReport(
        q=q,
        m=m,
        g=g.to_string(),
        n=n,
        character_side=lhs,
        progression_side=rhs,
        scaled_integer=int(scaled),
        tolerance=tol,
        agree=agree,
    )
