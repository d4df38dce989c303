"""Characters of unit groups modulo squarefree polynomials, and their L-series.

For a squarefree monic modulus ``g = p_1 * ... * p_r`` over ``F_q``, the
residues coprime to ``g`` form a direct product of cyclic groups, one factor
of order ``q**deg(p_i) - 1`` per prime divisor.  A character is stored as an
integer exponent vector against fixed per-factor generators, so every
character value is a root of unity with an exactly known rational phase.

The L-series of a nontrivial character, written in the variable
``u = q**(-s)``, is a polynomial of degree at most ``deg g - 1`` whose
coefficients are character sums over monic polynomials.  This module builds
those polynomials by direct enumeration, finds their roots numerically, and
exposes two families of cross-checked identities:

* power sums over inverse roots match weighted prime-power character sums
  (the coefficient-by-coefficient comparison of the two logarithmic
  derivatives of the L-series), and
* twisted divisor moments admit both a character-sum evaluation and a finite
  divisor-sum evaluation, and the moment of the primitive characters alone is
  recovered by inclusion-exclusion over divisors of the modulus.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from .arithfun import d_k_eft, eft_histogram, mobius, vonmangoldt_eft
from .field import Field
from .polyring import (
    Poly,
    _distinct_prime_divisors,
    enumerate_monic,
    factor,
    poly_gcd,
    poly_inverse_mod,
    poly_pow_mod,
)


def _sorted_residues(field: Field, bound: int, *, include_zero: bool) -> list[Poly]:
    """All polynomials of degree < bound, sorted by (degree, coefficients)."""
    out = []
    for coeffs in itertools.product(range(field.q), repeat=bound):
        r = Poly(field, coeffs)
        if include_zero or not r.is_zero:
            out.append(r)
    out.sort(key=lambda r: r.sort_key())
    return out


def _cyclic_dlog_table(p: Poly) -> tuple[Poly, list[Poly], dict[Poly, int]]:
    """Generator, power list, and discrete-log table of the units mod a prime.

    The generator is the first residue in (degree, coefficient) order whose
    multiplicative order is the full group order q**deg(p) - 1.
    """
    field = p.field
    order = field.q ** p.degree - 1
    checks = [order // ell for ell in _distinct_prime_divisors(order)] if order > 1 else []
    gen = None
    for r in _sorted_residues(field, p.degree, include_zero=False):
        if all(not poly_pow_mod(r, e, p).is_one for e in checks):
            gen = r
            break
    assert gen is not None
    powers = [Poly.one(field)]
    cur = Poly.one(field)
    for _ in range(order - 1):
        cur = (cur * gen) % p
        powers.append(cur)
    table = {pw: j for j, pw in enumerate(powers)}
    assert len(table) == order, "chosen residue does not generate the unit group"
    return gen, powers, table


class UnitGroup:
    """Units modulo a squarefree monic polynomial, as a product of cyclic factors.

    Attributes:
        g: the modulus.
        primes: its monic prime divisors, in (degree, coefficient) order.
        orders: cyclic factor orders ``q**deg(p) - 1``, aligned with ``primes``.
        order: the total unit count (the polynomial Euler phi of ``g``).
    """

    def __init__(self, g: Poly) -> None:
        if g.degree < 1:
            raise ValueError("modulus must have degree at least 1")
        if not g.is_monic:
            raise ValueError("modulus must be monic")
        fac = factor(g)
        if any(mult > 1 for _, mult in fac):
            raise ValueError("modulus must be squarefree")
        self.g = g
        self.field = g.field
        self.primes: tuple[Poly, ...] = tuple(
            sorted((p for p, _ in fac), key=lambda p: p.sort_key())
        )
        q = self.field.q
        self.orders: tuple[int, ...] = tuple(q ** p.degree - 1 for p in self.primes)
        self.order: int = math.prod(self.orders)

        self._generators: list[Poly] = []
        self._powers: list[list[Poly]] = []
        self._dlogs: list[dict[Poly, int]] = []
        for p in self.primes:
            gen, powers, table = _cyclic_dlog_table(p)
            self._generators.append(gen)
            self._powers.append(powers)
            self._dlogs.append(table)

        # Idempotent lifts: _idempotents[i] is 1 mod primes[i], 0 mod the rest.
        self._idempotents: list[Poly] = []
        for p in self.primes:
            rest = g // p
            inv = poly_inverse_mod(rest % p, p)
            self._idempotents.append((rest * inv) % g)

        # Rational phases of all characters live in (1/L)Z for L = lcm(orders).
        self.phase_lcm: int = math.lcm(*self.orders)
        self._zeta: tuple[complex, ...] = tuple(
            cmath.exp(2j * math.pi * j / self.phase_lcm) for j in range(self.phase_lcm)
        )
        self._weights: tuple[int, ...] = tuple(self.phase_lcm // o for o in self.orders)

        self._unit_logs: dict[Poly, tuple[int, ...]] = {}
        for r in _sorted_residues(self.field, g.degree, include_zero=True):
            logs = []
            for p, table in zip(self.primes, self._dlogs):
                rp = r % p
                if rp.is_zero:
                    logs = None
                    break
                logs.append(table[rp])
            if logs is not None:
                self._unit_logs[r] = tuple(logs)
        assert len(self._unit_logs) == self.order

        self._zeta_arr = np.asarray(self._zeta, dtype=complex)
        # per-weight-table (log matrix, count vector) pairs; keyed by table
        # identity, with a strong reference kept so ids cannot be recycled
        self._weight_arrays: dict[int, tuple[dict, np.ndarray, np.ndarray]] = {}

    def _arrays_for(self, weights: dict[Poly, int]) -> tuple[np.ndarray, np.ndarray]:
        """Unit-log matrix and weight vector for the invertible entries of a
        residue weight table, cached per table object."""
        entry = self._weight_arrays.get(id(weights))
        if entry is not None and entry[0] is weights:
            return entry[1], entry[2]
        rows: list[tuple[int, ...]] = []
        cnts: list[int] = []
        for r, cnt in weights.items():
            logs = self._unit_logs.get(r)
            if logs is not None:
                rows.append(logs)
                cnts.append(cnt)
        logmat = np.array(rows, dtype=np.int64).reshape(len(rows), len(self.primes))
        cntvec = np.array(cnts, dtype=np.int64)
        if len(self._weight_arrays) >= 1024:
            self._weight_arrays.clear()
        self._weight_arrays[id(weights)] = (weights, logmat, cntvec)
        return logmat, cntvec

    def units(self) -> tuple[Poly, ...]:
        """All unit residues, in (degree, coefficient) order."""
        return tuple(self._unit_logs)

    def is_unit(self, r: Poly) -> bool:
        return (r % self.g) in self._unit_logs

    def dlog_vector(self, f: Poly) -> tuple[int, ...]:
        """Per-factor discrete logs of ``f``; error if ``f`` shares a prime with ``g``."""
        logs = self._unit_logs.get(f % self.g)
        if logs is None:
            raise ValueError("element is not invertible modulo the modulus")
        return logs

    def from_dlog_vector(self, vector: tuple[int, ...]) -> Poly:
        """The unit residue with the given per-factor discrete logs."""
        if len(vector) != len(self.primes):
            raise ValueError("discrete-log vector has the wrong length")
        acc = Poly.zero(self.field)
        for v, o, powers, idem in zip(vector, self.orders, self._powers, self._idempotents):
            acc = acc + idem * powers[v % o]
        return acc % self.g


@lru_cache(maxsize=None)
def unit_group(g: Poly) -> UnitGroup:
    """The (cached) unit group modulo a squarefree monic polynomial."""
    return UnitGroup(g)


def euler_phi(g: Poly) -> int:
    """Number of unit residues modulo a squarefree monic polynomial."""
    return unit_group(g).order


class DirichletCharacter:
    """A character of the units mod ``g``, stored as an exponent vector.

    The value on a unit with discrete-log vector ``(v_1..v_r)`` is
    ``exp(2*pi*i * sum(e_i * v_i / o_i))``; on residues sharing a factor with
    the modulus the value is 0.
    """

    __slots__ = ("group", "exponents", "_scaled")

    def __init__(self, group: UnitGroup, exponents) -> None:
        exps = tuple(e % o for e, o in zip(exponents, group.orders, strict=True))
        self.group = group
        self.exponents = exps
        lcm = group.phase_lcm
        self._scaled = tuple((e * w) % lcm for e, w in zip(exps, group._weights))

    @property
    def modulus(self) -> Poly:
        return self.group.g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.group.g == other.group.g and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.group.g, self.exponents))

    def __repr__(self) -> str:
        return f"DirichletCharacter(mod {self.group.g!r}, exponents={self.exponents})"

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def is_primitive(self) -> bool:
        """True when the character is nontrivial on every cyclic factor."""
        return all(e != 0 for e in self.exponents)

    def is_even(self) -> bool:
        """True when the character is trivial on the constants of the field."""
        field = self.group.field
        return all(
            self.phase_index(Poly.constant(field, c)) == 0 for c in field.units()
        )

    def is_odd(self) -> bool:
        return not self.is_even()

    def phase_index(self, f: Poly) -> int | None:
        """Numerator of the phase over ``phase_lcm``, or None on non-units."""
        logs = self.group._unit_logs.get(f % self.group.g)
        if logs is None:
            return None
        return sum(s * v for s, v in zip(self._scaled, logs)) % self.group.phase_lcm

    def phase(self, f: Poly) -> Fraction | None:
        """Exact phase in [0, 1) as a rational, or None on non-units."""
        idx = self.phase_index(f)
        if idx is None:
            return None
        return Fraction(idx, self.group.phase_lcm)

    def value(self, f: Poly) -> complex:
        idx = self.phase_index(f)
        if idx is None:
            return 0j
        return self.group._zeta[idx]

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.group, tuple(-e for e in self.exponents))


def characters(g: Poly) -> Iterator[DirichletCharacter]:
    """All characters of the units mod ``g``, the trivial one first."""
    grp = unit_group(g)
    for exps in itertools.product(*(range(o) for o in grp.orders)):
        yield DirichletCharacter(grp, exps)


def character_from_exponents(g: Poly, exponents) -> DirichletCharacter:
    return DirichletCharacter(unit_group(g), tuple(exponents))


def primitive_characters(g: Poly) -> list[DirichletCharacter]:
    return [chi for chi in characters(g) if chi.is_primitive()]


def odd_primitive_characters(g: Poly) -> list[DirichletCharacter]:
    return [chi for chi in characters(g) if chi.is_primitive() and chi.is_odd()]


def primitive_count(g: Poly) -> int:
    """Closed form for the number of primitive characters mod squarefree ``g``."""
    grp = unit_group(g)
    q = grp.field.q
    return math.prod(q ** p.degree - 2 for p in grp.primes)


def odd_primitive_count(g: Poly) -> int:
    """Closed form for the number of odd primitive characters mod squarefree ``g``.

    Equals ``(q-2)/(q-1) * (prod(q**deg(p) - 2) - (-1)**r)`` for ``r`` prime
    divisors; the quotient is always an integer because each factor is
    congruent to -1 mod q-1.
    """
    grp = unit_group(g)
    q = grp.field.q
    prod = math.prod(q ** p.degree - 2 for p in grp.primes)
    value = Fraction(q - 2, q - 1) * (prod - (-1) ** len(grp.primes))
    assert value.denominator == 1
    return int(value)


# ---------------------------------------------------------------------------
# Class tallies over monic polynomials of a fixed degree
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _residue_counts(g: Poly, n: int) -> dict[Poly, int]:
    """How many monic polynomials of degree n fall in each residue class mod g."""
    counts: dict[Poly, int] = {}
    for f in enumerate_monic(g.field, n):
        r = f % g
        counts[r] = counts.get(r, 0) + 1
    return counts


@lru_cache(maxsize=None)
def _lambda_class_sums(g: Poly, n: int) -> dict[Poly, int]:
    """Prime-power degree-weight totals per residue class over monic degree n."""
    out: dict[Poly, int] = {}
    for r, row in eft_histogram(g, n).items():
        s = sum(vonmangoldt_eft(w) * cnt for w, cnt in row.items())
        if s:
            out[r] = s
    return out


@lru_cache(maxsize=None)
def _dk_class_sums(g: Poly, n: int, k: int) -> dict[Poly, int]:
    """Ordered-k-factorization count totals per residue class over monic degree n."""
    out: dict[Poly, int] = {}
    for r, row in eft_histogram(g, n).items():
        out[r] = sum(d_k_eft(w, k) * cnt for w, cnt in row.items())
    return out


def _character_class_sum(chi: DirichletCharacter, weights: dict[Poly, int]) -> complex:
    """Sum of ``weight * chi(residue)`` over a residue-class weight table."""
    grp = chi.group
    logmat, cntvec = grp._arrays_for(weights)
    if cntvec.shape[0] == 0:
        return 0j
    idx = (logmat @ np.asarray(chi._scaled, dtype=np.int64)) % grp.phase_lcm
    return complex(cntvec @ grp._zeta_arr[idx])


# ---------------------------------------------------------------------------
# L-series as polynomials in u = q**(-s)
# ---------------------------------------------------------------------------


def _u_from_s(q: int, s: complex) -> complex:
    return cmath.exp(-complex(s) * math.log(q))


class LPolynomial:
    """The L-series of a nontrivial character as a polynomial in u = q**(-s).

    ``coefficients[n]`` is the character sum over monic polynomials of degree
    ``n`` coprime to the modulus, for ``n`` up to ``deg g - 1``; higher
    coefficients vanish by orthogonality.
    """

    __slots__ = ("character", "coefficients")

    def __init__(self, character: DirichletCharacter, coefficients: tuple[complex, ...]):
        self.character = character
        self.coefficients = coefficients

    def __repr__(self) -> str:
        return f"LPolynomial({self.character!r}, degree {self.effective_degree()})"

    def effective_degree(self) -> int:
        tol = 1e-8 * max(1.0, max(abs(c) for c in self.coefficients))
        deg = 0
        for i, c in enumerate(self.coefficients):
            if abs(c) > tol:
                deg = i
        return deg

    def evaluate_u(self, u: complex) -> complex:
        total = 0j
        for c in reversed(self.coefficients):
            total = total * u + c
        return total

    def evaluate_s(self, s: complex) -> complex:
        q = self.character.group.field.q
        return self.evaluate_u(_u_from_s(q, s))

    def roots(self) -> np.ndarray:
        """All complex roots in the u-variable (empty for constant series)."""
        deg = self.effective_degree()
        if deg == 0:
            return np.empty(0, dtype=complex)
        top_first = list(self.coefficients[: deg + 1])[::-1]
        return np.roots(np.array(top_first, dtype=complex))

    def inverse_roots(self) -> np.ndarray:
        return 1.0 / self.roots()


@lru_cache(maxsize=None)
def L_poly(chi: DirichletCharacter) -> LPolynomial:
    """The L-series polynomial of a nontrivial character.

    Coefficients are character sums over monic polynomials of each degree
    below ``deg g``; the degree-``deg g`` sum is also computed and checked to
    vanish, which pins down the polynomial truncation.
    """
    if chi.is_trivial():
        raise ValueError(
            "the trivial character has no L-polynomial here; "
            "sum divisor weights directly instead"
        )
    g = chi.modulus
    m = g.degree
    q = g.field.q
    coeffs = [_character_class_sum(chi, _residue_counts(g, n)) for n in range(m + 1)]
    extra = coeffs.pop()
    assert abs(extra) <= 1e-9 * q**m, "coefficient at the modulus degree must vanish"
    assert abs(coeffs[0] - 1) <= 1e-12
    coeffs[0] = 1.0 + 0j
    return LPolynomial(chi, tuple(coeffs))


def L_roots(chi: DirichletCharacter) -> np.ndarray:
    """Roots of the character's L-series in the u-variable."""
    return L_poly(chi).roots()


def gammas(chi: DirichletCharacter) -> list[float]:
    """Root phases: values gamma in [0, 2*pi/log q) with inverse roots of
    phase ``gamma * log q``, one per root, sorted ascending."""
    q = chi.group.field.q
    period = 2 * math.pi / math.log(q)
    out = []
    for alpha in L_poly(chi).inverse_roots():
        gamma = (cmath.phase(alpha) / math.log(q)) % period
        if gamma >= period:  # float modulo of a tiny negative rounds up
            gamma = 0.0
        out.append(gamma)
    return sorted(out)


def critical_line_deviation(chi: DirichletCharacter) -> float:
    """Largest deviation of any root modulus from q**(-1/2); 0.0 if no roots."""
    q = chi.group.field.q
    target = q ** -0.5
    roots = L_poly(chi).roots()
    if len(roots) == 0:
        return 0.0
    return float(max(abs(abs(u) - target) for u in roots))


# ---------------------------------------------------------------------------
# Power sums over inverse roots vs. prime-power character sums
# ---------------------------------------------------------------------------


def vonmangoldt_power_sum(chi: DirichletCharacter, n: int) -> tuple[complex, complex]:
    """Both sides of the root-power / prime-power identity at index ``n``.

    Returns ``(zero_side, sum_side)`` where
    ``zero_side = -sum((alpha/sqrt(q))**|n|)`` over inverse roots ``alpha``
    (conjugated for negative ``n``) and
    ``sum_side = q**(-|n|/2) * sum(Lambda(f) * chi_s(f))`` over monic ``f`` of
    degree ``|n|`` coprime to the modulus, with ``chi_s`` the character itself
    for positive ``n`` and its conjugate for negative ``n``.  The two agree
    because both are coefficients of the logarithmic derivative of the
    L-series.
    """
    if n == 0:
        raise ValueError("index must be a nonzero integer")
    if chi.is_trivial():
        raise ValueError("character must be nontrivial")
    g = chi.modulus
    q = g.field.q
    k = abs(n)
    side_chi = chi if n > 0 else chi.conjugate()
    sum_side = q ** (-k / 2) * _character_class_sum(side_chi, _lambda_class_sums(g, k))
    alphas = L_poly(chi).inverse_roots()
    if len(alphas) == 0:
        zero_side = 0j
    else:
        zero_side = -complex(np.sum((alphas / math.sqrt(q)) ** k))
    if n < 0:
        zero_side = zero_side.conjugate()
    return zero_side, sum_side


# ---------------------------------------------------------------------------
# Twisted divisor moments
# ---------------------------------------------------------------------------


def _monic_divisors(g: Poly) -> list[Poly]:
    """All monic divisors of a squarefree monic polynomial, smallest first."""
    divs = [Poly.one(g.field)]
    for p in unit_group(g).primes:
        divs += [d * p for d in divs]
    return sorted(divs, key=lambda d: d.sort_key())


def _require_unit(g: Poly, a: Poly) -> None:
    if not poly_gcd(a, g).is_one:
        raise ValueError("residue must be invertible modulo the modulus")


def moment_M(g: Poly, a: Poly, s: complex, k: int = 1) -> complex:
    """Character-sum form of the weighted non-principal moment at residue ``a``.

    Sums, over every divisor ``h != 1`` of ``g`` and every primitive character
    mod ``h``, the term ``conj(chi(a)) * L(s,chi)**k`` times the k-th power of
    the Euler factors at the primes of ``g/h``.  Equivalently (and checked by
    :func:`moment_M_dual`) it is the orthogonality-weighted difference between
    the class-``a`` and all-classes ordered-factorization counts.
    """
    if k < 1:
        raise ValueError("power k must be a positive integer")
    grp = unit_group(g)
    _require_unit(g, a)
    q = grp.field.q
    u = _u_from_s(q, s)
    total = 0j
    for h in _monic_divisors(g):
        if h.degree == 0:
            continue
        cof = g // h
        cof_primes = [p for p in grp.primes if (cof % p).is_zero]
        for chi in characters(h):
            if not chi.is_primitive():
                continue
            lval = L_poly(chi).evaluate_u(u)
            euler = 1.0 + 0j
            for p in cof_primes:
                euler *= 1.0 - chi.value(p) * u**p.degree
            total += chi.value(a).conjugate() * lval**k * euler**k
    return total


def moment_M_dual(g: Poly, a: Poly, s: complex, k: int = 1) -> complex:
    """Finite divisor-sum form of the weighted non-principal moment.

    Evaluates ``sum_n (phi(g) * S_a(n) - S_coprime(n)) * q**(-n*s)`` where
    ``S_a(n)`` (resp. ``S_coprime(n)``) totals ordered k-factorization counts
    over monic degree-n polynomials in the class of ``a`` (resp. coprime to
    ``g``).  The sum is supported on ``n <= k*(deg g - 1)``.
    """
    if k < 1:
        raise ValueError("power k must be a positive integer")
    grp = unit_group(g)
    _require_unit(g, a)
    q = grp.field.q
    u = _u_from_s(q, s)
    m = g.degree
    a_res = a % g
    total = 0j
    for n in range(k * (m - 1) + 1):
        sums = _dk_class_sums(g, n, k)
        s_class = sums.get(a_res, 0)
        s_coprime = sum(v for r, v in sums.items() if grp.is_unit(r))
        total += (grp.order * s_class - s_coprime) * u**n
    return total


class MomentSummary(NamedTuple):
    """Primitive-character moment computed two ways, with its average's deviation."""

    direct: complex
    sieve: complex
    primitive_count: int
    deviation: float


def moment_primitive_sum(g: Poly, s: complex, k: int = 1) -> MomentSummary:
    """Sum of ``L(s,chi)**k`` over primitive characters mod ``g``, two ways.

    The direct path enumerates primitive characters.  The sieve path runs
    inclusion-exclusion over divisors ``g'`` of ``g``: it combines
    ``moment_M(g', vbar, s, k)`` over monic divisors ``v`` of ``(g/g')**k``,
    weighted by the sign ``mu(g/g')``, the coefficient
    ``prod((-1)**e * C(k,e))`` over the prime exponents ``e`` of ``v``, and
    ``q**(-s*deg v)``; ``vbar`` is the inverse of ``v`` mod ``g'``.  The
    deviation reported is ``|direct / count - 1|`` for the closed-form
    primitive count (NaN when the count is zero).
    """
    if k < 1:
        raise ValueError("power k must be a positive integer")
    grp = unit_group(g)
    q = grp.field.q
    u = _u_from_s(q, s)

    direct = 0j
    for chi in characters(g):
        if chi.is_primitive():
            direct += L_poly(chi).evaluate_u(u) ** k

    sieve = 0j
    for gp in _monic_divisors(g):
        if gp.degree == 0:
            continue
        cof = g // gp
        mu_sign = mobius(cof)
        cof_primes = [p for p in grp.primes if (cof % p).is_zero]
        for exps in itertools.product(range(k + 1), repeat=len(cof_primes)):
            v = Poly.one(grp.field)
            weight = mu_sign
            deg_v = 0
            for p, e in zip(cof_primes, exps):
                v = v * p**e
                weight *= (-1) ** e * math.comb(k, e)
                deg_v += e * p.degree
            if weight == 0:
                continue
            vbar = poly_inverse_mod(v % gp, gp)
            sieve += weight * u**deg_v * moment_M(gp, vbar, s, k)

    count = primitive_count(g)
    deviation = abs(direct / count - 1) if count else float("nan")
    return MomentSummary(direct, sieve, count, deviation)
