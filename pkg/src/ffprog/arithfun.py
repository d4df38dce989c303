"""Arithmetic functions of monic polynomials over F_q[t].

Every function here depends on its polynomial argument only through the
extended factorization type (EFT): the multiset of (degree, multiplicity)
pairs of the prime factorization.  An EFT is canonically represented as a
tuple of (d, l) pairs sorted ascending, with repeats allowed (two distinct
primes of equal degree and equal multiplicity contribute two equal pairs).
Text form: "d^l" factors joined by a middle dot, e.g. "1^2·3^1".

The trace-style functions (F_rho and the tuple/prime convolution sums) are
computed by direct enumeration of assignments of cycles or slots to prime
instances, memoized at EFT granularity, and exact rational bookkeeping is
asserted to land on integers.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .polyring import Poly, enumerate_monic, factor
from .symrep import VirtualCharacter, partitions, z_of

EFT = tuple  # tuple of (degree, multiplicity) pairs, sorted ascending


# -- extended factorization types -----------------------------------------------


def eft_of(f: Poly) -> EFT:
    """Extended factorization type of a monic polynomial."""
    return tuple(sorted((p.degree, e) for p, e in factor(f)))


def eft_weight(w: EFT) -> int:
    return sum(d * l for d, l in w)


def eft_to_string(w: EFT) -> str:
    if not w:
        return "1"
    return "·".join(f"{d}^{l}" for d, l in w)


def eft_from_string(text: str) -> EFT:
    text = text.strip()
    if text == "1":
        return ()
    pairs = []
    for part in text.split("·"):
        d, _, l = part.partition("^")
        if not l:
            raise ValueError(f"bad factorization-type entry {part!r}")
        pairs.append((int(d), int(l)))
    if any(d < 1 or l < 1 for d, l in pairs):
        raise ValueError(f"bad factorization type {text!r}")
    return tuple(sorted(pairs))


@lru_cache(maxsize=None)
def enumerate_efts(n: int) -> tuple[EFT, ...]:
    """All abstract factorization types of total weight n, sorted."""

    def rec(remaining: int, min_pair: tuple[int, int]):
        if remaining == 0:
            yield ()
            return
        for d in range(1, remaining + 1):
            for l in range(1, remaining // d + 1):
                pair = (d, l)
                if pair < min_pair:
                    continue
                for rest in rec(remaining - d * l, pair):
                    yield (pair,) + rest

    return tuple(sorted(rec(n, (1, 1))))


@lru_cache(maxsize=None)
def eft_sequence(field, n: int) -> tuple[EFT, ...]:
    """Factorization types of all monic degree-n polynomials, in enumeration
    order.  Cached per (field, n) so the factorization pass is shared by every
    consumer (residue histograms for all moduli, identity sweeps, ...)."""
    return tuple(eft_of(f) for f in enumerate_monic(field, n))


@lru_cache(maxsize=None)
def _eft_codes(field, n: int) -> "np.ndarray":
    """Factorization types of monic degree-n polynomials, in enumeration
    order, as indices into enumerate_efts(n)."""
    index = {w: i for i, w in enumerate(enumerate_efts(n))}
    return np.fromiter(
        (index[w] for w in eft_sequence(field, n)),
        dtype=np.int64,
        count=field.q**n,
    )


def _histogram_vectorized(g: Poly, n: int) -> dict[Poly, dict[EFT, int]]:
    """Residue-by-type tally via linear algebra over a prime field: the i-th
    monic polynomial has the base-q digits of i as coefficients, so residues
    mod g come from one integer matrix product with the table of t^j mod g."""
    field = g.field
    q = field.q
    m = g.degree
    count = q**n
    tpow = np.zeros((n + 1, m), dtype=np.int64)
    t = Poly.x(field)
    cur = Poly.one(field)
    for j in range(n + 1):
        row = (cur % g).coeffs
        tpow[j, : len(row)] = row
        cur = cur * t
    idx = np.arange(count, dtype=np.int64)
    digits = np.empty((count, n), dtype=np.int64)
    for j in range(n):
        digits[:, j] = (idx // q**j) % q
    rem = (digits @ tpow[:n] + tpow[n]) % q
    res_idx = rem @ (q ** np.arange(m, dtype=np.int64))
    ntypes = len(enumerate_efts(n))
    combined = res_idx * ntypes + _eft_codes(field, n)
    counts = np.bincount(combined, minlength=q**m * ntypes).reshape(q**m, ntypes)
    efts = enumerate_efts(n)
    tally: dict[Poly, dict[EFT, int]] = {}
    for r in range(q**m):
        nz = np.nonzero(counts[r])[0]
        if nz.size == 0:
            continue
        residue = Poly(field, [(r // q**j) % q for j in range(m)])
        tally[residue] = {efts[c]: int(counts[r, c]) for c in nz}
    return tally


@lru_cache(maxsize=None)
def eft_histogram(g: Poly, n: int) -> dict[Poly, dict[EFT, int]]:
    """Count monic degree-n polynomials by (residue class mod g, factorization
    type).  Returns residue -> {eft: count}.  The result is cached and shared:
    treat it as read-only."""
    if g.degree < 1:
        raise ValueError("modulus must have degree at least 1")
    if g.field.k == 1 and n >= 1:
        return _histogram_vectorized(g, n)
    tally: dict[Poly, dict[EFT, int]] = {}
    for f, w in zip(enumerate_monic(g.field, n), eft_sequence(g.field, n)):
        row = tally.setdefault(f % g, {})
        row[w] = row.get(w, 0) + 1
    return tally


# -- classical multiplicative functions ----------------------------------------


def mobius_eft(w: EFT) -> int:
    if any(l >= 2 for _, l in w):
        return 0
    return (-1) ** len(w)


def vonmangoldt_eft(w: EFT) -> int:
    """Degree of the underlying prime on prime powers, 0 elsewhere."""
    if len(w) == 1:
        return w[0][0]
    return 0


def d_k_eft(w: EFT, k: int) -> int:
    """Number of ordered k-tuples of monics with the given product shape."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = 1
    for _, l in w:
        out *= math.comb(l + k - 1, k - 1)
    return out


def mobius(f: Poly) -> int:
    return mobius_eft(eft_of(f))


def vonmangoldt(f: Poly) -> int:
    return vonmangoldt_eft(eft_of(f))


def d_k(f: Poly, k: int) -> int:
    return d_k_eft(eft_of(f), k)


# -- fixed-tuple counts and factorization functions -------------------------------


@lru_cache(maxsize=None)
def fix_count(lam: tuple[int, ...], w: EFT) -> int:
    """Number of orderings of the root multiset of a polynomial of type w
    fixed by the composition of Frobenius with a permutation of cycle type lam.

    Each cycle of length c must be filled by the orbit of a root of some
    prime of degree d dividing c, visiting all d conjugates c/d times, so it
    consumes c/d of that prime's multiplicity and contributes a factor d
    (the choice of starting conjugate).  All cycles must be filled and every
    multiplicity exactly exhausted.
    """
    if sum(lam) != eft_weight(w):
        raise ValueError("cycle type and factorization type have different weights")
    cycles = tuple(sorted(Counter(lam).items()))
    primes = tuple(sorted(w))

    memo: dict = {}

    def rec(i: int, cyc: tuple) -> int:
        if i == len(primes):
            return 1 if all(cnt == 0 for _, cnt in cyc) else 0
        key = (i, cyc)
        if key in memo:
            return memo[key]
        d, e = primes[i]
        eligible = [j for j, (c, cnt) in enumerate(cyc) if cnt and c % d == 0]
        total = 0

        def choose(pos: int, need: int, ways: int, current: tuple) -> None:
            nonlocal total
            if need == 0:
                total += ways * rec(i + 1, current)
                return
            if pos == len(eligible):
                return
            j = eligible[pos]
            c, cnt = current[j]
            step = c // d
            max_take = min(cnt, need // step)
            for take in range(max_take + 1):
                nxt = current[:j] + ((c, cnt - take),) + current[j + 1 :]
                choose(
                    pos + 1,
                    need - take * step,
                    ways * math.comb(cnt, take) * d**take,
                    nxt,
                )

        choose(0, e, 1, cyc)
        memo[key] = total
        return total

    return rec(0, cycles)


@lru_cache(maxsize=None)
def F_rho_eft(rho: VirtualCharacter, w: EFT) -> int:
    """Value of the factorization function of rho on any polynomial of type w:
    the character average of fixed-ordering counts over all cycle types."""
    n = rho.n
    if eft_weight(w) != n:
        raise ValueError("factorization type weight must equal the degree of rho")
    total = Fraction(0)
    for lam in partitions(n):
        c = rho.value(lam)
        if c == 0:
            continue
        total += Fraction(c * fix_count(lam, w), z_of(lam))
    if total.denominator != 1:
        raise AssertionError(f"non-integral factorization-function value {total}")
    return int(total)


def F_rho(rho: VirtualCharacter, f: Poly) -> int:
    if f.degree != rho.n:
        raise ValueError("polynomial degree must equal the degree of rho")
    return F_rho_eft(rho, eft_of(f))


# -- convolution sums over tuples of prime powers / primes --------------------------


def _tagged_eft(f: Poly, h: Poly) -> tuple:
    """EFT of f with each prime instance tagged by whether it divides h."""
    return tuple(
        sorted((p.degree, e, (h % p).is_zero if h.degree >= p.degree else False)
               for p, e in factor(f))
    )


@lru_cache(maxsize=None)
def _tuple_assignment_count(degrees: tuple[int, ...], tagged: tuple) -> int:
    """Sum over ways to fill the degree slots with prime powers multiplying to
    the tagged type, weighted by the prime degree per slot (blocked tags are
    unused here; kept so callers share one key shape)."""
    memo: dict = {}

    def rec(si: int, exps: tuple) -> int:
        if si == len(degrees):
            return 1 if all(e == 0 for e in exps) else 0
        state = (si, exps)
        if state in memo:
            return memo[state]
        ni = degrees[si]
        total = 0
        seen = set()
        for j, e_rem in enumerate(exps):
            d = tagged[j][0]
            if e_rem == 0 or ni % d != 0 or ni // d > e_rem:
                continue
            key = (d, e_rem)
            if key in seen:
                # identical remaining instances give identical branches;
                # count each instance separately but compute once
                continue
            seen.add(key)
            mult = sum(
                1
                for j2, e2 in enumerate(exps)
                if tagged[j2][0] == d and e2 == e_rem
            )
            nxt = exps[:j] + (e_rem - ni // d,) + exps[j + 1 :]
            total += mult * d * rec(si + 1, nxt)
        memo[state] = total
        return total

    return rec(0, tuple(e for _, e, _ in tagged))


def F_tuple(degrees, f: Poly) -> int:
    """Sum over ordered tuples (f_1..f_w) of monics with the given degrees and
    product f of the product of prime-power degree weights: each f_i must be a
    prime power (others contribute zero weight)."""
    degrees = tuple(degrees)
    if sum(degrees) != f.degree:
        raise ValueError("slot degrees must sum to the degree of f")
    return _tuple_assignment_count(degrees, _tagged_eft(f, Poly.one(f.field)))


def _check_slots(degrees, f: Poly) -> tuple[int, ...]:
    degrees = tuple(degrees)
    if any(d < 1 for d in degrees):
        raise ValueError("slot degrees must be positive")
    if sum(degrees) != f.degree:
        raise ValueError("slot degrees must sum to the degree of f")
    return degrees


@lru_cache(maxsize=None)
def _prime_assignment_count(degrees: tuple[int, ...], tagged: tuple, distinct: bool) -> int:
    """Sum over ways to fill the degree slots with primes (one multiplicity
    unit each, full exhaustion, blocked primes unusable), weighted by the slot
    degree; distinct=True forbids reusing a prime in two slots."""
    memo: dict = {}

    def rec(si: int, exps: tuple) -> int:
        if si == len(degrees):
            return 1 if all(e == 0 for e in exps) else 0
        state = (si, exps)
        if state in memo:
            return memo[state]
        ni = degrees[si]
        total = 0
        seen = set()
        for j, e_rem in enumerate(exps):
            d, e_orig, blocked = tagged[j]
            if blocked or e_rem == 0 or d != ni:
                continue
            if distinct and e_rem != e_orig:
                continue
            key = (d, e_orig, e_rem)
            if key in seen:
                continue
            seen.add(key)
            mult = sum(
                1
                for j2, e2 in enumerate(exps)
                if tagged[j2][:2] == (d, e_orig) and tagged[j2][2] == blocked and e2 == e_rem
            )
            nxt = exps[:j] + (e_rem - 1,) + exps[j + 1 :]
            total += mult * ni * rec(si + 1, nxt)
        memo[state] = total
        return total

    return rec(0, tuple(e for _, e, _ in tagged))


def F_prime(h: Poly, degrees, f: Poly) -> int:
    """Sum over ordered tuples of primes (repeats allowed) with the given
    degrees, none dividing h, and product f, of the product of the degrees."""
    degrees = _check_slots(degrees, f)
    return _prime_assignment_count(degrees, _tagged_eft(f, h), False)


def F_prime2(h: Poly, degrees, f: Poly) -> int:
    """Same as F_prime but with the primes in the tuple pairwise distinct."""
    degrees = _check_slots(degrees, f)
    return _prime_assignment_count(degrees, _tagged_eft(f, h), True)


# -- the inclusion-exclusion identity over slot partitions ---------------------------


def _set_partitions(items: tuple):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        # first joins an existing block
        for i, block in enumerate(sub):
            yield sub[:i] + ((first,) + block,) + sub[i + 1 :]
        # or starts a new one
        yield ((first,),) + sub


def partition_sieve_check(h: Poly, degrees, f: Poly) -> int:
    """Evaluate the inclusion-exclusion expansion of the distinct-prime sum:
    over set partitions of the slots into equal-degree blocks, blocks of size
    at least two are pinned to an injectively chosen prime (not dividing h)
    raised to the block size, and the remaining slots carry a repeats-allowed
    prime sum with the pinned primes added to the excluded modulus.

    Must equal F_prime2(h, degrees, f).
    """
    degrees = _check_slots(degrees, f)
    omega = len(degrees)
    fac = factor(f)
    total = 0
    for P in _set_partitions(tuple(range(omega))):
        if any(
            len({degrees[i] for i in block}) > 1
            for block in P
        ):
            continue
        big = [block for block in P if len(block) >= 2]
        pinned_idx = {i for block in big for i in block}
        rest_degrees = tuple(degrees[i] for i in range(omega) if i not in pinned_idx)
        weight = 1
        for i in pinned_idx:
            weight *= degrees[i]
        sign = (-1) ** len(big)

        def assignments(bi: int, used: tuple, acc_h: Poly, acc_f: Poly) -> int:
            if bi == len(big):
                return F_prime(acc_h, rest_degrees, acc_f)
            block = big[bi]
            n_s = degrees[block[0]]
            subtotal = 0
            for prime, mult in fac:
                if prime.degree != n_s or prime in used or mult < len(block):
                    continue
                if acc_h.degree >= prime.degree and (acc_h % prime).is_zero:
                    continue
                power = prime ** len(block)
                quot, rem = divmod(acc_f, power)
                if not rem.is_zero:
                    continue
                subtotal += assignments(bi + 1, used + (prime,), acc_h * power, quot)
            return subtotal

        total += sign * weight * assignments(0, (), h, f)
    return total


# -- divisors and the factorization-type indicator -------------------------------------


def divisors_with_eft(f: Poly, w: EFT):
    """All monic divisors h of f with eft_of(h) == w, without refactoring."""
    fac = factor(f)

    def rec(i: int, chosen: list):
        if i == len(fac):
            if tuple(sorted((fac[j][0].degree, e) for j, e in chosen if e)) == w:
                out = Poly.one(f.field)
                for j, e in chosen:
                    out = out * fac[j][0] ** e
                yield out
            return
        for e in range(fac[i][1] + 1):
            yield from rec(i + 1, chosen + [(i, e)])

    yield from rec(0, [])


def eft_indicator(w: EFT, f: Poly) -> int:
    """Indicator of eft_of(f) == w, computed two independent ways.

    The sieve path splits w into its multiplicity-at-least-two part (matched
    by a divisor h) and the degrees of its multiplicity-one part (matched by a
    distinct-prime tuple on f/h), normalized by the degree product and the
    per-degree slot symmetry.  The result is asserted to agree with direct
    comparison of factorization types.
    """
    n = eft_weight(w)
    if n != f.degree:
        raise ValueError("factorization type weight must equal the degree of f")
    w2 = tuple(pair for pair in w if pair[1] >= 2)
    singles = tuple(sorted(d for d, l in w if l == 1))
    denom = 1
    for d in singles:
        denom *= d
    for _, cnt in Counter(singles).items():
        denom *= math.factorial(cnt)
    total = 0
    for h in divisors_with_eft(f, w2):
        total += F_prime2(h, singles, f // h)
    value = Fraction(total, denom)
    if value not in (0, 1):
        raise AssertionError(f"indicator identity produced {value}")
    direct = 1 if eft_of(f) == w else 0
    if int(value) != direct:
        raise AssertionError(
            f"indicator paths disagree on {f!r}: identity {value}, direct {direct}"
        )
    return direct


def entropy(w: EFT) -> float:
    """Entropy of the distribution putting mass d/n on each of the l unit
    events of every (d, l) pair, n being the total weight."""
    if not w:
        raise ValueError("entropy needs a nonempty factorization type")
    n = eft_weight(w)
    return sum(l * (d / n) * math.log(n / d) for d, l in w)
