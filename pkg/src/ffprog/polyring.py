"""Dense univariate polynomials over a small finite field, with factorization.

Polynomials are immutable.  Coefficients are stored low-to-high as integer
element indices of the owning field, with no trailing zeros (the zero
polynomial has an empty coefficient tuple and degree -1).

Serialization: the canonical text form is the comma-separated index list
low-to-high, e.g. "1,0,1" for t^2 + 1.  The parser additionally accepts a
human form like "t^2+1" or "2t^3 + t + 1", where integer coefficients are
reduced into the prime subfield.

Factorization runs squarefree decomposition (characteristic-p aware),
distinct-degree splitting, then equal-degree splitting with a pseudorandom
sequence seeded from the polynomial itself, so repeated runs give identical
results.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from functools import lru_cache

import numpy as np

from .field import Field, make_field

# Prime-field operands at least this large take the vectorized path; smaller
# ones stay on the plain loops, which win below the numpy call overhead.
_VECTOR_MIN = 24


class Poly:
    """Immutable polynomial over a Field, coefficients low-to-high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not 0 <= c < field.q:
                raise ValueError(f"coefficient index {c} out of range for {field}")
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(field: Field) -> Poly:
        return Poly(field, ())

    @staticmethod
    def one(field: Field) -> Poly:
        return Poly(field, (1,))

    @staticmethod
    def x(field: Field) -> Poly:
        return Poly(field, (0, 1))

    @staticmethod
    def constant(field: Field, c: int) -> Poly:
        return Poly(field, (c,))

    @staticmethod
    def monomial(field: Field, c: int, e: int) -> Poly:
        if e < 0:
            raise ValueError("monomial exponent must be nonnegative")
        return Poly(field, (0,) * e + (c,))

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.coeffs))

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = F.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Poly(F, out)

    def __neg__(self) -> Poly:
        F = self.field
        neg = F.neg
        return Poly(F, [neg(c) for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        if (
            F.k == 1
            and len(a) + len(b) >= _VECTOR_MIN
            and min(len(a), len(b)) * (F.p - 1) ** 2 < 2**62
        ):
            # prime-field indices are the residues themselves, so an integer
            # convolution followed by one reduction is exact
            prod = np.convolve(
                np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)
            )
            return Poly(F, (prod % F.p).tolist())
        add, mul = F.add, F.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = add(out[i + j], mul(ca, cb))
        return Poly(F, out)

    def scale(self, c: int) -> Poly:
        F = self.field
        mul = F.mul
        return Poly(F, [mul(c, a) for a in self.coeffs])

    def shift(self, e: int) -> Poly:
        """Multiply by t^e."""
        if self.is_zero:
            return self
        return Poly(self.field, (0,) * e + self.coeffs)

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        db = other.degree
        steps = len(self.coeffs) - db
        if (
            F.k == 1
            and db >= 1
            and steps >= 1
            and max(steps, db) >= _VECTOR_MIN
            and min(db + 1, steps) * (F.p - 1) ** 2 < 2**62
        ):
            # synthetic division with lazy reduction: entries drift by at most
            # (p-1)^2 per elimination step, within the int64 guard above
            p = F.p
            inv_lead = F.inv(other.coeffs[-1])
            rem_arr = np.array(self.coeffs, dtype=np.int64)
            bs_arr = np.array(other.coeffs, dtype=np.int64)
            quo_arr = np.zeros(steps, dtype=np.int64)
            for i in range(len(rem_arr) - 1, db - 1, -1):
                c = int(rem_arr[i]) % p
                if c == 0:
                    continue
                fct = (c * inv_lead) % p
                quo_arr[i - db] = fct
                rem_arr[i - db : i + 1] -= fct * bs_arr
            return Poly(F, quo_arr.tolist()), Poly(F, (rem_arr[:db] % p).tolist())
        sub, mul = F.sub, F.mul
        inv_lead = F.inv(other.leading())
        rem = list(self.coeffs)
        quo = [0] * max(len(rem) - db, 0)
        bs = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            factor = mul(c, inv_lead)
            quo[i - db] = factor
            for j in range(db + 1):
                rem[i - db + j] = sub(rem[i - db + j], mul(factor, bs[j]))
        return Poly(F, quo), Poly(F, rem)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero:
            return self
        lead = self.leading()
        if lead == 1:
            return self
        return self.scale(self.field.inv(lead))

    def derivative(self) -> Poly:
        F = self.field
        out = [_int_scale(F, self.coeffs[i], i) for i in range(1, len(self.coeffs))]
        return Poly(F, out)

    def eval(self, a: int) -> int:
        F = self.field
        add, mul = F.add, F.mul
        acc = 0
        for c in reversed(self.coeffs):
            acc = add(mul(acc, a), c)
        return acc

    # -- serialization ------------------------------------------------------

    def to_string(self) -> str:
        if self.is_zero:
            return "0"
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self.field.spec_string()}: {self.to_string()})"

    def pretty(self) -> str:
        """Human form like "t^3 + 2t + 1" (coefficients as element indices)."""
        if self.is_zero:
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                terms.append(f"{head}t" + (f"^{e}" if e > 1 else ""))
        return " + ".join(terms)


def _int_scale(field: Field, c: int, n: int) -> int:
    """c multiplied by the integer n (n reduced into the prime subfield)."""
    return field.mul(c, n % field.p)


def poly_from_string(field: Field, text: str) -> Poly:
    """Parse the comma index form ("1,0,1") or human form ("t^2+1")."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial string")
    if "t" not in text:
        try:
            coeffs = [int(part) for part in text.split(",")]
        except ValueError:
            raise ValueError(f"bad polynomial string {text!r}") from None
        return Poly(field, coeffs)
    return _parse_human(field, text)


def _parse_human(field: Field, text: str) -> Poly:
    out = Poly.zero(field)
    body = text.replace("-", "+-").replace(" ", "").replace("*", "")
    for term in body.split("+"):
        if not term:
            continue
        negate = term.startswith("-")
        if negate:
            term = term[1:]
        if "t" in term:
            head, _, tail = term.partition("t")
            coeff = int(head) if head else 1
            if tail.startswith("^"):
                exp = int(tail[1:])
            elif not tail:
                exp = 1
            else:
                raise ValueError(f"bad polynomial term {term!r} in {text!r}")
        else:
            coeff = int(term)
            exp = 0
        c = coeff % field.p
        if negate:
            c = field.neg(c)
        out = out + Poly.monomial(field, c, exp)
    return out


# -- gcd and modular arithmetic ----------------------------------------------


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, u, v) with u*a + v*b = g, g the monic gcd."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    lead_inv = F.inv(r0.leading())
    return r0.monic(), s0.scale(lead_inv), t0.scale(lead_inv)


def poly_inverse_mod(a: Poly, m: Poly) -> Poly:
    """Inverse of a modulo m; raises ValueError if gcd(a, m) != 1."""
    g, u, _ = poly_ext_gcd(a % m, m)
    if not g.is_one:
        raise ValueError(f"{a!r} is not invertible mod {m!r}")
    return u % m


def poly_pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    if e < 0:
        raise ValueError("negative exponent in modular power")
    result = Poly.one(base.field) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


# -- factorization -------------------------------------------------------------


def _pth_root_poly(f: Poly) -> Poly:
    """g with g(t)^p = f(t); valid when f'(t) = 0."""
    F = f.field
    p = F.p
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(F.pth_root(f.coeffs[i]))
    return Poly(F, out)


def squarefree_decomposition(f: Poly) -> dict[int, Poly]:
    """Map exponent e -> monic squarefree product of primes of multiplicity e.

    The input must be monic of degree >= 1.  The product of value^key over all
    items reconstructs f.
    """
    if not f.is_monic:
        raise ValueError("squarefree decomposition requires a monic polynomial")
    F = f.field
    result: dict[int, Poly] = {}

    def accumulate(e: int, g: Poly) -> None:
        if g.degree > 0:
            result[e] = result[e] * g if e in result else g

    def walk(f: Poly, mult: int) -> None:
        if f.degree < 1:
            return
        fp = f.derivative()
        if fp.is_zero:
            walk(_pth_root_poly(f), mult * F.p)
            return
        c = poly_gcd(f, fp)
        w = f // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            accumulate(i * mult, w // y)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            walk(_pth_root_poly(c), mult * F.p)

    walk(f, 1)
    return result


def _distinct_degree(f: Poly) -> list[tuple[int, Poly]]:
    """Split monic squarefree f into (degree d, product of its degree-d primes)."""
    F = f.field
    q = F.q
    out = []
    v = f
    w = Poly.x(F) % v
    d = 0
    while v.degree > 0:
        d += 1
        if v.degree < 2 * d:
            out.append((v.degree, v))
            break
        w = poly_pow_mod(w, q, v)
        g = poly_gcd(w - Poly.x(F), v)
        if g.degree > 0:
            out.append((d, g))
            v = v // g
            w = w % v
    return out


def _seed_from(f: Poly) -> int:
    s = f.field.q
    for c in f.coeffs:
        s = s * f.field.q + c + 1
    return s


def _random_poly(rng: random.Random, field: Field, deg_bound: int) -> Poly:
    return Poly(field, [rng.randrange(field.q) for _ in range(deg_bound)])


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split monic squarefree f, all of whose primes have degree d."""
    F = f.field
    if f.degree == d:
        return [f]
    one = Poly.one(F)
    while True:
        r = _random_poly(rng, F, f.degree)
        if r.degree < 1:
            continue
        g = poly_gcd(r, f)
        if 0 < g.degree < f.degree:
            break
        if F.p == 2:
            # additive trace to F_2: sum of 2^i-th powers
            acc = r % f
            term = acc
            for _ in range(F.k * d - 1):
                term = (term * term) % f
                acc = acc + term
            g = poly_gcd(acc, f)
        else:
            s = poly_pow_mod(r, (F.q**d - 1) // 2, f)
            g = poly_gcd(s - one, f)
        if 0 < g.degree < f.degree:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


@lru_cache(maxsize=65536)
def _factor_cached(f: Poly) -> tuple[tuple[Poly, int], ...]:
    if f.is_zero or not f.is_monic:
        raise ValueError("factor requires a monic polynomial")
    rng = random.Random(_seed_from(f))
    out: list[tuple[Poly, int]] = []
    for mult, part in squarefree_decomposition(f).items():
        for d, block in _distinct_degree(part):
            for prime in _equal_degree(block, d, rng):
                out.append((prime, mult))
    out.sort(key=lambda pair: pair[0].sort_key())
    return tuple(out)


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Factor a monic polynomial into (prime, exponent) pairs.

    Pairs are sorted by (degree, coefficient tuple) of the prime.  The empty
    list is returned for f = 1.  Raises ValueError on zero or non-monic input.
    Results are memoized; callers get a fresh list each time.
    """
    return list(_factor_cached(f))


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test (monic input; degree >= 1)."""
    if f.degree < 1:
        return False
    if not f.is_monic:
        raise ValueError("irreducibility test requires a monic polynomial")
    F = f.field
    q = F.q
    n = f.degree
    if n == 1:
        return True
    x = Poly.x(F)
    for ell in _distinct_prime_divisors(n):
        h = poly_pow_mod(x, q ** (n // ell), f) - x
        if not poly_gcd(h, f).is_one:
            return False
    return poly_pow_mod(x, q**n, f) == x % f


def _distinct_prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- enumeration ----------------------------------------------------------------


def monic_by_index(field: Field, n: int, i: int) -> Poly:
    """The i-th monic polynomial of degree n, 0 <= i < q^n.

    Index digits in base q give the coefficients: coefficient of t^j is
    (i // q^j) % q, so ascending i sorts by high coefficients first.
    """
    q = field.q
    if not 0 <= i < q**n:
        raise ValueError(f"monic index {i} out of range for degree {n}")
    coeffs = [(i // q**j) % q for j in range(n)] + [1]
    return Poly(field, coeffs)


def enumerate_monic(field: Field, n: int) -> Iterator[Poly]:
    """All monic polynomials of degree n, lexicographic by descending powers."""
    if n == 0:
        yield Poly.one(field)
        return
    q = field.q
    coeffs = [0] * n + [1]
    while True:
        yield Poly(field, coeffs)
        j = 0
        while j < n:
            coeffs[j] += 1
            if coeffs[j] < q:
                break
            coeffs[j] = 0
            j += 1
        else:
            return


def enumerate_monic_in_class(g: Poly, a: Poly, n: int) -> Iterator[Poly]:
    """All monic f of degree n with f = a mod g, via f = h*g + a over monic h.

    Requires deg a < deg g <= n.  Yields exactly q^(n - deg g) polynomials, in
    the enumeration order of the monic quotients h.
    """
    if g.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    if a.degree >= g.degree:
        raise ValueError("residue representative must have degree < deg g")
    if n < g.degree:
        raise ValueError("target degree below modulus degree")
    for h in enumerate_monic(g.field, n - g.degree):
        yield h * g + a


def enumerate_monic_coprime(field: Field, n: int, g: Poly) -> Iterator[Poly]:
    """All monic f of degree n with gcd(f, g) = 1, in enumeration order."""
    for f in enumerate_monic(field, n):
        if poly_gcd(f, g).is_one:
            yield f


def enumerate_irreducible(field: Field, d: int) -> Iterator[Poly]:
    """All monic irreducible polynomials of degree d, in enumeration order."""
    for f in enumerate_monic(field, d):
        if is_irreducible(f):
            yield f


@lru_cache(maxsize=None)
def irreducibles(field: Field, d: int) -> tuple[Poly, ...]:
    """Cached tuple of all monic irreducibles of degree d."""
    return tuple(enumerate_irreducible(field, d))


def _mobius_int(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def count_irreducible(q: int, d: int) -> int:
    """Number of monic irreducible polynomials of degree d over F_q."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    total = sum(_mobius_int(e) * q ** (d // e) for e in _divisors(d))
    assert total % d == 0
    return total // d


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def is_squarefree(f: Poly) -> bool:
    """True if the monic polynomial f has no repeated prime factor."""
    if f.degree < 1:
        return True
    deriv = f.derivative()
    if deriv.is_zero:
        return False
    return poly_gcd(f, deriv).is_one


def enumerate_squarefree_monic(field: Field, n: int) -> Iterator[Poly]:
    for f in enumerate_monic(field, n):
        if is_squarefree(f):
            yield f
