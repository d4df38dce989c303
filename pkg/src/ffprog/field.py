"""Arithmetic in small finite fields F_q, q = p^k <= 2^16.

Elements are represented by integer indices in [0, q).  The index encodes the
coordinate vector of the element over the prime subfield in base p: the element
``sum_i c_i * x^i`` (x a root of the defining polynomial) has index
``sum_i c_i * p^i``.  Constants 0..p-1 therefore always have indices 0..p-1,
for every k.

For k = 1, arithmetic is plain residue arithmetic mod p.  For k > 1, a
discrete-log table over a fixed multiplicative generator plus a Zech-logarithm
table for addition are precomputed once per (p, k) and shared between all users
of the field.  The defining polynomial is chosen deterministically: the
lexicographically least monic polynomial of degree k over F_p (ordered by the
coefficient tuple, highest degree first) whose root x generates the full
multiplicative group.  Same (p, k) always yields the same tables.
"""

from __future__ import annotations

from functools import lru_cache

MAX_Q = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


class FieldElem:
    """An element of a Field, wrapping its integer index with operators.

    Convenience wrapper for interactive use and demos; the core modules work
    on raw indices via the Field methods for speed.
    """

    __slots__ = ("field", "index")

    def __init__(self, field: Field, index: int):
        if not 0 <= index < field.q:
            raise ValueError(f"element index {index} out of range for {field}")
        self.field = field
        self.index = index

    def _same(self, other: FieldElem) -> None:
        if self.field is not other.field:
            raise ValueError("elements belong to different fields")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._same(other)
        return FieldElem(self.field, self.field.add(self.index, other.index))

    def __sub__(self, other: FieldElem) -> FieldElem:
        self._same(other)
        return FieldElem(self.field, self.field.sub(self.index, other.index))

    def __neg__(self) -> FieldElem:
        return FieldElem(self.field, self.field.neg(self.index))

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._same(other)
        return FieldElem(self.field, self.field.mul(self.index, other.index))

    def __truediv__(self, other: FieldElem) -> FieldElem:
        self._same(other)
        return FieldElem(
            self.field, self.field.mul(self.index, self.field.inv(other.index))
        )

    def __pow__(self, e: int) -> FieldElem:
        return FieldElem(self.field, self.field.pow(self.index, e))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElem)
            and self.field is other.field
            and self.index == other.index
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.index))

    def __repr__(self) -> str:
        return f"FieldElem({self.field.spec_string()}, {self.index})"


class Field:
    """The finite field F_q with q = p^k, operating on integer indices.

    Do not construct directly; use make_field(p, k) so tables are shared.
    """

    __slots__ = (
        "p",
        "k",
        "q",
        "modulus_digits",
        "_gen",
        "_exp",
        "_dlog",
        "_zech",
        "_dlog_m1",
    )

    def __init__(self, p: int, k: int):
        if not _is_prime(p):
            raise ValueError(f"field characteristic must be prime, got {p}")
        if k < 1:
            raise ValueError(f"field extension degree must be >= 1, got {k}")
        q = p**k
        if q > MAX_Q:
            raise ValueError(f"field size {q} exceeds supported maximum {MAX_Q}")
        self.p = p
        self.k = k
        self.q = q
        if k == 1:
            self.modulus_digits = None
            self._gen = self._find_prime_field_generator()
            self._exp = self._dlog = self._zech = None
            self._dlog_m1 = None
        else:
            self.modulus_digits = self._find_primitive_modulus()
            self._build_tables()

    # -- construction -------------------------------------------------

    def _find_prime_field_generator(self) -> int:
        p = self.p
        if p == 2:
            return 1
        factors = _prime_factors(p - 1)
        for r in range(2, p):
            if all(pow(r, (p - 1) // f, p) != 1 for f in factors):
                return r
        raise AssertionError("no primitive root found; unreachable for prime p")

    def _find_primitive_modulus(self) -> tuple[int, ...]:
        """Least monic degree-k polynomial over F_p whose root x is primitive.

        Candidates x^k + a_{k-1} x^{k-1} + ... + a_0 are ordered by the tuple
        (a_{k-1}, ..., a_0) ascending.  Primitivity of x is detected by walking
        its powers: if they pass through q-1 distinct values before returning
        to 1, the residue ring is a field (all nonzero elements are units) and
        x generates its multiplicative group.
        """
        p, k, q = self.p, self.k, self.q
        for code in range(p**k):
            # base-p digits of code, least significant first, give
            # (a_0, ..., a_{k-1}); ascending code then sorts candidates
            # lexicographically by (a_{k-1}, ..., a_0)
            lo = tuple((code // p**i) % p for i in range(k))
            if lo[0] == 0:
                continue  # x would not be invertible
            if self._x_order_is_full(lo):
                return lo
        raise AssertionError("no primitive polynomial found; unreachable")

    def _x_order_is_full(self, mod_lo: tuple[int, ...]) -> bool:
        p, k, q = self.p, self.k, self.q
        v = [0] * k
        v[1 if k > 1 else 0] = 1  # the element x
        one = [0] * k
        one[0] = 1
        steps = 0
        while True:
            steps += 1
            if v == one:
                return steps == q - 1
            if steps >= q - 1:
                return False
            # multiply by x and reduce by x^k = -sum mod_lo[i] x^i
            carry = v[-1]
            for i in range(k - 1, 0, -1):
                v[i] = (v[i - 1] - carry * mod_lo[i]) % p
            v[0] = (-carry * mod_lo[0]) % p

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        mod_lo = self.modulus_digits
        exp = [0] * (q - 1)
        dlog = [-1] * q
        v = [0] * k
        v[0] = 1
        for e in range(q - 1):
            idx = 0
            for i in range(k - 1, -1, -1):
                idx = idx * p + v[i]
            exp[e] = idx
            dlog[idx] = e
            carry = v[-1]
            for i in range(k - 1, 0, -1):
                v[i] = (v[i - 1] - carry * mod_lo[i]) % p
            v[0] = (-carry * mod_lo[0]) % p
        zech = [0] * (q - 1)
        for e in range(q - 1):
            idx = exp[e]
            c0 = idx % p
            bumped = idx - c0 + (c0 + 1) % p
            zech[e] = dlog[bumped] if bumped != 0 else -1
        self._exp = exp
        self._dlog = dlog
        self._zech = zech
        self._gen = exp[1]
        self._dlog_m1 = dlog[p - 1] if p > 2 else 0

    # -- arithmetic on indices ----------------------------------------

    def add(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x + y) % self.p
        if x == 0:
            return y
        if y == 0:
            return x
        a = self._dlog[x]
        d = (self._dlog[y] - a) % (self.q - 1)
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[(a + z) % (self.q - 1)]

    def neg(self, x: int) -> int:
        if self.k == 1:
            return (-x) % self.p
        if self.p == 2 or x == 0:
            return x
        return self._exp[(self._dlog[x] + self._dlog_m1) % (self.q - 1)]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x * y) % self.p
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._dlog[x] + self._dlog[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        if self.k == 1:
            return pow(x, self.p - 2, self.p)
        return self._exp[(-self._dlog[x]) % (self.q - 1)]

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of 0 in a finite field")
            return 0
        if self.k == 1:
            return pow(x, e % (self.p - 1) if e else 0, self.p) if e else 1
        return self._exp[(self._dlog[x] * e) % (self.q - 1)]

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p)

    def pth_root(self, x: int) -> int:
        """The unique y with y^p = x (inverse of the Frobenius map)."""
        return self.pow(x, self.p ** (self.k - 1))

    # -- structure ----------------------------------------------------

    def multiplicative_generator(self) -> int:
        """Index of the fixed generator of the cyclic group F_q^*."""
        return self._gen

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def elem(self, index: int) -> FieldElem:
        return FieldElem(self, index)

    def digits(self, x: int) -> tuple[int, ...]:
        """Base-p coordinate vector of the element with index x (length k)."""
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def from_digits(self, digits) -> int:
        idx = 0
        for c in reversed(list(digits)):
            idx = idx * self.p + c % self.p
        return idx

    def spec_string(self) -> str:
        return f"{self.p}^{self.k}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __repr__(self) -> str:
        return f"Field({self.p}^{self.k})"


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> Field:
    """Shared Field instance for F_{p^k}; same arguments, same object."""
    return Field(p, k)


def parse_field(spec: str) -> Field:
    """Parse a field description "p^k" (or bare "p" meaning k = 1)."""
    spec = spec.strip()
    if "^" in spec:
        base, _, exp = spec.partition("^")
        try:
            return make_field(int(base), int(exp))
        except ValueError as err:
            raise ValueError(f"bad field spec {spec!r}: {err}") from None
    try:
        return make_field(int(spec), 1)
    except ValueError as err:
        raise ValueError(f"bad field spec {spec!r}: {err}") from None
