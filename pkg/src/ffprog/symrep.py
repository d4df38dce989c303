"""Symmetric-group characters and the exact bound constants built from them.

Everything in this module is exact.  Class functions on S_n are dense integer
vectors indexed by the partitions of n (cycle types).  Traces of diagonal
matrices acting on invariant subspaces of tensor spaces are multivariate
polynomials with big-integer coefficients.  The bound constants C1 and C2 are
obtained from those polynomials by coefficient bookkeeping: the mixed partial
derivative in all variables, evaluated with every variable at 1, equals the
sum over monomials of coefficient times the product of the exponents.  No
floating-point differentiation is involved anywhere.

Degree cap: operations on characters require n <= 14, keeping the dense
partition-indexed representation and the polynomial sizes small.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product

MAX_N = 14


# -- partitions ----------------------------------------------------------------


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n as descending tuples, from (n,) down to (1,)*n."""
    if n < 0:
        raise ValueError("partitions of a negative integer")
    if n == 0:
        return ((),)

    def gen(remaining: int, maxpart: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


@lru_cache(maxsize=None)
def partition_index(n: int) -> dict[tuple[int, ...], int]:
    return {lam: i for i, lam in enumerate(partitions(n))}


def z_of(lam: tuple[int, ...]) -> int:
    """Centralizer order of the cycle type: product of k^m_k * m_k!."""
    out = 1
    mult: dict[int, int] = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    for k, m in mult.items():
        out *= k**m * math.factorial(m)
    return out


def sgn_of(lam: tuple[int, ...]) -> int:
    """Sign of a permutation with this cycle type: (-1)^(n - #cycles)."""
    return -1 if (sum(lam) - len(lam)) % 2 else 1


def multiplicities(lam: tuple[int, ...]) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in lam:
        out[part] = out.get(part, 0) + 1
    return out


def conjugate_partition(lam: tuple[int, ...]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0]))


def hook_dimension(mu: tuple[int, ...]) -> int:
    """Dimension of the irreducible labeled by mu, by the hook-length formula."""
    n = sum(mu)
    conj = conjugate_partition(mu)
    denom = 1
    for i, row in enumerate(mu):
        for j in range(row):
            denom *= row - j + conj[j] - i - 1
    out = math.factorial(n) // denom
    assert out * denom == math.factorial(n)
    return out


def merge_partitions(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(a + b, reverse=True))


# -- irreducible character values (border-strip recursion) -----------------------


def _border_strips(lam: tuple[int, ...], k: int):
    """All removals of a length-k border strip from lam.

    Works on the set of shifted row ends (beta numbers) b_j = lam_j + L-1-j:
    removing a strip is replacing one b by b-k when that value is free, and
    the strip height is the number of b's jumped over.  Yields pairs
    (smaller partition, height).
    """
    L = len(lam)
    betas = [lam[j] + (L - 1 - j) for j in range(L)]
    taken = set(betas)
    for b in betas:
        nb = b - k
        if nb < 0 or nb in taken:
            continue
        height = sum(1 for c in betas if nb < c < b)
        new_betas = sorted((c for c in betas if c != b), reverse=True)
        new_betas.append(nb)
        new_betas.sort(reverse=True)
        new_lam = tuple(c - (L - 1 - i) for i, c in enumerate(new_betas))
        yield tuple(part for part in new_lam if part > 0), height


@lru_cache(maxsize=None)
def character_value(mu: tuple[int, ...], lam: tuple[int, ...]) -> int:
    """Value of the irreducible character labeled mu on cycle type lam."""
    if not lam:
        return 1 if not mu else 0
    k = lam[0]
    rest = lam[1:]
    total = 0
    for smaller, height in _border_strips(mu, k):
        total += (-1) ** height * character_value(smaller, rest)
    return total


# -- class functions ----------------------------------------------------------------


class VirtualCharacter:
    """An integer-valued class function on S_n, stored densely by cycle type.

    Supports the ring operations (pointwise sum/difference/product — the
    product is the tensor-product character), inner products, and decomposition
    into irreducibles.  Values are plain integers; instances are immutable and
    hashable.
    """

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        if n > MAX_N:
            raise ValueError(f"degree {n} exceeds the supported cap {MAX_N}")
        vals = tuple(values)
        if len(vals) != len(partitions(n)):
            raise ValueError("value vector has wrong length for degree")
        self.n = n
        self.values = vals

    @staticmethod
    def from_func(n: int, fn) -> VirtualCharacter:
        return VirtualCharacter(n, (fn(lam) for lam in partitions(n)))

    def value(self, lam: tuple[int, ...]) -> int:
        return self.values[partition_index(self.n)[tuple(lam)]]

    @property
    def dim(self) -> int:
        return self.values[partition_index(self.n)[(1,) * self.n]]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(zip(partitions(self.n), self.values))

    def _same_degree(self, other: VirtualCharacter) -> None:
        if self.n != other.n:
            raise ValueError("class functions of different degrees")

    def __add__(self, other: VirtualCharacter) -> VirtualCharacter:
        self._same_degree(other)
        return VirtualCharacter(self.n, (a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: VirtualCharacter) -> VirtualCharacter:
        self._same_degree(other)
        return VirtualCharacter(self.n, (a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> VirtualCharacter:
        return VirtualCharacter(self.n, (-a for a in self.values))

    def __mul__(self, other: VirtualCharacter) -> VirtualCharacter:
        self._same_degree(other)
        return VirtualCharacter(self.n, (a * b for a, b in zip(self.values, other.values)))

    def scale(self, c: int) -> VirtualCharacter:
        return VirtualCharacter(self.n, (c * a for a in self.values))

    def tensor_sgn(self) -> VirtualCharacter:
        return VirtualCharacter(
            self.n, (v * sgn_of(lam) for v, lam in zip(self.values, partitions(self.n)))
        )

    def inner(self, other: VirtualCharacter) -> Fraction:
        self._same_degree(other)
        total = Fraction(0)
        for lam, a, b in zip(partitions(self.n), self.values, other.values):
            total += Fraction(a * b, z_of(lam))
        return total

    def decompose(self) -> dict[tuple[int, ...], int]:
        """Multiplicities of each irreducible; zero entries omitted."""
        out = {}
        for mu in partitions(self.n):
            c = self.inner(irreducible_character(mu))
            if c.denominator != 1:
                raise AssertionError(f"non-integral multiplicity {c} at {mu}")
            if c != 0:
                out[mu] = int(c)
        return out

    @property
    def is_genuine(self) -> bool:
        """True when all irreducible multiplicities are nonnegative."""
        return all(c >= 0 for c in self.decompose().values())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VirtualCharacter)
            and self.n == other.n
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.n, self.values))

    def __repr__(self) -> str:
        return f"VirtualCharacter(n={self.n}, dim={self.dim})"


@lru_cache(maxsize=None)
def irreducible_character(mu) -> VirtualCharacter:
    """The irreducible character of S_n labeled by the partition mu."""
    mu = tuple(sorted(mu, reverse=True))
    if any(part < 1 for part in mu):
        raise ValueError("partition parts must be positive")
    n = sum(mu)
    chi = VirtualCharacter(n, (character_value(mu, lam) for lam in partitions(n)))
    assert chi.dim == hook_dimension(mu)
    return chi


# -- named representations ------------------------------------------------------------


def trivial_rep(n: int) -> VirtualCharacter:
    return VirtualCharacter(n, (1 for _ in partitions(n)))


def sign_rep(n: int) -> VirtualCharacter:
    return VirtualCharacter(n, (sgn_of(lam) for lam in partitions(n)))


def standard_rep(n: int) -> VirtualCharacter:
    """The (n-1)-dimensional quotient of the n-point permutation module."""
    return VirtualCharacter(
        n, (lam.count(1) - 1 for lam in partitions(n))
    )


def _poly_div_1_plus_u(coeffs: list[int]) -> list[int]:
    """Exact division of an integer polynomial (low-to-high in u) by 1 + u."""
    out = []
    carry = 0
    for c in coeffs:
        cur = c - carry
        out.append(cur)
        carry = cur
    assert carry == 0, "polynomial not divisible by 1 + u"
    out.pop()
    return out


def _exterior_gf(lam: tuple[int, ...]) -> list[int]:
    """Coefficient list over i of the trace of a lam-type permutation on the
    i-th exterior power of the standard (n-1)-dimensional representation.

    On the full n-point permutation module the generating function in u is
    the product over cycle lengths c of (1 - (-u)^c); peeling off the trivial
    summand divides it by (1 + u).
    """
    n = sum(lam)
    prod = [0] * (n + 1)
    prod[0] = 1
    for c in lam:
        nxt = prod[:]
        sign = -((-1) ** c)
        for i in range(n + 1 - c):
            if prod[i]:
                nxt[i + c] += sign * prod[i]
        prod = nxt
    return _poly_div_1_plus_u(prod)


def exterior_standard_rep(n: int, i: int) -> VirtualCharacter:
    """The i-th exterior power of the standard representation of S_n."""
    if not 0 <= i <= n - 1:
        raise ValueError("exterior power index out of range")
    return VirtualCharacter(n, (_exterior_gf(lam)[i] for lam in partitions(n)))


def vonmangoldt_rep(n: int) -> VirtualCharacter:
    """Direct sum over i < n of the i-th exterior powers of the standard rep.

    Its alternating-sign factorization function is the prime-power indicator
    weighted by the degree of the underlying prime.
    """
    return VirtualCharacter(n, (sum(_exterior_gf(lam)) for lam in partitions(n)))


def tensor_power_rep(n: int, k: int) -> VirtualCharacter:
    """(C^k)^(tensor n) under place permutation: value k^(#cycles)."""
    if k < 1:
        raise ValueError("tensor base dimension must be >= 1")
    return VirtualCharacter(n, (k ** len(lam) for lam in partitions(n)))


def induced_product(factors) -> VirtualCharacter:
    """Character induced to S_n from an outer tensor product on a Young subgroup.

    Given class functions chi_i on S_{n_i}, the induced value on cycle type
    lam is the sum over all ways to split lam into sub-multisets lam^(i) of
    weights n_i of  z(lam) * prod_i chi_i(lam^(i)) / z(lam^(i)).
    """
    factors = list(factors)
    n = sum(chi.n for chi in factors)
    sizes = [chi.n for chi in factors]

    def split_value(lam: tuple[int, ...]) -> int:
        parts = sorted(multiplicities(lam).items())
        total = Fraction(0)
        # distribute the multiplicity of each part size over the blocks
        choices_per_size = []
        for size, count in parts:
            choices_per_size.append(list(_compositions_nonneg(count, len(factors))))
        for assignment in iter_product(*choices_per_size):
            blocks = [[] for _ in factors]
            for (size, _), comp in zip(parts, assignment):
                for b, reps in enumerate(comp):
                    blocks[b].extend([size] * reps)
            if any(sum(block) != want for block, want in zip(blocks, sizes)):
                continue
            term = Fraction(z_of(lam))
            for chi, block in zip(factors, blocks):
                sub = tuple(sorted(block, reverse=True))
                term *= Fraction(chi.value(sub), z_of(sub))
            total += term
        assert total.denominator == 1
        return int(total)

    return VirtualCharacter(n, (split_value(lam) for lam in partitions(n)))


def young_induced_rep(blocks) -> VirtualCharacter:
    """Induction of the trivial character from the Young subgroup with the
    given block sizes: the permutation module on ordered set partitions."""
    blocks = list(blocks)
    if any(b < 1 for b in blocks):
        raise ValueError("block sizes must be positive")
    return induced_product([trivial_rep(b) for b in blocks])


def named_rep(kind: str, n: int, *, i: int | None = None, k: int | None = None,
              blocks=None, mu=None) -> VirtualCharacter:
    """Dispatch for the named representation families used by the CLI."""
    if kind in ("trivial", "triv"):
        return trivial_rep(n)
    if kind in ("sign", "sgn"):
        return sign_rep(n)
    if kind in ("standard", "std"):
        return standard_rep(n)
    if kind in ("exterior-standard", "ext"):
        if i is None:
            raise ValueError("exterior power needs an index")
        return exterior_standard_rep(n, i)
    if kind in ("vonmangoldt", "mangoldt"):
        return vonmangoldt_rep(n)
    if kind in ("tensor-power", "tensor"):
        if k is None:
            raise ValueError("tensor power needs a base dimension")
        return tensor_power_rep(n, k)
    if kind == "young":
        if blocks is None:
            raise ValueError("young induction needs block sizes")
        if sum(blocks) != n:
            raise ValueError("young blocks must sum to n")
        return young_induced_rep(blocks)
    if kind in ("irreducible", "irr"):
        if mu is None:
            raise ValueError("irreducible needs a partition label")
        if sum(mu) != n:
            raise ValueError("partition label must sum to n")
        return irreducible_character(tuple(mu))
    raise ValueError(f"unknown representation kind {kind!r}")


def parse_rep_spec(text: str, n: int) -> VirtualCharacter:
    """Parse a CLI representation spec like "sgn", "ext:2", "tensor:3",
    "young:2,2", or "irr:3,1"."""
    head, _, tail = text.strip().partition(":")
    head = head.lower()
    if head in ("triv", "trivial", "sgn", "sign", "std", "standard",
                "mangoldt", "vonmangoldt"):
        return named_rep(head, n)
    if head in ("ext", "exterior-standard"):
        return named_rep("ext", n, i=int(tail))
    if head in ("tensor", "tensor-power"):
        return named_rep("tensor", n, k=int(tail))
    if head == "young":
        return named_rep("young", n, blocks=[int(s) for s in tail.split(",")])
    if head in ("irr", "irreducible"):
        return named_rep("irr", n, mu=[int(s) for s in tail.split(",")])
    raise ValueError(f"unknown representation spec {text!r}")


# -- exact multivariate polynomials ---------------------------------------------------


class MultiPoly:
    """Multivariate polynomial with exact coefficients, as exponent-tuple dict."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            if c:
                if len(exps) != nvars:
                    raise ValueError("exponent tuple of wrong length")
                clean[exps] = c
        self.terms = clean

    @staticmethod
    def constant(nvars: int, c) -> MultiPoly:
        return MultiPoly(nvars, {(0,) * nvars: c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: MultiPoly) -> MultiPoly:
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, 0) + c
        return MultiPoly(self.nvars, out)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, 0) - c
        return MultiPoly(self.nvars, out)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    def scale(self, c) -> MultiPoly:
        return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def eval_all_ones(self):
        return sum(self.terms.values())

    def mixed_partial_all_ones(self):
        """d/dx_1 ... d/dx_v at x = (1,..,1): sum of coeff * prod(exponents)."""
        total = 0
        for exps, c in self.terms.items():
            w = 1
            for e in exps:
                w *= e
                if w == 0:
                    break
            if w:
                total += c * w
        return total

    def to_int_coeffs(self) -> MultiPoly:
        out = {}
        for exps, c in self.terms.items():
            frac = Fraction(c)
            if frac.denominator != 1:
                raise AssertionError(f"non-integral coefficient {c} at {exps}")
            out[exps] = int(frac)
        return MultiPoly(self.nvars, out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars} vars, {len(self.terms)} terms)"


def power_sum(k: int, nvars: int) -> MultiPoly:
    """p_k = x_1^k + ... + x_v^k (the zero polynomial when v = 0)."""
    terms = {}
    for j in range(nvars):
        exps = [0] * nvars
        exps[j] = k
        terms[tuple(exps)] = 1
    return MultiPoly(nvars, terms)


@lru_cache(maxsize=None)
def power_sum_product(lam: tuple[int, ...], nvars: int) -> MultiPoly:
    """Product over the parts of lam of the power sums p_part in nvars variables."""
    if not lam:
        return MultiPoly.constant(nvars, 1)
    return power_sum_product(lam[:-1], nvars) * power_sum(lam[-1], nvars)


# -- invariant-space traces and the bound constants -------------------------------------


@lru_cache(maxsize=None)
def trace_V(rho: VirtualCharacter, m: int) -> MultiPoly:
    """Trace of Diag(x_1..x_{m-1}) on the S_n-invariants of
    (C^{m-1})^(tensor n) tensor rho tensor sgn, as an exact polynomial.

    Computed by averaging over cycle types: the diagonal torus acts on the
    tensor factor with trace prod_cycles p_c(x), so the invariant trace is
    sum_lam sgn(lam) rho(lam) / z(lam) * prod p_c.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    n = rho.n
    acc = MultiPoly(m - 1)
    for lam in partitions(n):
        c = rho.value(lam) * sgn_of(lam)
        if c == 0:
            continue
        acc = acc + power_sum_product(lam, m - 1).scale(Fraction(c, z_of(lam)))
    return acc.to_int_coeffs()


@lru_cache(maxsize=None)
def trace_Vd(rho: VirtualCharacter, d: int, m: int) -> MultiPoly:
    """Trace of Diag(x_1..x_m) on the invariants of
    (C^m)^(tensor (n-d)) tensor rho tensor sgn', where the symmetric group on
    the first n-d letters carries the sign twist and acts on the tensor
    factor, and a commuting symmetric group on the last d letters acts on rho
    alone.  Exact polynomial in m variables."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = rho.n
    if not 0 <= d <= n:
        raise ValueError("d out of range")
    acc = MultiPoly(m)
    for alpha in partitions(n - d):
        pa = power_sum_product(alpha, m)
        base = Fraction(sgn_of(alpha), z_of(alpha))
        for beta in partitions(d):
            c = rho.value(merge_partitions(alpha, beta))
            if c == 0:
                continue
            acc = acc + pa.scale(base * Fraction(c, z_of(beta)))
    return acc.to_int_coeffs()


def dim_Vd(rho: VirtualCharacter, d: int, m: int) -> int:
    return trace_Vd(rho, d, m).eval_all_ones()


def dim_V(rho: VirtualCharacter, m: int) -> int:
    return trace_V(rho, m).eval_all_ones()


def C1(rho: VirtualCharacter, n: int, m: int) -> int:
    """First bound constant: the alternating sum over d of the full mixed
    partial of the trace on the d-th invariant space at the all-ones point,
    corrected by the binomially weighted dimensions for d >= m."""
    if n != rho.n:
        raise ValueError("n must equal the degree of rho")
    if m < 1:
        raise ValueError("m must be >= 1")
    total = 0
    for d in range(n + 1):
        total += (-1) ** d * trace_Vd(rho, d, m).mixed_partial_all_ones()
    for d in range(m, n + 1):
        total -= (-1) ** (d - m) * math.comb(d, m) * dim_Vd(rho, d, m)
    return total


def C2(rho: VirtualCharacter, n: int, m: int) -> int:
    """Second bound constant: the full mixed partial, at the all-ones point,
    of the invariant trace in m-1 variables."""
    if n != rho.n:
        raise ValueError("n must equal the degree of rho")
    if m < 1:
        raise ValueError("m must be >= 1")
    return trace_V(rho, m).mixed_partial_all_ones()


# -- independent cross-check formulas for C2 ----------------------------------------------


def _compositions_nonneg(n: int, parts: int):
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(n + 1):
        for rest in _compositions_nonneg(n - first, parts - 1):
            yield (first,) + rest


def _compositions_positive(n: int, parts: int):
    for comp in _compositions_nonneg(n - parts, parts):
        yield tuple(c + 1 for c in comp)


def young_invariant_dim(chi: VirtualCharacter, blocks) -> int:
    """Dimension of the invariants of chi under the Young subgroup with the
    given block sizes: the average of chi over the subgroup, computed as a sum
    over tuples of cycle types of the blocks."""
    blocks = [b for b in blocks if b > 0]
    if sum(blocks) != chi.n:
        raise ValueError("block sizes must sum to the degree")
    total = Fraction(0)
    for tup in iter_product(*[partitions(b) for b in blocks]):
        merged: tuple[int, ...] = ()
        weight = Fraction(1)
        for lam in tup:
            merged = merged + lam
            weight /= z_of(lam)
        total += weight * chi.value(tuple(sorted(merged, reverse=True)))
    if total.denominator != 1:
        raise AssertionError(f"non-integral invariant dimension {total}")
    return int(total)


def C2_via_e_formula(rho: VirtualCharacter, n: int, m: int) -> int:
    """C2 as a sum over positive (m-1)-tuples (e_1..e_{m-1}) summing to n of
    prod(e_i) times the invariant dimension of rho tensor sgn under the Young
    subgroup with those block sizes."""
    if n != rho.n:
        raise ValueError("n must equal the degree of rho")
    rs = rho.tensor_sgn()
    total = 0
    for comp in _compositions_positive(n, m - 1):
        w = 1
        for e in comp:
            w *= e
        total += w * young_invariant_dim(rs, comp)
    return total


def C2_via_w_formula(rho: VirtualCharacter, n: int, m: int) -> int:
    """C2 as a sum over partitions of n with exactly m-1 parts, with the
    multinomial weight (m-1)!/prod(mult!) times prod(part) per partition."""
    if n != rho.n:
        raise ValueError("n must equal the degree of rho")
    rs = rho.tensor_sgn()
    total = 0
    for lam in partitions(n):
        if len(lam) != m - 1:
            continue
        coeff = math.factorial(m - 1)
        for _, cnt in multiplicities(lam).items():
            coeff //= math.factorial(cnt)
        for part in lam:
            coeff *= part
        total += coeff * young_invariant_dim(rs, lam)
    return total


def M_rho(rho: VirtualCharacter, w: dict[int, int]) -> int:
    """Signed invariant dimension for a part-multiplicity function w:
    (-1)^n times the dimension of the invariants of rho tensor sgn under the
    product over k of w(k) copies of the symmetric group S_k."""
    n = sum(k * cnt for k, cnt in w.items())
    if n != rho.n:
        raise ValueError("total weight of w must equal the degree of rho")
    blocks = []
    for k, cnt in sorted(w.items()):
        if cnt < 0 or k < 1:
            raise ValueError("w must map positive part sizes to nonnegative counts")
        blocks.extend([k] * cnt)
    return (-1) ** n * young_invariant_dim(rho.tensor_sgn(), blocks)


# -- closed forms for the three standard families ------------------------------------------


def _comb0(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def closed_form_constants(family: str, n: int, m: int, k: int | None = None):
    """Closed-form (C1, C2) for the named function families.

    family "mobius"      — sign representation (requires m >= 2)
    family "divisor"     — k-fold tensor power of C^k (any m >= 1; needs k)
    family "vonmangoldt" — direct sum of exterior powers of the standard
                           representation (requires m >= 2)

    All three agree exactly with the generic C1/C2 on the corresponding
    representation.
    """
    if family == "mobius":
        if m < 2:
            raise ValueError("mobius closed form requires m >= 2")
        return _comb0(n + m - 2, 2 * m - 2), _comb0(n + m - 2, 2 * m - 3)
    if family == "divisor":
        if k is None or k < 1:
            raise ValueError("divisor closed form needs k >= 1")
        if m < 1:
            raise ValueError("divisor closed form requires m >= 1")
        c1 = (k**m - _comb0(m + k - 1, m)) * _comb0(m * k - m - k, n - m)
        c2 = k ** (m - 1) * _comb0(m * k - k - m + 1, n + 1 - m)
        return c1, c2
    if family == "vonmangoldt":
        if m < 2:
            raise ValueError("vonmangoldt closed form requires m >= 2")
        two_c2 = 2 ** (m - 1) * _comb0(n + m - 2, 2 * m - 3)
        two_c1 = sum(
            2 ** (m - 1 - r) * _comb0(n + m - 2 - r, 2 * m - 2 - r)
            for r in range(m - 1)
        )
        assert two_c1 % 2 == 0 and two_c2 % 2 == 0
        return two_c1 // 2, two_c2 // 2
    raise ValueError(f"unknown family {family!r}")


def divisor_dim_Vd(n: int, m: int, k: int, d: int) -> int:
    """Closed-form dimension of the d-th invariant space for the k-fold
    tensor family: binom(mk, n-d) * binom(d+k-1, k-1)."""
    return _comb0(m * k, n - d) * _comb0(d + k - 1, k - 1)


# -- explicit binomial coefficient bound -----------------------------------------------


_E_LOWER = Fraction(27182818284590452353602874713526624977, 10**37)  # < e


def binomial_bound(a: int, b: int, x: int, y: int, alpha) -> float:
    """Upper bound (alpha+1)^(x+y)/alpha^x * ((alpha+1)e/alpha)^a for the
    binomial coefficient binom(a+b+x+y, a+x), valid when alpha > 0 and
    alpha*b <= a."""
    alpha = Fraction(alpha)
    _binomial_bound_check(a, b, x, y, alpha)
    al = float(alpha)
    return (al + 1) ** (x + y) / al**x * ((al + 1) * math.e / al) ** a


def binomial_bound_floor(a: int, b: int, x: int, y: int, alpha) -> Fraction:
    """Exact rational lower bound for binomial_bound (using a rational lower
    bound for e), so that lhs <= this value certifies the inequality."""
    alpha = Fraction(alpha)
    _binomial_bound_check(a, b, x, y, alpha)
    return (alpha + 1) ** (x + y) / alpha**x * ((alpha + 1) * _E_LOWER / alpha) ** a


def _binomial_bound_check(a: int, b: int, x: int, y: int, alpha: Fraction) -> None:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative integers")
    if alpha * b > a:
        raise ValueError("requires alpha * b <= a")
    if a + x < 0 or b + y < 0:
        raise ValueError("requires a+b+x+y >= a+x >= 0")
