"""Factorization-type distributions and the entropy tail machinery.

Two halves:

* Exact side — probability measures on factorization types of monic
  polynomials in a residue class (or coprime to the modulus), with rational
  masses and exact total-variation distances.

* Probabilistic side — the stick-breaking process whose atoms are cut by
  independent uniforms, its entropy, a comparison Markov chain on integers
  >= 4 that dominates the exponential of the entropy, the chain's stationary
  law, and explicit tail bounds.  Monte Carlo here uses a counter-based
  generator (Philox) so runs are reproducible and trajectories splittable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arithfun import EFT, eft_histogram, eft_indicator, eft_of, enumerate_efts, entropy
from .dirichlet import euler_phi, unit_group
from .polyring import Poly, enumerate_monic, factor, poly_gcd

__all__ = [
    "EFTMeasure",
    "PDSample",
    "ChainState",
    "TailEstimate",
    "EntropyIncreaseChecks",
    "eft_measure",
    "eft_measure_via_indicator",
    "tv_distance",
    "pd_sample",
    "pd_entropy_samples",
    "pd_tail_mc",
    "chain_step",
    "chain_sample",
    "entropy_update",
    "pi_stationary",
    "pi_total",
    "detailed_balance_gap",
    "tail_sum_bound",
    "dp_bound",
    "entropy_increase_properties",
    "coupling_violations",
    "coupled_trajectory",
    "polynomial_entropy_samples",
    "ks_statistic",
    "tv_bound_report",
]


# ---------------------------------------------------------------------------
# Exact factorization-type measures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EFTMeasure:
    """Probability measure on factorization types of fixed total weight n."""

    n: int
    modulus: str
    context: str
    masses: tuple[tuple[EFT, Fraction], ...]

    def __post_init__(self) -> None:
        total = Fraction(0)
        for _, mass in self.masses:
            if mass < 0:
                raise ValueError("masses must be nonnegative")
            total += mass
        if total != 1:
            raise ValueError(f"masses must sum to 1, got {total}")

    def as_dict(self) -> dict[EFT, Fraction]:
        return dict(self.masses)

    def mass(self, w: EFT) -> Fraction:
        return self.as_dict().get(w, Fraction(0))


def _measure_from_counts(
    n: int, g: Poly, context: str, counts: dict[EFT, int], denom: int
) -> EFTMeasure:
    masses = tuple(
        (w, Fraction(c, denom)) for w, c in sorted(counts.items()) if c
    )
    return EFTMeasure(n=n, modulus=g.to_string(), context=context, masses=masses)


def _check_measure_args(n: int, g: Poly) -> None:
    if g.degree < 1 or not g.is_monic:
        raise ValueError("modulus must be monic of degree at least 1")
    if any(e > 1 for _, e in factor(g)):
        raise ValueError("modulus must be squarefree")
    if n < g.degree:
        raise ValueError("requires n >= deg g")


def eft_measure(n: int, g: Poly, a: Poly | None = None) -> EFTMeasure:
    """Distribution of the factorization type of a random monic degree-n
    polynomial in the class a mod g (or coprime to g when a is None)."""
    _check_measure_args(n, g)
    grp = unit_group(g)
    m = g.degree
    q = g.field.q
    hist = eft_histogram(g, n)
    if a is not None:
        a = a % g
        if not grp.is_unit(a):
            raise ValueError("class must be invertible mod g")
        counts = dict(hist.get(a, {}))
        denom = q ** (n - m)
        if sum(counts.values()) != denom:
            raise AssertionError("class size must be exactly q^(n-m)")
        return _measure_from_counts(n, g, "class:" + a.to_string(), counts, denom)
    counts: dict[EFT, int] = {}
    for r in grp.units():
        for w, c in hist.get(r, {}).items():
            counts[w] = counts.get(w, 0) + c
    denom = euler_phi(g) * q ** (n - m)
    if sum(counts.values()) != denom:
        raise AssertionError("coprime count must be exactly phi(g) q^(n-m)")
    return _measure_from_counts(n, g, "coprime", counts, denom)


def eft_measure_via_indicator(n: int, g: Poly, a: Poly | None = None) -> EFTMeasure:
    """Same distribution, but tallied through the divisor-sieve indicator of
    each factorization type instead of factoring.  Slow; used as an
    independent oracle for the fast path."""
    _check_measure_args(n, g)
    grp = unit_group(g)
    if a is not None:
        a = a % g
        if not grp.is_unit(a):
            raise ValueError("class must be invertible mod g")
        members = [f for f in enumerate_monic(g.field, n) if f % g == a]
        context = "class:" + a.to_string()
    else:
        members = [
            f for f in enumerate_monic(g.field, n) if poly_gcd(f, g).is_one
        ]
        context = "coprime"
    counts: dict[EFT, int] = {}
    for w in enumerate_efts(n):
        hit = sum(eft_indicator(w, f) for f in members)
        if hit:
            counts[w] = hit
    return _measure_from_counts(n, g, context, counts, len(members))


def tv_distance(mu1: EFTMeasure, mu2: EFTMeasure) -> Fraction:
    """Total variation distance: the sum of positive parts of mu2 - mu1."""
    if mu1.n != mu2.n:
        raise ValueError("total weight mismatch between measures")
    d1, d2 = mu1.as_dict(), mu2.as_dict()
    out = Fraction(0)
    for w in set(d1) | set(d2):
        gap = d2.get(w, Fraction(0)) - d1.get(w, Fraction(0))
        if gap > 0:
            out += gap
    return out


# ---------------------------------------------------------------------------
# Stick-breaking samples and their entropy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PDSample:
    """One truncated stick-breaking sample.

    probabilities holds the first atoms; remainder is the unbroken mass.
    entropy_low coarsens the tail into a single atom (a true lower bound for
    the entropy); entropy_high adds a generous allowance of -log(remainder)
    per unit of remaining mass for the conditional tail entropy, so the pair
    brackets the exact value except on an event of negligible probability.
    """

    probabilities: tuple[float, ...]
    remainder: float
    entropy_low: float
    entropy_high: float

    @property
    def entropy(self) -> float:
        return self.entropy_low


def pd_sample(seed: int, eps: float = 1e-12) -> PDSample:
    """Draw one stick-breaking sample, truncated when the unbroken mass
    drops below eps."""
    if not 0 < eps < 1:
        raise ValueError("eps must be in (0, 1)")
    rng = np.random.Generator(np.random.Philox(seed))
    probs: list[float] = []
    cum = 1.0
    while cum >= eps:
        x = float(rng.random())
        nxt = cum * x
        probs.append(cum - nxt)
        cum = nxt
    ent = -math.fsum(p * math.log(p) for p in probs if p > 0)
    if cum > 0:
        low = ent - cum * math.log(cum)
        high = low + cum * max(1.0, -math.log(cum))
    else:
        low = high = ent
    return PDSample(
        probabilities=tuple(probs),
        remainder=cum,
        entropy_low=low,
        entropy_high=high,
    )


def pd_entropy_samples(
    trials: int, seed: int, eps: float = 1e-12, block: int = 32768
) -> np.ndarray:
    """Entropies (single-tail-atom completion) of many independent
    stick-breaking samples, vectorized in blocks."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if not 0 < eps < 1:
        raise ValueError("eps must be in (0, 1)")
    rng = np.random.Generator(np.random.Philox(seed))
    # The remaining mass after k draws is exp of a sum of k iid log-uniforms
    # (mean -1 each), so 4*log(1/eps) columns leave mass above eps only on an
    # event of negligible probability, and even then the single tail atom
    # still completes the row's entropy correctly.
    kmax = max(16, int(4 * math.log(1 / eps)))
    out = np.empty(trials)
    done = 0
    while done < trials:
        rows = min(block, trials - done)
        u = rng.random((rows, kmax))
        np.clip(u, 1e-300, None, out=u)
        cum = np.cumprod(u, axis=1)
        p = np.empty_like(cum)
        p[:, 0] = 1.0 - u[:, 0]
        p[:, 1:] = cum[:, :-1] - cum[:, 1:]
        ent = -np.sum(p * np.log(np.maximum(p, 1e-300)), axis=1)
        rem = cum[:, -1]
        ent -= rem * np.log(np.maximum(rem, 1e-300))
        out[done : done + rows] = ent
        done += rows
    return out


def _wilson_interval(hits: int, trials: int, z: float) -> tuple[float, float]:
    phat = hits / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class TailEstimate:
    threshold: float
    trials: int
    hits: int
    estimate: float
    ci_low: float
    ci_high: float
    bound: float
    consistent_with_bound: bool

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "trials": self.trials,
            "hits": self.hits,
            "estimate": self.estimate,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "bound": self.bound,
            "consistent_with_bound": self.consistent_with_bound,
        }


def pd_tail_mc(
    L: float,
    trials: int,
    seed: int,
    eps: float = 1e-12,
    samples: np.ndarray | None = None,
) -> TailEstimate:
    """Monte Carlo estimate of the probability that the stick-breaking
    entropy reaches log L, with a Wilson score interval, compared one-sided
    against the explicit tail bound dp_bound(L).  Pass precomputed entropy
    samples to reuse one draw across several thresholds."""
    if L <= 7:
        raise ValueError("tail bound comparison needs L > 7")
    if samples is None:
        ent = pd_entropy_samples(trials, seed, eps)
    else:
        if len(samples) != trials:
            raise ValueError("sample count must match trials")
        ent = samples
    threshold = math.log(L)
    hits = int(np.count_nonzero(ent >= threshold))
    lo, hi = _wilson_interval(hits, trials, z=3.0)
    bound = dp_bound(L)
    return TailEstimate(
        threshold=threshold,
        trials=trials,
        hits=hits,
        estimate=hits / trials,
        ci_low=lo,
        ci_high=hi,
        bound=bound,
        consistent_with_bound=lo <= bound,
    )


# ---------------------------------------------------------------------------
# The comparison chain and its stationary law
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainState:
    """State of the comparison chain; transitions move N by at most 1."""

    N: int

    def __post_init__(self) -> None:
        if self.N < 4:
            raise ValueError("chain state must be at least 4")

    def step(self, y: float) -> "ChainState":
        return ChainState(chain_step(self.N, y))


def chain_step(N: int, y: float) -> int:
    """One move of the comparison chain driven by a uniform variate y.

    Moves up when y > 1 - e/N, down when y <= 1 - 4/N, else stays.  The
    down-move out of N = 4 would need y <= 0 (probability zero); the state
    space is kept at N >= 4 by flooring.
    """
    if N < 4:
        raise ValueError("N must be at least 4")
    if not 0.0 <= y <= 1.0:
        raise ValueError("y must lie in [0, 1]")
    if y > 1.0 - math.e / N:
        return N + 1
    if y <= 1.0 - 4.0 / N:
        return max(4, N - 1)
    return N


def entropy_update(H: float, y: float) -> float:
    """Entropy after splitting off a fraction 1-y of the mass:
    -(1-y)log(1-y) - y log(y) + y H, with the endpoint values 0 at y = 0
    and H at y = 1 supplied by continuity."""
    if H < 0:
        raise ValueError("H must be nonnegative")
    if not 0.0 <= y <= 1.0:
        raise ValueError("y must lie in [0, 1]")
    acc = y * H
    if 0.0 < y < 1.0:
        acc += -(1.0 - y) * math.log(1.0 - y) - y * math.log(y)
    return acc


_PI_LOG_NORM = math.log(4 + math.e) + (4 + math.e)


def pi_stationary(N: int) -> float:
    """Stationary mass at N: N e^N / ((4+e) e^(4+e) (N-4)!)."""
    if N < 4:
        raise ValueError("N must be at least 4")
    return math.exp(math.log(N) + N - math.lgamma(N - 3) - _PI_LOG_NORM)


def pi_total(limit: int = 400) -> float:
    """Partial sum of the stationary law (converges to 1 superexponentially)."""
    return math.fsum(pi_stationary(N) for N in range(4, limit + 1))


def detailed_balance_gap(N: int) -> float:
    """Relative gap in (e/N) pi(N) = (1 - 4/(N+1)) pi(N+1)."""
    lhs = math.e / N * pi_stationary(N)
    rhs = (1 - 4 / (N + 1)) * pi_stationary(N + 1)
    return abs(lhs - rhs) / max(lhs, rhs)


def tail_sum_bound(C: int) -> float:
    """Explicit upper bound C^5 e^C / ((4+e) e^(4+e) C!) for the stationary
    mass at or above C (valid from C = 8 on)."""
    if C < 8:
        raise ValueError("tail bound needs C >= 8")
    return math.exp(5 * math.log(C) + C - math.lgamma(C + 1) - _PI_LOG_NORM)


def dp_bound(L: float) -> float:
    """Explicit bound L^(9/2) e^(2L) / (sqrt(2 pi) (4+e) e^(4+e) L^L) for the
    probability that the stick-breaking entropy reaches log L (L > 7)."""
    if L <= 7:
        raise ValueError("bound needs L > 7")
    return math.exp(
        4.5 * math.log(L) + 2 * L - L * math.log(L) - 0.5 * math.log(2 * math.pi) - _PI_LOG_NORM
    )


# ---------------------------------------------------------------------------
# Entropy growth inequalities and the chain coupling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EntropyIncreaseChecks:
    base: bool
    no_increase_applicable: bool
    no_increase: bool | None
    decrease_applicable: bool
    decrease: bool | None

    @property
    def all_ok(self) -> bool:
        return (
            self.base
            and (self.no_increase is None or self.no_increase)
            and (self.decrease is None or self.decrease)
        )


def entropy_increase_properties(H: float, y: float) -> EntropyIncreaseChecks:
    """Pointwise checks of the exponential-entropy growth inequalities:
    exp(H') <= exp(H) + 1 always; <= exp(H) when y <= 1 - e^(1-H);
    <= exp(H) - 1 when y <= 1 - 4 e^(-H).

    Both conditional inequalities are small-y statements: splitting off a
    large first atom (small y) collapses the entropy.  They mirror the
    stay/down moves of the comparison chain via H = log N.
    """
    new = entropy_update(H, y)
    e_new, e_old = math.exp(new), math.exp(H)
    slack = 1e-12 * (1 + e_old)
    base = e_new <= e_old + 1 + slack
    no_inc_app = y <= 1 - math.exp(1 - H)
    no_inc = (e_new <= e_old + slack) if no_inc_app else None
    dec_app = y <= 1 - 4 * math.exp(-H)
    dec = (e_new <= e_old - 1 + slack) if dec_app else None
    return EntropyIncreaseChecks(
        base=base,
        no_increase_applicable=no_inc_app,
        no_increase=no_inc,
        decrease_applicable=dec_app,
        decrease=dec,
    )


def chain_sample(n0: int, steps: int, trajectories: int, seed: int) -> np.ndarray:
    """Final states of many independent chain runs started at n0.  Used to
    check empirical convergence to the stationary law."""
    if n0 < 4:
        raise ValueError("n0 must be at least 4")
    rng = np.random.Generator(np.random.Philox(seed))
    N = np.full(trajectories, n0, dtype=np.int64)
    for _ in range(steps):
        y = rng.random(trajectories)
        up = y > 1 - math.e / N
        down = y <= 1 - 4.0 / N
        N = N + up.astype(np.int64) - (down & ~up).astype(np.int64)
        np.maximum(N, 4, out=N)
    return N


def coupled_trajectory(h0: float, steps: int, seed: int) -> list[tuple[float, int]]:
    """Run the entropy recursion and the comparison chain on shared uniform
    variates, starting from N = max(4, ceil(exp(h0)))."""
    if h0 < 0:
        raise ValueError("h0 must be nonnegative")
    rng = np.random.Generator(np.random.Philox(seed))
    H = h0
    N = max(4, math.ceil(math.exp(h0)))
    out = [(H, N)]
    for _ in range(steps):
        y = float(rng.random())
        H = entropy_update(H, y)
        N = chain_step(N, y)
        out.append((H, N))
    return out


def coupling_violations(
    h0: float, steps: int, trajectories: int, seed: int, slack: float = 1e-9
) -> int:
    """Count steps across many shared-variate trajectories where the chain
    falls below the exponential of the entropy.  Vectorized."""
    if h0 < 0:
        raise ValueError("h0 must be nonnegative")
    rng = np.random.Generator(np.random.Philox(seed))
    H = np.full(trajectories, float(h0))
    N = np.full(trajectories, max(4, math.ceil(math.exp(h0))), dtype=np.int64)
    violations = 0
    for _ in range(steps):
        y = rng.random(trajectories)
        with np.errstate(divide="ignore", invalid="ignore"):
            split = np.where(
                (y > 0) & (y < 1),
                -(1 - y) * np.log1p(-y) - y * np.log(y),
                0.0,
            )
        H = y * H + split
        up = y > 1 - math.e / N
        down = y <= 1 - 4.0 / N
        N = N + up.astype(np.int64) - (down & ~up).astype(np.int64)
        np.maximum(N, 4, out=N)
        violations += int(np.count_nonzero(np.exp(H) > N + slack))
    return violations


# ---------------------------------------------------------------------------
# Entropy of random polynomial factorizations
# ---------------------------------------------------------------------------


def polynomial_entropy_samples(field, n: int, count: int, seed: int) -> np.ndarray:
    """Entropies of the factorization types of random monic degree-n
    polynomials over the given field."""
    if n < 1 or count < 1:
        raise ValueError("need n >= 1 and count >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    coeff_blocks = rng.integers(0, field.q, size=(count, n))
    out = np.empty(count)
    for i in range(count):
        f = Poly(field, tuple(int(c) for c in coeff_blocks[i]) + (1,))
        out[i] = entropy(eft_of(f))
    return out


def ks_statistic(a: np.ndarray, b: np.ndarray) -> float:
    """Two-sample Kolmogorov-Smirnov statistic."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    grid = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, grid, side="right") / len(a)
    cdf_b = np.searchsorted(b, grid, side="right") / len(b)
    return float(np.max(np.abs(cdf_a - cdf_b)))


def tv_bound_report(q: int, theta: float) -> dict:
    """Evaluate (without asserting) the explicit pieces of the asymptotic
    total-variation bound: the entropy scale L, the q-threshold for the
    power-saving regime, and the tail term when L > 7."""
    if not 0 < theta < 1:
        raise ValueError("theta must be in (0, 1)")
    L = 0.5 * ((2 - 2 * theta) * math.sqrt(q) / ((1 + 2 * theta) * math.e)) ** (
        1 - theta
    )
    q_threshold = (
        (1 + 2 * theta)
        * math.e
        * 2 ** (theta / (1 - theta))
        * 7 ** (1 / (1 - theta))
        / (1 - theta)
    ) ** 2
    return {
        "L": L,
        "q_threshold": q_threshold,
        "q_above_threshold": q > q_threshold,
        "tail_term": dp_bound(L) if L > 7 else None,
    }
