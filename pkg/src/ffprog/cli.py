"""Command line interface: reproducible JSON/CSV verification reports.

Exit codes: 0 all requested checks pass; 1 at least one asserted inequality
failed (the report still describes every check); 2 malformed invocation
(unknown flags, unparsable field/polynomial/representation strings); 3 a
semantic precondition was violated (non-squarefree modulus, class not
invertible, degree ranges, ...).

JSON is the canonical output: keys are sorted and runs with identical inputs
and seed are byte-identical.  CSV is a lossy flat projection for
spreadsheets; for ``pd-tail`` it is a histogram of the sampled entropies.
The worker-thread count (``--threads`` or the ``FFPROG_THREADS`` variable)
never influences report content, only wall time.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

from .anatomy import (
    eft_measure,
    pd_entropy_samples,
    pd_tail_mc,
    tv_bound_report,
    tv_distance,
)
from .arithfun import d_k, eft_of, entropy, mobius, vonmangoldt
from .bounds import one_level_density, verify_main_bound, verify_moment_bound
from .dirichlet import (
    characters,
    critical_line_deviation,
    euler_phi,
    gammas,
    L_poly,
    moment_primitive_sum,
    unit_group,
)
from .field import Field, make_field, parse_field
from .polyring import Poly, factor, poly_from_string
from .symrep import (
    C1,
    C2,
    VirtualCharacter,
    exterior_standard_rep,
    irreducible_character,
    partitions,
    sign_rep,
    tensor_power_rep,
    trivial_rep,
    vonmangoldt_rep,
)

SCHEMA = 1

__all__ = ["RunConfig", "main", "run"]


class ParseFailure(Exception):
    """Malformed invocation input (maps to exit code 2)."""


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Fully parsed invocation; round-trips through to_dict/from_dict."""

    subcommand: str
    field: str | None = None
    polys: tuple[tuple[str, str], ...] = ()
    params: tuple[tuple[str, object], ...] = ()
    seed: int = 0
    threads: int = 1
    out: str | None = None
    fmt: str = "json"

    def poly_map(self) -> dict[str, str]:
        return dict(self.polys)

    def param_map(self) -> dict[str, object]:
        return dict(self.params)

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "field": self.field,
            "polys": [list(pair) for pair in self.polys],
            "params": [list(pair) for pair in self.params],
            "seed": self.seed,
            "threads": self.threads,
            "out": self.out,
            "fmt": self.fmt,
        }

    @staticmethod
    def from_dict(data: dict) -> "RunConfig":
        return RunConfig(
            subcommand=data["subcommand"],
            field=data.get("field"),
            polys=tuple((k, v) for k, v in data.get("polys", ())),
            params=tuple((k, v) for k, v in data.get("params", ())),
            seed=data.get("seed", 0),
            threads=data.get("threads", 1),
            out=data.get("out"),
            fmt=data.get("fmt", "json"),
        )


def _default_threads() -> int:
    raw = os.environ.get("FFPROG_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffprog",
        description="Exact verification reports for factorization statistics "
        "of polynomials over finite fields.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", default="json", choices=("json", "csv"),
                       dest="fmt", help="output format")
        p.add_argument("--seed", type=int, default=0, help="RNG seed")
        p.add_argument("--threads", type=int, default=_default_threads(),
                       help="worker threads (affects wall time only)")

    p = sub.add_parser("factor", help="factor a monic polynomial")
    p.add_argument("--field", required=True, help='field spec like "3" or "2^3"')
    p.add_argument("--poly", required=True, help='coefficients low-to-high, "0,1,0,0,1"')
    common(p)

    p = sub.add_parser("constants", help="bound constants of a representation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rho", required=True,
                   help='"sgn", "trivial", "std", "ext:I", "vm", "tensor:K", '
                        'or a partition "2,1,1"')
    common(p)

    p = sub.add_parser("verify-bound", help="progression bound over a grid")
    p.add_argument("--field", required=True)
    p.add_argument("--g", required=True, help="modulus coefficients")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--rho", default="all-irreps",
                   help='"all-irreps" or a single representation spec')
    common(p)

    p = sub.add_parser("lfunc", help="L-polynomials, roots, and root phases")
    p.add_argument("--field", required=True)
    p.add_argument("--g", required=True)
    common(p)

    p = sub.add_parser("density", help="one-level density of L-zeros")
    p.add_argument("--field", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--lam", type=float, default=2.0, help="Fejer support")
    p.add_argument("--max-frequency", type=int, default=None)
    common(p)

    p = sub.add_parser("moments", help="moment bound over all classes")
    p.add_argument("--field", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--s", type=float, default=0.5)
    common(p)

    p = sub.add_parser("eft-tv", help="factorization-type measures and TV distances")
    p.add_argument("--q", type=int, required=True, help="field size (prime power)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", required=True)
    common(p)

    p = sub.add_parser("pd-tail", help="stick-breaking entropy tail Monte Carlo")
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--trials", type=int, default=10**6)
    common(p)

    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    polys = []
    params = []
    for key in ("poly", "g"):
        if hasattr(ns, key):
            polys.append((key, getattr(ns, key)))
    for key in ("n", "m", "nmax", "rho", "lam", "max_frequency", "k", "s", "q",
                "L", "trials"):
        if hasattr(ns, key):
            params.append((key, getattr(ns, key)))
    return RunConfig(
        subcommand=ns.subcommand,
        field=getattr(ns, "field", None),
        polys=tuple(polys),
        params=tuple(params),
        seed=ns.seed,
        threads=max(1, ns.threads),
        out=ns.out,
        fmt=ns.fmt,
    )


# ---------------------------------------------------------------------------
# Input resolution (malformed values here are parse failures, exit 2)
# ---------------------------------------------------------------------------


def _resolve_field(cfg: RunConfig) -> Field:
    try:
        return parse_field(cfg.field)
    except (ValueError, TypeError) as exc:
        raise ParseFailure(f"bad field spec {cfg.field!r}: {exc}") from exc


def _field_from_q(q: int) -> Field:
    if q < 2:
        raise ParseFailure(f"field size must be at least 2, got {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            rest = q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1:
                raise ParseFailure(f"{q} is not a prime power")
            return make_field(p, k)
    raise ParseFailure(f"{q} is not a prime power")


def _resolve_poly(cfg: RunConfig, key: str, field: Field) -> Poly:
    text = cfg.poly_map()[key]
    try:
        return poly_from_string(field, text)
    except ValueError as exc:
        raise ParseFailure(f"bad polynomial for --{key}: {exc}") from exc


def _resolve_rho(spec: str, n: int) -> tuple[str, VirtualCharacter]:
    spec = spec.strip()
    try:
        if spec in ("sgn", "sign"):
            return "sgn", sign_rep(n)
        if spec in ("trivial", "triv"):
            return "trivial", trivial_rep(n)
        if spec == "std":
            return "std", exterior_standard_rep(n, 1)
        if spec == "vm":
            return "vm", vonmangoldt_rep(n)
        if spec.startswith("ext:"):
            i = int(spec.split(":", 1)[1])
            return f"ext:{i}", exterior_standard_rep(n, i)
        if spec.startswith("tensor:"):
            k = int(spec.split(":", 1)[1])
            return f"tensor:{k}", tensor_power_rep(n, k)
        parts = tuple(int(x) for x in spec.split(","))
        if sorted(parts, reverse=True) != list(parts) or any(x < 1 for x in parts):
            raise ValueError(f"not a partition: {spec!r}")
        if sum(parts) != n:
            raise ValueError(f"partition {spec!r} does not sum to n = {n}")
        return "irrep[" + ",".join(map(str, parts)) + "]", irreducible_character(parts)
    except ParseFailure:
        raise
    except (ValueError, IndexError) as exc:
        raise ParseFailure(f"bad representation spec {spec!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (report dict, all checks passed)
# ---------------------------------------------------------------------------


def _cmd_factor(cfg: RunConfig) -> tuple[dict, bool]:
    F = _resolve_field(cfg)
    f = _resolve_poly(cfg, "poly", F)
    pairs = factor(f)
    w = eft_of(f)
    report = {
        "schema": SCHEMA,
        "command": "factor",
        "field": F.spec_string(),
        "poly": f.to_string(),
        "pretty": f.pretty(),
        "degree": f.degree,
        "factors": [
            {"poly": p.to_string(), "pretty": p.pretty(),
             "degree": p.degree, "exponent": e}
            for p, e in pairs
        ],
        "eft": [[d, mult] for d, mult in w],
        "mobius": mobius(f),
        "vonmangoldt": vonmangoldt(f),
        "num_divisors": d_k(f, 2),
        "entropy": entropy(w) if f.degree > 0 else 0.0,
    }
    return report, True


def _cmd_constants(cfg: RunConfig) -> tuple[dict, bool]:
    params = cfg.param_map()
    n, m = params["n"], params["m"]
    label, rho = _resolve_rho(params["rho"], n)
    report = {
        "schema": SCHEMA,
        "command": "constants",
        "n": n,
        "m": m,
        "rho": label,
        "C1": C1(rho, n, m),
        "C2": C2(rho, n, m),
    }
    return report, True


def _cmd_verify_bound(cfg: RunConfig) -> tuple[dict, bool]:
    F = _resolve_field(cfg)
    g = _resolve_poly(cfg, "g", F)
    params = cfg.param_map()
    nmax = params["nmax"]
    rho_spec = params["rho"]
    m = g.degree
    if nmax < max(m, 1):
        raise ValueError(f"--nmax {nmax} is below deg g = {m}")
    grp = unit_group(g)
    tasks = []
    for n in range(max(m, 1), nmax + 1):
        if rho_spec == "all-irreps":
            rhos = [(f"irrep[{','.join(map(str, mu))}]", irreducible_character(mu))
                    for mu in partitions(n)]
        else:
            rhos = [_resolve_rho(rho_spec, n)]
        for label, rho in rhos:
            for a in grp.units():
                tasks.append((n, label, a.to_string(), rho, a))

    def work(task):
        n, label, a_str, rho, a = task
        return verify_main_bound(rho, n, g, a)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            reports = list(pool.map(work, tasks))
    else:
        reports = [work(t) for t in tasks]

    failed = [r.to_dict() for r in reports if not r.all_ok]
    by_n: dict[str, int] = {}
    for (n, *_rest), _r in zip(tasks, reports):
        by_n[str(n)] = by_n.get(str(n), 0) + 1
    report = {
        "schema": SCHEMA,
        "command": "verify-bound",
        "field": F.spec_string(),
        "g": g.to_string(),
        "m": m,
        "nmax": nmax,
        "rho": rho_spec,
        "checks": len(reports),
        "checks_by_n": by_n,
        "failures": len(failed),
        "failed": failed,
        "status": "pass" if not failed else "fail",
    }
    return report, not failed


def _cmd_lfunc(cfg: RunConfig) -> tuple[dict, bool]:
    F = _resolve_field(cfg)
    g = _resolve_poly(cfg, "g", F)
    q = F.q
    entries = []
    ok = True
    for idx, chi in enumerate(characters(g)):
        entry: dict = {
            "index": idx,
            "exponents": list(chi.exponents),
            "trivial": chi.is_trivial(),
            "primitive": chi.is_primitive(),
            "odd": chi.is_odd(),
        }
        if not chi.is_trivial():
            lp = L_poly(chi)
            roots = sorted(
                (complex(r) for r in lp.roots()),
                key=lambda z: (round(z.real, 12), round(z.imag, 12)),
            )
            deviation = critical_line_deviation(chi)
            entry.update(
                {
                    "L_coefficients": [[c.real, c.imag] for c in lp.coefficients],
                    "roots_u": [[z.real, z.imag] for z in roots],
                    "gammas": gammas(chi),
                    "critical_line_deviation": deviation,
                }
            )
            if chi.is_primitive() and chi.is_odd():
                rh_ok = bool(deviation <= 1e-9)
                entry["rh_ok"] = rh_ok
                ok = ok and rh_ok
            else:
                entry["rh_ok"] = None
        entries.append(entry)
    report = {
        "schema": SCHEMA,
        "command": "lfunc",
        "field": F.spec_string(),
        "g": g.to_string(),
        "critical_modulus": q ** -0.5,
        "characters": entries,
        "status": "pass" if ok else "fail",
    }
    return report, ok


def _cmd_density(cfg: RunConfig) -> tuple[dict, bool]:
    F = _resolve_field(cfg)
    g = _resolve_poly(cfg, "g", F)
    params = cfg.param_map()
    res = one_level_density(g, params["lam"], max_frequency=params["max_frequency"])
    report = {"schema": SCHEMA, "command": "density", "field": F.spec_string()}
    report.update(res.to_dict())
    report["status"] = "pass" if res.agree else "fail"
    return report, res.agree


def _cmd_moments(cfg: RunConfig) -> tuple[dict, bool]:
    F = _resolve_field(cfg)
    g = _resolve_poly(cfg, "g", F)
    params = cfg.param_map()
    k, s = params["k"], params["s"]
    grp = unit_group(g)
    rows = []
    ok = True
    for a in grp.units():
        rep = verify_moment_bound(g, a, s, k)
        rows.append(rep.to_dict())
        ok = ok and rep.ok
    summary = moment_primitive_sum(g, s, k)
    scale = max(1.0, abs(summary.direct))
    sieve_ok = abs(summary.direct - summary.sieve) <= 1e-7 * scale
    ok = ok and sieve_ok
    report = {
        "schema": SCHEMA,
        "command": "moments",
        "field": F.spec_string(),
        "g": g.to_string(),
        "k": k,
        "s": s,
        "classes": rows,
        "primitive_sum": {
            "direct": [summary.direct.real, summary.direct.imag],
            "sieve": [summary.sieve.real, summary.sieve.imag],
            "primitive_count": summary.primitive_count,
            "deviation": summary.deviation,
            "sieve_matches_direct": sieve_ok,
        },
        "status": "pass" if ok else "fail",
    }
    return report, ok


def _rat(x: Fraction) -> str | int:
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cmd_eft_tv(cfg: RunConfig) -> tuple[dict, bool]:
    params = cfg.param_map()
    F = _field_from_q(params["q"])
    g = _resolve_poly(cfg, "g", F)
    n = params["n"]
    grp = unit_group(g)
    coprime = eft_measure(n, g)

    units = list(grp.units())

    def work(a):
        mu = eft_measure(n, g, a)
        return {
            "class": a.to_string(),
            "tv_to_coprime": _rat(tv_distance(mu, coprime)),
        }

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(work, units))
    else:
        rows = [work(a) for a in units]

    theta = g.degree / n
    pieces = tv_bound_report(F.q, theta)
    report = {
        "schema": SCHEMA,
        "command": "eft-tv",
        "field": F.spec_string(),
        "g": g.to_string(),
        "n": n,
        "m": g.degree,
        "theta": theta,
        "phi": euler_phi(g),
        "coprime_measure": [
            {"eft": [[d, mult] for d, mult in w], "mass": _rat(mass)}
            for w, mass in coprime.masses
        ],
        "classes": rows,
        "asymptotic_pieces": {
            "L": pieces["L"],
            "q_threshold": pieces["q_threshold"],
            "q_above_threshold": pieces["q_above_threshold"],
            "tail_term": pieces["tail_term"],
        },
    }
    return report, True


def _cmd_pd_tail(cfg: RunConfig) -> tuple[dict, bool]:
    params = cfg.param_map()
    L, trials = params["L"], params["trials"]
    if trials < 1:
        raise ValueError("--trials must be positive")
    ent = pd_entropy_samples(trials, cfg.seed)
    est = pd_tail_mc(L, trials, cfg.seed, samples=ent)
    top = max(4.0, float(math.ceil(float(ent.max()))))
    counts, edges = np.histogram(ent, bins=64, range=(0.0, top))
    report = {
        "schema": SCHEMA,
        "command": "pd-tail",
        "seed": cfg.seed,
        **est.to_dict(),
        "histogram": {
            "bin_edges": [float(e) for e in edges],
            "counts": [int(c) for c in counts],
        },
        "status": "pass" if est.consistent_with_bound else "fail",
    }
    return report, est.consistent_with_bound


_HANDLERS = {
    "factor": _cmd_factor,
    "constants": _cmd_constants,
    "verify-bound": _cmd_verify_bound,
    "lfunc": _cmd_lfunc,
    "density": _cmd_density,
    "moments": _cmd_moments,
    "eft-tv": _cmd_eft_tv,
    "pd-tail": _cmd_pd_tail,
}


def run(cfg: RunConfig) -> tuple[dict, bool]:
    """Execute a parsed configuration; returns (report, all checks passed)."""
    return _HANDLERS[cfg.subcommand](cfg)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _flatten(value, prefix: str, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(value[key], f"{prefix}.{key}" if prefix else str(key), rows)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _flatten(item, f"{prefix}.{i}", rows)
    else:
        rows.append((prefix, "" if value is None else str(value)))


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    hist = report.get("histogram")
    if report.get("command") == "pd-tail" and hist:
        writer.writerow(["bin_low", "bin_high", "count"])
        edges, counts = hist["bin_edges"], hist["counts"]
        for i, c in enumerate(counts):
            writer.writerow([edges[i], edges[i + 1], c])
    else:
        writer.writerow(["key", "value"])
        rows: list[tuple[str, str]] = []
        _flatten(report, "", rows)
        for key, val in rows:
            writer.writerow([key, val])
    return buf.getvalue()


def _emit(report: dict, cfg: RunConfig) -> None:
    text = render_csv(report) if cfg.fmt == "csv" else render_json(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return code
    try:
        report, ok = run(cfg)
    except ParseFailure as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        _emit(
            {
                "schema": SCHEMA,
                "command": cfg.subcommand,
                "error": {"type": "precondition", "message": str(exc)},
            },
            cfg,
        )
        return 3
    _emit(report, cfg)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
