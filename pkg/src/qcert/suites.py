"""Verification suites: parameter sweeps over every check, run serially or on a
process pool, with deterministic, sorted reports."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import congruences as cg
from . import wz
from .congruences import CongruenceReport, render
from .polyring import ONE, LaurentPoly, eval_one
from .qcore import (
    cyclotomic,
    divisors,
    gauss_poly,
    is_prime,
    prime_power,
    q_binomial,
    q_binomial_pascal_rows,
    quotient_of_pochhammers,
    reduce_mod_cyclotomic,
)
from .qobjects import (
    NonIntegralExponent,
    g_sum,
    h_closed,
    q_fibonacci_explicit,
    q_fibonacci_rec,
    rr_lhs,
    rr_rhs,
    s_sum,
    t_sum,
)

SUITES = (
    "bi-relations", "cyclotomic", "bc-lemmas", "qid1", "qid2", "qid3", "qc1", "gk", "dual",
    "c3", "c5", "catalan-roots", "p-congruences", "wz-recurrence", "shift-lemma",
    "telescoping", "final-identity",
)

DEFAULT_N_MAX = {s: 60 for s in SUITES}
DEFAULT_N_MAX.update({"wz-recurrence": 25, "telescoping": 25, "final-identity": 25, "shift-lemma": 40})

BC1_A_MAX = 4
PRODUCT_N_MAX = 60  # product-formula cross-check range in bi-relations
PA_MAX = 343


class ConfigError(ValueError):
    """Invalid suite configuration."""


@dataclass
class SuiteConfig:
    suite: str
    n_max: Optional[int] = None
    d_max: int = 10
    p_max: int = 13
    a_max: Optional[int] = None
    numeric_n_max: int = 30
    tolerance: float = 1e-6
    output_path: Optional[str] = None
    jobs: int = 1

    def validate(self) -> None:
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        if self.n_max is not None and self.n_max < 1:
            raise ConfigError("n-max must be at least 1")
        if self.d_max < 0:
            raise ConfigError("d-max must be nonnegative")
        if self.p_max < 2:
            raise ConfigError("p-max must be at least 2")
        if self.a_max is not None and self.a_max < 1:
            raise ConfigError("a-max must be at least 1")
        if self.numeric_n_max < 0:
            raise ConfigError("numeric-n-max must be nonnegative")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")

    def suites(self) -> list[str]:
        return list(SUITES) if self.suite == "all" else [self.suite]

    def n_for(self, suite: str) -> int:
        return self.n_max if self.n_max is not None else DEFAULT_N_MAX[suite]


# --------------------------------------------------------------------------
# helpers


def _poly_report(claim, n, params, lhs, rhs, t0, note="") -> CongruenceReport:
    holds = lhs == rhs
    return CongruenceReport(claim, n, params, holds, render(lhs), render(rhs),
                            time.perf_counter() - t0, note)


def _primes(p_max: int) -> list[int]:
    return [p for p in range(2, p_max + 1) if is_prime(p)]


def _prime_powers(cfg: SuiteConfig) -> list[tuple[int, int]]:
    out = []
    for p in _primes(cfg.p_max):
        a = 1
        while p ** a <= PA_MAX and (cfg.a_max is None or a <= cfg.a_max):
            out.append((p, a))
            a += 1
    return out


# --------------------------------------------------------------------------
# work units: each returns the reports for one n (or one prime power)


def unit_bi(n: int) -> list[CongruenceReport]:
    out = []
    row = _pascal_row(n) if n <= PRODUCT_N_MAX else None
    for k in range(n + 1):
        qb = q_binomial(n, k)
        if n >= 1:
            t0 = time.perf_counter()
            rhs = q_binomial(n - 1, k - 1).shift(n - k) + q_binomial(n - 1, k)
            out.append(_poly_report("bi1", n, {"k": k}, qb, rhs, t0))
            t0 = time.perf_counter()
            rhs = q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)
            out.append(_poly_report("bi2", n, {"k": k}, qb, rhs, t0))
        t0 = time.perf_counter()
        out.append(_poly_report("bi3", n, {"k": k}, qb, qb.substitute_inverse().shift(k * (n - k)), t0))
        if n > PRODUCT_N_MAX:
            continue
        t0 = time.perf_counter()
        prod = quotient_of_pochhammers(n, k)
        ok = qb == prod == row[k]
        out.append(CongruenceReport("bi-product", n, {"k": k}, ok, render(prod), render(row[k]),
                                    time.perf_counter() - t0, "" if ok else f"memo value {render(qb)}"))
    return out


_PASCAL: dict[int, list] = {}


def _pascal_row(n: int) -> list:
    """Row n of the additive Pascal recurrence, extended incrementally per process."""
    if not _PASCAL:
        _PASCAL[0] = next(iter(q_binomial_pascal_rows(0)))
    top = max(_PASCAL)
    while top < n:
        prev = _PASCAL[top]
        top += 1
        _PASCAL[top] = [ONE] + [prev[k - 1] + prev[k].shift(k) for k in range(1, top)] + [ONE]
    return _PASCAL[n]


def unit_cyclotomic(n: int) -> list[CongruenceReport]:
    out = []
    t0 = time.perf_counter()
    prod = ONE
    for d in divisors(n):
        prod = prod * cyclotomic(d)
    out.append(_poly_report("cyclo-product", n, {}, prod, LaurentPoly.monomial(n) - ONE, t0))
    if n >= 2:
        t0 = time.perf_counter()
        pp = prime_power(n)
        expected = pp[0] if pp else 1
        out.append(CongruenceReport("cpi", n, {}, eval_one(cyclotomic(n)) == expected,
                                    str(eval_one(cyclotomic(n))), str(expected), time.perf_counter() - t0))
    for p in (3, 5):
        if n % p == 0:
            t0 = time.perf_counter()
            g = gauss_poly(n, p)
            lhs = reduce_mod_cyclotomic(g * g, n)
            rhs = reduce_mod_cyclotomic(-3 if p == 3 else 5, n)
            out.append(CongruenceReport("gauss-square", n, {"p": p}, lhs == rhs, str(lhs), str(rhs),
                                        time.perf_counter() - t0))
    return out


def unit_bc(n: int, a_max: int) -> list[CongruenceReport]:
    out = cg.bc1_reports(n, a_max)
    out += [cg.check_bc2(n, k) for k in range(n + 2)]
    out += [cg.check_bc3(n, k) for k in range(1, n)]
    out += [cg.check_bc4(n, k) for k in range(n)]
    out += [cg.check_bc5(n, k) for k in range(n)]
    if n <= 30:
        for m in range(61):
            t0 = time.perf_counter()
            zero = [k for k in range(m + 1) if not reduce_mod_cyclotomic(q_binomial(m, k), n).rep]
            pred = [k for k in range(m + 1) if cg.fractional_part_divides(n, m, k)]
            out.append(CongruenceReport("bc-criterion", n, {"m": m}, zero == pred, str(zero), str(pred),
                                        time.perf_counter() - t0))
    return out


def unit_qid1(n: int) -> list[CongruenceReport]:
    out = []
    for a in (0, 1):
        t0 = time.perf_counter()
        out.append(_poly_report("qid1", n, {"a": a}, rr_rhs(n, a), rr_lhs(n, a), t0))
        if n + 1 - a >= 0:
            t0 = time.perf_counter()
            out.append(_poly_report("qid1-fib", n, {"a": a}, rr_lhs(n, a), q_fibonacci_rec(n + 1 - a, a), t0))
    for a in (0, 1, 2):
        t0 = time.perf_counter()
        out.append(_poly_report("qfib", n, {"a": a}, q_fibonacci_rec(n, a), q_fibonacci_explicit(n, a), t0))
    return out


def unit_qid2(n: int) -> list[CongruenceReport]:
    t0 = time.perf_counter()
    try:
        h = h_closed(n)
    except NonIntegralExponent as exc:
        return [CongruenceReport("qid2", n, {}, False, render(g_sum(n)), "error", time.perf_counter() - t0, str(exc))]
    out = [_poly_report("qid2", n, {}, g_sum(n), h, t0)]
    if n <= 100:
        t0 = time.perf_counter()
        out.append(_poly_report("qid2-shift3", n, {}, g_sum(n + 3), -g_sum(n).shift(n + 1), t0))
        if n >= 1:
            t0 = time.perf_counter()
            out.append(_poly_report("qid2-shift2", n, {}, g_sum(n + 2), -g_sum(n - 1).shift(n), t0))
    return out


QID3_READINGS = (
    ("printed", {}),
    ("abs-lead", {"lead_symbol_abs": True}),
)


def check_qid3(n: int, d: int) -> CongruenceReport:
    """``S(n, d)`` against the closed form, trying the printed reading first.

    The ``reading`` parameter of the row is the index into ``QID3_READINGS``
    of the first reading that matches; the note records why earlier ones
    were rejected.
    """
    t0 = time.perf_counter()
    lhs = s_sum(n, d)
    rejected = []
    for idx, (name, flags) in enumerate(QID3_READINGS):
        try:
            rhs = t_sum(n, d, **flags)
        except NonIntegralExponent as exc:
            rejected.append(f"{name}: {exc}")
            continue
        if rhs == lhs:
            return CongruenceReport("qid3", n, {"d": d, "reading": idx}, True, render(lhs), render(rhs),
                                    time.perf_counter() - t0,
                                    "; ".join(f"rejected {r}" for r in rejected) + (f"; accepted {name}" if rejected else ""))
        rejected.append(f"{name}: closed form differs")
    return CongruenceReport("qid3", n, {"d": d, "reading": -1}, False, render(lhs), "no reading matches",
                            time.perf_counter() - t0, "; ".join(rejected))


def unit_qid3(n: int, d_max: int) -> list[CongruenceReport]:
    m = min(n, d_max)
    return [check_qid3(n, d) for d in range(-m, m + 1)]


def unit_qc1(n: int, d_max: int) -> list[CongruenceReport]:
    m = min(n, d_max)
    return [cg.check_qc1(n, d) for d in range(-m, m + 1)]


def unit_gk(n: int, numeric_n_max: int, tol: float) -> list[CongruenceReport]:
    out = [cg.check_gk(n)]
    if n <= numeric_n_max:
        out += cg.numeric_checks(n, tol, claims={"gk-numeric"})
    return out


def unit_dual(n: int, numeric_n_max: int, tol: float) -> list[CongruenceReport]:
    out = [cg.check_dual(n)]
    if n <= numeric_n_max:
        out += cg.numeric_checks(n, tol, claims={"dual-numeric"})
    return out


def unit_c3(n: int) -> list[CongruenceReport]:
    return [cg.check_c3(n)]


def unit_c5(n: int) -> list[CongruenceReport]:
    return [cg.check_c5(n), cg.check_c5_table(n)]


def unit_catalan_roots(n: int, numeric_n_max: int, tol: float) -> list[CongruenceReport]:
    out = cg.check_catalan_roots(n)
    if n <= numeric_n_max:
        out += cg.numeric_checks(n, tol, claims={"catalan-roots-3-numeric", "catalan-roots-5-numeric"})
    return out


def unit_p(p: int, a: int, d_max: int) -> list[CongruenceReport]:
    m = min(d_max, p ** a)
    out = [cg.check_p_binomial(p, a, d) for d in range(-m, m + 1)]
    return out + cg.check_p_catalan(p, a)


def unit_wz(n: int) -> list[CongruenceReport]:
    out = []
    for spec in (wz.SPEC_PLUS, wz.SPEC_MINUS):
        out += [wz.check_wz_recurrence(n, k, spec) for k in wz.k_window(n)]
        out.append(wz.check_kernel_sum(n, spec))
        out += [wz.check_wz_tail(n, k0, spec) for k0 in (0, 1)]
    return out


def unit_shift(n: int, d_max: int) -> list[CongruenceReport]:
    m = min(n, d_max)
    return [wz.check_shift_lemma(n, d) for d in range(-m, m + 1)]


def unit_telescoping(n: int) -> list[CongruenceReport]:
    out = []
    if n <= 4:
        out.append(wz.check_initial_cases(n))
    if n >= 2:
        out += [wz.check_telescoped(n), wz.check_telescoped_derived(n)]
    return out


def unit_final(n: int) -> list[CongruenceReport]:
    out = [wz.check_c0_zero(n), wz.check_coeff_invariance(n)]
    if n >= 2:
        out += [wz.check_final_identity(n), wz.check_final_identity_derived(n)]
    return out


UNITS: dict[str, Callable[..., list[CongruenceReport]]] = {
    "bi": unit_bi, "cyclotomic": unit_cyclotomic, "bc": unit_bc, "qid1": unit_qid1,
    "qid2": unit_qid2, "qid3": unit_qid3, "qc1": unit_qc1, "gk": unit_gk, "dual": unit_dual,
    "c3": unit_c3, "c5": unit_c5, "catalan-roots": unit_catalan_roots, "p": unit_p,
    "wz": unit_wz, "shift": unit_shift, "telescoping": unit_telescoping, "final": unit_final,
}


def plan(cfg: SuiteConfig) -> list[tuple[str, tuple]]:
    """The work units of a configuration, as ``(unit name, args)`` pairs."""
    units: list[tuple[str, tuple]] = []
    num = (cfg.numeric_n_max, cfg.tolerance)
    for suite in cfg.suites():
        N = cfg.n_for(suite)
        if suite == "bi-relations":
            units += [("bi", (n,)) for n in range(N + 1)]
        elif suite == "cyclotomic":
            units += [("cyclotomic", (n,)) for n in range(1, N + 1)]
        elif suite == "bc-lemmas":
            a_max = BC1_A_MAX if cfg.a_max is None else cfg.a_max
            units += [("bc", (n, a_max)) for n in range(2, N + 1)]
        elif suite == "qid1":
            units += [("qid1", (n,)) for n in range(N + 1)]
        elif suite == "qid2":
            units += [("qid2", (n,)) for n in range(N + 1)]
        elif suite == "qid3":
            units += [("qid3", (n, cfg.d_max)) for n in range(1, N + 1)]
        elif suite == "qc1":
            units += [("qc1", (n, cfg.d_max)) for n in range(1, N + 1)]
        elif suite == "gk":
            units += [("gk", (n,) + num) for n in range(2, N + 1)]
        elif suite == "dual":
            units += [("dual", (n,) + num) for n in range(2, N + 1)]
        elif suite == "c3":
            units += [("c3", (n,)) for n in range(1, N + 1)]
        elif suite == "c5":
            units += [("c5", (n,)) for n in range(1, N + 1)]
        elif suite == "catalan-roots":
            units += [("catalan-roots", (n,) + num) for n in range(2, N + 1) if n % 3 == 0 or n % 5 == 0]
        elif suite == "p-congruences":
            units += [("p", (p, a, cfg.d_max)) for p, a in _prime_powers(cfg)]
        elif suite == "wz-recurrence":
            units += [("wz", (n,)) for n in range(1, N + 1)]
        elif suite == "shift-lemma":
            units += [("shift", (n, cfg.d_max)) for n in range(1, N + 1)]
        elif suite == "telescoping":
            units += [("telescoping", (n,)) for n in range(1, N + 1)]
        elif suite == "final-identity":
            units += [("final", (n,)) for n in range(1, N + 1)]
    return units


def _run_unit(unit: tuple[str, tuple]) -> list[CongruenceReport]:
    name, args = unit
    return UNITS[name](*args)


@dataclass
class SuiteResult:
    reports: list[CongruenceReport]
    wall: float
    notes: list[str] = field(default_factory=list)

    @property
    def failures(self) -> list[CongruenceReport]:
        return [r for r in self.reports if not r.holds]

    def summary_rows(self) -> list[tuple[str, int, int, float]]:
        """``(claim, instances, failures, seconds)`` per claim, sorted by claim."""
        agg: dict[str, list] = {}
        for r in self.reports:
            row = agg.setdefault(r.claim_id, [0, 0, 0.0])
            row[0] += 1
            row[1] += 0 if r.holds else 1
            row[2] += r.elapsed
        return [(c, v[0], v[1], v[2]) for c, v in sorted(agg.items())]


def run(cfg: SuiteConfig, progress: Optional[Callable[[int, int], None]] = None) -> SuiteResult:
    """Run every unit of ``cfg`` and return the sorted reports."""
    cfg.validate()
    units = plan(cfg)
    t0 = time.perf_counter()
    reports: list[CongruenceReport] = []
    if cfg.jobs == 1 or len(units) <= 1:
        for i, u in enumerate(units):
            reports += _run_unit(u)
            if progress:
                progress(i + 1, len(units))
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for i, chunk in enumerate(pool.map(_run_unit, units)):
                reports += chunk
                if progress:
                    progress(i + 1, len(units))
    reports.sort(key=CongruenceReport.sort_key)
    result = SuiteResult(reports, time.perf_counter() - t0)
    result.notes = _notes(result)
    return result


def _notes(result: SuiteResult) -> list[str]:
    notes = []
    qid3 = [r for r in result.reports if r.claim_id == "qid3"]
    if qid3:
        by_reading: dict[int, list] = {}
        for r in qid3:
            by_reading.setdefault(r.params["reading"], []).append(r)
        printed = by_reading.get(0, [])
        alt = by_reading.get(1, [])
        neg_alt = sorted({r.params["d"] for r in alt})
        notes.append(
            f"qid3 reading: printed form matched {len(printed)} of {len(qid3)} instances; "
            f"|d| in the leading symbol was needed for {len(alt)} instances"
            + (f" (d in {neg_alt[0]}..{neg_alt[-1]})" if neg_alt else "")
            + (f"; {len(by_reading.get(-1, []))} instances match no reading" if -1 in by_reading else "")
        )
    if any(r.claim_id.startswith("p-catalan") and r.params.get("p") == 2 for r in result.reports):
        notes.append("p-catalan: halved congruences are compared doubled; for p = 2 the doubled form is checked mod 4")
    if any(r.claim_id.endswith("-numeric") for r in result.reports):
        notes.append("numeric rows: holds means |value - expected| < tolerance at exp(2 pi i m / n)")
    return notes


def write_jsonl(reports: Iterable[CongruenceReport], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in reports:
            fh.write(r.to_jsonl())
            fh.write("\n")


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("QCERT_JOBS", "1")))
    except ValueError:
        return 1
