"""Acceptance sweeps, one test per criterion.

Each test records a PASS/FAIL line that the terminal summary prints at the
end of the run (see conftest.py).  Runtime budgets are checked on the
serial driver.
"""

import math
import re
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_LINES
from qcert import wz
from qcert.cli import main
from qcert.polyring import eval_one
from qcert.qcore import cyclotomic
from qcert.suites import SuiteConfig, run

pytestmark = pytest.mark.slow


@contextmanager
def criterion(number, title):
    t0 = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        ACCEPTANCE_LINES.append(f"FAIL  {number:>2}. {title} ({time.perf_counter() - t0:.1f} s): {reason}")
        raise
    extra = f"; {detail['info']}" if detail.get("info") else ""
    ACCEPTANCE_LINES.append(f"PASS  {number:>2}. {title} ({time.perf_counter() - t0:.1f} s{extra})")


def sweep(suite, **kw):
    t0 = time.perf_counter()
    result = run(SuiteConfig(suite=suite, **kw))
    return result, time.perf_counter() - t0


def by_claim(reports):
    out = {}
    for r in reports:
        out.setdefault(r.claim_id, []).append(r)
    return out


def no_failures(rows):
    bad = [r for r in rows if not r.holds]
    assert not bad, f"{len(bad)} failing rows, first: {bad[0].claim_id} n={bad[0].n} {bad[0].params}"


_P_CACHE = {}


def p_congruences():
    if "rows" not in _P_CACHE:
        _P_CACHE["rows"] = sweep("p-congruences", p_max=13, d_max=5)
    return _P_CACHE["rows"]


def test_criterion_01_q_binomial_relations():
    with criterion(1, "q-binomial relations (bi1)(bi2)(bi3) n <= 80, product form n <= 60, < 30 s") as info:
        result, secs = sweep("bi-relations", n_max=80)
        rows = by_claim(result.reports)
        no_failures(result.reports)
        pairs = {(n, k) for n in range(81) for k in range(n + 1)}
        assert {(r.n, r.params["k"]) for r in rows["bi3"]} == pairs
        assert {(r.n, r.params["k"]) for r in rows["bi1"]} == {p for p in pairs if p[0] >= 1}
        assert {(r.n, r.params["k"]) for r in rows["bi2"]} == {p for p in pairs if p[0] >= 1}
        assert {(r.n, r.params["k"]) for r in rows["bi-product"]} == {p for p in pairs if p[0] <= 60}
        assert secs < 30, f"took {secs:.1f} s"
        info["info"] = f"{len(result.reports)} rows"


def independent_prime_power(n):
    """Trial division written out here, not shared with the library."""
    factors = {}
    m, d = n, 2
    while d * d <= m:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return next(iter(factors)) if len(factors) == 1 else None


def test_criterion_02_cyclotomic_at_one():
    with criterion(2, "Phi_n(1) for 2 <= n <= 500 against independent factorization, < 10 s") as info:
        t0 = time.perf_counter()
        bad = []
        for n in range(2, 501):
            p = independent_prime_power(n)
            if eval_one(cyclotomic(n)) != (p if p else 1):
                bad.append(n)
        secs = time.perf_counter() - t0
        assert not bad, f"wrong at n = {bad[:10]}"
        result, _ = sweep("cyclotomic", n_max=500)
        no_failures(result.reports)
        assert secs < 10, f"took {secs:.1f} s"
        info["info"] = f"{secs:.2f} s for the factorization check"


def test_criterion_03_bc_lemmas():
    with criterion(3, "lemmas (bc1)-(bc5) for 2 <= n <= 100, a <= 4, < 3 min") as info:
        result, secs = sweep("bc-lemmas", n_max=100)
        rows = by_claim(result.reports)
        no_failures(result.reports)
        expected = {
            "bc1": sum((a * n + 1) for n in range(2, 101) for a in range(1, 5)),
            "bc2": sum(n + 2 for n in range(2, 101)),
            "bc3": sum(n - 1 for n in range(2, 101)),
            "bc4": sum(n for n in range(2, 101)),
            "bc5": sum(n for n in range(2, 101)),
        }
        assert {c: len(rows[c]) for c in expected} == expected
        assert secs < 180, f"took {secs:.1f} s"
        info["info"] = f"{len(result.reports)} rows"


def test_criterion_04_rogers_ramanujan_and_fibonacci():
    with criterion(4, "(qid1) and q-Fibonacci forms for n <= 200, < 1 min") as info:
        result, secs = sweep("qid1", n_max=200)
        rows = by_claim(result.reports)
        no_failures(result.reports)
        assert {(r.n, r.params["a"]) for r in rows["qid1"]} == {(n, a) for n in range(201) for a in (0, 1)}
        assert {(r.n, r.params["a"]) for r in rows["qfib"]} >= {(n, a) for n in range(201) for a in (0, 1)}
        assert secs < 60, f"took {secs:.1f} s"
        info["info"] = f"{len(result.reports)} rows"


def test_criterion_05_g_equals_h():
    with criterion(5, "(qid2) G(n) = H(n) for n <= 300 and G(n+3) = -q^{n+1} G(n) for n <= 100, < 1 min") as info:
        result, secs = sweep("qid2", n_max=300)
        rows = by_claim(result.reports)
        no_failures(result.reports)
        assert sorted(r.n for r in rows["qid2"]) == list(range(301))
        assert sorted(r.n for r in rows["qid2-shift3"]) == list(range(101))
        assert secs < 60, f"took {secs:.1f} s"
        info["info"] = f"{len(result.reports)} rows"


def test_criterion_06_main_theorem():
    with criterion(6, "S(n,d) = T(n,d) for 1 <= n <= 60, |d| <= min(n,10), resolution recorded") as info:
        result, _ = sweep("qid3", n_max=60, d_max=10)
        no_failures(result.reports)
        pairs = {(n, d) for n in range(1, 61) for d in range(-min(n, 10), min(n, 10) + 1)}
        assert {(r.n, r.params["d"]) for r in result.reports} == pairs
        readings = {r.params["reading"] for r in result.reports}
        assert readings <= {0, 1}
        assert any(note.startswith("qid3 reading") for note in result.notes)
        alt = [r for r in result.reports if r.params["reading"] == 1]
        assert all(r.params["d"] < 0 and "rejected printed" in r.note for r in alt)
        info["info"] = f"{len(alt)} rows use |d| in the leading symbol"


def test_criterion_07_qc1_and_p_binomial():
    with criterion(7, "(qc1) for 2 <= n <= 100, |d| <= 10; p-binomial for p <= 13, p^a <= 343, |d| <= 5") as info:
        result, _ = sweep("qc1", n_max=100, d_max=10)
        no_failures(result.reports)
        pairs = {(n, d) for n in range(2, 101) for d in range(-min(n, 10), min(n, 10) + 1)}
        assert {(r.n, r.params["d"]) for r in result.reports if r.n >= 2} == pairs
        presult, _ = p_congruences()
        prow = [r for r in presult.reports if r.claim_id == "p-binomial"]
        no_failures(prow)
        expected = {(p, a, d) for p in (2, 3, 5, 7, 11, 13) for a in range(1, 10) if p ** a <= 343
                    for d in range(-min(5, p ** a), min(5, p ** a) + 1)}
        assert {(r.params["p"], r.params["a"], r.params["d"]) for r in prow} == expected
        info["info"] = f"{len(result.reports)} + {len(prow)} rows"


def test_criterion_08_greene_krammer_and_dual():
    with criterion(8, "Greene-Krammer and dual: exact n <= 60, numeric n <= 30 within 1e-6") as info:
        rows = []
        for suite in ("gk", "dual"):
            result, _ = sweep(suite, n_max=60, numeric_n_max=30, tolerance=1e-6)
            rows += result.reports
        no_failures(rows)
        claims = by_claim(rows)
        assert sorted(r.n for r in claims["gk"]) == list(range(2, 61))
        assert sorted(r.n for r in claims["dual"]) == list(range(2, 61))
        for claim in ("gk-numeric", "dual-numeric"):
            got = {(r.n, r.params["m"]) for r in claims[claim]}
            want = {(n, m) for n in range(2, 31) for m in range(1, n) if math.gcd(m, n) == 1}
            assert got == want
        info["info"] = f"{len(rows)} rows"


def test_criterion_09_catalan_theorems():
    with criterion(9, "(C3), (C5) with the F-table, q-Catalan corollaries, p-Catalan congruences") as info:
        rows = []
        for suite in ("c3", "c5", "catalan-roots"):
            result, _ = sweep(suite, n_max=60, numeric_n_max=30, tolerance=1e-6)
            rows += result.reports
        presult, _ = p_congruences()
        prow = [r for r in presult.reports if r.claim_id in ("p-catalan-sum", "p-catalan-alt", "p-gk", "p-dual")]
        no_failures(rows + prow)
        claims = by_claim(rows)
        assert sorted(r.n for r in claims["c3"]) == list(range(1, 61))
        assert sorted(r.n for r in claims["c5-table"]) == list(range(1, 61))
        assert sorted(r.n for r in claims["catalan-roots-3"]) == list(range(3, 61, 3))
        assert sorted(r.n for r in claims["catalan-roots-5"]) == list(range(5, 61, 5))
        assert {r.n for r in claims["catalan-roots-3-numeric"]} == set(range(3, 31, 3))
        assert all("mod 2p" in r.note for r in prow if r.params["p"] == 2 and "catalan" in r.claim_id)
        info["info"] = f"{len(rows) + len(prow)} rows"


def test_criterion_10_recurrence_machinery():
    with criterion(10, "WZ recurrence, telescoped and final identities, (3shift), c_0, a_j invariance, < 5 min") as info:
        t0 = time.perf_counter()
        parts = {}
        result, _ = sweep("wz-recurrence", n_max=25)
        parts["wz recurrence n <= 25"] = [r for r in result.reports if r.claim_id == "wz-recurrence"]
        result, _ = sweep("telescoping", n_max=25)
        parts["telescoped 2 <= n <= 25"] = [r for r in result.reports if r.claim_id == "telescoped"]
        result, _ = sweep("final-identity", n_max=25)
        parts["final identity 2 <= n <= 25"] = [r for r in result.reports if r.claim_id == "final-identity"]
        result, _ = sweep("shift-lemma", n_max=40, d_max=10)
        parts["(3shift) n <= 40"] = result.reports
        parts["c_0 = 0 n <= 50"] = [wz.check_c0_zero(n) for n in range(1, 51)]
        parts["a_j invariance n <= 50"] = [wz.check_coeff_invariance(n) for n in range(1, 51)]
        secs = time.perf_counter() - t0
        window = sum(len(wz.k_window(n)) for n in range(1, 26))
        assert len(parts["wz recurrence n <= 25"]) == 2 * window
        assert sorted(r.n for r in parts["telescoped 2 <= n <= 25"]) == list(range(2, 26))
        assert sorted(r.n for r in parts["final identity 2 <= n <= 25"]) == list(range(2, 26))
        summary = []
        for name, rows in parts.items():
            bad = sum(not r.holds for r in rows)
            summary.append(f"{name}: {len(rows) - bad}/{len(rows)}")
            print(f"  criterion 10 part {'PASS' if not bad else 'FAIL'}  {name}: {bad} of {len(rows)} fail")
        info["info"] = "; ".join(summary)
        failing = [s for s, rows in parts.items() if any(not r.holds for r in rows)]
        assert not failing, "failing parts: " + "; ".join(s for s in summary if s.split(":")[0] in failing)
        assert secs < 300, f"took {secs:.1f} s"


def _strip_ms(text):
    return re.sub(r'"ms": [0-9.e+-]+', '"ms": 0', text)


def test_criterion_11_full_default_run(tmp_path, capsys):
    with criterion(11, "verify --suite all with defaults: < 5 min, zero failures, deterministic bytes") as info:
        texts, codes, times = [], [], []
        for i in range(2):
            path = tmp_path / f"all{i}.jsonl"
            t0 = time.perf_counter()
            codes.append(main(["verify", "--suite", "all", "--output", str(path)]))
            times.append(time.perf_counter() - t0)
            texts.append(_strip_ms(path.read_text()))
        out = capsys.readouterr().out
        total = re.search(r"^total\s+(\d+)\s+(\d+)", out, re.M)
        info["info"] = f"{total.group(1)} rows, {times[0]:.0f} s"
        assert texts[0] == texts[1], "report bytes differ between runs"
        assert max(times) < 300, f"took {max(times):.1f} s"
        assert codes == [0, 0], (f"exit codes {codes}; {total.group(2)} of {total.group(1)} rows fail "
                                 f"(bytes identical across runs, {max(times):.0f} s per run)")
