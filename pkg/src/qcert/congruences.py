"""Congruences modulo cyclotomic polynomials, their root-of-unity corollaries,
and the prime-power congruences obtained at q = 1.

Every polynomial check compares two :class:`CyclotomicResidue` values.  The
left-hand sides are sums of q-binomials; instead of expanding those
polynomials (degrees grow like n^2 and coefficients like 4^n) the sums are
assembled in ``Z[q]/(q^n - 1)`` from :class:`CyclicPascal` and then reduced
by ``Phi_n``.  Reduction mod ``q^n - 1`` is a ring homomorphism, so the
residues are the same; ``tests/test_congruences.py`` confirms this against
the fully expanded polynomials for small n.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .polyring import ONE, IntPoly, LaurentPoly, RationalFn, eval_root_of_unity
from .qcore import (
    CyclicPascal,
    CyclotomicResidue,
    gauss_poly,
    legendre,
    reduce_mod_cyclotomic,
)
from .qobjects import binom2, dual_lhs, gk_lhs, q_catalan, q_fibonacci_rec

__all__ = [
    "CongruenceReport",
    "render",
    "check_bc1",
    "check_bc2",
    "check_bc3",
    "check_bc4",
    "check_bc5",
    "check_qc1",
    "check_p_binomial",
    "check_gk",
    "check_dual",
    "check_c3",
    "check_c5",
    "check_c5_table",
    "check_catalan_roots",
    "check_p_catalan",
    "numeric_checks",
    "fractional_part_divides",
    "c5_table",
    "round_fifth",
]


@dataclass
class CongruenceReport:
    """Outcome of one claim at one parameter point."""

    claim_id: str
    n: int
    params: dict
    holds: bool
    lhs_residue: str
    rhs_residue: str
    elapsed: float = 0.0
    note: str = ""

    def to_json(self) -> dict:
        row = {
            "claim": self.claim_id,
            "n": self.n,
            "params": dict(sorted(self.params.items())),
            "holds": self.holds,
            "lhs": self.lhs_residue,
            "rhs": self.rhs_residue,
            "ms": round(self.elapsed * 1000.0, 3),
        }
        if self.note:
            row["note"] = self.note
        return row

    def to_jsonl(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    def sort_key(self):
        return (self.claim_id, self.n, tuple(sorted(self.params.items())))


def render(value, limit: int = 2000) -> str:
    """Text form of a value for a report row.

    Long values are replaced by a digest so that reports over large
    polynomials stay small yet remain byte-deterministic: equal values give
    equal digests.  Polynomials with many terms are digested from their
    coefficient list without building the text.
    """
    if isinstance(value, LaurentPoly) and len(value.coeffs) > 256:
        return _digest_poly(value)
    if isinstance(value, RationalFn) and len(value.num.coeffs) + len(value.den.coeffs) > 256:
        return f"({_digest_poly(value.num)}) / ({_digest_poly(value.den)})"
    text = str(value)
    if len(text) <= limit:
        return text
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    return f"sha256:{digest} len={len(text)}"


def _digest_poly(p: LaurentPoly) -> str:
    blob = f"{p.min_exp}:" + ",".join(map(str, p.coeffs))
    digest = hashlib.sha256(blob.encode()).hexdigest()[:16]
    return f"poly sha256:{digest} exps={p.min_exp}..{p.max_exp}"


def _report(claim, n, params, lhs, rhs, t0, note="") -> CongruenceReport:
    return CongruenceReport(claim, n, params, lhs == rhs, str(lhs), str(rhs),
                            time.perf_counter() - t0, note)


# --------------------------------------------------------------------------
# residue engine: sums of q-binomials in Z[q]/(q^n - 1)


@lru_cache(maxsize=2)
def _pascal(n: int, m_max: int) -> CyclicPascal:
    return CyclicPascal(n, m_max)


class _Folded:
    """Vectors of length n standing for classes in ``Z[q]/(q^n - 1)``."""

    def __init__(self, n: int, m_max: int | None = None):
        self.n = n
        self.pascal = _pascal(n, 2 * n + 1 if m_max is None else m_max)

    def zero(self) -> list[int]:
        return [0] * self.n

    def qbin(self, m: int, k: int) -> tuple[int, ...]:
        if m < 0:
            return (0,) * self.n
        return self.pascal.folded(m, k)

    def add_term(self, acc: list[int], vec, shift: int, coeff: int = 1) -> None:
        """``acc += coeff * q^shift * vec``."""
        n = self.n
        s = shift % n
        if coeff == 1:
            for i, c in enumerate(vec):
                if c:
                    acc[(i + s) % n] += c
        else:
            for i, c in enumerate(vec):
                if c:
                    acc[(i + s) % n] += coeff * c

    def residue(self, vec) -> CyclotomicResidue:
        return reduce_mod_cyclotomic(IntPoly(list(vec)), self.n)

    def monomial(self, e: int, c: int = 1) -> CyclotomicResidue:
        return reduce_mod_cyclotomic(LaurentPoly.monomial(e, c), self.n)


def _res(p, n) -> CyclotomicResidue:
    return reduce_mod_cyclotomic(p, n)


# --------------------------------------------------------------------------
# q-binomial lemmas


def check_bc1(n: int, a: int, k: int, table: CyclicPascal | None = None) -> CongruenceReport:
    """``[an choose k] = binom(a, k/n)`` if n | k, else 0, modulo Phi_n."""
    t0 = time.perf_counter()
    if n < 2 or a < 1 or not 0 <= k <= a * n:
        raise ValueError("need n >= 2, a >= 1, 0 <= k <= a n")
    if table is None or a * n not in table.rows:
        table = _bc1_table(n, a)
    lhs = reduce_mod_cyclotomic(IntPoly(list(table.folded(a * n, k))), n)
    expected = comb(a, k // n) if k % n == 0 else 0
    return _report("bc1", n, {"a": a, "k": k}, lhs, _res(expected, n), t0)


@lru_cache(maxsize=1)
def _bc1_table(n: int, a_max: int) -> CyclicPascal:
    return CyclicPascal(n, a_max * n, keep=[a * n for a in range(1, a_max + 1)])


def bc1_reports(n: int, a_max: int) -> list[CongruenceReport]:
    """All ``(a, k)`` for one n, sharing one Pascal table."""
    table = _bc1_table(n, a_max)
    return [check_bc1(n, a, k, table) for a in range(1, a_max + 1) for k in range(a * n + 1)]


def check_bc2(n: int, k: int) -> CongruenceReport:
    """``[n+1 choose k] = 1`` for k in {0, 1, n, n+1}, else 0, modulo Phi_n."""
    t0 = time.perf_counter()
    f = _Folded(n)
    lhs = f.residue(f.qbin(n + 1, k))
    expected = 1 if k in (0, 1, n, n + 1) else 0
    return _report("bc2", n, {"k": k}, lhs, _res(expected, n), t0)


def check_bc3(n: int, k: int) -> CongruenceReport:
    """``[2k-1 choose k] = (-1)^k q^{(3k^2-k)/2} [n-k choose k]`` modulo Phi_n."""
    t0 = time.perf_counter()
    f = _Folded(n)
    lhs = f.residue(f.qbin(2 * k - 1, k))
    e = _half(3 * k * k - k)
    acc = f.zero()
    f.add_term(acc, f.qbin(n - k, k), e, -1 if k % 2 else 1)
    return _report("bc3", n, {"k": k}, lhs, f.residue(acc), t0)


def check_bc4(n: int, k: int) -> CongruenceReport:
    """``[2k choose k] = (-1)^k q^{(3k^2+k)/2} [n-1-k choose k]`` modulo Phi_n."""
    t0 = time.perf_counter()
    f = _Folded(n)
    lhs = f.residue(f.qbin(2 * k, k))
    e = _half(3 * k * k + k)
    acc = f.zero()
    f.add_term(acc, f.qbin(n - 1 - k, k), e, -1 if k % 2 else 1)
    return _report("bc4", n, {"k": k}, lhs, f.residue(acc), t0)


def check_bc5(n: int, k: int) -> CongruenceReport:
    """``[2k choose k+1] = (-1)^{k+1} q^{(3k^2+3k)/2} [n-k choose k+1]`` for
    k <= n-2 and ``= 1`` at k = n-1, modulo Phi_n."""
    t0 = time.perf_counter()
    f = _Folded(n)
    lhs = f.residue(f.qbin(2 * k, k + 1))
    if k == n - 1:
        rhs = _res(1, n)
    else:
        e = _half(3 * k * k + 3 * k)
        acc = f.zero()
        f.add_term(acc, f.qbin(n - k, k + 1), e, 1 if k % 2 else -1)
        rhs = f.residue(acc)
    return _report("bc5", n, {"k": k}, lhs, rhs, t0)


def _half(x: int) -> int:
    if x % 2:
        raise ArithmeticError(f"exponent {x}/2 is not an integer")
    return x // 2


def fractional_part_divides(n: int, m: int, k: int) -> bool:
    """``{k/n} > {m/n}``: the criterion for Phi_n to divide ``[m choose k]``."""
    return k % n > m % n


# --------------------------------------------------------------------------
# S(n, d) and the prime-power binomial congruence


def _s_sum_folded(f: _Folded, n: int, d: int) -> list[int]:
    acc = f.zero()
    for k in range(n):
        f.add_term(acc, f.qbin(2 * k, k + d), k)
    return acc


def qc1_rhs(n: int, d: int) -> LaurentPoly:
    """``((n-|d|)/3) q^{(3/2) r(r+1) + |d|(2r+1)}`` with ``r = floor(2(n-|d|)/3)``."""
    ad = abs(d)
    r = 2 * (n - ad) // 3
    return LaurentPoly.monomial(_half(3 * r * (r + 1)) + ad * (2 * r + 1), legendre(n - ad, 3))


def check_qc1(n: int, d: int) -> CongruenceReport:
    """``S(n, d)`` modulo Phi_n against its one-monomial closed form."""
    t0 = time.perf_counter()
    if n < abs(d):
        raise ValueError("need n >= |d|")
    f = _Folded(n)
    lhs = f.residue(_s_sum_folded(f, n, d))
    return _report("qc1", n, {"d": d}, lhs, _res(qc1_rhs(n, d), n), t0)


def check_p_binomial(p: int, a: int, d: int) -> CongruenceReport:
    """``sum_{k<p^a} binom(2k, k+d) = ((p^a-|d|)/3)  (mod p)``, in integers."""
    t0 = time.perf_counter()
    pa = p ** a
    if abs(d) > pa:
        raise ValueError("need |d| <= p^a")
    total = sum(comb(2 * k, k + d) for k in range(pa) if 0 <= k + d <= 2 * k)
    sym = legendre(pa - abs(d), 3)
    return CongruenceReport("p-binomial", pa, {"p": p, "a": a, "d": d},
                            total % p == sym % p, str(total % p), str(sym % p),
                            time.perf_counter() - t0, f"sum={total}")


# --------------------------------------------------------------------------
# Greene-Krammer and its dual


def _gk_folded(f: _Folded, n: int) -> list[int]:
    acc = f.zero()
    acc[0] += 1
    for k in range(1, n):
        f.add_term(acc, f.qbin(2 * k - 1, k), -binom2(k), -2 if k % 2 else 2)
    return acc


def _dual_folded(f: _Folded, n: int) -> list[int]:
    acc = f.zero()
    acc[0] += 1
    for k in range(1, n):
        f.add_term(acc, f.qbin(2 * k - 1, k), k, 2)
    return acc


def check_gk(n: int) -> CongruenceReport:
    """``1 + 2 sum (-1)^k q^{-binom(k,2)} [2k-1 choose k]`` is the quadratic
    Gauss sum for 5 when 5 | n and the constant ``(n/5)`` otherwise, mod Phi_n."""
    t0 = time.perf_counter()
    f = _Folded(n)
    lhs = f.residue(_gk_folded(f, n))
    rhs = gauss_poly(n, 5) if n % 5 == 0 else LaurentPoly.const(legendre(n, 5))
    return _report("gk", n, {}, lhs, _res(rhs, n), t0)


def check_dual(n: int) -> CongruenceReport:
    """``1 + 2 sum q^k [2k-1 choose k]`` is the Gauss sum for 3 when 3 | n and
    ``(n/3)`` otherwise, mod Phi_n."""
    t0 = time.perf_counter()
    f = _Folded(n)
    lhs = f.residue(_dual_folded(f, n))
    rhs = gauss_poly(n, 3) if n % 3 == 0 else LaurentPoly.const(legendre(n, 3))
    return _report("dual", n, {}, lhs, _res(rhs, n), t0)


# --------------------------------------------------------------------------
# q-Catalan sums


def _catalan_folded(f: _Folded, k: int) -> list[int]:
    acc = f.zero()
    f.add_term(acc, f.qbin(2 * k, k), 0)
    f.add_term(acc, f.qbin(2 * k, k + 1), 1, -1)
    return acc


def _c3_folded(f: _Folded, n: int) -> list[int]:
    acc = f.zero()
    for k in range(n):
        f.add_term(acc, _catalan_folded(f, k), k)
    return acc


def _c5_folded(f: _Folded, n: int) -> list[int]:
    acc = f.zero()
    for k in range(n):
        f.add_term(acc, _catalan_folded(f, k), -binom2(k), -1 if k % 2 else 1)
    return acc


def c3_rhs(n: int) -> LaurentPoly:
    if n % 3 in (0, 1):
        return LaurentPoly.monomial(n // 3)
    return -ONE - LaurentPoly.monomial((2 * n - 1) // 3)


def check_c3(n: int) -> CongruenceReport:
    """``sum_{k<n} q^k C_k^q`` modulo Phi_n, by the residue of n mod 3."""
    t0 = time.perf_counter()
    f = _Folded(n)
    lhs = f.residue(_c3_folded(f, n))
    return _report("c3", n, {}, lhs, _res(c3_rhs(n), n), t0)


def fib_pair(n: int) -> IntPoly:
    """``F_n^q(q) + F_{n+2}^q(1)``."""
    return q_fibonacci_rec(n, 1) + q_fibonacci_rec(n + 2, 0)


def check_c5(n: int) -> CongruenceReport:
    """``sum_{k<n} (-1)^k q^{-binom(k,2)} C_k^q = F_n^q(q) + F_{n+2}^q(1) - 2`` mod Phi_n."""
    t0 = time.perf_counter()
    f = _Folded(n)
    lhs = f.residue(_c5_folded(f, n))
    return _report("c5", n, {}, lhs, _res(fib_pair(n) - 2, n), t0)


def round_fifth(n: int) -> int:
    """``round(n/5) = floor(n/5 + 1/2)``."""
    return (2 * n + 5) // 10


def c5_table(n: int) -> LaurentPoly:
    """Five-case closed form of ``F_n^q(q) + F_{n+2}^q(1)`` modulo Phi_n."""
    r = round_fifth(n)
    sign = -1 if r % 2 else 1
    if n % 5 in (0, 2, 3):
        exps = [r * (n - 1), r * (n + 1)]
    else:
        exps = [r * (n - 2), r * n, r * (n + 2)]
    return LaurentPoly.from_terms([(_half(e), sign) for e in exps])


def check_c5_table(n: int) -> CongruenceReport:
    t0 = time.perf_counter()
    return _report("c5-table", n, {}, _res(fib_pair(n), n), _res(c5_table(n), n), t0)


def check_catalan_roots(n: int) -> list[CongruenceReport]:
    """Doubled forms of the q-Catalan corollaries:
    ``2 sum q^k C_k^q + 1`` is the Gauss sum for 3 when 3 | n, and
    ``2 sum (-1)^k q^{-binom(k,2)} C_k^q + 3`` the Gauss sum for 5 when 5 | n."""
    out = []
    if n % 3 == 0:
        t0 = time.perf_counter()
        f = _Folded(n)
        acc = _c3_folded(f, n)
        acc = [2 * c for c in acc]
        acc[0] += 1
        out.append(_report("catalan-roots-3", n, {}, f.residue(acc), _res(gauss_poly(n, 3), n), t0))
    if n % 5 == 0:
        t0 = time.perf_counter()
        f = _Folded(n)
        acc = _c5_folded(f, n)
        acc = [2 * c for c in acc]
        acc[0] += 3
        out.append(_report("catalan-roots-5", n, {}, f.residue(acc), _res(gauss_poly(n, 5), n), t0))
    return out


def check_p_catalan(p: int, a: int) -> list[CongruenceReport]:
    """The four prime-power congruences at q = 1 for ``n = p^a``.

    The halved right-hand sides are compared after doubling both sides; for
    p = 2 the doubled congruence is taken mod 4, which is equivalent to the
    halved one mod 2.
    """
    pa = p ** a
    mod = 2 * p if p == 2 else p
    params = {"p": p, "a": a}
    out = []
    caveat = "doubled, checked mod 2p" if p == 2 else "doubled"

    t0 = time.perf_counter()
    cat = [comb(2 * k, k) // (k + 1) for k in range(pa)]
    total = sum(cat)
    lhs, rhs = (2 * total) % mod, (3 * legendre(pa, 3) - 1) % mod
    out.append(CongruenceReport("p-catalan-sum", pa, params, lhs == rhs, str(lhs), str(rhs),
                                time.perf_counter() - t0, caveat))

    t0 = time.perf_counter()
    alt = sum(c if k % 2 == 0 else -c for k, c in enumerate(cat))
    lhs, rhs = (2 * alt) % mod, (5 * legendre(pa, 5) - 3) % mod
    out.append(CongruenceReport("p-catalan-alt", pa, params, lhs == rhs, str(lhs), str(rhs),
                                time.perf_counter() - t0, caveat))

    t0 = time.perf_counter()
    left = 1 + 2 * sum((-1) ** k * comb(2 * k - 1, k) for k in range(1, pa))
    right = sum((-1) ** k * comb(2 * k, k) for k in range(pa))
    sym = legendre(pa, 5)
    ok = left == right and right % p == sym % p
    out.append(CongruenceReport("p-gk", pa, params, ok, str(left % p), str(sym % p),
                                time.perf_counter() - t0,
                                "" if left == right else f"sum forms differ: {left} != {right}"))

    t0 = time.perf_counter()
    left = 1 + 2 * sum(comb(2 * k - 1, k) for k in range(1, pa))
    right = sum(comb(2 * k, k) for k in range(pa))
    sym = legendre(pa, 3)
    ok = left == right and right % p == sym % p
    out.append(CongruenceReport("p-dual", pa, params, ok, str(left % p), str(sym % p),
                                time.perf_counter() - t0,
                                "" if left == right else f"sum forms differ: {left} != {right}"))
    return out


# --------------------------------------------------------------------------
# numeric evaluation at primitive roots of unity


def _fmt_complex(z: complex) -> str:
    re_ = 0.0 if abs(z.real) < 5e-13 else z.real
    im_ = 0.0 if abs(z.imag) < 5e-13 else z.imag
    return f"{re_:.12f}{im_:+.12f}j"


_SQRT3 = math.sqrt(3.0)
_SQRT5 = math.sqrt(5.0)


def _numeric_targets(n: int):
    """Exact polynomial and expected root-of-unity value for each numeric claim."""
    yield ("gk-numeric", lambda: gk_lhs(n),
           lambda m: legendre(m, 5) * _SQRT5 if n % 5 == 0 else float(legendre(n, 5)))
    yield ("dual-numeric", lambda: dual_lhs(n),
           lambda m: 1j * legendre(m, 3) * _SQRT3 if n % 3 == 0 else float(legendre(n, 3)))
    if n % 3 == 0:
        yield ("catalan-roots-3-numeric",
               lambda: sum((q_catalan(k).shift(k) for k in range(n)), LaurentPoly()),
               lambda m: (1j * _SQRT3 * legendre(m, 3) - 1) / 2)
    if n % 5 == 0:
        yield ("catalan-roots-5-numeric",
               lambda: sum((q_catalan(k).shift(-binom2(k)).scalar_mul(-1 if k % 2 else 1)
                            for k in range(n)), LaurentPoly()),
               lambda m: (_SQRT5 * legendre(m, 5) - 3) / 2)


def numeric_checks(n: int, tolerance: float = 1e-6, claims=None) -> list[CongruenceReport]:
    """Evaluate the expanded left-hand sides at every ``exp(2 pi i m / n)``
    with gcd(m, n) = 1 and compare with the closed-form values."""
    out = []
    for claim, poly, expected in _numeric_targets(n):
        if claims is not None and claim not in claims:
            continue
        t0 = time.perf_counter()
        p = poly()
        for m in range(1, n):
            if math.gcd(m, n) != 1:
                continue
            t1 = time.perf_counter()
            val = eval_root_of_unity(p, m, n)
            want = complex(expected(m))
            err = abs(val - want)
            out.append(CongruenceReport(claim, n, {"m": m}, err < tolerance, _fmt_complex(val),
                                        _fmt_complex(want), time.perf_counter() - t1 + (t1 - t0),
                                        f"tolerance={tolerance:g}"))
            t0 = time.perf_counter()
    return out
