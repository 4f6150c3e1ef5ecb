"""Exact per-instance checks of the recurrence machinery behind the closed form
for ``S(n, d)``: the three-step shift relation, the q-Zeilberger recurrence for
``s(n, k, a, b) = q^{6k^2 + ak} [2n choose n+3k+b]`` with its printed
certificate, the telescoped identity and the final induction identity.

The certificate is transcribed as printed and never adjusted.  When an
instance fails, the report carries both sides and their difference.  For
auditing, :func:`telescoping_certificate` recovers the ``g`` that the
recurrence forces by summing its left side over ``k``; this uses only the
printed coefficients ``a_j`` and the term ``s``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .congruences import CongruenceReport, render
from .polyring import ONE, ZERO, IntPoly, LaurentPoly, RationalFn
from .qcore import q_binomial, q_int_poly
from .qobjects import s_sum, t_sum

__all__ = [
    "CertificateSpec",
    "WZInstance",
    "DegenerateDenominator",
    "SPEC_PLUS",
    "SPEC_MINUS",
    "s_term",
    "recurrence_coeffs",
    "partial_sums",
    "cert_h",
    "cert_r",
    "g_fn",
    "k_window",
    "recurrence_lhs",
    "telescoping_certificate",
    "check_wz_recurrence",
    "check_wz_tail",
    "check_kernel_sum",
    "check_telescoped",
    "check_telescoped_derived",
    "check_shift_lemma",
    "check_final_identity",
    "check_final_identity_derived",
    "check_c0_zero",
    "check_coeff_invariance",
    "check_initial_cases",
]


class DegenerateDenominator(ZeroDivisionError):
    """A denominator factor ``1 - q^0`` of the certificate vanishes."""


@dataclass(frozen=True)
class CertificateSpec:
    """Exponent parameters ``(a, b)`` of the summand; only ``(3, 1)`` and ``(-3, -1)`` occur."""

    a_param: int
    b_param: int

    def __post_init__(self):
        if (self.a_param, self.b_param) not in ((3, 1), (-3, -1)):
            raise ValueError("certificate is only given for (a, b) = (3, 1) or (-3, -1)")

    @property
    def label(self) -> str:
        return f"{self.a_param:+d},{self.b_param:+d}"


SPEC_PLUS = CertificateSpec(3, 1)
SPEC_MINUS = CertificateSpec(-3, -1)


@dataclass(frozen=True)
class WZInstance:
    n: int
    k: int
    spec: CertificateSpec = SPEC_PLUS

    def in_support(self) -> bool:
        return abs(3 * self.k + self.spec.b_param) <= self.n


def _mono(e: int, c: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(e, c)


def _one_minus(e: int) -> LaurentPoly:
    return ONE - _mono(e)


def s_term(inst: WZInstance) -> IntPoly:
    """``q^{6k^2 + ak} [2n choose n+3k+b]``; zero unless ``|3k+b| <= n``."""
    n, k, a, b = inst.n, inst.k, inst.spec.a_param, inst.spec.b_param
    if n < 0:
        return ZERO
    return q_binomial(2 * n, n + 3 * k + b).shift(6 * k * k + a * k)


def recurrence_coeffs(n: int, spec: CertificateSpec = SPEC_PLUS) -> list[LaurentPoly]:
    """The five coefficients ``a_0 .. a_4`` at ``(n, a, b)``."""
    a, b = spec.a_param, spec.b_param
    m = _mono
    a0 = _one_minus(2 * n + 1) * _one_minus(2 * n + 2) * m(6)
    a1 = -(m(4 * n + 7 + a - 4 * b) + m(4 * n + 7 - a + 4 * b) - m(2 * n + 4) - m(2 * n + 3)
           + m(3) + m(2) + m(1) + ONE) * m(3)
    a2 = (m(4 * n + 10) + m(2 * n + 7) + m(2 * n + 6) + m(4) + m(3) + m(2, 2) + m(1) + ONE) * m(1)
    a3 = -(m(2 * n + 6) + m(2) + ONE) * (m(1) + ONE)
    return [a0, a1, a2, a3, ONE]


def partial_sums(n: int, spec: CertificateSpec = SPEC_PLUS) -> list[LaurentPoly]:
    """``c_i = sum_{j=i}^{4} a_j`` for ``i = 0 .. 4``."""
    a = recurrence_coeffs(n, spec)
    out = [ZERO] * 5
    acc = ZERO
    for i in range(4, -1, -1):
        acc = acc + a[i]
        out[i] = acc
    return out


# (sign, coefficients of n, k, b, a and the constant) for each printed monomial
_H_MONOMIALS = (
    (+1, (3, 9, 3, 1, 6)), (-1, (3, 3, 5, 0, 9)), (-1, (2, 6, 2, 1, 7)), (+1, (2, 6, 6, 0, 7)),
    (-1, (2, 6, 2, 1, 6)), (+1, (2, 6, 6, 0, 6)), (+1, (1, 3, 1, 1, 7)), (+1, (1, 3, 1, 1, 6)),
    (-1, (2, 6, 2, 1, 5)), (+1, (2, 6, 6, 0, 5)), (-1, (1, 9, 7, 0, 4)), (+1, (1, 3, 1, 1, 5)),
    (-1, (1, 9, 7, 0, 3)), (-1, (1, 9, 7, 0, 2)), (+1, (0, 12, 8, 0, 0)), (-1, (0, 0, 0, 1, 6)),
)


def cert_h_exponents(inst: WZInstance) -> list[tuple[int, int]]:
    """The sixteen ``(sign, exponent)`` pairs of ``h`` before collecting terms."""
    n, k, a, b = inst.n, inst.k, inst.spec.a_param, inst.spec.b_param
    return [(sg, cn * n + ck * k + cb * b + ca * a + c0) for sg, (cn, ck, cb, ca, c0) in _H_MONOMIALS]


def cert_h(inst: WZInstance) -> LaurentPoly:
    """Numerator polynomial ``h(n, k, a, b)`` of the certificate."""
    return LaurentPoly.from_terms([(e, sg) for sg, e in cert_h_exponents(inst)])


def cert_denominator_exponents(inst: WZInstance) -> list[int]:
    n, k, b = inst.n, inst.k, inst.spec.b_param
    return [n - 3 * k - b + 3, n - 3 * k - b + 4, n - 3 * k - b + 1, n + 3 * k + b + 1]


def cert_r(inst: WZInstance) -> RationalFn:
    """``h (1-q^{2n+1})(1-q^{2n+2}) q^{4n-12k+10-a-4b}`` over
    ``(1-q^{n-3k-b+3})(1-q^{n-3k-b+4})(1-q^{n-3k-b+1})(1-q^{n+3k+b+1})``."""
    n, k, a, b = inst.n, inst.k, inst.spec.a_param, inst.spec.b_param
    exps = cert_denominator_exponents(inst)
    if 0 in exps:
        raise DegenerateDenominator(f"certificate denominator vanishes at n={n}, k={k}, (a,b)=({a},{b})")
    num = cert_h(inst) * _one_minus(2 * n + 1) * _one_minus(2 * n + 2)
    num = num.shift(4 * n - 12 * k + 10 - a - 4 * b)
    den = ONE
    for e in exps:
        den = den * _one_minus(e)
    return RationalFn(num, den)


def g_fn(inst: WZInstance) -> RationalFn:
    """``g = r s``, structurally zero outside the support window of ``s``."""
    s = s_term(inst)
    if not s:
        return RationalFn(ZERO)
    return cert_r(inst) * s


def k_window(n: int) -> range:
    """``-ceil((n+4)/3) <= k <= ceil((n+4)/3)``: every k where some ``s(n+j, k)`` lives."""
    c = -(-(n + 4) // 3)
    return range(-c, c + 1)


def recurrence_lhs(n: int, k: int, spec: CertificateSpec = SPEC_PLUS) -> LaurentPoly:
    """``sum_j a_j(n) s(n+j, k)``."""
    acc = ZERO
    for j, aj in enumerate(recurrence_coeffs(n, spec)):
        s = s_term(WZInstance(n + j, k, spec))
        if s:
            acc = acc + aj * s
    return acc


def telescoping_certificate(n: int, k0: int, spec: CertificateSpec = SPEC_PLUS) -> LaurentPoly:
    """``-sum_{k >= k0} sum_j a_j s(n+j, k)``: the unique ``g`` vanishing for large k
    that makes the recurrence telescope.  Used to audit the printed ``r``."""
    acc = ZERO
    for k in range(k0, max(k_window(n)) + 1):
        acc = acc - recurrence_lhs(n, k, spec)
    return acc


def _rf_report(claim, n, params, lhs, rhs, t0, extra="") -> CongruenceReport:
    lhs, rhs = RationalFn(lhs), RationalFn(rhs)
    holds = lhs == rhs
    note = extra
    if not holds:
        note = (note + "; " if note else "") + f"residual: {lhs - rhs}"
    return CongruenceReport(claim, n, params, holds, render(lhs), render(rhs), time.perf_counter() - t0, note)


def _fail(claim, n, params, t0, why) -> CongruenceReport:
    return CongruenceReport(claim, n, params, False, "error", "error", time.perf_counter() - t0, why)


def _spec_params(spec: CertificateSpec, **more) -> dict:
    return {"a": spec.a_param, "b": spec.b_param, **more}


def check_wz_recurrence(n: int, k: int, spec: CertificateSpec = SPEC_PLUS) -> CongruenceReport:
    """``sum_j a_j s(n+j, k) = g(n, k+1) - g(n, k)`` with the printed certificate."""
    t0 = time.perf_counter()
    params = _spec_params(spec, k=k)
    lhs = recurrence_lhs(n, k, spec)
    try:
        rhs = g_fn(WZInstance(n, k + 1, spec)) - g_fn(WZInstance(n, k, spec))
    except DegenerateDenominator as exc:
        return _fail("wz-recurrence", n, params, t0, str(exc))
    return _rf_report("wz-recurrence", n, params, lhs, rhs, t0)


def check_wz_tail(n: int, k0: int, spec: CertificateSpec = SPEC_PLUS) -> CongruenceReport:
    """``sum_{k >= k0}`` of the recurrence left sides equals ``-g(n, k0)``."""
    t0 = time.perf_counter()
    params = _spec_params(spec, k0=k0)
    lhs = -telescoping_certificate(n, k0, spec)
    try:
        rhs = -g_fn(WZInstance(n, k0, spec))
    except DegenerateDenominator as exc:
        return _fail("wz-tail", n, params, t0, str(exc))
    return _rf_report("wz-tail", n, params, lhs, rhs, t0)


def check_kernel_sum(n: int, spec: CertificateSpec = SPEC_PLUS) -> CongruenceReport:
    """``sum_j a_j sum_k s(n+j, k) = 0``: the recurrence annihilates the full sum,
    which holds whatever certificate is used."""
    t0 = time.perf_counter()
    lhs = ZERO
    for k in k_window(n):
        lhs = lhs + recurrence_lhs(n, k, spec)
    return _rf_report("wz-kernel-sum", n, _spec_params(spec), lhs, ZERO, t0)


def _telescoped_rhs(n: int) -> RationalFn:
    """``-r(n,0,3,1) [2n choose n+1] + r(n,1,-3,-1) q^3 [2n choose n+2]``."""
    first = cert_r(WZInstance(n, 0, SPEC_PLUS)) * q_binomial(2 * n, n + 1)
    second = cert_r(WZInstance(n, 1, SPEC_MINUS)) * q_binomial(2 * n, n + 2).shift(3)
    return second - first


def _derived_rhs(n: int) -> LaurentPoly:
    """``-g(n,0,3,1) + g(n,1,-3,-1)`` with ``g`` from :func:`telescoping_certificate`."""
    return telescoping_certificate(n, 1, SPEC_MINUS) - telescoping_certificate(n, 0, SPEC_PLUS)


def _telescoped_lhs(n: int) -> LaurentPoly:
    acc = ZERO
    for j, aj in enumerate(recurrence_coeffs(n, SPEC_PLUS)):
        acc = acc + aj * t_sum(n + j, 0)
    return acc


def check_telescoped(n: int) -> CongruenceReport:
    """``sum_j a_j(n,3,1) T(n+j, 0)`` against the printed certificate side."""
    t0 = time.perf_counter()
    try:
        rhs = _telescoped_rhs(n)
    except DegenerateDenominator as exc:
        return _fail("telescoped", n, {}, t0, str(exc))
    return _rf_report("telescoped", n, {}, _telescoped_lhs(n), rhs, t0)


def check_telescoped_derived(n: int) -> CongruenceReport:
    """The telescoped identity with ``g`` recovered by summation instead of the printed ``r``."""
    t0 = time.perf_counter()
    return _rf_report("telescoped-derived", n, {}, _telescoped_lhs(n), _derived_rhs(n), t0)


def _final_lhs(n: int) -> LaurentPoly:
    c = partial_sums(n, SPEC_PLUS)
    acc = ZERO
    for i in range(4):
        m = n + i
        acc = acc + c[i + 1] * q_binomial(2 * m, m).shift(m)
    return acc


def check_final_identity(n: int) -> CongruenceReport:
    """``sum_{i<4} c_{i+1} q^{n+i} [2(n+i) choose n+i]`` against the certificate side,
    together with ``c_0(n,3,1) = 0``."""
    t0 = time.perf_counter()
    c0 = partial_sums(n, SPEC_PLUS)[0]
    extra = "c0=0" if not c0 else f"c0={c0}"
    try:
        rhs = _telescoped_rhs(n)
    except DegenerateDenominator as exc:
        return _fail("final-identity", n, {}, t0, str(exc))
    rep = _rf_report("final-identity", n, {}, _final_lhs(n), rhs, t0, extra)
    rep.holds = rep.holds and not c0
    return rep


def check_final_identity_derived(n: int) -> CongruenceReport:
    """The final identity with the summation-derived ``g``."""
    t0 = time.perf_counter()
    return _rf_report("final-identity-derived", n, {}, _final_lhs(n), _derived_rhs(n), t0)


def check_c0_zero(n: int) -> CongruenceReport:
    t0 = time.perf_counter()
    return _rf_report("c0-zero", n, {}, partial_sums(n, SPEC_PLUS)[0], ZERO, t0)


def check_coeff_invariance(n: int) -> CongruenceReport:
    """``a_j(n,3,1) = a_j(n,-3,-1)`` for every j."""
    t0 = time.perf_counter()
    left = recurrence_coeffs(n, SPEC_PLUS)
    right = recurrence_coeffs(n, SPEC_MINUS)
    bad = [j for j in range(5) if left[j] != right[j]]
    return CongruenceReport("aj-invariance", n, {}, not bad,
                            render("; ".join(str(p) for p in left)), render("; ".join(str(p) for p in right)),
                            time.perf_counter() - t0, f"differs at j={bad}" if bad else "")


def check_initial_cases(n: int) -> CongruenceReport:
    """``S(n, 0) = T(n, 0)`` by direct expansion."""
    t0 = time.perf_counter()
    return _rf_report("s-t-initial", n, {}, s_sum(n, 0), t_sum(n, 0), t0)


@lru_cache(maxsize=512)
def _s_any(n: int, d: int) -> LaurentPoly:
    return s_sum(n, d) if n >= 1 else ZERO


def check_shift_lemma(n: int, d: int) -> CongruenceReport:
    """``S(n,d) - q^{4d+6} S(n,d+3) = q^d [2d+3]/[2n+1] [2n+1 choose n+d+2]
    - [d=-1] q^{-1} + [d=-2] q^{-3}``, compared in the rational-function field."""
    t0 = time.perf_counter()
    if n < abs(d):
        raise ValueError("need n >= |d|")
    lhs = _s_any(n, d) - _s_any(n, d + 3).shift(4 * d + 6)
    rhs = RationalFn(q_int_poly(2 * d + 3) * q_binomial(2 * n + 1, n + d + 2).shift(d),
                     q_int_poly(2 * n + 1))
    if d == -1:
        rhs = rhs - _mono(-1)
    elif d == -2:
        rhs = rhs + _mono(-3)
    return _rf_report("shift-lemma", n, {"d": d}, lhs, rhs, t0)
