"""The named q-objects: q-Fibonacci polynomials, finite Rogers-Ramanujan
sums, q-Catalan numbers, Greene-Krammer type sums and the sums S(n, d),
T(n, d), G(n), H(n)."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .polyring import ONE, ZERO, IntPoly, LaurentPoly, exact_div, linear_combination
from .qcore import legendre, q_binomial, q_int_poly

__all__ = [
    "QFibSpec",
    "NonIntegralExponent",
    "q_fibonacci_rec",
    "q_fibonacci_explicit",
    "rr_lhs",
    "rr_rhs",
    "q_catalan",
    "q_catalan_by_division",
    "gk_lhs",
    "dual_lhs",
    "g_sum",
    "h_closed",
    "s_sum",
    "t_sum",
    "t_sum_terms",
    "exact_third",
    "binom2",
]


class NonIntegralExponent(ArithmeticError):
    """A surviving term would need a fractional power of q."""


def binom2(k: int) -> int:
    return k * (k - 1) // 2


def exact_third(num: int, what: str = "exponent") -> int:
    q, r = divmod(num, 3)
    if r:
        raise NonIntegralExponent(f"{what} {num}/3 is not an integer")
    return q


def _mono(e: int, c: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(e, c)


@dataclass(frozen=True)
class QFibSpec:
    """``F_n^q(t)`` with ``t`` specialised to ``q**a``."""

    n: int
    a: int = 0

    def __post_init__(self):
        if self.n < 0 or self.a < 0:
            raise ValueError("n and a must be nonnegative")


def _spec(spec, a):
    if isinstance(spec, QFibSpec):
        return spec.n, spec.a
    return spec, a


def q_fibonacci_rec(spec: QFibSpec | int, a: int = 0) -> IntPoly:
    """``F_n = F_{n-1} + q^{n-2} t F_{n-2}`` with ``F_0 = 0``, ``F_1 = 1``, ``t = q^a``."""
    n, a = _spec(spec, a)
    return _fib_table(a, n)[n]


_FIB_LOCK = threading.Lock()
_FIB_ROWS: dict[int, list[IntPoly]] = {}


def _fib_table(a: int, n: int) -> list[IntPoly]:
    with _FIB_LOCK:
        row = _FIB_ROWS.setdefault(a, [ZERO, ONE])
        while len(row) <= n:
            m = len(row)
            row.append(row[m - 1] + row[m - 2].shift(m - 2 + a))
        return row


def q_fibonacci_explicit(spec: QFibSpec | int, a: int = 0) -> IntPoly:
    """``sum_k q^{k^2} [n-1-k choose k]_q t^k`` with ``t = q^a``."""
    n, a = _spec(spec, a)
    return linear_combination((1, q_binomial(n - 1 - k, k), k * k + a * k)
                              for k in range(0, max(n + 1, 0) // 2)).to_intpoly()


def rr_lhs(n: int, a: int) -> IntPoly:
    """``sum_k q^{k^2 + a k} [n-a-k choose k]_q``."""
    return linear_combination((1, q_binomial(n - a - k, k), k * k + a * k)
                              for k in range(0, max(n - a + 2, 0) // 2)).to_intpoly()


def rr_rhs(n: int, a: int) -> IntPoly:
    """Alternating side of the finite Rogers-Ramanujan identity:
    ``sum_j (-1)^j q^{j(5j+1-4a)/2} [n choose floor((n+2a-5j)/2)]_q``.

    Only ``|j| <= n`` can contribute (the lower index leaves ``[0, n]``
    otherwise).
    """
    if a not in (0, 1):
        raise ValueError("a must be 0 or 1")
    terms = []
    for j in range(-n - 1, n + 2):
        k = (n + 2 * a - 5 * j) // 2
        if 0 <= k <= n:
            terms.append((-1 if j % 2 else 1, q_binomial(n, k), j * (5 * j + 1 - 4 * a) // 2))
    return linear_combination(terms).to_intpoly()


def q_catalan(n: int) -> IntPoly:
    """``C_n^q = [2n choose n]_q - q [2n choose n+1]_q``."""
    return (q_binomial(2 * n, n) - q_binomial(2 * n, n + 1).shift(1)).to_intpoly()


def q_catalan_by_division(n: int) -> IntPoly:
    """``[2n choose n]_q / [n+1]_q`` by exact division."""
    return exact_div(q_binomial(2 * n, n), q_int_poly(n + 1)).to_intpoly()


def gk_lhs(n: int) -> LaurentPoly:
    """``1 + 2 sum_{k=1}^{n-1} (-1)^k q^{-binom(k,2)} [2k-1 choose k]_q``."""
    if n < 1:
        raise ValueError("n must be positive")
    terms = [(1, ONE, 0)]
    terms += [(2 if k % 2 == 0 else -2, q_binomial(2 * k - 1, k), -binom2(k)) for k in range(1, n)]
    return linear_combination(terms)


def dual_lhs(n: int) -> IntPoly:
    """``1 + 2 sum_{k=1}^{n-1} q^k [2k-1 choose k]_q``."""
    if n < 1:
        raise ValueError("n must be positive")
    terms = [(1, ONE, 0)] + [(2, q_binomial(2 * k - 1, k), k) for k in range(1, n)]
    return linear_combination(terms).to_intpoly()


def g_sum(n: int) -> IntPoly:
    """``G(n) = sum_k (-1)^k q^{binom(k,2)} [n-k choose k]_q``."""
    return linear_combination((-1 if k % 2 else 1, q_binomial(n - k, k), binom2(k))
                              for k in range(0, n // 2 + 1)).to_intpoly()


def h_closed(n: int) -> IntPoly:
    """``H(n) = (-1)^n ((n+1)/3) q^{binom(n,2)/3}``; raises if the exponent is fractional."""
    sym = legendre(n + 1, 3)
    if sym == 0:
        return ZERO
    e = exact_third(binom2(n), "H exponent")
    return _mono(e, sym if n % 2 == 0 else -sym)


@lru_cache(maxsize=4096)
def s_sum(n: int, d: int) -> IntPoly:
    """``S(n, d) = sum_{k=0}^{n-1} q^k [2k choose k+d]_q``."""
    if n < 1:
        raise ValueError("n must be positive")
    prev = s_sum(n - 1, d) if n > 1 else ZERO
    return prev + q_binomial(2 * (n - 1), n - 1 + d).shift(n - 1)


def t_sum_terms(n: int, d: int, *, exponent_symbol_abs: bool = True, lead_symbol_abs: bool = False):
    """Surviving terms ``(k, sign, exponent)`` of the closed form for S(n, d).

    As printed, the symbol inside the exponent uses ``n - |d| - k`` and the
    leading symbol uses ``n - d - k``; the flags allow the other readings for
    auditing.  Terms whose leading symbol vanishes are skipped.
    """
    if n < abs(d):
        raise ValueError("need n >= |d|")
    ad = abs(d)
    out = []
    for k in range(0, n - ad + 1):
        lead = legendre(n - (ad if lead_symbol_abs else d) - k, 3)
        if lead == 0:
            continue
        inner = legendre(n - (ad if exponent_symbol_abs else d) - k, 3)
        m = n - k
        e = exact_third(2 * m * m - m * inner - 2 * d * d - 1, f"T({n},{d}) term k={k} exponent")
        out.append((k, lead, e))
    return out


def t_sum(n: int, d: int, **reading) -> LaurentPoly:
    """Closed form ``sum_{k=0}^{n-|d|} q^{E(k)} ((n-d-k)/3) [2n choose k]_q``
    with ``E(k) = (2(n-k)^2 - (n-k)((n-|d|-k)/3) - 2d^2 - 1)/3``."""
    return linear_combination((sign, q_binomial(2 * n, k), e) for k, sign, e in t_sum_terms(n, d, **reading))
