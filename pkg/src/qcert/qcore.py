"""q-arithmetic primitives.

q-integers, q-Pochhammer symbols, Gaussian binomials, cyclotomic
polynomials and reduction modulo them, plus the small number theory
(Legendre symbols, prime powers, quadratic Gauss sums) the congruences need.
"""

from __future__ import annotations

import math
import threading
from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Optional

from .polyring import ONE, ZERO, IntPoly, LaurentPoly, RationalFn, exact_div, poly_rem

__all__ = [
    "q_int",
    "q_int_poly",
    "q_pochhammer",
    "q_binomial",
    "q_binomial_product",
    "q_binomial_pascal_rows",
    "cyclotomic",
    "CyclotomicResidue",
    "reduce_mod_cyclotomic",
    "CyclicPascal",
    "legendre",
    "NotOddPrime",
    "PNotDividingN",
    "is_prime",
    "prime_power",
    "divisors",
    "gauss_poly",
    "mul_one_minus",
    "div_one_minus",
]


class NotOddPrime(ValueError):
    pass


class PNotDividingN(ValueError):
    pass


# --------------------------------------------------------------------------
# sparse helpers: multiply / divide a coefficient list by (1 - q^e)


def mul_one_minus(coeffs: list[int], e: int) -> list[int]:
    """Dense coefficients of ``p * (1 - q**e)`` for ``e >= 1``."""
    m = len(coeffs)
    if e >= m:
        return list(coeffs) + [0] * (e - m) + [-c for c in coeffs]
    return (list(coeffs[:e]) + [c - d for c, d in zip(coeffs[e:], coeffs)]
            + [-c for c in coeffs[m - e:]])


def div_one_minus(coeffs: list[int], e: int) -> list[int]:
    """Dense coefficients of ``p / (1 - q**e)``; the division must be exact."""
    n = len(coeffs) - e
    if n <= 0:
        raise ArithmeticError("(1 - q^e) does not divide")
    out = list(coeffs[:n])
    # out[i] = coeffs[i] + out[i - e]: running sums along each residue class
    for r in range(min(e, n)):
        out[r::e] = accumulate(out[r::e])
    # the top e coefficients of the product must agree
    top = coeffs[n:]
    tail = out[n - e:] if n >= e else [0] * (e - n) + out
    if any(c + t for c, t in zip(top, tail)):
        raise ArithmeticError("(1 - q^e) does not divide")
    return out


def _dense(p: LaurentPoly) -> list[int]:
    return p.dense()


# --------------------------------------------------------------------------
# q-integers and q-Pochhammer


def q_int(m: int) -> RationalFn:
    """``[m]_q = (1 - q^m) / (1 - q)`` as a canonical rational function."""
    return RationalFn(q_int_poly(m))


def q_int_poly(m: int) -> LaurentPoly:
    if m > 0:
        return IntPoly([1] * m)
    if m == 0:
        return ZERO
    return -LaurentPoly([1] * (-m), m)


@lru_cache(maxsize=256)
def q_pochhammer(n: int) -> IntPoly:
    """``(q;q)_n = (1-q)(1-q^2)...(1-q^n)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    coeffs = [1]
    for j in range(1, n + 1):
        coeffs = mul_one_minus(coeffs, j)
    return IntPoly(coeffs)


# --------------------------------------------------------------------------
# Gaussian binomials


class _QBinCache:
    """LRU memo for q-binomials, bounded by the total number of stored coefficients.

    New entries are derived from a cached neighbour whenever one exists, via
    the ratios of products of ``(1 - q^j)``; each such step is linear in the
    degree.  Guarded by a lock so readers only ever see finished entries.
    """

    def __init__(self, budget: int = 4_000_000):
        self.budget = budget
        self.size = 0
        self.data: OrderedDict[tuple[int, int], tuple[int, ...]] = OrderedDict()
        self.lock = threading.Lock()

    def get(self, key):
        with self.lock:
            val = self.data.get(key)
            if val is not None:
                self.data.move_to_end(key)
            return val

    def put(self, key, val):
        with self.lock:
            if key in self.data:
                return
            self.data[key] = val
            self.size += len(val)
            while self.size > self.budget and len(self.data) > 1:
                _, old = self.data.popitem(last=False)
                self.size -= len(old)

    def clear(self):
        with self.lock:
            self.data.clear()
            self.size = 0


_QBIN = _QBinCache()


def _cached(n: int, k: int):
    if k < 0 or k > n:
        return None
    k = min(k, n - k)
    return (1,) if k == 0 else _QBIN.get((n, k))


def _qbin_coeffs(n: int, k: int) -> tuple[int, ...]:
    if k < 0 or k > n:
        return ()
    k = min(k, n - k)
    if k == 0:
        return (1,)
    hit = _QBIN.get((n, k))
    if hit is not None:
        return hit
    left, right = _cached(n - 1, k - 1), _cached(n - 1, k)
    if left is not None and right is not None:
        # (bi2): [n,k] = [n-1,k-1] + q^k [n-1,k]
        c = _pascal_step(left, right, k)
    elif (base := _cached(n - 2, k - 1)) is not None:
        # [n,k] = [n-2,k-1] (1-q^{n-1})(1-q^n) / ((1-q^k)(1-q^{n-k}))
        c = mul_one_minus(mul_one_minus(list(base), n - 1), n)
        c = div_one_minus(div_one_minus(c, k), n - k)
    elif (base := _cached(n, k - 1)) is not None:
        # [n,k] = [n,k-1] (1-q^{n-k+1}) / (1-q^k)
        c = div_one_minus(mul_one_minus(list(base), n - k + 1), k)
    elif (base := _cached(n - 1, k - 1)) is not None:
        # [n,k] = [n-1,k-1] (1-q^n) / (1-q^k)
        c = div_one_minus(mul_one_minus(list(base), n), k)
    else:
        c = q_binomial_product(n, k).dense()
    val = tuple(c)
    _QBIN.put((n, k), val)
    return val


def _pascal_step(left, right, k: int) -> list[int]:
    """Coefficients of ``left + q^k right`` where ``len(right) >= len(left) - k``."""
    head = list(left[:k])
    if len(head) < k:
        head += [0] * (k - len(head))
    mid = [x + y for x, y in zip(left[k:], right)]
    used = max(len(left) - k, 0)
    return head + mid + list(right[used:])


def q_binomial(n: int, k: int) -> IntPoly:
    """Gaussian binomial ``[n choose k]_q``; zero unless ``0 <= k <= n``.

    Memoized.  A new entry is one (bi2) addition when both parents are
    cached; otherwise it is derived from a cached neighbour along a row, a
    diagonal, or the central line ``(2m, m + d)`` with one multiplication
    and one division by ``(1 - q^j)`` factors.
    """
    return LaurentPoly._raw(0, _qbin_coeffs(n, k))


def q_binomial_product(n: int, k: int) -> IntPoly:
    """Direct product ``prod_{j=1}^{k} (1 - q^{n-k+j}) / (1 - q^j)`` (no memo)."""
    if k < 0 or k > n:
        return ZERO
    k = min(k, n - k)
    c = [1]
    for j in range(1, k + 1):
        c = div_one_minus(mul_one_minus(c, n - k + j), j)
    return IntPoly(c)


def q_binomial_pascal_rows(n_max: int):
    """Yield rows ``[[m,0]_q, ..., [m,m]_q]`` for ``m = 0..n_max`` by
    ``[m,k] = [m-1,k-1] + q^k [m-1,k]``."""
    row = [ONE]
    yield row
    for m in range(1, n_max + 1):
        new = [ONE]
        for k in range(1, m):
            new.append(row[k - 1] + row[k].shift(k))
        new.append(ONE)
        row = new
        yield row


def quotient_of_pochhammers(n: int, k: int) -> IntPoly:
    """``(q;q)_n / ((q;q)_k (q;q)_{n-k})`` by generic exact division."""
    if k < 0 or k > n:
        return ZERO
    return exact_div(q_pochhammer(n), q_pochhammer(k) * q_pochhammer(n - k)).to_intpoly()


# --------------------------------------------------------------------------
# number theory


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> Optional[tuple[int, int]]:
    """``(p, a)`` with ``n == p**a`` and ``p`` prime, or ``None``."""
    if n < 2:
        raise ValueError("prime_power needs n >= 2")
    p = next(d for d in range(2, n + 1) if n % d == 0)
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return (p, a) if n == 1 else None


def legendre(a: int, p: int) -> int:
    """Legendre symbol ``(a/p)`` for an odd prime ``p``, by Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


# --------------------------------------------------------------------------
# cyclotomic polynomials


_CYCLO_LOCK = threading.RLock()


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> IntPoly:
    num = LaurentPoly.monomial(n) - 1
    for d in divisors(n)[:-1]:
        num = exact_div(num, cyclotomic(d))
    return num.to_intpoly()


def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, via ``(q^n - 1) / prod_{d|n, d<n} Phi_d``."""
    if n < 1:
        raise ValueError("n must be positive")
    with _CYCLO_LOCK:
        return _cyclotomic(n)


@dataclass(frozen=True)
class CyclotomicResidue:
    """Class of a polynomial modulo ``Phi_n(q)``, stored as its remainder."""

    n: int
    rep: IntPoly

    def __post_init__(self):
        if self.n >= 2 and self.rep.degree >= cyclotomic(self.n).degree:
            raise ValueError("representative not reduced")

    def __add__(self, other):
        other = self._coerce(other)
        return reduce_mod_cyclotomic(self.rep + other.rep, self.n)

    def __sub__(self, other):
        other = self._coerce(other)
        return reduce_mod_cyclotomic(self.rep - other.rep, self.n)

    def __mul__(self, other):
        other = self._coerce(other)
        return reduce_mod_cyclotomic(self.rep * other.rep, self.n)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return CyclotomicResidue(self.n, -self.rep)

    def _coerce(self, other) -> "CyclotomicResidue":
        if isinstance(other, CyclotomicResidue):
            if other.n != self.n:
                raise ValueError("residues modulo different cyclotomic polynomials")
            return other
        return reduce_mod_cyclotomic(other if isinstance(other, LaurentPoly)
                                     else LaurentPoly.const(other), self.n)

    def __str__(self):
        return str(self.rep)


def fold_exponents(p: LaurentPoly, n: int) -> IntPoly:
    """Image of ``p`` in ``Z[q]/(q^n - 1)`` as a polynomial of degree < n."""
    acc = [0] * n
    for e, c in p.terms():
        acc[e % n] += c
    return IntPoly(acc)


def reduce_mod_cyclotomic(p, n: int) -> CyclotomicResidue:
    """Residue of a Laurent polynomial modulo ``Phi_n(q)``.

    Each exponent is first folded mod ``n`` (allowed since ``Phi_n`` divides
    ``q^n - 1``), then the Euclidean remainder by ``Phi_n`` is taken.  For
    ``n = 1`` this is evaluation at ``q = 1``.
    """
    if isinstance(p, int):
        p = LaurentPoly.const(p)
    if n == 1:
        return CyclotomicResidue(1, IntPoly([p.eval_one()]))
    return CyclotomicResidue(n, poly_rem(fold_exponents(p, n), cyclotomic(n)))


# --------------------------------------------------------------------------
# Pascal's triangle inside Z[q]/(q^n - 1)


class CyclicPascal:
    """Residues of ``[m choose k]_q`` in ``Z[q]/(q^n - 1)`` for all ``m <= m_max``.

    Builds the triangle with ``[m,k] = [m-1,k-1] + q^k [m-1,k]``, where
    multiplication by ``q^k`` is a cyclic rotation, so each entry costs O(n)
    no matter how large the true degree ``k(m-k)`` is.  Only rows listed in
    ``keep`` are retained (all rows when ``keep`` is None).
    """

    def __init__(self, n: int, m_max: int, keep=None):
        self.n = n
        self.m_max = m_max
        self.rows: dict[int, list[tuple[int, ...]]] = {}
        keep = None if keep is None else set(keep)
        one = (1,) + (0,) * (n - 1)
        row = [one]
        if keep is None or 0 in keep:
            self.rows[0] = row
        for m in range(1, m_max + 1):
            new = [one]
            for k in range(1, m):
                a = row[k - 1]
                b = row[k]
                s = k % n
                if s:
                    b = b[n - s:] + b[:n - s]
                new.append(tuple([x + y for x, y in zip(a, b)]))
            new.append(one)
            row = new
            if keep is None or m in keep:
                self.rows[m] = row

    def folded(self, m: int, k: int) -> tuple[int, ...]:
        if k < 0 or k > m:
            return (0,) * self.n
        return self.rows[m][k]

    def poly(self, m: int, k: int) -> IntPoly:
        """Folded representative (degree < n) of ``[m choose k]_q``."""
        return IntPoly(self.folded(m, k))


def gauss_poly(n: int, p: int) -> IntPoly:
    """``sum_{t=1}^{p-1} (t/p) q^{t n / p}``; at a primitive n-th root of unity
    ``exp(2 pi i m / n)`` this is ``(m/p) i sqrt(3)`` for p=3 and ``(m/p) sqrt(5)``
    for p=5."""
    if p not in (3, 5):
        raise ValueError("gauss_poly supports p = 3 and p = 5")
    if n % p:
        raise PNotDividingN(f"{p} does not divide {n}")
    step = n // p
    return LaurentPoly.from_terms({t * step: legendre(t, p) for t in range(1, p)}).to_intpoly()
