"""Exact polynomial arithmetic in a single variable q.

Three value types live here:

* ``LaurentPoly``: finitely many integer coefficients starting at an
  arbitrary (possibly negative) exponent ``min_exp``.
* ``IntPoly``: a ``LaurentPoly`` whose exponents are all nonnegative.
* ``RationalFn``: a reduced quotient of two Laurent polynomials.

Coefficients are Python ints, so everything is exact.  Values are immutable
and hashable; all operations are pure.

Multiplication is schoolbook convolution for short operands and switches to
Kronecker substitution (pack into one big integer, multiply, unpack) once
both operands have more than ``KRONECKER_THRESHOLD`` terms.  The packed
product is still exact; it just moves the inner loop into CPython's bignum
multiply.  An FFT over a prime field would be the next step if degrees ever
grow past ~10^5.
"""

from __future__ import annotations

import math
import operator
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import mpmath

__all__ = [
    "linear_combination",
    "LaurentPoly",
    "IntPoly",
    "RationalFn",
    "NotDivisible",
    "NonMonicModulus",
    "Q",
    "ONE",
    "ZERO",
    "poly_rem",
    "exact_div",
    "eval_int",
    "eval_one",
    "eval_root_of_unity",
    "poly_gcd",
    "parse_poly",
]

KRONECKER_THRESHOLD = 48


class NotDivisible(ArithmeticError):
    """The divisor does not divide the dividend exactly."""


class NonMonicModulus(ValueError):
    """Euclidean remainder requested with a modulus that is not monic."""


# --------------------------------------------------------------------------
# coefficient-list kernels (lists of ints, index = exponent offset)


def _trim(coeffs: list[int], min_exp: int) -> tuple[int, tuple[int, ...]]:
    lo = 0
    hi = len(coeffs)
    while hi > 0 and coeffs[hi - 1] == 0:
        hi -= 1
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    if lo == hi:
        return 0, ()
    return min_exp + lo, tuple(coeffs[lo:hi])


def _add_into(acc: list[int], coeffs: Sequence[int], offset: int, sign: int = 1) -> None:
    end = offset + len(coeffs)
    acc[offset:end] = map(operator.add if sign == 1 else operator.sub, acc[offset:end], coeffs)


def _maxabs(coeffs: Sequence[int]) -> int:
    return max(max(coeffs), -min(coeffs))


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    """Evaluate at 2**(8*nbytes); coefficients may be negative."""
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else bytes(nbytes) for c in coeffs)
    neg = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else bytes(nbytes) for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, nbytes: int, length: int) -> list[int]:
    """Inverse of ``_pack`` assuming every coefficient is below 2**(8*nbytes-1)."""
    sign = 1
    if value < 0:
        sign = -1
        value = -value
    raw = value.to_bytes(max(length * nbytes, (value.bit_length() + 7) // 8), "little")
    half = 1 << (8 * nbytes - 1)
    full = 1 << (8 * nbytes)
    out = []
    carry = 0
    for i in range(length):
        d = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        out.append(sign * d)
    if carry or len(raw) > length * nbytes and any(raw[length * nbytes:]):
        raise OverflowError("packed value does not fit the requested length")
    return out


def _mul_coeffs(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    if len(b) <= KRONECKER_THRESHOLD:
        out = [0] * (len(a) + len(b) - 1)
        for j, c in enumerate(b):
            if c:
                if c == 1:
                    _add_into(out, a, j)
                elif c == -1:
                    _add_into(out, a, j, -1)
                else:
                    for i, x in enumerate(a):
                        out[i + j] += c * x
        return out
    bound = _maxabs(a) * _maxabs(b) * len(b)
    nbytes = (bound.bit_length() + 2) // 8 + 1
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return _unpack(prod, nbytes, len(a) + len(b) - 1)


def _divmod_coeffs(p: list[int], d: Sequence[int]) -> tuple[list[int], list[int]]:
    """Long division from the top; ``d[-1]`` must divide every quotient digit.

    Raises NotDivisible when a quotient digit is not an integer.
    """
    lead = d[-1]
    rem = list(p)
    dn = len(d) - 1
    if len(rem) <= dn:
        return [], rem
    quot = [0] * (len(rem) - dn)
    sparse = [(i, c) for i, c in enumerate(d[:-1]) if c]
    for top in range(len(rem) - 1, dn - 1, -1):
        c = rem[top]
        if not c:
            continue
        if lead == 1:
            f = c
        elif lead == -1:
            f = -c
        else:
            f, r = divmod(c, lead)
            if r:
                raise NotDivisible("non-integral quotient coefficient")
        shift = top - dn
        quot[shift] = f
        rem[top] = 0
        for i, dc in sparse:
            rem[shift + i] -= f * dc
    return quot, rem[:dn]


def _exact_div_coeffs(p: Sequence[int], d: Sequence[int]) -> list[int]:
    """Exact quotient of coefficient lists (both with nonzero constant term)."""
    if len(d) == 1:
        c = d[0]
        out = []
        for x in p:
            f, r = divmod(x, c)
            if r:
                raise NotDivisible("content does not divide")
            out.append(f)
        return out
    qlen = len(p) - len(d) + 1
    if qlen <= 0:
        raise NotDivisible("divisor has larger degree")
    nnz = sum(1 for c in d if c)
    if nnz * qlen > 20000 and len(d) > KRONECKER_THRESHOLD:
        # Guess the quotient through a packed integer division, then confirm
        # by multiplying back; widen the packing if the guess was truncated.
        bits = _maxabs(p).bit_length() + 16
        limit = _maxabs(p).bit_length() + qlen + 8
        while True:
            nbytes = bits // 8 + 1
            num = _pack(p, nbytes)
            den = _pack(d, nbytes)
            qv, rv = divmod(num, den)
            if rv:
                raise NotDivisible("packed remainder is nonzero")
            try:
                cand = _unpack(qv, nbytes, qlen)
            except OverflowError:
                cand = None
            if cand is not None and _mul_coeffs(cand, d) == list(p):
                return cand
            if bits > limit:
                raise NotDivisible("no integral quotient")
            bits *= 2
    quot, rem = _divmod_coeffs(list(p), d)
    if any(rem):
        raise NotDivisible("nonzero remainder")
    return quot


# --------------------------------------------------------------------------
# value types


class LaurentPoly:
    """Laurent polynomial ``sum(coeffs[i] * q**(min_exp + i))`` over the integers.

    Normalized: the first and last stored coefficients are nonzero; the zero
    polynomial has ``min_exp == 0`` and no coefficients.
    """

    __slots__ = ("min_exp", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = (), min_exp: int = 0):
        lo, cs = _trim([int(c) for c in coeffs], int(min_exp))
        self._set(lo, cs)

    def _set(self, min_exp: int, coeffs: tuple[int, ...]) -> None:
        object.__setattr__(self, "min_exp", min_exp)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    @classmethod
    def _raw(cls, min_exp: int, coeffs: tuple[int, ...]) -> "LaurentPoly":
        if min_exp >= 0 or not coeffs:
            cls = IntPoly
        else:
            cls = LaurentPoly
        obj = object.__new__(cls)
        obj._set(min_exp if coeffs else 0, coeffs)
        return obj

    @classmethod
    def _from_list(cls, coeffs: list[int], min_exp: int) -> "LaurentPoly":
        lo, cs = _trim(coeffs, min_exp)
        return cls._raw(lo, cs)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw(exp, (coeff,)) if coeff else cls._raw(0, ())

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    @classmethod
    def from_terms(cls, terms: dict[int, int] | Iterable[tuple[int, int]]) -> "LaurentPoly":
        """Build from ``{exponent: coefficient}`` (repeated exponents add up)."""
        items = list(terms.items() if isinstance(terms, dict) else terms)
        if not items:
            return ZERO
        lo = min(e for e, _ in items)
        hi = max(e for e, _ in items)
        acc = [0] * (hi - lo + 1)
        for e, c in items:
            acc[e - lo] += c
        return cls._from_list(acc, lo)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def max_exp(self) -> int:
        """Largest exponent present (``-1`` by convention for zero)."""
        if not self.coeffs:
            return -1
        return self.min_exp + len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return self.max_exp

    @property
    def valuation(self) -> int:
        return self.min_exp

    @property
    def leading_coeff(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, e: int) -> int:
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(exponent, coefficient)`` pairs in ascending order."""
        m = self.min_exp
        return [(m + i, c) for i, c in enumerate(self.coeffs) if c]

    def is_polynomial(self) -> bool:
        return not self.coeffs or self.min_exp >= 0

    def is_constant(self) -> bool:
        return not self.coeffs or (self.min_exp == 0 and len(self.coeffs) == 1)

    def constant(self) -> int:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.coeff(0)

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def to_intpoly(self) -> "IntPoly":
        if not self.is_polynomial():
            raise ValueError(f"negative exponents present: {self}")
        return IntPoly._raw(self.min_exp, self.coeffs)

    def to_laurent(self) -> "LaurentPoly":
        obj = object.__new__(LaurentPoly)
        obj._set(self.min_exp, self.coeffs)
        return obj

    def dense(self) -> list[int]:
        """Coefficients from exponent 0 upwards (polynomials only)."""
        if not self.is_polynomial():
            raise ValueError("dense() needs nonnegative exponents")
        if not self.coeffs:
            return []
        return [0] * self.min_exp + list(self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _combine(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _combine(self, other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _combine(other, self, -1)

    def __neg__(self):
        return LaurentPoly._raw(self.min_exp, tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        if isinstance(other, RationalFn):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        prod = _mul_coeffs(self.coeffs, other.coeffs)
        return LaurentPoly._raw(self.min_exp + other.min_exp, tuple(prod))

    __rmul__ = __mul__

    def scalar_mul(self, c: int) -> "LaurentPoly":
        if c == 0 or not self.coeffs:
            return ZERO
        if c == 1:
            return self
        return LaurentPoly._raw(self.min_exp, tuple(c * x for x in self.coeffs))

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by ``q**e``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(self.min_exp + e, self.coeffs)

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms()) == 1:
                (e, c), = self.terms()
                if abs(c) == 1:
                    return LaurentPoly.monomial(e * k, c ** (-k))
            raise ValueError("negative power of a non-unit")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        return RationalFn(self, other)

    def __floordiv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return exact_div(self, other)

    def substitute_inverse(self) -> "LaurentPoly":
        """The polynomial with ``q`` replaced by ``1/q``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(-self.max_exp, self.coeffs[::-1])

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if isinstance(other, RationalFn):
            return other == self
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.min_exp, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    # -- evaluation -------------------------------------------------------

    def eval_int(self, x: int) -> Fraction:
        return eval_int(self, x)

    def eval_one(self) -> int:
        return sum(self.coeffs)

    def __call__(self, x):
        if isinstance(x, int):
            return eval_int(self, x)
        return _horner_complex(self, complex(x))

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_poly(self)!r})"

    def to_json(self) -> dict:
        return {"min_exp": self.min_exp, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentPoly":
        return LaurentPoly([int(c) for c in obj["coeffs"]], int(obj["min_exp"]))

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return parse_poly(text)


class IntPoly(LaurentPoly):
    """A ``LaurentPoly`` with no negative exponents.

    ``IntPoly([c0, c1, ...])`` reads coefficients from exponent 0 upwards.
    """

    __slots__ = ()

    def __init__(self, coeffs: Iterable[int] = (), min_exp: int = 0):
        if min_exp < 0:
            raise ValueError("IntPoly exponents must be nonnegative")
        super().__init__(coeffs, min_exp)


def _combine(a: LaurentPoly, b: LaurentPoly, sign: int) -> LaurentPoly:
    if not b.coeffs:
        return a
    if not a.coeffs:
        return -b if sign < 0 else b
    lo = min(a.min_exp, b.min_exp)
    hi = max(a.max_exp, b.max_exp)
    acc = [0] * (hi - lo + 1)
    _add_into(acc, a.coeffs, a.min_exp - lo)
    _add_into(acc, b.coeffs, b.min_exp - lo, sign)
    return LaurentPoly._from_list(acc, lo)


def linear_combination(terms: Iterable[tuple[int, LaurentPoly, int]]) -> LaurentPoly:
    """``sum(c * q**e * p for c, p, e in terms)`` accumulated in one buffer."""
    items = [(c, p, e) for c, p, e in terms if c and p.coeffs]
    if not items:
        return ZERO
    lo = min(p.min_exp + e for _, p, e in items)
    hi = max(p.max_exp + e for _, p, e in items)
    acc = [0] * (hi - lo + 1)
    for c, p, e in items:
        off = p.min_exp + e - lo
        if c == 1 or c == -1:
            _add_into(acc, p.coeffs, off, c)
        else:
            _add_into(acc, [c * x for x in p.coeffs], off)
    return LaurentPoly._from_list(acc, lo)


ZERO = LaurentPoly._raw(0, ())
ONE = LaurentPoly._raw(0, (1,))
Q = LaurentPoly._raw(1, (1,))


# --------------------------------------------------------------------------
# division


def exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Quotient ``p / d`` in the Laurent ring; raise NotDivisible otherwise."""
    if isinstance(d, int):
        d = LaurentPoly.const(d)
    if not d.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.coeffs:
        return ZERO
    if len(d.coeffs) == 1 and d.coeffs[0] == 1:
        return p.shift(-d.min_exp)
    quot = _exact_div_coeffs(p.coeffs, d.coeffs)
    return LaurentPoly._from_list(quot, p.min_exp - d.min_exp)


def poly_divmod(p: LaurentPoly, m: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division of polynomials by a monic modulus."""
    if not m.is_polynomial() or not p.is_polynomial():
        raise ValueError("poly_divmod works on polynomials")
    if m.leading_coeff != 1:
        raise NonMonicModulus(f"modulus {m} is not monic")
    if m.degree < 1:
        raise NonMonicModulus("modulus must have degree >= 1")
    quot, rem = _divmod_coeffs(p.dense(), m.dense())
    return LaurentPoly._from_list(quot, 0), LaurentPoly._from_list(rem, 0)


def poly_rem(p: LaurentPoly, m: LaurentPoly) -> IntPoly:
    """Remainder of ``p`` modulo the monic polynomial ``m``."""
    return poly_divmod(p, m)[1]


# --------------------------------------------------------------------------
# evaluation


def eval_int(p: LaurentPoly, x: int) -> Fraction:
    if x == 0:
        raise ZeroDivisionError("eval_int requires x != 0")
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    if p.min_exp >= 0:
        return Fraction(acc * x ** p.min_exp)
    return Fraction(acc, x ** (-p.min_exp))


def eval_one(p: LaurentPoly) -> int:
    return sum(p.coeffs)


def _horner_complex(p: LaurentPoly, z: complex) -> complex:
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + c
    if p.min_exp:
        acc *= z ** p.min_exp
    return acc


def eval_root_of_unity(p: LaurentPoly, m: int, n: int) -> complex:
    """Value of ``p`` at ``exp(2*pi*i*m/n)``, rounded to a complex double.

    Exponents are grouped by their class mod ``n`` (exact, since the point is
    an n-th root of unity), then the at most ``n`` bucket sums are combined in
    binary floating point with enough guard bits to absorb the size of the
    buckets.  The returned value is accurate to about 1e-12 relative to the
    largest bucket divided by 2**60; intended only as a numeric cross-check.
    """
    if n < 1:
        raise ValueError("n must be positive")
    buckets = [0] * n
    for e, c in p.terms():
        buckets[e % n] += c
    top = max((abs(c) for c in buckets), default=0)
    with mpmath.workprec(top.bit_length() + 64):
        total = mpmath.mpc(0)
        for r, c in enumerate(buckets):
            if c:
                total += c * mpmath.expjpi(mpmath.mpf(2 * ((m * r) % n)) / n)
        return complex(total)


# --------------------------------------------------------------------------
# gcd and rational functions


def _primitive(coeffs: Sequence[int]) -> list[int]:
    g = reduce(math.gcd, coeffs, 0)
    if g == 0:
        return list(coeffs)
    if coeffs[-1] < 0:
        g = -g
    return [c // g for c in coeffs]


def _divides(d: Sequence[int], p: Sequence[int]) -> bool:
    try:
        _exact_div_coeffs(p, d)
    except NotDivisible:
        return False
    return True


def _prs_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive remainder sequence gcd; slow but unconditional."""
    a = _primitive(a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder of a by b
        lead = b[-1]
        rem = list(a)
        dn = len(b) - 1
        while len(rem) > dn and rem:
            c = rem[-1]
            if c == 0:
                rem.pop()
                continue
            shift = len(rem) - 1 - dn
            rem = [x * lead for x in rem]
            for i, bc in enumerate(b):
                rem[shift + i] -= c * bc
            rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
        a, b = b, (_primitive(rem) if rem else [])
    return _primitive(a)


def _heu_gcd(a: list[int], b: list[int]) -> list[int] | None:
    """Heuristic gcd via evaluation at a power of two, verified by division."""
    bound = min(_maxabs(a), _maxabs(b))
    # the evaluation point must also exceed every input coefficient to pack it
    bits = max(2 * bound.bit_length() + 32, max(_maxabs(a), _maxabs(b)).bit_length() + 2)
    for _ in range(6):
        nbytes = bits // 8 + 1
        h = math.gcd(_pack(a, nbytes), _pack(b, nbytes))
        length = min(len(a), len(b))
        try:
            cand = _unpack(h, nbytes, length)
        except OverflowError:
            cand = None
        if cand is not None:
            while cand and cand[-1] == 0:
                cand.pop()
            if cand:
                cand = _primitive(cand)
                if _divides(cand, a) and _divides(cand, b):
                    return cand
        bits = bits * 3 // 2 + 17
    return None


def _gcd_coeffs(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd (positive leading coefficient) of coefficient lists."""
    a = list(a)
    b = list(b)
    if not a:
        return _primitive(b)
    if not b:
        return _primitive(a)
    if len(a) == 1 or len(b) == 1:
        return [1]
    g = _heu_gcd(a, b)
    if g is None:
        g = _prs_gcd(a, b)
    return g


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> IntPoly:
    """Primitive gcd of the polynomial parts (monomial factors discarded)."""
    return LaurentPoly._from_list(_gcd_coeffs(a.coeffs, b.coeffs), 0)


class RationalFn:
    """Exact quotient ``num / den`` of Laurent polynomials, kept canonical.

    Canonical form: ``den`` has valuation 0 and a positive leading
    coefficient, and ``num`` and ``den`` share no nonunit common factor
    (content included).  Equal rational functions are structurally equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, _canonical=False):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if isinstance(den, int):
            den = LaurentPoly.const(den)
        if isinstance(num, RationalFn) or isinstance(den, RationalFn):
            r = _as_rational(num) / _as_rational(den)
            num, den, _canonical = r.num, r.den, True
        if not den.coeffs:
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("rational functions are immutable")

    @classmethod
    def _make(cls, num, den):
        return cls(num, den)

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> LaurentPoly:
        if self.den != ONE:
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.num

    def canonical(self) -> "RationalFn":
        return RationalFn(self.num, self.den)

    def __add__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        # cross-cancel before multiplying to keep the gcd small
        g1 = _gcd_coeffs(self.num.coeffs, other.den.coeffs)
        g2 = _gcd_coeffs(other.num.coeffs, self.den.coeffs)
        n1, d2 = _cancel(self.num, other.den, g1)
        n2, d1 = _cancel(other.num, self.den, g2)
        return RationalFn(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.coeffs:
            raise ZeroDivisionError("division by zero rational function")
        return self * RationalFn(other.den, other.num)

    def __rtruediv__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFn(self.den, self.num) ** (-k)
        return RationalFn(self.num ** k, self.den ** k, _canonical=True)

    def __eq__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def eval_root_of_unity(self, m: int, n: int) -> complex:
        return eval_root_of_unity(self.num, m, n) / eval_root_of_unity(self.den, m, n)

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFn({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _as_rational(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFn(x, ONE, _canonical=True)
    if isinstance(x, int):
        return RationalFn(LaurentPoly.const(x), ONE, _canonical=True)
    return NotImplemented


def _cancel(num: LaurentPoly, den: LaurentPoly, g: list[int]):
    if len(g) <= 1:
        return num, den
    return (LaurentPoly._from_list(_exact_div_coeffs(num.coeffs, g), num.min_exp),
            LaurentPoly._from_list(_exact_div_coeffs(den.coeffs, g), den.min_exp))


def _normalize_sign(num: LaurentPoly, den: LaurentPoly):
    # move the monomial part of den into num, make den's lead positive
    if den.min_exp:
        num = num.shift(-den.min_exp)
        den = den.shift(-den.min_exp)
    if den.leading_coeff < 0:
        num, den = -num, -den
    return num, den


def _canonicalize(num: LaurentPoly, den: LaurentPoly):
    if not num.coeffs:
        return ZERO, ONE
    g = _gcd_coeffs(num.coeffs, den.coeffs)
    num, den = _cancel(num, den, g)
    c = math.gcd(num.content(), den.content())
    if c > 1:
        num = LaurentPoly._raw(num.min_exp, tuple(x // c for x in num.coeffs))
        den = LaurentPoly._raw(den.min_exp, tuple(x // c for x in den.coeffs))
    return _normalize_sign(num, den)


# --------------------------------------------------------------------------
# text form


def _format_term(c: int, e: int, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if e == 0:
        body = str(a)
    else:
        mono = "q" if e == 1 else f"q^{e}"
        body = mono if a == 1 else f"{a}*{mono}"
    if first:
        return body if sign == "+" else f"-{body}"
    return f" {sign} {body}"


def format_poly(p: LaurentPoly) -> str:
    """Ascending-exponent text such as ``1 - q + 2*q^3`` or ``q^-2 + 1``."""
    terms = p.terms()
    if not terms:
        return "0"
    return "".join(_format_term(c, e, i == 0) for i, (e, c) in enumerate(terms))


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)\s*(?:\*\s*(q)(?:\s*\^\s*(-?\d+))?)?|(q)(?:\s*\^\s*(-?\d+))?)\s*"
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse the text produced by ``format_poly`` (and mild variations)."""
    s = text.strip()
    if s == "0":
        return ZERO
    pos = 0
    terms = []
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        sign, num, q1, e1, q2, e2 = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator before {s[pos:]!r}")
        if num is None and q2 is None:
            raise ValueError(f"empty term in {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        if q1 or q2:
            e = e1 if q1 else e2
            exp = int(e) if e is not None else 1
        else:
            exp = 0
        terms.append((exp, c))
        pos = m.end()
        first = False
    return LaurentPoly.from_terms(terms)
