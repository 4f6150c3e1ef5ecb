"""Exact q-analog arithmetic and verification of q-binomial identities and
congruences modulo cyclotomic polynomials.

Submodules:

``polyring``     Laurent polynomials and rational functions over the integers
``qcore``        q-integers, q-binomials, cyclotomic polynomials, residues
``qobjects``     q-Fibonacci, q-Catalan and the named finite sums
``congruences``  congruence checks mod Phi_n and their q = 1 consequences
``wz``           the recurrence certificate and shift-relation checks
``suites``       parameter sweeps behind ``qcert verify``
"""

from .polyring import (
    IntPoly,
    LaurentPoly,
    NonMonicModulus,
    NotDivisible,
    RationalFn,
    eval_int,
    eval_one,
    eval_root_of_unity,
    exact_div,
    parse_poly,
    poly_gcd,
    poly_rem,
)
from .qcore import (
    CyclotomicResidue,
    cyclotomic,
    gauss_poly,
    legendre,
    prime_power,
    q_binomial,
    q_int,
    q_pochhammer,
    reduce_mod_cyclotomic,
)
from .qobjects import q_catalan, q_fibonacci_explicit, q_fibonacci_rec, s_sum, t_sum
from .congruences import CongruenceReport

__version__ = "0.1.0"
