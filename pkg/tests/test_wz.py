import pytest

from qcert.polyring import ONE, ZERO, LaurentPoly, RationalFn
from qcert.qcore import q_binomial
from qcert.qobjects import s_sum, t_sum
from qcert.wz import (
    SPEC_MINUS,
    SPEC_PLUS,
    CertificateSpec,
    DegenerateDenominator,
    WZInstance,
    cert_denominator_exponents,
    cert_h,
    cert_r,
    check_c0_zero,
    check_coeff_invariance,
    check_final_identity,
    check_final_identity_derived,
    check_initial_cases,
    check_kernel_sum,
    check_shift_lemma,
    check_telescoped,
    check_telescoped_derived,
    check_wz_recurrence,
    check_wz_tail,
    g_fn,
    k_window,
    partial_sums,
    recurrence_coeffs,
    recurrence_lhs,
    s_term,
    telescoping_certificate,
)


def P(*coeffs, min_exp=0):
    return LaurentPoly(coeffs, min_exp)


def one_minus(e):
    return ONE - LaurentPoly.monomial(e)


def test_spec_validation():
    with pytest.raises(ValueError):
        CertificateSpec(3, -1)
    assert SPEC_MINUS.label == "-3,-1"


def test_s_term_examples():
    assert s_term(WZInstance(3, 0, SPEC_PLUS)) == q_binomial(6, 4)
    assert s_term(WZInstance(2, 1, SPEC_PLUS)) == ZERO
    assert s_term(WZInstance(4, 1, SPEC_MINUS)) == q_binomial(8, 6).shift(3)
    assert not WZInstance(2, 1).in_support()


def test_recurrence_coeff_examples():
    for n in range(6):
        assert recurrence_coeffs(n, SPEC_PLUS)[4] == ONE
    assert recurrence_coeffs(1, SPEC_PLUS)[0] == one_minus(3) * one_minus(4) * LaurentPoly.monomial(6)
    assert sum(recurrence_coeffs(2, SPEC_PLUS), ZERO) == ZERO
    assert partial_sums(2, SPEC_PLUS)[0] == ZERO


def test_cert_h_examples():
    h = cert_h(WZInstance(3, 1, SPEC_PLUS))
    # first monomial q^30 and last monomial -q^9 survive collection
    assert h.coeff(30) == 1 and h.coeff(9) == -1
    # sixteen monomials at n = k = 0, (a, b) = (3, 1), collected by hand
    assert cert_h(WZInstance(0, 0, SPEC_PLUS)) == P(1, -1, -1, 0, 1, 1, -1, min_exp=8)


def test_cert_r_examples():
    assert cert_denominator_exponents(WZInstance(2, 0, SPEC_PLUS)) == [4, 5, 2, 4]
    r = cert_r(WZInstance(2, 0, SPEC_PLUS))
    den = one_minus(4) * one_minus(5) * one_minus(2) * one_minus(4)
    num = cert_h(WZInstance(2, 0, SPEC_PLUS)) * one_minus(5) * one_minus(6)
    assert r == RationalFn(num.shift(8 + 10 - 3 - 4), den)
    r2 = cert_r(WZInstance(3, 1, SPEC_MINUS))
    assert r2 == RationalFn(r2.num, r2.den)
    with pytest.raises(DegenerateDenominator):
        cert_r(WZInstance(1, 1, SPEC_MINUS))


def test_g_examples():
    assert g_fn(WZInstance(2, 1, SPEC_PLUS)) == RationalFn(ZERO)
    assert g_fn(WZInstance(3, 0, SPEC_PLUS)) == cert_r(WZInstance(3, 0, SPEC_PLUS)) * q_binomial(6, 4)
    assert g_fn(WZInstance(3, -2, SPEC_PLUS)) == RationalFn(ZERO)


def test_k_window_covers_support():
    for n in range(1, 15):
        ks = k_window(n)
        for spec in (SPEC_PLUS, SPEC_MINUS):
            for j in range(5):
                for k in range(-20, 21):
                    if s_term(WZInstance(n + j, k, spec)):
                        assert k in ks


# The printed certificate: these follow the stated examples and fail when the
# certificate does not satisfy the recurrence.


@pytest.mark.parametrize("n,k,spec", [(1, 0, SPEC_PLUS), (5, 1, SPEC_MINUS), (4, -2, SPEC_PLUS)])
def test_wz_recurrence_examples(n, k, spec):
    r = check_wz_recurrence(n, k, spec)
    assert r.holds, r.note


@pytest.mark.parametrize("n", [2, 5])
def test_telescoped_examples(n):
    r = check_telescoped(n)
    assert r.holds, r.note


@pytest.mark.parametrize("n", [2, 3, 10])
def test_final_identity_examples(n):
    r = check_final_identity(n)
    assert r.holds, r.note


def test_telescoped_boundary_is_flagged():
    r = check_telescoped(1)
    assert not r.holds and "vanishes" in r.note


def test_failing_rows_carry_residuals():
    r = check_wz_recurrence(3, 0, SPEC_PLUS)
    if not r.holds:
        assert r.note.startswith("residual: ")


# Audit checks that do not depend on the printed h.


@pytest.mark.parametrize("n", range(1, 13))
def test_kernel_sum_vanishes(n):
    assert check_kernel_sum(n, SPEC_PLUS).holds
    assert check_kernel_sum(n, SPEC_MINUS).holds


@pytest.mark.parametrize("n", range(2, 13))
def test_derived_certificate_closes_identities(n):
    assert check_telescoped_derived(n).holds
    assert check_final_identity_derived(n).holds


def test_derived_certificate_telescopes():
    n, spec = 6, SPEC_PLUS
    for k in k_window(n):
        lhs = recurrence_lhs(n, k, spec)
        assert lhs == telescoping_certificate(n, k + 1, spec) - telescoping_certificate(n, k, spec)


@pytest.mark.parametrize("n", [1, 2, 7, 20, 50])
def test_c0_and_invariance(n):
    assert check_c0_zero(n).holds
    assert check_coeff_invariance(n).holds


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_initial_cases(n):
    assert check_initial_cases(n).holds
    assert s_sum(n, 0) == t_sum(n, 0)


@pytest.mark.parametrize("n,d", [(1, 0), (4, -1), (5, -4), (4, -2), (6, 3), (3, -3)])
def test_shift_lemma_examples(n, d):
    assert check_shift_lemma(n, d).holds


def test_shift_lemma_sweep():
    for n in range(1, 16):
        for d in range(-min(n, 10), min(n, 10) + 1):
            assert check_shift_lemma(n, d).holds, (n, d)


def test_shift_lemma_range():
    with pytest.raises(ValueError):
        check_shift_lemma(2, 3)


def test_tail_report_shape():
    r = check_wz_tail(4, 0, SPEC_PLUS)
    assert r.claim_id == "wz-tail" and r.params == {"a": 3, "b": 1, "k0": 0}
