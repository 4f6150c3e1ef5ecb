"""Finite q-series identities.

Compares the sum S(n, d) with its closed form T(n, d), the alternating
q-binomial sum G(n) with its three-periodic closed form, and both sides of
the finite Rogers-Ramanujan identity.
"""

from qcert.qobjects import NonIntegralExponent, g_sum, h_closed, rr_lhs, rr_rhs, s_sum, t_sum


def main():
    for n in range(1, 7):
        print(f"G({n}) = {g_sum(n)}   closed form: {h_closed(n)}")

    print()
    for n in (5, 12):
        for a in (0, 1):
            print(f"Rogers-Ramanujan n={n}, a={a}: sides agree {rr_lhs(n, a) == rr_rhs(n, a)}")

    print()
    n = 6
    for d in range(-3, 4):
        try:
            printed = t_sum(n, d) == s_sum(n, d)
        except NonIntegralExponent:
            printed = "non-integral exponent"
        fixed = t_sum(n, d, lead_symbol_abs=True) == s_sum(n, d)
        print(f"S({n},{d:+d}) = T({n},{d:+d}): printed sign {printed}, |d| in leading symbol {fixed}")


if __name__ == "__main__":
    main()
