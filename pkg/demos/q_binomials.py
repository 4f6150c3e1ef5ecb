"""Gaussian coefficients as polynomials.

Builds a few q-binomials, checks them against the partition count they
enumerate, and shows the three-term relations and the palindromic symmetry.
"""

from qcert.polyring import eval_one, exact_div
from qcert.qcore import q_binomial, q_pochhammer


def main():
    for n, k in [(4, 2), (6, 3), (8, 2)]:
        qb = q_binomial(n, k)
        print(f"[{n} choose {k}]_q = {qb}")
        print(f"  at q = 1: {eval_one(qb)}   palindromic: {qb.is_palindromic()}")

    n, k = 7, 3
    qb = q_binomial(n, k)
    left = q_binomial(n - 1, k - 1).shift(n - k) + q_binomial(n - 1, k)
    right = q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)
    print(f"\nboth Pascal rules reproduce [7 choose 3]: {left == qb and right == qb}")

    quotient = exact_div(q_pochhammer(n), q_pochhammer(k) * q_pochhammer(n - k))
    print(f"(q;q)_7 / ((q;q)_3 (q;q)_4) agrees: {quotient == qb}")


if __name__ == "__main__":
    main()
