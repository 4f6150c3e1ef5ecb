"""Congruences for q-Catalan and central q-binomial sums.

Runs a few checks and prints the JSON rows the verification driver writes.
"""

from qcert import congruences as cg


def main():
    reports = [cg.check_qc1(7, 2), cg.check_gk(10), cg.check_dual(9), cg.check_c3(8), cg.check_c5(7)]
    reports += cg.check_catalan_roots(15)
    reports += cg.check_p_catalan(5, 1)
    for r in reports:
        print(r.to_jsonl())

    print()
    for r in cg.numeric_checks(5, 1e-9, {"gk-numeric"}):
        print(f"n=5 m={r.params['m']}: value {r.lhs_residue}, expected {r.rhs_residue}, ok {r.holds}")


if __name__ == "__main__":
    main()
