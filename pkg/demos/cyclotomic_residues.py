"""Residues modulo cyclotomic polynomials.

Prints a few Phi_n, their values at q = 1, and reduces a large q-binomial
modulo Phi_n without expanding it, using the cyclic Pascal triangle.
"""

from qcert.polyring import IntPoly, eval_one
from qcert.qcore import CyclicPascal, cyclotomic, prime_power, q_binomial, reduce_mod_cyclotomic


def main():
    for n in (6, 9, 12, 25):
        phi = cyclotomic(n)
        pp = prime_power(n)
        print(f"Phi_{n} = {phi}")
        print(f"  Phi_{n}(1) = {eval_one(phi)}   prime power: {pp}")

    n, m, k = 7, 40, 14
    table = CyclicPascal(n, m)
    folded = reduce_mod_cyclotomic(IntPoly(list(table.folded(m, k))), n)
    direct = reduce_mod_cyclotomic(q_binomial(m, k), n)
    print(f"\n[{m} choose {k}] mod Phi_{n}: {folded}")
    print(f"  same as reducing the expanded polynomial ({q_binomial(m, k).degree + 1} coefficients): "
          f"{folded == direct}")


if __name__ == "__main__":
    main()
