"""Auditing a q-Zeilberger certificate.

Checks the recurrence with the transcribed certificate at a few points,
shows the residual when it fails, and compares it with the certificate that
summing the recurrence over k forces.
"""

from qcert.polyring import RationalFn
from qcert.wz import (
    SPEC_PLUS,
    WZInstance,
    check_final_identity,
    check_final_identity_derived,
    check_kernel_sum,
    check_wz_recurrence,
    g_fn,
    s_term,
    telescoping_certificate,
)


def main():
    for n, k in [(3, 0), (4, 1)]:
        r = check_wz_recurrence(n, k, SPEC_PLUS)
        print(f"recurrence at n={n}, k={k}: holds {r.holds}")
        if not r.holds:
            print(f"  {r.note[:120]}...")

    n = 4
    print(f"\nkernel sum at n={n}: {check_kernel_sum(n, SPEC_PLUS).holds}")
    for k0 in (0, 1):
        forced = telescoping_certificate(n, k0, SPEC_PLUS)
        printed = g_fn(WZInstance(n, k0, SPEC_PLUS))
        s = s_term(WZInstance(n, k0, SPEC_PLUS))
        ratio = RationalFn(forced, s) if s else None
        print(f"g({n},{k0}): transcribed = forced? {printed == forced}")
        if ratio is not None:
            print(f"  forced g / s = {ratio}")

    for n in (2, 5):
        print(f"\nfinal identity n={n}: transcribed {check_final_identity(n).holds}, "
              f"forced {check_final_identity_derived(n).holds}")


if __name__ == "__main__":
    main()
