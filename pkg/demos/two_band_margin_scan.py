# Two-band decay certificate for an asymptotically 2-periodic operator.
#
# For period 2 the boundary classification can be settled by a distance
# inequality between consecutive diagonal entries and the limit values.
# This script scans the inequality margin in exact rational arithmetic
# and reports the index from which it holds for good.

from __future__ import annotations

from finespec import Perturbation, make_asymptotic, two_band_check


def build_spec():
    # a_k -> 1 on odd k and 1/2 on even k like 1/k^2 from below,
    # b_k -> 2 and 3 like 1/k from below.
    inv_k = Perturbation("coeff-over-k", -1.0)
    inv_k2 = Perturbation("coeff-over-k-squared", -1.0)
    return make_asymptotic(
        [(1.0, inv_k2), (0.5, inv_k2)],
        [(2.0, inv_k), (3.0, inv_k)],
    )


def main() -> None:
    spec = build_spec()
    report = two_band_check(spec, R=4.0, k_from=1, k_to=2000)

    print(f"R = {report.R_used}, scan range = [{report.k_from}, {report.scanned_to}]")
    print()
    print("  k      lhs           rhs           margin")
    for i in range(min(8, len(report.ks))):
        k = report.ks[i]
        print(f"  {k:<5d}  {report.lhs[i]:<12.6g}  {report.rhs[i]:<12.6g}"
              f"  {report.margin[i]:+.6g}")
    print("  ...")
    print()

    if report.holds_from is None:
        print("certificate does not hold anywhere in the scanned range")
    else:
        print(f"certificate holds for every k >= {report.holds_from}")
        # the first margins after the switch point stay positive
        tail = report.margin_at[report.holds_from - report.k_from:]
        print(f"smallest margin past the switch point: {min(m for _, m in tail):+.6g}")


if __name__ == "__main__":
    main()
