# End-to-end fine-spectrum survey of an asymptotically periodic operator.
#
# Builds the period-2 operator whose diagonal tends to (1, 1/2) and whose
# subdiagonal tends to (2, 3), then prints the full report: eigenvalue
# candidates, two-band certificate, sampled boundary classifications and
# the resulting descriptions of sigma_p, sigma_r and sigma_c.

from __future__ import annotations

from finespec import ClassifyOptions, ExponentPair, boundary_points, spectrum_report

from two_band_margin_scan import build_spec


def main() -> None:
    spec = build_spec()
    exp = ExponentPair(2.0)
    opts = ClassifyOptions()

    report = spectrum_report(spec, exp, opts)
    for line in report.lines():
        print(line)

    print()
    print("bisected boundary samples (ray marching from the limit centroid)")
    for lam in boundary_points(spec, count=6, tol=opts.boundary_tol):
        print(f"  {lam.real:+.12f} {lam.imag:+.12f}j")


if __name__ == "__main__":
    main()
