# Fine spectrum of the constant-coefficient operator (a = 0, b = 1).
#
# The symbol is Phi(lambda) = lambda, so the closed unit disk is the
# spectrum, circle points are Continuous (B2), interior points are
# Residual (C1uC2), and nothing is an eigenvalue.

from __future__ import annotations

from collections import Counter

from finespec import ClassifyOptions, ExponentPair, classify, classify_grid, make_periodic


def main() -> None:
    spec = make_periodic([0.0], [1.0])
    exp = ExponentPair(2.0)
    opts = ClassifyOptions()

    print("probe points")
    for lam in (0.5 + 0.0j, 1.0 + 0.0j, 0.6 + 0.8j, 2.0 + 0.0j):
        res = classify(spec, lam, exp, opts)
        print(
            f"  lambda = {lam}: {res.part} / {res.goldberg}"
            f"  (|Phi| = {res.evidence.phi_abs:.6f}, {res.evidence.note})"
        )

    print()
    print("grid scan of [-2, 2]^2 at 41 x 41")
    grid = classify_grid(spec, (-2.0, 2.0, -2.0, 2.0), (41, 41), exp, opts)
    counts = Counter(cell.classification.part for cell in grid.cells)
    for part in sorted(counts):
        print(f"  {part:>10s}: {counts[part]} nodes")

    circle = [c for c in grid.cells if abs(abs(c.lam) - 1.0) < 1e-12]
    print(f"  nodes landing exactly on |lambda| = 1: {len(circle)}"
          f" (all {set(c.classification.part for c in circle)})")


if __name__ == "__main__":
    main()
