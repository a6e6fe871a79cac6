# Resolvent machinery and the numerical cross-checks built on top of it.
#
# 1. solve (D - lambda) x = y by forward substitution and verify the residual
# 2. compare solve columns against the closed-form inverse entries
# 3. bound resolvent column / row norms with certified tails
# 4. estimate the operator norm of the resolvent by power iteration, inside
#    and outside the spectrum, and cross-check a series verdict against the
#    compensated partial-sum oracle

from __future__ import annotations

import numpy as np

from finespec import (
    column_norm,
    make_periodic,
    partial_sum_oracle,
    resolvent_entry,
    resolvent_growth_probe,
    resolvent_solve,
    row_norm,
)


def main() -> None:
    spec = make_periodic([0.0], [1.0])
    rng = np.random.default_rng(7)

    lam = 2.0 + 0.0j
    n = 200
    y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x = resolvent_solve(spec, lam, y)

    # residual of the defining equation, first row has no subdiagonal term
    a = np.zeros(n)
    r = np.empty(n, dtype=complex)
    r[0] = (a[0] - lam) * x[0] - y[0]
    r[1:] = x[:-1] + (a[1:] - lam) * x[1:] - y[1:]
    print(f"forward-substitution residual: {np.max(np.abs(r)):.3e}")

    e1 = np.zeros(n, dtype=complex)
    e1[0] = 1.0
    col = resolvent_solve(spec, lam, e1)
    ent = np.array([resolvent_entry(spec, lam, i + 1, 1) for i in range(8)])
    print(f"solve vs closed-form entries (first 8): {np.max(np.abs(col[:8] - ent)):.3e}")

    print()
    cn = column_norm(spec, lam, 1, terms=60)
    print(f"column 1 norm at lambda = 2: partial {cn.partial_sum:.15f}, "
          f"tail bound {cn.tail_bound:.3e}, verdict {cn.verdict.state}")
    print(f"row 3 norm at lambda = 2: {row_norm(spec, lam, 3).value} (exact 0.875)")

    print()
    for lam_p, where in ((2.0 + 0.0j, "outside"), (0.5 + 0.0j, "inside")):
        probe = resolvent_growth_probe(spec, lam_p, n=120)
        print(f"power-iteration estimate at lambda = {lam_p} ({where}): "
              f"{probe.inv_norm_estimate:.6g} after {probe.iterations} iterations")

    print()
    # geometric column tail, same terms the norm bound sums
    terms = (0.5 ** np.arange(1, 61)).tolist()
    partials, slope, verdict = partial_sum_oracle(terms, K=60)
    print(f"oracle on the geometric column tail: {verdict.state}, "
          f"partial {partials[-1]:.12f}, growth slope {slope:.3e}")


if __name__ == "__main__":
    main()
