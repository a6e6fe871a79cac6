"""Independent numerical cross-checks for the classification pipeline.

Three oracles, deliberately built from different primitives than the code
they audit: a brute-force compensated partial-sum analyzer, a finite-section
power-iteration probe for resolvent growth, and a structural audit of grid
classifications (partition, Goldberg tags, conjugate symmetry, zone rules,
and interior-versus-exterior probe separation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice
from typing import Optional

import numpy as np

from .bidiagonal import adjoint_solve, resolvent_solve
from .errors import SingularPivot
from .sequences import SequenceSpec
from .verdicts import (
    CONVERGES,
    DIVERGES,
    GOLDBERG_FOR_PART,
    INCONCLUSIVE,
    PART_CONTINUOUS,
    PART_REGULAR,
    PART_RESIDUAL,
    PARTS,
    ZONE_EXTERIOR,
    ZONE_INTERIOR,
    SeriesVerdict,
)

_PROBE_CAP = 1e300


@dataclass(frozen=True)
class ProbeResult:
    """Power-iteration estimate of the finite-section resolvent norm."""

    n: int
    lam: complex
    inv_norm_estimate: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class Violation:
    kind: str
    lam: complex
    detail: str


def partial_sum_oracle(term_source, K: int, divergence_threshold: float = 1e12):
    """Brute-force analysis of sum |t_k| for k <= K.

    term_source is either a callable k -> t_k (1-based) or an iterable of
    terms.  Returns (partial sums, growth_slope, SeriesVerdict) where the
    slope is the least-squares slope of log partial sums over the trailing
    max(10, K/5) window.  Summation is compensated so the oracle's own
    rounding cannot mask method error.
    """
    K = int(K)
    if K < 10:
        raise ValueError("K must be at least 10")
    if callable(term_source):
        terms = [term_source(k) for k in range(1, K + 1)]
    else:
        terms = list(islice(iter(term_source), K))
        if len(terms) < K:
            raise ValueError(f"term source yielded only {len(terms)} of {K} terms")
    mags = np.abs(np.asarray(terms, dtype=complex)).astype(np.float64)

    # Neumaier running sums; once terms overflow the compensation turns
    # nan, which downstream reads as divergence
    partials = np.empty(K)
    acc = 0.0
    comp = 0.0
    with np.errstate(invalid="ignore"):
        for i, t in enumerate(mags):
            s = acc + t
            if abs(acc) >= abs(t):
                comp += (acc - s) + t
            else:
                comp += (t - s) + acc
            acc = s
            partials[i] = acc + comp
    total = partials[-1]

    window = max(10, K // 5)
    tail = partials[-window:]
    idx = np.arange(K - window, K, dtype=np.float64)
    pos = (tail > 0) & np.isfinite(tail)
    if int(np.count_nonzero(pos)) >= 2:
        slope = float(np.polyfit(idx[pos], np.log(tail[pos]), 1)[0])
    else:
        slope = 0.0

    ratio = None
    w_mags = mags[-window:]
    if 0 < w_mags[0] < math.inf and 0 < w_mags[-1] < math.inf:
        ratio = float((w_mags[-1] / w_mags[0]) ** (1.0 / (window - 1)))

    if not math.isfinite(total) or total > divergence_threshold:
        state = DIVERGES
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            step = w_mags[1:] / w_mags[:-1]
        if w_mags[-1] > 1e-300 and bool(np.all(step >= 1.0 - 1e-12)):
            state = DIVERGES
        elif float(math.fsum(w_mags)) < 1e-10 * (1.0 + total):
            state = CONVERGES
        else:
            state = INCONCLUSIVE
    return partials, slope, SeriesVerdict(state, K, float(total), ratio)


def resolvent_growth_probe(spec: SequenceSpec, lam: complex, n: int, iters: int = 200) -> ProbeResult:
    """Estimate the spectral norm of the inverted finite section at lambda.

    Power iteration on M*M with M y = resolvent_solve(y) and M* y the
    conjugated back substitution; deterministic all-ones start.  Estimates
    are capped at 1e300; saturation counts as converged since the norm is
    then unbounded for every practical purpose.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = complex(lam)
    v = np.ones(n, dtype=complex) / math.sqrt(n)
    est = 0.0
    prev = None
    converged = False
    iterations = 0
    for it in range(1, int(iters) + 1):
        iterations = it
        w = resolvent_solve(spec, lam, v)
        est = float(np.linalg.norm(w))
        if not math.isfinite(est) or est > _PROBE_CAP:
            est = _PROBE_CAP
            converged = True
            break
        u = adjoint_solve(spec, lam, w)
        norm_u = float(np.linalg.norm(u))
        if not math.isfinite(norm_u) or norm_u == 0.0:
            converged = True
            break
        if prev is not None and abs(est - prev) <= 1e-6 * est:
            converged = True
            break
        prev = est
        v = u / norm_u
    return ProbeResult(n=n, lam=lam, inv_norm_estimate=est, iterations=iterations, converged=converged)


def _probe_separation(spec, cells, probe_n, probe_count, iters):
    interior = [c for c in cells if c.classification.evidence.zone == ZONE_INTERIOR]
    exterior = [c for c in cells if c.classification.evidence.zone == ZONE_EXTERIOR]
    if len(interior) < probe_count or len(exterior) < probe_count:
        return []
    key = lambda c: (c.phi_abs, c.lam.real, c.lam.imag)
    deepest_in = sorted(interior, key=key)[:probe_count]
    deepest_out = sorted(exterior, key=key, reverse=True)[:probe_count]

    def estimates(sample):
        out = []
        for c in sample:
            try:
                out.append(resolvent_growth_probe(spec, c.lam, probe_n, iters).inv_norm_estimate)
            except SingularPivot:
                continue
        return out

    in_est = estimates(deepest_in)
    out_est = estimates(deepest_out)
    if not in_est or not out_est:
        return []
    if min(in_est) >= 10.0 * max(out_est):
        return []
    return [
        Violation(
            kind="probe-separation",
            lam=deepest_in[0].lam,
            detail=(
                f"min interior probe {min(in_est):.6g} < 10x max exterior probe {max(out_est):.6g}"
            ),
        )
    ]


def consistency_audit(
    spec: SequenceSpec,
    grid,
    probe_n: int = 120,
    probe_count: int = 5,
    probe_iters: int = 100,
) -> list:
    """Audit a grid scan; returns a list of violations, empty when clean.

    Checks: (a) every node carries exactly one known part, (b) the Goldberg
    tag matches the part, (c) mirrored nodes agree when the grid is
    symmetric about the real axis, (d) Interior nodes are never
    Regular/Continuous and Exterior nodes never Residual/Continuous,
    (e) resolvent probes at the deepest interior nodes exceed the deepest
    exterior ones by a factor of 10.
    """
    violations = []
    nx, ny = grid.resolution
    cells = grid.cells
    for cell in cells:
        cls = cell.classification
        if cls.part not in PARTS:
            violations.append(Violation("partition", cell.lam, f"unknown part {cls.part!r}"))
            continue
        if cls.goldberg != GOLDBERG_FOR_PART[cls.part]:
            violations.append(
                Violation("goldberg", cell.lam, f"part {cls.part} tagged {cls.goldberg}")
            )
        zone = cls.evidence.zone
        if zone == ZONE_INTERIOR and cls.part in (PART_REGULAR, PART_CONTINUOUS):
            violations.append(
                Violation("zone-consistency", cell.lam, f"interior node classified {cls.part}")
            )
        elif zone == ZONE_EXTERIOR and cls.part in (PART_RESIDUAL, PART_CONTINUOUS):
            violations.append(
                Violation("zone-consistency", cell.lam, f"exterior node classified {cls.part}")
            )

    re_min, re_max, im_min, im_max = grid.window
    if abs(im_min + im_max) <= 1e-12 * (1.0 + abs(im_max)):
        for iy in range(ny // 2):
            for ix in range(nx):
                upper = cells[(ny - 1 - iy) * nx + ix].classification
                lower = cells[iy * nx + ix].classification
                if upper.part != lower.part:
                    violations.append(
                        Violation(
                            "conjugate-symmetry",
                            lower.lam,
                            f"{lower.part} below axis vs {upper.part} above",
                        )
                    )

    violations.extend(_probe_separation(spec, cells, probe_n, probe_count, probe_iters))
    return violations
