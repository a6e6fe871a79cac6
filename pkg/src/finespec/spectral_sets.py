"""Limit-symbol regions, membership sets, series tests, two-band condition.

The residue-class limits (p_i) and (q_i) define the limit symbol ratio

    Phi(lambda) = prod_i (lambda - p_i) / prod_i q_i .

|Phi| < 1, = 1, > 1 split the plane into Interior, Boundary and Exterior
zones (up to a boundary tolerance).  Six membership sets drive the fine
classification:

    S1  closed region |Phi| <= 1
    S2  diagonal values a_k outside S1
    S3  boundary diagonal values whose forward tail series (exponent p)
        converges at the last occurrence
    S4  open interior
    S5  boundary curve
    S6  boundary points whose adjoint product series (exponent q) converges

Truncated series receive an honest three-way verdict; Inconclusive is an
abstention, not a guess.  For period two, a checkable inequality on the
coefficients certifies that the boundary carries continuous spectrum away
from the diagonal values; its margins are evaluated in exact rational
arithmetic because the residue-limit cancellations are far below float
precision at large k.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import RepeatedValue, WrongPeriod
from .sequences import (
    ExponentPair,
    SequenceSpec,
    norm_bound,
    term_exact,
    terms_upto,
)
from .verdicts import (
    CONVERGES,
    DIVERGES,
    INCONCLUSIVE,
    MEMBER_IN,
    MEMBER_OUT,
    MEMBER_UNRESOLVED,
    ZONE_BOUNDARY,
    ZONE_EXTERIOR,
    ZONE_INTERIOR,
    SeriesVerdict,
)

_LOG_TINY = math.log(1e-300)


@dataclass(frozen=True)
class RegionVerdict:
    """Zone of a point relative to the limit-symbol curve |Phi| = 1."""

    phi_abs: float
    zone: str
    boundary_tol: float


@dataclass(frozen=True, eq=False)
class TwoBandReport:
    """Scan result for the period-two boundary inequality.

    holds_from is the smallest scanned index N such that the inequality
    lhs >= rhs holds at every scanned k >= N (None when even the final
    index fails).  Equality counts as holding.
    """

    R_used: float
    k_from: int
    scanned_to: int
    holds_from: Optional[int]
    ks: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    margin: np.ndarray

    @property
    def holds(self) -> bool:
        return self.holds_from is not None

    @property
    def margin_at(self) -> list:
        """Table of (k, lhs - rhs) pairs over the scanned range."""
        return list(zip(self.ks.tolist(), self.margin.tolist()))


def symbol_ratio(spec: SequenceSpec, lam: complex) -> complex:
    """Limit symbol ratio Phi(lambda) built from the residue-class limits."""
    num = complex(1.0)
    for p in spec.a_limits:
        num *= lam - p
    den = 1.0
    for q in spec.b_limits:
        den *= q
    return num / den


def region_indicator(spec: SequenceSpec, lam: complex, boundary_tol: float = 1e-9) -> RegionVerdict:
    """Classify lambda as Interior, Boundary or Exterior up to boundary_tol."""
    if not (0.0 < boundary_tol < 0.5):
        raise ValueError("boundary_tol must lie in (0, 0.5)")
    phi = abs(symbol_ratio(spec, lam))
    if phi < 1.0 - boundary_tol:
        zone = ZONE_INTERIOR
    elif phi > 1.0 + boundary_tol:
        zone = ZONE_EXTERIOR
    else:
        zone = ZONE_BOUNDARY
    return RegionVerdict(phi_abs=phi, zone=zone, boundary_tol=boundary_tol)


def _window_verdict(log_terms: np.ndarray, m: int, threshold: float) -> SeriesVerdict:
    """Heuristic verdict for a truncated positive series given log magnitudes.

    Diverges when partial sums pass the threshold or the per-period term
    magnitudes are nondecreasing across the trailing three periods (and not
    vanishingly small); Converges when the trailing-window tail increment is
    negligible against the partial sum; otherwise Inconclusive.
    """
    T = log_terms.size
    with np.errstate(over="ignore"):
        u = np.exp(log_terms)
    finite = bool(np.all(np.isfinite(u)))
    partial = float(math.fsum(u)) if finite else math.inf
    gamma = None
    diffs = log_terms[m:] - log_terms[:-m] if T > m else np.empty(0)
    if diffs.size:
        gamma = float(np.exp(np.max(diffs[-3 * m :])))
    if not finite or partial > threshold:
        return SeriesVerdict(DIVERGES, T, partial, gamma)
    if diffs.size >= 3 * m:
        w = diffs[-3 * m :]
        if np.all(w >= -1e-12) and log_terms[-1] > _LOG_TINY:
            return SeriesVerdict(DIVERGES, T, partial, gamma)
    window = min(500, max(1, T // 2))
    tail = float(math.fsum(u[-window:]))
    if tail < 1e-10 * (1.0 + partial):
        return SeriesVerdict(CONVERGES, T, partial, gamma)
    return SeriesVerdict(INCONCLUSIVE, T, partial, gamma)


def series_adjoint(
    spec: SequenceSpec,
    lam: complex,
    exp: ExponentPair,
    terms: int = 5000,
    boundary_tol: float = 1e-9,
    divergence_threshold: float = 1e12,
) -> SeriesVerdict:
    """Verdict on the adjoint eigenvector series sum_k |f_k|^q with
    f_k = prod_{t<k} (lambda - a_t)/b_t.

    An exact hit lambda = a_t makes the products terminate, so the series
    has finitely many nonzero terms and Converges regardless of zone.
    Otherwise the Interior/Exterior fast paths apply (Converges/Diverges);
    on the Boundary the truncated-series heuristic decides.
    """
    T = int(terms)
    q = exp.q
    a = terms_upto(spec, "a", T)
    b = terms_upto(spec, "b", T)
    factors = lam - a
    zero_pos = np.nonzero(factors == 0)[0]
    if zero_pos.size:
        t0 = int(zero_pos[0])  # factor index, 0-based; terms k <= t0+1 survive
        with np.errstate(divide="ignore"):
            logf = np.cumsum(np.log(np.abs(factors[:t0])) - np.log(np.abs(b[:t0])))
        partial = float(math.fsum(np.exp(q * logf)))
        return SeriesVerdict(CONVERGES, T, partial, None)

    zone = region_indicator(spec, lam, boundary_tol).zone
    if zone != ZONE_BOUNDARY:
        phi = abs(symbol_ratio(spec, lam))
        rate = phi**q
        state = CONVERGES if zone == ZONE_INTERIOR else DIVERGES
        return SeriesVerdict(state, 0, 0.0, rate)

    logf = np.cumsum(np.log(np.abs(factors)) - np.log(np.abs(b)))
    return _window_verdict(q * logf, spec.m, divergence_threshold)


def series_tail_point(
    spec: SequenceSpec,
    j: int,
    s: int,
    exp: ExponentPair,
    terms: int = 5000,
    boundary_tol: float = 1e-9,
    divergence_threshold: float = 1e12,
) -> SeriesVerdict:
    """Verdict on the forward tail series at the eigenvalue candidate a_j,

        sum_{i>=s} | b_s ... b_i / ((a_{s+1} - a_j) ... (a_{i+1} - a_j)) |^p,

    where s >= j is the last occurrence of the value a_j.  Raises
    RepeatedValue if the value recurs among the scanned indices past s.
    Interior candidates Diverge and Exterior candidates Converge by the
    geometric comparison; Boundary candidates go through the
    truncated-series heuristic.
    """
    if s < j:
        raise ValueError("last occurrence s must satisfy s >= j")
    T = int(terms)
    from .sequences import term  # local alias, avoids a wide import line

    aj = term(spec, "a", j)
    a_s = term(spec, "a", s)
    if abs(a_s - aj) > 1e-12 * (1.0 + abs(aj)):
        raise ValueError(f"a_{s} != a_{j}; s must point at an occurrence of the same value")

    a = terms_upto(spec, "a", s + T + 1)
    denom = a[s : s + T] - aj  # a_{s+1} .. a_{s+T}
    repeats = np.nonzero(denom == 0)[0]
    if repeats.size:
        n = s + 1 + int(repeats[0])
        raise RepeatedValue(f"a_{n} repeats the value a_{j} past the claimed last occurrence")

    zone = region_indicator(spec, aj, boundary_tol).zone
    if zone != ZONE_BOUNDARY:
        phi = abs(symbol_ratio(spec, aj))
        rate = phi ** (-exp.p) if phi > 0 else math.inf
        state = CONVERGES if zone == ZONE_EXTERIOR else DIVERGES
        return SeriesVerdict(state, 0, 0.0, rate)

    b = terms_upto(spec, "b", s + T - 1)[s - 1 : s + T - 1]  # b_s .. b_{s+T-1}
    logs = np.cumsum(np.log(np.abs(b)) - np.log(np.abs(denom)))
    return _window_verdict(exp.p * logs, spec.m, divergence_threshold)


def membership(
    spec: SequenceSpec,
    lam: complex,
    set_id: str,
    exp: ExponentPair,
    boundary_tol: float = 1e-9,
    match_tol: float = 1e-12,
    k_max: int = 100_000,
    series_terms: int = 5000,
    divergence_threshold: float = 1e12,
) -> str:
    """Three-valued membership of lambda in one of the sets S1..S6.

    Unresolved propagates Inconclusive series verdicts and ambiguous
    near-limit matching; it never guesses.
    """
    from .classify import eigen_index  # late import, fine-spectrum layers above
    from .errors import NearLimitAmbiguous

    set_id = set_id.upper()
    if set_id not in ("S1", "S2", "S3", "S4", "S5", "S6"):
        raise ValueError(f"unknown set id {set_id!r}")
    zone = region_indicator(spec, lam, boundary_tol).zone

    if set_id == "S1":
        return MEMBER_IN if zone in (ZONE_INTERIOR, ZONE_BOUNDARY) else MEMBER_OUT
    if set_id == "S4":
        return MEMBER_IN if zone == ZONE_INTERIOR else MEMBER_OUT
    if set_id == "S5":
        return MEMBER_IN if zone == ZONE_BOUNDARY else MEMBER_OUT

    if set_id == "S2":
        if zone != ZONE_EXTERIOR:
            return MEMBER_OUT
        try:
            s = eigen_index(spec, lam, k_max=k_max, match_tol=match_tol)
        except NearLimitAmbiguous:
            return MEMBER_UNRESOLVED
        return MEMBER_IN if s is not None else MEMBER_OUT

    if set_id == "S3":
        if zone != ZONE_BOUNDARY:
            return MEMBER_OUT
        try:
            s = eigen_index(spec, lam, k_max=k_max, match_tol=match_tol)
        except NearLimitAmbiguous:
            return MEMBER_UNRESOLVED
        if s is None:
            return MEMBER_OUT
        verdict = series_tail_point(
            spec, s, s, exp, terms=series_terms,
            boundary_tol=boundary_tol, divergence_threshold=divergence_threshold,
        )
        if verdict.state == CONVERGES:
            return MEMBER_IN
        return MEMBER_OUT if verdict.state == DIVERGES else MEMBER_UNRESOLVED

    # S6
    if zone != ZONE_BOUNDARY:
        return MEMBER_OUT
    verdict = series_adjoint(
        spec, lam, exp, terms=series_terms,
        boundary_tol=boundary_tol, divergence_threshold=divergence_threshold,
    )
    if verdict.state == CONVERGES:
        return MEMBER_IN
    return MEMBER_OUT if verdict.state == DIVERGES else MEMBER_UNRESOLVED


def two_band_check(
    spec: SequenceSpec,
    R: Optional[float] = None,
    k_from: int = 1,
    k_to: int = 10_000,
) -> TwoBandReport:
    """Scan the period-two inequality lhs(k) >= rhs(k) over k in [k_from, k_to]:

        lhs = |q1 q2| - |b_k b_{k+1}|
        rhs = 2 R (|p_i - a_k| + |p_j - a_{k+1}|)

    with (p_i, p_j) matched to the residue classes of positions k and k+1.
    R defaults to norm_bound(spec) and a smaller R triggers a warning.  All
    comparisons use exact rational arithmetic; the reported tables are the
    correctly rounded float values.
    """
    if spec.m != 2:
        raise WrongPeriod("the two-band inequality requires period m = 2")
    if k_from < 1 or k_to < k_from:
        raise ValueError("need 1 <= k_from <= k_to")
    nb = norm_bound(spec)
    if R is None:
        R = nb
    elif R < nb:
        warnings.warn(f"R = {R} is below the operator norm bound {nb}", stacklevel=2)

    r_frac = Fraction(float(R))
    p_frac = [Fraction(v) for v in spec.a_limits]
    absq = abs(Fraction(spec.b_limits[0]) * Fraction(spec.b_limits[1]))

    count = k_to - k_from + 1
    a_ex = [term_exact(spec, "a", k) for k in range(k_from, k_to + 2)]
    b_ex = [term_exact(spec, "b", k) for k in range(k_from, k_to + 2)]

    ks = np.arange(k_from, k_to + 1, dtype=np.int64)
    lhs_f = np.empty(count)
    rhs_f = np.empty(count)
    margin_f = np.empty(count)
    last_fail = None
    for idx in range(count):
        k = k_from + idx
        cls_k = (k - 1) % 2
        lhs = absq - abs(b_ex[idx] * b_ex[idx + 1])
        rhs = 2 * r_frac * (abs(p_frac[cls_k] - a_ex[idx]) + abs(p_frac[1 - cls_k] - a_ex[idx + 1]))
        margin = lhs - rhs
        if margin < 0:
            last_fail = k
        lhs_f[idx] = float(lhs)
        rhs_f[idx] = float(rhs)
        margin_f[idx] = float(margin)

    if last_fail is None:
        holds_from = k_from
    elif last_fail < k_to:
        holds_from = last_fail + 1
    else:
        holds_from = None
    return TwoBandReport(
        R_used=float(R),
        k_from=k_from,
        scanned_to=k_to,
        holds_from=holds_from,
        ks=ks,
        lhs=lhs_f,
        rhs=rhs_f,
        margin=margin_f,
    )
