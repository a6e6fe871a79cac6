"""Lower-bidiagonal operator realisation and resolvent computations.

The operator acts on complex sequences by (D x)_1 = a_1 x_1 and
(D x)_k = b_{k-1} x_{k-1} + a_k x_k.  For lambda off the diagonal the
resolvent (D - lambda I)^{-1} is again lower triangular with entries

    0                                       for i < j,
    1 / (a_i - lambda)                      for i = j,
    (-1)^{i-j} b_j ... b_{i-1}
      / prod_{t=j..i} (a_t - lambda)        for i > j.

Column sums of entry magnitudes are infinite series estimated with a
geometric tail bound; row sums are exact finite sums.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SingularPivot
from .sequences import ExponentPair, SequenceSpec, terms_upto
from .verdicts import CONVERGES, DIVERGES, INCONCLUSIVE, SeriesVerdict

# switch to log-magnitude + phase accumulation for long entry products
_DIRECT_PRODUCT_LIMIT = 50

# direct magnitude recurrences are trusted while they stay inside this range
_SAFE_MAG_HI = 1e280
_SAFE_MAG_LO = 1e-280


@dataclass(frozen=True)
class FiniteSection:
    """Leading n x n principal section: diagonal and first subdiagonal."""

    n: int
    diag: np.ndarray
    subdiag: np.ndarray


@dataclass(frozen=True)
class ResolventColumnEstimate:
    """Truncated column-k l1 norm of the resolvent with optional tail bound.

    When tail_bound is attached the true column norm lies in
    [partial_sum, partial_sum + tail_bound].
    """

    k: int
    partial_sum: float
    tail_bound: Optional[float]
    verdict: SeriesVerdict


@dataclass(frozen=True)
class ResolventRowValue:
    """Exact row-beta l1 norm of the resolvent (finite sum of beta terms)."""

    beta: int
    value: float


def pivot_floor(lam: complex) -> float:
    """Smallest pivot magnitude accepted by the triangular solver."""
    return 1e-13 * (1.0 + abs(lam))


def apply(spec: SequenceSpec, x) -> np.ndarray:
    """Apply the operator to a finite vector, returning a vector of equal length."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    if n == 0:
        return x.copy()
    y = terms_upto(spec, "a", n) * x
    if n > 1:
        y[1:] += terms_upto(spec, "b", n - 1) * x[:-1]
    return y


def finite_section(spec: SequenceSpec, n: int) -> FiniteSection:
    """Leading n x n section of the operator matrix."""
    if n < 1:
        raise ValueError("section size must be >= 1")
    diag = terms_upto(spec, "a", n).copy()
    subdiag = terms_upto(spec, "b", n - 1).copy() if n > 1 else np.empty(0)
    return FiniteSection(n=n, diag=diag, subdiag=subdiag)


def resolvent_entry(spec: SequenceSpec, lam: complex, i: int, j: int) -> complex:
    """Entry (i, j) of (D - lambda I)^{-1}, 1-based indices.

    Raises SingularPivot if some a_t - lambda vanishes exactly for t in [j, i].
    """
    if i < 1 or j < 1:
        raise ValueError("indices are 1-based")
    if i < j:
        return 0j
    a = terms_upto(spec, "a", i)
    pivots = a[j - 1 : i] - lam
    if np.any(pivots == 0):
        t = j + int(np.nonzero(pivots == 0)[0][0])
        raise SingularPivot(f"a_{t} - lambda = 0")
    if i == j:
        return 1.0 / complex(pivots[0])
    b = terms_upto(spec, "b", i - 1)[j - 1 : i - 1]
    if i - j <= _DIRECT_PRODUCT_LIMIT:
        value = 1.0 / complex(pivots[0])
        for t in range(1, i - j + 1):
            value *= -complex(b[t - 1]) / complex(pivots[t])
        return value
    logmag = float(np.sum(np.log(np.abs(b))) - np.sum(np.log(np.abs(pivots))))
    phase = math.pi * (i - j) + math.pi * int(np.sum(b < 0)) - float(np.sum(np.angle(pivots)))
    mag = math.exp(logmag) if logmag < 709.0 else math.inf
    return cmath.rect(mag, phase % (2.0 * math.pi))


def resolvent_solve(spec: SequenceSpec, lam: complex, y) -> np.ndarray:
    """Solve (D - lambda I) x = y by forward substitution.

    Raises SingularPivot when some |a_k - lambda| falls below the pivot floor
    1e-13 * (1 + |lambda|).
    """
    y = np.asarray(y, dtype=np.complex128)
    n = y.shape[0]
    if n == 0:
        return y.copy()
    pivots = terms_upto(spec, "a", n) - lam
    floor = pivot_floor(lam)
    mags = np.abs(pivots)
    if np.min(mags) <= floor:
        t = int(np.argmin(mags)) + 1
        raise SingularPivot(f"|a_{t} - lambda| = {mags[t - 1]:.3e} <= pivot floor {floor:.3e}")
    b = terms_upto(spec, "b", n - 1) if n > 1 else np.empty(0)
    x = np.empty(n, dtype=np.complex128)
    x[0] = y[0] / pivots[0]
    for t in range(1, n):
        x[t] = (y[t] - b[t - 1] * x[t - 1]) / pivots[t]
    return x


def adjoint_solve(spec: SequenceSpec, lam: complex, y) -> np.ndarray:
    """Solve (D - lambda I)* x = y by back substitution with conjugates."""
    y = np.asarray(y, dtype=np.complex128)
    n = y.shape[0]
    if n == 0:
        return y.copy()
    pivots = np.conj(terms_upto(spec, "a", n) - lam)
    floor = pivot_floor(lam)
    mags = np.abs(pivots)
    if np.min(mags) <= floor:
        t = int(np.argmin(mags)) + 1
        raise SingularPivot(f"|a_{t} - lambda| = {mags[t - 1]:.3e} <= pivot floor {floor:.3e}")
    b = terms_upto(spec, "b", n - 1) if n > 1 else np.empty(0)
    x = np.empty(n, dtype=np.complex128)
    x[n - 1] = y[n - 1] / pivots[n - 1]
    for t in range(n - 2, -1, -1):
        x[t] = (y[t] - b[t] * x[t + 1]) / pivots[t]
    return x


def _column_term_logs(spec, lam, k, T):
    """Log magnitudes of |entry(i, k)| for i = k .. k+T, plus the raw factors."""
    a = terms_upto(spec, "a", k + T)
    pivots = a[k - 1 : k + T] - lam
    if np.any(pivots == 0):
        t = k + int(np.nonzero(pivots == 0)[0][0])
        raise SingularPivot(f"a_{t} - lambda = 0")
    b = terms_upto(spec, "b", k + T - 1)[k - 1 : k + T - 1] if T > 0 else np.empty(0)
    logpiv = np.log(np.abs(pivots))
    logs = np.empty(T + 1)
    logs[0] = -logpiv[0]
    if T > 0:
        logs[1:] = logs[0] + np.cumsum(np.log(np.abs(b)) - logpiv[1:])
    return logs, np.abs(pivots), np.abs(b)


def column_norm(
    spec: SequenceSpec,
    lam: complex,
    k: int,
    terms: int = 5000,
    exp: Optional[ExponentPair] = None,
    divergence_threshold: float = 1e12,
) -> ResolventColumnEstimate:
    """Partial l1 norm of resolvent column k over rows k .. k+terms.

    The estimate is exponent independent (the exp argument is accepted for
    interface uniformity).  When the m-step term ratio over the trailing
    window stays below one, a geometric tail bound is attached and the
    verdict is Converges; partial sums beyond divergence_threshold give
    Diverges; otherwise Inconclusive.
    """
    if k < 1:
        raise ValueError("column index is 1-based")
    T = int(terms)
    logs, absp, absb = _column_term_logs(spec, lam, k, T)
    # direct magnitude recurrence, exact for well-scaled cases
    with np.errstate(over="ignore", under="ignore"):
        u = np.empty(T + 1)
        u[0] = 1.0 / absp[0]
        if T > 0:
            u[1:] = u[0] * np.cumprod(absb / absp[1:])
    if not np.all(np.isfinite(u)) or (T > 0 and np.any(u == 0.0)):
        with np.errstate(over="ignore"):
            u = np.exp(logs)
    partial = float(math.fsum(u)) if np.all(np.isfinite(u)) else math.inf

    m = spec.m
    gamma = None
    diffs = logs[m:] - logs[:-m]
    if diffs.size:
        window = diffs[-3 * m :]
        gamma = float(np.exp(np.max(window)))

    tail = None
    if gamma is not None and gamma < 1.0 and math.isfinite(partial):
        tail = float(math.fsum(u[-m:])) * gamma / (1.0 - gamma)
        state = CONVERGES
    elif not math.isfinite(partial) or partial > divergence_threshold:
        state = DIVERGES
    else:
        state = INCONCLUSIVE
    verdict = SeriesVerdict(state, T + 1, partial, gamma)
    return ResolventColumnEstimate(k=k, partial_sum=partial, tail_bound=tail, verdict=verdict)


def row_norm(spec: SequenceSpec, lam: complex, beta: int) -> ResolventRowValue:
    """Exact l1 norm of resolvent row beta (a finite sum of beta terms)."""
    if beta < 1:
        raise ValueError("row index is 1-based")
    a = terms_upto(spec, "a", beta)
    pivots = np.abs(a - lam)
    if np.any(pivots == 0.0):
        t = 1 + int(np.nonzero(pivots == 0.0)[0][0])
        raise SingularPivot(f"a_{t} - lambda = 0")
    if beta == 1:
        return ResolventRowValue(1, 1.0 / float(pivots[0]))
    absb = np.abs(terms_upto(spec, "b", beta - 1))
    # w_j = |entry(beta, j)| built backwards from the diagonal term
    with np.errstate(over="ignore", under="ignore"):
        w = np.empty(beta)
        w[beta - 1] = 1.0 / pivots[beta - 1]
        ratios = absb / pivots[:-1]
        w[:-1] = w[beta - 1] * np.cumprod(ratios[::-1])[::-1]
    if np.all(np.isfinite(w)) and not np.any(w == 0.0):
        return ResolventRowValue(beta, float(math.fsum(w)))
    # fall back to log magnitudes with max factoring
    logs = np.concatenate([np.log(absb), [0.0]])[::-1].cumsum()[::-1] - (
        np.log(pivots)[::-1].cumsum()[::-1]
    )
    peak = float(np.max(logs))
    if peak > 700.0:
        return ResolventRowValue(beta, math.inf)
    return ResolventRowValue(beta, float(math.exp(peak) * np.sum(np.exp(logs - peak))))
