"""Fine-spectrum partition with Goldberg tags.

The decision table composes the zone of lambda under the limit symbol with
diagonal matching and the truncated series verdicts:

    Interior                    -> Residual / C1uC2
    Exterior, no match          -> Regular
    Exterior, matched a_s       -> Point / C3
    Boundary, matched a_s       -> tail series: Converges -> Point,
                                   Diverges -> Residual, else Unresolved
    Boundary, no match          -> adjoint series: Converges -> Residual,
                                   Diverges -> Continuous, else Unresolved

For period two, a verified coefficient inequality certifies divergence of
the adjoint series everywhere on the boundary away from the diagonal
values, so it upgrades the one abstaining case (boundary, no match,
inconclusive) to Continuous.  Unresolved is a value, not an error; the
classifier never guesses past its numerical evidence.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import NearLimitAmbiguous
from .sequences import ExponentPair, SequenceSpec, norm_bound, terms_upto
from .spectral_sets import (
    RegionVerdict,
    TwoBandReport,
    region_indicator,
    series_adjoint,
    series_tail_point,
    symbol_ratio,
    two_band_check,
)
from .verdicts import (
    CONVERGES,
    DIVERGES,
    GOLDBERG_FOR_PART,
    PART_CONTINUOUS,
    PART_POINT,
    PART_REGULAR,
    PART_RESIDUAL,
    PART_UNRESOLVED,
    ZONE_BOUNDARY,
    ZONE_EXTERIOR,
    ZONE_INTERIOR,
    SeriesVerdict,
)


@dataclass(frozen=True)
class ClassifyOptions:
    """Tunable tolerances and scan budgets for classification."""

    boundary_tol: float = 1e-9
    match_tol: float = 1e-12
    k_max: int = 100_000
    series_terms: int = 5000
    divergence_threshold: float = 1e12
    two_band_fast_path: bool = True
    two_band_scan: tuple = (1, 2000)
    parallelism: int = 1


@dataclass(frozen=True)
class Evidence:
    """Trace of the decision: zone, diagonal match, series verdicts."""

    region: RegionVerdict
    matched_index: Optional[int] = None
    tail_series: Optional[SeriesVerdict] = None
    adjoint_series: Optional[SeriesVerdict] = None
    note: str = ""

    @property
    def zone(self) -> str:
        return self.region.zone

    @property
    def phi_abs(self) -> float:
        return self.region.phi_abs


@dataclass(frozen=True)
class SpectrumClassification:
    lam: complex
    part: str
    goldberg: str
    evidence: Evidence


@dataclass(frozen=True)
class GridCell:
    lam: complex
    classification: SpectrumClassification
    phi_abs: float


@dataclass(frozen=True, eq=False)
class GridScanResult:
    """Row-major scan (imaginary axis outer, real axis inner)."""

    window: tuple
    resolution: tuple
    cells: tuple


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """Structured summary of the partition for one coefficient spec."""

    a_limits: tuple
    b_limits: tuple
    p: float
    q: float
    R: float
    s2_members: tuple
    s3_candidates: tuple
    two_band: Optional[TwoBandReport]
    boundary_samples: tuple
    boundary_parts: tuple
    sigma_line: str
    sigma_p_line: str
    sigma_r_line: str
    sigma_c_line: str

    def lines(self) -> list:
        """Render the report as plain text lines."""
        out = [
            f"a limits = {tuple(self.a_limits)}",
            f"b limits = {tuple(self.b_limits)}",
            f"p = {self.p:g}, q = {self.q:g}",
            f"norm bound R = {self.R:g}",
        ]
        if self.s2_members:
            items = ", ".join(f"a_{k} = {v:g} ({s.state if s else 'ambiguous'})" for k, v, s in self.s2_members)
            out.append(f"exterior diagonal values: {items}")
        else:
            out.append("exterior diagonal values: none")
        if self.s3_candidates:
            items = ", ".join(f"a_{k} = {v:g} ({s.state if s else 'ambiguous'})" for k, v, s in self.s3_candidates)
            out.append(f"boundary diagonal values: {items}")
        else:
            out.append("boundary diagonal values: none")
        if self.two_band is None:
            out.append("two-band condition: not applicable (period != 2)")
        elif self.two_band.holds:
            out.append(
                f"two-band condition: holds from k = {self.two_band.holds_from} "
                f"on [{self.two_band.k_from}, {self.two_band.scanned_to}] with R = {self.two_band.R_used:g}"
            )
        else:
            out.append(
                f"two-band condition: does not hold on [{self.two_band.k_from}, {self.two_band.scanned_to}]"
            )
        parts = ", ".join(self.boundary_parts) if self.boundary_parts else "none"
        out.append(f"boundary samples ({len(self.boundary_samples)} rays): {parts}")
        out.append(f"sigma = {self.sigma_line}")
        out.append(f"sigma_p = {self.sigma_p_line}")
        out.append(f"sigma_r = {self.sigma_r_line}")
        out.append(f"sigma_c = {self.sigma_c_line}")
        return out


def eigen_index(
    spec: SequenceSpec,
    lam: complex,
    k_max: int = 100_000,
    match_tol: float = 1e-12,
) -> Optional[int]:
    """Largest k <= k_max with |a_k - lambda| <= match_tol*(1 + |lambda|).

    Returns None when no diagonal entry matches.  Raises
    NearLimitAmbiguous when lambda sits within the match tolerance of a
    residue-class limit without an exact match: the diagonal approaches
    that limit forever, so a finite scan cannot refute a later match.
    """
    if k_max < spec.m:
        raise ValueError("k_max must be at least the period m")
    lam = complex(lam)
    tol = match_tol * (1.0 + abs(lam))
    if abs(lam.imag) > tol:
        return None
    arr = terms_upto(spec, "a", int(k_max))
    hits = np.nonzero(np.abs(arr - lam.real) <= tol)[0]
    if hits.size:
        return int(hits[-1]) + 1
    prox = min(abs(lam - p) for p in spec.a_limits)
    if prox <= tol:
        raise NearLimitAmbiguous(
            f"lambda = {lam} is within {tol:g} of a residue-class limit but matches no scanned a_k"
        )
    return None


@lru_cache(maxsize=16)
def _two_band_holds(spec: SequenceSpec, k_from: int, k_to: int) -> bool:
    return two_band_check(spec, k_from=k_from, k_to=k_to).holds


def classify(
    spec: SequenceSpec,
    lam: complex,
    exp: ExponentPair,
    opts: Optional[ClassifyOptions] = None,
) -> SpectrumClassification:
    """Classify one point of the plane into the fine-spectrum partition."""
    if opts is None:
        opts = ClassifyOptions()
    lam = complex(lam)
    region = region_indicator(spec, lam, opts.boundary_tol)

    if region.zone == ZONE_INTERIOR:
        ev = Evidence(region=region, note="interior")
        return SpectrumClassification(lam, PART_RESIDUAL, GOLDBERG_FOR_PART[PART_RESIDUAL], ev)

    try:
        s = eigen_index(spec, lam, k_max=opts.k_max, match_tol=opts.match_tol)
    except NearLimitAmbiguous:
        ev = Evidence(region=region, note="ambiguous match near a limit")
        return SpectrumClassification(lam, PART_UNRESOLVED, GOLDBERG_FOR_PART[PART_UNRESOLVED], ev)

    if region.zone == ZONE_EXTERIOR:
        if s is None:
            ev = Evidence(region=region, note="exterior, no diagonal match")
            return SpectrumClassification(lam, PART_REGULAR, GOLDBERG_FOR_PART[PART_REGULAR], ev)
        ev = Evidence(region=region, matched_index=s, note=f"matched a_{s}")
        return SpectrumClassification(lam, PART_POINT, GOLDBERG_FOR_PART[PART_POINT], ev)

    # boundary zone
    if s is not None:
        verdict = series_tail_point(
            spec, s, s, exp, terms=opts.series_terms,
            boundary_tol=opts.boundary_tol, divergence_threshold=opts.divergence_threshold,
        )
        ev = Evidence(
            region=region, matched_index=s, tail_series=verdict,
            note=f"matched a_{s}, tail series {verdict.state.lower()}",
        )
        if verdict.state == CONVERGES:
            part = PART_POINT
        elif verdict.state == DIVERGES:
            part = PART_RESIDUAL
        else:
            part = PART_UNRESOLVED
        return SpectrumClassification(lam, part, GOLDBERG_FOR_PART[part], ev)

    verdict = series_adjoint(
        spec, lam, exp, terms=opts.series_terms,
        boundary_tol=opts.boundary_tol, divergence_threshold=opts.divergence_threshold,
    )
    ev = Evidence(
        region=region, adjoint_series=verdict,
        note=f"boundary, adjoint series {verdict.state.lower()}",
    )
    if verdict.state == CONVERGES:
        part = PART_RESIDUAL
    elif verdict.state == DIVERGES:
        part = PART_CONTINUOUS
    else:
        part = PART_UNRESOLVED
        if (
            opts.two_band_fast_path
            and spec.m == 2
            and _two_band_holds(spec, int(opts.two_band_scan[0]), int(opts.two_band_scan[1]))
        ):
            part = PART_CONTINUOUS
            ev = replace(ev, note="boundary, two-band certificate")
    return SpectrumClassification(lam, part, GOLDBERG_FOR_PART[part], ev)


def _grid_row(args) -> list:
    spec, exp, opts, im, re_values = args
    return [classify(spec, complex(re, im), exp, opts) for re in re_values]


def classify_grid(
    spec: SequenceSpec,
    window: tuple,
    resolution: tuple,
    exp: ExponentPair,
    opts: Optional[ClassifyOptions] = None,
) -> GridScanResult:
    """Classify every node of a rectangular grid.

    Nodes are laid out row-major with the imaginary coordinate outermost,
    ascending, and the real coordinate inner, ascending.  The result is
    deterministic and independent of the worker count.
    """
    if opts is None:
        opts = ClassifyOptions()
    re_min, re_max, im_min, im_max = (float(v) for v in window)
    nx, ny = (int(v) for v in resolution)
    if nx < 2 or ny < 2:
        raise ValueError("resolution must be at least 2x2")
    re_values = tuple(float(v) for v in np.linspace(re_min, re_max, nx))
    im_values = tuple(float(v) for v in np.linspace(im_min, im_max, ny))

    jobs = [(spec, exp, opts, im, re_values) for im in im_values]
    workers = max(1, int(opts.parallelism))
    if workers == 1:
        rows = [_grid_row(job) for job in jobs]
    else:
        chunk = max(1, ny // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_grid_row, jobs, chunksize=chunk))

    cells = tuple(
        GridCell(lam=c.lam, classification=c, phi_abs=c.evidence.phi_abs)
        for row in rows
        for c in row
    )
    return GridScanResult(window=(re_min, re_max, im_min, im_max), resolution=(nx, ny), cells=cells)


def boundary_points(spec: SequenceSpec, count: int = 10, tol: float = 1e-9) -> tuple:
    """Numeric solutions of |Phi(lambda)| = 1 along rays from the centroid
    of the diagonal limits (or from the first limit if the centroid is not
    interior).  Each root is bracketed by outward marching, then bisected
    to a few ulps (well below 1e-12 relative), so the returned points sit
    on the level set to near machine precision."""
    if count < 1:
        raise ValueError("count must be positive")
    origin = complex(sum(spec.a_limits) / len(spec.a_limits))
    if abs(symbol_ratio(spec, origin)) >= 1.0 - tol:
        origin = complex(spec.a_limits[0])

    points = []
    for t in range(count):
        theta = 2.0 * np.pi * t / count
        direction = complex(np.cos(theta), np.sin(theta))
        hi = 1.0
        for _ in range(200):
            if abs(symbol_ratio(spec, origin + hi * direction)) > 1.0:
                break
            hi *= 2.0
        else:
            raise RuntimeError("failed to bracket the boundary along a ray")
        lo = 0.0
        while hi - lo > 4e-15 * (1.0 + hi):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            if abs(symbol_ratio(spec, origin + mid * direction)) < 1.0:
                lo = mid
            else:
                hi = mid
        points.append(origin + 0.5 * (lo + hi) * direction)
    return tuple(points)


def spectrum_report(
    spec: SequenceSpec,
    exp: ExponentPair,
    opts: Optional[ClassifyOptions] = None,
    boundary_count: int = 10,
) -> SpectrumReport:
    """Survey the partition: limits, exterior/boundary diagonal values with
    series verdicts, the two-band certificate when the period is two, and
    classified boundary samples, condensed into one summary line per part."""
    if opts is None:
        opts = ClassifyOptions()
    arr = terms_upto(spec, "a", opts.k_max)
    num = np.ones(arr.shape, dtype=complex)
    for p_lim in spec.a_limits:
        num *= arr - p_lim
    den = 1.0
    for q_lim in spec.b_limits:
        den *= q_lim
    phi = np.abs(num) / abs(den)

    def survey(mask) -> tuple:
        entries = []
        for v in np.unique(arr[mask]):
            try:
                s = eigen_index(spec, complex(v), k_max=opts.k_max, match_tol=opts.match_tol)
            except NearLimitAmbiguous:
                entries.append((0, float(v), None))
                continue
            verdict = series_tail_point(
                spec, s, s, exp, terms=opts.series_terms,
                boundary_tol=opts.boundary_tol, divergence_threshold=opts.divergence_threshold,
            )
            entries.append((s, float(v), verdict))
        return tuple(entries)

    s2_members = survey(phi > 1.0 + opts.boundary_tol)
    s3_candidates = survey(np.abs(phi - 1.0) <= opts.boundary_tol)

    two_band = None
    if spec.m == 2:
        two_band = two_band_check(spec, k_from=int(opts.two_band_scan[0]), k_to=int(opts.two_band_scan[1]))

    samples = boundary_points(spec, count=boundary_count, tol=opts.boundary_tol)
    sample_parts = tuple(classify(spec, z, exp, opts).part for z in samples)

    point_values = [(k, v) for k, v, s in s2_members if s is not None]
    point_values += [(k, v) for k, v, s in s3_candidates if s is not None and s.state == CONVERGES]
    residual_extras = [(k, v) for k, v, s in s3_candidates if s is not None and s.state == DIVERGES]

    sigma_line = "closed region |Phi| <= 1"
    if s2_members:
        sigma_line += " plus {" + ", ".join(f"a_{k} = {v:g}" for k, v, _ in s2_members) + "}"
    if point_values:
        sigma_p_line = "{" + ", ".join(f"a_{k} = {v:g}" for k, v in point_values) + "}"
    else:
        sigma_p_line = "empty"
    sigma_r_line = "interior"
    if residual_extras:
        sigma_r_line += " plus {" + ", ".join(f"a_{k} = {v:g}" for k, v in residual_extras) + "}"
    n_bad = sum(1 for part in sample_parts if part != PART_CONTINUOUS)
    if n_bad == 0:
        sigma_c_line = "boundary minus {a_k}"
    elif any(part == PART_UNRESOLVED for part in sample_parts):
        sigma_c_line = f"boundary (unresolved at {n_bad} of {len(sample_parts)} samples)"
    else:
        sigma_c_line = f"boundary minus {{a_k}} except {n_bad} of {len(sample_parts)} samples"

    return SpectrumReport(
        a_limits=tuple(spec.a_limits),
        b_limits=tuple(spec.b_limits),
        p=exp.p,
        q=exp.q,
        R=norm_bound(spec),
        s2_members=s2_members,
        s3_candidates=s3_candidates,
        two_band=two_band,
        boundary_samples=samples,
        boundary_parts=sample_parts,
        sigma_line=sigma_line,
        sigma_p_line=sigma_p_line,
        sigma_r_line=sigma_r_line,
        sigma_c_line=sigma_c_line,
    )
