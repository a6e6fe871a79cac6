"""Command-line front end.

Commands: classify, grid, report, twoband, probe.  Exit codes:

    0  success
    2  configuration problems (parse/validation errors, wrong period)
    3  classification abstained (Unresolved)
    4  output I/O failure
    5  two-band inequality does not hold on the scanned range
    6  singular pivot (lambda collides with a diagonal entry)

Grid CSV is emitted row-major (im ascending, then re ascending) with floats
rendered to 17 significant digits, so output is byte-identical across runs
and worker counts.  FINESPEC_THREADS overrides the configured parallelism.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from .classify import SpectrumClassification, classify, classify_grid, spectrum_report
from .config import RunConfig, load_config
from .errors import ConfigError, FinespecError, SingularPivot, WrongPeriod
from .oracles import resolvent_growth_probe
from .spectral_sets import two_band_check
from .verdicts import PART_UNRESOLVED

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNRESOLVED = 3
EXIT_IO = 4
EXIT_NOT_HOLDING = 5
EXIT_SINGULAR = 6


def _fmt17(x: float) -> str:
    return format(float(x), ".17g")


def evidence_summary(result: SpectrumClassification) -> str:
    """Compact trace string, e.g. 'boundary;adjoint-series:Diverges'."""
    ev = result.evidence
    parts = [ev.zone.lower()]
    if "ambiguous" in ev.note:
        parts.append("near-limit-ambiguous")
    if ev.matched_index is not None:
        parts.append(f"matched:a_{ev.matched_index}")
    if ev.tail_series is not None:
        parts.append(f"tail-series:{ev.tail_series.state}")
    if ev.adjoint_series is not None:
        parts.append(f"adjoint-series:{ev.adjoint_series.state}")
    if "two-band" in ev.note:
        parts.append("two-band:holds")
    return ";".join(parts)


def _parallelism(config: RunConfig) -> int:
    env = os.environ.get("FINESPEC_THREADS")
    if env is None:
        return config.parallelism
    try:
        value = int(env)
    except ValueError:
        raise ConfigError(f"FINESPEC_THREADS must be an integer, got {env!r}")
    if value < 1:
        raise ConfigError("FINESPEC_THREADS must be positive")
    return value


def cmd_classify(config: RunConfig, lam: complex) -> int:
    result = classify(config.spec, lam, config.exp, config.options(_parallelism(config)))
    print(
        f"{result.lam.real!r}, {result.lam.imag!r}, {result.evidence.phi_abs!r}, "
        f"{result.part}, {result.goldberg}, {evidence_summary(result)}"
    )
    return EXIT_UNRESOLVED if result.part == PART_UNRESOLVED else EXIT_OK


def cmd_grid(config: RunConfig, window, resolution, out_path) -> int:
    grid = classify_grid(
        config.spec, window, resolution, config.exp, config.options(_parallelism(config))
    )
    lines = ["re,im,phi_abs,zone,part,goldberg"]
    for cell in grid.cells:
        cls = cell.classification
        lines.append(
            f"{_fmt17(cell.lam.real)},{_fmt17(cell.lam.imag)},{_fmt17(cell.phi_abs)},"
            f"{cls.evidence.zone},{cls.part},{cls.goldberg}"
        )
    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as e:
        print(f"error: cannot write {out_path}: {e.strerror or e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_report(config: RunConfig, out_path=None) -> int:
    report = spectrum_report(config.spec, config.exp, config.options(_parallelism(config)))
    text = "\n".join(report.lines()) + "\n"
    if out_path is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        print(f"error: cannot write {out_path}: {e.strerror or e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_twoband(config: RunConfig, R: Optional[float], k_from: int, k_to: int) -> int:
    report = two_band_check(config.spec, R=R, k_from=k_from, k_to=k_to)
    print(f"R = {report.R_used!r}")
    print(f"scanned k in [{report.k_from}, {report.scanned_to}]")
    if report.holds_from is None:
        print("holds_from = none (inequality fails at the end of the scan)")
    else:
        print(f"holds_from = {report.holds_from}")
    print("k, lhs, rhs, margin")
    for idx, k in enumerate(report.ks.tolist()):
        print(
            f"{k}, {_fmt17(report.lhs[idx])}, {_fmt17(report.rhs[idx])}, "
            f"{_fmt17(report.margin[idx])}"
        )
    return EXIT_OK if report.holds_from is not None else EXIT_NOT_HOLDING


def cmd_probe(config: RunConfig, lam: complex, n: int) -> int:
    result = resolvent_growth_probe(config.spec, lam, n)
    print(
        f"{result.lam.real!r}, {result.lam.imag!r}, {result.n}, "
        f"{result.inv_norm_estimate!r}, {result.iterations}, {result.converged}"
    )
    return EXIT_OK


def _complex_pair(text: str) -> complex:
    try:
        re_part, im_part = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    return complex(re_part, im_part)


def _float_quad(text: str):
    values = text.split(",")
    if len(values) != 4:
        raise argparse.ArgumentTypeError(f"expected a,b,c,d, got {text!r}")
    try:
        return tuple(float(v) for v in values)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected four numbers, got {text!r}")


def _int_pair(text: str):
    try:
        first, second = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,M, got {text!r}")
    return first, second


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finespec",
        description="fine spectrum of lower-bidiagonal difference operators on l^p",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(p):
        p.add_argument("--config", required=True, help="YAML run configuration")
        return p

    p = with_config(sub.add_parser("classify", help="classify one point"))
    p.add_argument("--lambda", dest="lam", type=_complex_pair, required=True, metavar="RE,IM")

    p = with_config(sub.add_parser("grid", help="classify a rectangular grid to CSV"))
    p.add_argument("--window", type=_float_quad, required=True, metavar="a,b,c,d")
    p.add_argument("--res", type=_int_pair, required=True, metavar="NX,NY")
    p.add_argument("--out", required=True, help="CSV output path")

    p = with_config(sub.add_parser("report", help="spectrum survey report"))
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = with_config(sub.add_parser("twoband", help="period-two boundary inequality scan"))
    p.add_argument("--R", type=float, default=None, help="norm bound (default computed)")
    p.add_argument("--k-range", type=_int_pair, default=(1, 10_000), metavar="FROM,TO")

    p = with_config(sub.add_parser("probe", help="finite-section resolvent growth probe"))
    p.add_argument("--lambda", dest="lam", type=_complex_pair, required=True, metavar="RE,IM")
    p.add_argument("--n", type=int, default=200, help="section size")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except (ConfigError, FinespecError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command == "classify":
            return cmd_classify(config, args.lam)
        if args.command == "grid":
            return cmd_grid(config, args.window, args.res, args.out)
        if args.command == "report":
            return cmd_report(config, args.out)
        if args.command == "twoband":
            k_from, k_to = args.k_range
            return cmd_twoband(config, args.R, k_from, k_to)
        if args.command == "probe":
            return cmd_probe(config, args.lam, args.n)
    except (WrongPeriod, ConfigError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SingularPivot as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SINGULAR
    raise AssertionError(f"unhandled command {args.command}")


def entry() -> None:
    sys.exit(main())
