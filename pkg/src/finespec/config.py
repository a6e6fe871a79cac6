"""Run configuration: YAML schema, strict validation, defaults.

Schema (all unknown keys rejected):

    spec:
      mode: periodic | asymptotic
      a_classes:
        - limit: 1.0
          perturbation: {kind: coeff-over-k-squared, coeff: -1.0}
      b_classes:
        - limit: 2.0
          perturbation: {kind: coeff-over-k, coeff: -1.0}
      overrides:                  # asymptotic mode only
        - {which: a, k: 1, value: 5.0}
    p: 2.0
    tolerances:
      boundary_tol: 1e-9
      match_tol: 1e-12
      divergence_threshold: 1e12
    scan:
      k_max: 100000
      series_terms: 5000
      parallelism: 4
      seed: 42

Periodic mode takes the class limits as the exact cycled values; it forbids
perturbations and overrides.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from numbers import Real
from typing import Optional

import yaml

from .classify import ClassifyOptions
from .errors import ParseError, ValidationError
from .sequences import (
    MODE_ASYMPTOTIC,
    MODE_PERIODIC,
    PERTURBATION_KINDS,
    CoefficientClass,
    ExponentPair,
    Override,
    Perturbation,
    SequenceSpec,
    ZERO_PERTURBATION,
    make_asymptotic,
    make_periodic,
)


@dataclass(frozen=True)
class RunConfig:
    spec: SequenceSpec
    exp: ExponentPair
    boundary_tol: float = 1e-9
    match_tol: float = 1e-12
    k_max: int = 100_000
    series_terms: int = 5000
    divergence_threshold: float = 1e12
    parallelism: int = 1
    seed: int = 42

    def options(self, parallelism: Optional[int] = None) -> ClassifyOptions:
        """Classification options carrying this config's knobs."""
        return ClassifyOptions(
            boundary_tol=self.boundary_tol,
            match_tol=self.match_tol,
            k_max=self.k_max,
            series_terms=self.series_terms,
            divergence_threshold=self.divergence_threshold,
            parallelism=self.parallelism if parallelism is None else int(parallelism),
        )


def _reject_unknown(node: dict, allowed: set, where: str) -> None:
    for key in node:
        if key not in allowed:
            raise ValidationError(f"unknown key {key!r} in {where}")


def _require_mapping(node, where: str) -> dict:
    if not isinstance(node, dict):
        raise ValidationError(f"{where} must be a mapping")
    return node


def _number(node, field: str) -> float:
    if isinstance(node, bool) or not isinstance(node, Real):
        raise ValidationError("expected a number", field=field)
    return float(node)


def _positive_int(node, field: str) -> int:
    if isinstance(node, bool) or not isinstance(node, int) or node < 1:
        raise ValidationError("expected a positive integer", field=field)
    return node


def _build_class(entry, where: str) -> CoefficientClass:
    entry = _require_mapping(entry, where)
    _reject_unknown(entry, {"limit", "perturbation"}, where)
    if "limit" not in entry:
        raise ValidationError("missing limit", field=where)
    limit = _number(entry["limit"], f"{where}.limit")
    pert = ZERO_PERTURBATION
    if "perturbation" in entry and entry["perturbation"] is not None:
        node = _require_mapping(entry["perturbation"], f"{where}.perturbation")
        _reject_unknown(node, {"kind", "coeff"}, f"{where}.perturbation")
        kind = node.get("kind", "constant-zero")
        if kind not in PERTURBATION_KINDS:
            raise ValidationError(
                f"kind must be one of {sorted(PERTURBATION_KINDS)}",
                field=f"{where}.perturbation.kind",
            )
        coeff = _number(node.get("coeff", 0.0), f"{where}.perturbation.coeff")
        pert = Perturbation(kind, coeff)
    return CoefficientClass(limit=limit, perturbation=pert)


def _build_spec(node) -> SequenceSpec:
    node = _require_mapping(node, "spec")
    _reject_unknown(node, {"mode", "a_classes", "b_classes", "overrides"}, "spec")
    mode = node.get("mode")
    if mode not in (MODE_PERIODIC, MODE_ASYMPTOTIC):
        raise ValidationError("mode must be 'periodic' or 'asymptotic'", field="spec.mode")
    for which in ("a_classes", "b_classes"):
        if which not in node or not isinstance(node[which], list) or not node[which]:
            raise ValidationError("expected a non-empty list", field=f"spec.{which}")
    a_classes = tuple(
        _build_class(e, f"spec.a_classes[{i}]") for i, e in enumerate(node["a_classes"])
    )
    b_classes = tuple(
        _build_class(e, f"spec.b_classes[{i}]") for i, e in enumerate(node["b_classes"])
    )

    overrides = []
    for i, e in enumerate(node.get("overrides") or []):
        where = f"spec.overrides[{i}]"
        e = _require_mapping(e, where)
        _reject_unknown(e, {"which", "k", "value"}, where)
        which = str(e.get("which", "")).lower()
        if which not in ("a", "b"):
            raise ValidationError("which must be 'a' or 'b'", field=f"{where}.which")
        k = _positive_int(e.get("k"), f"{where}.k")
        value = _number(e.get("value"), f"{where}.value")
        overrides.append(Override(which=which, k=k, value=value))

    if mode == MODE_PERIODIC:
        if overrides:
            raise ValidationError("periodic mode forbids overrides", field="spec.overrides")
        for where, classes in (("a_classes", a_classes), ("b_classes", b_classes)):
            for i, cls in enumerate(classes):
                if cls.perturbation != ZERO_PERTURBATION and cls.perturbation.coeff != 0.0:
                    raise ValidationError(
                        "periodic mode forbids perturbations",
                        field=f"spec.{where}[{i}].perturbation",
                    )
        return make_periodic([c.limit for c in a_classes], [c.limit for c in b_classes])
    return make_asymptotic(a_classes, b_classes, tuple(overrides))


def load_config(path) -> RunConfig:
    """Parse and validate a YAML run configuration."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read config {path}: {e.strerror or e}")
    try:
        data = yaml.safe_load(raw)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        raise ParseError(
            e.problem or "malformed YAML",
            line=None if mark is None else mark.line + 1,
            column=None if mark is None else mark.column + 1,
        )
    except yaml.YAMLError as e:
        raise ParseError(f"malformed YAML: {e}")

    data = _require_mapping(data, "top level")
    _reject_unknown(data, {"spec", "p", "tolerances", "scan"}, "top level")
    for required in ("spec", "p"):
        if required not in data:
            raise ValidationError("missing required key", field=required)

    p = _number(data["p"], "p")
    if not 1.0 < p < float("inf"):
        raise ValidationError("p must be in (1, inf)", field="p")
    spec = _build_spec(data["spec"])

    kwargs = {}
    tol = _require_mapping(data.get("tolerances") or {}, "tolerances")
    _reject_unknown(tol, {"boundary_tol", "match_tol", "divergence_threshold"}, "tolerances")
    for key in tol:
        value = _number(tol[key], f"tolerances.{key}")
        if value <= 0.0:
            raise ValidationError("must be positive", field=f"tolerances.{key}")
        kwargs[key] = value

    scan = _require_mapping(data.get("scan") or {}, "scan")
    _reject_unknown(scan, {"k_max", "series_terms", "parallelism", "seed"}, "scan")
    for key in ("k_max", "series_terms", "parallelism"):
        if key in scan:
            kwargs[key] = _positive_int(scan[key], f"scan.{key}")
    if "seed" in scan:
        seed = scan["seed"]
        if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
            raise ValidationError("expected a nonnegative integer", field="scan.seed")
        kwargs["seed"] = seed
    kwargs.setdefault("parallelism", os.cpu_count() or 1)

    return RunConfig(spec=spec, exp=ExponentPair(p), **kwargs)
