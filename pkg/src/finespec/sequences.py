"""Coefficient sequence model.

A lower-bidiagonal operator is described by two real sequences: the diagonal
(a_k) and the subdiagonal (b_k), k >= 1.  Both are organised in residue
classes modulo a period m.  Each class carries a limit value and an analytic
perturbation, so position k evaluates to

    limit[class(k)] + perturbation[class(k)](k),   class(k) = (k - 1) mod m.

Periodic sequences are the special case of zero perturbations.  A finite set
of prefix overrides may replace individual entries.  Specs are immutable and
hashable; all evaluation helpers are pure functions, safe under concurrent
use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import EmptyPeriod, ZeroB, ZeroQ

CONSTANT_ZERO = "constant-zero"
COEFF_OVER_K = "coeff-over-k"
COEFF_OVER_K_SQUARED = "coeff-over-k-squared"
PERTURBATION_KINDS = (CONSTANT_ZERO, COEFF_OVER_K, COEFF_OVER_K_SQUARED)

MODE_PERIODIC = "periodic"
MODE_ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class Perturbation:
    """Decay term added to a residue-class limit: 0, coeff/k, or coeff/k^2."""

    kind: str = CONSTANT_ZERO
    coeff: float = 0.0

    def __post_init__(self):
        if self.kind not in PERTURBATION_KINDS:
            raise ValueError(f"unknown perturbation kind {self.kind!r}")

    def evaluate(self, k: int) -> float:
        if self.kind == CONSTANT_ZERO:
            return 0.0
        if self.kind == COEFF_OVER_K:
            return self.coeff / k
        return self.coeff / (k * k)

    def evaluate_exact(self, k: int) -> Fraction:
        """Same value as evaluate(), as an exact rational."""
        if self.kind == CONSTANT_ZERO:
            return Fraction(0)
        c = Fraction(self.coeff)
        return c / k if self.kind == COEFF_OVER_K else c / (k * k)

    def zero_candidates(self, limit: float) -> tuple[int, ...]:
        """Integers near the unique real k where limit + self(k) vanishes."""
        if self.kind == CONSTANT_ZERO or self.coeff == 0.0 or limit == 0.0:
            return ()
        ratio = -self.coeff / limit
        if ratio <= 0.0:
            return ()
        d = 1 if self.kind == COEFF_OVER_K else 2
        root = ratio ** (1.0 / d)
        lo = max(1, math.floor(root) - 1)
        return tuple(range(lo, math.ceil(root) + 2))


ZERO_PERTURBATION = Perturbation()


@dataclass(frozen=True)
class CoefficientClass:
    """One residue class: limit value plus perturbation."""

    limit: float
    perturbation: Perturbation = ZERO_PERTURBATION


@dataclass(frozen=True)
class Override:
    """Explicit replacement of a single entry: which in {'a','b'}, 1-based k."""

    which: str
    k: int
    value: float


@dataclass(frozen=True)
class ExponentPair:
    """Holder exponent p in (1, inf) together with its conjugate q."""

    p: float

    def __post_init__(self):
        if not (1.0 < self.p < math.inf):
            raise ValueError(f"p must be in (1, inf), got {self.p}")

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)


@dataclass(frozen=True)
class SequenceSpec:
    """Immutable description of the diagonal/subdiagonal coefficient pair."""

    m: int
    a_classes: tuple[CoefficientClass, ...]
    b_classes: tuple[CoefficientClass, ...]
    prefix_overrides: tuple[Override, ...] = ()
    mode: str = MODE_ASYMPTOTIC

    @property
    def a_limits(self) -> tuple[float, ...]:
        return tuple(c.limit for c in self.a_classes)

    @property
    def b_limits(self) -> tuple[float, ...]:
        return tuple(c.limit for c in self.b_classes)


def _as_class(entry) -> CoefficientClass:
    if isinstance(entry, CoefficientClass):
        return entry
    if isinstance(entry, (tuple, list)):
        limit, pert = entry
        return CoefficientClass(float(limit), pert)
    return CoefficientClass(float(entry))


def _override_tuple(overrides) -> tuple[Override, ...]:
    out = []
    for ov in overrides:
        if not isinstance(ov, Override):
            ov = Override(str(ov[0]).lower(), int(ov[1]), float(ov[2]))
        if ov.which not in ("a", "b"):
            raise ValueError(f"override target must be 'a' or 'b', got {ov.which!r}")
        if ov.k < 1:
            raise ValueError("override index must be >= 1")
        out.append(ov)
    return tuple(out)


def _validate_b_nonzero(spec: SequenceSpec) -> None:
    # Overrides are checked one by one.  The analytic family can only vanish
    # where the perturbation cancels the class limit, so it is enough to test
    # the integers around that root plus an explicit prefix k <= 10*m.
    # term() keeps a runtime backstop for anything beyond this certificate.
    for ov in spec.prefix_overrides:
        if ov.which == "b" and ov.value == 0.0:
            raise ZeroB(f"override sets b_{ov.k} = 0")
    checks = set(range(1, 10 * spec.m + 1))
    for i, cls in enumerate(spec.b_classes):
        for k in cls.perturbation.zero_candidates(cls.limit):
            if (k - 1) % spec.m == i:
                checks.add(k)
    for k in sorted(checks):
        term(spec, "b", k)  # raises ZeroB if the entry vanishes


def make_periodic(a_values, b_values) -> SequenceSpec:
    """Build a purely periodic spec from one period of a and b values."""
    a_values = tuple(float(v) for v in a_values)
    b_values = tuple(float(v) for v in b_values)
    if len(a_values) == 0 or len(b_values) == 0:
        raise EmptyPeriod("period must contain at least one entry")
    if len(a_values) != len(b_values):
        raise ValueError("a and b periods must have equal length")
    if any(v == 0.0 for v in b_values):
        raise ZeroB("periodic b values must be nonzero")
    spec = SequenceSpec(
        m=len(a_values),
        a_classes=tuple(CoefficientClass(v) for v in a_values),
        b_classes=tuple(CoefficientClass(v) for v in b_values),
        mode=MODE_PERIODIC,
    )
    return spec


def make_asymptotic(a_classes, b_classes, prefix_overrides=()) -> SequenceSpec:
    """Build an asymptotically periodic spec from residue-class descriptions.

    a_classes / b_classes are sequences of CoefficientClass (or (limit,
    Perturbation) pairs).  prefix_overrides replaces single entries, e.g.
    Override('a', 1, 5.0).  Raises ZeroQ if a subdiagonal limit is zero and
    ZeroB if any realised b_k would be zero.
    """
    a_classes = tuple(_as_class(c) for c in a_classes)
    b_classes = tuple(_as_class(c) for c in b_classes)
    if len(a_classes) == 0 or len(b_classes) == 0:
        raise EmptyPeriod("need at least one residue class")
    if len(a_classes) != len(b_classes):
        raise ValueError("a and b must have the same number of residue classes")
    if any(c.limit == 0.0 for c in b_classes):
        raise ZeroQ("subdiagonal limits q_i must be nonzero")
    spec = SequenceSpec(
        m=len(a_classes),
        a_classes=a_classes,
        b_classes=b_classes,
        prefix_overrides=_override_tuple(prefix_overrides),
        mode=MODE_ASYMPTOTIC,
    )
    _validate_b_nonzero(spec)
    return spec


@lru_cache(maxsize=None)
def _override_map(spec: SequenceSpec, which: str) -> dict:
    return {ov.k: ov.value for ov in spec.prefix_overrides if ov.which == which}


def term(spec: SequenceSpec, which: str, k: int) -> float:
    """Value of a_k or b_k (which in {'a','b'}, k >= 1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    which = which.lower()
    ov = _override_map(spec, which)
    if k in ov:
        value = ov[k]
    else:
        cls = (spec.a_classes if which == "a" else spec.b_classes)[(k - 1) % spec.m]
        value = cls.limit + cls.perturbation.evaluate(k)
    if which == "b" and value == 0.0:
        raise ZeroB(f"b_{k} evaluates to zero")
    return value


def term_exact(spec: SequenceSpec, which: str, k: int) -> Fraction:
    """Exact rational value of a_k or b_k, for cancellation-free arithmetic."""
    which = which.lower()
    ov = _override_map(spec, which)
    if k in ov:
        return Fraction(ov[k])
    cls = (spec.a_classes if which == "a" else spec.b_classes)[(k - 1) % spec.m]
    return Fraction(cls.limit) + cls.perturbation.evaluate_exact(k)


@lru_cache(maxsize=64)
def terms_array(spec: SequenceSpec, which: str, k_max: int) -> np.ndarray:
    """Vector of the first k_max terms (read-only float64 array)."""
    which = which.lower()
    classes = spec.a_classes if which == "a" else spec.b_classes
    k = np.arange(1, k_max + 1, dtype=np.float64)
    cls_idx = (np.arange(k_max) % spec.m)
    out = np.empty(k_max, dtype=np.float64)
    for i, cls in enumerate(classes):
        sel = cls_idx == i
        pert = cls.perturbation
        if pert.kind == CONSTANT_ZERO or pert.coeff == 0.0:
            out[sel] = cls.limit
        elif pert.kind == COEFF_OVER_K:
            out[sel] = cls.limit + pert.coeff / k[sel]
        else:
            out[sel] = cls.limit + pert.coeff / (k[sel] * k[sel])
    for pos, value in _override_map(spec, which).items():
        if pos <= k_max:
            out[pos - 1] = value
    if which == "b" and np.any(out == 0.0):
        bad = int(np.nonzero(out == 0.0)[0][0]) + 1
        raise ZeroB(f"b_{bad} evaluates to zero")
    out.setflags(write=False)
    return out


def terms_upto(spec: SequenceSpec, which: str, n: int) -> np.ndarray:
    """First n terms as a read-only view of a power-of-two cached block."""
    if n <= 0:
        return _EMPTY
    size = max(8, 1 << (int(n) - 1).bit_length())
    return terms_array(spec, which, size)[:n]


_EMPTY = np.empty(0, dtype=np.float64)
_EMPTY.setflags(write=False)


def norm_bound(spec: SequenceSpec, k_max: int = 10_000) -> float:
    """Upper bound sup|a_k| + sup|b_k| for the operator norm on any l^p.

    The suprema run over realised terms k <= k_max and over the residue-class
    limits, so the bound is monotone nondecreasing in k_max and never falls
    below the limit contribution.
    """
    sup_a = max(float(np.max(np.abs(terms_array(spec, "a", k_max)))),
                max(abs(v) for v in spec.a_limits))
    sup_b = max(float(np.max(np.abs(terms_array(spec, "b", k_max)))),
                max(abs(v) for v in spec.b_limits))
    return sup_a + sup_b
