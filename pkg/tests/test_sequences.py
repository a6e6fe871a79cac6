from fractions import Fraction

import numpy as np
import pytest

from finespec import (
    EmptyPeriod,
    ExponentPair,
    Override,
    Perturbation,
    ZeroB,
    ZeroQ,
    make_asymptotic,
    make_periodic,
    norm_bound,
    term,
    term_exact,
    terms_upto,
)


# ---------------------------------------------------------------- construction

def test_empty_period_rejected():
    with pytest.raises(EmptyPeriod):
        make_periodic([], [])
    with pytest.raises(EmptyPeriod):
        make_asymptotic([], [])


def test_period_length_mismatch_rejected():
    with pytest.raises(ValueError):
        make_periodic([0.0, 1.0], [1.0])


def test_zero_b_periodic_rejected():
    with pytest.raises(ZeroB):
        make_periodic([0.0], [0.0])


def test_zero_subdiagonal_limit_rejected():
    with pytest.raises(ZeroQ):
        make_asymptotic([0.0], [0.0])


def test_zero_b_from_override_rejected():
    with pytest.raises(ZeroB):
        make_asymptotic([0.0], [1.0], prefix_overrides=[Override("b", 3, 0.0)])


def test_zero_b_from_perturbation_rejected():
    # b_1 = 1 - 1/1 = 0 is caught at construction time
    with pytest.raises(ZeroB):
        make_asymptotic([0.0], [(1.0, Perturbation("coeff-over-k", -1.0))])


def test_unknown_perturbation_kind_rejected():
    with pytest.raises(ValueError):
        Perturbation("coeff-over-k-cubed", 1.0)


# ---------------------------------------------------------------------- values

def test_term_values(twoband_spec, shift_spec):
    assert term(twoband_spec, "a", 4) == 0.5 - 1.0 / 16.0 == 0.4375
    assert term(twoband_spec, "b", 2) == 3.0 - 1.0 / 2.0 == 2.5
    assert term(shift_spec, "a", 1) == 0.0
    assert term(shift_spec, "b", 7) == 1.0


def test_term_case_insensitive(twoband_spec):
    assert term(twoband_spec, "A", 4) == term(twoband_spec, "a", 4)
    assert term(twoband_spec, "B", 2) == term(twoband_spec, "b", 2)


def test_term_rejects_nonpositive_k(shift_spec):
    with pytest.raises(ValueError):
        term(shift_spec, "a", 0)


def test_term_exact_value(twoband_spec):
    assert term_exact(twoband_spec, "a", 4) == Fraction(7, 16)
    assert term_exact(twoband_spec, "b", 2) == Fraction(5, 2)


def test_term_exact_tracks_float(twoband_spec):
    for k in range(1, 60):
        for which in ("a", "b"):
            exact = float(term_exact(twoband_spec, which, k))
            approx = term(twoband_spec, which, k)
            assert abs(exact - approx) <= 1e-15 * (1.0 + abs(exact))


def test_periodicity(periodic_m2):
    for which in ("a", "b"):
        for k in range(1, 41):
            assert term(periodic_m2, which, k) == term(periodic_m2, which, k + 2)


def test_asymptotic_limits(twoband_spec):
    # each residue class approaches its limit from below, within 2/k at 10^6
    n = 1_000_000
    a = terms_upto(twoband_spec, "a", n)
    b = terms_upto(twoband_spec, "b", n)
    for i, (p, q) in enumerate(zip(twoband_spec.a_limits, twoband_spec.b_limits)):
        sel_a = a[i::2]
        sel_b = b[i::2]
        assert np.all(sel_a < p) and np.all(sel_b < q)
        assert abs(sel_a[-1] - p) < 2e-12
        assert abs(sel_b[-1] - q) < 2e-6
        # monotone approach along the class (flat once below float resolution)
        assert np.all(np.diff(sel_a) >= 0) and np.all(np.diff(sel_b) >= 0)


def test_overrides(m1_override):
    assert term(m1_override, "a", 1) == 5.0
    assert term(m1_override, "a", 2) == 0.0
    assert term(m1_override, "b", 1) == 1.0


# ---------------------------------------------------------------- term arrays

def test_terms_upto_prefix_consistency(twoband_spec):
    full = terms_upto(twoband_spec, "a", 100)
    assert full.shape == (100,)
    np.testing.assert_array_equal(full[:37], terms_upto(twoband_spec, "a", 37))
    assert terms_upto(twoband_spec, "a", 0).shape == (0,)


def test_terms_upto_read_only(twoband_spec):
    arr = terms_upto(twoband_spec, "a", 16)
    with pytest.raises(ValueError):
        arr[0] = 99.0


def test_terms_match_scalar_path(twoband_spec, m1_override):
    for spec in (twoband_spec, m1_override):
        arr = terms_upto(spec, "b", 25)
        for k in range(1, 26):
            assert arr[k - 1] == term(spec, "b", k)


# ------------------------------------------------------------------ norm bound

def test_norm_bound_values(twoband_spec, shift_spec, periodic_m2, m1_override):
    assert norm_bound(twoband_spec, 10_000) == 4.0
    assert norm_bound(shift_spec) == 1.0
    assert norm_bound(periodic_m2) == 4.0
    assert norm_bound(m1_override) == 6.0


def test_norm_bound_monotone_and_limit_floor(twoband_spec):
    lo = norm_bound(twoband_spec, 100)
    hi = norm_bound(twoband_spec, 10_000)
    assert lo <= hi
    floor = max(abs(v) for v in twoband_spec.a_limits) + max(
        abs(v) for v in twoband_spec.b_limits
    )
    assert lo >= floor


# -------------------------------------------------------------- exponent pairs

def test_exponent_pair_conjugate():
    assert ExponentPair(2.0).q == 2.0
    assert ExponentPair(1.5).q == 3.0
    assert ExponentPair(3.0).q == 1.5
    for p in (1.1, 1.7, 2.4, 5.0, 17.0):
        e = ExponentPair(p)
        assert abs(1.0 / e.p + 1.0 / e.q - 1.0) < 1e-15


def test_exponent_pair_validation():
    for bad in (1.0, 0.5, 0.0, -2.0, float("inf")):
        with pytest.raises(ValueError):
            ExponentPair(bad)
