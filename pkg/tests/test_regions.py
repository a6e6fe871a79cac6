from fractions import Fraction

import numpy as np
import pytest

from finespec import (
    Override,
    RepeatedValue,
    WrongPeriod,
    make_asymptotic,
    membership,
    partial_sum_oracle,
    region_indicator,
    series_adjoint,
    series_tail_point,
    symbol_ratio,
    term,
    two_band_check,
)

E = 1.0 + 0.0j


# ---------------------------------------------------------------- limit symbol

def test_symbol_ratio_values(twoband_spec, shift_spec):
    assert symbol_ratio(twoband_spec, 0.0 + 0.0j) == (0 - 1.0) * (0 - 0.5) / 6.0
    assert abs(symbol_ratio(twoband_spec, 0.0 + 0.0j)) == 1.0 / 12.0
    assert symbol_ratio(shift_spec, 2.0 + 0.0j) == 2.0
    assert abs(symbol_ratio(shift_spec, 0.6 + 0.8j)) == pytest.approx(1.0, abs=1e-15)


def test_region_zones(shift_spec):
    assert region_indicator(shift_spec, 0.5 * E).zone == "Interior"
    assert region_indicator(shift_spec, 1.0 * E).zone == "Boundary"
    assert region_indicator(shift_spec, 2.0 * E).zone == "Exterior"


def test_region_tolerance_band(shift_spec):
    # anything within boundary_tol of |Phi| = 1 is Boundary
    assert region_indicator(shift_spec, (1.0 + 5e-10) * E, 1e-9).zone == "Boundary"
    assert region_indicator(shift_spec, (1.0 + 5e-9) * E, 1e-9).zone == "Exterior"


def test_region_tolerance_validated(shift_spec):
    for bad in (0.0, -1e-3, 0.5, 0.7):
        with pytest.raises(ValueError):
            region_indicator(shift_spec, 0.5 * E, bad)


def test_region_conjugate_symmetry(twoband_spec):
    rng = np.random.default_rng(11)
    for _ in range(50):
        lam = complex(rng.uniform(-3, 5), rng.uniform(0.01, 4))
        up = region_indicator(twoband_spec, lam)
        dn = region_indicator(twoband_spec, lam.conjugate())
        assert up.zone == dn.zone
        assert up.phi_abs == pytest.approx(dn.phi_abs, rel=1e-15)


# -------------------------------------------------------------- adjoint series

def test_adjoint_interior_fast_path(shift_spec, exp2):
    v = series_adjoint(shift_spec, 0.5 * E, exp2)
    assert v.state == "Converges"
    assert v.terms_used == 0
    assert v.ratio_estimate == pytest.approx(0.25)  # |Phi|^q


def test_adjoint_exterior_fast_path(shift_spec, exp2):
    v = series_adjoint(shift_spec, 2.0 * E, exp2)
    assert v.state == "Diverges"
    assert v.terms_used == 0
    assert v.ratio_estimate == pytest.approx(4.0)


def test_adjoint_boundary_diverges(shift_spec, exp2):
    # |f_k| = 1 for every k on the unit circle
    v = series_adjoint(shift_spec, 1.0 * E, exp2)
    assert v.state == "Diverges"
    assert v.terms_used > 0


def test_adjoint_terminating(twoband_spec, exp2):
    # lambda = a_5 exactly zeroes a factor: finitely many nonzero terms
    lam = term(twoband_spec, "a", 5) + 0.0j
    v = series_adjoint(twoband_spec, lam, exp2)
    assert v.state == "Converges"
    assert np.isfinite(v.last_partial_sum)


def test_adjoint_fast_path_matches_oracle(shift_spec, exp2):
    # for a = 0, b = 1 the terms are |lambda|^(q(k-1)); the compensated
    # partial-sum oracle must reproduce the zone verdict off the circle
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 50:
        lam = complex(rng.uniform(-1.6, 1.6), rng.uniform(-1.6, 1.6))
        if abs(abs(lam) - 1.0) < 0.1 or abs(lam) < 0.05:
            continue
        checked += 1
        fast = series_adjoint(shift_spec, lam, exp2)
        r = abs(lam) ** exp2.q
        with np.errstate(over="ignore"):
            terms = np.power(r, np.arange(400, dtype=float))
        _, _, verdict = partial_sum_oracle(terms, K=400)
        assert fast.terms_used == 0
        assert fast.state == verdict.state


# ----------------------------------------------------------- tail-point series

def test_tail_interior_diverges(twoband_spec, exp2):
    # a_3 = 8/9 lies inside |Phi| < 1, so the candidate tail cannot decay
    v = series_tail_point(twoband_spec, 3, 3, exp2)
    assert v.state == "Diverges"
    assert v.ratio_estimate == pytest.approx((972.0 / 7.0) ** 2, rel=1e-12)


def test_tail_exterior_converges(m1_override, exp2):
    v = series_tail_point(m1_override, 1, 1, exp2)
    assert v.state == "Converges"
    assert v.ratio_estimate == pytest.approx(0.04, rel=1e-12)  # |Phi(5)|^-p


def test_tail_oracle_cross_check(m1_override, exp2):
    # explicit terms (1/25)^n against the oracle
    terms = [(1.0 / 25.0) ** n for n in range(1, 201)]
    partials, slope, verdict = partial_sum_oracle(terms, K=200)
    assert verdict.state == "Converges"
    assert partials[-1] == pytest.approx(1.0 / 24.0, rel=1e-12)
    assert abs(slope) <= 1e-10


def test_tail_repeated_value(shift_spec, exp2):
    with pytest.raises(RepeatedValue):
        series_tail_point(shift_spec, 1, 1, exp2)


def test_tail_argument_validation(m1_override, exp2):
    with pytest.raises(ValueError):
        series_tail_point(m1_override, 5, 1, exp2)  # s < j
    with pytest.raises(ValueError):
        series_tail_point(m1_override, 1, 2, exp2)  # a_2 != a_1


def test_tail_fast_path_matches_oracle(exp2):
    # pin a_1 = v on a shift background; terms are |v|^(-p n)
    rng = np.random.default_rng(17)
    checked = 0
    while checked < 50:
        v = float(rng.uniform(-3.0, 3.0))
        if abs(abs(v) - 1.0) < 0.1 or abs(v) < 0.1:
            continue
        checked += 1
        spec = make_asymptotic([0.0], [1.0], prefix_overrides=[Override("a", 1, v)])
        fast = series_tail_point(spec, 1, 1, exp2)
        r = (1.0 / abs(v)) ** exp2.p
        with np.errstate(over="ignore"):
            terms = np.power(r, np.arange(1, 301, dtype=float))
        _, _, verdict = partial_sum_oracle(terms, K=300)
        assert fast.state == verdict.state


# ------------------------------------------------------------------ membership

def test_membership_examples(shift_spec, m1_override, exp2):
    assert membership(shift_spec, 0.5 * E, "S1", exp2) == "In"
    assert membership(shift_spec, 0.5 * E, "S4", exp2) == "In"
    assert membership(shift_spec, 0.5 * E, "S5", exp2) == "Out"
    assert membership(shift_spec, 1.0 * E, "S5", exp2) == "In"
    assert membership(shift_spec, 1.0 * E, "S6", exp2) == "Out"  # adjoint diverges
    assert membership(shift_spec, 2.0 * E, "S1", exp2) == "Out"
    assert membership(shift_spec, 2.0 * E, "S2", exp2) == "Out"
    assert membership(m1_override, 5.0 * E, "S2", exp2) == "In"
    assert membership(m1_override, 5.0 * E, "S1", exp2) == "Out"


def test_membership_case_and_validation(shift_spec, exp2):
    assert membership(shift_spec, 0.5 * E, "s4", exp2) == "In"
    with pytest.raises(ValueError):
        membership(shift_spec, 0.5 * E, "S7", exp2)


def test_membership_set_algebra(twoband_spec, exp2):
    # S4 and S5 partition sigma; S2 lives outside sigma
    rng = np.random.default_rng(23)
    for _ in range(40):
        lam = complex(rng.uniform(-3, 5), rng.uniform(-4, 4))
        s1 = membership(twoband_spec, lam, "S1", exp2)
        s4 = membership(twoband_spec, lam, "S4", exp2)
        s5 = membership(twoband_spec, lam, "S5", exp2)
        if s4 == "In" or s5 == "In":
            assert s1 == "In"
            assert not (s4 == "In" and s5 == "In")
        if membership(twoband_spec, lam, "S2", exp2) == "In":
            assert s1 == "Out"


# ------------------------------------------------------------ two-band scanner

def test_two_band_requires_period_two(shift_spec):
    with pytest.raises(WrongPeriod):
        two_band_check(shift_spec)


def test_two_band_warns_on_small_R(twoband_spec):
    with pytest.warns(UserWarning):
        two_band_check(twoband_spec, R=1.0, k_from=1, k_to=50)


def test_two_band_range_validation(twoband_spec):
    with pytest.raises(ValueError):
        two_band_check(twoband_spec, R=4.0, k_from=0, k_to=10)
    with pytest.raises(ValueError):
        two_band_check(twoband_spec, R=4.0, k_from=10, k_to=5)


def test_two_band_periodic_equality(periodic_m2):
    # purely periodic coefficients sit exactly on the inequality boundary;
    # equality counts as holding
    rep = two_band_check(periodic_m2, R=4.0, k_from=1, k_to=100)
    assert np.all(rep.margin == 0.0)
    assert rep.holds_from == 1
    assert rep.holds


def test_two_band_margin_identities(twoband_spec):
    # closed forms for odd k at R = 4:
    #   lhs = (5k+2)/(k(k+1)),  rhs = (16k^2+16k+8)/(k^2 (k+1)^2)
    rep = two_band_check(twoband_spec, R=4.0, k_from=1, k_to=199)
    for i, k in enumerate(rep.ks):
        if k % 2 == 0:
            continue
        lhs = Fraction(5 * k + 2, k * (k + 1))
        rhs = Fraction(16 * k * k + 16 * k + 8, k * k * (k + 1) * (k + 1))
        assert abs(rep.lhs[i] - lhs) <= 1e-12 * abs(lhs)
        assert abs(rep.rhs[i] - rhs) <= 1e-12 * abs(rhs)
        assert abs(rep.margin[i] - (lhs - rhs)) <= 1e-12 * (1.0 + abs(lhs - rhs))


def test_two_band_holds_from(twoband_spec):
    # first margins: k=1 and k=2 negative, positive from k=3 on
    rep = two_band_check(twoband_spec, R=4.0, k_from=1, k_to=2000)
    assert rep.margin[0] < 0 and rep.margin[1] < 0
    assert rep.holds_from == 3
    assert np.all(rep.margin[2:] >= 0.0)
    assert rep.margin_at[2][0] == 3


def test_two_band_r_defaults_to_norm_bound(twoband_spec):
    rep = two_band_check(twoband_spec, k_from=1, k_to=10)
    assert rep.R_used == 4.0
