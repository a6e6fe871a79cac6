import pytest

from finespec import (
    ClassifyOptions,
    ExponentPair,
    Override,
    Perturbation,
    make_asymptotic,
    make_periodic,
)


@pytest.fixture(scope="session")
def shift_spec():
    """Constant coefficients a = 0, b = 1; symbol Phi(lambda) = lambda."""
    return make_periodic([0.0], [1.0])


@pytest.fixture(scope="session")
def periodic_m2():
    """Purely periodic operator sharing the two-band limits (1, 1/2), (2, 3)."""
    return make_periodic([1.0, 0.5], [2.0, 3.0])


@pytest.fixture(scope="session")
def twoband_spec():
    """Asymptotically 2-periodic: a -> (1, 1/2) like -1/k^2, b -> (2, 3) like -1/k."""
    inv_k = Perturbation("coeff-over-k", -1.0)
    inv_k2 = Perturbation("coeff-over-k-squared", -1.0)
    return make_asymptotic(
        [(1.0, inv_k2), (0.5, inv_k2)],
        [(2.0, inv_k), (3.0, inv_k)],
    )


@pytest.fixture(scope="session")
def m1_override():
    """Shift-like operator with a_1 replaced by 5: one isolated eigenvalue."""
    return make_asymptotic([0.0], [1.0], prefix_overrides=[Override("a", 1, 5.0)])


@pytest.fixture(scope="session")
def exp2():
    return ExponentPair(2.0)


@pytest.fixture(scope="session")
def opts():
    return ClassifyOptions()
