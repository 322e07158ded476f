import pytest

from primpoints import POLY_X, RatPolynomial, curve_new

x = POLY_X


def P(*coeffs):
    """Polynomial from ascending integer/rational coefficients."""
    return RatPolynomial(coeffs)


@pytest.fixture(scope="session")
def g1():
    return curve_new(x ** 3 + 1)


@pytest.fixture(scope="session")
def g2():
    return curve_new(x ** 5 - 1)


@pytest.fixture(scope="session")
def g3():
    return curve_new(x ** 7 - 2)
