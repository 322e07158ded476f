import random
from fractions import Fraction

import pytest

from primpoints import (
    DivisionByZero,
    InvalidInput,
    NfPolynomial,
    NotAField,
    NumberField,
    POLY_X,
    RatPolynomial,
    factor_over_rationals,
    is_primitive_field,
    nf_arithmetic,
    principal_subfields,
    resolvent_cubic,
    trager_factor,
)

x = POLY_X
SWINNERTON = x ** 4 - 10 * x ** 2 + 1


# ----------------------------------------------------------------------
# basic arithmetic

def test_gaussian_arithmetic():
    L = NumberField(x ** 2 + 1)
    i = L.theta
    assert i * i == -1
    assert i.inverse() == -i
    assert nf_arithmetic(i, i, "mul") == L.element([-1])
    assert nf_arithmetic(i, None, "inv") == -i


def test_cubic_power_reduction():
    L = NumberField(x ** 3 - 2)
    t = L.theta
    assert t ** 4 == L.element([0, 2])  # theta^4 = 2 theta


def test_mixed_fields_rejected():
    a = NumberField(x ** 2 + 1).theta
    b = NumberField(x ** 2 - 2).theta
    with pytest.raises(InvalidInput):
        a + b


def test_invert_zero():
    L = NumberField(x ** 2 + 1)
    with pytest.raises(DivisionByZero):
        L.zero.inverse()


def test_reducible_modulus_rejected():
    with pytest.raises(NotAField):
        NumberField(x ** 2 - 1)


def test_minimal_polynomial():
    L = NumberField(SWINNERTON)
    t = L.theta
    sqrt2 = (t ** 3 - L.element([9]) * t) * L.element([Fraction(1, 2)])
    assert sqrt2 * sqrt2 == L.element([2])
    assert sqrt2.minimal_polynomial() == x ** 2 - 2


# ----------------------------------------------------------------------
# Trager factorization

def test_trager_gaussian():
    L = NumberField(x ** 2 + 1)
    fact = trager_factor(NfPolynomial.from_rat(L, x ** 2 + 1))
    roots = sorted(tuple((-g.coeffs[0]).coeffs) for g, _ in fact.factors)
    assert roots == [((0, -1)), ((0, 1))]
    assert fact.expand() == NfPolynomial.from_rat(L, x ** 2 + 1)


def test_trager_pure_cubic():
    L = NumberField(x ** 3 - 2)
    f = NfPolynomial.from_rat(L, x ** 3 - 2)
    fact = trager_factor(f)
    assert sorted(g.degree for g, _ in fact.factors) == [1, 2]
    assert fact.expand() == f


def test_trager_galois_quartic_splits():
    # Q(sqrt2 + sqrt3) is Galois with group V4, so its polynomial splits
    L = NumberField(SWINNERTON)
    f = NfPolynomial.from_rat(L, SWINNERTON)
    fact = trager_factor(f)
    assert [g.degree for g, _ in fact.factors] == [1, 1, 1, 1]
    for g, _ in fact.factors:
        root = -g.coeffs[0]
        acc = L.zero
        for c in reversed(SWINNERTON.coeffs):
            acc = acc * root + L.element([c])
        assert acc.is_zero()


def test_trager_multiplicities():
    L = NumberField(x ** 2 + 1)
    f = NfPolynomial.from_rat(L, (x ** 2 + 1) ** 2 * (x - 3))
    fact = trager_factor(f)
    assert fact.expand() == f
    assert sorted(m for _, m in fact.factors) == [1, 2, 2]


def test_trager_factors_are_irreducible():
    # re-factoring each factor must return it unchanged
    L = NumberField(x ** 3 - 2)
    f = NfPolynomial.from_rat(L, x ** 6 - 4)
    fact = trager_factor(f)
    assert fact.expand() == f
    for g, _ in fact.factors:
        refact = trager_factor(g)
        assert refact.is_irreducible()
        assert refact.factors[0][0] == g


# ----------------------------------------------------------------------
# principal subfields

def test_principal_subfields_swinnerton():
    L = NumberField(SWINNERTON)
    entries = principal_subfields(L)
    assert sorted(e.degree for e in entries) == [2, 2, 2, 4]
    minpolys = {str(e.generator_minpoly) for e in entries if e.degree == 2}
    assert "x^2 - 2" in minpolys
    for e in entries:
        assert e.generator_minpoly.degree == e.degree
        # the subspace contains 1 and is multiplicatively closed
        span_rows = [list(b.coeffs) for b in e.basis]
        from primpoints.linalg import in_span

        assert in_span(span_rows, list(L.one.coeffs)) is not None
        for b1 in e.basis:
            for b2 in e.basis:
                assert in_span(span_rows, list((b1 * b2).coeffs)) is not None


def test_principal_subfields_prime_degree():
    L = NumberField(x ** 5 - 2)
    entries = principal_subfields(L)
    assert all(e.degree in (1, 5) for e in entries)


def test_principal_subfields_cyclotomic8():
    L = NumberField(x ** 4 + 1)
    entries = principal_subfields(L)
    proper = [e for e in entries if e.degree == 2]
    assert len(proper) == 3
    assert {str(e.generator_minpoly) for e in proper} == {
        "x^2 + 1",
        "x^2 - 2",
        "x^2 + 2",
    }
    # the full field appears in the list
    assert any(e.degree == 4 for e in entries)


# ----------------------------------------------------------------------
# resolvent cubic

def test_resolvent_examples():
    r = resolvent_cubic(SWINNERTON)
    assert r == x ** 3 + 10 * x ** 2 - 4 * x - 40
    for root in (2, -2, -10):
        assert r(Fraction(root)) == 0
    r2 = resolvent_cubic(x ** 4 + 1)
    assert r2 == x ** 3 - 4 * x
    assert sorted(
        -f[0] for f, _ in factor_over_rationals(r2).factors if f.degree == 1
    ) == [-2, 0, 2]
    r3 = resolvent_cubic(x ** 4 - x ** 3 - 4 * x ** 2 + 3)
    assert r3 == x ** 3 + 4 * x ** 2 - 12 * x - 51
    # rational-root test over the divisors of 51: all miss
    for cand in (1, -1, 3, -3, 17, -17, 51, -51):
        assert r3(Fraction(cand)) != 0
    assert not any(f.degree == 1 for f, _ in factor_over_rationals(r3).factors)


def test_resolvent_requires_monic_quartic():
    with pytest.raises(InvalidInput):
        resolvent_cubic(x ** 3 + 1)


# ----------------------------------------------------------------------
# primitivity certificates

def test_certificate_swinnerton():
    cert = is_primitive_field(SWINNERTON)
    assert cert.verdict == "imprimitive"
    assert cert.witness.degree == 2
    assert cert.witness.generator_minpoly == x ** 2 - 2
    assert cert.verify()
    assert cert.witness.verify(SWINNERTON)


def test_certificate_prime_degree():
    cert = is_primitive_field(x ** 5 - 2)
    assert cert.verdict == "primitive" and cert.method == "prime_degree"
    assert cert.verify(strict=True)


def test_certificate_s4_quartic():
    cert = is_primitive_field(x ** 4 - x ** 3 - 4 * x ** 2 + 3)
    assert cert.verdict == "primitive" and cert.method == "resolvent_cubic"
    assert cert.verify(strict=True)


def test_certificate_reducible_rejected():
    with pytest.raises(NotAField):
        is_primitive_field(x ** 4 - 1)


def test_certificate_json_round_trip():
    cert = is_primitive_field(SWINNERTON)
    data = cert.to_json()
    assert data["verdict"] == "imprimitive"
    assert data["witness"]["minpoly"] == ["-2", "0", "1"]
    assert RatPolynomial.from_json(data["modulus"]) == SWINNERTON


def test_methods_agree_on_random_quartics():
    rng = random.Random(41)
    checked = 0
    while checked < 25:
        m = RatPolynomial([rng.randint(-10, 10) for _ in range(4)] + [1])
        if not factor_over_rationals(m).is_irreducible():
            continue
        auto = is_primitive_field(m, policy="auto")
        general = is_primitive_field(m, policy="general")
        assert auto.verdict == general.verdict
        assert auto.verify() and general.verify()
        checked += 1


def test_prime_degree_shortcut_confirmed():
    rng = random.Random(43)
    checked = 0
    while checked < 5:
        m = RatPolynomial([rng.randint(-10, 10) for _ in range(5)] + [1])
        if not factor_over_rationals(m).is_irreducible():
            continue
        general = is_primitive_field(m, policy="general")
        assert general.verdict == "primitive"
        checked += 1
