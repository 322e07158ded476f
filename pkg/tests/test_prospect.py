import json
from fractions import Fraction
from itertools import islice

import pytest

from primpoints import (
    Divisor,
    INFINITY,
    InvalidInput,
    OutOfTheoremRange,
    POLY_ONE,
    POLY_X,
    RatPolynomial,
    SearchBudgetExhausted,
    classify_specialization,
    coefficient_vectors,
    density_experiment,
    factor_over_rationals,
    fiber_polynomial,
    find_primitive_function,
    height_ordered_rationals,
    is_squarefree,
    prospect,
)

x = POLY_X


# ----------------------------------------------------------------------
# height iterator

def test_height_iterator_prefix():
    got = [str(q) for q in islice(height_ordered_rationals(), 14)]
    assert got == [
        "1", "-1", "2", "1/2", "-2", "-1/2",
        "3", "1/3", "3/2", "2/3", "-3", "-1/3", "-3/2", "-2/3",
    ]


def test_height_iterator_unique_and_monotone():
    seen = set()
    heights = []
    for q in islice(height_ordered_rationals(), 300):
        assert q not in seen
        seen.add(q)
        heights.append(max(abs(q.numerator), q.denominator))
    assert heights == sorted(heights)


# ----------------------------------------------------------------------
# fiber polynomials

def test_fiber_polynomial_formula(g1):
    f = g1.function(x ** 2, POLY_ONE)
    for t in (Fraction(2), Fraction(-1), Fraction(5, 3)):
        ft, lam = fiber_polynomial(g1, f, t)
        expect = x ** 4 - x ** 3 - 2 * t * x ** 2 + RatPolynomial([t * t - 1])
        assert ft == expect and lam is None
    ft, _ = fiber_polynomial(g1, f, Fraction(2))
    assert ft == x ** 4 - x ** 3 - 4 * x ** 2 + 3


def test_fiber_polynomial_y(g1):
    ft, lam = fiber_polynomial(g1, g1.y, Fraction(2))
    assert ft == x ** 3 - 3 and lam is None


def test_fiber_polynomial_primitive_element(g1):
    # b = 0 routes through the x + lam*y presentation
    f = g1.function(x ** 2)
    ft, lam = fiber_polynomial(g1, f, Fraction(4))
    assert lam == 1 and ft.degree == 4 and is_squarefree(ft)
    # its field must match the fiber: contains sqrt(t) so it is imprimitive
    spec = classify_specialization(g1, f, Fraction(4))
    assert spec.status == "reducible" or spec.certificate is not None


def test_fiber_polynomial_degree_always_d(g1, g2):
    for curve, f in (
        (g1, g1.function(x ** 2, POLY_ONE)),
        (g2, g2.function(x ** 3, POLY_ONE)),
    ):
        from primpoints import function_degree

        d = function_degree(curve, f)
        for t in islice(height_ordered_rationals(), 12):
            ft, _ = fiber_polynomial(curve, f, t)
            assert ft.degree == d and ft.is_monic()


# ----------------------------------------------------------------------
# specialization sweeps

def test_prospect_y_example(g1):
    rep = prospect(g1, g1.y, count=8)
    by_t = {s.t: s for s in rep.specializations}
    assert by_t[Fraction(1)].status == "branch_like"
    assert by_t[Fraction(1)].fiber_poly == x ** 3
    s2 = by_t[Fraction(2)]
    assert s2.status == "irreducible"
    assert s2.fiber_poly == x ** 3 - 3
    assert s2.certificate.verdict == "primitive"
    assert s2.certificate.method == "prime_degree"
    s3 = by_t[Fraction(3)]
    assert s3.status == "reducible"
    assert s3.fiber_poly == x ** 3 - 8
    assert any(f == x - 2 for f, _ in s3.factors)


def test_prospect_x2_always_imprimitive(g1):
    rep = prospect(g1, g1.function(x ** 2), count=30)
    irreducibles = [s for s in rep.specializations if s.status == "irreducible"]
    assert irreducibles
    for s in irreducibles:
        assert s.certificate.verdict == "imprimitive"
        assert s.certificate.witness.degree == 2
        assert s.certificate.witness.verify(s.fiber_poly)
    assert rep.primitive_points == []


def test_prospect_x2y_point(g1):
    rep = prospect(g1, g1.function(x ** 2, POLY_ONE), count=4)
    pts = {t: poly for t, poly, _ in rep.primitive_points}
    assert pts[Fraction(2)] == x ** 4 - x ** 3 - 4 * x ** 2 + 3


def test_prospect_requires_degree_2(g1):
    from primpoints import DegreeUndefined

    with pytest.raises((InvalidInput, DegreeUndefined)):
        prospect(g1, g1.function(RatPolynomial([7])), count=2)


def test_prospect_deterministic(g1):
    f = g1.function(x ** 2, POLY_ONE)
    a = json.dumps(prospect(g1, f, count=12, seed=5).to_json(), sort_keys=True)
    b = json.dumps(prospect(g1, f, count=12, seed=5).to_json(), sort_keys=True)
    assert a == b


def test_prospect_jobs_merge_deterministic(g1):
    f = g1.function(x ** 2, POLY_ONE)
    a = json.dumps(prospect(g1, f, count=10).to_json(), sort_keys=True)
    b = json.dumps(prospect(g1, f, count=10, jobs=3).to_json(), sort_keys=True)
    assert a == b


def test_certificates_reverify(g1):
    rep = prospect(g1, g1.function(x ** 2, POLY_ONE), count=10)
    for _, _, cert in rep.primitive_points:
        assert cert.verify()


# ----------------------------------------------------------------------
# density

def test_density_closed_form_small(g1):
    D = Divisor([(INFINITY, 4)])
    for H in (1, 2):
        rep = density_experiment(g1, D, H)
        imp = rep.counts["imprimitive"]
        prim = rep.counts["primitive"]
        assert Fraction(imp, imp + prim) == Fraction(1, 2 * H + 1)
        assert rep.total == (2 * H + 1) ** 4 - 1
        assert sum(rep.counts.values()) == rep.total


def test_density_seeded_mode(g1):
    D = Divisor([(INFINITY, 4)])
    rep = density_experiment(g1, D, 3, samples=150, seed=9)
    assert sum(rep.counts.values()) == 150
    again = density_experiment(g1, D, 3, samples=150, seed=9)
    assert rep.counts == again.counts


def test_density_requires_theorem_range(g1):
    with pytest.raises(OutOfTheoremRange):
        density_experiment(g1, Divisor([(INFINITY, 2)]), 1)


def test_density_json(g1):
    rep = density_experiment(g1, Divisor([(INFINITY, 4)]), 1)
    data = rep.to_json()
    assert data["schema_version"] == 1
    assert data["fractions"]["imprimitive"] == "9/40"
    total = sum(data["counts"].values())
    assert total == data["sample_count"]


# ----------------------------------------------------------------------
# find_primitive_function

def test_find_function_g1(g1):
    f, cert = find_primitive_function(g1, 3)
    assert f == g1.y
    assert cert.point_certificate.method == "prime_degree"
    assert cert.verify(g1)
    f4, cert4 = find_primitive_function(g1, 4)
    assert f4 == g1.function(x ** 2, POLY_ONE)
    assert cert4.t == Fraction(2)
    assert cert4.fiber_poly == x ** 4 - x ** 3 - 4 * x ** 2 + 3
    assert cert4.verify(g1, strict=True)


def test_find_function_out_of_range(g1, g2):
    with pytest.raises(OutOfTheoremRange):
        find_primitive_function(g1, 2)
    with pytest.raises(OutOfTheoremRange):
        find_primitive_function(g2, 4)


def test_find_function_g2_quick(g2):
    f, cert = find_primitive_function(g2, 5)
    assert f == g2.y
    assert cert.verify(g2)


def test_coefficient_vectors_order():
    vecs = list(islice(coefficient_vectors(2), 8))
    assert vecs == [
        (0, 1), (0, -1), (1, 0), (1, 1), (1, -1), (-1, 0), (-1, 1), (-1, -1),
    ]


def test_first_candidates_skip_loci(g1):
    # the walk for d = 4 must pass over y (degree 3, locus S) and x^2
    # (locus T) before settling on x^2 + y
    f, _ = find_primitive_function(g1, 4)
    assert f == g1.function(x ** 2, POLY_ONE)
