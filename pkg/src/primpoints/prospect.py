"""Hilbert-specialization engine and density experiments.

For a nonconstant function f on the curve, each rational t gives a fiber
polynomial presenting the field of the points above t.  Sweeping t in height
order and certifying each irreducible fiber yields streams of certified
primitive points; walking coefficient boxes of a Riemann-Roch space and
classifying each function into the degenerate locus, the contracted locus,
or the primitive remainder measures the density of primitive functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

from .errors import (
    DegeneratePresentation,
    InvalidInput,
    OutOfTheoremRange,
    SearchBudgetExhausted,
    VerificationFailure,
)
from .exactalg import (
    POLY_ONE,
    RatPolynomial,
    factor_over_rationals,
    is_squarefree,
    rat_to_str,
    resultant,
)
from .hypcurve import (
    INFINITY,
    CurveFunction,
    Divisor,
    HyperellipticCurve,
    function_degree,
    riemann_roch_basis,
)
from .contract import imprimitive_locus_test
from .numfield import (
    IMPRIMITIVE,
    METHOD_FROM_SPECIALIZATION,
    PRIMITIVE,
    PrimitivityCertificate,
    is_primitive_field,
)


# ----------------------------------------------------------------------
# height-ordered iterators

def height_ordered_rationals():
    """Nonzero rationals by height max(|num|, den): 1, -1, 2, 1/2, -2, ..."""
    yield Fraction(1)
    yield Fraction(-1)
    h = 2
    while True:
        ks = [k for k in range(1, h) if Fraction(h, k).denominator == k]
        for k in ks:
            yield Fraction(h, k)
            yield Fraction(k, h)
        for k in ks:
            yield Fraction(-h, k)
            yield Fraction(-k, h)
        h += 1


def coefficient_vectors(dim: int, max_height: int | None = None):
    """Nonzero integer vectors by max-norm ring, small entries first."""
    h = 1
    while max_height is None or h <= max_height:
        ladder = [0]
        for v in range(1, h + 1):
            ladder.extend((v, -v))
        for vec in product(ladder, repeat=dim):
            if max(abs(v) for v in vec) == h:
                yield vec
        h += 1


# ----------------------------------------------------------------------
# fiber polynomials

def fiber_polynomial(curve, f: CurveFunction, t: Fraction):
    """Monic degree-d polynomial presenting the fiber field above t.

    For f = a + b*y with b != 0 this is the monic form of (t - a)^2 - b^2 h,
    whose roots are the x-coordinates of the fiber (y is recovered as
    (t - a)/b).  For b = 0 the fiber needs a primitive element x + lam*y;
    the smallest lam in 1, 2, ... giving a squarefree degree-d presentation
    wins.  Returns (poly, lam or None).
    """
    if f.is_zero() or f.is_constant():
        raise InvalidInput("fiber of a constant function")
    if not f.is_polynomial_form():
        raise InvalidInput("fiber polynomial expects a polynomial-form function")
    t = Fraction(t)
    d = function_degree(curve, f)
    a, b, h = f.a, f.b, curve.h
    if not b.is_zero():
        ft = (RatPolynomial([t]) - a) ** 2 - b * b * h
        return ft.monic(), None
    # primitive element x + lam*y, eliminating x by a resultant
    for lam in range(1, 2 * d + 1):
        ft = _eliminated_presentation(curve, a, t, Fraction(lam))
        if ft.degree == d and is_squarefree(ft):
            return ft.monic(), lam
    raise DegeneratePresentation(
        f"no primitive-element presentation for t={t} within lam <= {2 * d}"
    )


def _eliminated_presentation(curve, a: RatPolynomial, t: Fraction, lam: Fraction):
    """Res_x(a(x) - t, (T - x)^2 - lam^2 h(x)) as a polynomial in T."""
    p = a - RatPolynomial([t])
    lam2 = lam * lam
    npoints = 2 * a.degree + 1
    xs, ys = [], []
    c = Fraction(0)
    while len(xs) < npoints:
        q = (RatPolynomial([c, -1])) ** 2 - curve.h.scale(lam2)
        ys.append(resultant(p, q))
        xs.append(c)
        c = -c if c > 0 else -c + 1
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = RatPolynomial([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * RatPolynomial([-xs[i], 1]) + RatPolynomial([coef[i]])
    return poly


# ----------------------------------------------------------------------
# specializations

STATUS_REDUCIBLE = "reducible"
STATUS_BRANCH_LIKE = "branch_like"
STATUS_IRREDUCIBLE = "irreducible"
STATUS_DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Specialization:
    t: Fraction
    fiber_poly: RatPolynomial | None
    status: str
    factors: tuple = ()
    certificate: PrimitivityCertificate | None = None
    lam: int | None = None

    def is_primitive_point(self):
        return (
            self.status == STATUS_IRREDUCIBLE
            and self.certificate is not None
            and self.certificate.verdict == PRIMITIVE
        )

    def to_json(self):
        return {
            "t": rat_to_str(self.t),
            "fiber_poly": self.fiber_poly.to_json() if self.fiber_poly else None,
            "status": self.status,
            "factors": [[f.to_json(), m] for f, m in self.factors],
            "certificate": self.certificate.to_json() if self.certificate else None,
            "lambda": self.lam,
        }


def classify_specialization(
    curve, f: CurveFunction, t, paranoid: bool = False, seed: int = 0
) -> Specialization:
    """Fiber polynomial, irreducibility, and primitivity at one t."""
    t = Fraction(t)
    try:
        poly, lam = fiber_polynomial(curve, f, t)
    except DegeneratePresentation:
        return Specialization(t=t, fiber_poly=None, status=STATUS_DEGENERATE)
    if not is_squarefree(poly):
        return Specialization(t=t, fiber_poly=poly, status=STATUS_BRANCH_LIKE, lam=lam)
    fl = factor_over_rationals(poly, seed=seed)
    if not fl.is_irreducible():
        return Specialization(
            t=t,
            fiber_poly=poly,
            status=STATUS_REDUCIBLE,
            factors=fl.factors,
            lam=lam,
        )
    cert = is_primitive_field(poly, policy="auto", seed=seed)
    if paranoid:
        check = is_primitive_field(poly, policy="general", seed=seed)
        if check.verdict != cert.verdict:
            raise VerificationFailure(
                f"method disagreement at t={t}: {cert.verdict} vs {check.verdict}"
            )
    return Specialization(
        t=t, fiber_poly=poly, status=STATUS_IRREDUCIBLE, certificate=cert, lam=lam
    )


@dataclass(frozen=True)
class ProspectReport:
    curve: HyperellipticCurve
    function: CurveFunction
    degree: int
    specializations: tuple
    paranoid: bool
    seed: int

    @property
    def primitive_points(self):
        return [
            (s.t, s.fiber_poly, s.certificate)
            for s in self.specializations
            if s.is_primitive_point()
        ]

    def counts(self):
        out = {
            STATUS_REDUCIBLE: 0,
            STATUS_BRANCH_LIKE: 0,
            STATUS_IRREDUCIBLE: 0,
            STATUS_DEGENERATE: 0,
            "primitive_points": 0,
        }
        for s in self.specializations:
            out[s.status] += 1
            if s.is_primitive_point():
                out["primitive_points"] += 1
        return out

    def to_json(self):
        return {
            "schema_version": 1,
            "curve": self.curve.to_json(),
            "function": self.function.to_json(),
            "degree": self.degree,
            "seed": self.seed,
            "paranoid": self.paranoid,
            "specializations": [s.to_json() for s in self.specializations],
            "primitive_points": [
                {
                    "t": rat_to_str(t),
                    "minpoly": poly.to_json(),
                    "certificate": cert.to_json(),
                }
                for t, poly, cert in self.primitive_points
            ],
            "counts": self.counts(),
        }


def prospect(
    curve,
    f: CurveFunction,
    count: int = 50,
    paranoid: bool = False,
    seed: int = 0,
    jobs: int = 1,
) -> ProspectReport:
    """Sweep the first ``count`` height-ordered t values and classify each.

    Specializations at distinct t are independent; with jobs > 1 they are
    evaluated concurrently and merged back in height order.
    """
    d = function_degree(curve, f)
    if d < 2:
        raise InvalidInput("prospect needs a function of degree >= 2")
    ts = []
    it = height_ordered_rationals()
    for _ in range(count):
        ts.append(next(it))
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            specs = list(
                pool.map(
                    lambda t: classify_specialization(curve, f, t, paranoid, seed), ts
                )
            )
    else:
        specs = [classify_specialization(curve, f, t, paranoid, seed) for t in ts]
    return ProspectReport(
        curve=curve,
        function=f,
        degree=d,
        specializations=tuple(specs),
        paranoid=paranoid,
        seed=seed,
    )


# ----------------------------------------------------------------------
# density experiments

LOCUS_DEGREE_DEFICIENT = "degree_deficient"
LOCUS_IMPRIMITIVE = "imprimitive"
LOCUS_PRIMITIVE = "primitive"


@dataclass(frozen=True)
class DensityReport:
    divisor: Divisor
    coeff_height: int
    mode: str  # "exhaustive" | "seeded"
    sample_count: int
    seed: int | None
    counts: dict
    examples: dict = dc_field(default_factory=dict)

    @property
    def total(self):
        return sum(self.counts.values())

    def fraction(self, key) -> Fraction:
        return Fraction(self.counts[key], self.total)

    def to_json(self):
        total = self.total
        return {
            "schema_version": 1,
            "divisor": self.divisor.to_json(),
            "coeff_height": self.coeff_height,
            "mode": self.mode,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "counts": dict(self.counts),
            "fractions": {
                k: rat_to_str(Fraction(v, total)) for k, v in self.counts.items()
            },
        }


def density_experiment(
    curve,
    D: Divisor,
    coeff_height: int,
    samples: int | None = None,
    seed: int = 0,
) -> DensityReport:
    """Classify coefficient vectors over the basis of L(D) into the three
    loci: degree below deg D, contracted (imprimitive), or primitive.

    Exhaustive mode enumerates every nonzero vector with entries in
    [-H, H]; seeded mode draws ``samples`` nonzero vectors uniformly.
    Divisors whose full-degree functions can have pole shapes outside the
    locus test's scope (affine support mixed with repeated infinity)
    propagate Unsupported rather than guessing."""
    if D.degree <= 2 * curve.genus:
        raise OutOfTheoremRange("density experiment requires deg D > 2g")
    H = coeff_height
    space = riemann_roch_basis(curve, D)
    dim = space.dimension
    counts = {LOCUS_DEGREE_DEFICIENT: 0, LOCUS_IMPRIMITIVE: 0, LOCUS_PRIMITIVE: 0}
    # for D = n*oo the basis is the pole-ordered monomials; place vector
    # entries straight into coefficient slots
    pure_inf = D.entries == ((INFINITY, D.degree),)
    if pure_inf:
        from .hypcurve import _monomials_upto

        monos = _monomials_upto(curve, D.degree)
        na = max(i for i, isy in monos if not isy) + 1
        nb = max((i for i, isy in monos if isy), default=-1) + 1

    def build(vec):
        if pure_inf:
            a = [0] * na
            b = [0] * nb
            for c, (i, isy) in zip(vec, monos):
                if c:
                    if isy:
                        b[i] = c
                    else:
                        a[i] = c
            return CurveFunction(curve, RatPolynomial(a), RatPolynomial(b))
        f = None
        for c, bfun in zip(vec, space.basis):
            if c:
                term = bfun * Fraction(c)
                f = term if f is None else f + term
        return f

    def classify(vec):
        f = build(vec)
        if f is None or f.is_zero() or f.is_constant():
            return LOCUS_DEGREE_DEFICIENT
        if function_degree(curve, f) < D.degree:
            return LOCUS_DEGREE_DEFICIENT
        res = imprimitive_locus_test(curve, D, f)
        return LOCUS_IMPRIMITIVE if res.is_imprimitive else LOCUS_PRIMITIVE

    if samples is None:
        total = 0
        for vec in product(range(-H, H + 1), repeat=dim):
            if all(v == 0 for v in vec):
                continue
            counts[classify(vec)] += 1
            total += 1
        return DensityReport(
            divisor=D,
            coeff_height=H,
            mode="exhaustive",
            sample_count=total,
            seed=None,
            counts=counts,
        )
    import random

    rng = random.Random(seed)
    drawn = 0
    while drawn < samples:
        vec = tuple(rng.randint(-H, H) for _ in range(dim))
        if all(v == 0 for v in vec):
            continue
        counts[classify(vec)] += 1
        drawn += 1
    return DensityReport(
        divisor=D,
        coeff_height=H,
        mode="seeded",
        sample_count=samples,
        seed=seed,
        counts=counts,
    )


# ----------------------------------------------------------------------
# the search pipeline

@dataclass(frozen=True)
class FunctionCertificate:
    """Primitivity of Q(f) inside the function field, certified through one
    irreducible primitive specialization (an imprimitive extension would
    force every irreducible specialization fiber to stay imprimitive)."""

    function: CurveFunction
    degree: int
    t: Fraction
    fiber_poly: RatPolynomial
    point_certificate: PrimitivityCertificate
    method: str = METHOD_FROM_SPECIALIZATION

    def verify(self, curve, strict: bool = False) -> bool:
        poly, _ = fiber_polynomial(curve, self.function, self.t)
        if poly != self.fiber_poly:
            return False
        if not factor_over_rationals(poly).is_irreducible():
            return False
        if self.point_certificate.verdict != PRIMITIVE:
            return False
        if self.point_certificate.modulus != poly:
            return False
        return self.point_certificate.verify(strict=strict)

    def to_json(self):
        return {
            "method": self.method,
            "function": self.function.to_json(),
            "degree": self.degree,
            "t": rat_to_str(self.t),
            "fiber_poly": self.fiber_poly.to_json(),
            "point_certificate": self.point_certificate.to_json(),
        }


def find_primitive_function(
    curve,
    d: int,
    t_budget: int = 40,
    candidate_budget: int = 200,
    seed: int = 0,
    paranoid: bool = False,
):
    """First height-ordered f in L(d*oo) of exact degree d that avoids the
    contracted locus and admits a certified primitive specialization.

    Requires d > 2g; raises SearchBudgetExhausted when the bounded walk
    finds nothing (which the density-1 statement makes pathological).
    """
    if d <= 2 * curve.genus:
        raise OutOfTheoremRange(f"need d > 2g = {2 * curve.genus}")
    D = Divisor([(INFINITY, d)])
    space = riemann_roch_basis(curve, D)
    tried = 0
    for vec in coefficient_vectors(space.dimension):
        if tried >= candidate_budget:
            break
        f = None
        for c, b in zip(vec, space.basis):
            if c:
                term = b * Fraction(c)
                f = term if f is None else f + term
        if f is None or f.is_zero() or f.is_constant():
            continue
        if function_degree(curve, f) < d:
            continue  # locus S
        tried += 1
        if imprimitive_locus_test(curve, D, f).is_imprimitive:
            continue  # locus T
        usable = 0
        for t in height_ordered_rationals():
            if usable >= t_budget:
                break
            s = classify_specialization(curve, f, t, paranoid=paranoid, seed=seed)
            if s.status in (STATUS_BRANCH_LIKE, STATUS_DEGENERATE):
                continue
            usable += 1
            if s.is_primitive_point():
                return f, FunctionCertificate(
                    function=f,
                    degree=d,
                    t=s.t,
                    fiber_poly=s.fiber_poly,
                    point_certificate=s.certificate,
                )
    raise SearchBudgetExhausted(
        f"no certified primitive function of degree {d} within budget"
    )
