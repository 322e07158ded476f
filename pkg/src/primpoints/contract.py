"""Genus-0 contracting morphisms and the imprimitive locus.

A contraction for an effective divisor D is a function g of degree e with
1 < e < deg D whose pullback of some divisor D' on the projective line is
exactly D.  For multiplicity-one D these are enumerated through ordered
pairs of disjoint equal-degree subdivisors (zero fiber, pole fiber), with
principality tested in the Jacobian and the pullback verified exactly.  For
totally-ramified divisors n*oo the same locus is decided per function by
exact functional decomposition through the expansion at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from .errors import InvalidInput, PreconditionFailed, Unsupported
from .exactalg import (
    POLY_ONE,
    POLY_ZERO,
    RatPolynomial,
    factor_over_rationals,
    poly_gcd,
    rat_to_str,
)
from .hypcurve import (
    INFINITY,
    CurveFunction,
    Divisor,
    HyperellipticCurve,
    Place,
    _monomials_upto,
    _monomial_function,
    function_degree,
    function_series,
    function_valuation,
    function_with_divisor,
    is_principal,
    pole_divisor,
    riemann_roch_basis,
    zero_divisor,
    _ord_u,
    _sqrt_lift,
)
from .linalg import SpanChecker, in_span
from .numfield import NfPolynomial, NumberField, nf_norm


# ----------------------------------------------------------------------
# points of the projective line over Q

POINT_INF = ("inf",)


def point_rat(q) -> tuple:
    return ("rat", Fraction(q))


def point_closed(minpoly: RatPolynomial) -> tuple:
    if minpoly.degree == 1:
        return point_rat(-minpoly[0])
    return ("poly", minpoly.monic())


def point_degree(pt) -> int:
    if pt[0] == "poly":
        return pt[1].degree
    return 1


def point_sort_key(pt):
    if pt[0] == "inf":
        return (2, ())
    if pt[0] == "rat":
        return (0, (pt[1],))
    return (1, pt[1].coeffs)


def point_to_json(pt):
    if pt[0] == "inf":
        return "inf"
    if pt[0] == "rat":
        return rat_to_str(pt[1])
    return {"minpoly": pt[1].to_json()}


# ----------------------------------------------------------------------
# values of functions at places

def function_value_at_place(curve, f: CurveFunction, place: Place):
    """The image g(P) as a point of P^1: ('inf',), ('rat', q), or an
    algebraic value tagged with enough data to recover its minimal
    polynomial over Q."""
    v = function_valuation(curve, f, place)
    if v < 0:
        return POINT_INF
    if v > 0:
        return point_rat(0)
    if place.kind == INFINITY.kind:
        s = function_series(curve, f, 2)
        return point_rat(s.coefficient(0))
    u = place.u
    jden = _ord_u(f.den, u) if f.den.degree > 0 else 0
    if place.kind == "split":
        k = jden + 1
        vk = _sqrt_lift(curve, u, place.v, k)
        w = (f.a + f.b * vk) % (u ** k)
        w1 = w // (u ** jden) if jden else w
        d1 = (f.den // (u ** jden)) if jden else f.den
        L = None
        num = w1 % u
        den = d1 % u
        if u.degree == 1:
            c = -u[0]
            return point_rat(num(c) / den(c))
        L = NumberField(u, check=False)
        val = L.from_poly(num) * L.from_poly(den).inverse()
        if val.is_rational():
            return point_rat(val.as_rational())
        return ("alg", u, val)
    if place.kind == "ramified":
        # numerator valuation is even here, so the y part does not survive
        j = jden  # 2*ord_u(num-part) == 2*jden at valuation zero
        a1 = f.a // (u ** j) if j else f.a
        d1 = f.den // (u ** j) if j else f.den
        if u.degree == 1:
            c = -u[0]
            return point_rat(a1(c) / d1(c))
        L = NumberField(u, check=False)
        val = L.from_poly(a1 % u) * L.from_poly(d1 % u).inverse()
        if val.is_rational():
            return point_rat(val.as_rational())
        return ("alg", u, val)
    # inert place: value lives in the quadratic extension of Q[x]/(u) by ybar
    j = jden
    a1 = f.a // (u ** j) if j else f.a
    b1 = f.b // (u ** j) if j else f.b
    d1 = f.den // (u ** j) if j else f.den
    L = NumberField(u, check=False)
    dinv = L.from_poly(d1 % u).inverse()
    c0 = L.from_poly(a1 % u) * dinv
    c1 = L.from_poly(b1 % u) * dinv
    if c1.is_zero():
        if c0.is_rational():
            return point_rat(c0.as_rational())
        return ("alg", u, c0)
    return ("rel", u, c0, c1)


def _rel_mul(L, hbar, z1, z2):
    """(a0 + a1*ybar)(b0 + b1*ybar) with ybar^2 = hbar, over L."""
    a0, a1 = z1
    b0, b1 = z2
    return (a0 * b0 + a1 * b1 * hbar, a0 * b1 + a1 * b0)


def value_minpoly(curve, value) -> RatPolynomial:
    """Monic minimal polynomial over Q of a finite place value."""
    if value[0] == "rat":
        return RatPolynomial([-value[1], 1])
    if value[0] == "alg":
        return value[2].minimal_polynomial()
    _, u, c0, c1 = value
    L = c0.field
    hbar = L.from_poly(curve.h)
    # z = c0 + c1*ybar is a root of (T - c0)^2 - c1^2 hbar over L
    quad = NfPolynomial(
        L, [c0 * c0 - c1 * c1 * hbar, L.element([-2]) * c0, L.one]
    )
    char = nf_norm(quad)
    for factor, _ in factor_over_rationals(char).factors:
        # evaluate factor at z in the relative ring
        acc = (L.zero, L.zero)
        power = (L.one, L.zero)
        for i, coeff in enumerate(factor.coeffs):
            if i:
                power = _rel_mul(L, hbar, power, (c0, c1))
            if coeff:
                ce = L.element([coeff])
                acc = (acc[0] + ce * power[0], acc[1] + ce * power[1])
        if acc[0].is_zero() and acc[1].is_zero():
            return factor
    raise InvalidInput("no factor of the characteristic polynomial vanishes")


def value_point(curve, value) -> tuple:
    if value[0] in ("inf", "rat"):
        return value
    return point_closed(value_minpoly(curve, value))


# ----------------------------------------------------------------------
# composing a function with a P^1 point polynomial

def compose_point_function(curve, g: CurveFunction, pt) -> CurveFunction:
    """mu(g) for a finite point with minimal polynomial mu (or g - c)."""
    if pt[0] == "rat":
        return g - pt[1]
    acc = CurveFunction(curve, POLY_ZERO)
    for c in reversed(pt[1].coeffs):
        acc = acc * g + c
    return acc


def fiber_over_point(curve, g: CurveFunction, pt) -> Divisor:
    """g^*(pt) as an effective divisor (the scheme fiber)."""
    if pt[0] == "inf":
        return pole_divisor(curve, g)
    return zero_divisor(curve, compose_point_function(curve, g, pt))


# ----------------------------------------------------------------------
# contraction records

@dataclass(frozen=True)
class Contraction:
    """A degree-e map to P^1 whose pullback of target_divisor is D."""

    g: CurveFunction
    e: int
    target_divisor: tuple  # of (point, mult)
    fibers: tuple  # of (point, Divisor), the recorded pullback verification
    source_pair: tuple  # (D0, Dinf) that produced the representative

    @property
    def target_degree(self) -> int:
        return sum(m * point_degree(pt) for pt, m in self.target_divisor)

    def partition_key(self):
        return frozenset(
            frozenset(p.sort_key() for p in fib.support()) for _, fib in self.fibers
        )

    def to_json(self):
        return {
            "g": self.g.to_json(),
            "degree": self.e,
            "target_divisor": [
                {"point": point_to_json(pt), "mult": m}
                for pt, m in self.target_divisor
            ],
            "fibers": [
                {"point": point_to_json(pt), "divisor": fib.to_json()}
                for pt, fib in self.fibers
            ],
        }


@dataclass(frozen=True)
class ContractionSet:
    divisor: Divisor
    contractions: tuple

    def to_json(self):
        return {
            "divisor": self.divisor.to_json(),
            "contractions": [c.to_json() for c in self.contractions],
        }


def _divisors_of(n: int):
    return [e for e in range(2, n) if n % e == 0]


def _verify_contraction(curve, D: Divisor, g: CurveFunction, e: int):
    """Check g^*(image divisor) == D exactly; return a Contraction or None."""
    values = []
    for place, _ in D.entries:
        values.append((place, value_point(curve, function_value_at_place(curve, g, place))))
    groups = {}
    for place, pt in values:
        groups.setdefault((point_sort_key(pt), pt[0]), [pt, []])[1].append(place)
    fibers = []
    target = []
    for _, (pt, places) in sorted(groups.items()):
        fib = fiber_over_point(curve, g, pt)
        expected = Divisor([(p, 1) for p in places])
        if fib != expected:
            return None
        fibers.append((pt, fib))
        target.append((pt, 1))
    total = Divisor([(p, m) for _, fib in fibers for p, m in fib.entries])
    if total != D:
        return None
    if sum(point_degree(pt) * m for pt, m in target) * e != D.degree:
        return None
    return Contraction(
        g=g,
        e=e,
        target_divisor=tuple(target),
        fibers=tuple(fibers),
        source_pair=(),
    )


# memoized per (curve, divisor); plain dict writes are atomic under the GIL,
# and recomputing the same immutable value on a race is harmless
_CONTR_CACHE: dict = {}


def enumerate_contr0(curve, D: Divisor) -> ContractionSet:
    """All genus-0 contraction classes of a multiplicity-one effective D.

    Ordered pairs of disjoint equal-degree subdivisors give candidate maps
    (zero fiber, pole fiber); candidates surviving exact pullback
    verification are deduplicated by their fiber partition of supp D, and
    each class keeps the representative of its lexicographically least
    zero/pole pair.  Results are memoized per (curve, D).
    """
    key = (curve.h, D)
    if key in _CONTR_CACHE:
        return _CONTR_CACHE[key]
    if not D.is_effective() or not D.is_multiplicity_one():
        raise PreconditionFailed("divisor must be effective with multiplicity one")
    d = D.degree
    places = list(D.support())
    candidates = {}
    for e in _divisors_of(d):
        subsets = []
        for r in range(1, len(places) + 1):
            for combo in combinations(range(len(places)), r):
                deg = sum(places[i].degree for i in combo)
                if deg == e:
                    subsets.append(frozenset(combo))
        for s0 in subsets:
            for sinf in subsets:
                if s0 & sinf:
                    continue
                D0 = Divisor([(places[i], 1) for i in s0])
                Dinf = Divisor([(places[i], 1) for i in sinf])
                if not is_principal(curve, D0 - Dinf):
                    continue
                g = function_with_divisor(curve, D0, Dinf)
                rec = _verify_contraction(curve, D, g, e)
                if rec is not None:
                    pair_key = (D0.sort_key(), Dinf.sort_key())
                    candidates[pair_key] = (
                        rec,
                        Contraction(
                            g=rec.g,
                            e=rec.e,
                            target_divisor=rec.target_divisor,
                            fibers=rec.fibers,
                            source_pair=(D0, Dinf),
                        ),
                    )
    # dedup by fiber partition; keep the lexicographically least source pair
    classes = {}
    for pair_key in sorted(candidates):
        rec = candidates[pair_key][1]
        pkey = (rec.e, rec.partition_key())
        if pkey not in classes:
            classes[pkey] = rec
    chosen = sorted(
        classes.values(),
        key=lambda c: (c.e, c.source_pair[0].sort_key(), c.source_pair[1].sort_key()),
    )
    result = ContractionSet(divisor=D, contractions=tuple(chosen))
    _CONTR_CACHE[key] = result
    return result


# ----------------------------------------------------------------------
# membership: does f factor through g?

def _p1_basis_functions(curve, g: CurveFunction, E):
    """Pullbacks under g of a partial-fraction basis of L(E) on P^1."""
    out = [CurveFunction(curve, POLY_ONE)]
    for pt, m in E:
        if pt[0] == "inf":
            for j in range(1, m + 1):
                out.append(g ** j)
        else:
            mu_of_g = compose_point_function(curve, g, pt)
            inv = mu_of_g.inverse()
            kdeg = 1 if pt[0] == "rat" else pt[1].degree
            for j in range(1, m + 1):
                for i in range(kdeg):
                    out.append((g ** i) * (inv ** j))
    return out


def _function_vectors(curve, funcs):
    """Coefficient vectors of the given functions in one coordinate system
    (a common polynomial denominator, monomials wide enough for everyone)."""
    common = POLY_ONE
    for q in funcs:
        common = common * (q.den // poly_gcd(common, q.den))
    pairs = []
    for q in funcs:
        mul = common // q.den
        pairs.append((q.a * mul, q.b * mul))
    g2 = 2 * curve.genus + 1
    need = 0
    for a, b in pairs:
        if not a.is_zero():
            need = max(need, 2 * a.degree)
        if not b.is_zero():
            need = max(need, 2 * b.degree + g2)
    monomials = _monomials_upto(curve, need)
    return [
        [b[i] if isy else a[i] for i, isy in monomials] for a, b in pairs
    ]


def _membership(curve, target: CurveFunction, basis) -> list | None:
    """Coordinates of target in span(basis) over Q, or None."""
    vectors = _function_vectors(curve, [target] + list(basis))
    return in_span(vectors[1:], vectors[0])


def factors_through(curve, f: CurveFunction, g) -> bool:
    """Whether f = phi(g) for a rational map phi with poles bounded by f's.

    g may be a Contraction or a bare CurveFunction.  Decided by exact linear
    algebra: f must lie in the span of pullbacks under g of the basis of
    L(E) on P^1, where E is the largest divisor with g^*(E) <= polediv(f).
    """
    if isinstance(g, Contraction):
        g = g.g
    if f.is_zero() or f.is_constant():
        raise InvalidInput("f must be nonconstant")
    pd = pole_divisor(curve, f)
    # candidate target points: images of the poles of f
    seen = {}
    for place, _ in pd.entries:
        pt = value_point(curve, function_value_at_place(curve, g, place))
        seen.setdefault((point_sort_key(pt), pt[0]), pt)
    E = []
    for _, pt in sorted(seen.items()):
        fib = fiber_over_point(curve, g, pt)
        m = min(pd.mult(p) // m_f for p, m_f in fib.entries)
        if m > 0:
            E.append((pt, m))
    basis = _p1_basis_functions(curve, g, E)
    return _membership(curve, f, basis) is not None


# ----------------------------------------------------------------------
# dimension comparison (sanity bound for every contraction)

def dimension_comparison_check(curve, D: Divisor, contraction: Contraction):
    """dim P(D) versus dim P(D'); the inequality must hold strictly."""
    if D.degree <= 2 * curve.genus:
        raise InvalidInput("requires deg D > 2g")
    dim_pd = riemann_roch_basis(curve, D).dimension - 1
    dim_pdprime = contraction.target_degree
    return (dim_pd, dim_pdprime, dim_pd > dim_pdprime)


# ----------------------------------------------------------------------
# functional decomposition for totally ramified pole divisors

def decompose_totally_ramified(curve, f: CurveFunction, e: int):
    """If f = phi(g) with deg g = e and f's pole divisor n*oo, return
    (g, phi coefficients); otherwise None.

    g is pinned to L(e*oo), leading series coefficient 1 and constant term
    0, which makes it unique per e; its pole part is read off the m-th root
    of the expansion of f at infinity.
    """
    if not f.is_polynomial_form():
        raise InvalidInput("decomposition expects a polynomial-form function")
    n = function_degree(curve, f)
    if n % e or not (1 < e < n):
        return None
    m = n // e
    monos = _monomials_upto(curve, e)
    pole_orders = [2 * i if not isy else 2 * i + 2 * curve.genus + 1 for i, isy in monos]
    if max(pole_orders) != e:
        return None  # no exact-degree-e function exists (Weierstrass gap)
    nterms = 2 * n + 4
    s = function_series(curve, f, nterms)
    lead = s.coefficient(-n)
    root = (s * (1 / lead)).nth_root(m)
    if root is None:
        return None
    # match the pole part of the root against the monomial expansions
    residual = root
    gfun = CurveFunction(curve, POLY_ZERO)
    order_to_mono = {}
    for (i, isy), o in zip(monos, pole_orders):
        if o > 0:
            order_to_mono[o] = (i, isy)
    for o in sorted(order_to_mono, reverse=True):
        c = residual.coefficient(-o)
        if c == 0:
            continue
        i, isy = order_to_mono[o]
        mono = _monomial_function(curve, i, isy)
        mser = function_series(curve, mono, nterms)
        coeff = c / mser.coefficient(-o)
        residual = residual - mser * coeff
        gfun = gfun + mono * coeff
    for eo in range(-e, 0):
        if residual.coefficient(eo) != 0:
            return None
    if gfun.is_zero() or function_degree(curve, gfun) != e:
        return None
    # verify f in span{1, g, ..., g^m} exactly
    powers = []
    p = CurveFunction(curve, POLY_ONE)
    for j in range(m + 1):
        if j:
            p = p * gfun
        powers.append(p)
    coords = _membership(curve, f, powers)
    if coords is None:
        return None
    return gfun, coords


# ----------------------------------------------------------------------
# the imprimitive locus test

_TR_SPAN_CACHE: dict = {}


def _monomial_orders(curve, bound):
    g2 = 2 * curve.genus + 1
    monos = _monomials_upto(curve, bound)
    return monos, [2 * i + (g2 if isy else 0) for i, isy in monos]


def _tr_span_checker(curve, n: int, e: int):
    """For the unique degree-e class G in a two-dimensional L(e*oo):
    membership data for span{1, G, ..., G^(n/e)} inside L(n*oo)."""
    key = (curve.h, n, e)
    if key not in _TR_SPAN_CACHE:
        monos_e, orders_e = _monomial_orders(curve, e)
        i, isy = monos_e[orders_e.index(e)]
        G = _monomial_function(curve, i, isy)
        monos_n, _ = _monomial_orders(curve, n)
        rows = []
        p = CurveFunction(curve, POLY_ONE)
        for j in range(n // e + 1):
            if j:
                p = p * G
            rows.append([p.b[k] if isy_n else p.a[k] for k, isy_n in monos_n])
        _TR_SPAN_CACHE[key] = (SpanChecker(rows), G)
    return _TR_SPAN_CACHE[key]


@dataclass(frozen=True)
class LocusTestResult:
    verdict: str  # "imprimitive" | "no_factorization"
    contraction: Contraction | None = None
    locus_s: bool = False
    note: str = ""

    @property
    def is_imprimitive(self):
        return self.verdict == "imprimitive"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "locus_s": self.locus_s,
            "note": self.note,
            "contraction": self.contraction.to_json() if self.contraction else None,
        }


def imprimitive_locus_test(curve, D: Divisor, f: CurveFunction) -> LocusTestResult:
    """Does f of full degree factor through a genus-0 contraction of D?

    Functions of degree below deg D belong to the degenerate locus and are
    reported as such.  Multiplicity-one D uses the pair enumeration; pure
    n*oo uses exact decomposition (complete for both shapes).
    """
    if f.is_zero() or f.is_constant():
        return LocusTestResult(
            verdict="no_factorization", locus_s=True, note="constant function"
        )
    deg = function_degree(curve, f)
    if deg != D.degree:
        return LocusTestResult(
            verdict="no_factorization",
            locus_s=True,
            note=f"degree {deg} below ambient {D.degree}",
        )
    if D.is_multiplicity_one():
        contrs = enumerate_contr0(curve, D)
        for c in contrs.contractions:
            if factors_through(curve, f, c):
                return LocusTestResult(verdict="imprimitive", contraction=c)
        return LocusTestResult(verdict="no_factorization")
    if len(D.entries) == 1 and D.entries[0][0] == INFINITY:
        n = D.degree
        if not f.is_polynomial_form():
            raise InvalidInput("f must lie in L(n*oo)")
        monos_n, _ = _monomial_orders(curve, n)
        fvec = [f.b[i] if isy else f.a[i] for i, isy in monos_n]

        def hit(g, e):
            fibers = ((POINT_INF, Divisor([(INFINITY, e)])),)
            return LocusTestResult(
                verdict="imprimitive",
                contraction=Contraction(
                    g=g,
                    e=e,
                    target_divisor=((POINT_INF, n // e),),
                    fibers=fibers,
                    source_pair=(),
                ),
            )

        for e in _divisors_of(n):
            monos_e, orders_e = _monomial_orders(curve, e)
            if max(orders_e) != e:
                continue  # Weierstrass gap: no degree-e map totally ramified at oo
            if len(monos_e) == 2:
                # single class modulo affine maps; a precomputed span decides
                checker, G = _tr_span_checker(curve, n, e)
                if checker.contains(fvec):
                    return hit(G, e)
                continue
            if e % 2 == 0:
                continue  # even-degree maps here are polynomials in x: e = 2 covers them
            dec = decompose_totally_ramified(curve, f, e)
            if dec is not None:
                return hit(dec[0], e)
        return LocusTestResult(verdict="no_factorization")
    raise Unsupported(
        "locus test implemented for multiplicity-one divisors and n*oo only"
    )


def clear_contraction_cache():
    _CONTR_CACHE.clear()
