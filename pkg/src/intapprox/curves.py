"""Parametrized rational curves on the del Pezzo surface model, their log
classification against the boundary, integral progressions on log rational
curves, Pell-orbit generation of integral points on nodal curves, and the
infinitude predicate.

Parametrizations are pairs of integer binary forms per P1 factor; all curve
algebra is exact (sympy), all point generation is integer arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import sympy

from .arith import PellSolution, pell_fundamental, SquareInput
from .delpezzo6 import BlownUpCenter, S0, S1, T0, T1, is_integral
from .metrics import P1xP1Point

U, V = sympy.symbols("u v", integer=True)

BOUNDARY = S0 * T0 - S1 * T1


class DegenerateParameters(ValueError):
    pass


class BoundaryContainsCurve(ValueError):
    pass


class NotIntegralBase(ValueError):
    pass


class VerificationFailed(RuntimeError):
    pass


class NoRealUnits(ValueError):
    """The norm-one torus has no infinite unit group (ab <= 0 or square)."""


class ReducibleCurve(ValueError):
    pass


# ---------------------------------------------------------------------------
# binary forms and parametrized curves


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous integer form in (u, v); coeffs[i] is the u^i v^(d-i)
    coefficient."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("empty form")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, u0, v0):
        d = self.degree
        return sum(c * u0**i * v0 ** (d - i) for i, c in enumerate(self.coeffs))

    def to_expr(self):
        d = self.degree
        return sum(c * U**i * V ** (d - i) for i, c in enumerate(self.coeffs))

    @classmethod
    def from_expr(cls, expr, degree=None):
        p = sympy.Poly(sympy.expand(expr), U, V)
        monos = p.monoms()
        degs = {sum(m) for m in monos}
        if len(degs) > 1:
            raise ValueError(f"not homogeneous: {expr}")
        d = degs.pop() if degs else 0
        if degree is not None:
            if d > degree:
                raise ValueError("degree too large")
            d = degree
        coeffs = [0] * (d + 1)
        for m, c in zip(p.monoms(), p.coeffs()):
            coeffs[m[0]] = int(c)
        return cls(tuple(coeffs))


def _pair_from_rational(num, den, p):
    """Binary-form pair (den, num) from a rational function num/den in the
    variable p, homogenized to common degree and with common content and
    common polynomial factors removed."""
    num = sympy.Poly(sympy.expand(num), p)
    den = sympy.Poly(sympy.expand(den), p)
    g = sympy.gcd(num, den)
    num, den = sympy.div(num, g)[0], sympy.div(den, g)[0]
    d = max(num.degree(), den.degree())

    def homog(poly):
        e = sympy.expand(poly.as_expr().subs(p, U / V) * V**d)
        return BinaryForm.from_expr(e, degree=d)

    f_den, f_num = homog(den), homog(num)
    c = 0
    for x in f_den.coeffs + f_num.coeffs:
        c = gcd(c, x)
    if c > 1:
        f_den = BinaryForm(tuple(x // c for x in f_den.coeffs))
        f_num = BinaryForm(tuple(x // c for x in f_num.coeffs))
    return f_den, f_num


@dataclass(frozen=True)
class ParamCurve:
    """Map P1 -> P1xP1 by two pairs of integer binary forms of common
    degree per factor, each pair without common polynomial factor."""

    s_forms: tuple  # (BinaryForm s0, BinaryForm s1)
    t_forms: tuple

    def __post_init__(self):
        for pair in (self.s_forms, self.t_forms):
            if pair[0].degree != pair[1].degree:
                raise ValueError("forms in a pair must share a degree")

    def point(self, u0, v0=1):
        """Evaluate at a rational parameter (u0 integer or Fraction)."""
        if isinstance(u0, Fraction) or isinstance(v0, Fraction):
            u0 = Fraction(u0)
            v0 = Fraction(v0)
            den = u0.denominator * v0.denominator
            u0, v0 = int(u0 * den), int(v0 * den)
        g = gcd(u0, v0)
        if g == 0:
            raise ValueError("parameter [0:0]")
        u0, v0 = u0 // g, v0 // g
        s = (self.s_forms[0](u0, v0), self.s_forms[1](u0, v0))
        t = (self.t_forms[0](u0, v0), self.t_forms[1](u0, v0))
        return P1xP1Point.make(s, t)

    def exprs(self):
        return tuple(f.to_expr() for f in self.s_forms + self.t_forms)

    def mobius(self, mat):
        """Precompose with [u:v] = mat * [U:V] (integer 2x2, det != 0)."""
        (p, q), (r, s) = mat
        if p * s - q * r == 0:
            raise ValueError("singular substitution")
        out = []
        for f in self.s_forms + self.t_forms:
            d = f.degree
            e = f.to_expr().subs(
                {U: p * U + q * V, V: r * U + s * V}, simultaneous=True
            )
            out.append(BinaryForm.from_expr(e, degree=d))
        return ParamCurve((out[0], out[1]), (out[2], out[3]))

    def pullback(self, boundary):
        """Pull a bihomogeneous polynomial in (s0,s1,t0,t1) back to a
        binary form in the parameter."""
        e0, e1, e2, e3 = self.exprs()
        expr = sympy.expand(boundary.subs({S0: e0, S1: e1, T0: e2, T1: e3}))
        return expr


# ---------------------------------------------------------------------------
# the concrete families


def line_curve(which):
    """The (+-1)-line through ([1:1],[1:1]): s0 = s1 (which=1) or
    t0 = t1 (which=2), parametrized so [n:1] maps to the n-th point."""
    const = (BinaryForm((1,)), BinaryForm((1,)))
    var = (BinaryForm.from_expr(U + V), BinaryForm.from_expr(U))
    if which == 1:
        return ParamCurve(const, var)
    if which == 2:
        return ParamCurve(var, const)
    raise ValueError("which must be 1 or 2")


def line_points(which, n):
    """The n-th integral point on line 1 or 2: ([1:1],[n+1:n]) or
    ([n+1:n],[1:1])."""
    if which == 1:
        return P1xP1Point.make((1, 1), (n + 1, n))
    if which == 2:
        return P1xP1Point.make((n + 1, n), (1, 1))
    raise ValueError("which must be 1 or 2")


def conic_param(a, b):
    """Parametrization of the tangent conic a(s0t0 - s1t1) +
    b(s0 - s1)(t0 - t1) = 0: psi([u:v]) = ([u:v], [av + b(u-v) : au + b(u-v)])."""
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        raise DegenerateParameters("a and b must be nonzero")
    if gcd(a, b) != 1:
        raise ValueError("a, b must be coprime")
    s = (BinaryForm((0, 1)), BinaryForm((1, 0)))  # u, v
    t = (
        BinaryForm.from_expr(a * V + b * (U - V)),
        BinaryForm.from_expr(a * U + b * (U - V)),
    )
    return ParamCurve(s, t)


def nodal_param(a, b):
    """Parametrization of the nodal curve a*s0*s1*(t0-t1)^2 =
    b*t0*t1*(s0-s1)^2 through the affine chart u = s1/s0 = b(1-p)/(p(ap-b)),
    w = t1/t0 = 1 - p(1-u)."""
    a, b = int(a), int(b)
    _check_nodal_params(a, b)
    p = sympy.symbols("p")
    u_num = b * (1 - p)
    u_den = p * (a * p - b)
    # w = 1 - p(1 - u) = (u_den - p*(u_den - u_num)) / u_den
    w_num = sympy.expand(u_den - p * (u_den - u_num))
    w_den = u_den
    s_forms = _pair_from_rational(u_num, u_den, p)
    t_forms = _pair_from_rational(w_num, w_den, p)
    curve = ParamCurve(s_forms, t_forms)
    # exact sanity check against the defining polynomial
    f = a * S0 * S1 * (T0 - T1) ** 2 - b * T0 * T1 * (S0 - S1) ** 2
    if sympy.expand(curve.pullback(f)) != 0:
        raise VerificationFailed("nodal parametrization is off the curve")
    return curve


def _check_nodal_params(a, b):
    if gcd(a, b) != 1:
        raise ValueError("a, b must be coprime")
    d = a * b
    if d <= 0 or isqrt(d) ** 2 == d:
        raise NoRealUnits(f"ab = {d} is not a positive nonsquare")


def cuspidal_param(a, b):
    """Parametrization of the cuspidal curve
    a^2 (t1-t0)^2 s0 s1 + b^2 (s1-s0)^2 t0 t1 - 2ab s1 t1 (s1-s0)(t1-t0) = 0
    by the pencil of (1,1)-curves through the cusp (1,1) with the cuspidal
    tangent a(t - 1) = b(s - 1); the moving residual intersection point is
    the parametrization."""
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        raise DegenerateParameters("a and b must be nonzero")
    if gcd(a, b) != 1:
        raise ValueError("a, b must be coprime")
    if (a, b) in ((1, -1), (-1, 1)):
        raise ReducibleCurve("(a, b) = +-(1, -1) gives a reducible divisor")

    sg, tg, lam = sympy.symbols("sigma tau lambda")
    f = (
        a**2 * (tg - 1) ** 2 * sg
        + b**2 * (sg - 1) ** 2 * tg
        - 2 * a * b * sg * tg * (sg - 1) * (tg - 1)
    )
    # pencil c00 + c10*s + c01*t + c11*s*t through (1,1) with tangent
    # direction (a, b): conditions g(1,1) = 0, grad g(1,1).(a,b) = 0
    c = sympy.symbols("c0:4")
    g = c[0] + c[1] * sg + c[2] * tg + c[3] * sg * tg
    cond1 = g.subs({sg: 1, tg: 1})
    cond2 = a * sympy.diff(g, sg).subs({sg: 1, tg: 1}) + b * sympy.diff(
        g, tg
    ).subs({sg: 1, tg: 1})
    sols = sympy.linsolve([cond1, cond2], list(c))
    (sol,) = sols
    free = sorted(sol.free_symbols, key=lambda s: s.name)
    assert len(free) == 2
    basis = []
    for pick in ((1, 0), (0, 1)):
        subs = dict(zip(free, pick))
        basis.append([x.subs(subs) for x in sol])
    coeffs = [basis[0][i] + lam * basis[1][i] for i in range(4)]
    # solve tau from the pencil member: tau = -(c0 + c1 s)/(c2 + c3 s)
    tau_num = -(coeffs[0] + coeffs[1] * sg)
    tau_den = coeffs[2] + coeffs[3] * sg
    num, _den = sympy.fraction(sympy.together(f.subs(tg, tau_num / tau_den)))
    fs = sympy.Poly(sympy.expand(num), sg)
    quo, rem = sympy.div(fs, sympy.Poly((sg - 1) ** 3, sg), sg)
    if sympy.expand(rem.as_expr()) != 0:
        raise VerificationFailed("cusp does not absorb multiplicity 3")
    quo = sympy.Poly(quo, sg)
    if quo.degree() != 1:
        raise VerificationFailed("residual intersection is not a single point")
    c1, c0 = quo.all_coeffs()
    sigma_of_lam = sympy.cancel(-c0 / c1)
    tau_of_lam = sympy.cancel(
        (tau_num / tau_den).subs(sg, sigma_of_lam)
    )
    s_num, s_den = sympy.fraction(sympy.together(sigma_of_lam))
    t_num, t_den = sympy.fraction(sympy.together(tau_of_lam))
    s_forms = _pair_from_rational(s_num, s_den, lam)
    t_forms = _pair_from_rational(t_num, t_den, lam)
    curve = ParamCurve(s_forms, t_forms)

    F = (
        a**2 * (T1 - T0) ** 2 * S0 * S1
        + b**2 * (S1 - S0) ** 2 * T0 * T1
        - 2 * a * b * S1 * T1 * (S1 - S0) * (T1 - T0)
    )
    if sympy.expand(curve.pullback(F)) != 0:
        raise VerificationFailed("parametrization is off the curve")
    # the trivial integral point ([1:0],[1:0]) must be in the image:
    # both numerators (s1- and t1-forms) share a root
    g = sympy.gcd(curve.s_forms[1].to_expr(), curve.t_forms[1].to_expr())
    if sympy.Poly(g, U, V).total_degree() < 1:
        raise VerificationFailed("([1:0],[1:0]) not found in the image")
    return curve


# ---------------------------------------------------------------------------
# log classification


class LogKind(enum.Enum):
    LOG_RATIONAL = "LogRational"
    TOROIDAL = "Toroidal"
    HIGHER_LOG_GENUS = "HigherLogGenus"


@dataclass(frozen=True)
class CurveClass:
    kind: LogKind
    boundary_preimage_degree: int
    nodal: bool = False
    splitting_disc: int = None


def _squarefree_kernel(n):
    """Largest squarefree divisor, keeping the sign."""
    n = int(n)
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for p, e in sympy.factorint(n).items():
        if e % 2 == 1:
            out *= p
    return sign * out


def _strict_transform_pullback(curve: ParamCurve, boundary):
    """Pull the boundary back along the parametrization and divide out the
    exceptional contribution: the boundary lives on the blowup as a strict
    transform, so parameters mapping to a blown-up center must not count
    as boundary preimages.  The center factor is gcd of the two coordinate
    forms vanishing there (local intersection with the exceptional curve)."""
    pb = curve.pullback(boundary)
    if pb == 0:
        return pb
    s0f, s1f = (f.to_expr() for f in curve.s_forms)
    t0f, t1f = (f.to_expr() for f in curve.t_forms)
    for exc in (sympy.gcd(s0f, t1f), sympy.gcd(s1f, t0f)):
        if sympy.Poly(exc, U, V).total_degree() >= 1:
            q, r = sympy.div(sympy.Poly(pb, U, V), sympy.Poly(exc, U, V))
            if sympy.expand(r.as_expr()) != 0:
                raise VerificationFailed("exceptional factor does not divide")
            pb = q.as_expr()
    return pb


def classify_log_curve(curve: ParamCurve, boundary=BOUNDARY):
    """Classify a parametrized curve by the reduced boundary preimage:
    at most one geometric point -> log rational; exactly two -> toroidal
    (nodal if both map to the same surface point; splitting_disc records
    the quadratic field of irrational preimages); three or more -> higher
    log genus."""
    pb = _strict_transform_pullback(curve, boundary)
    if pb == 0:
        raise BoundaryContainsCurve("boundary pulls back to zero")
    _content, factors = sympy.factor_list(pb, U, V)
    distinct = []  # (irreducible expr, degree)
    for fac, _mult in factors:
        d = sympy.Poly(fac, U, V).total_degree()
        if d >= 1:
            distinct.append((fac, d))
    deg = sum(d for _f, d in distinct)

    if deg <= 1:
        return CurveClass(LogKind.LOG_RATIONAL, deg)
    if deg >= 3:
        return CurveClass(LogKind.HIGHER_LOG_GENUS, deg)

    # toroidal: two geometric preimages
    if len(distinct) == 2:
        # two rational points [u:v]
        pts = [_linear_root(f) for f, _d in distinct]
        imgs = [curve.point(*pt) for pt in pts]
        return CurveClass(LogKind.TOROIDAL, 2, nodal=imgs[0] == imgs[1])

    fac = distinct[0][0]
    p = sympy.Poly(fac, U, V)
    A = p.coeff_monomial(U**2)
    Bc = p.coeff_monomial(U * V)
    C = p.coeff_monomial(V**2)
    disc = int(Bc * Bc - 4 * A * C)
    sdisc = _squarefree_kernel(disc)
    # conjugate preimages [ -B +- sqrt(disc) : 2A ]
    w = sympy.sqrt(disc)
    pe = (-Bc + w, 2 * A)
    pc = (-Bc - w, 2 * A)

    def _coords(pt):
        return [
            sympy.expand(f.to_expr().subs({U: pt[0], V: pt[1]}))
            for f in curve.s_forms + curve.t_forms
        ]

    ye, yc = _coords(pe), _coords(pc)
    same_s = sympy.simplify(ye[0] * yc[1] - ye[1] * yc[0]) == 0
    same_t = sympy.simplify(ye[2] * yc[3] - ye[3] * yc[2]) == 0
    return CurveClass(
        LogKind.TOROIDAL, 2, nodal=bool(same_s and same_t), splitting_disc=sdisc
    )


def _linear_root(f):
    """Root [u:v] of a linear form in (u, v), as an integer pair."""
    p = sympy.Poly(f, U, V)
    a = int(p.coeff_monomial(U)) if p.coeff_monomial(U) else 0
    b = int(p.coeff_monomial(V)) if p.coeff_monomial(V) else 0
    return (-b, a) if a else (1, 0) if b else (0, 0)


def has_infinitely_many(cls: CurveClass, has_regular_integral_point):
    """Infinitude of integral points on the curve (over the rationals,
    where the only archimedean place must split in the boundary-preimage
    field)."""
    if cls.kind is LogKind.HIGHER_LOG_GENUS:
        return False
    if cls.kind is LogKind.LOG_RATIONAL:
        return bool(has_regular_integral_point)
    return bool(
        has_regular_integral_point
        and cls.splitting_disc is not None
        and cls.splitting_disc > 0
    )


# ---------------------------------------------------------------------------
# integral progressions on log rational curves


@dataclass(frozen=True)
class IntegralProgression:
    """An affine progression of integral points on a log rational curve:
    tau -> curve.point(scale * tau) after recentering the parameter so
    [1:0] is the boundary preimage and [0:1] the base point."""

    curve: ParamCurve
    scale: int
    base_param: Fraction
    verified_range: int

    def point(self, tau):
        return self.curve.point(self.scale * tau, 1)


def _lcm_growth():
    c = 1
    k = 2
    while True:
        yield c
        c = c * k // gcd(c, k)
        k += 1


def integral_reparametrize(curve: ParamCurve, t0, boundary=BOUNDARY, n_check=1000):
    """Recenter a log rational curve so an arithmetic progression of
    parameters has integral image, starting from the integral point at
    parameter [t0 : 1].

    Returns an IntegralProgression (recentered curve + scale c) whose
    point(tau) is integral for all integers tau; verified on
    tau in [-n_check, n_check] and certified by the boundary pullback of
    the recentered curve being a constant times a power of the second
    coordinate (so the progression never meets the boundary)."""
    t0 = Fraction(t0)
    try:
        base = curve.point(t0.numerator, t0.denominator)
        if not is_integral(base):
            raise NotIntegralBase(f"{base} is not integral")
    except BlownUpCenter as e:
        raise NotIntegralBase(str(e))

    cls = classify_log_curve(curve, boundary)
    if cls.kind is not LogKind.LOG_RATIONAL:
        raise VerificationFailed("curve is not log rational")
    if cls.boundary_preimage_degree == 0:
        anchor = (1, 0) if t0 != 0 else (1, 1)
    else:
        pb = _strict_transform_pullback(curve, boundary)
        _c, factors = sympy.factor_list(pb, U, V)
        lin = next(f for f, _m in factors if sympy.Poly(f, U, V).total_degree() == 1)
        anchor = _linear_root(lin)
    mat = ((anchor[0], t0.numerator), (anchor[1], t0.denominator))
    if mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0] == 0:
        raise NotIntegralBase("base point lies over the boundary")
    recentered = curve.mobius(mat)

    # certificate: recentered boundary pullback is c0 * V^deg
    pb2 = sympy.Poly(_strict_transform_pullback(recentered, boundary), U, V)
    if any(m[0] != 0 for m in pb2.monoms()):
        raise VerificationFailed("boundary preimage not at infinity after recentering")

    grow = _lcm_growth()
    for _round in range(12):
        c = next(grow)
        ok = True
        for tau in range(-n_check, n_check + 1):
            try:
                if not is_integral(recentered.point(c * tau, 1)):
                    ok = False
                    break
            except BlownUpCenter:
                ok = False
                break
        if ok:
            return IntegralProgression(recentered, c, t0, n_check)
    raise VerificationFailed("no progression scale within budget")


# ---------------------------------------------------------------------------
# Pell orbits on nodal curves


@dataclass(frozen=True)
class UnitOrbit:
    disc: int
    base_param: Fraction
    pell: PellSolution
    period: int
    offsets: frozenset


def _orbit_point(a, b, p):
    """Surface point at orbit parameter p (chart u = s1/s0, w = t1/t0)."""
    den = p * (a * p - b)
    if p == 0 or den == 0:
        raise DegenerateParameters(f"orbit parameter {p} degenerates")
    u = Fraction(b * (1 - p), den)
    w = 1 - p * (1 - u)
    s = (u.denominator, u.numerator)
    t = (w.denominator, w.numerator)
    return P1xP1Point.make(s, t)


def nodal_orbit(a, b, count):
    """Generate integral points on the nodal curve a*s0*s1*(t0-t1)^2 =
    b*t0*t1*(s0-s1)^2 by the Möbius action p -> (m p + n b)/(n a p + m) of
    the fundamental solution of m^2 - ab n^2 = 1, starting from p = 0
    (the orbit of the trivial integral point).

    Returns (UnitOrbit, integral points among the first `count` steps).
    The period/offset pattern of integral members is detected empirically
    from the generated sample."""
    a, b = int(a), int(b)
    _check_nodal_params(a, b)
    d = a * b
    pell = pell_fundamental(d)
    m, n = pell.m, pell.n

    p = Fraction(0)
    flags = []
    points = []
    fam_a, fam_b = a, b
    for _k in range(count):
        p = Fraction(m * p + n * b, n * a * p + m)
        y = _orbit_point(a, b, p)
        s0, s1 = y.s.coords
        t0, t1 = y.t.coords
        assert fam_a * s0 * s1 * (t0 - t1) ** 2 == fam_b * t0 * t1 * (s0 - s1) ** 2
        try:
            flag = is_integral(y)
        except BlownUpCenter:
            flag = False
        flags.append(flag)
        if flag:
            points.append(y)

    period = len(flags)
    for e in range(1, len(flags) + 1):
        if all(flags[i] == flags[i - e] for i in range(e, len(flags))):
            period = e
            break
    offsets = frozenset(i % period for i, fl in enumerate(flags) if fl)
    orbit = UnitOrbit(d, Fraction(0), pell, period, offsets)
    return orbit, points


# ---------------------------------------------------------------------------
# negative control: a singular cubic with a single integral point


def sweep_singular_cubic(xbound):
    """All integer solutions of 2*y^2 = x^2*(2*x + 1) with |x| <= xbound.
    (The curve's only boundary preimage field is imaginary, so beyond the
    singular point at the origin no integral points should appear.)"""
    out = []
    for x in range(0, xbound + 1):  # 2x+1 < 0 forces RHS < 0 <= LHS
        rhs = x * x * (2 * x + 1)
        if rhs % 2:
            continue
        h = rhs // 2
        y = isqrt(h)
        if y * y == h:
            out.append((x, y))
            if y:
                out.append((x, -y))
    return sorted(out)


# ---------------------------------------------------------------------------
# ready-made generators for the named families through ([1:1],[1:1])


def _find_integral_base(curve, search=24):
    """Small parameter value [p:q] whose image is an integral point."""
    from .arith import ZeroPair

    for q in range(1, 6):
        for p in range(-search, search + 1):
            if gcd(p, q) != 1:
                continue
            try:
                y = curve.point(p, q)
                if is_integral(y):
                    return Fraction(p, q)
            except (BlownUpCenter, ZeroPair):
                continue
    raise NotIntegralBase("no small integral base point found")


def family_integral_points(name, a=1, b=1, height_bound=None, count=None):
    """Integral points on one of the named families through ([1:1],[1:1]).

    name: line1 | line2 | conic | nodal | cuspidal.  Lines and log rational
    families (conic, cuspidal) are generated as progressions up to
    height_bound; the nodal family yields the first `count` Pell-orbit
    points (default 40).  Returns a list of P1xP1Point.
    """
    from .metrics import dp6_height

    if name in ("line1", "line2"):
        if height_bound is None:
            raise ValueError("lines need a height bound")
        which = 1 if name == "line1" else 2
        return [
            line_points(which, n)
            for n in range(-height_bound, height_bound)
            if max(abs(n + 1), abs(n)) <= height_bound
        ]
    if name == "nodal":
        _orbit, pts = nodal_orbit(a, b, count or 40)
        if height_bound is not None:
            pts = [y for y in pts if dp6_height(y) <= height_bound]
        return pts
    if name == "conic":
        curve = conic_param(a, b)
    elif name == "cuspidal":
        curve = cuspidal_param(a, b)
    else:
        raise ValueError(f"unknown family {name}")
    if height_bound is None:
        raise ValueError(f"{name} needs a height bound")
    prog = integral_reparametrize(curve, _find_integral_base(curve))
    out = []
    over = 0
    for tau in _spread():
        try:
            y = prog.point(tau)
        except BlownUpCenter:
            continue
        if dp6_height(y) > height_bound:
            # heights grow monotonically in |tau| past small offsets
            over += 1
            if over > 12:
                break
            continue
        over = 0
        out.append(y)
    return out


def _spread():
    """0, 1, -1, 2, -2, ..."""
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1
