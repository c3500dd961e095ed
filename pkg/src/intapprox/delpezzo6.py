"""Integral points on the blowup of P1xP1 at ([0:1],[1:0]) and ([1:0],[0:1])
with the bilinear boundary s0*t0 = s1*t1.

A rational point y = ([s0:s1],[t0:t1]) (primitive coordinate pairs) is
integral away from the boundary iff

    s0*t0 - s1*t1 = +- gcd(s0,t1) * gcd(s1,t0),

equivalently the strict-transform coordinates s0' t0' - s1' t1' obtained by
dividing out e1 = gcd(s0,t1), e2 = gcd(s1,t0) form a unit.  This module
implements the predicate, the coordinate lift, exhaustive bounded-height
enumeration, a constructive congruence lift, counting functions, and the
data behind the point-cloud / ratio figures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import SearchExhausted
from .metrics import P1xP1Point, dp6_distance, dp6_height

X_TARGET = P1xP1Point.make((1, 1), (1, 1))

# the two blown-up centers, as normalized quadruples
_CENTERS = {(0, 1, 1, 0), (1, 0, 0, 1)}


class BlownUpCenter(ValueError):
    """The point is one of the two blown-up centers of the surface."""


class InvalidResidue(ValueError):
    pass


def _quad(y: P1xP1Point):
    return y.s.coords + y.t.coords


def _is_integral_quad(s0, s1, t0, t1):
    val = s0 * t0 - s1 * t1
    g = gcd(s0, t1) * gcd(s1, t0)
    return abs(val) == g


def is_integral(y: P1xP1Point):
    """Integrality predicate on primitive coordinate pairs."""
    q = _quad(y)
    if q in _CENTERS:
        raise BlownUpCenter(f"{y} is a blown-up center")
    return _is_integral_quad(*q)


@dataclass(frozen=True)
class CoxLift:
    sp0: int
    sp1: int
    tp0: int
    tp1: int
    e1: int
    e2: int

    @property
    def unit_value(self):
        return self.sp0 * self.tp0 - self.sp1 * self.tp1


def cox_lift(y: P1xP1Point):
    """Strict-transform coordinates: divide e1 = gcd(s0,t1) out of (s0,t1)
    and e2 = gcd(s1,t0) out of (s1,t0).  is_integral(y) iff the lifted
    value s0'*t0' - s1'*t1' is +-1."""
    s0, s1, t0, t1 = _quad(y)
    if (s0, s1, t0, t1) in _CENTERS:
        raise BlownUpCenter(f"{y} is a blown-up center")
    e1 = gcd(s0, t1)
    e2 = gcd(s1, t0)
    return CoxLift(s0 // e1, s1 // e2, t0 // e2, t1 // e1, e1, e2)


# ---------------------------------------------------------------------------
# enumeration


def _divisors(n):
    n = abs(n)
    out = []
    for i in range(1, isqrt(n) + 1):
        if n % i == 0:
            out.append(i)
            j = n // i
            if j != i:
                out.append(j)
    return out


def _extgcd(a, b):
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_x, x = x, old_x - qt * x
        old_y, y = y, old_y - qt * y
    return old_r, old_x, old_y


def _krange(off, step, bound):
    """Integer k with |off + k*step| <= bound, as an inclusive (lo, hi)."""
    if step < 0:
        off, step = -off, -step
    lo = math.ceil(Fraction(-bound - off, step))
    hi = math.floor(Fraction(bound - off, step))
    return lo, hi


def _partners(s0, s1, bound):
    """Candidate primitive (t0, t1) with both coordinates nonzero,
    max|t| <= bound, such that ((s0,s1),(t0,t1)) may satisfy the
    integrality identity (every actual integral partner is produced;
    callers re-check the predicate).  s0, s1 nonzero coprime."""
    seen = set()
    for g1 in _divisors(s0):
        a = s0 // g1
        f1 = bound // g1  # |b_t| <= f1  where t1 = g1*b_t
        for g2 in _divisors(s1):
            c = s1 // g2
            if gcd(a, c) != 1:
                continue
            f2 = bound // g2  # |d_t| <= f2 where t0 = g2*d_t
            g, xx, yy = _extgcd(a, c)
            # a*xx + c*yy = 1  =>  a*(e*xx) - c*(-e*yy) = e
            for eps in (1, -1):
                d0 = eps * xx
                b0 = -eps * yy
                # t0 = g2*(d0 + k*c), t1 = g1*(b0 + k*a)
                lo1, hi1 = _krange(d0, c, f2)
                lo2, hi2 = _krange(b0, a, f1)
                lo, hi = max(lo1, lo2), min(hi1, hi2)
                for k in range(lo, hi + 1):
                    t0 = g2 * (d0 + k * c)
                    t1 = g1 * (b0 + k * a)
                    if t0 == 0 or t1 == 0:
                        continue
                    if gcd(t0, t1) != 1:
                        continue
                    if t0 < 0:
                        t0, t1 = -t0, -t1
                    pair = (t0, t1)
                    if pair not in seen:
                        seen.add(pair)
                        yield pair


def _primitive_pairs(limit):
    """Primitive sign-normalized pairs (a, b), both entries nonzero,
    max(|a|,|b|) <= limit."""
    for a in range(1, limit + 1):
        for b in range(-limit, limit + 1):
            if b != 0 and gcd(a, b) == 1:
                yield (a, b)


def _expand_base(task):
    """Worker: integral partners of one base pair. task = (role, a, b,
    bound, min_partner); role 's' means the base is the s-pair."""
    role, a, b, bound, min_partner = task
    out = set()
    for p0, p1 in _partners(a, b, bound):
        if max(abs(p0), abs(p1)) < min_partner:
            continue
        if role == "s":
            quad = (a, b, p0, p1)
        else:
            quad = (p0, p1, a, b)
        if _is_integral_quad(*quad):
            out.add(quad)
    return out


def _fiber_quads(B):
    """All integral points on the four torus-invariant fiber lines
    s=[0:1], s=[1:0], t=[0:1], t=[1:0] up to height B (every point on
    these lines is integral; the two blown-up centers are skipped)."""
    quads = set()
    partners = [(0, 1), (1, 0)] + list(_primitive_pairs(B))
    for p in partners:
        for fixed in ((0, 1), (1, 0)):
            for quad in (fixed + p, p + fixed):
                if quad not in _CENTERS:
                    quads.add(quad)
    return quads


def enumerate_integral(B, include_fiber_lines=True, workers=None):
    """All integral points (off the exceptional curves) with
    dp6_height <= B, canonically sorted by (height, coordinates).

    include_fiber_lines=False drops the four lines s=[0:1], s=[1:0],
    t=[0:1], t=[1:0], all of whose points are integral (they sit at
    distance exactly 1 from ([1:1],[1:1]) and would dominate the output
    quadratically without affecting approximation statistics).

    workers > 1 partitions the base-pair range across processes; the
    canonical merge makes the output identical to the serial run.
    """
    if B < 1:
        raise ValueError("height bound must be >= 1")
    rs = isqrt(B)
    quads = set()
    if include_fiber_lines:
        quads |= _fiber_quads(B)

    tasks = []
    for s in _primitive_pairs(rs):
        tasks.append(("s", s[0], s[1], B // max(abs(s[0]), abs(s[1])), 1))
    for t in _primitive_pairs(rs):
        mt = max(abs(t[0]), abs(t[1]))
        if B // mt >= rs + 1:
            tasks.append(("t", t[0], t[1], B // mt, rs + 1))

    if workers and workers > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            for chunk in pool.imap_unordered(_expand_base, tasks, chunksize=64):
                quads |= chunk
    else:
        for task in tasks:
            quads |= _expand_base(task)

    quads = sorted(
        quads,
        key=lambda q: (max(abs(q[0]), abs(q[1])) * max(abs(q[2]), abs(q[3])), q),
    )
    return [P1xP1Point.make(q[:2], q[2:]) for q in quads]


# ---------------------------------------------------------------------------
# congruence lift


@dataclass(frozen=True)
class ResidueClass:
    q: int
    a0: int
    a1: int
    b0: int
    b1: int

    def __post_init__(self):
        if self.q < 2:
            raise InvalidResidue("modulus must be >= 2")

    @property
    def valid(self):
        return (self.a0 * self.b0 - self.a1 * self.b1) % self.q in (
            1 % self.q,
            -1 % self.q,
        )


def _spiral(center, q, rounds):
    yield center
    for j in range(1, rounds + 1):
        yield center + q * j
        yield center - q * j


@dataclass(frozen=True)
class LiftedPoint:
    """Coordinate representative (s0, s1, t0, t1) of a lifted point.  The
    raw coordinates (not the sign-normalized projective representative)
    carry the residue information."""

    s0: int
    s1: int
    t0: int
    t1: int

    @property
    def quadruple(self):
        return (self.s0, self.s1, self.t0, self.t1)

    @property
    def point(self):
        return P1xP1Point.make((self.s0, self.s1), (self.t0, self.t1))


def strong_approx_lift(rc: ResidueClass):
    """An integral point of the ambient pair (s0*t0 - s1*t1 = +-1) whose
    coordinates reduce to the given residue class mod q.

    Construction: pick coprime (s0, s1) in the class, solve
    s0*r0 - s1*r1 = eps by extended gcd with eps matching the class
    invariant, then shear t = (r0 - k*s1, r1 - k*s0) with
    k = eps-adjusted (b0*r1 - b1*r0) mod q to fix the t-residues."""
    if not rc.valid:
        raise InvalidResidue(
            f"a0*b0 - a1*b1 = {rc.a0 * rc.b0 - rc.a1 * rc.b1} is not +-1 mod {rc.q}"
        )
    q = rc.q
    s0 = s1 = None
    for c0 in _spiral(rc.a0, q, 6):
        for c1 in _spiral(rc.a1, q, 6):
            if (c0, c1) != (0, 0) and gcd(c0, c1) == 1:
                s0, s1 = c0, c1
                break
        if s0 is not None:
            break
    if s0 is None:
        raise SearchExhausted("no coprime representative found in the class")

    g, r0, r1neg = _extgcd(s0, s1)
    if g == -1:
        g, r0, r1neg = 1, -r0, -r1neg
    assert g == 1
    base = (r0, -r1neg)  # s0*r0 - s1*r1 = 1

    prod = rc.a0 * rc.b0 - rc.a1 * rc.b1
    for eps in (1, -1):
        if (prod - eps) % q != 0:
            continue
        r0e, r1e = eps * base[0], eps * base[1]
        k = (rc.b0 * r1e - rc.b1 * r0e) % q
        for kk in [k] + list(range(q)):
            t0 = r0e - kk * s1
            t1 = r1e - kk * s0
            if (t0 - rc.b0) % q == 0 and (t1 - rc.b1) % q == 0:
                if t0 == 0 and t1 == 0:
                    continue
                assert s0 * t0 - s1 * t1 == eps
                return LiftedPoint(s0, s1, t0, t1)
    raise SearchExhausted("no shear parameter matched the residue class")


# ---------------------------------------------------------------------------
# curve families and counting


import sympy

S0, S1, T0, T1 = sympy.symbols("s0 s1 t0 t1", integer=True)


@dataclass(frozen=True)
class DP6CurveFamily:
    """A curve on the surface given by a bihomogeneous integer polynomial,
    with exact membership testing."""

    name: str
    expr: object  # sympy expression in S0, S1, T0, T1

    def contains_quad(self, s0, s1, t0, t1):
        return self._func(s0, s1, t0, t1) == 0

    def contains(self, y: P1xP1Point):
        return self.contains_quad(*_quad(y))

    @property
    def _func(self):
        fn = self.__dict__.get("_fn")
        if fn is None:
            fn = sympy.lambdify((S0, S1, T0, T1), self.expr, "math")
            self.__dict__["_fn"] = fn
        return fn


def dp6_family(name, a=1, b=1):
    """Family selectors: line1/line2 (the two (+-1)-lines through the
    target), conic (the tangent conic pencil), nodal (bidegree (2,2),
    nodal at the target), cuspidal (bidegree (2,2), cuspidal there)."""
    if name == "line1":
        expr = S0 - S1
    elif name == "line2":
        expr = T0 - T1
    elif name == "conic":
        expr = a * (S0 * T0 - S1 * T1) + b * (S0 - S1) * (T0 - T1)
    elif name == "nodal":
        expr = a * S0 * S1 * (T0 - T1) ** 2 - b * T0 * T1 * (S0 - S1) ** 2
    elif name == "cuspidal":
        expr = (
            a**2 * (T1 - T0) ** 2 * S0 * S1
            + b**2 * (S1 - S0) ** 2 * T0 * T1
            - 2 * a * b * S1 * T1 * (S1 - S0) * (T1 - T0)
        )
    else:
        raise ValueError(f"unknown family {name!r}")
    return DP6CurveFamily(f"{name}({a},{b})" if name not in ("line1", "line2") else name, expr)


def _family_fiber_quads(family, B):
    """Integral points of the family on the four fiber lines, height <= B
    (finitely many: the fiber restriction is a nonzero binary form)."""
    quads = set()
    lam = sympy.symbols("lam")
    cases = [
        ((0, 1, None, None), (T0, T1)),
        ((1, 0, None, None), (T0, T1)),
        ((None, None, 0, 1), (S0, S1)),
        ((None, None, 1, 0), (S0, S1)),
    ]
    for fixed, (v0, v1) in cases:
        subs = {}
        if fixed[0] is not None:
            subs[S0], subs[S1] = fixed[0], fixed[1]
        else:
            subs[T0], subs[T1] = fixed[2], fixed[3]
        restricted = sympy.expand(family.expr.subs(subs))
        if restricted == 0:
            raise ValueError(f"family {family.name} contains a fiber line")
        # rational roots of the restricted binary form in (v0, v1)
        form = sympy.Poly(restricted.subs({v0: lam, v1: 1}), lam)
        roots = set()
        if form.degree() >= 1:
            for r, _m in sympy.roots(form, lam).items():
                if r.is_rational:
                    roots.add(sympy.Rational(r))
        # root at infinity: the form vanishes at [1:0]
        if sympy.expand(restricted.subs({v1: 0, v0: 1})) == 0:
            roots.add(None)
        for r in roots:
            pair = (1, 0) if r is None else (int(r.p), int(r.q))
            if fixed[0] is not None:
                quad = (fixed[0], fixed[1]) + pair
            else:
                quad = pair + (fixed[2], fixed[3])
            if quad in _CENTERS:
                continue
            h = max(abs(quad[0]), abs(quad[1])) * max(abs(quad[2]), abs(quad[3]))
            if h <= B and _is_integral_quad(*quad):
                quads.add(quad)
    return quads


def count_N(family, B, points=None):
    """#{integral points on the family with height <= B}.  family=None
    counts the whole integral locus (including the fiber lines)."""
    if family is None:
        return len(points if points is not None else enumerate_integral(B))
    if points is None:
        points = enumerate_integral(B, include_fiber_lines=False)
    quads = {q for q in (_quad(p) for p in points) if family.contains_quad(*q)}
    quads |= _family_fiber_quads(family, B)
    return len(quads)


# ---------------------------------------------------------------------------
# figure data


def figure_data(B, x=X_TARGET, points=None):
    """One row per enumerated integral point (fiber lines excluded — their
    points all sit at distance exactly 1 from the target):
    (s0, s1, t0, t1, H, d_num, d_den, ratio-or-None)."""
    if points is None:
        points = enumerate_integral(B, include_fiber_lines=False)
    rows = []
    for p in points:
        h = dp6_height(p)
        d = dp6_distance(p, x)
        if d == 0:
            continue
        ratio = None
        if d < 1:
            ratio = math.log(h) / -math.log(d)
        rows.append(_quad(p) + (h, d.numerator, d.denominator, ratio))
    return rows
